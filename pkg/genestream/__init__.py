"""Streaming de Bruijn assembler and gene finder."""

from genestream.config import settings

__version__ = settings.VERSION
