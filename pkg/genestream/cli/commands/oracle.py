"""``oracle``: exact shortest common superstring of a small read set."""

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from genestream.cli.exit_codes import MALFORMED_INPUT, OK, OUT_OF_RANGE
from genestream.config import settings
from genestream.core.errors import FastaFormatError
from genestream.formats import read_reads
from genestream.harness.oracle import superstring_oracle
from genestream.schemas.request import RunManifest, Subcommand

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("oracle", help="Exact superstring of at most 12 reads")
    parser.add_argument("--reads", required=True, type=Path, help="FASTA with the segments")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    try:
        manifest = RunManifest(subcommand=Subcommand.ORACLE, inputs=[args.reads])
        with manifest.inputs[0].open() as reads:
            segments = list(read_reads(reads))
    except (ValidationError, FastaFormatError) as exc:
        logger.error("malformed input: %s", exc)
        return MALFORMED_INPUT

    if not segments:
        logger.error("no records in %s", args.reads)
        return MALFORMED_INPUT
    if len(segments) > settings.ORACLE_MAX_SEGMENTS:
        logger.error("%d segments exceed the limit of %d", len(segments), settings.ORACLE_MAX_SEGMENTS)
        return OUT_OF_RANGE

    superstring = superstring_oracle(segments)
    print(f"{superstring} (length {len(superstring)})")
    return OK
