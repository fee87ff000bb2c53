"""``run``: stream FASTA reads through the assembler and write genes and events."""

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from genestream.cli.exit_codes import MALFORMED_INPUT, OK, OUT_OF_RANGE, parse_bool
from genestream.config import settings
from genestream.core.errors import FastaFormatError
from genestream.core.seqcore import MAX_K, codon_table
from genestream.core.stream import run_stream
from genestream.formats import assembly_records, read_reads, write_event, write_fasta, write_genes_tsv
from genestream.schemas.request import RunManifest, StreamConfig, Subcommand

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("run", help="Stream reads, assemble and report genes")
    parser.add_argument("--reads", required=True, type=Path, help="Multi-record FASTA, records in arrival order")
    parser.add_argument("--k", type=int, default=settings.DEFAULT_K, help="k-mer length (2-31)")
    parser.add_argument("--target-genes", type=int, default=None, help="Stop once this many genes are found")
    parser.add_argument("--emit-partial", type=parse_bool, default=settings.EMIT_PARTIAL,
                        help="Scan genes on partial contigs (true/false)")
    parser.add_argument("--codon-table", default=settings.CODON_TABLE, help="Codon table name")
    parser.add_argument("--genes-out", required=True, type=Path, help="Final gene set as TSV")
    parser.add_argument("--events-out", required=True, type=Path, help="Events as JSON lines")
    parser.add_argument("--assembly-out", type=Path, default=None,
                        help="Final assembly as FASTA: the sequence, or the contigs when not complete")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    if not 2 <= args.k <= MAX_K:
        logger.error("k must be between 2 and %d, got %d", MAX_K, args.k)
        return OUT_OF_RANGE
    try:
        manifest = RunManifest(
            subcommand=Subcommand.RUN,
            inputs=[args.reads],
            outputs=[args.genes_out, args.events_out] + ([args.assembly_out] if args.assembly_out else []),
            k=args.k,
            codon_table=args.codon_table,
            target_genes=args.target_genes,
        )
    except ValidationError as exc:
        logger.error("invalid paths: %s", exc.errors()[0]["msg"])
        return MALFORMED_INPUT
    try:
        cfg = StreamConfig(
            k=args.k,
            codon_table=codon_table(args.codon_table),
            target_genes=args.target_genes,
            emit_partial=args.emit_partial,
        )
    except (ValidationError, ValueError) as exc:
        logger.error("invalid arguments: %s", exc)
        return OUT_OF_RANGE
    logger.debug("manifest: %s", manifest.model_dump_json())

    reads_path, (genes_path, events_path) = manifest.inputs[0], manifest.outputs[:2]
    try:
        with reads_path.open() as reads, events_path.open("w") as events:
            run = run_stream(read_reads(reads), cfg)
            for event in run:
                write_event(events, event)
    except FastaFormatError as exc:
        logger.error("malformed input %s: %s", reads_path, exc)
        return MALFORMED_INPUT

    with genes_path.open("w") as genes:
        write_genes_tsv(genes, run.final_genes)
    logger.info("%d genes written to %s", len(run.final_genes), genes_path)

    if args.assembly_out is not None:
        with args.assembly_out.open("w") as handle:
            write_fasta(handle, assembly_records(run.assembly))
    return OK
