"""``simulate``: generate a reference, its reads as FASTA and the truth genes as TSV."""

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from genestream.cli.exit_codes import OK, OUT_OF_RANGE
from genestream.core.errors import Unsatisfiable
from genestream.formats import FastaRecord, write_fasta, write_genes_tsv
from genestream.harness.simulator import simulate
from genestream.schemas.request import RunManifest, SimSpec, Subcommand

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Simulate a reference and error-free reads")
    parser.add_argument("--seed", type=int, required=True, help="RNG seed")
    parser.add_argument("--length", type=int, required=True, help="Reference length in bases")
    parser.add_argument("--genes", type=int, default=0, help="Genes to embed")
    parser.add_argument("--read-min", type=int, default=30, help="Shortest read")
    parser.add_argument("--read-max", type=int, default=99, help="Longest read (< 100)")
    parser.add_argument("--overlap", type=int, default=20, help="Minimum overlap between neighbouring reads")
    parser.add_argument("--shuffle", action="store_true", help="Shuffle read order by seed")
    parser.add_argument("--k", type=int, default=None, help="Reject references with a repeated (k-1)-mer")
    parser.add_argument("--out", required=True, type=Path, help="Reads FASTA")
    parser.add_argument("--truth", required=True, type=Path, help="Truth genes TSV")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    try:
        spec = SimSpec(
            seed=args.seed,
            length=args.length,
            gene_count=args.genes,
            read_len_min=args.read_min,
            read_len_max=args.read_max,
            min_overlap=args.overlap,
            shuffle=args.shuffle,
            k=args.k,
        )
        manifest = RunManifest(
            subcommand=Subcommand.SIMULATE, outputs=[args.out, args.truth], k=args.k, seed=args.seed
        )
        sim = simulate(spec)
    except ValidationError as exc:
        for error in exc.errors():
            logger.error("invalid simulation parameters: %s", error["msg"])
        return OUT_OF_RANGE
    except Unsatisfiable as exc:
        logger.error("%s", exc)
        return OUT_OF_RANGE

    out_path, truth_path = manifest.outputs
    with out_path.open("w") as out:
        write_fasta(out, (FastaRecord(f"read{i}", read) for i, read in enumerate(sim.reads, start=1)))
    with truth_path.open("w") as truth:
        write_genes_tsv(truth, sim.truth)
    logger.info("%d reads and %d truth genes written", len(sim.reads), len(sim.truth))
    return OK
