"""``bench``: one CSV record per simulation row of a bench spec file."""

import argparse
import logging
from pathlib import Path

from pydantic import ValidationError

from genestream.cli.exit_codes import MALFORMED_INPUT, OK, OUT_OF_RANGE
from genestream.core.errors import Unsatisfiable
from genestream.formats import read_bench_spec, write_bench_csv
from genestream.harness.bench import bench_many
from genestream.schemas.request import RunManifest, Subcommand

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Run simulated benchmarks into a CSV")
    parser.add_argument("--spec", required=True, type=Path, help="CSV of simulation and stream settings")
    parser.add_argument("--out", required=True, type=Path, help="Bench CSV")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    try:
        manifest = RunManifest(subcommand=Subcommand.BENCH, inputs=[args.spec], outputs=[args.out])
        with manifest.inputs[0].open() as spec_file:
            rows = read_bench_spec(spec_file)
        records = bench_many(rows)
    except (ValidationError, ValueError) as exc:
        if isinstance(exc, Unsatisfiable):
            logger.error("%s", exc)
            return OUT_OF_RANGE
        logger.error("malformed bench spec %s: %s", args.spec, exc)
        return MALFORMED_INPUT

    with manifest.outputs[0].open("w") as out:
        write_bench_csv(out, records)
    logger.info("%d bench records written to %s", len(records), manifest.outputs[0])
    return OK
