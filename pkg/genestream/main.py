import argparse
import logging
import sys
from typing import List, Optional

from genestream.cli.commands import bench, oracle, run, simulate
from genestream.config import settings

logger = logging.getLogger("genestream")


def configure_logging() -> None:
    level = logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Streaming de Bruijn assembler and gene finder",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    # one module per subcommand
    run.register(subparsers)
    simulate.register(subparsers)
    oracle.register(subparsers)
    bench.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    logger.debug("running %s", args.subcommand)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
