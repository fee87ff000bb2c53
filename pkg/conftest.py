import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

GRAPH2_SEQUENCE = "AAGTCATTACA"
GRAPH2_FRAGMENTS = ["AAGTC", "GTCAT", "CATTA", "TTACA"]


@pytest.fixture
def graph2_sequence():
    return GRAPH2_SEQUENCE


@pytest.fixture
def graph2_fragments():
    return list(GRAPH2_FRAGMENTS)


@pytest.fixture
def fasta_file(tmp_path):
    """Write records to a FASTA file and return its path"""

    def write(records, name="reads.fa"):
        path = tmp_path / name
        with path.open("w") as handle:
            for i, sequence in enumerate(records, start=1):
                handle.write(f">r{i}\n{sequence}\n")
        return path

    return write
