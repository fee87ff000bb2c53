"""
Read simulator.

References are built from gene cassettes (start codon, stop-free in-frame
body, stop codon) separated by random spacers. No start codon is allowed
anywhere except at the head of a cassette, so the scanner finds exactly one
gene per cassette. Reads are windows covering every position with a minimum
overlap between neighbours.
"""

import logging
import random
from typing import List, Optional

from genestream.config import settings
from genestream.core.errors import Unsatisfiable
from genestream.core.genescan import scan_genes
from genestream.core.seqcore import ALPHABET, STANDARD, CodonTable, iter_kmer_codes
from genestream.schemas.request import SimSpec
from genestream.schemas.response import SimResult

logger = logging.getLogger(__name__)


class _ReferenceBuilder:
    """Appends bases while refusing any that would complete a start codon"""

    def __init__(self, rng: random.Random, table: CodonTable):
        self.rng = rng
        self.table = table
        self.bases: List[str] = []

    def _completes_start(self, base: str) -> bool:
        start = self.table.start
        return len(self.bases) >= 2 and self.bases[-2] == start[0] and self.bases[-1] == start[1] and base == start[2]

    def _draw(self, forbidden: str = "") -> str:
        choices = [b for b in ALPHABET if b not in forbidden and not self._completes_start(b)]
        return self.rng.choice(choices)

    def spacer(self, length: int) -> None:
        for _ in range(length):
            self.bases.append(self._draw())

    def cassette(self, body_codons: int) -> None:
        table = self.table
        self.bases.extend(table.start)
        for _ in range(body_codons):
            self.bases.append(self._draw())
            self.bases.append(self._draw())
            prefix = self.bases[-2] + self.bases[-1]
            forbidden = "".join(stop[2] for stop in table.stops if stop.startswith(prefix))
            self.bases.append(self._draw(forbidden))
        # the stop must not close a start codon across the body boundary
        tail = "".join(self.bases[-2:])
        stops = [stop for stop in table.stops if table.start not in tail + stop[:2]] or list(table.stops)
        self.bases.extend(self.rng.choice(stops))

    def sequence(self) -> str:
        return "".join(self.bases)


def _layout(rng: random.Random, spec: SimSpec) -> List[int]:
    """Body codon count per cassette, leaving at least half the length to spacers"""
    if not spec.gene_count:
        return []
    budget = spec.length // spec.gene_count
    max_body = max(0, (budget // 2 - 6) // 3)
    return [rng.randint(0, max_body) for _ in range(spec.gene_count)]


def _split(rng: random.Random, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0, *cuts, total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def _has_repeat(reference: str, k: int) -> bool:
    if len(reference) < k - 1:
        return False
    nodes = list(iter_kmer_codes(reference, k - 1))
    return len(set(nodes)) != len(nodes) or nodes[0] == nodes[-1]


def _reference(rng: random.Random, spec: SimSpec, table: CodonTable) -> str:
    bodies = _layout(rng, spec)
    cassette_total = sum(6 + 3 * body for body in bodies)
    spacers = _split(rng, spec.length - cassette_total, len(bodies) + 1)

    builder = _ReferenceBuilder(rng, table)
    builder.spacer(spacers[0])
    for body, gap in zip(bodies, spacers[1:]):
        builder.cassette(body)
        builder.spacer(gap)
    return builder.sequence()


def fragment(reference: str, spec: SimSpec, rng: random.Random) -> List[str]:
    """Windows covering every base, consecutive windows overlapping by >= min_overlap"""
    n = len(reference)
    if n == 0:
        return []
    if n <= spec.read_len_min:
        return [reference]

    reads = []
    pos = 0
    while True:
        length = rng.randint(spec.read_len_min, spec.read_len_max)
        start = pos if pos + length <= n else n - length
        start = max(0, start)
        reads.append(reference[start:start + length])
        if start + length >= n:
            return reads
        overlap = rng.randint(spec.min_overlap, length - 1)
        pos = start + length - overlap


def simulate(spec: SimSpec, table: CodonTable = STANDARD, max_attempts: Optional[int] = None) -> SimResult:
    if spec.length < 6 * spec.gene_count:
        raise Unsatisfiable(f"{spec.gene_count} genes need at least {6 * spec.gene_count} bases, got {spec.length}")

    rng = random.Random(spec.seed)
    attempts = max_attempts or settings.SIM_MAX_ATTEMPTS
    for attempt in range(1, attempts + 1):
        reference = _reference(rng, spec, table)
        if spec.k is not None and _has_repeat(reference, spec.k):
            logger.debug("attempt %d: reference repeats a %d-mer, regenerating", attempt, spec.k - 1)
            continue
        truth = scan_genes(reference, table)
        if len(truth) != spec.gene_count:
            logger.debug("attempt %d: scan found %d genes, wanted %d", attempt, len(truth), spec.gene_count)
            continue

        reads = fragment(reference, spec, rng)
        if spec.shuffle:
            rng.shuffle(reads)
        logger.debug("simulated %d bases, %d reads, %d genes", len(reference), len(reads), len(truth))
        return SimResult(reference=reference, reads=reads, truth=truth)

    raise Unsatisfiable(f"no valid reference after {attempts} attempts")
