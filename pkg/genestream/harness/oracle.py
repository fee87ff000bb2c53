"""
Exact shortest-common-superstring baselines over the segment overlap graph.

Both solvers maximize the summed overlap of consecutive segments, which for a
substring-free set is the same as minimizing the superstring length. Ties go
to the lexicographically smallest superstring.
"""

import logging
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from genestream.config import settings
from genestream.core.errors import TooManySegments
from genestream.core.seqcore import normalize
from genestream.schemas.response import OverlapEdge, OverlapGraph

logger = logging.getLogger(__name__)


def max_overlap(left: str, right: str, min_overlap: int = 1) -> int:
    """Longest proper suffix of ``left`` equal to a prefix of ``right``"""
    for width in range(min(len(left), len(right)) - 1, min_overlap - 1, -1):
        if width and left.endswith(right[:width]):
            return width
    return 0


def build_overlap_graph(segments: Sequence[str], min_overlap: int = 1) -> OverlapGraph:
    limit = settings.ORACLE_MAX_SEGMENTS
    if len(segments) > limit:
        raise TooManySegments(len(segments), limit)

    nodes = [normalize(segment) for segment in segments]
    edges = []
    for i, left in enumerate(nodes):
        for j, right in enumerate(nodes):
            if i == j:
                continue
            width = max_overlap(left, right, max(1, min_overlap))
            if width:
                edges.append(OverlapEdge(source=i, target=j, overlap=width))
    return OverlapGraph(nodes=nodes, edges=edges)


def reduce_segments(segments: Sequence[str]) -> List[str]:
    """Drop duplicates and segments contained in another, sorted for determinism"""
    unique = sorted(set(normalize(segment) for segment in segments))
    return [s for s in unique if not any(s != other and s in other for other in unique)]


def _weights(graph: OverlapGraph) -> List[List[int]]:
    n = len(graph.nodes)
    weights = [[0] * n for _ in range(n)]
    for edge in graph.edges:
        weights[edge.source][edge.target] = edge.overlap
    return weights


def _check_size(segments: Sequence[str], limit: int) -> None:
    if not segments:
        raise ValueError("at least one segment is required")
    if len(segments) > limit:
        raise TooManySegments(len(segments), limit)


def superstring_oracle(segments: Sequence[str]) -> str:
    """Held-Karp dynamic program over subsets, O(2^n * n^2)"""
    _check_size(segments, settings.ORACLE_MAX_SEGMENTS)
    nodes = reduce_segments(segments)
    if len(nodes) == 1:
        return nodes[0]

    n = len(nodes)
    weights = _weights(build_overlap_graph(nodes))

    # best[(mask, last)] = (total overlap, superstring of the segments in mask ending with last)
    best: Dict[Tuple[int, int], Tuple[int, str]] = {}
    for i, node in enumerate(nodes):
        best[(1 << i, i)] = (0, node)

    for mask in range(1, 1 << n):
        for last in range(n):
            state = best.get((mask, last))
            if state is None:
                continue
            overlap, text = state
            for nxt in range(n):
                if mask & (1 << nxt):
                    continue
                width = weights[last][nxt]
                candidate = (overlap + width, text + nodes[nxt][width:])
                key = (mask | (1 << nxt), nxt)
                current = best.get(key)
                if current is None or _better(candidate, current):
                    best[key] = candidate

    full = (1 << n) - 1
    finals = [best[(full, last)] for last in range(n)]
    winner = finals[0]
    for candidate in finals[1:]:
        if _better(candidate, winner):
            winner = candidate
    logger.debug("held-karp over %d segments: overlap %d, length %d", n, winner[0], len(winner[1]))
    return winner[1]


def _better(candidate: Tuple[int, str], current: Tuple[int, str]) -> bool:
    return candidate[0] > current[0] or (candidate[0] == current[0] and candidate[1] < current[1])


def superstring_bruteforce(segments: Sequence[str], limit: Optional[int] = None) -> str:
    """Every ordering merged at maximal overlaps, O(n!)"""
    _check_size(segments, limit or settings.BRUTE_FORCE_MAX_SEGMENTS)
    nodes = reduce_segments(segments)
    weights = _weights(build_overlap_graph(nodes))

    winner: Optional[Tuple[int, str]] = None
    for order in permutations(range(len(nodes))):
        overlap = 0
        text = nodes[order[0]]
        for prev, nxt in zip(order, order[1:]):
            width = weights[prev][nxt]
            overlap += width
            text += nodes[nxt][width:]
        if winner is None or _better((overlap, text), winner):
            winner = (overlap, text)
    return winner[1]
