"""
Incremental de Bruijn graph over packed (k-1)-mer nodes.

Every k-mer of an ingested read adds one edge prefix -> suffix. Multiplicities
are kept for accounting, but traversal works on the collapsed graph: an edge
is either present or not, so re-reading overlapping fragments is idempotent
for assembly.

The graph keeps its unitigs (maximal non-branching paths) up to date as reads
arrive. An insert only re-traces the unitigs that touch nodes whose degrees
changed; untouched unitigs are spliced into the new ones whole, so the cost of
an insert follows the size of the change rather than the size of the graph.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, NamedTuple, Optional, Set, Tuple

from genestream.config import settings
from genestream.core.errors import KTooLarge, ReadTooShort
from genestream.core.patmatch import bm_search
from genestream.core.seqcore import ALPHABET, MAX_K, decode_code, iter_kmer_codes, normalize
from genestream.schemas.response import AssemblyResult, AssemblyStatus, Contig, GraphStats

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class Unitig(NamedTuple):
    """A maximal non-branching path held in spelled form"""

    id: int
    head: int
    first: int
    last: int
    tail: int
    edges: int
    bases: str
    cycle: bool = False

    @property
    def order_key(self) -> Tuple[int, int, int]:
        # paths by (head, first successor), then isolated cycles by their smallest node
        return (1, self.head, 0) if self.cycle else (0, self.head, self.first)


class DeBruijnGraph:
    def __init__(self, k: Optional[int] = None):
        k = settings.DEFAULT_K if k is None else k
        if k > MAX_K:
            raise KTooLarge(k, MAX_K)
        if k < 2:
            raise ValueError(f"k must be at least 2, got {k}")
        self.k = k
        self.adjacency: Dict[int, Dict[int, int]] = defaultdict(dict)
        self.indegree: Dict[int, int] = defaultdict(int)
        self.outdegree: Dict[int, int] = defaultdict(int)
        # degrees over distinct edges, the view traversal uses
        self._distinct_in: Dict[int, int] = defaultdict(int)
        self._distinct_out: Dict[int, int] = defaultdict(int)
        self._preds: Dict[int, List[int]] = defaultdict(list)
        self._starts: Set[int] = set()
        self.edge_count = 0
        self.distinct_edge_count = 0

        self._unitigs: Dict[int, Unitig] = {}
        self._by_head: Dict[int, Dict[int, Unitig]] = {}
        self._by_tail: Dict[int, Dict[int, Unitig]] = {}
        self._cycles: Dict[int, Unitig] = {}
        self._next_id = 0
        self._contig_cache: Dict[int, Contig] = {}
        # changes since the last drain_changes()
        self._removed: Dict[int, Unitig] = {}
        self._added: Dict[int, Unitig] = {}

    # ---- construction ----

    def insert_segment(self, read: str) -> "DeBruijnGraph":
        """
        Add every k-mer of ``read`` as an edge. The read is normalized first,
        so lowercase and RNA input are accepted and anything else raises
        InvalidSymbol before the graph is touched.
        """
        read = normalize(read)
        k = self.k
        if len(read) < k:
            raise ReadTooShort(len(read), k)

        nodes = list(iter_kmer_codes(read, k - 1))
        adjacency, indegree, outdegree = self.adjacency, self.indegree, self.outdegree
        fresh: List[Edge] = []
        for prefix, suffix in zip(nodes, nodes[1:]):
            successors = adjacency[prefix]
            seen = successors.get(suffix, 0)
            if not seen:
                fresh.append((prefix, suffix))
            successors[suffix] = seen + 1
            outdegree[prefix] += 1
            indegree[suffix] += 1
        self.edge_count += len(nodes) - 1
        if fresh:
            self._link(fresh)
        return self

    def _link(self, fresh: List[Edge]) -> None:
        touched = {node for edge in fresh for node in edge}
        # located against the degrees from before this read
        stale, split = self._stale_unitigs(touched)

        for prefix, suffix in fresh:
            self._distinct_out[prefix] += 1
            self._distinct_in[suffix] += 1
            self._preds[suffix].append(prefix)
        self.distinct_edge_count += len(fresh)

        for node in touched:
            din, dout = self._distinct_in.get(node, 0), self._distinct_out.get(node, 0)
            if din == 0 or dout - din == 1:
                self._starts.add(node)
            else:
                self._starts.discard(node)

        self._retrace(touched, stale, split)

    def _stale_unitigs(self, touched: Set[int]) -> Tuple[Dict[int, Unitig], Set[int]]:
        """Unitigs that end at or run through a touched node; the second set holds the ones run through"""
        stale: Dict[int, Unitig] = {}
        split: Set[int] = set()
        for node in touched:
            for unitig in self._by_head.get(node, {}).values():
                stale[unitig.id] = unitig
            for unitig in self._by_tail.get(node, {}).values():
                stale[unitig.id] = unitig
            if self._is_one_in_one_out(node):
                unitig = self._unitig_through(node)
                stale[unitig.id] = unitig
                split.add(unitig.id)
        return stale, split

    def _unitig_through(self, node: int) -> Unitig:
        cur, lowest = node, node
        while True:
            pred = self._preds[cur][0]
            if pred == node:
                return self._cycles[lowest]
            if not self._is_one_in_one_out(pred):
                return self._by_head[pred][cur]
            lowest = min(lowest, pred)
            cur = pred

    def _retrace(self, touched: Set[int], stale: Dict[int, Unitig], split: Set[int]) -> None:
        by_head: Dict[Edge, Unitig] = {}
        by_tail: Dict[Edge, Unitig] = {}
        seeds = set(touched)
        for unitig in stale.values():
            self._drop(unitig)
            if unitig.cycle:
                continue
            seeds.add(unitig.head)
            if unitig.id not in split:
                by_head[(unitig.head, unitig.first)] = unitig
                by_tail[(unitig.last, unitig.tail)] = unitig

        covered: Set[Edge] = set()
        for node in sorted(seeds):
            live = self._by_head.get(node, {})
            for successor in sorted(self.adjacency.get(node, ())):
                if (node, successor) not in covered and successor not in live:
                    self._add(self._trace(node, successor, by_head, by_tail, covered))

    def _trace(
        self,
        node: int,
        successor: int,
        by_head: Dict[Edge, Unitig],
        by_tail: Dict[Edge, Unitig],
        covered: Set[Edge],
    ) -> Unitig:
        """Build the unitig holding edge node -> successor, hopping over intact old unitigs"""
        head, first = node, successor
        if self._is_one_in_one_out(node):
            cur = node
            while True:
                pred = self._preds[cur][0]
                hop = by_tail.get((pred, cur))
                prev, after = (hop.head, hop.first) if hop else (pred, cur)
                if prev == node:
                    return self._trace_cycle(node, covered)
                if not self._is_one_in_one_out(prev):
                    head, first = prev, after
                    break
                cur = prev

        parts = [self.decode(head)]
        edges = 0
        cur, nxt = head, first
        while True:
            covered.add((cur, nxt))
            hop = by_head.get((cur, nxt))
            if hop is not None:
                parts.append(hop.bases[self.k - 1:])
                edges += hop.edges
                last, cur = hop.last, hop.tail
            else:
                parts.append(ALPHABET[nxt & 3])
                edges += 1
                last, cur = cur, nxt
            if not self._is_one_in_one_out(cur):
                break
            nxt = next(iter(self.adjacency[cur]))
        return self._new_unitig(head, first, last, cur, edges, "".join(parts))

    def _trace_cycle(self, node: int, covered: Set[Edge]) -> Unitig:
        path = [node]
        cur = next(iter(self.adjacency[node]))
        while cur != node:
            path.append(cur)
            cur = next(iter(self.adjacency[cur]))
        low = path.index(min(path))
        path = path[low:] + path[:low]
        covered.update(zip(path, path[1:] + path[:1]))
        closed = path + path[:1]
        return self._new_unitig(
            path[0], closed[1], path[-1], path[0], len(path), self._spell(closed), cycle=True
        )

    def _new_unitig(
        self, head: int, first: int, last: int, tail: int, edges: int, bases: str, cycle: bool = False
    ) -> Unitig:
        self._next_id += 1
        return Unitig(self._next_id, head, first, last, tail, edges, bases, cycle)

    def _add(self, unitig: Unitig) -> None:
        self._unitigs[unitig.id] = unitig
        if unitig.cycle:
            self._cycles[unitig.head] = unitig
        else:
            self._by_head.setdefault(unitig.head, {})[unitig.first] = unitig
            self._by_tail.setdefault(unitig.tail, {})[unitig.last] = unitig
        self._added[unitig.id] = unitig

    def _drop(self, unitig: Unitig) -> None:
        del self._unitigs[unitig.id]
        if unitig.cycle:
            del self._cycles[unitig.head]
        else:
            for index, node, key in (
                (self._by_head, unitig.head, unitig.first),
                (self._by_tail, unitig.tail, unitig.last),
            ):
                del index[node][key]
                if not index[node]:
                    del index[node]
        self._contig_cache.pop(unitig.id, None)
        if self._added.pop(unitig.id, None) is None:
            self._removed[unitig.id] = unitig

    def drain_changes(self) -> Tuple[List[Unitig], List[Unitig]]:
        """(removed, added) unitigs since the previous call"""
        removed, added = list(self._removed.values()), list(self._added.values())
        self._removed, self._added = {}, {}
        return removed, added

    # ---- queries ----

    @property
    def nodes(self) -> Set[int]:
        return set(self._distinct_out) | set(self._distinct_in)

    @property
    def unitig_count(self) -> int:
        return len(self._unitigs)

    def successors(self, node: int) -> List[Tuple[int, int]]:
        """(successor, multiplicity) pairs ordered by successor code"""
        if node not in self.adjacency:
            return []
        return sorted(self.adjacency[node].items())

    def decode(self, node: int) -> str:
        return decode_code(node, self.k - 1)

    def find_start_nodes(self) -> List[int]:
        """Nodes with no incoming edge or one more outgoing than incoming, by code"""
        return sorted(self._starts)

    def stats(self) -> GraphStats:
        return GraphStats(
            node_count=len(self.nodes),
            distinct_edge_count=self.distinct_edge_count,
            edge_count=self.edge_count,
            start_node_count=len(self._starts),
        )

    # ---- traversal ----

    def _spell(self, path: List[int]) -> str:
        if not path:
            return ""
        head = self.decode(path[0])
        return head + "".join(ALPHABET[node & 3] for node in path[1:])

    def _is_one_in_one_out(self, node: int) -> bool:
        return self._distinct_in.get(node, 0) == 1 and self._distinct_out.get(node, 0) == 1

    def unitigs(self) -> List[Unitig]:
        return sorted(self._unitigs.values(), key=lambda unitig: unitig.order_key)

    def _contig(self, unitig: Unitig) -> Contig:
        contig = self._contig_cache.get(unitig.id)
        if contig is None:
            path = [unitig.head, unitig.first]
            cur = unitig.first
            for _ in range(unitig.edges - 1):
                cur = next(iter(self.adjacency[cur]))
                path.append(cur)
            contig = Contig(bases=unitig.bases, source_path=path, k=self.k)
            self._contig_cache[unitig.id] = contig
        return contig

    def contigs(self) -> List[Contig]:
        """Maximal non-branching paths, then any isolated cycles, ordered by first node"""
        return [self._contig(unitig) for unitig in self.unitigs()]

    def _walk(self, start: int) -> Tuple[str, Optional[int], int]:
        """
        Follow unused unitigs from ``start`` while exactly one is available.
        Returns (spelled walk, branching node or None, edges used).
        """
        used: Set[int] = set()
        parts: List[str] = []
        edges = 0
        node = start
        while True:
            viable = [u for u in self._by_head.get(node, {}).values() if u.id not in used]
            if not viable:
                return "".join(parts), None, edges
            if len(viable) > 1:
                return "".join(parts), node, edges
            unitig = viable[0]
            used.add(unitig.id)
            parts.append(unitig.bases[self.k - 1:] if parts else unitig.bases)
            edges += unitig.edges
            node = unitig.tail

    def assemble(self, include_contigs: bool = True) -> AssemblyResult:
        """
        Classify the graph and spell it when one walk covers every edge.
        With ``include_contigs`` off, non-complete results carry no contig
        list, which keeps the per-read check in the stream cheap.
        """
        if not self.distinct_edge_count:
            return AssemblyResult(status=AssemblyStatus.PARTIAL, reason="graph is empty")

        def pieces() -> List[Contig]:
            return self.contigs() if include_contigs else []

        if len(self._starts) != 1:
            logger.debug("assembly is partial: %d start nodes", len(self._starts))
            return AssemblyResult(
                status=AssemblyStatus.PARTIAL,
                contigs=pieces(),
                reason=f"{len(self._starts)} start nodes",
            )

        (start,) = self._starts
        sequence, branch, used = self._walk(start)
        if branch is not None:
            label = self.decode(branch)
            logger.debug("assembly is ambiguous at node %s", label)
            return AssemblyResult(
                status=AssemblyStatus.AMBIGUOUS,
                contigs=pieces(),
                reason=f"node {label} has several viable successors",
                node=label,
            )
        if used != self.distinct_edge_count:
            return AssemblyResult(
                status=AssemblyStatus.PARTIAL,
                contigs=pieces(),
                reason=f"walk used {used} of {self.distinct_edge_count} edges",
            )
        return AssemblyResult(status=AssemblyStatus.COMPLETE, sequence=sequence)


def assemble_reads(reads: Iterable[str], k: Optional[int] = None) -> AssemblyResult:
    graph = DeBruijnGraph(k)
    for read in reads:
        graph.insert_segment(read)
    return graph.assemble()


def verify_assembly(sequence: str, reads: Iterable[str]) -> List[int]:
    """Indices of reads that do not occur anywhere in ``sequence``"""
    missing = []
    for index, read in enumerate(reads):
        if not read or not bm_search(sequence, read).occurrences:
            missing.append(index)
    return missing
