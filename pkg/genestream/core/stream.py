"""
On-line driver: ingest one segment at a time, re-assemble, re-scan genes and
emit events in ingestion order.

Gene scans are kept per unitig. After each read only the unitigs the graph
reports as new are scanned; a unitig that was rebuilt with unchanged bases
keeps its previous scan.
"""

import logging
from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from genestream.core.debruijn import DeBruijnGraph, Unitig
from genestream.core.errors import InvalidSymbol, ReadTooShort
from genestream.core.genescan import diff, scan_genes
from genestream.core.seqcore import CodonTable
from genestream.schemas.request import StreamConfig
from genestream.schemas.response import (
    AssemblyResult,
    DoneReason,
    EventKind,
    Gene,
    GeneDiff,
    GeneSet,
    StreamEvent,
)

logger = logging.getLogger(__name__)


class UnitigGenes:
    """Genes of every live unitig, indices local to the unitig"""

    def __init__(self, table: CodonTable):
        self.table = table
        self._entries: Dict[int, Tuple[Unitig, List[Gene]]] = {}

    def update(self, removed: List[Unitig], added: List[Unitig]) -> bool:
        """Apply one batch of graph changes. True when the gene keys changed."""
        recycled: Dict[str, List[Gene]] = {}
        gone: Counter = Counter()
        for unitig in removed:
            entry = self._entries.pop(unitig.id, None)
            if entry is None:
                continue
            recycled[unitig.bases] = entry[1]
            gone.update(gene.key for gene in entry[1])

        fresh: Counter = Counter()
        for unitig in added:
            genes = recycled.get(unitig.bases)
            if genes is None:
                genes = scan_genes(unitig.bases, self.table).genes
            self._entries[unitig.id] = (unitig, genes)
            fresh.update(gene.key for gene in genes)
        return gone != fresh

    def gene_set(self) -> GeneSet:
        ranked = sorted(self._entries.values(), key=lambda entry: entry[0].order_key)
        return GeneSet(
            genes=[
                gene.model_copy(update={"contig_id": rank})
                for rank, (_, genes) in enumerate(ranked)
                for gene in genes
            ]
        )


class StreamRun:
    """
    One pass over a segment source. Iterate it to drive the run; once the
    ``done`` event has been yielded the summary properties are final.

    ``segments_pulled`` counts every segment taken from the source and is
    the ordinal space of events. ``segments_consumed`` is the ordinal of the
    last segment that was ingested, so a trailing run of rejected segments
    does not count.
    """

    def __init__(self, segments: Iterable[str], cfg: Optional[StreamConfig] = None):
        self.cfg = cfg or StreamConfig()
        self.graph = DeBruijnGraph(self.cfg.k)
        self.final_genes = GeneSet()
        self.segments_pulled = 0
        self.segments_consumed = 0
        self.done: Optional[StreamEvent] = None
        self._segments = segments
        self._started = False
        self._outcome: Optional[AssemblyResult] = None
        self._genes = GeneSet()
        self._per_unitig = UnitigGenes(self.cfg.codon_table) if self.cfg.emit_partial else None
        # True while _genes is the union of the per-unitig scans
        self._tracking = False

    def __iter__(self) -> Iterator[StreamEvent]:
        if self._started:
            raise RuntimeError("a stream run can only be iterated once")
        self._started = True
        return self._events()

    def run(self) -> "StreamRun":
        """Drain the run, discarding events"""
        for _ in self:
            pass
        return self

    @property
    def assembly(self) -> Optional[AssemblyResult]:
        """Assembly of everything ingested so far, with contigs when not complete"""
        if self._outcome is None or self._outcome.is_complete:
            return self._outcome
        return self.graph.assemble()

    def _replace(self, genes: GeneSet) -> GeneDiff:
        change = diff(self._genes, genes)
        self._genes = genes
        return change

    def _rescan(self, outcome: AssemblyResult) -> Optional[GeneDiff]:
        removed, added = self.graph.drain_changes()
        moved = self._per_unitig.update(removed, added) if self._per_unitig is not None else False

        # a complete walk that is not a single unitig revisits nodes; scan what it spells
        if outcome.is_complete and (self._per_unitig is None or self.graph.unitig_count != 1):
            self._tracking = False
            return self._replace(scan_genes(outcome.sequence, self.cfg.codon_table))
        # without emit_partial the previous gene set stands until the assembly completes
        if self._per_unitig is None:
            return None
        if moved or not self._tracking:
            self._tracking = True
            return self._replace(self._per_unitig.gene_set())
        return GeneDiff()

    def _events(self) -> Iterator[StreamEvent]:
        cfg = self.cfg

        for segment in self._segments:
            self.segments_pulled += 1
            ordinal = self.segments_pulled
            try:
                self.graph.insert_segment(segment)
            except (InvalidSymbol, ReadTooShort) as exc:
                logger.warning("skipping segment %d: %s", ordinal, exc)
                yield StreamEvent(kind=EventKind.WARNING, ordinal=ordinal, read_length=len(segment), message=str(exc))
                continue

            self.segments_consumed = ordinal
            yield StreamEvent(kind=EventKind.SEGMENT_INGESTED, ordinal=ordinal, read_length=len(segment))

            self._outcome = self.graph.assemble(include_contigs=False)
            change = self._rescan(self._outcome)
            if change is not None and not change.is_empty:
                yield StreamEvent(
                    kind=EventKind.GENES_UPDATED,
                    ordinal=ordinal,
                    genes=self._genes,
                    added=change.added,
                    removed=change.removed,
                    status=self._outcome.status,
                )

            if cfg.target_genes is not None and len(self._genes) >= cfg.target_genes:
                logger.info("target of %d genes reached after %d segments", cfg.target_genes, ordinal)
                yield self._finish(DoneReason.TARGET_REACHED)
                return

        logger.info("input exhausted after %d segments with %d genes", self.segments_pulled, len(self._genes))
        yield self._finish(DoneReason.INPUT_EXHAUSTED)

    def _finish(self, reason: DoneReason) -> StreamEvent:
        # contig ranks can shift without a key change, so the union is rebuilt once here
        if self._tracking:
            self._genes = self._per_unitig.gene_set()
        self.final_genes = self._genes
        self.done = StreamEvent(
            kind=EventKind.DONE,
            reason=reason,
            segments_consumed=self.segments_consumed,
            genes=self.final_genes,
            status=self._outcome.status if self._outcome else None,
        )
        return self.done


def run_stream(segments: Iterable[str], cfg: Optional[StreamConfig] = None) -> StreamRun:
    return StreamRun(segments, cfg)


def segments_consumed(run: StreamRun) -> int:
    """Ordinal of the last ingested segment of a finished run"""
    if run.done is None:
        raise RuntimeError("the run has not finished yet")
    return run.segments_consumed
