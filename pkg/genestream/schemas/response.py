from collections import Counter
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from genestream.core.seqcore import Sequence


class MatchReport(BaseModel):
    occurrences: List[int] = Field(default_factory=list, description="Sorted start indices of every match")
    comparisons: int = Field(0, description="Character comparisons performed")
    pattern_length: int = Field(0, description="Length of the searched pattern")


class CodonHits(BaseModel):
    starts: List[int] = Field(default_factory=list, description="Start codon indices")
    stops: List[int] = Field(default_factory=list, description="Merged stop codon indices")
    stop_codons: Dict[int, str] = Field(default_factory=dict, description="Stop codon found at each stop index")
    comparisons: int = Field(0, description="Comparisons over all codon searches")


class GraphStats(BaseModel):
    node_count: int = Field(0, description="Distinct (k-1)-mer nodes")
    distinct_edge_count: int = Field(0, description="Distinct k-mers (edges without multiplicity)")
    edge_count: int = Field(0, description="Total edge multiplicity")
    start_node_count: int = Field(0, description="Candidate traversal start nodes")


class Contig(BaseModel):
    model_config = ConfigDict(frozen=True)

    bases: Sequence = Field(..., description="Spelled contig sequence")
    source_path: List[int] = Field(..., description="Packed (k-1)-mer node codes along the path")
    k: int = Field(..., description="k-mer length of the graph the contig came from")

    @model_validator(mode="after")
    def _spelling_matches_path(self) -> "Contig":
        if len(self.bases) != len(self.source_path) + self.k - 2:
            raise ValueError(
                f"contig of {len(self.bases)} bases cannot spell a path of {len(self.source_path)} nodes at k={self.k}"
            )
        return self


class AssemblyStatus(str, Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"
    AMBIGUOUS = "ambiguous"


class AssemblyResult(BaseModel):
    status: AssemblyStatus = Field(..., description="Outcome of the traversal")
    sequence: Optional[str] = Field(None, description="Reconstructed sequence when complete")
    contigs: List[Contig] = Field(default_factory=list, description="Maximal unambiguous paths when not complete")
    reason: Optional[str] = Field(None, description="Why the graph could not be spelled in one walk")
    node: Optional[str] = Field(None, description="Offending branching node when ambiguous")

    @property
    def is_complete(self) -> bool:
        return self.status is AssemblyStatus.COMPLETE

    def pieces(self) -> List[str]:
        """Sequences a gene scan should run over, in contig order"""
        if self.is_complete:
            return [self.sequence]
        return [contig.bases for contig in self.contigs]


class Gene(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int = Field(..., ge=0, description="Index of the first base of the start codon")
    end: int = Field(..., description="Index one past the last base of the stop codon")
    bases: Sequence = Field(..., description="Gene sequence [start, end)")
    contig_id: int = Field(0, ge=0, description="Contig the indices refer to (0 for a complete assembly)")

    @model_validator(mode="after")
    def _codon_aligned(self) -> "Gene":
        span = self.end - self.start
        if span != len(self.bases):
            raise ValueError(f"gene span {span} does not match {len(self.bases)} bases")
        if span < 6 or span % 3:
            raise ValueError(f"gene span {span} is not a whole number of codons >= 6")
        return self

    @property
    def key(self):
        return (self.start, self.end, self.bases)


class GeneSet(BaseModel):
    genes: List[Gene] = Field(default_factory=list, description="Genes sorted by contig then start")

    @model_validator(mode="after")
    def _disjoint_per_contig(self) -> "GeneSet":
        for previous, current in zip(self.genes, self.genes[1:]):
            if current.contig_id < previous.contig_id:
                raise ValueError("genes must be sorted by contig")
            if current.contig_id == previous.contig_id and current.start < previous.end:
                raise ValueError(
                    f"gene at {current.start} overlaps gene ending at {previous.end} on contig {current.contig_id}"
                )
        return self

    def __len__(self) -> int:
        return len(self.genes)

    def key_counts(self) -> Counter:
        return Counter(gene.key for gene in self.genes)


class GeneDiff(BaseModel):
    added: List[Gene] = Field(default_factory=list, description="Genes present only in the new set")
    removed: List[Gene] = Field(default_factory=list, description="Genes present only in the old set")

    @property
    def is_empty(self) -> bool:
        return not self.added and not self.removed


class EventKind(str, Enum):
    SEGMENT_INGESTED = "segment_ingested"
    GENES_UPDATED = "genes_updated"
    WARNING = "warning"
    DONE = "done"


class DoneReason(str, Enum):
    TARGET_REACHED = "target_reached"
    INPUT_EXHAUSTED = "input_exhausted"


class StreamEvent(BaseModel):
    kind: EventKind = Field(..., description="Event type")
    ordinal: Optional[int] = Field(None, description="Source position of the segment (1-based)")
    read_length: Optional[int] = Field(None, description="Length of the ingested segment")
    genes: Optional[GeneSet] = Field(None, description="Current gene set")
    added: Optional[List[Gene]] = Field(None, description="Genes that appeared with this update")
    removed: Optional[List[Gene]] = Field(None, description="Genes that disappeared with this update")
    status: Optional[AssemblyStatus] = Field(None, description="Assembly status behind the gene set")
    reason: Optional[DoneReason] = Field(None, description="Why the run finished")
    segments_consumed: Optional[int] = Field(None, description="Segments pulled from the source")
    message: Optional[str] = Field(None, description="Warning text")


class OverlapEdge(BaseModel):
    source: int = Field(..., description="Index of the segment whose suffix overlaps")
    target: int = Field(..., description="Index of the segment whose prefix overlaps")
    overlap: int = Field(..., ge=1, description="Length of the maximal suffix/prefix overlap")


class OverlapGraph(BaseModel):
    nodes: List[str] = Field(default_factory=list, description="Segments")
    edges: List[OverlapEdge] = Field(default_factory=list, description="Maximal overlaps per ordered pair")

    def weight(self, source: int, target: int) -> int:
        for edge in self.edges:
            if edge.source == source and edge.target == target:
                return edge.overlap
        return 0


class SimResult(BaseModel):
    reference: str = Field(..., description="Generated source sequence")
    reads: List[str] = Field(default_factory=list, description="Error-free fragments in arrival order")
    truth: GeneSet = Field(default_factory=GeneSet, description="Scanner genes of the reference")


class BenchRecord(BaseModel):
    sequence_length: int = Field(0, description="Reference length in bases")
    distinct_kmers: int = Field(0, description="Distinct k-mers held by the graph (memory proxy)")
    segments_total: int = Field(0, description="Reads produced by the simulator")
    segments_consumed: int = Field(0, description="Reads pulled before the run finished")
    genes_found: int = Field(0, description="Genes in the final gene set")
    target_genes: Optional[int] = Field(None, description="Early-stop target, if any")
    wall_time_ms: float = Field(0.0, description="Streaming wall time in milliseconds")
    bm_comparisons: int = Field(0, description="Boyer-Moore comparisons for the codon search")
    naive_comparisons: int = Field(0, description="Naive-scan comparisons for the codon search")
