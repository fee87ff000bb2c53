"""Benchmark instrumentation: timing, segments consumed and the k-mer memory proxy."""

import logging
import time
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from genestream.core.debruijn import DeBruijnGraph
from genestream.core.patmatch import count_codon_comparisons
from genestream.core.stream import run_stream
from genestream.harness.simulator import simulate
from genestream.schemas.request import BenchSpecRow, SimSpec, StreamConfig
from genestream.schemas.response import AssemblyStatus, BenchRecord

logger = logging.getLogger(__name__)

# mitochondrial-scale lengths for the memory proxy
TABLE_LENGTHS = (13794, 15600, 16508, 16692, 17085)


def bench_run(spec: SimSpec, cfg: StreamConfig) -> BenchRecord:
    sim = simulate(spec, cfg.codon_table)

    started = time.perf_counter()
    run = run_stream(sim.reads, cfg).run()
    wall_time_ms = (time.perf_counter() - started) * 1000.0

    assembly = run.assembly
    assembled = "".join(assembly.pieces()) if assembly is not None else ""
    bm, naive = count_codon_comparisons(assembled, cfg.codon_table) if assembled else (0, 0)

    record = BenchRecord(
        sequence_length=len(sim.reference),
        distinct_kmers=run.graph.distinct_edge_count,
        segments_total=len(sim.reads),
        segments_consumed=run.segments_consumed,
        genes_found=len(run.final_genes),
        target_genes=cfg.target_genes,
        wall_time_ms=round(wall_time_ms, 3),
        bm_comparisons=bm,
        naive_comparisons=naive,
    )
    logger.info(
        "bench: %d bases, %d/%d segments, %d genes in %.1f ms",
        record.sequence_length,
        record.segments_consumed,
        record.segments_total,
        record.genes_found,
        record.wall_time_ms,
    )
    return record


def bench_many(rows: Iterable[BenchSpecRow]) -> List[BenchRecord]:
    return [bench_run(row.sim_spec(), row.stream_config()) for row in rows]


class MemoryPoint(NamedTuple):
    sequence_length: int
    distinct_kmers: int
    status: AssemblyStatus


def memory_proxy(lengths: Sequence[int] = TABLE_LENGTHS, k: int = 21, seed: int = 0) -> List[MemoryPoint]:
    """Distinct k-mers held after a batch build of one simulated reference per length"""
    points = []
    for offset, length in enumerate(lengths):
        spec = SimSpec(seed=seed + offset, length=length, gene_count=0, min_overlap=k - 1, k=k)
        sim = simulate(spec)
        graph = DeBruijnGraph(k)
        for read in sim.reads:
            graph.insert_segment(read)
        points.append(MemoryPoint(length, graph.distinct_edge_count, graph.assemble().status))
    return points


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float]:
    """Least-squares line through the points: (slope, intercept, r squared)"""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    r_squared = 1.0 if total == 0 else 1.0 - float(np.sum(residual ** 2)) / float(total)
    return float(slope), float(intercept), r_squared


def early_stop_profile(
    spec: SimSpec, targets: Sequence[int], cfg: Optional[StreamConfig] = None
) -> List[BenchRecord]:
    """The same simulated reference streamed once per gene target"""
    base = cfg or StreamConfig()
    return [bench_run(spec, base.model_copy(update={"target_genes": target})) for target in targets]
