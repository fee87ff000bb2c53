import random
from collections import Counter

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from genestream.core.debruijn import DeBruijnGraph, assemble_reads, verify_assembly
from genestream.core.errors import InvalidSymbol, KTooLarge, ReadTooShort
from genestream.core.seqcore import encode_kmer, iter_kmer_codes
from genestream.schemas.response import AssemblyStatus


def graph_of(reads, k):
    graph = DeBruijnGraph(k)
    for read in reads:
        graph.insert_segment(read)
    return graph


def node(label):
    return encode_kmer(label).code


def random_unique_sequence(rng, length, k):
    """Random sequence with no repeated (k-1)-mer and distinct first/last (k-1)-mers"""
    while True:
        s = "".join(rng.choice("ACGT") for _ in range(length))
        nodes = list(iter_kmer_codes(s, k - 1))
        if len(set(nodes)) == len(nodes) and nodes[0] != nodes[-1]:
            return s


def windows(s, rng, k, read_min=30, read_max=99):
    """Covering windows whose neighbours overlap by at least k-1 bases"""
    reads, pos = [], 0
    while True:
        length = rng.randint(read_min, read_max)
        start = max(0, min(pos, len(s) - length))
        reads.append(s[start:start + length])
        if start + length >= len(s):
            return reads
        pos = start + length - rng.randint(k - 1, length - 1)


def test_rejects_k_above_packing_limit():
    with pytest.raises(KTooLarge):
        DeBruijnGraph(32)


def test_single_kmer_read():
    graph = graph_of(["AAGT"], 4)
    assert graph.edge_count == 1
    assert graph.nodes == {node("AAG"), node("AGT")}
    assert graph.successors(node("AAG")) == [(node("AGT"), 1)]


def test_graph2_sequence_is_a_simple_path(graph2_sequence):
    stats = graph_of([graph2_sequence], 4).stats()
    assert stats.node_count == 9
    assert stats.edge_count == 8
    assert stats.distinct_edge_count == 8
    assert stats.start_node_count == 1


def test_graph2_sequence_at_k3_revisits_a_node(graph2_sequence):
    stats = graph_of([graph2_sequence], 3).stats()
    assert stats.node_count == 9
    assert stats.edge_count == 9


def test_multiplicity_accumulates(graph2_sequence):
    once = graph_of([graph2_sequence], 4)
    twice = graph_of([graph2_sequence, graph2_sequence], 4)
    assert twice.nodes == once.nodes
    assert twice.edge_count == 16
    for n in twice.nodes:
        assert all(mult == 2 for _, mult in twice.successors(n))


def test_read_shorter_than_k_is_rejected():
    graph = DeBruijnGraph(4)
    with pytest.raises(ReadTooShort) as info:
        graph.insert_segment("AAG")
    assert (info.value.length, info.value.k) == (3, 4)
    assert graph.edge_count == 0


def test_degree_counters_match_adjacency(graph2_fragments):
    graph = graph_of(graph2_fragments + ["GTCATTA"], 4)
    for n in graph.nodes:
        assert graph.outdegree[n] == sum(mult for _, mult in graph.successors(n))
        incoming = sum(
            mult for m in graph.nodes for succ, mult in graph.successors(m) if succ == n
        )
        assert graph.indegree[n] == incoming


def test_edge_conservation():
    reads = ["AAGTC", "GTCAT", "CATTA", "TTACA", "AAGTCATTACA"]
    graph = graph_of(reads, 4)
    assert graph.edge_count == sum(max(0, len(r) - 4 + 1) for r in reads)


def test_start_nodes(graph2_sequence):
    assert graph_of([graph2_sequence], 4).find_start_nodes() == [node("AAG")]
    assert DeBruijnGraph(4).find_start_nodes() == []
    assert graph_of(["AAGT", "TTAC"], 4).find_start_nodes() == [node("AAG"), node("TTA")]


def test_empty_graph_stats():
    stats = DeBruijnGraph(4).stats()
    assert stats.node_count == stats.edge_count == stats.distinct_edge_count == stats.start_node_count == 0


def test_assemble_graph2_sequence(graph2_sequence):
    result = graph_of([graph2_sequence], 4).assemble()
    assert result.status is AssemblyStatus.COMPLETE
    assert result.sequence == "AAGTCATTACA"


def test_assemble_graph2_fragments(graph2_fragments):
    result = assemble_reads(graph2_fragments, 4)
    assert result.is_complete
    assert result.sequence == "AAGTCATTACA"


def test_assemble_revisited_node_with_single_successor(graph2_sequence):
    result = graph_of([graph2_sequence], 3).assemble()
    assert result.sequence == graph2_sequence


def test_single_fragment_spells_itself():
    graph = graph_of(["CATTA"], 4)
    assert graph.assemble().sequence == "CATTA"
    assert [contig.bases for contig in graph.contigs()] == ["CATTA"]


def test_disconnected_reads_are_partial():
    result = graph_of(["AAGT", "TTAC"], 4).assemble()
    assert result.status is AssemblyStatus.PARTIAL
    assert [contig.bases for contig in result.contigs] == ["AAGT", "TTAC"]


def test_unconsumed_cycle_is_partial():
    result = graph_of(["AAGT", "CCGCCG"], 4).assemble()
    assert result.status is AssemblyStatus.PARTIAL
    assert [contig.bases for contig in result.contigs] == ["AAGT", "CCGCCG"]
    for contig in result.contigs:
        assert len(contig.bases) == len(contig.source_path) + 4 - 2


def test_branching_walk_is_ambiguous():
    result = graph_of(["GTCAGGCATC"], 3).assemble()
    assert result.status is AssemblyStatus.AMBIGUOUS
    assert result.node == "CA"
    assert result.contigs


def test_empty_graph_is_partial_without_contigs():
    result = DeBruijnGraph(4).assemble()
    assert result.status is AssemblyStatus.PARTIAL
    assert result.contigs == []


def test_contig_interior_nodes_are_unambiguous():
    graph = graph_of(["GTCAGGCATC"], 3)
    for contig in graph.contigs():
        for n in contig.source_path[1:-1]:
            assert graph._is_one_in_one_out(n)


def test_round_trip_random_sequences():
    rng = random.Random(11)
    for _ in range(20):
        k = 21
        s = random_unique_sequence(rng, rng.randint(100, 2000), k)
        result = graph_of([s], k).assemble()
        assert result.is_complete and result.sequence == s


@pytest.mark.slow
def test_round_trip_random_sequences_full_scale():
    rng = random.Random(12)
    for _ in range(100):
        k = 31
        s = random_unique_sequence(rng, rng.randint(100, 20000), k)
        assert graph_of([s], k).assemble().sequence == s


def test_fragment_closure_equals_sequence_graph():
    rng = random.Random(5)
    k = 15
    for _ in range(25):
        s = random_unique_sequence(rng, rng.randint(100, 1500), k)
        reads = windows(s, rng, k)
        rng.shuffle(reads)
        fragments = graph_of(reads, k)
        whole = graph_of([s], k)
        assert fragments.nodes == whole.nodes
        for n in whole.nodes:
            assert [succ for succ, _ in fragments.successors(n)] == [succ for succ, _ in whole.successors(n)]
        result = fragments.assemble()
        assert result.is_complete and result.sequence == s


def test_eulerian_balance_of_complete_graph():
    rng = random.Random(3)
    k = 12
    s = random_unique_sequence(rng, 600, k)
    graph = graph_of([s], k)
    balance = {n: graph.outdegree[n] - graph.indegree[n] for n in graph.nodes}
    assert sorted(balance.values()).count(1) == 1
    assert sorted(balance.values()).count(-1) == 1
    assert all(b in (-1, 0, 1) for b in balance.values())
    assert balance[encode_kmer(s[:k - 1]).code] == 1
    assert balance[encode_kmer(s[-(k - 1):]).code] == -1


def test_verify_assembly(graph2_sequence, graph2_fragments):
    assert verify_assembly(graph2_sequence, graph2_fragments) == []
    assert verify_assembly(graph2_sequence, ["AAGTC", "GGGG"]) == [1]


def test_lowercase_and_rna_reads_are_normalized(graph2_sequence):
    result = DeBruijnGraph(4).insert_segment("aagtcattaca").assemble()
    assert result.status is AssemblyStatus.COMPLETE
    assert result.sequence == graph2_sequence
    assert graph_of(["AAGUCAUUACA"], 4).nodes == graph_of([graph2_sequence], 4).nodes


def test_invalid_symbol_leaves_graph_untouched():
    graph = graph_of(["AAGTC"], 4)
    with pytest.raises(InvalidSymbol) as info:
        graph.insert_segment("GTCNT")
    assert info.value.position == 3
    assert graph.edge_count == 2
    assert graph.assemble().sequence == "AAGTC"


# ---- incremental unitigs against a from-scratch rebuild ----


def distinct_degrees(graph):
    din, dout = Counter(), Counter()
    for n in graph.nodes:
        for succ, _ in graph.successors(n):
            dout[n] += 1
            din[succ] += 1
    return din, dout


def spell(graph, path):
    return graph.decode(path[0]) + "".join(graph.decode(n)[-1] for n in path[1:])


def rebuilt_paths(graph):
    din, dout = distinct_degrees(graph)

    def simple(n):
        return din[n] == 1 and dout[n] == 1

    def after(n):
        return graph.successors(n)[0][0]

    paths, visited = [], set()
    for n in sorted(graph.nodes):
        if simple(n):
            continue
        for succ, _ in graph.successors(n):
            path = [n, succ]
            while simple(succ):
                visited.add(succ)
                succ = after(succ)
                path.append(succ)
            paths.append(path)
    for n in sorted(graph.nodes):
        if n in visited or not simple(n):
            continue
        path = [n]
        visited.add(n)
        succ = after(n)
        while succ != n:
            visited.add(succ)
            path.append(succ)
            succ = after(succ)
        paths.append(path + [n])
    return paths


def walked(graph):
    """(status, sequence) from an edge-by-edge walk over the whole graph"""
    if not graph.nodes:
        return AssemblyStatus.PARTIAL, None
    din, dout = distinct_degrees(graph)
    starts = [n for n in sorted(graph.nodes) if din[n] == 0 or dout[n] - din[n] == 1]
    if len(starts) != 1:
        return AssemblyStatus.PARTIAL, None
    used, path, n = set(), [starts[0]], starts[0]
    while True:
        viable = [succ for succ, _ in graph.successors(n) if (n, succ) not in used]
        if not viable:
            break
        if len(viable) > 1:
            return AssemblyStatus.AMBIGUOUS, None
        used.add((n, viable[0]))
        n = viable[0]
        path.append(n)
    if len(used) != graph.distinct_edge_count:
        return AssemblyStatus.PARTIAL, None
    return AssemblyStatus.COMPLETE, spell(graph, path)


def check_against_rebuild(graph, live):
    removed, added = graph.drain_changes()
    for unitig in removed:
        del live[unitig.id]
    for unitig in added:
        live[unitig.id] = unitig
    assert sorted(live) == sorted(unitig.id for unitig in graph.unitigs())

    contigs = graph.contigs()
    assert [contig.source_path for contig in contigs] == rebuilt_paths(graph)
    for contig in contigs:
        assert contig.bases == spell(graph, contig.source_path)

    result = graph.assemble()
    assert (result.status, result.sequence) == walked(graph)
    din, dout = distinct_degrees(graph)
    assert graph.find_start_nodes() == [n for n in sorted(graph.nodes) if din[n] == 0 or dout[n] - din[n] == 1]


@hsettings(max_examples=200, deadline=None)
@given(
    k=st.integers(min_value=2, max_value=5),
    reads=st.lists(st.text(alphabet="ACGT", min_size=5, max_size=14), min_size=1, max_size=8),
)
def test_unitigs_follow_every_insert(k, reads):
    graph, live = DeBruijnGraph(k), {}
    for read in reads:
        graph.insert_segment(read)
        check_against_rebuild(graph, live)


def test_unitigs_follow_shuffled_windows():
    rng = random.Random(17)
    for _ in range(10):
        k = rng.randint(4, 7)
        s = "".join(rng.choice("ACGT") for _ in range(rng.randint(40, 120)))
        reads = windows(s, rng, k, read_min=k + 1, read_max=k + 12)
        rng.shuffle(reads)
        graph, live = DeBruijnGraph(k), {}
        for read in reads:
            graph.insert_segment(read)
            check_against_rebuild(graph, live)


def test_changes_net_out_between_drains(graph2_fragments):
    graph = DeBruijnGraph(4)
    for read in graph2_fragments:
        graph.insert_segment(read)
    removed, added = graph.drain_changes()
    assert removed == []
    assert [unitig.bases for unitig in added] == ["AAGTCATTACA"]
    assert graph.drain_changes() == ([], [])
