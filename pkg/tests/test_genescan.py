import random

import pytest
from hypothesis import given, strategies as st

from genestream.core.genescan import check_gene, diff, scan_genes, scan_genes_oracle, scan_pieces
from genestream.core.seqcore import STANDARD
from genestream.schemas.response import Gene, GeneSet

dna = st.text(alphabet="ACGT", max_size=600)


def spans(gene_set):
    return [(gene.start, gene.end) for gene in gene_set.genes]


def random_dna(rng, n):
    return "".join(rng.choice("ACGT") for _ in range(n))


def test_minimal_gene():
    assert spans(scan_genes("ATGTAA")) == [(0, 6)]


def test_gene_with_body():
    genes = scan_genes("CCATGAAATAGCC")
    assert spans(genes) == [(2, 11)]
    assert genes.genes[0].bases == "ATGAAATAG"


def test_no_start_codon():
    assert scan_genes("CCCCCC").genes == []


def test_inner_start_is_consumed():
    assert spans(scan_genes("ATGATGTAA")) == [(0, 9)]
    assert spans(scan_genes_oracle("ATGATGTAA")) == [(0, 9)]


def test_out_of_frame_stop_is_ignored():
    assert scan_genes("ATGCTAA").genes == []
    assert scan_genes_oracle("ATGCTAA").genes == []


def test_start_without_stop_is_skipped():
    # the first start never meets an in-frame stop; the second one does
    assert spans(scan_genes("ATGCATGCCCTAA")) == [(4, 13)]


def test_oracle_examples():
    assert spans(scan_genes_oracle("ATGTAA")) == [(0, 6)]


def test_gene_model_rejects_bad_span():
    with pytest.raises(ValueError):
        Gene(start=0, end=5, bases="ATGTA")
    with pytest.raises(ValueError):
        Gene(start=0, end=6, bases="ATGTAAA")


def test_gene_set_rejects_overlap():
    with pytest.raises(ValueError):
        GeneSet(genes=[Gene(start=0, end=6, bases="ATGTAA"), Gene(start=3, end=9, bases="ATGTAA")])


def test_gene_set_allows_overlap_across_contigs():
    GeneSet(genes=[Gene(start=0, end=6, bases="ATGTAA"), Gene(start=0, end=6, bases="ATGTAA", contig_id=1)])


def test_diff_added():
    change = diff(GeneSet(), scan_genes("ATGTAA"))
    assert spans(GeneSet(genes=change.added)) == [(0, 6)]
    assert change.removed == []


def test_diff_identity():
    genes = scan_genes("ATGTAA")
    assert diff(genes, genes).is_empty


def test_diff_disjoint():
    old = GeneSet(genes=[Gene(start=0, end=6, bases="ATGTAA")])
    new = GeneSet(genes=[Gene(start=2, end=11, bases="ATGAAATAG")])
    change = diff(old, new)
    assert change.added == new.genes
    assert change.removed == old.genes


def test_scan_pieces_uses_contig_local_indices():
    genes = scan_pieces(["CCATGTAA", "ATGTAA"])
    assert [(g.contig_id, g.start, g.end) for g in genes.genes] == [(0, 2, 8), (1, 0, 6)]


@given(dna)
def test_scan_matches_oracle(text):
    assert scan_genes(text) == scan_genes_oracle(text)


@given(dna)
def test_gene_invariants(text):
    genes = scan_genes(text)
    starts = [gene.start for gene in genes.genes]
    assert starts == sorted(set(starts))
    for gene in genes.genes:
        assert check_gene(gene, text, STANDARD) == []
    for left, right in zip(genes.genes, genes.genes[1:]):
        assert right.start >= left.end


@given(dna)
def test_first_gene_is_leftmost_viable_start(text):
    genes = scan_genes(text)
    viable = [
        s for s in range(len(text) - 2)
        if text[s:s + 3] == "ATG"
        and any(text[t:t + 3] in STANDARD.stops for t in range(s + 3, len(text) - 2, 3))
    ]
    if viable:
        assert genes.genes[0].start == viable[0]
    else:
        assert genes.genes == []


def test_scan_matches_oracle_random():
    rng = random.Random(17)
    for _ in range(200):
        text = random_dna(rng, rng.randint(0, 2000))
        assert scan_genes(text) == scan_genes_oracle(text)


@pytest.mark.slow
def test_scan_matches_oracle_full_scale():
    rng = random.Random(18)
    for _ in range(1000):
        text = random_dna(rng, rng.randint(0, 5000))
        assert scan_genes(text) == scan_genes_oracle(text)


def test_check_gene_reports_problems():
    gene = Gene(start=0, end=9, bases="ATGTAATAA")
    assert check_gene(gene, "ATGTAATAA") == ["premature in-frame stop at offset 3"]
