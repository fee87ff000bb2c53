"""
Greedy gene extraction: leftmost start codon, nearest in-frame stop codon,
then continue strictly after that stop.
"""

from bisect import bisect_left
from collections import Counter
from typing import List, Optional

from genestream.core.patmatch import bm_search, find_all_codons
from genestream.core.seqcore import STANDARD, CodonTable
from genestream.schemas.response import CodonHits, Gene, GeneDiff, GeneSet


def scan_genes(
    text: str,
    table: CodonTable = STANDARD,
    contig_id: int = 0,
    hits: Optional[CodonHits] = None,
) -> GeneSet:
    if hits is None:
        starts = bm_search(text, table.start)
        if not starts.occurrences:
            return GeneSet()
        hits = find_all_codons(text, table, starts)

    # stop indices bucketed by reading frame
    frames: List[List[int]] = [[], [], []]
    for index in hits.stops:
        frames[index % 3].append(index)

    genes: List[Gene] = []
    cursor = 0
    for start in hits.starts:
        if start < cursor:
            continue
        in_frame = frames[start % 3]
        pos = bisect_left(in_frame, start + 3)
        if pos == len(in_frame):
            continue
        end = in_frame[pos] + 3
        genes.append(Gene(start=start, end=end, bases=text[start:end], contig_id=contig_id))
        cursor = end

    return GeneSet(genes=genes)


def scan_genes_oracle(text: str, table: CodonTable = STANDARD) -> GeneSet:
    """Direct codon-grid walk with no shared code path; quadratic, for tests"""
    stops = set(table.stops)
    genes: List[Gene] = []
    cursor = 0
    for start in range(len(text) - 2):
        if start < cursor or text[start:start + 3] != table.start:
            continue
        for codon_at in range(start + 3, len(text) - 2, 3):
            if text[codon_at:codon_at + 3] in stops:
                end = codon_at + 3
                genes.append(Gene(start=start, end=end, bases=text[start:end]))
                cursor = end
                break
    return GeneSet(genes=genes)


def scan_pieces(pieces: List[str], table: CodonTable = STANDARD) -> GeneSet:
    """Scan each contig separately; indices stay local to their contig"""
    genes: List[Gene] = []
    for contig_id, piece in enumerate(pieces):
        genes.extend(scan_genes(piece, table, contig_id=contig_id).genes)
    return GeneSet(genes=genes)


def diff(old: GeneSet, new: GeneSet) -> GeneDiff:
    """Multiset difference keyed on (start, end, bases)"""
    old_counts, new_counts = old.key_counts(), new.key_counts()
    only_new: Counter = new_counts - old_counts
    only_old: Counter = old_counts - new_counts

    added, removed = [], []
    for gene in new.genes:
        if only_new[gene.key]:
            only_new[gene.key] -= 1
            added.append(gene)
    for gene in old.genes:
        if only_old[gene.key]:
            only_old[gene.key] -= 1
            removed.append(gene)
    return GeneDiff(added=added, removed=removed)


def check_gene(gene: Gene, text: str, table: CodonTable = STANDARD) -> List[str]:
    """Invariants a gene violates against the sequence it was scanned from"""
    problems = []
    if text[gene.start:gene.end] != gene.bases:
        problems.append("bases do not match the sequence at [start, end)")
    if not gene.bases.startswith(table.start):
        problems.append("does not begin with the start codon")
    if gene.bases[-3:] not in table.stops:
        problems.append("does not end with a stop codon")
    if (gene.end - gene.start) % 3 or gene.end - gene.start < 6:
        problems.append("span is not a whole number of codons >= 6")
    for offset in range(3, len(gene.bases) - 3, 3):
        if gene.bases[offset:offset + 3] in table.stops:
            problems.append(f"premature in-frame stop at offset {offset}")
            break
    return problems
