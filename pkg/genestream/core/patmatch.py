"""
Exact string search over nucleotide text.

``bm_search`` is full Boyer-Moore (bad-character and strong good-suffix
rules, shift = max of the two) and reports overlapping occurrences.
``naive_search`` is the window-by-window oracle. Both count every
character-pair test so the two can be compared.
"""

from functools import lru_cache
from heapq import merge
from typing import Dict, List, Optional, Tuple, Union

from genestream.core.errors import EmptyPattern
from genestream.core.seqcore import ALPHABET, CodonTable
from genestream.schemas.response import CodonHits, MatchReport


class Pattern:
    """A pattern with its Boyer-Moore shift tables precomputed"""

    __slots__ = ("bases", "bad_char", "good_suffix")

    def __init__(self, bases: str):
        if not bases:
            raise EmptyPattern()
        self.bases = bases
        self.bad_char = self._bad_character_table(bases)
        self.good_suffix = self._good_suffix_table(bases)

    def __len__(self) -> int:
        return len(self.bases)

    def __repr__(self) -> str:
        return f"Pattern({self.bases!r})"

    @staticmethod
    def _bad_character_table(bases: str) -> Dict[str, int]:
        # rightmost index of each symbol, -1 when absent
        table = {symbol: -1 for symbol in ALPHABET}
        for i, symbol in enumerate(bases):
            table[symbol] = i
        return table

    @staticmethod
    def _good_suffix_table(bases: str) -> List[int]:
        """
        Strong good-suffix shifts indexed by the position after the mismatch.
        ``shift[0]`` is the pattern period, used after a full match.
        """
        m = len(bases)
        shift = [0] * (m + 1)
        border = [0] * (m + 1)

        i, j = m, m + 1
        border[i] = j
        while i > 0:
            while j <= m and bases[i - 1] != bases[j - 1]:
                if shift[j] == 0:
                    shift[j] = j - i
                j = border[j]
            i -= 1
            j -= 1
            border[i] = j

        j = border[0]
        for i in range(m + 1):
            if shift[i] == 0:
                shift[i] = j
            if i == j:
                j = border[j]
        return shift


@lru_cache(maxsize=64)
def _compiled(bases: str) -> Pattern:
    return Pattern(bases)


def _as_pattern(pattern: Union[Pattern, str]) -> Pattern:
    return pattern if isinstance(pattern, Pattern) else _compiled(pattern)


def bm_search(text: str, pattern: Union[Pattern, str]) -> MatchReport:
    pattern = _as_pattern(pattern)
    bases, bad_char, good_suffix = pattern.bases, pattern.bad_char, pattern.good_suffix
    n, m = len(text), len(bases)

    occurrences: List[int] = []
    comparisons = 0
    s = 0
    while s <= n - m:
        j = m - 1
        while j >= 0:
            comparisons += 1
            if bases[j] != text[s + j]:
                break
            j -= 1
        if j < 0:
            occurrences.append(s)
            s += good_suffix[0]
        else:
            s += max(good_suffix[j + 1], j - bad_char.get(text[s + j], -1))

    return MatchReport(occurrences=occurrences, comparisons=comparisons, pattern_length=m)


def naive_search(text: str, pattern: Union[Pattern, str]) -> MatchReport:
    bases = pattern.bases if isinstance(pattern, Pattern) else pattern
    if not bases:
        raise EmptyPattern()
    n, m = len(text), len(bases)

    occurrences: List[int] = []
    comparisons = 0
    for s in range(n - m + 1):
        for j in range(m):
            comparisons += 1
            if bases[j] != text[s + j]:
                break
        else:
            occurrences.append(s)

    return MatchReport(occurrences=occurrences, comparisons=comparisons, pattern_length=m)


def find_all_codons(text: str, table: CodonTable, starts: Optional[MatchReport] = None) -> CodonHits:
    """Start and stop codon positions via one Boyer-Moore pass per codon"""
    if starts is None:
        starts = bm_search(text, table.start)
    comparisons = starts.comparisons

    per_stop: List[List[int]] = []
    stop_codons: Dict[int, str] = {}
    for codon in table.stops:
        report = bm_search(text, codon)
        comparisons += report.comparisons
        per_stop.append(report.occurrences)
        for index in report.occurrences:
            stop_codons[index] = codon

    return CodonHits(
        starts=starts.occurrences,
        stops=list(merge(*per_stop)),
        stop_codons=stop_codons,
        comparisons=comparisons,
    )


def count_codon_comparisons(text: str, table: CodonTable) -> Tuple[int, int]:
    """(Boyer-Moore, naive) comparison totals for finding every codon in ``text``"""
    bm = naive = 0
    for codon in (table.start, *table.stops):
        bm += bm_search(text, codon).comparisons
        naive += naive_search(text, codon).comparisons
    return bm, naive
