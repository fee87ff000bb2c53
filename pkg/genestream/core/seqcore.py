"""
Alphabet, sequence normalization, codon tables and 2-bit k-mer packing.

Every other module works on plain ``str`` sequences that went through
``normalize`` once at the boundary; inside the package a sequence is trusted.
"""

import re
from typing import Annotated, Dict, Iterator, List, NamedTuple, Optional, Tuple

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_validator, model_validator

from genestream.core.errors import InvalidSymbol, KTooLarge

ALPHABET = "ACGT"
SYMBOL_CODE: Dict[str, int] = {symbol: code for code, symbol in enumerate(ALPHABET)}
MAX_K = 31

_INVALID = re.compile(r"[^ACGTU]")
_TO_BYTES = bytes.maketrans(b"ACGT", b"\x00\x01\x02\x03")


def normalize(raw: str) -> str:
    """Uppercase, map U to T and validate against the DNA alphabet"""
    upper = raw.upper()
    bad = _INVALID.search(upper)
    if bad:
        source = raw if len(raw) == len(upper) else upper
        raise InvalidSymbol(bad.start(), source[bad.start()])
    return upper.replace("U", "T")


def _validated(value: str) -> str:
    return normalize(value)


# Field type for pydantic models holding bases
Sequence = Annotated[str, AfterValidator(_validated)]


class Kmer(NamedTuple):
    """A k-mer packed at 2 bits per base, most significant base first."""

    k: int
    code: int

    def decode(self) -> str:
        return decode_kmer(self)


def _check_k(k: int) -> None:
    if k > MAX_K:
        raise KTooLarge(k, MAX_K)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def encode_kmer(s: str, k: Optional[int] = None) -> Kmer:
    if k is None:
        k = len(s)
    _check_k(k)
    if len(s) != k:
        raise ValueError(f"slice of length {len(s)} does not match k={k}")
    code = 0
    for base in s.encode("ascii").translate(_TO_BYTES):
        code = (code << 2) | base
    return Kmer(k, code)


def decode_kmer(kmer: Kmer) -> str:
    k, code = kmer
    bases = []
    for _ in range(k):
        bases.append(ALPHABET[code & 3])
        code >>= 2
    return "".join(reversed(bases))


def decode_code(code: int, k: int) -> str:
    return decode_kmer(Kmer(k, code))


def iter_kmer_codes(s: str, k: int) -> Iterator[int]:
    """Rolling 2-bit codes of every length-k window of ``s``, left to right."""
    _check_k(k)
    mask = (1 << (2 * k)) - 1
    code = 0
    for i, base in enumerate(s.encode("ascii").translate(_TO_BYTES)):
        code = ((code << 2) | base) & mask
        if i >= k - 1:
            yield code


def kmers_of(s: str, k: int) -> List[Kmer]:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return [Kmer(k, code) for code in iter_kmer_codes(s, k)]


class CodonTable(BaseModel):
    """Start and stop codons used by the gene scanner"""

    model_config = ConfigDict(frozen=True)

    name: str = Field("standard", description="Table identifier")
    start: Sequence = Field("ATG", description="Start codon")
    stops: Tuple[Sequence, Sequence, Sequence] = Field(("TAA", "TAG", "TGA"), description="Stop codons")

    @field_validator("start")
    @classmethod
    def _codon_length(cls, value: str) -> str:
        if len(value) != 3:
            raise ValueError(f"codon {value!r} must have exactly 3 bases")
        return value

    @field_validator("stops")
    @classmethod
    def _stops_are_codons(cls, value: Tuple[str, str, str]) -> Tuple[str, str, str]:
        for codon in value:
            if len(codon) != 3:
                raise ValueError(f"codon {codon!r} must have exactly 3 bases")
        if len(set(value)) != len(value):
            raise ValueError("stop codons must be pairwise distinct")
        return value

    @model_validator(mode="after")
    def _start_not_a_stop(self) -> "CodonTable":
        if self.start in self.stops:
            raise ValueError(f"start codon {self.start} is also a stop codon")
        return self


STANDARD = CodonTable()

CODON_TABLES: Dict[str, CodonTable] = {
    STANDARD.name: STANDARD,
}


def codon_table(name: str) -> CodonTable:
    try:
        return CODON_TABLES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown codon table {name!r}; known: {', '.join(sorted(CODON_TABLES))}")
