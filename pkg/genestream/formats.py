"""
File formats at the CLI boundary: FASTA reads in, gene TSV, event JSON lines
and bench CSV out.
"""

import csv
from typing import IO, Iterable, Iterator, List, NamedTuple, Optional

from pydantic import ValidationError

from genestream.config import settings
from genestream.core.errors import FastaFormatError, InvalidSymbol
from genestream.core.seqcore import normalize
from genestream.schemas.request import BenchSpecRow
from genestream.schemas.response import AssemblyResult, BenchRecord, GeneSet, StreamEvent

GENE_COLUMNS = ("contig_id", "start", "end", "sequence")
BENCH_COLUMNS = (
    "sequence_length",
    "distinct_kmers",
    "segments_total",
    "segments_consumed",
    "genes_found",
    "target_genes",
    "wall_time_ms",
    "bm_comparisons",
    "naive_comparisons",
)
BENCH_SPEC_COLUMNS = (
    "seed",
    "length",
    "genes",
    "read_min",
    "read_max",
    "overlap",
    "shuffle",
    "k",
    "target_genes",
    "emit_partial",
)


class FastaRecord(NamedTuple):
    id: str
    sequence: str
    line: int = 0


class RecordSymbolError(FastaFormatError):
    """An invalid nucleotide inside a named record"""

    def __init__(self, record_id: str, line_number: int, error: InvalidSymbol):
        self.record_id = record_id
        self.position = error.position
        self.char = error.char
        super().__init__(line_number, f"record {record_id!r}: invalid nucleotide {error.char!r} at position {error.position}")


def read_fasta(handle: IO[str]) -> Iterator[FastaRecord]:
    """Yield records one at a time; sequences are raw, see ``read_reads`` for validation"""
    record_id: Optional[str] = None
    header_line = 0
    chunks: List[str] = []
    for line_number, line in enumerate(handle, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if record_id is not None:
                yield FastaRecord(record_id, "".join(chunks), header_line)
            record_id = line[1:].strip() or f"record{line_number}"
            header_line = line_number
            chunks = []
        elif record_id is None:
            raise FastaFormatError(line_number, "sequence data before the first '>' header")
        else:
            chunks.append(line)
    if record_id is not None:
        yield FastaRecord(record_id, "".join(chunks), header_line)


def read_reads(handle: IO[str]) -> Iterator[str]:
    """Normalized record sequences in file order"""
    for record in read_fasta(handle):
        try:
            yield normalize(record.sequence)
        except InvalidSymbol as exc:
            raise RecordSymbolError(record.id, record.line, exc) from exc


def write_fasta(handle: IO[str], records: Iterable[FastaRecord], width: Optional[int] = None) -> None:
    width = width or settings.FASTA_LINE_WIDTH
    for record in records:
        handle.write(f">{record.id}\n")
        for offset in range(0, len(record.sequence), width):
            handle.write(record.sequence[offset:offset + width] + "\n")


def assembly_records(assembly: Optional[AssemblyResult]) -> List[FastaRecord]:
    if assembly is None:
        return []
    if assembly.is_complete:
        return [FastaRecord("assembly", assembly.sequence)]
    return [FastaRecord(f"contig{index}", piece) for index, piece in enumerate(assembly.pieces())]


def write_genes_tsv(handle: IO[str], genes: GeneSet) -> None:
    handle.write("\t".join(GENE_COLUMNS) + "\n")
    for gene in genes.genes:
        handle.write(f"{gene.contig_id}\t{gene.start}\t{gene.end}\t{gene.bases}\n")


def read_genes_tsv(handle: IO[str]) -> List[tuple]:
    reader = csv.reader(handle, delimiter="\t")
    header = next(reader, None)
    if header is not None and tuple(header) != GENE_COLUMNS:
        raise ValueError(f"unexpected gene TSV header: {header}")
    return [(int(row[0]), int(row[1]), int(row[2]), row[3]) for row in reader if row]


def write_event(handle: IO[str], event: StreamEvent) -> None:
    handle.write(event.model_dump_json(exclude_none=True) + "\n")
    handle.flush()


def write_bench_csv(handle: IO[str], records: Iterable[BenchRecord]) -> None:
    writer = csv.DictWriter(handle, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        row = record.model_dump()
        if row["target_genes"] is None:
            row["target_genes"] = ""
        writer.writerow(row)


def read_bench_spec(handle: IO[str]) -> List[BenchSpecRow]:
    """Validated rows of a bench spec CSV; malformed content raises ValueError"""
    reader = csv.DictReader(handle)
    if reader.fieldnames is None:
        return []
    missing = [column for column in BENCH_SPEC_COLUMNS[:6] if column not in reader.fieldnames]
    if missing:
        raise ValueError(f"bench spec is missing columns: {', '.join(missing)}")
    rows = []
    for line_number, raw in enumerate(reader, start=2):
        values = {key: value for key, value in raw.items() if key and value not in (None, "")}
        try:
            rows.append(BenchSpecRow(**values))
        except ValidationError as exc:
            raise ValueError(f"bench spec line {line_number}: {exc.errors()[0]['msg']}") from exc
    return rows
