from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from genestream.config import settings
from genestream.core.seqcore import MAX_K, CodonTable, codon_table


class StreamConfig(BaseModel):
    k: int = Field(default_factory=lambda: settings.DEFAULT_K, ge=2, le=MAX_K, description="k-mer length")
    codon_table: CodonTable = Field(
        default_factory=lambda: codon_table(settings.CODON_TABLE), description="Start/stop codons"
    )
    target_genes: Optional[int] = Field(None, ge=1, description="Stop as soon as this many genes are found")
    emit_partial: bool = Field(
        default_factory=lambda: settings.EMIT_PARTIAL,
        description="Scan genes on partial contigs instead of waiting for a complete assembly",
    )


class SimSpec(BaseModel):
    seed: int = Field(0, description="RNG seed")
    length: int = Field(..., ge=0, description="Reference length in bases")
    gene_count: int = Field(0, ge=0, description="Scanner-detectable genes to embed")
    read_len_min: int = Field(30, ge=1, description="Shortest read length")
    read_len_max: int = Field(99, ge=1, description="Longest read length")
    min_overlap: int = Field(20, ge=0, description="Minimum overlap between consecutive windows")
    shuffle: bool = Field(False, description="Shuffle read order deterministically by seed")
    k: Optional[int] = Field(
        None, ge=2, le=MAX_K, description="Reject references with a repeated (k-1)-mer at this k"
    )

    @field_validator("read_len_max")
    @classmethod
    def _read_bound(cls, value: int) -> int:
        if value > settings.MAX_READ_LEN:
            raise ValueError(f"read length must stay below 100 bases (max {settings.MAX_READ_LEN}), got {value}")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "SimSpec":
        if self.read_len_min > self.read_len_max:
            raise ValueError("read_len_min must not exceed read_len_max")
        if self.min_overlap >= self.read_len_min:
            raise ValueError("min_overlap must be smaller than read_len_min")
        if self.k is not None and self.min_overlap < self.k - 1:
            raise ValueError(f"min_overlap must be at least k-1 = {self.k - 1}")
        return self


class BenchSpecRow(BaseModel):
    """One row of a bench spec file: a simulation plus the stream settings to run it with"""

    seed: int
    length: int
    genes: int
    read_min: int
    read_max: int
    overlap: int
    shuffle: bool = False
    k: int = Field(default_factory=lambda: settings.DEFAULT_K)
    target_genes: Optional[int] = None
    emit_partial: bool = Field(default_factory=lambda: settings.EMIT_PARTIAL)

    @field_validator("target_genes", mode="before")
    @classmethod
    def _blank_target(cls, value):
        return None if value in ("", None) else value

    def sim_spec(self) -> SimSpec:
        return SimSpec(
            seed=self.seed,
            length=self.length,
            gene_count=self.genes,
            read_len_min=self.read_min,
            read_len_max=self.read_max,
            min_overlap=self.overlap,
            shuffle=self.shuffle,
            k=self.k,
        )

    def stream_config(self) -> StreamConfig:
        return StreamConfig(k=self.k, target_genes=self.target_genes, emit_partial=self.emit_partial)


class Subcommand(str, Enum):
    RUN = "run"
    SIMULATE = "simulate"
    ORACLE = "oracle"
    BENCH = "bench"


class RunManifest(BaseModel):
    subcommand: Subcommand = Field(..., description="CLI subcommand")
    inputs: List[Path] = Field(default_factory=list, description="Input files")
    outputs: List[Path] = Field(default_factory=list, description="Output files")
    k: Optional[int] = Field(None, description="k-mer length")
    codon_table: str = Field(default_factory=lambda: settings.CODON_TABLE, description="Codon table name")
    target_genes: Optional[int] = Field(None, description="Early-stop gene target")
    seed: Optional[int] = Field(None, description="Simulation seed")

    @field_validator("inputs", "outputs")
    @classmethod
    def _resolve(cls, paths: List[Path]) -> List[Path]:
        return [Path(path).expanduser().resolve() for path in paths]

    @model_validator(mode="after")
    def _inputs_exist(self) -> "RunManifest":
        for path in self.inputs:
            if not path.is_file():
                raise ValueError(f"input file not found: {path}")
        return self
