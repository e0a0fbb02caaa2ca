"""Corpus generation: exhaustive small algebras plus curated files."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .algebra import Algebra, check_associative
from .exactfield import Field
from .extension import BudgetExceeded
from .fileformat import FileFormatError, load_file

BUILTIN_CURATED = Path(__file__).with_name("data") / "curated"


@dataclass(frozen=True)
class CorpusSpec:
    prime: int = 2
    max_dim: int = 2
    curated: tuple = ()
    budget: int = 10**6
    seed: int = 0

    def __post_init__(self):
        Field(self.prime)  # raises on a non-prime
        if self.max_dim < 0:
            raise ValueError("max_dim must be non-negative")

    @property
    def field(self) -> Field:
        return Field(self.prime)

    def describe(self) -> dict:
        return {
            "prime": self.prime,
            "max_dim": self.max_dim,
            "curated": [Path(p).name for p in self.curated],
            "budget": self.budget,
            "seed": self.seed,
        }


def enumerate_algebras_of_dim(field: Field, dim: int, budget: int = 10**6) -> Iterator[Algebra]:
    """Associative structure tables of one dimension, lexicographic in c[i][j][k]."""
    space = field.p ** (dim ** 3)
    if space > budget:
        raise BudgetExceeded(f"dim {dim}: {space} candidate tables exceed the budget {budget}")
    n = dim
    for flat in itertools.product(range(field.p), repeat=n ** 3):
        table = tuple(
            tuple((k, flat[(i * n + j) * n + k]) for k in range(n) if flat[(i * n + j) * n + k])
            for i in range(n) for j in range(n)
        )
        a = Algebra(field, n, table)
        if check_associative(a).ok:
            yield a


def enumerate_algebras(spec: CorpusSpec) -> Iterator[Algebra]:
    for d in range(spec.max_dim + 1):
        yield from enumerate_algebras_of_dim(spec.field, d, spec.budget)


def curated_files(directory) -> list[Path]:
    d = Path(directory)
    if not d.is_dir():
        raise FileFormatError(f"{d}: not a directory")
    return sorted(d.glob("*.json"))


@dataclass
class Corpus:
    algebras: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def add(self, a: Algebra, label: str) -> bool:
        key = (a.dim, a.table)
        if any((b.dim, b.table) == key for b in self.algebras):
            return False
        self.algebras.append(a)
        self.labels.append(label)
        return True

    def __len__(self):
        return len(self.algebras)

    def dims(self) -> dict:
        out: dict = {}
        for a in self.algebras:
            out[str(a.dim)] = out.get(str(a.dim), 0) + 1
        return out


def build_corpus(spec: CorpusSpec) -> Corpus:
    """Enumerated algebras first, then curated files not already present by table."""
    corpus = Corpus()
    counters: dict = {}
    for a in enumerate_algebras(spec):
        k = counters.get(a.dim, 0)
        counters[a.dim] = k + 1
        corpus.add(a, f"enum{a.dim}_{k}")
    for path in spec.curated:
        a = load_file(path, expect="algebra")
        if a.field != spec.field:
            raise FileFormatError(f"{path}: curated algebra over {a.field}, corpus is over {spec.field}")
        corpus.add(a, Path(path).stem)
    return corpus
