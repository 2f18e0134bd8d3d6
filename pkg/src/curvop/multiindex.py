"""Ordered multi-indices over the alphabet {1, ..., n}.

All indices are 1-based. A multi-index is a strictly increasing tuple; the
empty tuple is a valid degree-0 index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import InputError


@dataclass(frozen=True, order=True)
class MultiIndex:
    entries: tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"dimension must be non-negative, got {self.n}")
        prev = 0
        for e in self.entries:
            if not 1 <= e <= self.n:
                raise InputError(f"index {e} out of range [1, {self.n}]")
            if e <= prev:
                raise InputError(f"entries must be strictly increasing: {self.entries}")
            prev = e

    @classmethod
    def of(cls, entries, n: int) -> "MultiIndex":
        return cls(tuple(int(e) for e in entries), int(n))

    @property
    def degree(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __contains__(self, s) -> bool:
        return s in self.entries

    def without(self, s: int) -> "MultiIndex":
        return MultiIndex(tuple(e for e in self.entries if e != s), self.n)

    def with_(self, s: int) -> "MultiIndex":
        if s in self.entries:
            raise InputError(f"{s} already in {self.entries}")
        return MultiIndex(tuple(sorted(self.entries + (s,))), self.n)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.entries)) + "}"


def _check_coordinate(s: int, n: int) -> None:
    if not 1 <= s <= n:
        raise InputError(f"coordinate index {s} out of range [1, {n}]")


def epsilon(s: int, I: MultiIndex) -> int:
    """Sign of contracting d/dz_s into dz_I: (-1)^(k-1) if s is the k-th entry, else 0."""
    _check_coordinate(s, I.n)
    for k, e in enumerate(I.entries):
        if e == s:
            return -1 if k % 2 else 1
    return 0


def insert_sign(s: int, I: MultiIndex) -> tuple[int, MultiIndex]:
    """Return (sign, I') with dz_s ^ dz_I = sign * dz_I'; sign is 0 when s is in I."""
    _check_coordinate(s, I.n)
    if s in I:
        return 0, I
    target = I.with_(s)
    return epsilon(s, target), target


def complement(I: MultiIndex) -> MultiIndex:
    present = set(I.entries)
    return MultiIndex(tuple(e for e in range(1, I.n + 1) if e not in present), I.n)


def sgn_complement(I: MultiIndex) -> int:
    """Signature of the permutation (1, ..., n) -> (I, I^C)."""
    # only pairs (i in I, c in I^C) with i > c are inverted
    inv = 0
    for pos, i in enumerate(I.entries):
        inv += i - 1 - pos
    return -1 if inv % 2 else 1


def alpha(I: MultiIndex) -> int:
    return sgn_complement(I) * (-1 if I.degree % 2 else 1)


@lru_cache(maxsize=None)
def enumerate_indices(n: int, d: int) -> tuple[MultiIndex, ...]:
    """All degree-d multi-indices over {1..n} in lexicographic order."""
    if n < 0 or not 0 <= d <= n:
        raise InputError(f"degree {d} out of range [0, {n}]")
    return tuple(MultiIndex(c, n) for c in combinations(range(1, n + 1), d))


@lru_cache(maxsize=None)
def _positions(n: int, d: int) -> dict:
    return {I: a for a, I in enumerate(enumerate_indices(n, d))}


def position(I: MultiIndex) -> int:
    """Position of I inside enumerate_indices(I.n, I.degree)."""
    return _positions(I.n, I.degree)[I]
