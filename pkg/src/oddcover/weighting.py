"""Z2-valued weightings of Z^d built from the recursive family f_k.

f_0 is identically 1; for k > 0, f_k(0) = 1 and f_k(t) = f_k(t-1) xor f_{k-1}(t-1).
Each f_k has period 2^k, so it is stored as a table over one period and
negative arguments reduce modulo 2^k.  A weighting on Z^d is f_k composed
with the linear functional L(x) = sum r^(i-1) x_i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_LEVEL = 24

LatticePoint = tuple[int, ...]


class LevelTooLarge(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _table(k: int) -> np.ndarray:
    if k == 0:
        t = np.ones(1, dtype=np.uint8)
    else:
        prev = _table(k - 1)
        tiled = np.tile(prev, 2)
        # f_k(t) = 1 xor (f_{k-1}(0) xor ... xor f_{k-1}(t-1))
        prefix = np.bitwise_xor.accumulate(tiled)
        t = np.empty(1 << k, dtype=np.uint8)
        t[0] = 1
        t[1:] = 1 ^ prefix[:-1]
    t.setflags(write=False)
    return t


def period_table(k: int, max_level: int = MAX_LEVEL) -> np.ndarray:
    """Values of f_k on residues 0..2^k-1 (read-only uint8 array)."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    if k > max_level:
        raise LevelTooLarge(f"level {k} exceeds the configured maximum {max_level}")
    table = _table(k)
    if k > 0:
        prev = _table(k - 1)
        rng = random.Random(k)
        size = 1 << k
        for _ in range(3):
            t = rng.randrange(size)
            # one recursion step, and the wrap-around step across the period
            assert table[(t + 1) % size] == table[t] ^ prev[t % (size >> 1)]
        assert int(np.bitwise_xor.reduce(np.tile(prev, 2))) == 0
    return table


def f_eval(k: int, t: int) -> int:
    table = period_table(k)
    return int(table[t % len(table)])


@dataclass(frozen=True)
class LinearFunctionalZd:
    coefficients: tuple[int, ...]

    @classmethod
    def from_radix(cls, radix: int, dim: int) -> LinearFunctionalZd:
        if radix < 1:
            raise ValueError("radix must be positive")
        return cls(tuple(radix**i for i in range(dim)))

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("the first coefficient of L must be 1")

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    @property
    def radix(self) -> int:
        return self.coefficients[1] if self.dim > 1 else 1

    def __call__(self, p: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(self.coefficients, p))


@dataclass(frozen=True)
class StableWeighting:
    """The weighting z -> f_k(L(z)); its support Z is a union of residue classes mod 2^k."""

    k: int
    L: LinearFunctionalZd
    residues: frozenset[int]

    @classmethod
    def build(cls, k: int, L: LinearFunctionalZd) -> StableWeighting:
        table = period_table(k)
        return cls(k, L, frozenset(int(i) for i in np.flatnonzero(table)))

    @property
    def modulus(self) -> int:
        return 1 << self.k

    def __call__(self, z: Sequence[int]) -> int:
        return f_eval(self.k, self.L(z))

    def contains(self, z: Sequence[int]) -> bool:
        return (self.L(z) % self.modulus) in self.residues

    def support_density(self):
        from fractions import Fraction

        return Fraction(len(self.residues), self.modulus)


def weight_of_set(w: StableWeighting, A: Iterable[LatticePoint], p: LatticePoint | None = None) -> int:
    shift = w.L(p) if p is not None else 0
    table = period_table(w.k)
    m = len(table)
    out = 0
    for a in A:
        out ^= int(table[(w.L(a) + shift) % m])
    return out


def _shift_profile(w: StableWeighting, A: Iterable[LatticePoint]) -> np.ndarray:
    # value of s -> xor_a f_k(L(a) + s) for every residue s
    table = period_table(w.k)
    acc = np.zeros(len(table), dtype=np.uint8)
    for a in A:
        acc ^= np.roll(table, -(w.L(a) % len(table)))
    return acc


def is_stable(w: StableWeighting, A: Iterable[LatticePoint]) -> bool:
    """Decide translation invariance exactly.

    L is onto Z (first coefficient 1) and f_k has period 2^k, so checking all
    residues of the shift is complete.
    """
    prof = _shift_profile(w, A)
    return bool(np.all(prof == prof[0]))


def is_zero_stable(w: StableWeighting, A: Iterable[LatticePoint]) -> bool:
    prof = _shift_profile(w, A)
    return bool(np.all(prof == 0))


@dataclass(frozen=True)
class FiniteSetFamily:
    sets: tuple[frozenset[LatticePoint], ...]

    def __init__(self, sets: Iterable[Iterable[Sequence[int]]]):
        frozen = tuple(frozenset(tuple(int(c) for c in p) for p in s) for s in sets)
        if not frozen:
            raise ValueError("the family must contain at least one set")
        if any(not s for s in frozen):
            raise ValueError("every set in the family must be nonempty")
        dims = {len(p) for s in frozen for p in s}
        if len(dims) != 1:
            raise ValueError("all points must share one dimension")
        object.__setattr__(self, "sets", frozen)

    @property
    def dim(self) -> int:
        return len(next(iter(self.sets[0])))

    def radix(self) -> int:
        """1 + the largest bounding-box side over all sets, making L injective on each."""
        side = 0
        for s in self.sets:
            for i in range(self.dim):
                coords = [p[i] for p in s]
                side = max(side, max(coords) - min(coords))
        return side + 1


@dataclass(frozen=True)
class WeightingSearch:
    weighting: StableWeighting
    active: tuple[bool, ...]


def span(L: LinearFunctionalZd, A: Iterable[LatticePoint]) -> int:
    values = [L(a) for a in A]
    return max(values) - min(values)


def find_weighting(family: FiniteSetFamily, max_level: int = MAX_LEVEL) -> WeightingSearch:
    """Smallest k with f_k∘L stable but not 0-stable on the family."""
    L = LinearFunctionalZd.from_radix(family.radix(), family.dim)
    bound = min(span(L, A) for A in family.sets)
    for k in range(0, min(bound, max_level) + 1):
        w = StableWeighting.build(k, L)
        if not all(is_stable(w, A) for A in family.sets):
            raise AssertionError(f"f_{k} is not stable on the family; the level search is broken")
        active = tuple(bool(weight_of_set(w, A)) for A in family.sets)
        if any(active):
            return WeightingSearch(w, active)
    raise LevelTooLarge(f"no active set up to level {min(bound, max_level)}")
