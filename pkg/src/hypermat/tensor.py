"""Completely symmetric tensors over exact scalars.

Storage is sparse and canonical: an entry is kept once per sorted index
tuple (the canonical key), and a lookup at any index ordering resolves
through sorting. The number of distinct orderings of a key, its
multiplicity, is what lets full contractions run over canonical storage
instead of all d**r ordered tuples.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .rational import as_scalar

MultiIndex = tuple


def canonical_key(idx: Sequence[int]) -> MultiIndex:
    """Non-decreasing reordering of an index tuple."""
    return tuple(sorted(idx))


def multiplicity(key: Sequence[int]) -> int:
    """Number of distinct orderings of a key: r! / prod_v count(v)!."""
    mu = math.factorial(len(key))
    for count in Counter(key).values():
        mu //= math.factorial(count)
    return mu


def canonical_keys(rank: int, dim: int):
    """All canonical keys of the given shape, in lexicographic order."""
    return itertools.combinations_with_replacement(range(dim), rank)


@dataclass(frozen=True)
class SymTensor:
    """Completely symmetric tensor of fixed rank and dimension.

    ``entries`` maps canonical keys to nonzero values; an absent key is
    zero. Instances are immutable values (all arithmetic returns new
    tensors), so they are safe to share across threads.
    """

    rank: int
    dim: int
    entries: Mapping[MultiIndex, Fraction]

    @classmethod
    def zero(cls, rank: int, dim: int) -> "SymTensor":
        return cls(rank, dim, {})

    @classmethod
    def from_entries(cls, rank: int, dim: int,
                     entries: Mapping[Sequence[int], object] | Iterable,
                     *, allow_inexact: bool = False) -> "SymTensor":
        """Build from (index, value) pairs; indices may be in any order.

        Two distinct input indices that land on the same canonical key are
        an error rather than last-wins. Values are coerced to exact
        rationals unless ``allow_inexact`` is set, in which case floats are
        stored as given.
        """
        if rank < 1 or dim < 1:
            raise ValueError(f"invalid shape: rank {rank}, dim {dim}")
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        canonical: dict[MultiIndex, object] = {}
        for idx, value in pairs:
            idx = tuple(idx)
            if len(idx) != rank:
                raise ValueError(f"index {idx} does not have {rank} entries")
            if any(not isinstance(i, int) or i < 0 or i >= dim for i in idx):
                raise ValueError(f"index {idx} out of range for dimension {dim}")
            key = canonical_key(idx)
            if key in canonical:
                raise ValueError(f"duplicate canonical index {key}")
            if allow_inexact and isinstance(value, float):
                canonical[key] = value
            else:
                canonical[key] = as_scalar(value)
        return cls(rank, dim, {k: v for k, v in canonical.items() if v})

    def component(self, idx: Sequence[int]):
        """Value at any index ordering (zero when the key is absent)."""
        idx = tuple(idx)
        if len(idx) != self.rank:
            raise ValueError(f"index {idx} does not have {self.rank} entries")
        for i in idx:
            if not 0 <= i < self.dim:
                raise IndexError(f"index {idx} out of range for dimension {self.dim}")
        return self.entries.get(canonical_key(idx), Fraction(0))

    def __getitem__(self, idx):
        return self.component(idx)

    def items_sorted(self):
        """Canonical (key, value) pairs in lexicographic key order."""
        return sorted(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def max_abs(self):
        """Largest absolute component; zero for the zero tensor."""
        return max((abs(v) for v in self.entries.values()), default=Fraction(0))

    def _require_same_shape(self, other: "SymTensor"):
        if (self.rank, self.dim) != (other.rank, other.dim):
            raise ValueError(
                f"shape mismatch: rank {self.rank} dim {self.dim} "
                f"vs rank {other.rank} dim {other.dim}")

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._require_same_shape(other)
        merged = dict(self.entries)
        for key, value in other.entries.items():
            total = merged.get(key, 0) + value
            if total:
                merged[key] = total
            else:
                merged.pop(key, None)
        return SymTensor(self.rank, self.dim, merged)

    def __neg__(self) -> "SymTensor":
        return SymTensor(self.rank, self.dim,
                         {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + (-other)

    def __mul__(self, scalar) -> "SymTensor":
        if isinstance(scalar, SymTensor):
            return NotImplemented
        if not scalar:
            return SymTensor.zero(self.rank, self.dim)
        return SymTensor(self.rank, self.dim,
                         {k: v * scalar for k, v in self.entries.items()})

    __rmul__ = __mul__


def identity(dim: int) -> SymTensor:
    """Rank-2 unit matrix."""
    return SymTensor(2, dim, {(i, i): Fraction(1) for i in range(dim)})


def from_matrix(rows: Sequence[Sequence]) -> SymTensor:
    """Rank-2 tensor from a symmetric nested-list matrix."""
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("matrix is not square")
    entries = {}
    for i in range(d):
        for j in range(i, d):
            if as_scalar(rows[i][j]) != as_scalar(rows[j][i]):
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
            value = as_scalar(rows[i][j])
            if value:
                entries[(i, j)] = value
    return SymTensor(2, d, entries)


def symmetrized_from(rank: int, dim: int, component: Callable) -> SymTensor:
    """Symmetrize an arbitrary ordered-component function.

    The value at a canonical key is the mean of ``component`` over the
    key's distinct orderings, which equals the mean over all rank!
    permutations of the index tuple.
    """
    entries = {}
    for key in canonical_keys(rank, dim):
        orderings = set(itertools.permutations(key))
        total = sum(component(o) for o in orderings)
        if total:
            entries[key] = total / len(orderings)
    return SymTensor(rank, dim, entries)


def sym_outer(x: SymTensor, y: SymTensor) -> SymTensor:
    """Fully symmetrized outer product.

    The component at an index tuple is the mean over all (p+q)! orderings
    of the tuple of x[first p] * y[last q]. Computed per canonical key by
    splitting the key's multiset into an x-block and a y-block with
    binomial weights, which avoids enumerating orderings.
    """
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    p, q, d = x.rank, y.rank, x.dim
    total_splits = math.comb(p + q, p)
    entries = {}
    for key in canonical_keys(p + q, d):
        counts = Counter(key)
        values = sorted(counts)
        acc = Fraction(0)
        for taken in _block_splits(counts, values, p):
            xkey = tuple(v for v in values for _ in range(taken[v]))
            ykey = tuple(v for v in values for _ in range(counts[v] - taken[v]))
            xv = x.entries.get(xkey)
            if xv is None:
                continue
            yv = y.entries.get(ykey)
            if yv is None:
                continue
            weight = 1
            for v in values:
                weight *= math.comb(counts[v], taken[v])
            acc += weight * xv * yv
        if acc:
            entries[key] = acc / total_splits
    return SymTensor(p + q, d, entries)


def _block_splits(counts, values, size):
    # every way to take `size` elements from the multiset, as value->count
    ranges = [range(min(counts[v], size) + 1) for v in values]
    for combo in itertools.product(*ranges):
        if sum(combo) == size:
            yield dict(zip(values, combo))


def contract_full(x: SymTensor, y: SymTensor):
    """Sum over all d**r ordered tuples of x[idx] * y[idx].

    Runs over canonical keys weighted by multiplicity, which is exactly
    equivalent for completely symmetric operands.
    """
    x._require_same_shape(y)
    total = Fraction(0)
    for key, xv in x.entries.items():
        yv = y.entries.get(key)
        if yv is not None:
            total += multiplicity(key) * xv * yv
    return total


def contract_one_free(x: SymTensor, y: SymTensor) -> np.ndarray:
    """T[i][j] = sum over all (r-1)-tuples k of x[(i,)+k] * y[(j,)+k]."""
    x._require_same_shape(y)
    if x.rank < 2:
        raise ValueError("contraction with one free index needs rank >= 2")
    d = x.dim
    out = np.full((d, d), Fraction(0), dtype=object)
    for key in canonical_keys(x.rank - 1, d):
        mu = multiplicity(key)
        for i in range(d):
            xv = x.entries.get(canonical_key((i,) + key))
            if not xv:
                continue
            for j in range(d):
                yv = y.entries.get(canonical_key((j,) + key))
                if yv:
                    out[i, j] += mu * xv * yv
    return out


# Seeded generation uses a splitmix64 stream so fixtures are reproducible
# from the seed alone: state advances by the golden-ratio increment
# 0x9E3779B97F4A7C15 and each output is the xor-shift/multiply mix below.
_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _stream(seed: int):
    state = seed & _MASK64
    while True:
        state = (state + _GAMMA) & _MASK64
        yield _mix64(state)


def derive_seed(seed: int, salt: int) -> int:
    """Deterministic sub-seed for fixture families (retries, sample loops)."""
    return _mix64((seed & _MASK64) ^ (((salt + 1) * _GAMMA) & _MASK64))


def random_symmetric(rank: int, dim: int, seed: int, bound: int = 9) -> SymTensor:
    """Seeded pseudo-random tensor with rational components.

    One (numerator, denominator) pair is drawn per canonical key in
    lexicographic order; numerators fall in [-bound, bound] and denominators
    in [1, bound], so the same seed reproduces the same tensor anywhere.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    stream = _stream(seed)
    entries = {}
    for key in canonical_keys(rank, dim):
        num = next(stream) % (2 * bound + 1) - bound
        den = next(stream) % bound + 1
        if num:
            entries[key] = Fraction(num, den)
    return SymTensor(rank, dim, entries)
