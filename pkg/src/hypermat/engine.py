"""Signed-permutation contraction engine.

The primitive here is a sum over r-tuples of permutations of {0..d-1}:
each tuple contributes the product of the permutation signs times a
product of factor components, where factor t takes its r indices from the
t-th values of the r permutations. One permutation plays the role of one
antisymmetric sign symbol. Determinants, discriminant numerators, inverse
tensors and permutation coefficient tensors are all normalizations of
this primitive or of its slot-freed gradients.

Derivative convention used package-wide: gradients are formal, treating
all d**r ordered components of a factor as independent. The derivative
with respect to a stored canonical component is the formal value times
the key's multiplicity.

All functions are pure. Exact-rational addition is associative and
commutative, so the permutation enumeration may be partitioned across
workers without changing results; this reference implementation runs it
serially in lexicographic order.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import SingularTensorError
from .tensor import SymTensor, canonical_key, multiplicity


def permutation_sign(perm: Sequence[int]) -> int:
    """Parity of a permutation given as a tuple of images: +1 even, -1 odd."""
    inversions = sum(1 for i in range(len(perm))
                     for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def signed_permutations(dim: int):
    """All permutations of {0..dim-1} with their signs, lexicographically."""
    return tuple((perm, permutation_sign(perm))
                 for perm in itertools.permutations(range(dim)))


def _uniform_shape(factors: Sequence[SymTensor]):
    if not factors:
        raise ValueError("no factors given")
    rank, dim = factors[0].rank, factors[0].dim
    for f in factors:
        if (f.rank, f.dim) != (rank, dim):
            raise ValueError("factors do not share rank and dimension")
    if len(factors) != dim:
        raise ValueError(f"need exactly dim={dim} factors, got {len(factors)}")
    return rank, dim


def epsilon_product(factors: Sequence[SymTensor]):
    """Full signed contraction of d factors of rank r (one sign symbol per
    index slot). No factorial normalization is applied; callers divide by
    d! or s!(d-s)! as their definitions require.
    """
    rank, dim = _uniform_shape(factors)
    entry_maps = [f.entries for f in factors]
    total = Fraction(0)
    for combo in itertools.product(signed_permutations(dim), repeat=rank):
        term = None
        for t, entries in enumerate(entry_maps):
            value = entries.get(canonical_key(tuple(p[t] for p, _ in combo)))
            if value is None:
                term = None
                break
            term = value if term is None else term * value
        if term is not None:
            sign = 1
            for _, s in combo:
                sign *= s
            total += sign * term
    return total


def epsilon_product_gradient(factors: Sequence[SymTensor], position: int) -> SymTensor:
    """Formal derivative of epsilon_product with respect to the components
    of factors[position]; equivalently the signed sum with that slot freed
    on every sign symbol.

    The result is completely symmetric because the remaining factors are;
    the value stored at a canonical key is the derivative with respect to
    any single ordered component in that key's orbit.
    """
    rank, dim = _uniform_shape(factors)
    if not 0 <= position < dim:
        raise ValueError(f"position {position} out of range for {dim} slots")
    others = [(t, f.entries) for t, f in enumerate(factors) if t != position]
    sums: dict = {}
    for combo in itertools.product(signed_permutations(dim), repeat=rank):
        term = None
        for t, entries in others:
            value = entries.get(canonical_key(tuple(p[t] for p, _ in combo)))
            if value is None:
                term = None
                break
            term = value if term is None else term * value
        if term is None:
            continue
        sign = 1
        for _, s in combo:
            sign *= s
        key = canonical_key(tuple(p[position] for p, _ in combo))
        sums[key] = sums.get(key, Fraction(0)) + sign * term
    # Each orbit was accumulated over all its orderings; dividing by the
    # orbit size leaves the per-component formal value.
    entries = {}
    for key, value in sums.items():
        formal = value / multiplicity(key)
        if formal:
            entries[key] = formal
    return SymTensor(rank, dim, entries)


def _block_representatives(dim: int, split: int):
    # one permutation per right coset of the block subgroup: increasing on
    # the first `split` positions and on the rest
    for subset in itertools.combinations(range(dim), split):
        rest = tuple(v for v in range(dim) if v not in subset)
        perm = subset + rest
        yield perm, permutation_sign(perm)


def coset_restricted_product(factors: Sequence[SymTensor], split: int):
    """epsilon_product computed with the first permutation restricted to the
    C(d, split) block-monotone coset representatives, scaled by
    split!(d-split)!.

    Requires even rank and factors that are constant within the two blocks
    [0, split) and [split, d); under those conditions the value equals the
    unrestricted sum exactly while enumerating d!/(split!(d-split)!) times
    fewer terms.
    """
    value, _ = coset_restricted_product_counted(factors, split)
    return value


def coset_restricted_product_counted(factors: Sequence[SymTensor], split: int):
    """Like coset_restricted_product, also returning the number of
    enumerated terms (at most C(d, split) * (d!)**(r-1))."""
    rank, dim = _uniform_shape(factors)
    if rank % 2:
        raise ValueError("coset restriction requires even rank")
    if not 0 <= split <= dim:
        raise ValueError(f"block size {split} out of range for dimension {dim}")
    for t in range(1, split):
        if factors[t] != factors[0]:
            raise ValueError("factors in the first block differ")
    for t in range(split + 1, dim):
        if factors[t] != factors[split]:
            raise ValueError("factors in the second block differ")
    entry_maps = [f.entries for f in factors]
    perms = signed_permutations(dim)
    total = Fraction(0)
    count = 0
    for lead_perm, lead_sign in _block_representatives(dim, split):
        for combo in itertools.product(perms, repeat=rank - 1):
            count += 1
            term = None
            for t, entries in enumerate(entry_maps):
                idx = (lead_perm[t],) + tuple(p[t] for p, _ in combo)
                value = entries.get(canonical_key(idx))
                if value is None:
                    term = None
                    break
                term = value if term is None else term * value
            if term is None:
                continue
            sign = lead_sign
            for _, s in combo:
                sign *= s
            total += sign * term
    scale = math.factorial(split) * math.factorial(dim - split)
    return scale * total, count


def two_block_product(a: SymTensor, b: SymTensor, order: int):
    """Signed contraction with `order` copies of `a` and d-order copies of
    `b`, via the coset-restricted path."""
    dim = a.dim
    return coset_restricted_product([a] * order + [b] * (dim - order), order)


def epsilon_determinant(tensor: SymTensor):
    """(1/d!) times the all-copies signed contraction; the even-rank
    determinant (for rank 2 this is the ordinary determinant)."""
    if tensor.rank % 2:
        raise ValueError("determinant by signed contraction needs even rank")
    d = tensor.dim
    return two_block_product(tensor, tensor, d) / math.factorial(d)


def epsilon_inverse(tensor: SymTensor) -> SymTensor:
    """Contravariant inverse: the slot-freed gradient over (d-1)! times the
    determinant. Satisfies inv[(i,)+k] * T[(j,)+k] summed over k = delta."""
    det = epsilon_determinant(tensor)
    if det == 0:
        raise SingularTensorError("tensor determinant is zero; no inverse")
    d = tensor.dim
    grad = epsilon_product_gradient([tensor] * d, 0)
    return grad * (Fraction(1, math.factorial(d - 1)) / det)


def materialize_permutation_tensor(order: int, metric: SymTensor,
                                   cap: int = 10 ** 6) -> np.ndarray:
    """Dense coefficient tensor that contracts `order` copies of a rank-r
    tensor into its order-s invariant relative to ``metric``.

    Index layout: the freed indices are grouped per sign symbol, i.e. the
    first symbol's `order` indices, then the second symbol's, and so on
    (r groups of `order` axes). Includes the 1/(order!(d-order)!)
    normalization and the division by the metric's determinant.

    Rejects order > d, where every entry vanishes because a sign symbol
    cannot take `order` distinct values in fewer slots, and results with
    more than ``cap`` entries.
    """
    r, d = metric.rank, metric.dim
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > d:
        raise ValueError(
            f"order {order} exceeds dimension {d}: the coefficient tensor "
            "is identically zero there and is not materialized")
    if d ** (r * order) > cap:
        raise ValueError(
            f"result would hold {d ** (r * order)} entries, over the cap {cap}")
    det = epsilon_determinant(metric)
    if det == 0:
        raise SingularTensorError(
            "metric determinant is zero; the coefficient tensor divides by it")
    shape = (d,) * (r * order)
    out = np.full(shape, Fraction(0), dtype=object)
    entries = metric.entries
    for combo in itertools.product(signed_permutations(d), repeat=r):
        term = Fraction(1)
        for t in range(order, d):
            value = entries.get(canonical_key(tuple(p[t] for p, _ in combo)))
            if value is None:
                term = None
                break
            term = term * value
        if term is None:
            continue
        sign = 1
        for _, s in combo:
            sign *= s
        key = tuple(p[u] for p, _ in combo for u in range(order))
        out[key] += sign * term
    norm = Fraction(1, math.factorial(order) * math.factorial(d - order)) / det
    for key in itertools.product(range(d), repeat=r * order):
        out[key] *= norm
    return out
