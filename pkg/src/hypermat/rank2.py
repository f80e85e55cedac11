"""Rank-2 reference layer.

Ordinary symmetric matrices support two independent constructions of the
same invariant sequence: through traces of metric powers and the Newton
relations, and through signed permutation contractions. Keeping both,
and checking them against each other, anchors the higher-rank layers
where only the contraction route survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import engine, invariants
from .errors import SingularTensorError
from .invariants import DiscriminantVector
from .report import VerificationReport, check
from .tensor import SymTensor, contract_full, identity


@dataclass(frozen=True)
class MetricPair:
    """A rank-2 metric with its inverse and determinant precomputed."""

    g: SymTensor
    g_inv: SymTensor
    g_det: Fraction


def det2(a: SymTensor):
    """Determinant of a symmetric matrix via the signed contraction."""
    if a.rank != 2:
        raise ValueError("det2 takes a rank-2 tensor")
    return engine.epsilon_determinant(a)


def inverse2(a: SymTensor) -> SymTensor:
    """Contravariant inverse matrix (cofactor gradient over determinant)."""
    if a.rank != 2:
        raise ValueError("inverse2 takes a rank-2 tensor")
    return engine.epsilon_inverse(a)


def metric_inverse(g: SymTensor) -> MetricPair:
    """Bundle a metric with its inverse and determinant; singular metrics
    are rejected."""
    if g.rank != 2:
        raise ValueError("a metric is a rank-2 tensor")
    det = det2(g)
    if det == 0:
        raise SingularTensorError(
            "singular metric: its determinant is zero and the invariant "
            "normalization divides by it")
    return MetricPair(g, inverse2(g), det)


def unit_metric(dim: int) -> MetricPair:
    eye = identity(dim)
    return MetricPair(eye, eye, Fraction(1))


def g_product(a: SymTensor, b: SymTensor, metric: MetricPair) -> SymTensor:
    """Metric product c_ij = a_ik g^lk b_lj, symmetrized for storage.

    Powers of a single matrix are symmetric already (the products are
    palindromes), so for them the symmetrization is a no-op.
    """
    d = a.dim
    if b.dim != d or metric.g.dim != d or a.rank != 2 or b.rank != 2:
        raise ValueError("metric product needs rank-2 operands of one dimension")
    ginv = metric.g_inv
    raw = {}
    for i in range(d):
        for j in range(d):
            total = Fraction(0)
            for k in range(d):
                aik = a.entries.get((min(i, k), max(i, k)))
                if not aik:
                    continue
                for l in range(d):
                    gv = ginv.entries.get((min(l, k), max(l, k)))
                    if not gv:
                        continue
                    bv = b.entries.get((min(l, j), max(l, j)))
                    if bv:
                        total += aik * gv * bv
            raw[(i, j)] = total
    entries = {}
    for i in range(d):
        for j in range(i, d):
            value = (raw[(i, j)] + raw[(j, i)]) / 2
            if value:
                entries[(i, j)] = value
    return SymTensor(2, d, entries)


def g_trace(a: SymTensor, metric: MetricPair):
    """Metric trace g^ij a_ij."""
    return contract_full(metric.g_inv, a)


def power_sums(a: SymTensor, metric: MetricPair, max_order: int) -> list:
    """Traces of metric powers: [d, tr(a), tr(a^2), ..., tr(a^max_order)].

    The zeroth entry is the dimension, the trace of the unit element.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    sums = [Fraction(a.dim)]
    current = a
    for _ in range(max_order):
        sums.append(g_trace(current, metric))
        current = g_product(current, a, metric)
    return sums


def newton_elementary_from_power(power: Sequence) -> list:
    """Elementary symmetric quantities from power sums Q_1..Q_n.

    Returns [P_0..P_n] with P_0 = 1 and s*P_s = sum_k (-1)^(k-1) P_{s-k} Q_k.
    """
    q = [Fraction(x) if not isinstance(x, Fraction) else x for x in power]
    p = [Fraction(1)]
    for s in range(1, len(q) + 1):
        acc = Fraction(0)
        for k in range(1, s + 1):
            acc += (-1) ** (k - 1) * p[s - k] * q[k - 1]
        p.append(acc / s)
    return p


def discriminants_trace(a: SymTensor, metric: MetricPair) -> DiscriminantVector:
    """Invariant sequence built from traces of powers via the Newton
    recursion."""
    q = power_sums(a, metric, a.dim)
    return DiscriminantVector(tuple(newton_elementary_from_power(q[1:])))


def discriminants_epsilon(a: SymTensor, metric: MetricPair) -> DiscriminantVector:
    """Invariant sequence built from signed permutation contractions."""
    if a.rank != 2:
        raise ValueError("rank-2 layer takes rank-2 tensors")
    return DiscriminantVector(invariants.invariant_values(a, metric.g, metric.g_det))


def discriminant_of_order(a: SymTensor, metric: MetricPair, s: int):
    """Single order-s invariant; exactly zero for s > d."""
    return invariants.invariant_of_order(a, metric.g, s, metric.g_det)


def char_poly2(a: SymTensor, metric: MetricPair) -> tuple:
    """Characteristic polynomial coefficients, highest power first."""
    return invariants.characteristic_coefficients(
        tuple(discriminants_epsilon(a, metric)))


def matrix_polynomial_residual(a: SymTensor) -> SymTensor:
    """Residual of the explicit matrix identity with the unit metric:
    sum_s (-1)^s c_s a^(d-s) = 0, with ordinary matrix powers."""
    if a.rank != 2:
        raise ValueError("the matrix identity applies at rank 2")
    d = a.dim
    metric = unit_metric(d)
    coeffs = discriminants_epsilon(a, metric)
    powers = [identity(d)]
    for _ in range(d):
        powers.append(g_product(powers[-1], a, metric))
    residual = SymTensor.zero(2, d)
    for s in range(d + 1):
        residual = residual + powers[d - s] * ((-1) ** s * coeffs[s])
    return residual


_RECURRENCE_FORMULA = "d(c_s)/dg + c_s*inv(g) == d(c_{s+1})/da"
_CH_FORMULA = "d(c_d)/dg + c_d*inv(g) == 0"
_MATRIX_FORMULA = "sum_s (-1)^s c_s a^(d-s) == 0 with the unit metric"


def verify_recurrence2(a: SymTensor, metric: MetricPair,
                       seed: int | None = None) -> VerificationReport:
    """Recurrence residuals for every order, the Cayley-Hamilton case
    included, plus the explicit unit-metric matrix identity for d <= 4."""
    d = a.dim
    report = VerificationReport("rank2-recurrence")
    for s in range(d + 1):
        residual = invariants.recurrence_residual(
            a, metric.g, s, metric.g_det, metric.g_inv)
        name = "cayley_hamilton" if s == d else f"recurrence_order_{s}"
        formula = _CH_FORMULA if s == d else _RECURRENCE_FORMULA
        report.checks.append(check(name, formula, residual, seed))
    if d <= 4:
        report.checks.append(check(
            "matrix_polynomial_unit_metric", _MATRIX_FORMULA,
            matrix_polynomial_residual(a), seed))
    return report


def verify_cayley_hamilton2(a: SymTensor, metric: MetricPair,
                            seed: int | None = None) -> VerificationReport:
    """The order-d recurrence alone: d(c_d)/dg + c_d*inv(g) = 0."""
    residual = invariants.recurrence_residual(
        a, metric.g, a.dim, metric.g_det, metric.g_inv)
    report = VerificationReport("rank2-cayley-hamilton")
    report.checks.append(check("cayley_hamilton", _CH_FORMULA, residual, seed))
    return report
