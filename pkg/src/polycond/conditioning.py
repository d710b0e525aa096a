"""Condition measures for polynomial evaluation and rootfinding.

The evaluation condition number of p(x) = sum c_k phi_k(x) under relative
coefficient perturbations |delta_k| <= eps is

    B(x) = sum |c_k| |phi_k(x)|,

the worst-case amplification |Delta p(x)| <= B(x) eps (attained by aligning
the signs of the deltas). Zero coefficients admit no relative perturbation,
which is what makes symmetric root placement effective.

For a simple root r of p, the first-order shift under the same model obeys
|Delta r| <= B(r) eps / |p'(r)|. Three summary factors are exposed:

* mixed      A(r)   = |r| B(r) / |p'(r)|
* absolute          =     B(r) / |p'(r)|   (bounds |Delta r| directly)
* relative          = B(r) / (|r| |p'(r)|) (bounds |Delta r / r|; invariant
                      under pure rescaling of the root set)

Curve sampling over rational grids runs through integer kernels: one common
denominator per curve turns every sample into pure big-integer arithmetic,
which keeps exact 2001-point sweeps at degree 89 in fractions of a second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .bases import (
    BernsteinBasis,
    LagrangeBasis,
    MonomialBasis,
    NodeSet,
    lagrange_values,
    raw_value,
    _is_exact,
)
from .errors import (
    ArgumentError,
    DomainError,
    ModelViolationError,
    SingularityError,
)
from .poly import Polynomial
from .scalars import (
    Scalar,
    _int_log10,
    as_fraction,
    log10_abs,
    mpf_to_fraction,
    resolve_digits,
    to_mpf,
    working,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


def condition_number(p: Polynomial, x, digits=None) -> Scalar:
    """B(x) = sum |c_k| |phi_k(x)|; exact for rational basis/coeffs/x."""
    v = raw_value(x)
    cs = p.coeff_values()
    exact = _is_exact(v) and p.is_exact
    if isinstance(p.basis, MonomialBasis) and exact:
        ax = abs(v)
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * ax + abs(c)
        return Scalar(acc)
    if isinstance(p.basis, LagrangeBasis):
        exact = exact and p.basis.nodes.digits is None
    if exact:
        phis = p.basis.values_at(v)
        return Scalar(sum(abs(c) * abs(f) for c, f in zip(cs, phis)))
    d = resolve_digits(digits if digits is not None else _float_digits(p))
    with working(d):
        phis = p.basis.values_at(v, digits=d)
        acc = mp.mpf(0)
        for c, f in zip(cs, phis):
            acc += abs(to_mpf(c, d)) * abs(f)
        return Scalar(acc, d)


def _float_digits(p: Polynomial):
    if isinstance(p.basis, LagrangeBasis) and p.basis.nodes.digits:
        return p.basis.nodes.digits
    precs = [c.precision for c in p.coeffs if c.precision]
    return max(precs) if precs else None


class PerturbationModel:
    """Relative coefficient perturbations: c_k -> c_k (1 + delta_k).

    ``epsilon`` bounds every |delta_k|; ``deltas`` is optional (bound-only
    models are used for worst-case statements). Deltas are held exactly
    (floats convert to exact dyadic rationals), so bound checks and the
    sharpness identity are exact comparisons.
    """

    def __init__(self, epsilon, deltas=None):
        self.epsilon = self._coerce(epsilon)
        if self.epsilon < 0:
            raise ArgumentError("epsilon must be nonnegative")
        if deltas is None:
            self.deltas = None
        else:
            self.deltas = tuple(self._coerce(d) for d in deltas)
            for i, d in enumerate(self.deltas):
                if abs(d) > self.epsilon:
                    raise ModelViolationError(
                        f"|delta_{i}| = {float(abs(d)):.3e} exceeds "
                        f"epsilon = {float(self.epsilon):.3e}"
                    )

    @staticmethod
    def _coerce(x) -> Fraction:
        if isinstance(x, float):
            return Fraction(x)
        if isinstance(x, mpmath.mpf):
            return mpf_to_fraction(x)
        return as_fraction(x)


def eval_perturbation(p: Polynomial, x, model: PerturbationModel, digits=None) -> Scalar:
    """Delta p(x) = sum c_k delta_k phi_k(x), exact in the rational regime.

    Terms with c_k = 0 vanish identically: zero coefficients cannot be
    disturbed under the relative model.
    """
    if model.deltas is None:
        raise ArgumentError("model carries no delta vector")
    cs = p.coeff_values()
    if len(model.deltas) != len(cs):
        raise ArgumentError(
            f"{len(cs)} coefficients need {len(cs)} deltas, got {len(model.deltas)}"
        )
    v = raw_value(x)
    exact = _is_exact(v) and p.is_exact
    if isinstance(p.basis, LagrangeBasis):
        exact = exact and p.basis.nodes.digits is None
    if exact:
        phis = p.basis.values_at(v)
        return Scalar(sum(c * d * f for c, d, f in zip(cs, model.deltas, phis)))
    dd = resolve_digits(digits if digits is not None else _float_digits(p))
    with working(dd):
        phis = p.basis.values_at(v, digits=dd)
        acc = mp.mpf(0)
        for c, d, f in zip(cs, model.deltas, phis):
            acc += to_mpf(c, dd) * to_mpf(d, dd) * f
        return Scalar(acc, dd)


def input_condition(f_value, f_deriv, x) -> Scalar:
    """C = |x f'(x) / f(x)|: relative input error -> relative output error."""
    fv = f_value if isinstance(f_value, Scalar) else Scalar.exact(as_fraction(f_value))
    fd = f_deriv if isinstance(f_deriv, Scalar) else Scalar.exact(as_fraction(f_deriv))
    xv = x if isinstance(x, Scalar) else Scalar.exact(as_fraction(x))
    if fv.is_zero:
        raise DomainError("input condition is undefined where f(x) = 0")
    return abs(xv * fd / fv)


def _locate_root(p: Polynomial, r):
    if p.roots is None:
        raise ArgumentError("root conditioning needs a polynomial with stored roots")
    rv = raw_value(r)
    for i, rr in enumerate(p.root_values()):
        if rr == rv:
            return i, rr
    raise ArgumentError(f"{r!r} is not a stored root of {p!r}")


def root_condition(p: Polynomial, r, digits=None) -> Scalar:
    """Mixed factor A(r) = |r| B(r) / |p'(r)| for a stored simple root."""
    _, rv = _locate_root(p, r)
    dp = p.derivative_eval(rv, digits=digits)
    if dp.is_zero:
        raise SingularityError(f"multiple root at {r!r}: p'(r) = 0")
    B = condition_number(p, rv, digits=digits)
    r_abs = Scalar(abs(rv)) if isinstance(rv, Fraction) else Scalar(abs(rv), digits)
    return r_abs * B / abs(dp)


def root_condition_absolute(p: Polynomial, r, digits=None) -> Scalar:
    """B(r) / |p'(r)|: bounds the absolute first-order root shift per eps."""
    _, rv = _locate_root(p, r)
    dp = p.derivative_eval(rv, digits=digits)
    if dp.is_zero:
        raise SingularityError(f"multiple root at {r!r}: p'(r) = 0")
    return condition_number(p, rv, digits=digits) / abs(dp)


def root_condition_relative(p: Polynomial, r, digits=None) -> Scalar:
    """B(r) / (|r| |p'(r)|): bounds |Delta r / r|; scale-invariant."""
    _, rv = _locate_root(p, r)
    if rv == 0:
        raise DomainError("relative root shift is undefined at r = 0")
    dp = p.derivative_eval(rv, digits=digits)
    if dp.is_zero:
        raise SingularityError(f"multiple root at {r!r}: p'(r) = 0")
    B = condition_number(p, rv, digits=digits)
    r_abs = Scalar(abs(rv)) if isinstance(rv, Fraction) else Scalar(abs(rv), digits)
    return B / (r_abs * abs(dp))


def lebesgue_function(nodes: NodeSet, x, digits=None) -> Scalar:
    """L(x) = sum |ell_k(x)|; with it, B(x) <= L(x) max|c_k| for any
    Lagrange-basis polynomial on these nodes."""
    phis = lagrange_values(nodes, x, digits)
    if nodes.digits is None and isinstance(phis[0], Fraction):
        return Scalar(sum(abs(f) for f in phis))
    d = nodes.digits or resolve_digits(digits)
    with working(d):
        return Scalar(sum(abs(f) for f in phis), d)


def lebesgue_bound(p: Polynomial, x, digits=None) -> Scalar:
    """L(x) * max_k |c_k| for a Lagrange-basis polynomial."""
    if not isinstance(p.basis, LagrangeBasis):
        raise ArgumentError("the Lebesgue bound applies to Lagrange-basis polynomials")
    L = lebesgue_function(p.basis.nodes, x, digits)
    return L * max(abs(c) for c in p.coeffs)


# -- sampled curves ----------------------------------------------------------


@dataclass(frozen=True)
class ConditionCurve:
    """Sampled abscissae with log10-magnitude values.

    Non-finite entries are legal and flagged via ``nonfinite_indices``:
    -inf marks B(x) = 0, +inf marks a relative curve sampled at a zero of p.
    """

    abscissae: tuple
    values_log10: tuple
    label: str

    def __post_init__(self):
        if len(self.abscissae) != len(self.values_log10):
            raise ArgumentError("curve lengths differ")
        vals = [
            a.value if isinstance(a, Scalar) else a for a in self.abscissae
        ]
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise ArgumentError("abscissae must be strictly increasing")

    def __len__(self):
        return len(self.abscissae)

    @property
    def nonfinite_indices(self) -> dict:
        return {
            i: ("+inf" if v == POS_INF else "-inf")
            for i, v in enumerate(self.values_log10)
            if not math.isfinite(v)
        }

    def finite_max(self):
        """(max finite log10 value, index); raises if nothing is finite."""
        best = None
        for i, v in enumerate(self.values_log10):
            if math.isfinite(v) and (best is None or v > best[0]):
                best = (v, i)
        if best is None:
            raise DomainError(f"curve {self.label!r} has no finite values")
        return best

    def finite_min(self):
        best = None
        for i, v in enumerate(self.values_log10):
            if math.isfinite(v) and (best is None or v < best[0]):
                best = (v, i)
        if best is None:
            raise DomainError(f"curve {self.label!r} has no finite values")
        return best


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _exact_grid(a, b, samples: int):
    if samples < 2:
        raise ArgumentError(f"need at least 2 samples, got {samples}")
    af, bf = as_fraction(a), as_fraction(b)
    if not af < bf:
        raise ArgumentError(f"need a < b, got {af} >= {bf}")
    step = bf - af
    return [af + step * Fraction(i, samples - 1) for i in range(samples)]


def _monomial_abs_log10(coeffs, xs):
    """log10 of sum |c_k| |x|^k over a rational grid, by integer Horner."""
    C = 1
    for c in coeffs:
        C = _lcm(C, c.denominator)
    n = len(coeffs) - 1
    D = 1
    for x in xs:
        D = _lcm(D, x.denominator)
    dpow = [1] * (n + 1)
    for k in range(1, n + 1):
        dpow[k] = dpow[k - 1] * D
    gammas = [
        abs(c.numerator) * (C // c.denominator) * dpow[n - k]
        for k, c in enumerate(coeffs)
    ]
    log_den = _int_log10(C) + n * _int_log10(D) if D > 1 or C > 1 else 0.0
    out = []
    for x in xs:
        xD = abs(x.numerator * (D // x.denominator))
        acc = 0
        for g in reversed(gammas):
            acc = acc * xD + g
        out.append(_int_log10(acc) - log_den if acc else NEG_INF)
    return out


def _lagrange_abs_log10(nodes: NodeSet, coeffs, xs):
    """log10 of sum |c_k| |ell_k(x)| over a rational grid.

    One common denominator D turns each x - t_k into an integer d_k;
    with Lam = prod d_k the k-th basis magnitude is |Lam // d_k| / D^(m-1).
    """
    tvals = nodes.values
    m = len(tvals)
    w = nodes.barycentric
    q = [abs(wk * c) for wk, c in zip(w, coeffs)]
    Q = 1
    for qk in q:
        Q = _lcm(Q, qk.denominator)
    U = [qk.numerator * (Q // qk.denominator) for qk in q]
    live = [k for k, u in enumerate(U) if u]
    D = 1
    for t in tvals:
        D = _lcm(D, t.denominator)
    for x in xs:
        D = _lcm(D, x.denominator)
    tD = [t.numerator * (D // t.denominator) for t in tvals]
    tD_index = {t: k for k, t in enumerate(tD)}
    log_den = _int_log10(Q) + (m - 1) * _int_log10(D)
    out = []
    for x in xs:
        xD = x.numerator * (D // x.denominator)
        hit = tD_index.get(xD)
        if hit is not None:
            c = coeffs[hit]
            out.append(log10_abs(c) if c else NEG_INF)
            continue
        d = [xD - t for t in tD]
        lam = 1
        for dk in d:
            lam *= dk
        acc = 0
        for k in live:
            acc += U[k] * abs(lam // d[k])
        out.append(_int_log10(acc) - log_den if acc else NEG_INF)
    return out


def _lagrange_abs_log10_float(nodes: NodeSet, coeffs, xs, d: int):
    """Big-float analogue of the Lagrange kernel (node conversions hoisted
    out of the sample loop); used for Chebyshev-node curves."""
    out = []
    with working(d):
        tvals = [to_mpf(t, d) for t in nodes.values]
        q = [
            abs(to_mpf(w, d) * to_mpf(c, d))
            for w, c in zip(nodes.barycentric, coeffs)
        ]
        cabs = [abs(to_mpf(c, d)) for c in coeffs]
        tol = mp.mpf(10) ** (-d + 2)
        for x in xs:
            xv = to_mpf(x, d)
            difs = [xv - t for t in tvals]
            hit = None
            for j, djj in enumerate(difs):
                if abs(djj) < tol:
                    hit = j
                    break
            if hit is not None:
                out.append(log10_abs(cabs[hit]) if cabs[hit] != 0 else NEG_INF)
                continue
            lam = mp.mpf(1)
            for djj in difs:
                lam *= djj
            acc = mp.mpf(0)
            for k, qk in enumerate(q):
                if qk:
                    acc += qk * abs(lam / difs[k])
            out.append(log10_abs(acc) if acc != 0 else NEG_INF)
    return out


def _roots_abs_log10(roots, xs):
    """log10 |prod (x - r_j)| over a rational grid; None where p(x) = 0."""
    D = 1
    for r in roots:
        D = _lcm(D, r.denominator)
    for x in xs:
        D = _lcm(D, x.denominator)
    rD = [r.numerator * (D // r.denominator) for r in roots]
    log_den = len(roots) * _int_log10(D)
    out = []
    for x in xs:
        xD = x.numerator * (D // x.denominator)
        acc = 1
        for r in rD:
            acc *= xD - r
            if acc == 0:
                break
        out.append(None if acc == 0 else _int_log10(abs(acc)) - log_den)
    return out


def condition_curve(
    p: Polynomial,
    interval,
    samples: int = 2001,
    label: str | None = None,
    digits=None,
    relative: bool = False,
) -> ConditionCurve:
    """Sample B(x) (or B(x)/|p(x)| when ``relative``) on an equispaced
    rational grid and store log10 magnitudes.

    Arithmetic is exact whenever the polynomial and its basis are rational;
    big-float bases (Chebyshev nodes) run at their stored precision.
    """
    a, b = interval
    xs = _exact_grid(a, b, samples)
    name = label or f"B[{p.basis.describe()}]"
    exact = p.is_exact and not (
        isinstance(p.basis, LagrangeBasis) and p.basis.nodes.digits is not None
    )
    if exact and isinstance(p.basis, MonomialBasis):
        vals = _monomial_abs_log10(p.coeff_values(), xs)
    elif exact and isinstance(p.basis, LagrangeBasis):
        vals = _lagrange_abs_log10(p.basis.nodes, p.coeff_values(), xs)
    elif exact:
        vals = []
        for x in xs:
            Bv = condition_number(p, x).value
            vals.append(log10_abs(Bv) if Bv else NEG_INF)
    elif isinstance(p.basis, LagrangeBasis):
        d = resolve_digits(digits if digits is not None else _float_digits(p))
        vals = _lagrange_abs_log10_float(p.basis.nodes, p.coeff_values(), xs, d)
    else:
        d = resolve_digits(digits if digits is not None else _float_digits(p))
        vals = []
        for x in xs:
            Bv = condition_number(p, x, digits=d).value
            vals.append(log10_abs(Bv) if Bv != 0 else NEG_INF)
    if relative:
        vals = _relativize(p, xs, vals, digits)
        name = label or f"B/|p|[{p.basis.describe()}]"
    return ConditionCurve(
        abscissae=tuple(Scalar.exact(x) for x in xs),
        values_log10=tuple(vals),
        label=name,
    )


def _relativize(p: Polynomial, xs, bvals, digits):
    if p.roots is not None and all(r.is_exact for r in p.roots):
        pvals = _roots_abs_log10(p.root_values(), xs)
    elif p.is_exact:
        pvals = []
        for x in xs:
            pv = p.eval(x).value
            pvals.append(None if pv == 0 else log10_abs(pv))
    else:
        d = resolve_digits(digits if digits is not None else _float_digits(p))
        pvals = []
        for x in xs:
            pv = p.eval(x, digits=d).value
            pvals.append(None if pv == 0 else log10_abs(pv))
    out = []
    for bv, pv in zip(bvals, pvals):
        if pv is None:
            out.append(POS_INF)
        elif bv == NEG_INF:
            out.append(NEG_INF)
        else:
            out.append(bv - pv)
    return out


ROOT_CONDITION_VARIANTS = ("mixed", "absolute", "relative")


def root_condition_curve(
    p: Polynomial, variant: str = "mixed", label: str | None = None, digits=None
) -> ConditionCurve:
    """Root-condition factors at every stored root, as a log10 curve over
    the sorted roots. A(0) = 0 appears as a flagged -inf entry."""
    if variant not in ROOT_CONDITION_VARIANTS:
        raise ArgumentError(
            f"unknown variant {variant!r}; expected one of {ROOT_CONDITION_VARIANTS}"
        )
    if p.roots is None:
        raise ArgumentError("root conditioning needs a polynomial with stored roots")
    roots = sorted(set(p.root_values()))
    if len(roots) != len(p.roots):
        raise SingularityError("repeated roots have no finite root condition")
    vals = []
    for r in roots:
        if variant == "mixed":
            if r == 0:
                vals.append(NEG_INF)  # |r| factor pins A(0) to 0
                continue
            v = root_condition(p, r, digits=digits).value
        elif variant == "absolute":
            v = root_condition_absolute(p, r, digits=digits).value
        else:
            if r == 0:
                vals.append(POS_INF)
                continue
            v = root_condition_relative(p, r, digits=digits).value
        vals.append(log10_abs(v) if v != 0 else NEG_INF)
    return ConditionCurve(
        abscissae=tuple(Scalar.exact(r) if isinstance(r, Fraction) else Scalar(r, digits) for r in roots),
        values_log10=tuple(vals),
        label=label or f"root-condition-{variant}",
    )
