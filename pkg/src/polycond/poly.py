"""Polynomials in a declared basis, built from roots or interpolation data.

Root-product construction (Vieta expansion) always runs in exact rational
arithmetic: the whole point of the conditioning experiments is that
coefficient error matters, so construction must not inject any. The original
roots are retained exactly alongside the expanded coefficients.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from .bases import (
    Basis,
    BernsteinBasis,
    LagrangeBasis,
    MonomialBasis,
    NodeSet,
    equispaced_nodes,
    raw_value,
    _is_exact,
)
from .errors import ArgumentError, UnsupportedBasisError
from .scalars import Scalar, as_fraction, resolve_digits, to_mpf, working


class Polynomial:
    """A basis plus a coefficient vector, with optional exact root list."""

    def __init__(self, basis: Basis, coeffs, roots=None):
        coeffs = tuple(
            c if isinstance(c, Scalar) else Scalar.exact(c) for c in coeffs
        )
        if len(coeffs) != basis.size:
            raise ArgumentError(
                f"basis of size {basis.size} needs {basis.size} coefficients, "
                f"got {len(coeffs)}"
            )
        self.basis = basis
        self.coeffs = coeffs
        self.roots = (
            None
            if roots is None
            else tuple(r if isinstance(r, Scalar) else Scalar.exact(r) for r in roots)
        )

    @property
    def degree(self) -> int:
        return self.basis.size - 1

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.coeffs)

    def coeff_values(self) -> tuple:
        return tuple(c.value for c in self.coeffs)

    def root_values(self) -> tuple:
        if self.roots is None:
            raise ArgumentError("polynomial carries no root list")
        return tuple(r.value for r in self.roots)

    # -- evaluation ----------------------------------------------------------

    def eval(self, x, digits=None) -> Scalar:
        """p(x): Horner (monomial), second barycentric form (Lagrange), or
        de Casteljau (Bernstein); exact in the rational regime."""
        v = raw_value(x)
        cs = self.coeff_values()
        basis = self.basis
        exact = _is_exact(v) and self.is_exact
        if isinstance(basis, MonomialBasis):
            if exact:
                acc = Fraction(0)
                for c in reversed(cs):
                    acc = acc * v + c
                return Scalar(acc)
            d = resolve_digits(digits)
            with working(d):
                xv = to_mpf(v, d)
                acc = mp.mpf(0)
                for c in reversed(cs):
                    acc = acc * xv + to_mpf(c, d)
                return Scalar(acc, d)
        if isinstance(basis, LagrangeBasis):
            return self._eval_barycentric(v, digits)
        if isinstance(basis, BernsteinBasis):
            return self._eval_decasteljau(v, digits)
        raise UnsupportedBasisError(f"cannot evaluate in basis {basis!r}")

    def _eval_barycentric(self, v, digits=None) -> Scalar:
        nodes: NodeSet = self.basis.nodes
        cs = self.coeff_values()
        hit = nodes.index_of(v, digits)
        if hit is not None:
            c = self.coeffs[hit]
            return c if c.is_exact else Scalar(c.value, c.precision)
        w = nodes.barycentric
        vals = nodes.values
        if nodes.digits is None and _is_exact(v) and self.is_exact:
            num = Fraction(0)
            den = Fraction(0)
            for k in range(len(vals)):
                t = w[k] / (v - vals[k])
                num += t * cs[k]
                den += t
            return Scalar(num / den)
        d = nodes.digits or resolve_digits(digits)
        with working(d):
            xv = to_mpf(v, d)
            num = mp.mpf(0)
            den = mp.mpf(0)
            for k in range(len(vals)):
                t = to_mpf(w[k], d) / (xv - to_mpf(vals[k], d))
                num += t * to_mpf(cs[k], d)
                den += t
            return Scalar(num / den, d)

    def _eval_decasteljau(self, v, digits=None) -> Scalar:
        a = as_fraction(self.basis.interval[0])
        b = as_fraction(self.basis.interval[1])
        cs = self.coeff_values()
        if _is_exact(v) and self.is_exact:
            t = (v - a) / (b - a)
            row = list(cs)
            while len(row) > 1:
                row = [(1 - t) * p + t * q for p, q in zip(row, row[1:])]
            return Scalar(row[0])
        d = resolve_digits(digits)
        with working(d):
            t = (to_mpf(v, d) - to_mpf(a, d)) / to_mpf(b - a, d)
            row = [to_mpf(c, d) for c in cs]
            while len(row) > 1:
                row = [(1 - t) * p + t * q for p, q in zip(row, row[1:])]
            return Scalar(row[0], d)

    def eval_from_roots(self, x, digits=None) -> Scalar:
        """p(x) as the exact product prod (x - r_j); independent of the
        expanded coefficients, so it serves as an oracle for them."""
        rs = self.root_values()
        v = raw_value(x)
        if _is_exact(v) and all(_is_exact(r) for r in rs):
            acc = Fraction(1)
            for r in rs:
                acc *= v - r
            return Scalar(acc)
        d = resolve_digits(digits)
        with working(d):
            xv = to_mpf(v, d)
            acc = mp.mpf(1)
            for r in rs:
                acc *= xv - to_mpf(r, d)
            return Scalar(acc, d)

    # -- derivative ----------------------------------------------------------

    def derivative_eval(self, x, digits=None) -> Scalar:
        """p'(x). Uses the root-product form when roots are stored (exact at
        the roots themselves), else Horner on the derived monomial
        coefficients. Lagrange/Bernstein representations without a root list
        are unsupported."""
        if self.roots is not None:
            return self._derivative_from_roots(x, digits)
        if isinstance(self.basis, MonomialBasis):
            return self._derivative_horner(x, digits)
        raise UnsupportedBasisError(
            f"derivative needs monomial coefficients or a root list, "
            f"not {self.basis.describe()}"
        )

    def _derivative_horner(self, x, digits=None) -> Scalar:
        cs = self.coeff_values()
        dcs = [k * cs[k] for k in range(1, len(cs))]
        v = raw_value(x)
        if _is_exact(v) and self.is_exact:
            acc = Fraction(0)
            for c in reversed(dcs):
                acc = acc * v + c
            return Scalar(acc)
        d = resolve_digits(digits)
        with working(d):
            xv = to_mpf(v, d)
            acc = mp.mpf(0)
            for c in reversed(dcs):
                acc = acc * xv + to_mpf(c, d)
            return Scalar(acc, d)

    def _derivative_from_roots(self, x, digits=None) -> Scalar:
        rs = self.root_values()
        v = raw_value(x)
        exact = _is_exact(v) and all(_is_exact(r) for r in rs)
        hit = None
        for i, r in enumerate(rs):
            if r == v:
                hit = i
                break
        if hit is not None:
            # split product: p'(r_i) = prod_{j != i} (r_i - r_j)
            if exact:
                acc = Fraction(1)
                for j, r in enumerate(rs):
                    if j != hit:
                        acc *= v - r
                return Scalar(acc)
            d = resolve_digits(digits)
            with working(d):
                xv = to_mpf(v, d)
                acc = mp.mpf(1)
                for j, r in enumerate(rs):
                    if j != hit:
                        acc *= xv - to_mpf(r, d)
                return Scalar(acc, d)
        # away from the roots: p'(x) = p(x) * sum 1/(x - r_j)
        if exact:
            p = Fraction(1)
            s = Fraction(0)
            for r in rs:
                p *= v - r
                s += 1 / (v - r)
            return Scalar(p * s)
        d = resolve_digits(digits)
        with working(d):
            xv = to_mpf(v, d)
            p = mp.mpf(1)
            s = mp.mpf(0)
            for r in rs:
                dr = xv - to_mpf(r, d)
                p *= dr
                s += 1 / dr
            return Scalar(p * s, d)

    def __repr__(self):
        tag = "" if self.roots is None else f", {len(self.roots)} roots"
        return f"Polynomial({self.basis.describe()}, deg {self.degree}{tag})"


def from_roots_monomial(roots) -> Polynomial:
    """Monic monomial polynomial prod (x - r_k), expanded by exact Vieta
    convolution; coefficients are in ascending order of degree."""
    rs = [as_fraction(r) for r in roots]
    if not rs:
        raise ArgumentError("need at least one root")
    coeffs = [Fraction(1)]
    for r in rs:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    return Polynomial(MonomialBasis(len(rs)), coeffs, roots=rs)


def interpolate_lagrange(nodes: NodeSet, values) -> Polynomial:
    """The Lagrange-basis representation IS the value vector."""
    vals = list(values)
    if len(vals) != len(nodes):
        raise ArgumentError(
            f"{len(nodes)} nodes need {len(nodes)} values, got {len(vals)}"
        )
    coeffs = []
    for v in vals:
        if isinstance(v, Scalar):
            coeffs.append(v)
        elif isinstance(v, mpmath.mpf):
            coeffs.append(Scalar(v, nodes.digits))
        else:
            coeffs.append(Scalar.exact(v))
    return Polynomial(LagrangeBasis(nodes), coeffs)


def runge_function(x, digits=None) -> Scalar:
    """1 / (1 + 25 x^2); exact for rational x."""
    v = raw_value(x)
    if _is_exact(v):
        return Scalar(1 / (1 + 25 * v * v))
    d = resolve_digits(digits)
    with working(d):
        xv = to_mpf(v, d)
        return Scalar(1 / (1 + 25 * xv * xv), d)


# -- stock polynomials ------------------------------------------------------


def wilkinson(n: int = 20) -> Polynomial:
    """prod_{k=1..n} (x - k), expanded exactly."""
    if n < 1:
        raise ArgumentError("wilkinson needs n >= 1")
    return from_roots_monomial(range(1, n + 1))


SCALED_TARGETS = ("symmetric", "zero-two", "zero-one")


def scaled_wilkinson(n: int = 20, target: str = "symmetric") -> Polynomial:
    """Integer roots 1..n mapped affinely onto a small interval.

    symmetric: -1 + 2k/(n+1) (symmetric in (-1, 1); half the expanded
    coefficients vanish for even n); zero-two: 2 - 2k/(n+1); zero-one:
    k/(n+1).
    """
    if n < 1:
        raise ArgumentError("scaled_wilkinson needs n >= 1")
    if target == "symmetric":
        roots = [Fraction(-1) + Fraction(2 * k, n + 1) for k in range(1, n + 1)]
    elif target == "zero-two":
        roots = [Fraction(2) - Fraction(2 * k, n + 1) for k in range(1, n + 1)]
    elif target == "zero-one":
        roots = [Fraction(k, n + 1) for k in range(1, n + 1)]
    else:
        raise ArgumentError(
            f"unknown target {target!r}; expected one of {SCALED_TARGETS}"
        )
    return from_roots_monomial(roots)


def clustered_at_zero(n: int = 20) -> Polynomial:
    """prod (x - 2^-k): all roots in (0, 1/2], clustered at 0."""
    if n < 1:
        raise ArgumentError("clustered_at_zero needs n >= 1")
    return from_roots_monomial(Fraction(1, 2**k) for k in range(1, n + 1))


def clustered_at_one(n: int = 20) -> Polynomial:
    """prod (x - (1 - 2^-k)): all roots in [1/2, 1), clustered at 1."""
    if n < 1:
        raise ArgumentError("clustered_at_one needs n >= 1")
    return from_roots_monomial(1 - Fraction(1, 2**k) for k in range(1, n + 1))


def named_polynomial(name: str) -> Polynomial:
    """Resolve CLI/service polynomial names.

    Accepts wilkinson<N> (e.g. wilkinson20), c<N> (roots 2^-k), s<N>
    (roots 1 - 2^-k), ``roots:`` / ``coeffs:`` followed by a comma list of
    exact rationals (coeffs ascending, monomial basis).
    """
    key = name.strip().lower()
    if key.startswith("roots:"):
        items = [as_fraction(t) for t in key[len("roots:"):].split(",") if t]
        return from_roots_monomial(items)
    if key.startswith("coeffs:"):
        items = [as_fraction(t) for t in key[len("coeffs:"):].split(",") if t]
        if not items:
            raise ArgumentError("coeffs: list is empty")
        return Polynomial(MonomialBasis(len(items) - 1), items)
    for prefix, builder in (
        ("wilkinson", wilkinson),
        ("w", wilkinson),
        ("c", clustered_at_zero),
        ("s", clustered_at_one),
    ):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return builder(int(key[len(prefix):]))
    raise ArgumentError(
        f"unknown polynomial {name!r}; use wilkinson<N>, c<N>, s<N>, "
        f"roots:<list> or coeffs:<list>"
    )


def runge_interpolant(nodes: NodeSet, digits=None) -> Polynomial:
    """Lagrange interpolant of 1/(1+25x^2) on the given nodes."""
    ys = []
    for t in nodes.values:
        if isinstance(t, Fraction):
            ys.append(runge_function(t))
        else:
            ys.append(runge_function(t, digits=nodes.digits or digits))
    return interpolate_lagrange(nodes, ys)
