"""Node families and the three polynomial basis families.

Bases are evaluated pointwise; everything is exact when the nodes and the
evaluation point are rational, and runs in mpmath big-floats otherwise.
Lagrange evaluation goes through barycentric weights so that a whole row
of basis values costs O(n) per point after O(n^2) setup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

import mpmath
from mpmath import mp

from .errors import ArgumentError, DegenerateInputError
from .scalars import (
    Scalar,
    as_fraction,
    resolve_digits,
    to_mpf,
    working,
)

RawNum = Union[Fraction, mpmath.mpf]


def raw_value(x, digits=None) -> RawNum:
    """Unwrap to a Fraction or mpf. Floats are taken as exact dyadics."""
    if isinstance(x, Scalar):
        return x.value
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise ArgumentError(f"cannot interpret {type(x).__name__} as a number")


def _is_exact(v: RawNum) -> bool:
    return isinstance(v, Fraction)


class NodeSet:
    """An ordered list of pairwise-distinct interpolation nodes.

    ``provenance`` records how the nodes were generated (``equispaced``,
    ``chebyshev-extreme`` or ``custom``); consumers must not assume an
    ordering beyond what the provenance guarantees.
    """

    def __init__(self, nodes, provenance: str = "custom", digits=None):
        scalars = []
        for x in nodes:
            if isinstance(x, Scalar):
                scalars.append(x)
            elif isinstance(x, mpmath.mpf):
                scalars.append(Scalar(x, digits))
            else:
                scalars.append(Scalar.exact(x))
        if not scalars:
            raise ArgumentError("a NodeSet needs at least one node")
        regimes = {s.regime for s in scalars}
        if len(regimes) > 1:
            raise ArgumentError("nodes must all share one regime")
        self.nodes = tuple(scalars)
        self.provenance = provenance
        self.digits = (
            None
            if scalars[0].is_exact
            else max(s.precision for s in scalars)
        )
        self._check_distinct()

    def _check_distinct(self):
        vals = self.values
        n = len(vals)
        if self.digits is None:
            if len(set(vals)) != n:
                raise DegenerateInputError("duplicate nodes")
            return
        # big-float nodes: near-duplicates silently blow up barycentric
        # weights, so reject anything closer than 10^(-digits+2)
        with working(self.digits):
            tol = mp.mpf(10) ** (-self.digits + 2)
            ordered = sorted(vals)
            for a, b in zip(ordered, ordered[1:]):
                if abs(b - a) < tol:
                    raise DegenerateInputError(
                        f"nodes closer than 10^({-self.digits + 2})"
                    )

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, k) -> Scalar:
        return self.nodes[k]

    @cached_property
    def values(self) -> tuple:
        """Raw node values (Fractions or mpfs)."""
        return tuple(s.value for s in self.nodes)

    @cached_property
    def barycentric(self) -> tuple:
        """Raw barycentric weights w_k = 1 / prod_{j != k} (x_k - x_j)."""
        vals = self.values
        n = len(vals)
        if self.digits is None:
            out = []
            for k in range(n):
                p = Fraction(1)
                for j in range(n):
                    if j != k:
                        p *= vals[k] - vals[j]
                out.append(1 / p)
            return tuple(out)
        with working(self.digits):
            out = []
            for k in range(n):
                p = mp.mpf(1)
                for j in range(n):
                    if j != k:
                        p *= vals[k] - vals[j]
                out.append(1 / p)
            return tuple(out)

    def index_of(self, x, digits=None):
        """Index of the node matching x (exact, or within the float
        collision threshold), else None."""
        v = raw_value(x)
        vals = self.values
        if self.digits is None and _is_exact(v):
            for j, t in enumerate(vals):
                if t == v:
                    return j
            return None
        d = self.digits or resolve_digits(digits)
        with working(d):
            xv = to_mpf(v, d)
            tol = mp.mpf(10) ** (-d + 2)
            for j, t in enumerate(vals):
                if abs(xv - to_mpf(t, d)) < tol:
                    return j
        return None

    def __repr__(self):
        return f"NodeSet({len(self.nodes)} nodes, {self.provenance!r})"


def equispaced_nodes(n: int, a=-1, b=1) -> NodeSet:
    """n+1 exact-rational nodes a + (b-a)k/n, strictly increasing."""
    if n < 1:
        raise ArgumentError(f"degree must be >= 1, got {n}")
    af, bf = as_fraction(a), as_fraction(b)
    if not af < bf:
        raise ArgumentError(f"need a < b, got {af} >= {bf}")
    step = bf - af
    nodes = [Scalar.exact(af + step * Fraction(k, n)) for k in range(n + 1)]
    return NodeSet(nodes, provenance="equispaced")


def chebyshev_nodes(n: int, digits=None) -> NodeSet:
    """n+1 extreme Chebyshev nodes cos(pi*k/n), k = 0..n, decreasing 1 -> -1.

    Values are big-floats computed at twice the working precision. The
    second half is mirrored from the first so the k <-> n-k negation
    symmetry holds exactly.
    """
    if n < 1:
        raise ArgumentError(f"degree must be >= 1, got {n}")
    d2 = 2 * resolve_digits(digits)
    with working(d2):
        half = []
        for k in range(n // 2 + 1):
            if 2 * k == n:
                half.append(mp.mpf(0))
            elif k == 0:
                half.append(mp.mpf(1))
            else:
                half.append(mp.cos(mp.pi * k / n))
        vals = list(half)
        for k in range(n // 2 + 1, n + 1):
            vals.append(-half[n - k])
    return NodeSet(
        [Scalar(v, d2) for v in vals], provenance="chebyshev-extreme", digits=d2
    )


def barycentric_weights(nodes: NodeSet) -> list:
    """Barycentric weights as Scalars; exact for rational nodes."""
    return [Scalar(w, nodes.digits) for w in nodes.barycentric]


def lagrange_basis_value(nodes: NodeSet, k: int, x) -> Scalar:
    """ell_k(x) by the direct product formula; exact on rationals."""
    n = len(nodes)
    if not 0 <= k < n:
        raise IndexError(f"basis index {k} out of range for {n} nodes")
    vals = nodes.values
    v = raw_value(x)
    if nodes.digits is None and _is_exact(v):
        num = Fraction(1)
        den = Fraction(1)
        for j in range(n):
            if j != k:
                num *= v - vals[j]
                den *= vals[k] - vals[j]
        return Scalar(num / den)
    d = nodes.digits or resolve_digits(None)
    with working(d):
        xv = to_mpf(v, d)
        num = mp.mpf(1)
        den = mp.mpf(1)
        for j in range(n):
            if j != k:
                num *= xv - to_mpf(vals[j], d)
                den *= to_mpf(vals[k], d) - to_mpf(vals[j], d)
        return Scalar(num / den, d)


def lagrange_values(nodes: NodeSet, x, digits=None) -> list:
    """All ell_k(x) at once in O(n): ell_k = w_k * Lam(x) / (x - x_k).

    Returns raw numbers in the computation regime. If x collides with a
    node (exactly, or within the float threshold) the row is the unit
    vector for that node.
    """
    vals = nodes.values
    n = len(vals)
    v = raw_value(x)
    if nodes.digits is None and _is_exact(v):
        hit = nodes.index_of(v)
        if hit is not None:
            return [Fraction(1) if j == hit else Fraction(0) for j in range(n)]
        w = nodes.barycentric
        difs = [v - t for t in vals]
        lam = Fraction(1)
        for djj in difs:
            lam *= djj
        return [w[k] * lam / difs[k] for k in range(n)]
    d = nodes.digits or resolve_digits(digits)
    with working(d):
        xv = to_mpf(v, d)
        tol = mp.mpf(10) ** (-d + 2)
        tvals = [to_mpf(t, d) for t in vals]
        difs = [xv - t for t in tvals]
        for j, djj in enumerate(difs):
            if abs(djj) < tol:
                return [mp.mpf(1) if i == j else mp.mpf(0) for i in range(n)]
        w = nodes.barycentric
        lam = mp.mpf(1)
        for djj in difs:
            lam *= djj
        return [w[k] * lam / difs[k] for k in range(n)]


def bernstein_basis_value(n: int, k: int, x, interval=(0, 1), digits=None) -> Scalar:
    """Value of the degree-n Bernstein basis polynomial k on [a, b].

    The interval is pulled back affinely to [0,1] and the exact binomial
    form comb(n,k) t^k (1-t)^(n-k) is used; for t in [0,1] every factor is
    nonnegative so this is stable in floats as well.
    """
    if not 0 <= k <= n:
        raise IndexError(f"basis index {k} out of range for degree {n}")
    a, b = as_fraction(interval[0]), as_fraction(interval[1])
    if not a < b:
        raise ArgumentError("bernstein interval needs a < b")
    v = raw_value(x)
    c = math.comb(n, k)
    if _is_exact(v):
        t = (v - a) / (b - a)
        return Scalar(c * t**k * (1 - t) ** (n - k))
    d = resolve_digits(digits)
    with working(d):
        t = (v - to_mpf(a, d)) / to_mpf(b - a, d)
        return Scalar(mp.mpf(c) * t**k * (1 - t) ** (n - k), d)


@dataclass(frozen=True)
class MonomialBasis:
    """phi_k(x) = x^k, k = 0..degree."""

    degree: int

    kind = "monomial"

    @property
    def size(self) -> int:
        return self.degree + 1

    def values_at(self, x, digits=None) -> list:
        v = raw_value(x)
        if _is_exact(v):
            out = [Fraction(1)]
            for _ in range(self.degree):
                out.append(out[-1] * v)
            return out
        d = resolve_digits(digits)
        with working(d):
            out = [mp.mpf(1)]
            for _ in range(self.degree):
                out.append(out[-1] * v)
            return out

    def describe(self) -> str:
        return "monomial"


@dataclass(frozen=True)
class LagrangeBasis:
    """Cardinal basis ell_k on a node set: ell_k(x_j) = delta_kj."""

    nodes: NodeSet

    kind = "lagrange"

    @property
    def size(self) -> int:
        return len(self.nodes)

    def values_at(self, x, digits=None) -> list:
        return lagrange_values(self.nodes, x, digits)

    def describe(self) -> str:
        return f"lagrange[{len(self.nodes)} {self.nodes.provenance} nodes]"


@dataclass(frozen=True)
class BernsteinBasis:
    """Bernstein basis of a given degree on an interval [a, b]."""

    degree: int
    interval: tuple = (Fraction(0), Fraction(1))

    kind = "bernstein"

    @property
    def size(self) -> int:
        return self.degree + 1

    def values_at(self, x, digits=None) -> list:
        a = as_fraction(self.interval[0])
        b = as_fraction(self.interval[1])
        if not a < b:
            raise ArgumentError("bernstein interval needs a < b")
        v = raw_value(x)
        n = self.degree
        if _is_exact(v):
            t = (v - a) / (b - a)
            u = 1 - t
            tp = [Fraction(1)]
            up = [Fraction(1)]
            for _ in range(n):
                tp.append(tp[-1] * t)
                up.append(up[-1] * u)
            return [math.comb(n, k) * tp[k] * up[n - k] for k in range(n + 1)]
        d = resolve_digits(digits)
        with working(d):
            t = (v - to_mpf(a, d)) / to_mpf(b - a, d)
            u = 1 - t
            tp = [mp.mpf(1)]
            up = [mp.mpf(1)]
            for _ in range(n):
                tp.append(tp[-1] * t)
                up.append(up[-1] * u)
            return [math.comb(n, k) * tp[k] * up[n - k] for k in range(n + 1)]

    def describe(self) -> str:
        return f"bernstein[deg {self.degree}]"


Basis = Union[MonomialBasis, LagrangeBasis, BernsteinBasis]
