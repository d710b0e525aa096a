"""Weighted eps-pseudozero sets.

A point z belongs to the weighted eps-pseudozero set of p when some
perturbation Delta c with |Delta c_k| <= w_k eps makes z a root. That is
equivalent to the cheap pointwise test

    indicator(z) = |p(z)| / B_w(z) <= eps,   B_w(z) = sum w_k |phi_k(z)|,

and the membership is constructive: an explicit minimal witness
perturbation is returned by :func:`witness_perturbation`.

Fields are sampled on a rectangular complex grid at a precision chosen from
the smallest contour level and the largest coefficient (double precision is
hopeless here: the interesting levels sit 30+ decades below the coefficient
scale). Contours come out of marching squares run in log10 space.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
from mpmath import mp

from .bases import BernsteinBasis, LagrangeBasis, MonomialBasis, raw_value, _is_exact
from .errors import ArgumentError, DegenerateInputError, PrecisionError
from .poly import Polynomial
from .scalars import (
    ComplexScalar,
    Scalar,
    get_default_digits,
    log10_abs,
    resolve_digits,
    to_mpc,
    to_mpf,
    working,
)

NEG_INF = float("-inf")


class WeightVector:
    """Nonnegative per-coefficient weights, not all zero.

    The default choice is w_k = |c_k|, which makes the pseudozero test
    agree with the relative-perturbation condition number.
    """

    def __init__(self, weights):
        ws = []
        for w in weights:
            if isinstance(w, Scalar):
                ws.append(w)
            elif isinstance(w, mpmath.mpf):
                ws.append(Scalar(w, get_default_digits()))
            elif isinstance(w, float):
                ws.append(Scalar(Fraction(w)))
            else:
                ws.append(Scalar.exact(w))
        if not ws:
            raise DegenerateInputError("empty weight vector")
        if any(w.value < 0 for w in ws):
            raise DegenerateInputError("weights must be nonnegative")
        if all(w.value == 0 for w in ws):
            raise DegenerateInputError("weights must not all be zero")
        self.weights = tuple(ws)

    @classmethod
    def from_coefficients(cls, p: Polynomial) -> "WeightVector":
        return cls([abs(c) for c in p.coeffs])

    def values(self) -> tuple:
        return tuple(w.value for w in self.weights)

    def __len__(self):
        return len(self.weights)


def _resolve_weights(p: Polynomial, w) -> WeightVector:
    if w is None:
        return WeightVector.from_coefficients(p)
    if not isinstance(w, WeightVector):
        w = WeightVector(w)
    if len(w) != len(p.coeffs):
        raise ArgumentError(
            f"{len(p.coeffs)} coefficients need {len(p.coeffs)} weights, got {len(w)}"
        )
    return w


def _phi_row(p: Polynomial, zc, digits: int):
    """phi_k(z) for all k as mpc values (current context = ``digits``)."""
    basis = p.basis
    if isinstance(basis, MonomialBasis):
        out = [mp.mpc(1)]
        for _ in range(basis.degree):
            out.append(out[-1] * zc)
        return out
    if isinstance(basis, LagrangeBasis):
        nodes = basis.nodes
        tvals = [to_mpf(t, digits) for t in nodes.values]
        difs = [zc - t for t in tvals]
        tol = mp.mpf(10) ** (-digits + 2)
        for j, djj in enumerate(difs):
            if abs(djj) < tol:
                return [mp.mpc(1) if i == j else mp.mpc(0) for i in range(len(tvals))]
        w = [to_mpf(x, digits) for x in nodes.barycentric]
        lam = mp.mpc(1)
        for djj in difs:
            lam *= djj
        return [w[k] * lam / difs[k] for k in range(len(tvals))]
    if isinstance(basis, BernsteinBasis):
        a = to_mpf(raw_value(basis.interval[0]), digits)
        b = to_mpf(raw_value(basis.interval[1]), digits)
        t = (zc - a) / (b - a)
        u = 1 - t
        n = basis.degree
        tp = [mp.mpc(1)]
        up = [mp.mpc(1)]
        for _ in range(n):
            tp.append(tp[-1] * t)
            up.append(up[-1] * u)
        return [math.comb(n, k) * tp[k] * up[n - k] for k in range(n + 1)]
    raise ArgumentError(f"unsupported basis {basis!r}")


def _witness_parts(p: Polynomial, z, w, digits):
    """(phis, p(z), B_w(z)) computed consistently from one basis-value row."""
    d = resolve_digits(digits)
    ws = _resolve_weights(p, w).values()
    with working(d):
        zc = to_mpc(z, d)
        phis = _phi_row(p, zc, d)
        wvals = [to_mpf(x, d) for x in ws]
        B = mp.mpf(0)
        for wk, fk in zip(wvals, phis):
            B += wk * abs(fk)
        if B == 0:
            raise DegenerateInputError(
                "B_w(z) = 0: the weights give z no perturbation room"
            )
        pz = mp.mpc(0)
        for c, fk in zip(p.coeff_values(), phis):
            pz += to_mpf(c, d) * fk
        return phis, wvals, pz, B, d


def indicator(p: Polynomial, z, w=None, digits=None) -> Scalar:
    """|p(z)| / B_w(z); z lies in the eps-pseudozero set iff this is <= eps.

    For real rational z (and exact p) the value is an exact rational; complex
    arguments produce a big-float. Uses the stored root product for |p(z)|
    when available (it is the more accurate route to the same value).
    """
    ws = _resolve_weights(p, w)
    v = None
    if not isinstance(z, (complex, mpmath.mpc, ComplexScalar, tuple)):
        v = raw_value(z)
    if v is not None and _is_exact(v) and p.is_exact and not isinstance(p.basis, LagrangeBasis):
        wvals = [as_frac_or_none(x) for x in ws.values()]
        if all(x is not None for x in wvals):
            phis = p.basis.values_at(v)
            B = sum(wk * abs(fk) for wk, fk in zip(wvals, phis))
            if B == 0:
                raise DegenerateInputError("B_w(z) = 0 at this point")
            pv = (p.eval_from_roots(v) if p.roots is not None else p.eval(v)).value
            return Scalar(abs(pv) / B)
    d = resolve_digits(digits)
    with working(d):
        zc = to_mpc(z, d)
        B = _field_bw(p, ws, zc, d)
        if B == 0:
            raise DegenerateInputError("B_w(z) = 0 at this point")
        pz = _field_pz(p, zc, d)
        return Scalar(abs(pz) / B, d)


def as_frac_or_none(x):
    return x if isinstance(x, Fraction) else None


def _field_pz(p: Polynomial, zc, d):
    if p.roots is not None:
        acc = mp.mpc(1)
        for r in p.root_values():
            acc *= zc - to_mpf(r, d)
        return acc
    if isinstance(p.basis, MonomialBasis):
        acc = mp.mpc(0)
        for c in reversed(p.coeff_values()):
            acc = acc * zc + to_mpf(c, d)
        return acc
    phis = _phi_row(p, zc, d)
    acc = mp.mpc(0)
    for c, fk in zip(p.coeff_values(), phis):
        acc += to_mpf(c, d) * fk
    return acc


def _field_bw(p: Polynomial, ws: WeightVector, zc, d):
    if isinstance(p.basis, MonomialBasis):
        t = abs(zc)
        acc = mp.mpf(0)
        for wk in reversed([to_mpf(x, d) for x in ws.values()]):
            acc = acc * t + wk
        return acc
    phis = _phi_row(p, zc, d)
    acc = mp.mpf(0)
    for wk, fk in zip([to_mpf(x, d) for x in ws.values()], phis):
        acc += wk * abs(fk)
    return acc


def witness_perturbation(p: Polynomial, z, w=None, digits=None) -> list:
    """Minimal coefficient perturbation making z an exact root.

    Returns Delta c with Delta c_k = -p(z) w_k conj(phi_k(z)) /
    (|phi_k(z)| B_w(z)) (zero where phi_k(z) = 0 or w_k = 0), so that
    (p + Delta p)(z) = 0 to working precision and |Delta c_k| = w_k *
    indicator(p, z, w) exactly by construction.
    """
    phis, wvals, pz, B, d = _witness_parts(p, z, w, digits)
    with working(d):
        out = []
        scale = -pz / B
        for wk, fk in zip(wvals, phis):
            if wk == 0 or fk == 0:
                out.append(ComplexScalar.big(0, 0, d))
            else:
                dc = scale * wk * mp.conj(fk) / abs(fk)
                out.append(ComplexScalar(Scalar(dc.real, d), Scalar(dc.imag, d)))
        return out


class PseudozeroField:
    """log10 indicator values on a complex rectangle, plus contours.

    ``values_log10[j][i]`` is the value at re = grid_re[i], im = grid_im[j].
    Values are clamped below at -(digits-5): anything deeper is numerically
    indistinguishable from an exact root at the working precision. Contours
    are polylines per level; points at or below the smallest level form the
    interior mask (the region too deep to contour).
    """

    def __init__(self, label, region, grid_re, grid_im, values_log10, levels,
                 contours, digits):
        self.label = label
        self.region = region
        self.grid_re = tuple(grid_re)
        self.grid_im = tuple(grid_im)
        self.values_log10 = tuple(tuple(row) for row in values_log10)
        self.levels = tuple(levels)
        self.contours = contours
        self.digits = digits

    @property
    def resolution(self):
        return (len(self.grid_re), len(self.grid_im))

    def interior_mask(self, level=None):
        """Boolean rows marking grid points with indicator <= level
        (default: the smallest level)."""
        lv = min(self.levels) if level is None else level
        t = math.log10(lv)
        return [[v <= t for v in row] for row in self.values_log10]

    def mask_count(self, level=None) -> int:
        return sum(sum(row) for row in self.interior_mask(level))

    def __repr__(self):
        nx, ny = self.resolution
        return (
            f"PseudozeroField({self.label!r}, {nx}x{ny}, levels={list(self.levels)})"
        )


def default_field_digits(p: Polynomial, levels) -> int:
    """Precision rule: enough digits to resolve the smallest level under
    coefficients of the largest magnitude, with 20 guard digits."""
    min_level = min(levels)
    logs = [log10_abs(c.value) for c in p.coeffs if c.value != 0]
    c_decades = max(0, math.ceil(max(logs))) if logs else 0
    return max(
        get_default_digits(),
        20 + math.ceil(-math.log10(min_level)) + c_decades,
    )


def pseudozero_field(
    p: Polynomial,
    region=(-1.0, 25.0, -8.0, 8.0),
    resolution=(512, 512),
    levels=(1e-14, 1e-18),
    w=None,
    digits=None,
    label: str | None = None,
) -> PseudozeroField:
    """Sample log10(|p(z)|/B_w(z)) on a grid and extract level contours.

    ``region`` is (re_min, re_max, im_min, im_max). ``levels`` must be
    positive; they are sorted descending. An explicit ``digits`` below the
    precision rule raises PrecisionError rather than returning noise.
    """
    nx, ny = resolution
    if nx < 16 or ny < 16:
        raise ArgumentError(f"resolution must be at least 16x16, got {nx}x{ny}")
    levels = sorted((float(l) for l in levels), reverse=True)
    if not levels or levels[-1] <= 0:
        raise ArgumentError("levels must be positive")
    re0, re1, im0, im1 = (float(v) for v in region)
    if not (re0 < re1 and im0 < im1):
        raise ArgumentError(f"degenerate region {region!r}")
    ws = _resolve_weights(p, w)
    need = default_field_digits(p, levels)
    if digits is None:
        d = need
    else:
        d = resolve_digits(digits)
        if levels[-1] < 10.0 ** (-d + 10):
            raise PrecisionError(
                f"level {levels[-1]:g} is not resolvable at {d} digits; "
                f"use at least {need} digits"
            )
    floor = float(-(d - 5))

    with working(d):
        gre = [mp.mpf(re0) + (mp.mpf(re1) - mp.mpf(re0)) * i / (nx - 1) for i in range(nx)]
        gim = [mp.mpf(im0) + (mp.mpf(im1) - mp.mpf(im0)) * j / (ny - 1) for j in range(ny)]
        symmetric = im0 == -im1
        if symmetric:
            # mirror the imaginary grid so conjugate rows match bitwise
            for j in range(ny):
                k = ny - 1 - j
                if j > k:
                    gim[j] = -gim[k]
                elif j == k:
                    gim[j] = mp.mpf(0)

        def point_log10(zc):
            B = _field_bw(p, ws, zc, d)
            if B == 0:
                raise DegenerateInputError("B_w(z) = 0 inside the field region")
            pz = abs(_field_pz(p, zc, d))
            if pz == 0:
                return floor
            v = float(mp.log10(pz / B))
            return v if v > floor else floor

        values = [None] * ny
        half = (ny + 1) // 2 if symmetric else ny
        for j in range(half):
            row = [point_log10(mp.mpc(gre[i], gim[j])) for i in range(nx)]
            values[j] = row
        if symmetric:
            for j in range(half, ny):
                values[j] = list(values[ny - 1 - j])

        fre = [float(x) for x in gre]
        fim = [float(x) for x in gim]

        def center_inside(i, j, thresh):
            zc = mp.mpc((gre[i] + gre[i + 1]) / 2, (gim[j] + gim[j + 1]) / 2)
            return point_log10(zc) <= thresh

        contours = {}
        for lv in levels:
            t = math.log10(lv)
            segs = _marching_squares(values, fre, fim, t, center_inside)
            contours[lv] = _chain_segments(segs)

    return PseudozeroField(
        label=label or f"pseudozeros[{p.basis.describe()}]",
        region=(re0, re1, im0, im1),
        grid_re=fre,
        grid_im=fim,
        values_log10=values,
        levels=levels,
        contours=contours,
        digits=d,
    )


# case -> list of (edge_a, edge_b) segments; edges 0=bottom 1=right 2=top 3=left
_MS_CASES = {
    0: [],
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(1, 3)],
    13: [(0, 1)],
    14: [(3, 0)],
    15: [],
}


def _marching_squares(values, xs, ys, t, center_inside):
    """Per-cell segments of the iso-line value = t ('inside' means <= t).

    Saddle cells (5 and 10) are disambiguated by evaluating the field at
    the true cell center, which is deterministic.
    """
    ny = len(values)
    nx = len(values[0])
    segs = []
    for j in range(ny - 1):
        row0 = values[j]
        row1 = values[j + 1]
        for i in range(nx - 1):
            v = (row0[i], row0[i + 1], row1[i + 1], row1[i])
            code = (
                (v[0] <= t)
                | ((v[1] <= t) << 1)
                | ((v[2] <= t) << 2)
                | ((v[3] <= t) << 3)
            )
            if code == 0 or code == 15:
                continue
            if code == 5:
                pairs = [(3, 2), (1, 0)] if center_inside(i, j, t) else [(3, 0), (1, 2)]
            elif code == 10:
                pairs = [(0, 3), (2, 1)] if center_inside(i, j, t) else [(0, 1), (2, 3)]
            else:
                pairs = _MS_CASES[code]

            def edge_point(e):
                if e == 0:
                    va, vb = v[0], v[1]
                    fr = (t - va) / (vb - va)
                    return (xs[i] + (xs[i + 1] - xs[i]) * fr, ys[j])
                if e == 1:
                    va, vb = v[1], v[2]
                    fr = (t - va) / (vb - va)
                    return (xs[i + 1], ys[j] + (ys[j + 1] - ys[j]) * fr)
                if e == 2:
                    va, vb = v[3], v[2]
                    fr = (t - va) / (vb - va)
                    return (xs[i] + (xs[i + 1] - xs[i]) * fr, ys[j + 1])
                va, vb = v[0], v[3]
                fr = (t - va) / (vb - va)
                return (xs[i], ys[j] + (ys[j + 1] - ys[j]) * fr)

            for ea, eb in pairs:
                pa, pb = edge_point(ea), edge_point(eb)
                if pa != pb:  # contour through a corner degenerates a segment
                    segs.append((pa, pb))
    return segs


def _chain_segments(segs):
    """Join shared-endpoint segments into polylines (closed loops repeat
    their first vertex at the end)."""
    adjacency = {}
    for idx, (a, b) in enumerate(segs):
        adjacency.setdefault(a, []).append(idx)
        adjacency.setdefault(b, []).append(idx)
    used = [False] * len(segs)
    polylines = []
    for start in range(len(segs)):
        if used[start]:
            continue
        used[start] = True
        a, b = segs[start]
        chain = [a, b]
        # extend forward from b, then backward from a
        for endpos in (True, False):
            while True:
                tip = chain[-1] if endpos else chain[0]
                nxt = None
                for idx in adjacency.get(tip, ()):
                    if not used[idx]:
                        nxt = idx
                        break
                if nxt is None:
                    break
                used[nxt] = True
                pa, pb = segs[nxt]
                new = pb if pa == tip else pa
                if endpos:
                    chain.append(new)
                else:
                    chain.insert(0, new)
                if chain[0] == chain[-1]:
                    break
            if chain[0] == chain[-1]:
                break
        polylines.append(chain)
    return polylines
