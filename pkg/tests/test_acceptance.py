"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines as they
complete. Two sub-clauses are asserted exactly as required although exact
arithmetic refutes them (the equispaced/Chebyshev max-B ratio bracket and
the argmax root index of the degree-20 integer-root polynomial); the
printed details spell out the computed values and the passing clauses.
"""

import math
import random
import time
from fractions import Fraction

import pytest
from mpmath import mp

from polycond import (
    MonomialBasis,
    PerturbationModel,
    Polynomial,
    condition_number,
    eval_perturbation,
    equispaced_nodes,
    from_roots_monomial,
    log10_abs,
    root_condition,
    root_condition_absolute,
    runge_interpolant,
    wilkinson,
)
from polycond.pseudozeros import (
    WeightVector,
    indicator,
    pseudozero_field,
    witness_perturbation,
)
from polycond.scalars import to_mpf, working
from polycond.scenarios import (
    C20_FIELD_REGION,
    S20_FIELD_LEVELS,
    S20_FIELD_REGION,
    WILKINSON_FIELD_REGION,
    runge_chebyshev,
    runge_equispaced,
    wilkinson_first,
    wilkinson_scaled,
    wilkinson_second,
)

DEGREES = (5, 8, 13, 21, 34, 55, 89)


def _line(num: int, ok: bool, detail: str) -> bool:
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} -- {detail}")
    return ok


@pytest.fixture(scope="module")
def runge_reports():
    t0 = time.time()
    equi = runge_equispaced(degrees=DEGREES, samples=2001)
    cheb = runge_chebyshev(degrees=DEGREES, samples=2001)
    return equi, cheb, time.time() - t0


@pytest.fixture(scope="module")
def w20_report():
    return wilkinson_first(20)


def test_criterion_1_runge_ratio_and_chebyshev_cap(runge_reports):
    """Equispaced vs Chebyshev at n = 89."""
    equi, cheb, elapsed = runge_reports
    ratio_log10 = equi.summary["max_log10_B_n89"] - cheb.summary["max_log10_B_n89"]
    cheb_max = max(10 ** cheb.summary[f"max_log10_B_n{n}"] for n in DEGREES)
    ratio_ok = 21.0 <= ratio_log10 <= 23.0
    cheb_ok = cheb_max <= 2.5
    ratio_note = (
        "ok"
        if ratio_ok
        else "exceeded: the resolved equispaced max is 1e23.91, so the "
        "quoted 1e22 improvement factor underestimates it"
    )
    _line(
        1,
        ratio_ok and cheb_ok and elapsed < 300,
        f"log10 ratio at n=89 = {ratio_log10:.4f} (bracket [21, 23]: {ratio_note}); "
        f"chebyshev max B = {cheb_max:.4f} <= 2.5: {cheb_ok}; "
        f"runtime {elapsed:.1f}s < 300s",
    )
    assert cheb_ok
    assert elapsed < 300
    assert ratio_ok, (
        f"sampled-max ratio is 1e{ratio_log10:.4f}, outside [1e21, 1e23]; "
        "the equispaced n=89 maximum is 1e23.914 at 2001 samples (converged; "
        "501 samples already give the same value)"
    )


def test_criterion_2_wilkinson20_root_condition(w20_report):
    """Exact argmax of A(r) and the magnitude at r = 16."""
    summary = w20_report.summary
    w20 = wilkinson(20)
    a16 = log10_abs(root_condition(w20, 16).value)
    a15 = log10_abs(root_condition(w20, 15).value)
    ratio = root_condition(w20, 15).value / root_condition(w20, 16).value
    argmax_ok = summary["argmax_root"] == 16
    mag_ok = 15.0 <= a16 <= 17.0
    _line(
        2,
        argmax_ok and mag_ok,
        f"exact argmax root = {summary['argmax_root']} (required: 16; "
        f"A(15)/A(16) = {ratio} exactly, log10 A(15) = {a15:.4f}); "
        f"log10 A(16) = {a16:.4f} in [15, 17]: {mag_ok}",
    )
    assert mag_ok
    assert argmax_ok, (
        f"exact-arithmetic argmax of A(r) is r = {summary['argmax_root']} "
        f"with A(15) = (5/4) A(16) exactly; the quoted argmax 16 does not "
        f"hold under A(r) = |r B(r)/p'(r)| in exact rationals"
    )


def test_criterion_3_growth_with_degree():
    """A(r) growth for n = 30 and n = 40."""
    t0 = time.time()
    r30 = wilkinson_first(30)
    r40 = wilkinson_first(40)
    elapsed = time.time() - t0
    ok30 = r30.summary["max_log10_A"] > 21.0
    curve40 = r40.curve("root-A-mixed")
    in_bracket = [
        (int(a.value), v)
        for a, v in zip(curve40.abscissae, curve40.values_log10)
        if 27.0 <= v <= 29.0
    ]
    ok40 = bool(in_bracket)
    _line(
        3,
        ok30 and ok40,
        f"n=30 max log10 A = {r30.summary['max_log10_A']:.4f} > 21: {ok30}; "
        f"n=40 roots with log10 A in [27, 29]: {in_bracket} "
        f"(source says it reaches ~1e28 'sometimes'; the overall max is "
        f"{r40.summary['max_log10_A']:.4f} at r = {r40.summary['argmax_root']}); "
        f"runtime {elapsed:.1f}s",
    )
    assert ok30
    assert ok40
    assert elapsed < 60


def test_criterion_4_symmetric_vs_rescaled():
    """Symmetric placement collapses the root conditioning; pure rescaling
    cannot (the relative shift factor is exactly scale-invariant)."""
    t0 = time.time()
    sym20 = wilkinson_scaled(20, "symmetric")
    sym60 = wilkinson_scaled(60, "symmetric")
    zt20 = wilkinson_scaled(20, "zero-two")
    unscaled = wilkinson_first(20)
    elapsed = time.time() - t0

    s20a, s20r = sym20.summary["max_log10_A"], sym20.summary["max_log10_rel_shift"]
    s60a, s60r = sym60.summary["max_log10_A"], sym60.summary["max_log10_rel_shift"]
    ok_s20 = 2.0 <= s20a <= 4.0 and 2.0 <= s20r <= 4.0
    ok_s60 = 12.0 <= s60a <= 14.0 and 12.0 <= s60r <= 14.0

    rel_gap = abs(
        zt20.summary["max_log10_rel_shift"] - unscaled.summary["max_log10_rel_shift"]
    )
    mixed_gap = abs(zt20.summary["max_log10_A"] - unscaled.summary["max_log10_A"])
    b_gap = abs(zt20.summary["max_log10_B"] - unscaled.summary["max_log10_B"])
    ok_zt = rel_gap <= 2.0
    _line(
        4,
        ok_s20 and ok_s60 and ok_zt and elapsed < 120,
        f"symmetric n=20: log10 A = {s20a:.4f}, rel = {s20r:.4f} (bracket [2,4]); "
        f"symmetric n=60: log10 A = {s60a:.4f}, rel = {s60r:.4f} (bracket [12,14]); "
        f"[0,2]-rescaled n=20 vs unscaled relative-shift gap = {rel_gap:.4f} "
        f"decades <= 2 (pure rescaling is exactly invariant; for comparison "
        f"the mixed-A gap is {mixed_gap:.2f} and the raw evaluation-B gap is "
        f"{b_gap:.2f} decades); runtime {elapsed:.1f}s < 120s",
    )
    assert ok_s20
    assert ok_s60
    assert ok_zt
    assert elapsed < 120


def test_criterion_5_clustered_roots_basis_contrast():
    """The cluster at 0 is benign in the monomial basis and terrible in the
    Lagrange basis on equispaced nodes."""
    t0 = time.time()
    report = wilkinson_second(samples=2001, include_fields=False)
    elapsed = time.time() - t0
    mono_max = report.summary["c20_monomial_max_B"]
    mono_x = report.summary["c20_monomial_argmax_x"]
    ok_mono = 2.3 <= mono_max <= 2.5 and mono_x == 1.0
    lag_a = report.summary["c20_lagrange_max_log10_A"]
    ok_lag = 46.0 <= lag_a <= 50.0
    raw_b = report.summary["c20_lagrange_max_log10_B"]
    rel_b = report.summary["c20_lagrange_max_log10_B_rel"]
    _line(
        5,
        ok_mono and ok_lag and elapsed < 60,
        f"monomial max B on [0,1] = {mono_max:.6f} at x = {mono_x:g} "
        f"(bracket [2.3, 2.5], exact product oracle); Lagrange basis on k/20: "
        f"max log10 root condition = {lag_a:.4f} in [46, 50] (the raw sampled "
        f"log10 B curve caps at {raw_b:.2f} by the Lebesgue bound; the "
        f"relative evaluation curve max is {rel_b:.2f}); runtime {elapsed:.1f}s",
    )
    assert ok_mono
    assert ok_lag
    assert elapsed < 60


def test_criterion_6_witness_property(w20, c20, s20):
    """Constructed witness perturbations are sound and tight."""
    t0 = time.time()
    d = 60
    regions = {
        "w20": (w20, WILKINSON_FIELD_REGION),
        "c20": (c20, C20_FIELD_REGION),
        "s20": (s20, S20_FIELD_REGION),
    }
    worst_resid = 0.0
    worst_tight = 0.0
    with working(d):
        resid_cap = mp.mpf(10) ** (-d + 8)
        tight_cap = mp.mpf(10) ** -10
        for name, (p, region) in regions.items():
            rng = random.Random(0)
            wv = WeightVector.from_coefficients(p)
            wvals = [to_mpf(v, d) for v in wv.values()]
            cs = [to_mpf(c, d) for c in p.coeff_values()]
            for _ in range(200):
                z = (
                    rng.uniform(region[0], region[1]),
                    rng.uniform(region[2], region[3]),
                )
                deltas = witness_perturbation(p, z, digits=d)
                ind = to_mpf(indicator(p, z, digits=d).value, d)
                zc = mp.mpc(to_mpf(Fraction(z[0]), d), to_mpf(Fraction(z[1]), d))
                total = mp.mpc(0)
                B = mp.mpf(0)
                zp = mp.mpc(1)
                for c, dc, wk in zip(cs, deltas, wvals):
                    total += (c + dc.to_mpc(d)) * zp
                    B += wk * abs(zp)
                    zp *= zc
                resid = abs(total) / B
                worst_resid = max(worst_resid, float(resid))
                assert resid <= resid_cap, f"{name} witness residual too large"
                for dc, wk in zip(deltas, wvals):
                    if wk != 0 and not dc.is_zero:
                        tight = abs(abs(dc.to_mpc(d)) / wk - ind)
                        if ind != 0:
                            rel = tight / ind
                            worst_tight = max(worst_tight, float(rel))
                            assert rel <= tight_cap, f"{name} witness not tight"
    elapsed = time.time() - t0
    _line(
        6,
        True,
        f"600 random witnesses across three polynomials: worst residual/B = "
        f"{worst_resid:.2e} <= 1e-{d - 8}; worst tightness error = "
        f"{worst_tight:.2e} (10 significant digits required); "
        f"runtime {elapsed:.1f}s",
    )


def test_criterion_7_contour_nesting(s20):
    """Strictly nested interior masks at 256x256 for the cluster at 1."""
    t0 = time.time()
    fld = pseudozero_field(
        s20,
        region=S20_FIELD_REGION,
        resolution=(256, 256),
        levels=S20_FIELD_LEVELS,
        label="s20",
    )
    elapsed = time.time() - t0
    counts = [fld.mask_count(lv) for lv in fld.levels]
    masks = [fld.interior_mask(lv) for lv in fld.levels]
    subset_ok = True
    for outer, inner in zip(masks, masks[1:]):
        for ro, ri in zip(outer, inner):
            for vo, vi in zip(ro, ri):
                if vi and not vo:
                    subset_ok = False
    strict_ok = all(a > b for a, b in zip(counts, counts[1:]))
    nonempty_ok = counts[-1] > 0
    ok = subset_ok and strict_ok and nonempty_ok and elapsed < 600
    _line(
        7,
        ok,
        f"mask sizes per level {dict(zip(fld.levels, counts))}: strict subsets "
        f"{subset_ok and strict_ok}; 1e-15 mask nonempty: {nonempty_ok} "
        f"({counts[-1]} grid points); runtime {elapsed:.1f}s < 600s at "
        f"{fld.digits} digits",
    )
    assert subset_ok
    assert strict_ok
    assert nonempty_ok
    assert elapsed < 600


def test_criterion_8_sharpness_and_first_order_shift():
    """Exhaustive sign-pattern sharpness and the first-order root-shift
    bound checked by brute-force bisection."""
    t0 = time.time()
    eps = Fraction(1, 10**8)

    cases = []
    w10 = wilkinson(10)
    cases.append((w10, Fraction(1, 3)))
    cases.append((from_roots_monomial([1, -2, 3, Fraction(1, 2)]), Fraction(7, 5)))
    runge5 = runge_interpolant(equispaced_nodes(5, -1, 1))
    cases.append((runge5, Fraction(7, 16)))
    sharp_ok = True
    for p, x in cases:
        B = condition_number(p, x).value
        n1 = len(p.coeffs)
        best = Fraction(0)
        for mask in range(2**n1):
            deltas = [eps if mask >> k & 1 else -eps for k in range(n1)]
            v = abs(eval_perturbation(p, x, PerturbationModel(eps, deltas)).value)
            if v > best:
                best = v
        sharp_ok = sharp_ok and best == B * eps

    rng = random.Random(11)
    shift_ok = True
    for roots in ([1, 2, 3, 4], [-1, 2, 5]):
        p = from_roots_monomial(roots)
        n1 = len(p.coeffs)
        for _ in range(10):
            deltas = [
                eps * Fraction(rng.randrange(-10**6, 10**6 + 1), 10**6)
                for _ in range(n1)
            ]
            q = Polynomial(
                MonomialBasis(n1 - 1),
                [c.value * (1 + dk) for c, dk in zip(p.coeffs, deltas)],
            )
            for r in roots:
                bound = root_condition_absolute(p, r).value * eps
                with working(60):
                    bnd = to_mpf(bound, 60)
                    lo, hi = mp.mpf(r) - 2 * bnd, mp.mpf(r) + 2 * bnd
                    flo = q.eval(lo, digits=60).value
                    assert flo * q.eval(hi, digits=60).value < 0
                    for _ in range(90):
                        mid = (lo + hi) / 2
                        fm = q.eval(mid, digits=60).value
                        if fm == 0:
                            lo = hi = mid
                            break
                        if flo * fm < 0:
                            hi = mid
                        else:
                            lo, flo = mid, fm
                    shift = abs((lo + hi) / 2 - mp.mpf(r))
                    if shift > to_mpf(Fraction(11, 10) * bound, 60):
                        shift_ok = False
    elapsed = time.time() - t0
    _line(
        8,
        sharp_ok and shift_ok,
        f"exhaustive sign-pattern maximum equals B(x)*eps exactly for "
        f"{len(cases)} polynomials (monomial and Lagrange bases): {sharp_ok}; "
        f"bisection-located root shifts within 1.1x the first-order bound "
        f"for degree <= 4: {shift_ok}; runtime {elapsed:.1f}s",
    )
    assert sharp_ok
    assert shift_ok
