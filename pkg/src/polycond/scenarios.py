"""Runnable experiment scenarios, one per classic conditioning story.

Each scenario returns a ScenarioReport: labeled condition curves and/or
pseudozero fields plus a summary of named statistics. Every numeric summary
statistic is recomputable from the report's own datasets, and scenario
output is fully deterministic (exact arithmetic end to end for the rational
cases; the root-condition summaries in particular are computed exactly and
only converted to log10 at the very end).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bases import LagrangeBasis, chebyshev_nodes, equispaced_nodes
from .conditioning import (
    ConditionCurve,
    condition_curve,
    root_condition_curve,
)
from .errors import ArgumentError
from .poly import (
    Polynomial,
    clustered_at_one,
    clustered_at_zero,
    runge_interpolant,
    scaled_wilkinson,
    wilkinson,
)
from .pseudozeros import PseudozeroField, pseudozero_field

RUNGE_DEGREES = (5, 8, 13, 21, 34, 55, 89)

C20_FIELD_REGION = (-1.0, 1.5, -1.2, 1.2)
C20_FIELD_LEVELS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8)
S20_FIELD_REGION = (-3.0, 5.0, -3.5, 3.5)
S20_FIELD_LEVELS = (1e-4, 1e-6, 1e-8, 1e-10, 1e-15)
WILKINSON_FIELD_REGION = (-1.0, 25.0, -8.0, 8.0)
WILKINSON_FIELD_LEVELS = (1e-14, 1e-18)


@dataclass
class ScenarioReport:
    """Labeled datasets plus assertable summary statistics."""

    name: str
    curves: list = field(default_factory=list)
    fields: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def curve(self, label: str) -> ConditionCurve:
        for c in self.curves:
            if c.label == label:
                return c
        raise ArgumentError(f"report {self.name!r} has no curve {label!r}")

    def field_named(self, label: str) -> PseudozeroField:
        for f in self.fields:
            if f.label == label:
                return f
        raise ArgumentError(f"report {self.name!r} has no field {label!r}")


def _curve_stats(curve: ConditionCurve):
    mx, mi = curve.finite_max()
    return mx, float(curve.abscissae[mi].value)


def _below_threshold_halfwidth(curve: ConditionCurve, threshold_log10: float) -> float:
    """Largest radius r such that every sample with |x| <= r stays below the
    threshold; 0.0 if even the innermost sample is above it."""
    pairs = sorted(
        (abs(float(a.value)), v) for a, v in zip(curve.abscissae, curve.values_log10)
    )
    r = 0.0
    for ax, v in pairs:
        if v >= threshold_log10:
            break
        r = ax
    return r


def runge_equispaced(degrees=RUNGE_DEGREES, samples: int = 2001) -> ScenarioReport:
    """Condition of the Runge interpolant on equispaced nodes over [-1, 1].

    Exact rational arithmetic throughout. The summary records, per degree,
    the sampled maximum of log10 B and the radius of the central interval
    on which B stays below 2.
    """
    report = ScenarioReport(name="runge-equispaced")
    log2 = math.log10(2.0)
    overall = None
    for n in degrees:
        if n < 1:
            raise ArgumentError(f"degree must be >= 1, got {n}")
        p = runge_interpolant(equispaced_nodes(n, -1, 1))
        curve = condition_curve(p, (-1, 1), samples=samples, label=f"equi-n{n}")
        report.curves.append(curve)
        mx, ax = _curve_stats(curve)
        report.summary[f"max_log10_B_n{n}"] = mx
        report.summary[f"argmax_x_n{n}"] = ax
        report.summary[f"b_below_2_halfwidth_n{n}"] = _below_threshold_halfwidth(
            curve, log2
        )
        central = [
            v
            for a, v in zip(curve.abscissae, curve.values_log10)
            if abs(float(a.value)) <= 0.5
        ]
        report.summary[f"b_below_2_central_fraction_n{n}"] = sum(
            1 for v in central if v < log2
        ) / len(central)
        overall = mx if overall is None else max(overall, mx)
    report.summary["max_log10_B"] = overall
    report.summary["samples"] = samples
    return report


def runge_chebyshev(degrees=RUNGE_DEGREES, samples: int = 2001, digits=None) -> ScenarioReport:
    """Same experiment on extreme Chebyshev nodes (big-floats at twice the
    working precision); B stays O(1) for every degree."""
    report = ScenarioReport(name="runge-chebyshev")
    overall = None
    for n in degrees:
        if n < 1:
            raise ArgumentError(f"degree must be >= 1, got {n}")
        p = runge_interpolant(chebyshev_nodes(n, digits))
        curve = condition_curve(p, (-1, 1), samples=samples, label=f"cheb-n{n}")
        report.curves.append(curve)
        mx, ax = _curve_stats(curve)
        report.summary[f"max_log10_B_n{n}"] = mx
        report.summary[f"argmax_x_n{n}"] = ax
        overall = mx if overall is None else max(overall, mx)
    report.summary["max_log10_B"] = overall
    report.summary["max_B"] = 10.0**overall
    report.summary["samples"] = samples
    return report


def _root_condition_block(
    report: ScenarioReport, p: Polynomial, prefix: str = "", label_prefix: str = ""
):
    mixed = root_condition_curve(p, "mixed", label=f"{label_prefix}root-A-mixed")
    absolute = root_condition_curve(
        p, "absolute", label=f"{label_prefix}root-shift-absolute"
    )
    relative = root_condition_curve(
        p, "relative", label=f"{label_prefix}root-shift-relative"
    )
    report.curves += [mixed, absolute, relative]
    mxa, arg = _curve_stats(mixed)
    report.summary[f"{prefix}max_log10_A"] = mxa
    report.summary[f"{prefix}argmax_root"] = int(arg) if arg.is_integer() else arg
    report.summary[f"{prefix}max_log10_abs_shift"] = absolute.finite_max()[0]
    report.summary[f"{prefix}max_log10_rel_shift"] = relative.finite_max()[0]
    return mixed


def wilkinson_first(n: int = 20, samples: int = 2001) -> ScenarioReport:
    """prod (x - k) expanded in the monomial basis: B over [0, n] and the
    three root-condition factors at every root, all exact."""
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    p = wilkinson(n)
    report = ScenarioReport(name="wilkinson")
    curve = condition_curve(p, (0, n), samples=samples, label="B-monomial")
    report.curves.append(curve)
    mx, ax = _curve_stats(curve)
    report.summary["max_log10_B"] = mx
    report.summary["argmax_x_B"] = ax
    _root_condition_block(report, p)
    report.summary["n"] = n
    report.summary["samples"] = samples
    return report


_SCALED_INTERVALS = {
    "symmetric": (-1, 1),
    "zero-two": (0, 2),
    "zero-one": (0, 1),
}


def wilkinson_scaled(
    n: int = 20, target: str = "symmetric", samples: int = 2001
) -> ScenarioReport:
    """Integer roots mapped onto a unit-scale interval. Symmetric placement
    zeroes half the coefficients (for even n) and collapses the root
    conditioning; pure rescaling onto [0,2] or [0,1] does not."""
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    p = scaled_wilkinson(n, target)
    report = ScenarioReport(name=f"wilkinson-scaled-{target}")
    curve = condition_curve(p, _SCALED_INTERVALS[target], samples=samples, label="B-monomial")
    report.curves.append(curve)
    mx, ax = _curve_stats(curve)
    report.summary["max_log10_B"] = mx
    report.summary["argmax_x_B"] = ax
    _root_condition_block(report, p)
    report.summary["zero_coeffs"] = sum(1 for c in p.coeffs if c.value == 0)
    report.summary["n"] = n
    report.summary["target"] = target
    report.summary["samples"] = samples
    return report


def wilkinson_second(
    samples: int = 2001,
    n: int = 20,
    include_fields: bool = True,
    field_resolution=(128, 128),
    c_region=C20_FIELD_REGION,
    c_levels=C20_FIELD_LEVELS,
    s_region=S20_FIELD_REGION,
    s_levels=S20_FIELD_LEVELS,
    digits=None,
) -> ScenarioReport:
    """The two clustered-root examples: roots 2^-k (cluster at 0) and
    1 - 2^-k (cluster at 1).

    For each polynomial the report carries B over [0,1] in the monomial
    basis and in the Lagrange basis on the nodes k/n, the relative curve
    B/|p| for the Lagrange basis, the root-condition factors in both bases,
    and (optionally) a pseudozero field. The monomial basis is benign for
    the cluster at 0 and terrible for the cluster at 1; the Lagrange basis
    on equispaced nodes is terrible for both.
    """
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    report = ScenarioReport(name="wilkinson-second")
    nodes = equispaced_nodes(n, 0, 1)
    for tag, p in (("c", clustered_at_zero(n)), ("s", clustered_at_one(n))):
        name = f"{tag}{n}"
        mono = condition_curve(p, (0, 1), samples=samples, label=f"{name}-monomial-B")
        report.curves.append(mono)
        mx, ax = _curve_stats(mono)
        report.summary[f"{name}_monomial_max_log10_B"] = mx
        report.summary[f"{name}_monomial_max_B"] = 10.0**mx
        report.summary[f"{name}_monomial_argmax_x"] = ax

        values = [p.eval_from_roots(t) for t in nodes.values]
        plag = Polynomial(LagrangeBasis(nodes), values, roots=p.root_values())
        lag = condition_curve(plag, (0, 1), samples=samples, label=f"{name}-lagrange-B")
        report.curves.append(lag)
        report.summary[f"{name}_lagrange_max_log10_B"] = lag.finite_max()[0]
        rel = condition_curve(
            plag, (0, 1), samples=samples, label=f"{name}-lagrange-B-rel", relative=True
        )
        report.curves.append(rel)
        report.summary[f"{name}_lagrange_max_log10_B_rel"] = rel.finite_max()[0]

        _root_condition_block(
            report, plag, prefix=f"{name}_lagrange_", label_prefix=f"{name}-lagrange-"
        )
        _root_condition_block(
            report, p, prefix=f"{name}_monomial_", label_prefix=f"{name}-monomial-"
        )

        if include_fields:
            region, levels = (c_region, c_levels) if tag == "c" else (s_region, s_levels)
            fld = pseudozero_field(
                p,
                region=region,
                resolution=field_resolution,
                levels=levels,
                digits=digits,
                label=f"{name}-pseudozeros",
            )
            report.fields.append(fld)
            report.summary[f"{name}_field_mask_count"] = fld.mask_count()
    report.summary["n"] = n
    report.summary["samples"] = samples
    return report
