"""FastAPI service exposing the conditioning laboratory.

Every computation endpoint accepts a JSON request model and returns either
the versioned JSON report (default) or, via ``?format=csv|svg``, the
corresponding rendered document. Endpoints are async-def without awaits on
purpose: they run sequentially on the event loop, which keeps mpmath's
global precision context single-threaded.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Query
from fastapi.responses import JSONResponse, PlainTextResponse, Response

import mpmath
from mpmath import mp

from . import scenarios
from .conditioning import condition_curve
from .bases import LagrangeBasis, equispaced_nodes
from .emitters import RenderSpec, emit_csv, emit_svg, report_to_dict
from .errors import PolycondError, PrecisionError
from fractions import Fraction

from .poly import Polynomial, named_polynomial
from .pseudozeros import (
    WeightVector,
    _phi_row,
    indicator,
    pseudozero_field,
    witness_perturbation,
)
from .scalars import as_fraction, resolve_digits, to_mpf, working
from .scenarios import ScenarioReport
from .schemas import (
    ConditionRequest,
    PseudozeroRequest,
    ReportResponse,
    RungeChebRequest,
    RungeEquiRequest,
    SecondRequest,
    WilkinsonRequest,
    WilkinsonScaledRequest,
    WitnessRequest,
    WitnessResponse,
)

FORMATS = ("json", "csv", "svg")


def _respond(report: ScenarioReport, format: str):
    if format == "csv":
        return PlainTextResponse(emit_csv(report), media_type="text/csv")
    if format == "svg":
        return Response(
            emit_svg(report, RenderSpec(format="svg")), media_type="image/svg+xml"
        )
    return report_to_dict(report)


def _exact(x) -> Fraction:
    """JSON-facing exact coercion: floats convert to their exact dyadic."""
    return Fraction(x) if isinstance(x, float) else as_fraction(x)


def _parse_weights(p: Polynomial, weights):
    if weights is None:
        return None
    return WeightVector([_exact(w) for w in weights])


def create_app() -> FastAPI:
    app = FastAPI(
        title="polycond",
        description=(
            "Condition numbers for polynomial evaluation and rootfinding, "
            "and weighted pseudozero sets, at arbitrary precision."
        ),
        version="0.1.0",
    )

    @app.exception_handler(PolycondError)
    async def _polycond_error(request, exc: PolycondError):
        status = 409 if isinstance(exc, PrecisionError) else 400
        return JSONResponse(
            status_code=status,
            content={"detail": {"kind": exc.kind, "message": str(exc)}},
        )

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": app.version}

    @app.get("/v1/polys")
    async def polys():
        return {
            "named": [
                "wilkinson<N>  (roots 1..N)",
                "c<N>  (roots 2^-k, cluster at 0)",
                "s<N>  (roots 1-2^-k, cluster at 1)",
                "roots:<comma list of exact rationals>",
                "coeffs:<comma list, ascending monomial>",
            ]
        }

    FormatQ = Query(default="json", pattern="^(json|csv|svg)$")

    @app.post("/v1/scenarios/runge-equi", response_model=ReportResponse)
    async def runge_equi(req: RungeEquiRequest, format: str = FormatQ):
        return _respond(scenarios.runge_equispaced(req.degrees, req.samples), format)

    @app.post("/v1/scenarios/runge-cheb", response_model=ReportResponse)
    async def runge_cheb(req: RungeChebRequest, format: str = FormatQ):
        return _respond(
            scenarios.runge_chebyshev(req.degrees, req.samples, req.precision), format
        )

    @app.post("/v1/scenarios/wilkinson", response_model=ReportResponse)
    async def wilkinson(req: WilkinsonRequest, format: str = FormatQ):
        return _respond(scenarios.wilkinson_first(req.n, req.samples), format)

    @app.post("/v1/scenarios/wilkinson-scaled", response_model=ReportResponse)
    async def wilkinson_scaled(req: WilkinsonScaledRequest, format: str = FormatQ):
        return _respond(
            scenarios.wilkinson_scaled(req.n, req.target, req.samples), format
        )

    @app.post("/v1/scenarios/second", response_model=ReportResponse)
    async def second(req: SecondRequest, format: str = FormatQ):
        return _respond(
            scenarios.wilkinson_second(
                samples=req.samples,
                n=req.n,
                include_fields=req.include_fields,
                field_resolution=tuple(req.grid),
                c_region=tuple(req.c_region),
                c_levels=tuple(req.c_levels),
                s_region=tuple(req.s_region),
                s_levels=tuple(req.s_levels),
                digits=req.precision,
            ),
            format,
        )

    @app.post("/v1/pseudozeros", response_model=ReportResponse)
    async def pseudozeros(req: PseudozeroRequest, format: str = FormatQ):
        p = named_polynomial(req.poly)
        fld = pseudozero_field(
            p,
            region=tuple(req.region),
            resolution=tuple(req.grid),
            levels=tuple(req.levels),
            w=_parse_weights(p, req.weights),
            digits=req.precision,
            label=f"{req.poly}-pseudozeros",
        )
        report = ScenarioReport(name="pseudozeros", fields=[fld])
        report.summary["poly"] = req.poly
        report.summary["digits"] = fld.digits
        for level in fld.levels:
            report.summary[f"mask_count_{level:g}"] = fld.mask_count(level)
        return _respond(report, format)

    @app.post("/v1/condition", response_model=ReportResponse)
    async def condition(req: ConditionRequest, format: str = FormatQ):
        p = named_polynomial(req.poly)
        a, b = _exact(req.interval[0]), _exact(req.interval[1])
        label = f"{req.poly}-B"
        if req.basis == "lagrange":
            nodes = equispaced_nodes(p.degree, a, b)
            values = [
                (p.eval_from_roots(t) if p.roots is not None else p.eval(t))
                for t in nodes.values
            ]
            p = Polynomial(LagrangeBasis(nodes), values, roots=p.root_values() if p.roots else None)
            label = f"{req.poly}-B-lagrange"
        curve = condition_curve(
            p,
            (a, b),
            samples=req.samples,
            label=label + ("-rel" if req.relative else ""),
            digits=req.precision,
            relative=req.relative,
        )
        report = ScenarioReport(name="condition", curves=[curve])
        mx, mi = curve.finite_max()
        report.summary["max_log10"] = mx
        report.summary["argmax_x"] = float(curve.abscissae[mi].value)
        report.summary["poly"] = req.poly
        return _respond(report, format)

    @app.post("/v1/witness", response_model=WitnessResponse)
    async def witness(req: WitnessRequest):
        p = named_polynomial(req.poly)
        d = resolve_digits(req.precision)
        w = _parse_weights(p, req.weights)
        z_re, z_im = _exact(req.z_re), _exact(req.z_im)
        deltas = witness_perturbation(p, (z_re, z_im), w=w, digits=d)
        ind = indicator(p, (z_re, z_im), w=w, digits=d)
        ind_f = float(ind.value)
        with working(d):
            zc = mp.mpc(to_mpf(z_re, d), to_mpf(z_im, d))
            row = _phi_row(p, zc, d)
            total = mp.mpc(0)
            for c, dc, fk in zip(p.coeff_values(), deltas, row):
                total += (to_mpf(c, d) + dc.to_mpc(d)) * fk
            residual = float(abs(total))
            wv = w if w is not None else WeightVector.from_coefficients(p)
            rels = [
                float(abs(dc.to_mpc(d)) / to_mpf(wk, d))
                for dc, wk in zip(deltas, wv.values())
                if wk != 0
            ]
        return {
            "polycond_schema": 1,
            "name": "witness",
            "poly": req.poly,
            "z": [float(z_re), float(z_im)],
            "digits": d,
            "indicator": ind_f,
            "indicator_log10": math.log10(ind_f) if ind_f > 0 else None,
            "deltas": [[float(dc.re.value), float(dc.im.value)] for dc in deltas],
            "max_rel_delta": max(rels) if rels else 0.0,
            "residual_abs": residual,
        }

    return app


app = create_app()
