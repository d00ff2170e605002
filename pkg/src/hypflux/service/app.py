"""FastAPI application exposing the hyperbolicity toolkit.

All computation lives in the core modules; the handlers only translate
between wire schemas and core types.  Domain failures surface as 422
responses carrying the exception class name in "code"; configuration
failures (bad model names, malformed sweep configs) surface as 400.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..assembly import Direction, State
from ..charpoly import (
    DepressedQuartic,
    ccj_speeds,
    discriminant,
    quartic_from_state_1d,
    quartic_from_state_3d,
    quartic_roots,
    witness_q,
)
from ..constitutive import (
    LAMBDA_NU_PRESETS,
    ThermoPoint,
    builtin_models,
    make_model,
)
from ..errors import ConfigError, HypfluxError, UnknownModel
from ..modal import mode_growth
from ..reproduce import run_reproduction
from ..spectral import ToleranceProfile, classify_state
from ..sweep import SweepConfig, csv_text, jsonl_text, run_sweep, verdict_map_text
from . import schemas

_CONFIG_FAULTS = (ConfigError, UnknownModel)
_TOL_KEYS = {"real_tol", "cluster_gap", "rank_rtol"}


def _tolerance_profile(tolerances: dict) -> ToleranceProfile | None:
    if not tolerances:
        return None
    extra = set(tolerances) - _TOL_KEYS
    if extra:
        raise ConfigError(f"unknown tolerances keys: {', '.join(sorted(extra))}")
    return ToleranceProfile(**{k: float(v) for k, v in tolerances.items()})


def _state(spec: schemas.StateIn) -> State:
    return State(
        rho=spec.rho,
        v=np.asarray(spec.v, dtype=float),
        theta=spec.theta,
        q=np.asarray(spec.q, dtype=float),
    )


def _sanitize(obj):
    """Replace non-finite floats by None so responses stay strict JSON."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _delta_for(model, state: State, direction: Direction, lambda_nu, ccj: bool):
    if state.dim == 1:
        pair = (0.0, 0.0) if ccj else lambda_nu
        quartic = quartic_from_state_1d(model, state, pair)
    else:
        quartic = quartic_from_state_3d(model, state, direction, lambda_nu, ccj=ccj)
    return discriminant(quartic.a0, quartic.a1, quartic.a2).delta


def create_app() -> FastAPI:
    app = FastAPI(
        title="hypflux",
        version=__version__,
        description=(
            "Hyperbolicity analysis for compressible flow with an "
            "objective Cattaneo heat-flux law"
        ),
    )

    @app.exception_handler(HypfluxError)
    async def _domain_error(request: Request, exc: HypfluxError):
        status = 400 if isinstance(exc, _CONFIG_FAULTS) else 422
        return JSONResponse(
            status_code=status,
            content={"detail": str(exc), "code": type(exc).__name__},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.get("/models", response_model=schemas.ModelsResponse)
    def models():
        return schemas.ModelsResponse(
            models=sorted(builtin_models()),
            lambda_nu_presets=dict(LAMBDA_NU_PRESETS),
        )

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        model = make_model(req.model, req.model_params)
        state = _state(req.state)
        direction = Direction.from_vector(req.xi)
        tol = _tolerance_profile(req.tolerances)
        report = classify_state(
            model, state, direction, req.lambda_nu, tol=tol, ccj=req.ccj
        )
        delta = _delta_for(model, state, direction, req.lambda_nu, req.ccj)
        return schemas.ClassifyResponse(
            verdict=report.verdict.value,
            eigenvalues=[schemas.ComplexValue.of(z) for z in report.eigenvalues],
            clusters=[
                schemas.ClusterOut(
                    representative=schemas.ComplexValue.of(c.representative),
                    algebraic=c.algebraic,
                    geometric=c.geometric,
                )
                for c in report.clusters
            ],
            spectral_radius=report.spectral_radius,
            delta=delta,
            witnesses=_sanitize(report.witnesses),
            provenance=_sanitize(report.provenance),
        )

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest):
        config = SweepConfig.from_dict(req.config)
        result = run_sweep(config)
        return schemas.SweepResponse(
            summary=_sanitize(result.summary),
            dimension=result.dimension,
            csv=csv_text(result.records, result.dimension),
            jsonl=jsonl_text(result.records),
            verdict_map=verdict_map_text(result.records),
        )

    @app.post("/reproduce", response_model=schemas.ReproduceResponse)
    def reproduce(req: schemas.ReproduceRequest):
        report = run_reproduction(req.theorem_id, seed=req.seed)
        return schemas.ReproduceResponse(
            theorem_id=report.theorem_id,
            passed=report.passed,
            lines=list(report.lines),
            data=_sanitize(report.data),
        )

    @app.post("/modal", response_model=schemas.ModalResponse)
    def modal(req: schemas.ModalRequest):
        model = make_model(req.model, req.model_params)
        state = _state(req.state)
        direction = Direction.from_vector(req.xi)
        growth = mode_growth(
            model,
            state,
            direction,
            req.k_values,
            lambda_nu=req.lambda_nu,
            with_source=req.with_source,
            ccj=req.ccj,
        )
        ratios = [
            None if not math.isfinite(r) else float(r) for r in growth.ratios
        ]
        return schemas.ModalResponse(
            wavenumbers=list(growth.wavenumbers),
            growth_rates=list(growth.growth_rates),
            ratios=ratios,
            omegas=[
                [schemas.ComplexValue.of(z) for z in omega]
                for omega in growth.omegas
            ],
        )

    @app.post("/ccj-speeds", response_model=schemas.CcjSpeedsResponse)
    def speeds(req: schemas.CcjSpeedsRequest):
        model = make_model(req.model, req.model_params)
        s = ccj_speeds(model, ThermoPoint(req.rho, req.theta), req.v_dot_xi)
        return schemas.CcjSpeedsResponse(
            eta0=s.eta0,
            eta1=s.eta1,
            eta2=s.eta2,
            eta3=s.eta3,
            eta4=s.eta4,
            r=s.r,
            m=s.m,
            pencil_multiset=[float(x.real) for x in s.pencil_multiset()],
        )

    @app.post("/witness", response_model=schemas.WitnessResponse)
    def witness(req: schemas.WitnessRequest):
        model = make_model(req.model, req.model_params)
        point = ThermoPoint(req.rho, req.theta)
        w = witness_q(model, point, req.lambda_nu)
        quartic = DepressedQuartic(a0=w.a0, a1=w.g * w.witness_q_value, a2=w.a2)
        roots = quartic_roots(quartic)
        state = State(
            rho=req.rho, v=[0.0], theta=req.theta, q=[w.witness_q_value]
        )
        verdict = classify_state(
            model, state, Direction([1.0]), (w.lam, w.nu)
        ).verdict
        return schemas.WitnessResponse(
            lam=w.lam,
            nu=w.nu,
            gamma=w.gamma,
            g=w.g,
            a0=w.a0,
            a2=w.a2,
            poly_b=w.poly_b,
            poly_c=w.poly_c,
            q_threshold_sq=w.q_threshold_sq,
            witness_q=w.witness_q_value,
            delta_at_witness=w.delta_at_witness,
            roots=[schemas.ComplexValue.of(z) for z in roots.roots],
            classification=roots.classification,
            verdict_1d=verdict.value,
        )

    return app
