"""FastAPI application wrapping the core package.

Domain errors map to 400 (bad request), numerical failures to 500; the CLI
translates those into its usage/numerical exit codes.
"""

from fastapi import APIRouter, FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__
from ..algebra import ModelParams
from ..figures import FIGURES, run_figure
from ..identity import MeasureKind, MeasureMode, QuadratureError, resolution_matrix
from ..observables import photon_statistics
from ..preparation import (
    NumericalError,
    RootPolicy,
    ScheduleError,
    SimulationError,
    SynthesisError,
    plan_csv,
    simulate_plan,
    synthesize_plan,
)
from ..states import StateKind, StateSpec, build_state
from ..sweeps import SweepGrid, SweepSpec, run_sweep
from ..tables import state_csv
from . import schemas

router = APIRouter()

_NUMERICAL_FAILURES = (
    QuadratureError,
    ScheduleError,
    SynthesisError,
    NumericalError,
    SimulationError,
)


def _state_spec(req: schemas.StateRequest) -> StateSpec:
    params = ModelParams(req.curvature, req.cutoff)
    return StateSpec(StateKind(req.kind), params, complex(req.mu_re, req.mu_im), req.m)


@router.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@router.post("/states/build", response_model=schemas.StateResponse)
def build(req: schemas.StateRequest) -> schemas.StateResponse:
    spec = _state_spec(req)
    state = build_state(spec)
    stats = photon_statistics(state)
    return schemas.StateResponse(
        amplitudes_re=[a.real for a in state.amplitudes],
        amplitudes_im=[a.imag for a in state.amplitudes],
        pdf=[float(p) for p in stats.pdf],
        mean=stats.mean,
        second_moment=stats.second_moment,
        mandel_q=stats.mandel_q,
        csv=state_csv(spec.kind.value, spec.mu, spec.added_or_subtracted, state),
    )


@router.post("/sweeps/run", response_model=schemas.SweepResponse)
def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
    spec = SweepSpec(
        kind=StateKind(req.kind),
        cutoff=req.cutoff,
        mu=complex(req.mu_re, req.mu_im),
        m_values=tuple(req.m_values),
        variable=req.variable,
        grid=SweepGrid(req.grid.start, req.grid.stop, req.grid.points, req.grid.scale),
        observables=tuple(req.observables),
        curvature=req.curvature,
    )
    table = run_sweep(spec)
    rows = [
        [None if v is None else float(v) for v in row] for row in table.rows
    ]
    return schemas.SweepResponse(
        columns=list(table.columns), rows=rows, csv=table.render_csv()
    )


@router.get("/figures", response_model=list[schemas.FigureInfo])
def figures() -> list[schemas.FigureInfo]:
    return [
        schemas.FigureInfo(
            figure_id=p.figure_id, filename=p.filename, title=p.title
        )
        for p in FIGURES.values()
    ]


@router.get("/figures/{figure_id}", response_model=schemas.FigureResponse)
def figure(figure_id: str, include_svg: bool = False) -> schemas.FigureResponse:
    if figure_id not in FIGURES:
        raise HTTPException(status_code=404, detail=f"unknown figure {figure_id!r}")
    result = run_figure(figure_id, include_svg=include_svg)
    return schemas.FigureResponse(
        figure_id=figure_id,
        filename=result.panel.filename,
        csv=result.csv,
        svg=result.svg,
    )


@router.post("/preparations/synthesize", response_model=schemas.PrepareResponse)
def prepare(req: schemas.PrepareRequest) -> schemas.PrepareResponse:
    spec = _state_spec(req)
    target = build_state(spec)
    plan = synthesize_plan(target, req.g_tau, RootPolicy(req.policy))
    sim = simulate_plan(plan)
    return schemas.PrepareResponse(
        steps=[
            schemas.PlanStepModel(
                index=s.index,
                eps_re=s.epsilon.real,
                eps_im=s.epsilon.imag,
                g_tau=s.g_tau,
                ground_prob=s.ground_prob,
            )
            for s in plan.steps
        ],
        fidelity=sim.fidelity,
        success_probability=sim.success_probability,
        csv=plan_csv(spec, plan, sim.fidelity),
    )


@router.post("/identity/check", response_model=schemas.IdentityResponse)
def identity_check(req: schemas.IdentityRequest) -> schemas.IdentityResponse:
    params = ModelParams(req.curvature, req.cutoff)
    mode = MeasureMode(
        MeasureKind.FLAT_EXACT if req.mode == "flat" else MeasureKind.LITERAL,
        req.beta,
    )
    report = resolution_matrix(
        params, req.m, StateKind(req.kind), mode, req.tolerance
    )
    diag = report.matrix.diagonal()
    return schemas.IdentityResponse(
        diag=[float(v) for v in diag],
        deviation=[float(v) for v in report.diag_deviation],
        support_lo=report.support[0],
        support_hi=report.support[1],
        max_offdiag=report.max_offdiag,
        quadrature_error_estimate=report.quadrature_error_estimate,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="spherecs service", version=__version__)
    app.include_router(router)

    def bad_request(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def numerical_failure(request, exc):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    app.add_exception_handler(ValueError, bad_request)
    app.add_exception_handler(KeyError, bad_request)
    for cls in _NUMERICAL_FAILURES:
        app.add_exception_handler(cls, numerical_failure)
    return app


app = create_app()
