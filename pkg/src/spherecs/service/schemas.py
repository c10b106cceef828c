"""Request and response bodies of the HTTP service."""

from typing import Literal, Optional

from pydantic import BaseModel, Field

StateKindName = Literal["sphere-cs", "flat-cs", "pacs", "pscs"]


class StateRequest(BaseModel):
    kind: StateKindName
    cutoff: int = Field(ge=1)
    curvature: float = Field(default=0.0, ge=0.0)
    mu_re: float = 0.0
    mu_im: float = 0.0
    m: int = Field(default=0, ge=0)


class StateResponse(BaseModel):
    amplitudes_re: list[float]
    amplitudes_im: list[float]
    pdf: list[float]
    mean: float
    second_moment: float
    mandel_q: Optional[float]
    csv: str


class GridModel(BaseModel):
    start: float
    stop: float
    points: int = Field(ge=2)
    scale: Literal["linear", "log"] = "linear"


class SweepRequest(BaseModel):
    kind: StateKindName
    cutoff: int = Field(ge=1)
    curvature: float = Field(default=0.0, ge=0.0)
    mu_re: float = 0.0
    mu_im: float = 0.0
    m_values: list[int] = Field(default_factory=list)
    variable: Literal["lambda", "m", "phi"]
    grid: GridModel
    observables: list[Literal["pdf", "mean", "mandel", "squeezing"]]


class SweepResponse(BaseModel):
    columns: list[str]
    rows: list[list[Optional[float]]]
    csv: str


class FigureInfo(BaseModel):
    figure_id: str
    filename: str
    title: str


class FigureResponse(BaseModel):
    figure_id: str
    filename: str
    csv: str
    svg: Optional[str] = None


class PrepareRequest(StateRequest):
    g_tau: float = Field(default=1.0, gt=0.0)
    policy: Literal["max-success", "smallest-magnitude"] = "max-success"


class PlanStepModel(BaseModel):
    index: int
    eps_re: float
    eps_im: float
    g_tau: float
    ground_prob: float


class PrepareResponse(BaseModel):
    steps: list[PlanStepModel]
    fidelity: float
    success_probability: float
    csv: str


class IdentityRequest(BaseModel):
    cutoff: int = Field(ge=1)
    curvature: float = Field(default=0.0, ge=0.0)
    m: int = Field(default=0, ge=0)
    kind: Literal["pacs", "pscs"] = "pacs"
    mode: Literal["flat", "literal"] = "flat"
    beta: float = 2.0
    tolerance: float = Field(default=1e-9, gt=0.0)


class IdentityResponse(BaseModel):
    diag: list[float]
    deviation: list[float]
    support_lo: int
    support_hi: int
    max_offdiag: float
    quadrature_error_estimate: float
