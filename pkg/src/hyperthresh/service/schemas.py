"""Request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class QuadRequest(BaseModel):
    points: int = Field(ge=1)
    verify_degree: Optional[int] = Field(default=None, ge=0)
    matrix_degree: Optional[int] = Field(default=None, ge=0)


class QuadResponse(BaseModel):
    points: int
    exactness: int
    nodes: list[float]
    weights: list[float]
    defect: Optional[float] = None
    matrix_csv: Optional[str] = None


class ProxRequest(BaseModel):
    op: Literal["hard", "soft", "springback", "lq"]
    y: float
    lam: float = Field(gt=0)
    q: Optional[float] = None
    alpha: Optional[float] = None
    verify: bool = False


class ProxResponse(BaseModel):
    value: float
    threshold: Optional[float] = None
    iterations: Optional[int] = None
    oracle_value: Optional[float] = None
    oracle_gap: Optional[float] = None


class SparsityRequest(BaseModel):
    coefficients: list[float]
    q: float = Field(gt=0, lt=1)
    k: int = Field(ge=2)


class SparsityResponse(BaseModel):
    u_k: float
    lam: float
    support_size: int
    guaranteed_bound: int


class FlipBoundsRequest(BaseModel):
    sigma: float = Field(default=0.2, gt=0)
    lam: float = Field(default=1.0, gt=0)
    gaps: list[float] = Field(default_factory=lambda: [0.1 * i for i in range(1, 11)])
    trials: int = Field(default=100_000, ge=100)
    seed: int = 0


class BernsteinBoundsRequest(BaseModel):
    k: int = Field(default=22, ge=0)
    dim: int = Field(default=250, ge=1)
    t_values: list[float] = Field(default_factory=lambda: [5.0, 10.0, 15.0, 20.0])
    trials: int = Field(default=100_000, ge=100)
    seed: int = 0


class BoundPoint(BaseModel):
    parameter: float
    analytic_bound: float
    empirical_rate: float
    within_slack: bool


class BoundsResponse(BaseModel):
    check: str
    trials: int
    seed: int
    points: list[BoundPoint]
    csv: str


class MethodModel(BaseModel):
    kind: Literal["hard", "soft", "springback", "newton"]
    q: Optional[float] = None
    alpha: Optional[float] = None
    fixed_lam: Optional[float] = None
    label: Optional[str] = None


class RecoverRequest(BaseModel):
    points: int = 301
    dim: int = 250
    sparsity: int = 22
    sigma: float = 0.15
    trials: int = 200
    seed: int = 42
    top_k_retention: Optional[int] = None
    fresh_signal_per_trial: bool = False
    methods: Optional[list[MethodModel]] = None
    workers: int = Field(default=1, ge=1)


class MetricsRowModel(BaseModel):
    method: str
    l2_error: float
    max_error: float
    aisnr_db: float
    trials: int


class RecoverResponse(BaseModel):
    rows: list[MetricsRowModel]
    mean_input_snr_db: Optional[float]
    failures: dict[str, int]
    runtime_seconds: float
    csv: str


class DenoiseRequest(BaseModel):
    points: int = 400
    dim: int = 251
    sigma: float = 0.15
    impulse: float = 0.5
    retain_k: Optional[int] = 2
    seed: int = 42
    grid_points: int = 1000
    methods: Optional[list[MethodModel]] = None
    include_curves: bool = True
    include_svg: bool = True


class DenoiseResponse(BaseModel):
    rows: list[MetricsRowModel]
    mean_input_snr_db: Optional[float]
    failures: dict[str, int]
    runtime_seconds: float
    metrics_csv: str
    curves_csv: Optional[str] = None
    svg: Optional[str] = None
