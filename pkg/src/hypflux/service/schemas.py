"""Request/response models for the HTTP service.

Complex numbers cross the wire as {"re": ..., "im": ...} objects; the
coupling pair is accepted either as an explicit [lambda, nu] list or as
a named preset string.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

LambdaNu = str | tuple[float, float] | None


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        return cls(re=float(z.real), im=float(z.imag))


class StateIn(BaseModel):
    """One admissible state; v and q fix the spatial dimension."""

    rho: float
    v: list[float] = Field(min_length=1, max_length=3)
    theta: float
    q: list[float] = Field(min_length=1, max_length=3)


class ModelIn(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str = "ideal-gas"
    model_params: dict[str, float] = Field(default_factory=dict)


class ClassifyRequest(ModelIn):
    state: StateIn
    xi: list[float] = Field(min_length=1, max_length=3)
    lambda_nu: LambdaNu = None
    ccj: bool = False
    tolerances: dict[str, float] = Field(default_factory=dict)


class ClusterOut(BaseModel):
    representative: ComplexValue
    algebraic: int
    geometric: int


class ClassifyResponse(BaseModel):
    verdict: str
    eigenvalues: list[ComplexValue]
    clusters: list[ClusterOut]
    spectral_radius: float
    delta: float | None = None
    witnesses: dict | None = None
    provenance: dict | None = None


class SweepRequest(BaseModel):
    """Raw sweep configuration document, validated server side."""

    config: dict = Field(default_factory=dict)


class SweepResponse(BaseModel):
    summary: dict
    dimension: int
    csv: str
    jsonl: str
    verdict_map: str


class ReproduceRequest(BaseModel):
    theorem_id: str
    seed: int = 0


class ReproduceResponse(BaseModel):
    theorem_id: str
    passed: bool
    lines: list[str]
    data: dict


class ModalRequest(ModelIn):
    state: StateIn
    xi: list[float] = Field(min_length=1, max_length=3)
    k_values: list[float] = Field(min_length=1)
    lambda_nu: LambdaNu = None
    with_source: bool = True
    ccj: bool = False


class ModalResponse(BaseModel):
    wavenumbers: list[float]
    growth_rates: list[float]
    #: max Im(omega) / k per wavenumber; null where k = 0.
    ratios: list[float | None]
    omegas: list[list[ComplexValue]]


class CcjSpeedsRequest(ModelIn):
    rho: float = 1.0
    theta: float = 1.0
    v_dot_xi: float = 0.0


class CcjSpeedsResponse(BaseModel):
    eta0: float
    eta1: float
    eta2: float
    eta3: float
    eta4: float
    r: float
    m: float
    pencil_multiset: list[float]


class WitnessRequest(ModelIn):
    rho: float = 1.0
    theta: float = 1.0
    lambda_nu: str | tuple[float, float]


class WitnessResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(serialization_alias="lambda", validation_alias="lambda")
    nu: float
    gamma: float
    g: float
    a0: float
    a2: float
    poly_b: float
    poly_c: float
    q_threshold_sq: float
    witness_q: float
    delta_at_witness: float
    roots: list[ComplexValue]
    classification: str
    verdict_1d: str


class HealthResponse(BaseModel):
    status: str
    version: str


class ModelsResponse(BaseModel):
    models: list[str]
    lambda_nu_presets: dict[str, tuple[float, float]]
