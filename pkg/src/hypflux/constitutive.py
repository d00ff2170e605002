"""Constitutive closures for the compressible heat-conducting fluid.

A model bundles the pressure law p(rho, theta), its partial derivatives,
the caloric derivative e_theta, the conductivity kappa, the relaxation
time tau (a positive constant) and the flux-coupling coefficients
lambda, nu as functions of (rho, theta).  Admissible states require
rho > 0 and theta > 0; well-posedness additionally requires p, p_rho,
p_theta, e_theta and kappa to be positive wherever they are evaluated.
Positivity is checked pointwise at each evaluation, nothing is certified
globally.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping

from .errors import ConstitutiveViolation, DomainError, UnknownModel

Coefficient = Callable[[float, float], float]

#: Named (lambda, nu) pairs.  "christov" is the frame-indifferent convected
#: rate choice, "jordan-compatible" the pair that keeps the full quasilinear
#: system hyperbolic.
LAMBDA_NU_PRESETS: dict[str, tuple[float, float]] = {
    "christov": (-1.0, 1.0),
    "jordan-compatible": (1.0, -1.0),
}


@dataclass(frozen=True)
class ThermoPoint:
    """A point (rho, theta) of the admissible thermodynamic domain."""

    rho: float
    theta: float

    def __post_init__(self):
        if not (self.rho > 0.0):
            raise DomainError(f"rho must be positive, got {self.rho}")
        if not (self.theta > 0.0):
            raise DomainError(f"theta must be positive, got {self.theta}")


@dataclass(frozen=True)
class ConstitutiveEvaluation:
    """All model coefficients evaluated at one thermodynamic point."""

    p: float
    p_rho: float
    p_theta: float
    e_theta: float
    kappa: float
    tau: float
    lam: float
    nu: float

    @property
    def gamma(self) -> float:
        """Coupling sum lambda + nu."""
        return self.lam + self.nu


@dataclass(frozen=True)
class ConstitutiveModel:
    """Closure functions of (rho, theta) plus the constant relaxation time."""

    name: str
    p: Coefficient
    p_rho: Coefficient
    p_theta: Coefficient
    e_theta: Coefficient
    kappa: Coefficient
    tau: float
    lam: Coefficient
    nu: Coefficient

    def __post_init__(self):
        if not (self.tau > 0.0):
            raise ConstitutiveViolation(f"tau must be positive, got {self.tau}")

    def with_lambda_nu(self, pair) -> "ConstitutiveModel":
        """Copy of the model with the coupling pair replaced."""
        lam, nu = resolve_lambda_nu(pair)
        return replace(self, lam=_const(lam), nu=_const(nu))


def _const(value: float) -> Coefficient:
    value = float(value)
    return lambda rho, theta: value


def resolve_lambda_nu(pair) -> tuple[float, float]:
    """Resolve a coupling pair given either as two numbers or a preset name.

    Raises
    ------
    UnknownModel
        If a preset name is not recognized.
    """
    if isinstance(pair, str):
        try:
            return LAMBDA_NU_PRESETS[pair]
        except KeyError:
            known = ", ".join(sorted(LAMBDA_NU_PRESETS))
            raise UnknownModel(
                f"unknown lambda-nu preset {pair!r} (known: {known})"
            ) from None
    lam, nu = pair
    return float(lam), float(nu)


def evaluate(model: ConstitutiveModel, point: ThermoPoint) -> ConstitutiveEvaluation:
    """Evaluate all eight coefficients of `model` at `point`.

    Parameters
    ----------
    model : ConstitutiveModel
    point : ThermoPoint

    Returns
    -------
    ConstitutiveEvaluation

    Raises
    ------
    ConstitutiveViolation
        If any of p, p_rho, p_theta, e_theta, kappa is nonpositive at the
        point.  The message names every offending coefficient.
    """
    rho, theta = point.rho, point.theta
    ev = ConstitutiveEvaluation(
        p=float(model.p(rho, theta)),
        p_rho=float(model.p_rho(rho, theta)),
        p_theta=float(model.p_theta(rho, theta)),
        e_theta=float(model.e_theta(rho, theta)),
        kappa=float(model.kappa(rho, theta)),
        tau=float(model.tau),
        lam=float(model.lam(rho, theta)),
        nu=float(model.nu(rho, theta)),
    )
    bad = [
        name
        for name in ("p", "p_rho", "p_theta", "e_theta", "kappa")
        if not (getattr(ev, name) > 0.0)
    ]
    if bad:
        raise ConstitutiveViolation(
            f"model {model.name!r} violates positivity at "
            f"(rho={rho}, theta={theta}): " + ", ".join(bad)
        )
    return ev


def ideal_gas(R=1.0, c_v=1.0, kappa=1.0, tau=1.0, lambda_nu=(0.0, 0.0)) -> ConstitutiveModel:
    """Ideal gas p = R rho theta with constant specific heat and conductivity.

    All parameters default to one, which is the reference configuration used
    throughout the regression anchors.
    """
    R, c_v, kappa, tau = float(R), float(c_v), float(kappa), float(tau)
    lam, nu = resolve_lambda_nu(lambda_nu)
    return ConstitutiveModel(
        name="ideal-gas",
        p=lambda rho, theta: R * rho * theta,
        p_rho=lambda rho, theta: R * theta,
        p_theta=lambda rho, theta: R * rho,
        e_theta=_const(c_v),
        kappa=_const(kappa),
        tau=tau,
        lam=_const(lam),
        nu=_const(nu),
    )


def stiffened_gas(
    R=1.0, c_v=1.0, kappa=1.0, tau=1.0, p_inf=1.0, lambda_nu=(0.0, 0.0)
) -> ConstitutiveModel:
    """Stiffened gas p = R rho theta + p_inf with p_inf >= 0."""
    R, c_v, kappa, tau, p_inf = map(float, (R, c_v, kappa, tau, p_inf))
    if p_inf < 0.0:
        raise ConstitutiveViolation(f"p_inf must be nonnegative, got {p_inf}")
    lam, nu = resolve_lambda_nu(lambda_nu)
    return ConstitutiveModel(
        name="stiffened-gas",
        p=lambda rho, theta: R * rho * theta + p_inf,
        p_rho=lambda rho, theta: R * theta,
        p_theta=lambda rho, theta: R * rho,
        e_theta=_const(c_v),
        kappa=_const(kappa),
        tau=tau,
        lam=_const(lam),
        nu=_const(nu),
    )


def builtin_models() -> dict[str, Callable[..., ConstitutiveModel]]:
    """Catalog of model factories selectable by name."""
    return {"ideal-gas": ideal_gas, "stiffened-gas": stiffened_gas}


def make_model(
    name: str,
    params: Mapping[str, float] | None = None,
    lambda_nu=None,
) -> ConstitutiveModel:
    """Build a builtin model from its name and a flat parameter map.

    Parameters
    ----------
    name : str
        Key into :func:`builtin_models`.
    params : mapping, optional
        Keyword arguments forwarded to the factory (R, c_v, kappa, tau, ...).
    lambda_nu : pair or preset name, optional
        Coupling pair; defaults to the factory default (0, 0).

    Raises
    ------
    UnknownModel
        For an unrecognized model name or an unrecognized factory parameter.
    """
    try:
        factory = builtin_models()[name]
    except KeyError:
        known = ", ".join(sorted(builtin_models()))
        raise UnknownModel(f"unknown model {name!r} (known: {known})") from None
    kwargs = dict(params or {})
    if lambda_nu is not None:
        kwargs["lambda_nu"] = resolve_lambda_nu(lambda_nu)
    try:
        return factory(**kwargs)
    except TypeError as exc:
        raise UnknownModel(f"bad parameters for model {name!r}: {exc}") from None
