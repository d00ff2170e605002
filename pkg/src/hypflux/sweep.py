"""Parameter sweeps over (lambda, nu) grids, states and directions.

A sweep classifies one pencil per (coupling pair, thermodynamic point,
flux magnitude, flux orientation, direction) combination and serializes
the records as CSV and JSON lines.  Row order is the lexicographic order
of the grid indices, rows are evaluated independently (optionally in a
thread pool sized by HYPFLUX_THREADS) and collected by a single writer,
and all numbers are printed with 17 significant digits, so identical
configurations produce byte-identical CSV output.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .assembly import Direction, State
from .charpoly import discriminant, quartic_from_state_1d, quartic_from_state_3d
from .constitutive import ConstitutiveModel, make_model, resolve_lambda_nu
from .errors import ConfigError, HypfluxError
from .sampling import random_thermo, random_unit, sphere_covering
from .spectral import ToleranceProfile, classify_state

#: Environment variable holding the default worker count for row evaluation.
THREADS_ENV = "HYPFLUX_THREADS"

_CONFIG_KEYS = {
    "model",
    "model_params",
    "dimension",
    "lambda_nu",
    "thermo_points",
    "q_magnitudes",
    "q_orientations",
    "directions",
    "velocity",
    "seed",
    "tolerances",
    "output",
}


def fmt(x: float) -> str:
    """17-significant-digit decimal form used in every CSV cell."""
    return format(float(x), ".17g")


def fmt_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 or np.isnan(z.imag) else "-"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


@dataclass(frozen=True)
class ClassificationRecord:
    """One classified (state, direction) pair of a sweep."""

    lam: float
    nu: float
    rho: float
    theta: float
    v: tuple[float, ...]
    q: tuple[float, ...]
    xi: tuple[float, ...]
    verdict: str
    eigenvalues: tuple[complex, ...]
    clusters: tuple[tuple[float, float, int, int], ...]
    delta: float | None
    elapsed_s: float
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "nu": self.nu,
            "rho": self.rho,
            "theta": self.theta,
            "v": list(self.v),
            "q": list(self.q),
            "xi": list(self.xi),
            "verdict": self.verdict,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "clusters": [list(c) for c in self.clusters],
            "delta": self.delta,
            "elapsed_s": self.elapsed_s,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationRecord":
        return cls(
            lam=data["lambda"],
            nu=data["nu"],
            rho=data["rho"],
            theta=data["theta"],
            v=tuple(data["v"]),
            q=tuple(data["q"]),
            xi=tuple(data["xi"]),
            verdict=data["verdict"],
            eigenvalues=tuple(complex(re, im) for re, im in data["eigenvalues"]),
            clusters=tuple(
                (c[0], c[1], int(c[2]), int(c[3])) for c in data["clusters"]
            ),
            delta=data["delta"],
            elapsed_s=data["elapsed_s"],
            error=data["error"],
        )


@dataclass(frozen=True)
class SweepConfig:
    """Fully resolved sweep specification.

    Use from_dict to build one from the JSON configuration document; the
    constructor expects already-resolved grids.
    """

    model: str = "ideal-gas"
    model_params: dict = field(default_factory=dict)
    dimension: int = 3
    lambda_nu: tuple[tuple[float, float], ...] = ((1.0, -1.0),)
    thermo_points: tuple[tuple[float, float], ...] = ((1.0, 1.0),)
    q_magnitudes: tuple[float, ...] = (1.0,)
    q_orientations: tuple[tuple[float, ...], ...] = ()
    directions_mode: tuple = ("canonical",)
    velocity: tuple[float, ...] = ()
    seed: int = 0
    tol: ToleranceProfile = ToleranceProfile()
    csv_path: str | None = None
    jsonl_path: str | None = None
    verdict_map_path: str | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        """Validate and resolve a configuration document.

        Raises ConfigError naming the offending key for empty grids,
        unknown keys and malformed entries.
        """
        if not isinstance(raw, dict):
            raise ConfigError(f"config must be an object, got {type(raw).__name__}")
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

        dimension = raw.get("dimension", 3)
        if dimension not in (1, 3):
            raise ConfigError(f"dimension must be 1 or 3, got {dimension!r}")
        seed = int(raw.get("seed", 0))
        rng = np.random.default_rng(seed)

        lattice = raw.get("lambda_nu", [[1.0, -1.0]])
        lambda_nu = cls._resolve_lambda_nu_grid(lattice)

        thermo = raw.get("thermo_points", [[1.0, 1.0]])
        if isinstance(thermo, dict):
            count = int(thermo.get("sample", 0))
            if count < 1:
                raise ConfigError("thermo_points.sample must be a positive count")
            points = tuple(map(tuple, random_thermo(rng, count)))
        else:
            points = tuple(cls._pair(p, "thermo_points") for p in thermo)
        if not points:
            raise ConfigError("thermo_points is empty")

        mags = tuple(float(m) for m in raw.get("q_magnitudes", [1.0]))
        if not mags:
            raise ConfigError("q_magnitudes is empty")

        orient = raw.get("q_orientations")
        if orient is None:
            default = [1.0] + [0.0] * (dimension - 1)
            orientations = (tuple(default),)
        elif isinstance(orient, dict):
            count = int(orient.get("sample", 0))
            if count < 1:
                raise ConfigError("q_orientations.sample must be a positive count")
            orientations = tuple(
                tuple(random_unit(rng, dimension)) for _ in range(count)
            )
        else:
            orientations = tuple(
                cls._unit(vec, dimension, f"q_orientations[{i}]")
                for i, vec in enumerate(orient)
            )
        if not orientations:
            raise ConfigError("q_orientations is empty")

        directions_mode = cls._resolve_directions(raw.get("directions"), dimension)

        velocity = raw.get("velocity")
        if velocity is None:
            velocity = (0.0,) * dimension
        else:
            velocity = tuple(float(c) for c in velocity)
            if len(velocity) != dimension:
                raise ConfigError(
                    f"velocity has {len(velocity)} components, dimension is {dimension}"
                )

        tol_raw = raw.get("tolerances", {})
        extra = set(tol_raw) - {"real_tol", "cluster_gap", "rank_rtol"}
        if extra:
            raise ConfigError(f"unknown tolerances keys: {', '.join(sorted(extra))}")
        tol = ToleranceProfile(**{k: float(v) for k, v in tol_raw.items()})

        output = raw.get("output", {})
        extra = set(output) - {"csv", "jsonl", "verdict_map"}
        if extra:
            raise ConfigError(f"unknown output keys: {', '.join(sorted(extra))}")

        return cls(
            model=str(raw.get("model", "ideal-gas")),
            model_params=dict(raw.get("model_params", {})),
            dimension=dimension,
            lambda_nu=lambda_nu,
            thermo_points=points,
            q_magnitudes=mags,
            q_orientations=orientations,
            directions_mode=directions_mode,
            velocity=velocity,
            seed=seed,
            tol=tol,
            csv_path=output.get("csv"),
            jsonl_path=output.get("jsonl"),
            verdict_map_path=output.get("verdict_map"),
        )

    @staticmethod
    def _pair(value, key):
        try:
            a, b = value
            return float(a), float(b)
        except (TypeError, ValueError):
            raise ConfigError(f"{key} entries must be numeric pairs, got {value!r}") from None

    @staticmethod
    def _unit(vec, dimension, key):
        try:
            direction = Direction.from_vector(vec)
        except HypfluxError as exc:
            raise ConfigError(f"{key}: {exc}") from None
        if direction.dim != dimension:
            raise ConfigError(
                f"{key} has {direction.dim} components, dimension is {dimension}"
            )
        return tuple(direction.xi)

    @staticmethod
    def _resolve_lambda_nu_grid(spec):
        if isinstance(spec, dict):
            extra = set(spec) - {"lambda", "nu"}
            if extra:
                raise ConfigError(f"unknown lambda_nu keys: {', '.join(sorted(extra))}")
            axes = []
            for key in ("lambda", "nu"):
                axis = spec.get(key)
                if not isinstance(axis, dict):
                    raise ConfigError(f"lambda_nu.{key} must give min, max, count")
                try:
                    lo, hi = float(axis["min"]), float(axis["max"])
                    count = int(axis["count"])
                except (KeyError, TypeError, ValueError):
                    raise ConfigError(f"lambda_nu.{key} must give min, max, count") from None
                if count < 1:
                    raise ConfigError(f"lambda_nu.{key}.count must be positive")
                axes.append(np.linspace(lo, hi, count))
            return tuple((float(a), float(b)) for a in axes[0] for b in axes[1])
        if not spec:
            raise ConfigError("lambda_nu is empty")
        try:
            return tuple(resolve_lambda_nu(entry) for entry in spec)
        except HypfluxError:
            raise
        except (TypeError, ValueError):
            raise ConfigError(f"lambda_nu entries must be pairs or presets: {spec!r}") from None

    @staticmethod
    def _resolve_directions(spec, dimension):
        if spec is None or spec == "canonical":
            return ("canonical",)
        if isinstance(spec, dict):
            count = int(spec.get("sphere", 0))
            if count < 1:
                raise ConfigError("directions.sphere must be a positive count")
            if dimension != 3:
                raise ConfigError("directions.sphere requires dimension 3")
            return ("sphere", count)
        dirs = tuple(
            SweepConfig._unit(vec, dimension, f"directions[{i}]")
            for i, vec in enumerate(spec)
        )
        if not dirs:
            raise ConfigError("directions is empty")
        return ("explicit", dirs)

    def directions_for(self, q) -> tuple[tuple[float, ...], ...]:
        """Direction tuple for one flux vector, per the configured mode."""
        mode = self.directions_mode[0]
        if mode == "canonical":
            return tuple(tuple(row) for row in np.eye(self.dimension))
        if mode == "explicit":
            return self.directions_mode[1]
        return tuple(map(tuple, sphere_covering(self.directions_mode[1], q)))

    def build_model(self) -> ConstitutiveModel:
        return make_model(self.model, self.model_params)


@dataclass(frozen=True)
class SweepResult:
    records: tuple[ClassificationRecord, ...]
    summary: dict
    dimension: int


def iter_jobs(config: SweepConfig):
    """Rows in their deterministic output order."""
    for lam, nu in config.lambda_nu:
        for rho, theta in config.thermo_points:
            for mag in config.q_magnitudes:
                for orientation in config.q_orientations:
                    q = tuple(mag * c for c in orientation)
                    for xi in config.directions_for(q):
                        yield lam, nu, rho, theta, q, xi


def _evaluate_row(model, config, job) -> ClassificationRecord:
    lam, nu, rho, theta, q, xi = job
    start = time.perf_counter()
    try:
        state = State(rho=rho, v=np.array(config.velocity), theta=theta, q=np.array(q))
        report = classify_state(
            model, state, Direction(np.array(xi)), (lam, nu), tol=config.tol
        )
        if config.dimension == 1:
            quartic = quartic_from_state_1d(model, state, (lam, nu))
        else:
            quartic = quartic_from_state_3d(model, state, Direction(np.array(xi)), (lam, nu))
        delta = discriminant(quartic.a0, quartic.a1, quartic.a2).delta
        return ClassificationRecord(
            lam=lam, nu=nu, rho=rho, theta=theta,
            v=tuple(config.velocity), q=q, xi=xi,
            verdict=report.verdict.value,
            eigenvalues=tuple(complex(z) for z in report.eigenvalues),
            clusters=tuple(
                (
                    c.representative.real,
                    c.representative.imag,
                    c.algebraic,
                    c.geometric,
                )
                for c in report.clusters
            ),
            delta=delta,
            elapsed_s=time.perf_counter() - start,
        )
    except HypfluxError as exc:
        return ClassificationRecord(
            lam=lam, nu=nu, rho=rho, theta=theta,
            v=tuple(config.velocity), q=q, xi=xi,
            verdict="",
            eigenvalues=(),
            clusters=(),
            delta=None,
            elapsed_s=time.perf_counter() - start,
            error=str(exc),
        )


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate every row of the sweep and summarize the verdicts.

    Rows are independent; with HYPFLUX_THREADS > 1 they are evaluated in
    a thread pool, and the output order is the deterministic job order
    either way.
    """
    model = config.build_model()
    jobs = list(iter_jobs(config))
    workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda j: _evaluate_row(model, config, j), jobs))
    else:
        records = [_evaluate_row(model, config, j) for j in jobs]

    counts: dict[str, int] = {}
    failed = 0
    for rec in records:
        if rec.error is not None:
            failed += 1
        else:
            counts[rec.verdict] = counts.get(rec.verdict, 0) + 1
    succeeded = len(records) - failed
    summary = {
        "rows": len(records),
        "failed": failed,
        "verdicts": dict(sorted(counts.items())),
        "fraction_hyperbolic": (
            counts.get("HYPERBOLIC", 0) / succeeded if succeeded else float("nan")
        ),
    }
    return SweepResult(
        records=tuple(records), summary=summary, dimension=config.dimension
    )


def csv_header(dimension: int) -> list[str]:
    comp = lambda stem: [f"{stem}{i + 1}" for i in range(dimension)]
    return (
        ["lambda", "nu", "rho", "theta"]
        + comp("v") + comp("q") + comp("xi")
        + ["verdict", "delta", "eigenvalues", "clusters", "error"]
    )


def csv_text(records, dimension: int) -> str:
    """RFC-4180-style CSV for the records; timing is deliberately omitted
    so identical configurations serialize to identical bytes."""
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(csv_header(dimension))
    for rec in records:
        writer.writerow(
            [fmt(rec.lam), fmt(rec.nu), fmt(rec.rho), fmt(rec.theta)]
            + [fmt(c) for c in rec.v]
            + [fmt(c) for c in rec.q]
            + [fmt(c) for c in rec.xi]
            + [
                rec.verdict,
                "" if rec.delta is None else fmt(rec.delta),
                ";".join(fmt_complex(z) for z in rec.eigenvalues),
                ";".join(
                    f"{fmt_complex(complex(re, im))}:{alg}:{geo}"
                    for re, im, alg, geo in rec.clusters
                ),
                rec.error or "",
            ]
        )
    return buf.getvalue()


def jsonl_text(records) -> str:
    """One JSON object per record per line; floats round-trip exactly."""
    return "".join(
        json.dumps(rec.to_dict(), separators=(",", ":")) + "\n" for rec in records
    )


def verdict_map_rows(records) -> list[dict]:
    """Per-(lambda, nu) fraction of HYPERBOLIC verdicts, in grid order."""
    order: list[tuple[float, float]] = []
    totals: dict[tuple[float, float], list[int]] = {}
    for rec in records:
        key = (rec.lam, rec.nu)
        if key not in totals:
            totals[key] = [0, 0]
            order.append(key)
        if rec.error is None:
            totals[key][1] += 1
            if rec.verdict == "HYPERBOLIC":
                totals[key][0] += 1
    rows = []
    for key in order:
        hyp, tot = totals[key]
        rows.append(
            {
                "lambda": key[0],
                "nu": key[1],
                "fraction_hyperbolic": hyp / tot if tot else float("nan"),
            }
        )
    return rows


def verdict_map_text(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(["lambda", "nu", "fraction_hyperbolic"])
    for row in verdict_map_rows(records):
        writer.writerow(
            [fmt(row["lambda"]), fmt(row["nu"]), fmt(row["fraction_hyperbolic"])]
        )
    return buf.getvalue()
