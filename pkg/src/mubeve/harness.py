"""Scenario and campaign runners with machine-readable reports.

Configurations are JSON documents; complex numbers are two-element
[re, im] arrays.  Report rows serialize to a CSV with a fixed header and
to a JSON mirror carrying the same field names.  All outputs are
byte-deterministic for identical configuration bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    NotUnitaryError,
    OutOfRangeError,
    ParseError,
    UnsupportedCombinationError,
    ValidationError,
)
from .bounds import BoundsReport, audit_attack
from .channel import AttackChannel, from_unitary
from .linalg import N_MAX
from .rng import mix
from .symmetrize import purification_vectors, sigma_matrix, symmetrize
from .zoo import MAX_TOTAL_DIM, AttackSpec, make_attack, random_attack

CSV_HEADER = (
    "attack_id,n,eve_dim,delta,h_xor,chi_orig,chi_sym,i_lower,"
    "boykin_rhs,corollary_rhs,slack_main,slack_measured,spectrum_deviation"
)

ANALYSES = ("audit", "sigma_spectrum", "sweep")

DEFAULT_SWEEP_THETAS = tuple(k * math.pi / 12.0 for k in range(7))


@dataclass(frozen=True)
class ExplicitAttack:
    """Attack given directly as a joint unitary and an apparatus start vector."""

    unitary: np.ndarray
    ancilla: np.ndarray

    def __post_init__(self):
        u = np.array(self.unitary, dtype=complex)
        a = np.array(self.ancilla, dtype=complex).reshape(-1)
        u.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "ancilla", a)


@dataclass(frozen=True)
class ScenarioConfig:
    n_qubits: int
    attack: AttackSpec | ExplicitAttack
    povm_samples: int
    seed: int
    analyses: tuple[str, ...]
    sweep_thetas: tuple[float, ...] | None = None


@dataclass(frozen=True)
class CampaignConfig:
    grid: tuple[tuple[int, int], ...]
    count: int
    master_seed: int
    output: str
    povm_samples: int = 16


@dataclass(frozen=True)
class CampaignSummary:
    rows: int
    min_slack_main: float
    min_slack_measured: float
    max_spectrum_deviation: float
    worst_attack_id: str | None
    worst_seed: int | None


def _load_json(text) -> dict:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    return doc


def _require_int(doc, field, minimum=None, maximum=None) -> int:
    if field not in doc:
        raise ValidationError(field, "missing required field")
    value = doc[field]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(field, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(field, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ValidationError(field, f"must be <= {maximum}, got {value}")
    return value


def _complex_array(raw, field) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ValidationError(field, "complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _parse_attack(doc, n_qubits) -> AttackSpec | ExplicitAttack:
    raw = doc.get("attack")
    if not isinstance(raw, dict):
        raise ValidationError("attack", "must be an object")

    if "unitary" in raw:
        try:
            unitary = _complex_array(raw["unitary"], "attack.unitary")
        except (ValueError, ValidationError) as exc:
            raise ValidationError("attack.unitary", str(exc)) from exc
        if "ancilla" not in raw:
            raise ValidationError("attack.ancilla", "missing required field")
        try:
            ancilla = _complex_array(raw["ancilla"], "attack.ancilla")
        except (ValueError, ValidationError) as exc:
            raise ValidationError("attack.ancilla", str(exc)) from exc
        try:
            from_unitary(unitary, ancilla, n_qubits)
        except NotUnitaryError as exc:
            raise ValidationError("attack.unitary", str(exc)) from exc
        except DimensionMismatchError as exc:
            raise ValidationError("attack.unitary", str(exc)) from exc
        return ExplicitAttack(unitary=unitary, ancilla=ancilla)

    kind = raw.get("kind")
    if not isinstance(kind, str):
        raise ValidationError("attack.kind", "missing or not a string")
    n = raw.get("n", n_qubits)
    if n != n_qubits:
        raise ValidationError("attack.n", f"disagrees with n_qubits={n_qubits}")
    params = raw.get("params", [])
    if not isinstance(params, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in params
    ):
        raise ValidationError("attack.params", "must be a list of numbers")
    try:
        spec = AttackSpec(
            kind=kind,
            n=n,
            params=tuple(float(p) for p in params),
            eve_dim=raw.get("eve_dim", 1),
            seed=raw.get("seed", 0),
        )
        if kind == "random_unitary":
            # size guard without building the (possibly large) unitary
            if spec.eve_dim < 1 or spec.eve_dim * (1 << n) > MAX_TOTAL_DIM:
                raise DimensionTooLargeError(
                    f"eve_dim {spec.eve_dim} makes the channel larger "
                    f"than {MAX_TOTAL_DIM}"
                )
        else:
            make_attack(spec)  # surfaces unsupported combinations early
    except (UnsupportedCombinationError, OutOfRangeError,
            DimensionTooLargeError) as exc:
        raise ValidationError("attack", str(exc)) from exc
    return spec


def parse_scenario(text) -> ScenarioConfig:
    """Parse and validate one scenario document.

    Raises ParseError for malformed JSON and ValidationError naming the
    offending field otherwise.
    """
    doc = _load_json(text)
    n_qubits = _require_int(doc, "n_qubits", minimum=1, maximum=N_MAX)
    attack = _parse_attack(doc, n_qubits)
    povm_samples = _require_int(doc, "povm_samples", minimum=0)
    seed = _require_int(doc, "seed", minimum=0)

    analyses = doc.get("analyses", ["audit"])
    if not isinstance(analyses, list) or not analyses:
        raise ValidationError("analyses", "must be a nonempty list")
    for a in analyses:
        if a not in ANALYSES:
            raise ValidationError("analyses", f"unknown analysis {a!r}")

    sweep_thetas = None
    if "sweep_thetas" in doc:
        raw = doc["sweep_thetas"]
        if not isinstance(raw, list) or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in raw
        ):
            raise ValidationError("sweep_thetas", "must be a list of numbers")
        sweep_thetas = tuple(float(t) for t in raw)

    return ScenarioConfig(
        n_qubits=n_qubits,
        attack=attack,
        povm_samples=povm_samples,
        seed=seed,
        analyses=tuple(analyses),
        sweep_thetas=sweep_thetas,
    )


def parse_campaign(text) -> CampaignConfig:
    """Parse and validate one campaign document."""
    doc = _load_json(text)
    raw_grid = doc.get("grid")
    if not isinstance(raw_grid, list):
        raise ValidationError("grid", "must be a list of [n, eve_dim] pairs")
    grid = []
    for pos, cell in enumerate(raw_grid):
        field = f"grid[{pos}]"
        if (
            not isinstance(cell, list) or len(cell) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in cell)
        ):
            raise ValidationError(field, "must be an [n, eve_dim] integer pair")
        n, eve_dim = cell
        if not 1 <= n <= N_MAX:
            raise ValidationError(field, f"n={n} outside [1, {N_MAX}]")
        if eve_dim < 1 or eve_dim * (1 << n) > MAX_TOTAL_DIM:
            raise ValidationError(
                field, f"eve_dim={eve_dim} makes the channel larger than {MAX_TOTAL_DIM}"
            )
        grid.append((n, eve_dim))
    count = _require_int(doc, "count", minimum=0)
    master_seed = _require_int(doc, "master_seed", minimum=0)
    output = doc.get("output")
    if not isinstance(output, str) or not output:
        raise ValidationError("output", "must be a nonempty path string")
    povm_samples = doc.get("povm_samples", 16)
    if isinstance(povm_samples, bool) or not isinstance(povm_samples, int) or povm_samples < 0:
        raise ValidationError("povm_samples", "must be a nonnegative integer")
    return CampaignConfig(
        grid=tuple(grid),
        count=count,
        master_seed=master_seed,
        output=output,
        povm_samples=povm_samples,
    )


def build_attack(cfg: ScenarioConfig) -> AttackChannel:
    if isinstance(cfg.attack, ExplicitAttack):
        return from_unitary(cfg.attack.unitary, cfg.attack.ancilla, cfg.n_qubits)
    return make_attack(cfg.attack)


def attack_label(cfg: ScenarioConfig) -> str:
    if isinstance(cfg.attack, ExplicitAttack):
        return "explicit"
    spec = cfg.attack
    if spec.kind == "probe_overlap":
        return f"probe_overlap[theta={spec.params[0]:.17g}]"
    if spec.kind == "random_unitary":
        return f"random_unitary[n={spec.n};d={spec.eve_dim};seed={spec.seed}]"
    return spec.kind


def run_scenario(cfg: ScenarioConfig) -> BoundsReport:
    """Audit the configured attack."""
    return audit_attack(build_attack(cfg), cfg.povm_samples, cfg.seed)


def run_sweep(cfg: ScenarioConfig) -> list[tuple[float, BoundsReport]]:
    """Audit the probe-overlap family across a grid of angles."""
    if isinstance(cfg.attack, ExplicitAttack) or cfg.attack.kind != "probe_overlap":
        raise ValidationError("attack.kind", "sweep requires a probe_overlap attack")
    thetas = cfg.sweep_thetas if cfg.sweep_thetas is not None else DEFAULT_SWEEP_THETAS
    results = []
    for theta in thetas:
        spec = replace(cfg.attack, params=(theta,))
        report = audit_attack(make_attack(spec), cfg.povm_samples, cfg.seed)
        results.append((theta, report))
    return results


def sigma_spectrum_detail(cfg: ScenarioConfig) -> dict:
    """Fourier eigenvalues next to the error distribution, for inspection."""
    ch = build_attack(cfg)
    sa = sigma_matrix(purification_vectors(symmetrize(ch)))
    report = run_scenario(cfg)
    return {
        "lambda": [float(v) for v in sa.lambdas],
        "error_probs": [float(v) for v in report.error_dist.probs],
        "max_deviation": float(report.spectrum_deviation),
    }


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # +0.0 folds -0.0 into 0


def _row_fields(attack_id: str, report: BoundsReport) -> list:
    return [
        attack_id,
        report.n,
        report.eve_dim,
        report.delta,
        report.h_xor,
        report.chi_orig,
        report.chi_sym,
        report.i_lower,
        report.boykin_rhs,
        report.corollary_rhs,
        report.slack_main,
        report.slack_measured,
        report.spectrum_deviation,
    ]


def write_report(rows, fmt: str = "csv") -> bytes:
    """Serialize report rows; ``rows`` is a list of (attack_id, report).

    The CSV header and column order are fixed; reals carry 17 significant
    digits.  The JSON form mirrors the same field names.
    """
    names = CSV_HEADER.split(",")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for attack_id, report in rows:
            fields = _row_fields(attack_id, report)
            lines.append(",".join(
                str(v) if isinstance(v, (str, int)) else _fmt(v) for v in fields
            ))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        records = []
        for attack_id, report in rows:
            fields = _row_fields(attack_id, report)
            records.append({
                name: (v if isinstance(v, (str, int)) else float(v))
                for name, v in zip(names, fields)
            })
        return (json.dumps(records, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def run_campaign(cfg: CampaignConfig, output_path: str | None = None) -> CampaignSummary:
    """Audit seeded random attacks over the configured grid.

    Writes per-attack rows to the output path as CSV plus a JSON mirror
    alongside it.  The sub-seed for cell (n, d, k) is
    ``mix(master_seed, n, d, k)``, so output does not depend on execution
    order; reruns are byte-identical.
    """
    rows: list[tuple[str, BoundsReport]] = []
    seeds: list[int] = []
    for n, eve_dim in cfg.grid:
        for k in range(cfg.count):
            sub = mix(cfg.master_seed, n, eve_dim, k)
            ch = random_attack(n, eve_dim, sub)
            report = audit_attack(ch, cfg.povm_samples, mix(sub, 1))
            rows.append((f"n{n}_d{eve_dim}_k{k}", report))
            seeds.append(sub)

    out = Path(output_path if output_path is not None else cfg.output)
    out.write_bytes(write_report(rows, "csv"))
    out.with_suffix(".json").write_bytes(write_report(rows, "json"))

    if not rows:
        return CampaignSummary(0, 0.0, 0.0, 0.0, None, None)
    worst = min(range(len(rows)), key=lambda i: rows[i][1].slack_main)
    return CampaignSummary(
        rows=len(rows),
        min_slack_main=min(r.slack_main for _, r in rows),
        min_slack_measured=min(r.slack_measured for _, r in rows),
        max_spectrum_deviation=max(r.spectrum_deviation for _, r in rows),
        worst_attack_id=rows[worst][0],
        worst_seed=seeds[worst],
    )
