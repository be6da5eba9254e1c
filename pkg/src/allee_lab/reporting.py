"""Report assembly and serialisation (canonical JSON, CSV).

JSON is emitted with a fixed field order and shortest round-trip float
representation, so re-parsing and re-serialising a report is
byte-identical.  CSV uses LF line endings, UTF-8, and full-precision
floats.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import equilibria as eq
from .bifurcations import BTReport, HopfReport
from .dynamics import Trajectory
from .model import ModelParams, vector_field

__all__ = [
    "SweepSpec",
    "dumps_canonical",
    "params_dict",
    "analysis_report",
    "hopf_report_dict",
    "bt_report_dict",
    "trajectory_csv",
    "run_sweep",
    "sweep_csv",
    "sweep_parallelism",
]

SURFACE_RTOL = 1e-9

# fixed sweep-CSV column layout; one classification column per label
SWEEP_LABELS = [f"E{i}" for i in range(1, 10)]
SWEEP_COLUMNS = (
    ["value", "n_prey_axis", "n_allee_line", "n_diagonal"]
    + [f"class_{lab}" for lab in SWEEP_LABELS]
    + ["delta1", "delta2", "h1", "h2", "h3", "s1", "s2", "s3"]
    + ["on_h1", "on_h2", "on_h3", "on_s1", "on_s2", "on_s3"]
    + ["skipped", "error"]
)


def dumps_canonical(obj) -> str:
    """Serialise to the canonical JSON form (stable order, full precision)."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _num(x: float | None):
    return None if x is None else float(x)


def params_dict(p: ModelParams) -> dict:
    return {"q": p.q, "s": p.s, "h": p.h, "m": p.m}


def _complex_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _thresholds_dict(t: eq.Thresholds) -> dict:
    return {
        "h1": t.h1,
        "h2": t.h2,
        "h3": t.h3,
        "s1": _num(t.s1),
        "s2": _num(t.s2),
        "s3": _num(t.s3),
        "absent": dict(sorted(t.absent.items())),
    }


def _surface_flags(p: ModelParams, t: eq.Thresholds) -> list[str]:
    flags = []
    for name, target, actual in (
        ("h1", t.h1, p.h),
        ("h2", t.h2, p.h),
        ("h3", t.h3, p.h),
        ("s1", t.s1, p.s),
        ("s2", t.s2, p.s),
        ("s3", t.s3, p.s),
    ):
        if target is not None and abs(actual - target) <= SURFACE_RTOL * max(1.0, abs(target)):
            flags.append(name)
    return flags


def _equilibrium_dict(p: ModelParams, e: eq.Equilibrium) -> dict:
    f = vector_field(p, e.state)
    return {
        "label": e.label,
        "x": e.x,
        "y": e.y,
        "branches": [b.value for b in e.branches],
        "classification": e.classification.value if e.classification else None,
        "trace": e.trace,
        "det": e.det,
        "eigenvalues": [_complex_dict(z) for z in e.eigenvalues],
        "residual": math.hypot(float(f[0]), float(f[1])),
    }


def analysis_report(p: ModelParams) -> dict:
    """Full portrait + thresholds + active critical-surface flags."""
    portrait = eq.full_portrait(p)
    t = eq.thresholds(p)
    return {
        "params": params_dict(p),
        "equilibria": [_equilibrium_dict(p, e) for e in portrait],
        "thresholds": _thresholds_dict(t),
        "bifurcation_flags": _surface_flags(p, t),
    }


def hopf_report_dict(p: ModelParams, which: str, rep: HopfReport) -> dict:
    return {
        "which": which,
        "params": params_dict(p),
        "s_critical": rep.s_critical,
        "transversality": rep.transversality,
        "M": rep.M,
        "phi": list(rep.phi),
        "sigma": rep.sigma,
        "direction": rep.direction.value,
    }


def bt_report_dict(p: ModelParams, rep: BTReport) -> dict:
    return {
        "params": params_dict(p),
        "eta": list(rep.eta),
        "l00": rep.l00,
        "l01": rep.l01,
        "f20": rep.f20,
        "f11": rep.f11,
        "h11": rep.h11,
        "mirrored": rep.mirrored,
        "jac_det": rep.jac_det,
        "verdict": rep.verdict.value,
        "ladder": {k: dict(v) for k, v in rep.ladder.items()},
    }


def trajectory_csv(traj: Trajectory) -> str:
    lines = ["t,x,y"]
    for t, x, y in zip(traj.t, traj.x, traj.y):
        lines.append(f"{float(t)!r},{float(x)!r},{float(y)!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter grid: sweep `parameter` over [lo, hi] in `steps`
    points, holding the other three parameters at `fixed` values."""

    parameter: str
    lo: float
    hi: float
    steps: int
    fixed: dict[str, float]

    def __post_init__(self) -> None:
        if self.parameter not in ("q", "s", "h", "m"):
            raise ValueError(f"parameter must be one of q, s, h, m, got {self.parameter!r}")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.steps < 2:
            raise ValueError(f"need at least 2 steps, got {self.steps}")
        missing = {"q", "s", "h", "m"} - {self.parameter} - set(self.fixed)
        if missing:
            raise ValueError(f"missing fixed parameter values: {sorted(missing)}")

    def grid(self) -> list[float]:
        step = (self.hi - self.lo) / (self.steps - 1)
        return [self.lo + i * step for i in range(self.steps)]


def sweep_parallelism() -> int:
    raw = os.environ.get("ALLEE_LAB_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    n = int(raw)
    if n <= 0:
        raise ValueError(f"ALLEE_LAB_THREADS must be a positive integer, got {raw!r}")
    return n


def _sweep_row(spec: SweepSpec, value: float) -> dict:
    row: dict[str, object] = {c: "" for c in SWEEP_COLUMNS}
    row["value"] = value
    kwargs = dict(spec.fixed)
    kwargs[spec.parameter] = value
    try:
        p = ModelParams(**kwargs)
        portrait = eq.full_portrait(p)
    except Exception as err:  # invalid point: report and skip, do not abort the sweep
        row["skipped"] = 1
        # keep the CSV well-formed: no commas or newlines inside the cell
        row["error"] = f"{type(err).__name__}: {err}".replace(",", ";").replace("\n", " ")
        return row
    row["skipped"] = 0
    counts = {eq.Branch.PREY_AXIS: 0, eq.Branch.ALLEE_LINE: 0, eq.Branch.DIAGONAL: 0}
    for e in portrait:
        for b in set(e.branches):
            counts[b] += 1
        for lab in e.labels:
            row[f"class_{lab}"] = e.classification.value if e.classification else ""
    row["n_prey_axis"] = counts[eq.Branch.PREY_AXIS]
    row["n_allee_line"] = counts[eq.Branch.ALLEE_LINE]
    row["n_diagonal"] = counts[eq.Branch.DIAGONAL]
    d = eq.discriminants(p)
    t = eq.thresholds(p)
    row["delta1"], row["delta2"] = d.delta1, d.delta2
    for name in ("h1", "h2", "h3", "s1", "s2", "s3"):
        val = getattr(t, name)
        row[name] = "" if val is None else val
    for name in _surface_flags(p, t):
        row[f"on_{name}"] = 1
    for name in ("h1", "h2", "h3", "s1", "s2", "s3"):
        if row[f"on_{name}"] == "":
            row[f"on_{name}"] = 0
    return row


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate the grid concurrently; rows come back in grid order."""
    grid = spec.grid()
    workers = sweep_parallelism()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda v: _sweep_row(spec, v), grid))
    return rows


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_csv(rows: list[dict]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_cell(row[c]) for c in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"
