"""Closed-form equilibria of the dimensionless system and their stability.

Equilibria fall on three lines in the phase plane, because the predator
equation factors as s*y*(1 - y/x)*(y - m):

    prey axis   y = 0   with x solving  x^2 - x + h = 0
    Allee line  y = m   with x solving  x^2 - (1 - q*m)*x + h = 0
    diagonal    y = x   with x solving  x^2 - x/(q+1) + h/(q+1) = 0

Each branch is a quadratic with positive sum and product of roots, so the
roots are computed with the cancellation-free formula (large root first,
small root from the product) and double roots are recognised through a
relative tolerance band on the discriminant.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InconsistentInput
from .model import ModelParams, State, derivatives

__all__ = [
    "Branch",
    "BranchDiscriminants",
    "StabilityClass",
    "Equilibrium",
    "Thresholds",
    "DISCRIMINANT_RTOL",
    "MERGE_DISTANCE",
    "discriminants",
    "solve_branch_prey_axis",
    "solve_branch_allee_line",
    "solve_branch_diagonal",
    "classify",
    "thresholds",
    "full_portrait",
]

# relative tolerance deciding the double-root (fold) cases
DISCRIMINANT_RTOL = 1e-10
# Euclidean distance under which equilibria from different branches merge
MERGE_DISTANCE = 1e-10
# residual above which a point is rejected as "not an equilibrium"
RESIDUAL_TOL = 1e-9


class Branch(enum.Enum):
    PREY_AXIS = "prey_axis"
    ALLEE_LINE = "allee_line"
    DIAGONAL = "diagonal"


class StabilityClass(enum.Enum):
    STABLE_NODE = "StableNode"
    UNSTABLE_NODE = "UnstableNode"
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_FOCUS = "UnstableFocus"
    SADDLE = "Saddle"
    SADDLE_NODE = "SaddleNode"
    WEAK_CENTER = "WeakCenter"
    CUSP = "Cusp"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class BranchDiscriminants:
    """Quadratic data of the three equilibrium branches.

    A is the root sum of the Allee-line quadratic, C the root sum of the
    diagonal quadratic; B and D are the square roots of the corresponding
    discriminants and are None whenever the discriminant is negative.
    """

    A: float
    B: float | None
    C: float
    D: float | None
    delta1: float
    delta2: float


@dataclass(frozen=True)
class Equilibrium:
    """A located, classified equilibrium.

    Coincident roots coming from different branches are merged; all
    contributing branches and labels are kept (e.g. the point (m, m) lies on
    both the Allee line and the diagonal when h = m - (q+1)*m^2).
    """

    state: State
    branches: tuple[Branch, ...]
    labels: tuple[str, ...]
    trace: float
    det: float
    eigenvalues: tuple[complex, complex]
    classification: StabilityClass | None = None

    @property
    def label(self) -> str:
        return "+".join(self.labels)

    @property
    def x(self) -> float:
        return self.state.x

    @property
    def y(self) -> float:
        return self.state.y


@dataclass(frozen=True)
class Thresholds:
    """Critical parameter values of the fold/Hopf/cusp surfaces.

    h1 : harvest at which an Allee-line equilibrium collides with (m, m)
    h2 : harvest folding the prey-axis pair (always 1/4)
    h3 : harvest folding the diagonal pair (1/(4*(q+1)))
    s1 : growth rate nullifying the trace at the diagonal fold point
    s2 : growth rate nullifying the trace at the upper diagonal equilibrium
    s3 : growth rate nullifying the trace at the lower diagonal equilibrium

    s-values are None when undefined; `absent` records the reason per field.
    """

    h1: float
    h2: float
    h3: float
    s1: float | None
    s2: float | None
    s3: float | None
    absent: dict[str, str] = field(default_factory=dict)


def _rel_disc(disc: float, root_sum: float, root_prod: float) -> float:
    return disc / max(1.0, root_sum * root_sum, root_prod * root_prod)


def _stable_roots(root_sum: float, root_prod: float, disc: float) -> tuple[float, float]:
    # root_sum > 0 and root_prod > 0 on every branch, so no cancellation
    big = 0.5 * (root_sum + math.sqrt(disc))
    return big, root_prod / big


def _eigenvalues(trace: float, det: float) -> tuple[complex, complex]:
    disc = trace * trace - 4.0 * det
    r = cmath.sqrt(complex(disc, 0.0))
    return (0.5 * (trace + r), 0.5 * (trace - r))


def _make_equilibrium(p: ModelParams, x: float, y: float, branch: Branch, label: str) -> Equilibrium:
    d = derivatives(p, State(x, y))
    tr = d.f1_x + d.f2_y
    det = d.f1_x * d.f2_y - d.f1_y * d.f2_x
    return Equilibrium(
        state=State(x, y),
        branches=(branch,),
        labels=(label,),
        trace=tr,
        det=det,
        eigenvalues=_eigenvalues(tr, det),
    )


def discriminants(p: ModelParams) -> BranchDiscriminants:
    """Root sums and discriminants of the Allee-line and diagonal quadratics."""
    A = 1.0 - p.q * p.m
    delta1 = A * A - 4.0 * p.h
    C = 1.0 / (p.q + 1.0)
    delta2 = C * C - 4.0 * p.h / (p.q + 1.0)
    return BranchDiscriminants(
        A=A,
        B=math.sqrt(delta1) if delta1 >= 0 else None,
        C=C,
        D=math.sqrt(delta2) if delta2 >= 0 else None,
        delta1=delta1,
        delta2=delta2,
    )


def solve_branch_prey_axis(p: ModelParams) -> list[Equilibrium]:
    """Solve x^2 - x + h = 0 on y = 0.

    Returns [] above the fold (h > 1/4), the double root E1 = (1/2, 0) on
    the fold, and the pair E2 (larger x), E3 (smaller x) below it.
    """
    disc = 1.0 - 4.0 * p.h
    rel = _rel_disc(disc, 1.0, p.h)
    if abs(rel) <= DISCRIMINANT_RTOL:
        return [_make_equilibrium(p, 0.5, 0.0, Branch.PREY_AXIS, "E1")]
    if rel < 0:
        return []
    big, small = _stable_roots(1.0, p.h, disc)
    return [
        _make_equilibrium(p, big, 0.0, Branch.PREY_AXIS, "E2"),
        _make_equilibrium(p, small, 0.0, Branch.PREY_AXIS, "E3"),
    ]


def solve_branch_allee_line(p: ModelParams) -> list[Equilibrium]:
    """Solve x^2 - (1 - q*m)*x + h = 0 on y = m.

    Empty when the root sum A = 1 - q*m is non-positive or the discriminant
    is negative; E4 at the fold; otherwise E5 (larger x) and E6 (smaller x).
    """
    A = 1.0 - p.q * p.m
    if A <= 0:
        return []
    disc = A * A - 4.0 * p.h
    rel = _rel_disc(disc, A, p.h)
    if abs(rel) <= DISCRIMINANT_RTOL:
        return [_make_equilibrium(p, 0.5 * A, p.m, Branch.ALLEE_LINE, "E4")]
    if rel < 0:
        return []
    big, small = _stable_roots(A, p.h, disc)
    return [
        _make_equilibrium(p, big, p.m, Branch.ALLEE_LINE, "E5"),
        _make_equilibrium(p, small, p.m, Branch.ALLEE_LINE, "E6"),
    ]


def solve_branch_diagonal(p: ModelParams) -> list[Equilibrium]:
    """Solve x^2 - x/(q+1) + h/(q+1) = 0 on y = x.

    Empty below the fold; E7 = (2h, 2h) at the fold; otherwise E8 (larger x)
    and E9 (smaller x), both with y = x.
    """
    C = 1.0 / (p.q + 1.0)
    prod = p.h * C
    disc = C * C - 4.0 * prod
    rel = _rel_disc(disc, C, prod)
    if abs(rel) <= DISCRIMINANT_RTOL:
        x7 = 0.5 * C  # equals 2h exactly when the discriminant vanishes
        return [_make_equilibrium(p, x7, x7, Branch.DIAGONAL, "E7")]
    if rel < 0:
        return []
    big, small = _stable_roots(C, prod, disc)
    return [
        _make_equilibrium(p, big, big, Branch.DIAGONAL, "E8"),
        _make_equilibrium(p, small, small, Branch.DIAGONAL, "E9"),
    ]


def classify(p: ModelParams, e: Equilibrium) -> StabilityClass:
    """Classify an equilibrium from its linearisation, with degeneracies
    delegated to the quadratic normal-form checks.

    The trace/determinant case analysis is cross-checked against eigenvalues
    computed independently from the Jacobian matrix; a disagreement raises
    InconsistentInput rather than returning a silently wrong class.
    """
    from . import normal_forms  # local import: normal_forms depends on this module

    d = derivatives(p, e.state)
    res = math.hypot(d.f1, d.f2)
    if res > RESIDUAL_TOL:
        raise InconsistentInput(
            f"point ({e.x}, {e.y}) is not an equilibrium: residual {res:.3e}"
        )

    J = d.jacobian
    norm = float(np.linalg.norm(J))
    tr = d.f1_x + d.f2_y
    det = d.f1_x * d.f2_y - d.f1_y * d.f2_x
    det_zero = abs(det) <= 1e-9 * max(norm * norm, 1e-30)
    tr_zero = abs(tr) <= 1e-9 * max(norm, 1e-30)

    if det_zero and tr_zero:
        check = normal_forms.cusp_check(p, e)
        result = (
            StabilityClass.CUSP
            if check.verdict is normal_forms.CuspVerdict.CODIM2_CUSP
            else StabilityClass.DEGENERATE
        )
    elif det_zero:
        check = normal_forms.saddle_node_check(p, e)
        result = (
            StabilityClass.SADDLE_NODE
            if check.verdict is normal_forms.SaddleNodeVerdict.SADDLE_NODE
            else StabilityClass.DEGENERATE
        )
    elif det < 0:
        result = StabilityClass.SADDLE
    elif tr_zero:
        result = StabilityClass.WEAK_CENTER
    else:
        disc = tr * tr - 4.0 * det
        if abs(disc) <= 1e-9 * max(norm * norm, 1e-30) or disc > 0:
            result = StabilityClass.STABLE_NODE if tr < 0 else StabilityClass.UNSTABLE_NODE
        else:
            result = StabilityClass.STABLE_FOCUS if tr < 0 else StabilityClass.UNSTABLE_FOCUS

    _check_against_eigenvalues(J, norm, result)
    return result


def _check_against_eigenvalues(J: np.ndarray, norm: float, cls: StabilityClass) -> None:
    # independent route: QR eigenvalues of the assembled matrix
    lam = np.linalg.eigvals(J)
    re = np.sort(lam.real)
    tol = 1e-8 * max(norm, 1e-30)
    ok = True
    if cls is StabilityClass.SADDLE:
        ok = re[0] < tol and re[1] > -tol and lam.imag[0] == 0
    elif cls in (StabilityClass.STABLE_NODE, StabilityClass.STABLE_FOCUS):
        ok = re[1] < tol
    elif cls in (StabilityClass.UNSTABLE_NODE, StabilityClass.UNSTABLE_FOCUS):
        ok = re[0] > -tol
    elif cls is StabilityClass.WEAK_CENTER:
        ok = abs(re[0]) <= tol and abs(re[1]) <= tol and abs(lam[0].imag) > tol
    elif cls in (StabilityClass.SADDLE_NODE, StabilityClass.DEGENERATE, StabilityClass.CUSP):
        ok = min(abs(lam)) <= 1e-7 * max(norm, 1e-30)
    if not ok:
        raise InconsistentInput(
            f"classification {cls.value} contradicts eigenvalues {lam}"
        )


def thresholds(p: ModelParams, x8: float | None = None, x9: float | None = None) -> Thresholds:
    """Evaluate the critical surfaces at the given parameter point.

    s-thresholds with a vanishing denominator are reported absent rather
    than raising; the same applies to s2/s3 when the diagonal pair does not
    exist and no explicit root location is supplied.
    """
    absent: dict[str, str] = {}
    h1 = p.m - (p.q + 1.0) * p.m * p.m
    h3 = 1.0 / (4.0 * (p.q + 1.0))

    if abs(p.m - 2.0 * p.h) <= 1e-12:
        s1 = None
        absent["s1"] = "denominator m - 2h vanishes"
    else:
        s1 = (4.0 * p.h - 1.0) / (2.0 * (p.m - 2.0 * p.h))

    if x8 is None or x9 is None:
        d = discriminants(p)
        if d.D is not None and _rel_disc(d.delta2, d.C, p.h * d.C) > DISCRIMINANT_RTOL:
            big, small = _stable_roots(d.C, p.h * d.C, d.delta2)
            x8 = big if x8 is None else x8
            x9 = small if x9 is None else x9

    def s_crit(x: float | None, name: str) -> float | None:
        if x is None:
            absent[name] = "diagonal equilibrium does not exist"
            return None
        if abs(p.m - x) <= 1e-12:
            absent[name] = "denominator m - x vanishes"
            return None
        return (2.0 * x + p.q * x - 1.0) / (p.m - x)

    return Thresholds(
        h1=h1,
        h2=0.25,
        h3=h3,
        s1=s1,
        s2=s_crit(x8, "s2"),
        s3=s_crit(x9, "s3"),
        absent=absent,
    )


def full_portrait(p: ModelParams) -> list[Equilibrium]:
    """All equilibria of the system, merged across branches and classified.

    Roots from different branches closer than MERGE_DISTANCE are one
    equilibrium (all branch tags and labels retained).  Returned in label
    order E1..E9.
    """
    found: list[Equilibrium] = []
    for solver in (solve_branch_prey_axis, solve_branch_allee_line, solve_branch_diagonal):
        for eq in solver(p):
            for i, other in enumerate(found):
                if math.hypot(eq.x - other.x, eq.y - other.y) <= MERGE_DISTANCE:
                    found[i] = replace(
                        other,
                        branches=other.branches + eq.branches,
                        labels=other.labels + eq.labels,
                    )
                    break
            else:
                found.append(eq)
    return [replace(eq, classification=classify(p, eq)) for eq in found]
