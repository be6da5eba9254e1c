"""Quadratic normal-form reductions at degenerate equilibria.

Two local checks are provided:

* saddle-node: for a simple zero eigenvalue (det = 0, trace != 0), change to
  the eigenbasis and read off the quadratic coefficient along the
  zero-eigenvalue direction; a nonzero coefficient certifies a saddle-node.

* cusp: for a double zero eigenvalue (det = trace = 0, J != 0), change to the
  (kernel, generalized-kernel) basis, which brings the linear part to
  nilpotent form, and read off the two quadratic coefficients of the reduced
  second equation; both nonzero certifies a codimension-2 cusp.

Eigenvector normalisation is fixed so the reported coefficients are
reproducible: the zero-eigenvalue direction has first component 1 (its first
component never vanishes here because df1/dy = -q*x != 0), and the
generalized direction has first component 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainViolation, NotDoublyDegenerate, NotSemiDegenerate
from .model import DerivativeBundle, ModelParams, State, derivatives
from .equilibria import Equilibrium

__all__ = [
    "TaylorCoefficients",
    "SaddleNodeVerdict",
    "SaddleNodeCheck",
    "CuspVerdict",
    "CuspCheck",
    "taylor_at",
    "saddle_node_check",
    "cusp_check",
]

DEGENERACY_RTOL = 1e-9
COEFF_TOL = 1e-9


@dataclass(frozen=True)
class TaylorCoefficients:
    """Taylor coefficients (i + j <= 3) of both components around a point.

    a_ij multiplies dx^i dy^j in the prey component, b_ij in the predator
    component.  The prey component is quadratic, so a02 and every a_ij with
    i + j = 3 are identically zero and not stored.
    """

    a00: float
    a10: float
    a01: float
    a20: float
    a11: float
    b00: float
    b10: float
    b01: float
    b20: float
    b11: float
    b02: float
    b30: float
    b21: float
    b12: float
    b03: float

    a02: float = 0.0
    a30: float = 0.0
    a21: float = 0.0
    a12: float = 0.0
    a03: float = 0.0

    def evaluate(self, du: float, dv: float) -> tuple[float, float]:
        """Sum the expansion at displacement (du, dv) from the base point."""
        f1 = (self.a00 + self.a10 * du + self.a01 * dv
              + self.a20 * du * du + self.a11 * du * dv)
        f2 = (self.b00 + self.b10 * du + self.b01 * dv
              + self.b20 * du * du + self.b11 * du * dv + self.b02 * dv * dv
              + self.b30 * du**3 + self.b21 * du * du * dv
              + self.b12 * du * dv * dv + self.b03 * dv**3)
        return f1, f2


class SaddleNodeVerdict(enum.Enum):
    SADDLE_NODE = "SaddleNode"
    NEEDS_HIGHER_ORDER = "NeedsHigherOrder"


@dataclass(frozen=True)
class SaddleNodeCheck:
    c20: float
    rho: float
    verdict: SaddleNodeVerdict


class CuspVerdict(enum.Enum):
    CODIM2_CUSP = "Codim2Cusp"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class CuspCheck:
    g20: float
    g11: float
    verdict: CuspVerdict


def taylor_at(p: ModelParams, e: Equilibrium | State) -> TaylorCoefficients:
    """Taylor expansion of the vector field around an equilibrium (or any
    admissible point), coefficients scaled by the usual factorials."""
    x = e.x
    if not x > 0:
        raise DomainViolation(f"prey density must be positive, got x = {x}")
    d = derivatives(p, State(x, e.y))
    return _taylor_from_bundle(d)


def _taylor_from_bundle(d: DerivativeBundle) -> TaylorCoefficients:
    return TaylorCoefficients(
        a00=d.f1, a10=d.f1_x, a01=d.f1_y,
        a20=0.5 * d.f1_xx, a11=d.f1_xy,
        b00=d.f2, b10=d.f2_x, b01=d.f2_y,
        b20=0.5 * d.f2_xx, b11=d.f2_xy, b02=0.5 * d.f2_yy,
        b30=d.f2_xxx / 6.0, b21=0.5 * d.f2_xxy,
        b12=0.5 * d.f2_xyy, b03=d.f2_yyy / 6.0,
    )


def _bilinear(d: DerivativeBundle, u: tuple[float, float], v: tuple[float, float]) -> tuple[float, float]:
    # D^2 f (u, v): second-derivative bilinear form applied to two directions
    s1 = d.f1_xx * u[0] * v[0] + d.f1_xy * (u[0] * v[1] + u[1] * v[0]) + d.f1_yy * u[1] * v[1]
    s2 = d.f2_xx * u[0] * v[0] + d.f2_xy * (u[0] * v[1] + u[1] * v[0]) + d.f2_yy * u[1] * v[1]
    return s1, s2


def _degeneracy(d: DerivativeBundle) -> tuple[float, float, float, bool, bool]:
    tr = d.f1_x + d.f2_y
    det = d.f1_x * d.f2_y - d.f1_y * d.f2_x
    norm = math.sqrt(d.f1_x**2 + d.f1_y**2 + d.f2_x**2 + d.f2_y**2)
    det_zero = abs(det) <= DEGENERACY_RTOL * max(norm * norm, 1e-30)
    tr_zero = abs(tr) <= DEGENERACY_RTOL * max(norm, 1e-30)
    return tr, det, norm, det_zero, tr_zero


def saddle_node_check(p: ModelParams, e: Equilibrium | State) -> SaddleNodeCheck:
    """Quadratic coefficient along the center direction at a semi-degenerate
    equilibrium (one zero and one nonzero eigenvalue).

    The zero-eigenvalue direction v0 is scaled to first component 1 and the
    nonzero-eigenvalue direction spans the complement; c20 is the
    coefficient of the squared center coordinate in the center equation
    after the basis change.  c20 != 0 certifies a saddle-node.
    """
    d = derivatives(p, State(e.x, e.y))
    tr, det, _, det_zero, tr_zero = _degeneracy(d)
    if not det_zero or tr_zero:
        raise NotSemiDegenerate(
            f"need det ~ 0 and trace != 0, got det = {det:.3e}, trace = {tr:.3e}"
        )
    # df1/dy = -q x never vanishes, so both eigenvectors are graphs over x
    v0 = (1.0, -d.f1_x / d.f1_y)
    v1 = (1.0, (tr - d.f1_x) / d.f1_y)
    det_p = v1[1] - v0[1]
    q1, q2 = _bilinear(d, v0, v0)
    c20 = 0.5 * (v1[1] * q1 - q2) / det_p
    verdict = (
        SaddleNodeVerdict.SADDLE_NODE if abs(c20) > COEFF_TOL
        else SaddleNodeVerdict.NEEDS_HIGHER_ORDER
    )
    return SaddleNodeCheck(c20=c20, rho=tr, verdict=verdict)


def cusp_check(p: ModelParams, e: Equilibrium | State) -> CuspCheck:
    """Quadratic coefficients of the nilpotent normal form at a doubly
    degenerate equilibrium (double zero eigenvalue, nonzero Jacobian).

    In the basis (q0, q1) with J q0 = 0, J q1 = q0, the system reads

        x' = y + e20 x^2 + ...,     y' = f20 x^2 + f11 x y + ...

    and reduces near the origin to y' = g20 x^2 + g11 x y with g20 = f20 and
    g11 = f11 + 2 e20.  Both nonzero certifies a codimension-2 cusp.
    """
    d = derivatives(p, State(e.x, e.y))
    tr, det, _, det_zero, tr_zero = _degeneracy(d)
    if not (det_zero and tr_zero):
        raise NotDoublyDegenerate(
            f"need det ~ 0 and trace ~ 0, got det = {det:.3e}, trace = {tr:.3e}"
        )
    j12 = d.f1_y  # nonzero, so J != 0 and the kernel basis below is valid
    q0 = (1.0, -d.f1_x / j12)
    q1 = (0.0, 1.0 / j12)
    # inverse of T = [q0 | q1]: rows (1, 0) and (-j12*q0[1], j12)
    h00_1, h00_2 = _bilinear(d, q0, q0)
    h01_1, h01_2 = _bilinear(d, q0, q1)
    e20 = 0.5 * h00_1
    f20 = 0.5 * (-j12 * q0[1] * h00_1 + j12 * h00_2)
    f11 = -j12 * q0[1] * h01_1 + j12 * h01_2
    g20 = f20
    g11 = f11 + 2.0 * e20
    verdict = (
        CuspVerdict.CODIM2_CUSP
        if abs(g20) > COEFF_TOL and abs(g11) > COEFF_TOL
        else CuspVerdict.DEGENERATE
    )
    return CuspCheck(g20=g20, g11=g11, verdict=verdict)
