"""Algebra of two-point boundary conditions.

Covers the characteristic constants (theta), regularity classification,
the roots zeta / exponents gamma driving the eigenvalue lattices, the
vector-case determinant identity, and adjoint boundary conditions
constructed from the bilinear boundary form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import CoincidentRoots, DegenerateCondition, RankDeficiency

# Fixed convention for the two distinct square roots of -1.  Swapping them
# swaps theta_1 <-> theta_-1 and maps the root set {zeta} to {1/zeta}; the
# exponent set and the regularity class are invariant (tested).
OMEGA1 = 1j
OMEGA2 = -1j

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BoundaryRow:
    """One condition alpha*y^(k)(0) + alpha0*y(0) + beta*y^(k)(1) + beta0*y(1) = 0."""

    k: int
    alpha: complex
    alpha0: complex = 0.0
    beta: complex = 0.0
    beta0: complex = 0.0

    def __post_init__(self):
        if self.k not in (0, 1):
            raise DegenerateCondition(f"condition order must be 0 or 1, got {self.k}")
        if self.alpha == 0 and self.beta == 0:
            raise DegenerateCondition("alpha and beta cannot both vanish in a row")

    def data_row(self) -> np.ndarray:
        """Coefficients against the data vector (y(0), y'(0), y(1), y'(1))."""
        r = np.zeros(4, dtype=complex)
        r[0] = self.alpha0 + (self.alpha if self.k == 0 else 0.0)
        r[1] = self.alpha if self.k == 1 else 0.0
        r[2] = self.beta0 + (self.beta if self.k == 0 else 0.0)
        r[3] = self.beta if self.k == 1 else 0.0
        return r


@dataclass(frozen=True)
class BoundaryConditionPair:
    """The two rows of a two-point boundary condition, k2 <= k1."""

    row1: BoundaryRow
    row2: BoundaryRow

    def __post_init__(self):
        if self.row2.k > self.row1.k:
            raise DegenerateCondition("rows must be ordered with k2 <= k1")

    @property
    def rows(self) -> tuple:
        return (self.row1, self.row2)

    def scalar_matrix(self) -> np.ndarray:
        """2x4 matrix applying both conditions to (y(0), y'(0), y(1), y'(1))."""
        return np.vstack([self.row1.data_row(), self.row2.data_row()])

    # Convenience constructors for the standard families.

    @classmethod
    def dirichlet(cls) -> "BoundaryConditionPair":
        return cls(BoundaryRow(k=0, alpha=1.0), BoundaryRow(k=0, alpha=0.0, beta=1.0))

    @classmethod
    def neumann(cls) -> "BoundaryConditionPair":
        return cls(BoundaryRow(k=1, alpha=1.0), BoundaryRow(k=1, alpha=0.0, beta=1.0))

    @classmethod
    def quasiperiodic(cls, t: float) -> "BoundaryConditionPair":
        """y'(1) = e^{it} y'(0) and y(1) = e^{it} y(0)."""
        phase = np.exp(1j * t)
        return cls(
            BoundaryRow(k=1, alpha=-phase, beta=1.0),
            BoundaryRow(k=0, alpha=-phase, beta=1.0),
        )


@dataclass(frozen=True)
class ThetaTriple:
    """Laurent coefficients of the characteristic determinant in s."""

    theta_m1: complex
    theta_0: complex
    theta_1: complex
    case: Optional[str] = None  # "case6" | "case7" | None
    a: Optional[complex] = None
    b: Optional[complex] = None

    def evaluate(self, s: complex) -> complex:
        return self.theta_m1 / s + self.theta_0 + self.theta_1 * s


class Regularity(Enum):
    NOT_REGULAR = "NotRegular"
    REGULAR_NOT_STRONGLY = "RegularNotStronglyRegular"
    STRONGLY_REGULAR = "StronglyRegular"


@dataclass(frozen=True)
class RegularityReport:
    klass: Regularity
    discriminant: complex

    @property
    def strongly_regular(self) -> bool:
        return self.klass is Regularity.STRONGLY_REGULAR


@dataclass(frozen=True)
class GammaPair:
    """Roots of the characteristic quadratic and their exponents.

    gamma_j = -i Log(zeta_j) with the principal branch, Re gamma in (-pi, pi].
    Ordering is by arg(zeta) in [0, 2pi) ascending (then Im gamma), which
    makes the Dirichlet/Neumann pair come out as (0, pi) and the
    quasiperiodic pair as (+t, -t).
    """

    zeta1: complex
    zeta2: complex
    gamma1: complex
    gamma2: complex

    @property
    def zetas(self) -> tuple:
        return (self.zeta1, self.zeta2)

    @property
    def gammas(self) -> tuple:
        return (self.gamma1, self.gamma2)

    def gamma(self, branch: int) -> complex:
        return self.gamma1 if branch == 1 else self.gamma2


def theta_coefficients(bc: BoundaryConditionPair) -> ThetaTriple:
    """Expand the 2x2 boundary determinant in s and tag its case.

    The determinant is linear in s and 1/s; the three Laurent coefficients
    come out in closed form from the row coefficients and omega powers.
    """
    r1, r2 = bc.rows
    w1k1, w2k1 = OMEGA1 ** r1.k, OMEGA2 ** r1.k
    w1k2, w2k2 = OMEGA1 ** r2.k, OMEGA2 ** r2.k

    theta1 = r2.alpha * r1.beta * w1k1 * w2k2 - r1.alpha * r2.beta * w2k1 * w1k2
    theta_m1 = r1.alpha * r2.beta * w1k1 * w2k2 - r2.alpha * r1.beta * w2k1 * w1k2
    theta0 = (r1.alpha * r2.alpha + r1.beta * r2.beta) * (w1k1 * w2k2 - w2k1 * w1k2)

    case = None
    a = b = None
    scale = max(abs(theta_m1), abs(theta0), abs(theta1))
    if abs(theta_m1) > 1e-14 * max(scale, 1e-300):
        tau0 = theta0 / theta_m1
        tau1 = theta1 / theta_m1
        tol = 1e-10
        if abs(tau0) <= tol and abs(tau1 + 1.0) <= tol:
            case = "case6"
        elif abs(tau1 - 1.0) <= tol:
            case = "case7"
            a = theta1
            b = theta0
    return ThetaTriple(complex(theta_m1), complex(theta0), complex(theta1),
                       case=case, a=a, b=b)


def classify(theta: ThetaTriple, eps_reg: float = 1e-10,
             eps_disc: float = 1e-10) -> RegularityReport:
    """Regularity class from the theta triple (total function)."""
    disc = theta.theta_0 ** 2 - 4.0 * theta.theta_1 * theta.theta_m1
    scale = max(abs(theta.theta_m1), abs(theta.theta_0), abs(theta.theta_1))
    disc_scale = max(abs(theta.theta_0) ** 2, abs(theta.theta_1 * theta.theta_m1), scale ** 2)
    if min(abs(theta.theta_m1), abs(theta.theta_1)) <= eps_reg * scale:
        klass = Regularity.NOT_REGULAR
    elif abs(disc) > eps_disc * max(disc_scale, 1e-300):
        klass = Regularity.STRONGLY_REGULAR
    else:
        klass = Regularity.REGULAR_NOT_STRONGLY
    return RegularityReport(klass=klass, discriminant=complex(disc))


def _principal_gamma(zeta: complex) -> complex:
    """-i Log(zeta) mapped so that Re gamma lies in (-pi, pi]."""
    g = -1j * np.log(complex(zeta))
    # principal log already gives Re(g) = arg(zeta) in (-pi, pi]
    re = g.real
    if re <= -np.pi:
        g += TWO_PI
    elif re > np.pi:
        g -= TWO_PI
    return complex(g)


def characteristic_roots(theta: ThetaTriple, tol: float = 1e-9) -> GammaPair:
    """Solve theta_1 z^2 + theta_0 z + theta_-1 = 0 and return exponents.

    Requires strong regularity; a numerically double root raises
    CoincidentRoots.
    """
    t1, t0, tm1 = theta.theta_1, theta.theta_0, theta.theta_m1
    sq = np.sqrt(complex(t0 * t0 - 4.0 * t1 * tm1))
    # Citardauq pairing avoids cancellation: pick the larger-magnitude numerator.
    if abs(-t0 + sq) >= abs(-t0 - sq):
        z1 = (-t0 + sq) / (2.0 * t1)
    else:
        z1 = (-t0 - sq) / (2.0 * t1)
    z2 = tm1 / (t1 * z1)
    if abs(z1 - z2) <= tol * max(abs(z1), abs(z2)):
        raise CoincidentRoots(f"characteristic roots coincide: {z1} ~ {z2}")

    g1, g2 = _principal_gamma(z1), _principal_gamma(z2)

    def key(g):
        re = g.real % TWO_PI
        if re < 0:
            re += TWO_PI
        return (re, g.imag)

    (ga, za), (gb, zb) = sorted([(g1, z1), (g2, z2)], key=lambda p: key(p[0]))
    return GammaPair(zeta1=complex(za), zeta2=complex(zb),
                     gamma1=complex(ga), gamma2=complex(gb))


@dataclass(frozen=True)
class VectorRegularityReport:
    m: int
    max_rel_deviation: float
    theta_m: complex      # leading Laurent coefficient, theta_1^m
    theta_minus_m: complex
    samples: tuple


def _m1_matrix(bc: BoundaryConditionPair, s: complex) -> np.ndarray:
    r1, r2 = bc.rows
    return np.array([
        [(r1.alpha + s * r1.beta) * OMEGA1 ** r1.k,
         (r1.alpha + r1.beta / s) * OMEGA2 ** r1.k],
        [(r2.alpha + s * r2.beta) * OMEGA1 ** r2.k,
         (r2.alpha + r2.beta / s) * OMEGA2 ** r2.k],
    ], dtype=complex)


def vector_regularity_check(bc: BoundaryConditionPair, m: int,
                            s_samples: Sequence[complex]) -> VectorRegularityReport:
    """Check det M(m) = (det M(1))^m at the given sample points.

    M(m) is assembled explicitly as the block matrix with each scalar entry
    times the m x m identity; both determinants are evaluated numerically.
    """
    theta = theta_coefficients(bc)
    eye = np.eye(m, dtype=complex)
    records = []
    worst = 0.0
    for s in s_samples:
        if s == 0:
            raise ValueError("s samples must be nonzero")
        m1 = _m1_matrix(bc, s)
        big = np.kron(m1, eye)
        det_big = np.linalg.det(big)
        det_pow = np.linalg.det(m1) ** m
        denom = max(abs(det_big), abs(det_pow), 1e-300)
        dev = abs(det_big - det_pow) / denom
        worst = max(worst, dev)
        records.append((complex(s), complex(det_big), complex(det_pow), dev))
    return VectorRegularityReport(
        m=m,
        max_rel_deviation=worst,
        theta_m=theta.theta_1 ** m,
        theta_minus_m=theta.theta_m1 ** m,
        samples=tuple(records),
    )


@dataclass(frozen=True)
class BoundaryMatrix:
    """General boundary conditions: rows against stacked (y(0), y'(0), y(1), y'(1)).

    For conditions built from a BoundaryConditionPair (and their adjoints)
    the matrix is a scalar 2x4 block tensored with the m x m identity; the
    scalar block is kept so solvers can work per component.
    """

    scalar: np.ndarray  # (2, 4)
    m: int = 1

    def full(self) -> np.ndarray:
        """The 2m x 4m matrix on the stacked boundary data."""
        return np.kron(self.scalar, np.eye(self.m, dtype=complex))

    def with_dimension(self, m: int) -> "BoundaryMatrix":
        return BoundaryMatrix(scalar=self.scalar, m=m)

    @classmethod
    def from_pair(cls, bc: BoundaryConditionPair, m: int = 1) -> "BoundaryMatrix":
        return cls(scalar=bc.scalar_matrix(), m=m)


# Bilinear boundary form [y, z] = (y z'^bar - y' z^bar)(1) - (...)(0) as a
# 4x4 matrix against (data of y) x conj(data of z).
_FORM = np.array([
    [0.0, -1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
], dtype=complex)


def boundary_form(y_data: np.ndarray, z_data: np.ndarray) -> complex:
    """Evaluate the boundary form on two 4-vectors (or stacked 4m-vectors)."""
    y = np.asarray(y_data, dtype=complex).reshape(4, -1)
    z = np.asarray(z_data, dtype=complex).reshape(4, -1)
    return complex(np.sum((_FORM @ np.conjugate(z)) * y))


def adjoint_boundary(bc: BoundaryConditionPair, m: int = 1) -> BoundaryMatrix:
    """Boundary conditions of the adjoint problem.

    z is admissible iff the boundary form vanishes against every y with
    U(y) = 0; the returned rows are the scalar construction tensored with
    the identity.  The adjoint of a two-term condition need not have the
    two-term shape, hence the general matrix form.
    """
    u = bc.scalar_matrix()
    if np.linalg.matrix_rank(u, tol=1e-12 * max(1.0, np.abs(u).max())) != 2:
        raise RankDeficiency("scalar boundary matrix does not have rank 2")
    # Orthonormal basis of ker U: admissible y-data.
    _, sv, vh = np.linalg.svd(u)
    kernel = vh[2:].conj().T  # (4, 2)
    rows = np.conjugate(kernel.T @ _FORM)  # V z = 0  <=>  [y, z] = 0 for all ker-U y
    if np.linalg.matrix_rank(rows, tol=1e-12 * max(1.0, np.abs(rows).max())) != 2:
        raise RankDeficiency("adjoint boundary construction lost rank")
    return BoundaryMatrix(scalar=rows, m=m)
