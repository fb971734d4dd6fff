"""Numerical check of the continuum planar-field theory on truncated modes.

Two independent oscillator modes are truncated to n_max states each.  One
mode carries the momentum pair with [P1, P2] = i*r, the other the velocity
pair with [Q1, Q2] = -i*r; all P commute with all Q.  The angular momentum
is assembled as L = (Q1^2 + Q2^2)/(2r) - (P1^2 + P2^2)/(2r) (additive
constant fixed to zero) and the Hamiltonian as H = (Q1^2 + Q2^2)/(2m),
whose spectrum is (r/m)(n - 1/2) with the whole retained momentum mode as
degeneracy space.  Ladder truncation corrupts the top state, so every
assertion is made on the interior block with both mode indices <= n_max - 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reporting import RelationReport

__all__ = [
    "LandauOperators",
    "build_landau",
    "hamiltonian_spectrum",
    "level_degeneracies",
    "bracket_report",
    "lorentz_check",
    "BRACKET_TOLERANCE",
    "LORENTZ_TOLERANCE",
]

BRACKET_TOLERANCE = 1e-10
LORENTZ_TOLERANCE = 1e-8


def _ladder(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=complex)
    ks = np.arange(1, n)
    a[ks - 1, ks] = np.sqrt(ks)
    return a


@dataclass(eq=False)
class LandauOperators:
    r: float
    mass: float
    n_max: int
    p1: np.ndarray
    p2: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    ang: np.ndarray
    ham: np.ndarray
    ham_mode: np.ndarray  # Hamiltonian restricted to the velocity mode
    s: float              # scalar in L + (P1^2+P2^2)/2r on the lowest level

    def interior_mask(self) -> np.ndarray:
        keep = np.arange(self.n_max) <= self.n_max - 2
        return np.kron(keep, keep).astype(bool)


def _interior_norm(mat: np.ndarray, mask: np.ndarray) -> float:
    # Frobenius norm: upper bound on the operator norm, cheap at this size
    return float(np.linalg.norm(mat[np.ix_(mask, mask)]))


def build_landau(r: float, mass: float, n_max: int) -> LandauOperators:
    """Assemble the truncated operators for field strength r and mass m."""
    if r == 0:
        raise ValueError("invalid parameters: r must be nonzero")
    if mass <= 0:
        raise ValueError("invalid parameters: mass must be positive")
    if n_max < 4:
        raise ValueError("invalid parameters: n_max must be at least 4")

    a = _ladder(n_max)
    sgn = 1.0 if r > 0 else -1.0
    scale = np.sqrt(abs(r) / 2.0)
    x = scale * (a + a.conj().T)
    y = scale * 1j * (a.conj().T - a)

    eye = np.eye(n_max)
    p1 = np.kron(x, eye)
    p2 = sgn * np.kron(y, eye)
    q1 = np.kron(eye, x)
    q2 = -sgn * np.kron(eye, y)

    q_sq_mode = x @ x + (sgn * y) @ (sgn * y)
    ham_mode = q_sq_mode / (2.0 * mass)
    ham = np.kron(eye, ham_mode)
    ang = (q1 @ q1 + q2 @ q2 - p1 @ p1 - p2 @ p2) / (2.0 * r)

    return LandauOperators(r=r, mass=mass, n_max=n_max,
                           p1=p1, p2=p2, q1=q1, q2=q2,
                           ang=ang, ham=ham, ham_mode=ham_mode,
                           s=sgn * 0.5)


def hamiltonian_spectrum(ops: LandauOperators, n_levels: int) -> np.ndarray:
    """Lowest n_levels eigenvalues of the Hamiltonian on the velocity mode.

    They match (|r|/m)(n - 1/2) for n = 1..n_levels; beyond n_max/2 the
    truncated top state pollutes the ladder, hence the precondition.
    """
    if n_levels > ops.n_max // 2:
        raise ValueError(f"truncation too small: n_levels={n_levels} needs "
                         f"n_max >= {2 * n_levels}")
    return np.linalg.eigvalsh(ops.ham_mode)[:n_levels]


def level_degeneracies(ops: LandauOperators, n_levels: int,
                       tol: float = LORENTZ_TOLERANCE) -> list[int]:
    """Multiplicity of each of the lowest n_levels levels on the full
    two-mode space; each should equal the retained momentum-mode dimension."""
    levels = hamiltonian_spectrum(ops, n_levels)
    full = np.linalg.eigvalsh(ops.ham)
    return [int(np.sum(np.abs(full - lv) < tol)) for lv in levels]


def bracket_report(ops: LandauOperators, tol: float = BRACKET_TOLERANCE) -> RelationReport:
    """Interior-block residuals of the defining Lie brackets and of the
    angular-momentum identity."""
    mask = ops.interior_mask()
    r = ops.r
    eye = np.eye(ops.n_max**2)

    def comm(x, y):
        return x @ y - y @ x

    report = RelationReport()
    checks = [
        ("bracket_p1_p2", comm(ops.p1, ops.p2) - 1j * r * eye, "[P1,P2] = ir"),
        ("bracket_q1_q2", comm(ops.q1, ops.q2) + 1j * r * eye, "[Q1,Q2] = -ir"),
        ("bracket_p1_q1", comm(ops.p1, ops.q1), "[P1,Q1] = 0"),
        ("bracket_p1_q2", comm(ops.p1, ops.q2), "[P1,Q2] = 0"),
        ("bracket_p2_q1", comm(ops.p2, ops.q1), "[P2,Q1] = 0"),
        ("bracket_p2_q2", comm(ops.p2, ops.q2), "[P2,Q2] = 0"),
        ("bracket_L_p1", comm(ops.ang, ops.p1) - 1j * ops.p2, "[L,P1] = iP2"),
        ("bracket_L_p2", comm(ops.ang, ops.p2) + 1j * ops.p1, "[L,P2] = -iP1"),
        ("bracket_L_q1", comm(ops.ang, ops.q1) - 1j * ops.q2, "[L,Q1] = iQ2"),
        ("bracket_L_q2", comm(ops.ang, ops.q2) + 1j * ops.q1, "[L,Q2] = -iQ1"),
        ("angular_momentum_identity",
         ops.ang - (ops.q1 @ ops.q1 + ops.q2 @ ops.q2
                    - ops.p1 @ ops.p1 - ops.p2 @ ops.p2) / (2.0 * r),
         "L = (Q^2 - P^2)/2r with constant 0"),
    ]
    for name, residual_mat, detail in checks:
        residual = _interior_norm(residual_mat, mask)
        report.add(name, residual < tol, None,
                   f"{detail}, interior residual {residual:.3e}")
    return report


def lorentz_check(ops: LandauOperators, tol: float = LORENTZ_TOLERANCE) -> RelationReport:
    """Heisenberg equations of motion: the velocity pair rotates at rate r/m
    while momenta and angular momentum are conserved."""
    mask = ops.interior_mask()
    rm = ops.r / ops.mass

    def comm(x, y):
        return x @ y - y @ x

    report = RelationReport()
    checks = [
        ("lorentz_q1", 1j * comm(ops.ham, ops.q1) + rm * ops.q2,
         "dQ1/dt = i[H,Q1] = -(r/m) Q2"),
        ("lorentz_q2", 1j * comm(ops.ham, ops.q2) - rm * ops.q1,
         "dQ2/dt = i[H,Q2] = (r/m) Q1"),
        ("conserved_p1", comm(ops.ham, ops.p1), "[H,P1] = 0"),
        ("conserved_p2", comm(ops.ham, ops.p2), "[H,P2] = 0"),
        ("conserved_angular_momentum", comm(ops.ham, ops.ang), "[H,L] = 0"),
    ]
    for name, residual_mat, detail in checks:
        residual = _interior_norm(residual_mat, mask)
        report.add(name, residual < tol, None,
                   f"{detail}, interior residual {residual:.3e}")
    return report
