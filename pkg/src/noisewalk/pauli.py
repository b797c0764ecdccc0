"""Single-qubit operator primitives: Pauli matrices, signed Pauli axes,
closed-form SU(2) exponentials, Clifford conjugation, and the Pauli
transfer matrix representation.

Conventions used throughout the package:

* ``rotation(axis, theta)`` returns ``exp(-i theta/2 sigma_axis)``, which
  rotates Bloch vectors by ``theta`` about ``axis`` (right-handed).
* Two unitaries are considered equal when they differ only by a global
  phase, tested via ``|tr(A^dag B)| = 2``.
* PTM entries are ``R[i, j] = tr(sigma_i U sigma_j U^dag) / 2`` over the
  basis ``(I, sigma_x, sigma_y, sigma_z)``; state and effect vectors use
  the normalised basis ``sigma_i / sqrt(2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (ID2, SIGMA_X, SIGMA_Y, SIGMA_Z)
SIGMA = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

AXES = ("x", "y", "z")

#: Pauli-basis vector of |0><0| (and of the z-basis measurement effect).
RHO_ZERO = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
EFFECT_ZERO = RHO_ZERO.copy()

PHASE_TOL = 1e-10


@dataclass(frozen=True)
class SignedPauli:
    """One of the six signed Pauli axes, e.g. ``-y``."""

    axis: str
    sign: int

    def __post_init__(self):
        if self.axis not in AXES or self.sign not in (-1, 1):
            raise ValueError(f"invalid signed Pauli ({self.axis!r}, {self.sign})")

    @property
    def vector(self) -> np.ndarray:
        """Cartesian unit vector of this axis."""
        v = np.zeros(3)
        v[AXES.index(self.axis)] = float(self.sign)
        return v

    @property
    def matrix(self) -> np.ndarray:
        return self.sign * SIGMA[self.axis]

    def __str__(self):
        return ("+" if self.sign > 0 else "-") + self.axis


SIGNED_PAULIS = tuple(
    SignedPauli(axis, sign) for axis in AXES for sign in (1, -1)
)


def su2_exp(vx: float, vy: float, vz: float) -> np.ndarray:
    """Closed-form ``exp(-i (vx sx + vy sy + vz sz))``."""
    r = np.sqrt(vx * vx + vy * vy + vz * vz)
    if r < 1e-300:
        return ID2.copy()
    c = np.cos(r)
    s = np.sin(r) / r
    return np.array(
        [
            [c - 1j * s * vz, -1j * s * (vx - 1j * vy)],
            [-1j * s * (vx + 1j * vy), c + 1j * s * vz],
        ]
    )


def rotation(axis: str, theta: float) -> np.ndarray:
    """Rotation by ``theta`` about a Cartesian axis: ``exp(-i theta/2 sigma)``."""
    v = [0.0, 0.0, 0.0]
    v[AXES.index(axis)] = theta / 2.0
    return su2_exp(*v)


def phase_equal(a: np.ndarray, b: np.ndarray, tol: float = PHASE_TOL) -> bool:
    """True when two 2x2 unitaries agree up to a global phase."""
    return abs(abs(np.trace(a.conj().T @ b)) - 2.0) < tol


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - ID2)) < tol)


def bloch_conjugate(k: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Cartesian image of ``K^dag (vec . sigma) K`` for unitary ``K``.

    Equals ``R_K^{-1} vec`` where ``R_K`` is the Bloch rotation of ``K``.
    """
    p = vec[0] * SIGMA_X + vec[1] * SIGMA_Y + vec[2] * SIGMA_Z
    q = k.conj().T @ p @ k
    return np.real(
        [
            np.trace(q @ SIGMA_X) / 2.0,
            np.trace(q @ SIGMA_Y) / 2.0,
            np.trace(q @ SIGMA_Z) / 2.0,
        ]
    )


def conjugate_pauli(k: np.ndarray, p: SignedPauli, tol: float = 1e-10) -> SignedPauli:
    """Map a signed Pauli through ``K^dag P K`` for a Clifford ``K``.

    Raises:
        ValueError: the conjugated operator is not a signed Pauli within
            ``tol`` (i.e. ``k`` is not a Clifford).
    """
    image = bloch_conjugate(k, p.vector)
    for cand in SIGNED_PAULIS:
        if np.max(np.abs(image - cand.vector)) < tol:
            return cand
    raise ValueError(
        f"conjugation of {p} is not a signed Pauli (image {image}); "
        "operator is not a Clifford"
    )


def unitary_to_ptm(u: np.ndarray) -> np.ndarray:
    """Pauli transfer matrix of the unitary channel ``rho -> U rho U^dag``."""
    r = np.empty((4, 4))
    for j in range(4):
        m = u @ PAULIS[j] @ u.conj().T
        for i in range(4):
            r[i, j] = np.real(np.trace(PAULIS[i] @ m)) / 2.0
    return r


def ptm_is_trace_preserving(r: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(r[0] - np.array([1.0, 0, 0, 0]))) < tol)
