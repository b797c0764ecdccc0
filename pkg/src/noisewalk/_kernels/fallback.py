"""Pure-numpy implementations of the hot simulation kernels.

Used when the compiled extension is unavailable.  Semantics are identical
to ``_core``: a flattened pulse stream is applied to a batch of noise
realizations, vectorized over realizations.
"""

from __future__ import annotations

import numpy as np

AX_X, AX_Y, AX_IDLE, AX_FRAMEZ = 0, 1, 2, 3


def sequence_unitaries(axis_codes, angles, det_phases, slot_index, deltas):
    """Final unitaries of a noisy pulse stream for a batch of realizations.

    Each pulse applies ``exp(-i [ (angle/2) sigma_axis + phase * delta * sigma_z ])``
    with ``delta`` read from the pulse's noise slot; frame updates (code 3)
    are exact z rotations.  Later pulses left-multiply.

    Args:
        axis_codes: int8 (n_pulses,), 0=x 1=y 2=idle 3=frame-z.
        angles: float64 (n_pulses,) rotation angles.
        det_phases: float64 (n_pulses,) detuning half-angle per unit delta.
        slot_index: int64 (n_pulses,), noise slot per pulse, -1 for frame-z.
        deltas: float64 (n_real, n_slots).

    Returns:
        complex128 (n_real, 2, 2).
    """
    deltas = np.atleast_2d(np.asarray(deltas, dtype=np.float64))
    n = deltas.shape[0]
    u00 = np.ones(n, dtype=np.complex128)
    u01 = np.zeros(n, dtype=np.complex128)
    u10 = np.zeros(n, dtype=np.complex128)
    u11 = np.ones(n, dtype=np.complex128)
    zeros = np.zeros(n)
    for k in range(len(axis_codes)):
        code = axis_codes[k]
        half = angles[k] / 2.0
        if code == AX_FRAMEZ:
            vz = np.full(n, half)
            vx = vy = zeros
        else:
            vz = det_phases[k] * deltas[:, slot_index[k]]
            vx = np.full(n, half) if code == AX_X else zeros
            vy = np.full(n, half) if code == AX_Y else zeros
        r = np.sqrt(vx * vx + vy * vy + vz * vz)
        c = np.cos(r)
        safe = np.where(r > 1e-300, r, 1.0)
        s = np.where(r > 1e-300, np.sin(r) / safe, 1.0)
        p00 = c - 1j * (s * vz)
        p01 = -1j * (s * vx) - (s * vy)
        p10 = -1j * (s * vx) + (s * vy)
        p11 = c + 1j * (s * vz)
        u00, u01, u10, u11 = (
            p00 * u00 + p01 * u10,
            p00 * u01 + p01 * u11,
            p10 * u00 + p11 * u10,
            p10 * u01 + p11 * u11,
        )
    out = np.empty((n, 2, 2), dtype=np.complex128)
    out[:, 0, 0] = u00
    out[:, 0, 1] = u01
    out[:, 1, 0] = u10
    out[:, 1, 1] = u11
    return out


def survival_batch(axis_codes, angles, det_phases, slot_index, deltas):
    """Ground-state survival probabilities |U_00|^2 per realization."""
    u = sequence_unitaries(axis_codes, angles, det_phases, slot_index, deltas)
    return np.abs(u[:, 0, 0]) ** 2


def pauli_rotation_product(dir_codes, weights, deltas):
    """Product of signed-Pauli rotations ``exp(-i w_l delta_l P_l)``.

    ``P_l`` is a signed Pauli given by ``dir_codes`` (0..5 meaning
    +x,-x,+y,-y,+z,-z); the step with the highest ``l`` is applied last
    (leftmost).  Used by the interleaved (gate-dephasing) error model,
    where the accumulated error operator is exactly such a product.

    Args:
        dir_codes: intp (n_steps,).
        weights: float64 (n_steps,) error weight per step.
        deltas: float64 (n_real, n_steps) or (n_real, 1) broadcast.

    Returns:
        complex128 (n_real, 2, 2).
    """
    deltas = np.atleast_2d(np.asarray(deltas, dtype=np.float64))
    n = deltas.shape[0]
    u00 = np.ones(n, dtype=np.complex128)
    u01 = np.zeros(n, dtype=np.complex128)
    u10 = np.zeros(n, dtype=np.complex128)
    u11 = np.ones(n, dtype=np.complex128)
    broadcast = deltas.shape[1] == 1
    for l in range(len(dir_codes)):
        d = deltas[:, 0] if broadcast else deltas[:, l]
        ang = weights[l] * d
        code = dir_codes[l]
        axis = code // 2
        sign = 1.0 if code % 2 == 0 else -1.0
        c = np.cos(ang)
        s = sign * np.sin(ang)
        if axis == 0:
            p00, p11 = c, c
            p01 = p10 = -1j * s
        elif axis == 1:
            p00, p11 = c, c
            p01, p10 = -s, s
        else:
            p00, p11 = c - 1j * s, c + 1j * s
            p01 = p10 = np.zeros(n)
        u00, u01, u10, u11 = (
            p00 * u00 + p01 * u10,
            p00 * u01 + p01 * u11,
            p10 * u00 + p11 * u10,
            p10 * u01 + p11 * u11,
        )
    out = np.empty((n, 2, 2), dtype=np.complex128)
    out[:, 0, 0] = u00
    out[:, 0, 1] = u01
    out[:, 1, 0] = u10
    out[:, 1, 1] = u11
    return out
