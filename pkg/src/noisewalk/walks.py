"""Sequence-dependent error walks in Pauli space.

For a fixed error axis ``e`` (z for detuning noise), conjugating ``sigma_e``
through the partial products of a Clifford sequence maps each gate to a
signed Cartesian step.  The net step vector ``V`` predicts first-order
error accumulation; its in-plane part ``V_2D`` is what a z-basis
measurement can see.

Three weighting modes are exposed:

``unit``
    One step per gate, unit weight.  This is the construction used for
    classifying and preselecting long-walk sequences, and the diffusive
    reference ``E||V_2D||^2 = (2/3) J`` applies to it.
``duration``
    One step per gate, weighted by the gate's summed pulse duration
    (pi-containing gates weigh double, frame updates nothing).
``concurrent``
    Exact first-order decomposition of the concurrent error model: each
    noisy pulse contributes a step of weight ``sin|theta|/2`` along the
    conjugated error axis plus, for driven pulses, a perpendicular step of
    weight ``sin^2(|theta|/2)``; idles contribute ``duration * pi/4``.
    With these steps ``delta^2 ||V_2D||^2`` reproduces the exactly
    simulated infidelity of quasi-DC noise as ``delta -> 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cliffords import (
    CliffordGroup,
    build_clifford_group,
    noisy_pulse_unitary,
)
from .pauli import AXES, SIGNED_PAULIS, SignedPauli, bloch_conjugate

WEIGHT_MODES = ("unit", "duration", "concurrent")

#: E||V_2D||^2 / J for an isotropic unit-step walk (two of three axes project).
DIFFUSIVE_2D_FRACTION = 2.0 / 3.0


@dataclass(frozen=True)
class WalkRecord:
    """Steps and net vectors of one sequence's error walk."""

    steps: tuple
    v: np.ndarray
    weight_mode: str
    error_axis: str

    @property
    def v2d(self) -> np.ndarray:
        return self.v[:2]

    @property
    def vz(self) -> float:
        return float(self.v[2])

    @property
    def norm_v2d_sq(self) -> float:
        return float(self.v[0] ** 2 + self.v[1] ** 2)

    @property
    def norm_v_sq(self) -> float:
        return float(self.v @ self.v)


@dataclass(frozen=True)
class LongWalkLabel:
    is_long: bool
    threshold_used: float


def _axis_name(error_axis) -> str:
    if isinstance(error_axis, SignedPauli):
        if error_axis.sign != 1:
            raise ValueError("error axis must be a positive Pauli axis")
        return error_axis.axis
    if error_axis not in AXES:
        raise ValueError(f"unknown error axis {error_axis!r}")
    return error_axis


def _nearest_signed_pauli(vec: np.ndarray) -> SignedPauli:
    for cand in SIGNED_PAULIS:
        if np.max(np.abs(vec - cand.vector)) < 1e-9:
            return cand
    raise ValueError(f"direction {vec} is not a signed Pauli")


_CROSS = {
    ("z", "x"): np.array([0.0, 1.0, 0.0]),   # z cross x = +y
    ("z", "y"): np.array([-1.0, 0.0, 0.0]),  # z cross y = -x
    ("x", "y"): np.array([0.0, 0.0, 1.0]),
    ("x", "z"): np.array([0.0, -1.0, 0.0]),
    ("y", "z"): np.array([1.0, 0.0, 0.0]),
    ("y", "x"): np.array([0.0, 0.0, -1.0]),
}


def compute_walk(seq, error_axis="z", weights: str = "duration") -> WalkRecord:
    """Error walk of a time-ordered Clifford sequence.

    In ``unit`` and ``duration`` modes, step ``l`` points along the error
    axis conjugated through the product of gates ``1..l-1``.  See the
    module docstring for the ``concurrent`` mode.
    """
    if len(seq) == 0:
        raise ValueError("empty sequence")
    if weights not in WEIGHT_MODES:
        raise ValueError(f"unknown weight mode {weights!r}")
    axis = _axis_name(error_axis)
    e_vec = SignedPauli(axis, 1).vector

    steps = []
    v = np.zeros(3)
    prefix = np.eye(2, dtype=complex)
    for gate in seq:
        if weights in ("unit", "duration"):
            direction = _nearest_signed_pauli(bloch_conjugate(prefix, e_vec))
            w = 1.0 if weights == "unit" else float(gate.duration)
            steps.append((direction, w))
            v += w * direction.vector
        else:
            inner = prefix
            for pulse in gate.pulses:
                if pulse.axis == "frame-z":
                    inner = noisy_pulse_unitary(pulse, 0.0) @ inner
                    continue
                if pulse.axis == "idle" or pulse.axis == axis:
                    d = _nearest_signed_pauli(bloch_conjugate(inner, e_vec))
                    w = pulse.detuning_phase
                    steps.append((d, w))
                    v += w * d.vector
                else:
                    a = abs(pulse.angle)
                    d_par = _nearest_signed_pauli(bloch_conjugate(inner, e_vec))
                    w_par = np.sin(a) / 2.0
                    perp_local = np.sign(pulse.angle) * _CROSS[(axis, pulse.axis)]
                    d_perp = _nearest_signed_pauli(bloch_conjugate(inner, perp_local))
                    w_perp = np.sin(a / 2.0) ** 2
                    steps.append((d_par, w_par))
                    steps.append((d_perp, w_perp))
                    v += w_par * d_par.vector + w_perp * d_perp.vector
                if pulse.axis != "idle":
                    inner = noisy_pulse_unitary(pulse, 0.0) @ inner
        prefix = gate.net_unitary @ prefix
    return WalkRecord(tuple(steps), v, weights, axis)


def classify_long_walk(walk: WalkRecord, j: int, multiplier: float = 2.0) -> LongWalkLabel:
    """Label a walk long when ``||V_2D||^2 > multiplier * (2/3) J``.

    ``multiplier=1`` is the diffusive-mean classification; the preselection
    default is 2.
    """
    if multiplier < 0:
        raise ValueError("multiplier must be positive")
    threshold = multiplier * DIFFUSIVE_2D_FRACTION * j
    return LongWalkLabel(walk.norm_v2d_sq > threshold, multiplier)


def predicted_dc_infidelity(delta: float, walk: WalkRecord) -> float:
    """First-order survival infidelity under a constant detuning.

    Returns ``delta^2 ||V_2D||^2``; quantitative agreement with exact
    simulation requires a ``concurrent``-mode walk.
    """
    pred = delta * delta * walk.norm_v2d_sq
    if pred > 0.1:
        warnings.warn(
            f"predicted infidelity {pred:.3g} outside the first-order regime"
        )
    return pred


# ---------------------------------------------------------------------------
# vectorized index-level machinery (Monte Carlo oracles, preselection)
# ---------------------------------------------------------------------------


def random_identity_sequence_indices(
    j: int, rng: np.random.Generator, group: CliffordGroup | None = None
) -> np.ndarray:
    """Gate indices of a random net-identity sequence: j-1 uniform draws
    plus the inverting element."""
    if j < 2:
        raise ValueError("sequence length must be >= 2")
    group = group or build_clifford_group()
    idx = rng.integers(0, 24, size=j - 1)
    k = group.identity_index
    for g in idx:
        k = group.mul_table[g, k]
    return np.append(idx, group.inverse_table[k])


def random_identity_sequences_batch(
    n: int, j: int, rng: np.random.Generator, group: CliffordGroup | None = None
) -> np.ndarray:
    """(n, j) gate indices of random net-identity sequences, vectorized."""
    group = group or build_clifford_group()
    idx = rng.integers(0, 24, size=(n, j - 1))
    k = np.full(n, group.identity_index, dtype=np.intp)
    for col in range(j - 1):
        k = group.mul_table[idx[:, col], k]
    return np.column_stack([idx, group.inverse_table[k]])


def unit_walk_vectors_batch(
    seq_indices: np.ndarray, error_axis="z", group: CliffordGroup | None = None
) -> np.ndarray:
    """(n, 3) net unit-step walk vectors for (n, j) index arrays."""
    group = group or build_clifford_group()
    axis = _axis_name(error_axis)
    img = group.image_codes[axis]
    seq_indices = np.atleast_2d(seq_indices)
    n, j = seq_indices.shape
    v = np.zeros((n, 3))
    k = np.full(n, group.identity_index, dtype=np.intp)
    for col in range(j):
        code = img[k]
        ax = code // 2
        sign = np.where(code % 2 == 0, 1.0, -1.0)
        v[np.arange(n), ax] += sign
        k = group.mul_table[seq_indices[:, col], k]
    return v


def preselect_long_walk_sequences(
    j: int,
    target: int,
    multiplier: float,
    rng: np.random.Generator,
    group: CliffordGroup | None = None,
    error_axis="z",
    max_attempts: int | None = None,
    batch: int = 256,
) -> list[np.ndarray]:
    """Rejection-sample random sequences whose unit-step walks are long.

    Returns ``target`` gate-index arrays with
    ``||V_2D||^2 > multiplier * (2/3) j``.

    Raises:
        RuntimeError: attempt cap exceeded (threshold too aggressive).
    """
    if target < 1:
        raise ValueError("target must be >= 1")
    group = group or build_clifford_group()
    threshold = multiplier * DIFFUSIVE_2D_FRACTION * j
    if max_attempts is None:
        max_attempts = max(200 * target, 20000)
    out: list[np.ndarray] = []
    attempts = 0
    while len(out) < target:
        if attempts >= max_attempts:
            raise RuntimeError(
                f"preselection found {len(out)}/{target} sequences in "
                f"{attempts} attempts; multiplier {multiplier} too aggressive for J={j}"
            )
        take = min(batch, max_attempts - attempts)
        seqs = random_identity_sequences_batch(take, j, rng, group)
        attempts += take
        v = unit_walk_vectors_batch(seqs, error_axis, group)
        v2d2 = v[:, 0] ** 2 + v[:, 1] ** 2
        for row in np.nonzero(v2d2 > threshold)[0]:
            if len(out) < target:
                out.append(seqs[row])
    return out


def gate_dephasing_weights(group: CliffordGroup | None = None, error_axis="z") -> np.ndarray:
    """Per-element first-order error magnitude under the interleaved model.

    The squared weight sums each noisy pulse's squared step magnitudes
    (``sin^2(|theta|/2)`` for driven pulses with axis orthogonal to the
    error axis, ``(duration*pi/4)^2`` otherwise).
    """
    group = group or build_clifford_group()
    axis = _axis_name(error_axis)
    w = np.zeros(24)
    for e in group.elements:
        total = 0.0
        for p in e.pulses:
            if not p.is_noisy:
                continue
            if p.axis == "idle" or p.axis == axis:
                total += p.detuning_phase**2
            else:
                total += np.sin(abs(p.angle) / 2.0) ** 2
        w[e.index] = np.sqrt(total)
    return w


def interleaved_error_steps(
    seq_indices: np.ndarray, error_axis="z", group: CliffordGroup | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """(dir_codes, weights) of per-slot dephasing steps for one sequence.

    One step per noisy pulse, aligned with the sequence's noise slots.  The
    step acts in the frame set by the gates preceding its gate, so its
    direction is the conjugated error axis of the unit walk; its weight is
    the pulse's first-order error magnitude (``sin(|theta|/2)`` for driven
    pulses orthogonal to the error axis, ``duration * pi/4`` otherwise).
    """
    group = group or build_clifford_group()
    axis = _axis_name(error_axis)
    img = group.image_codes[axis]
    dirs: list[int] = []
    weights: list[float] = []
    k = group.identity_index
    for g in np.asarray(seq_indices):
        element = group.elements[int(g)]
        for p in element.pulses:
            if not p.is_noisy:
                continue
            dirs.append(int(img[k]))
            if p.axis == "idle" or p.axis == axis:
                weights.append(p.detuning_phase)
            else:
                weights.append(np.sin(abs(p.angle) / 2.0))
        k = group.mul_table[int(g), k]
    return np.array(dirs, dtype=np.intp), np.array(weights, dtype=np.float64)
