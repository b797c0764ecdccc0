"""The 24 single-qubit Cliffords decomposed into timed physical pulses.

Decomposition scheme
--------------------
Every Clifford ``C`` factors as ``C = Q . Rz(phi)`` where ``Rz(phi)`` is an
instantaneous frame update (``phi`` in {0, pi/2, pi, -pi/2}) and ``Q`` is the
unique single pulse moving the z-axis to its image under ``C``:

==============  =========================  ========
z-axis image    physical pulse Q           duration
==============  =========================  ========
``+z``          none (frame update only)   0
``-z``          ``x`` rotation by pi       2
``+x``          ``y`` rotation by +pi/2    1
``-x``          ``y`` rotation by -pi/2    1
``+y``          ``x`` rotation by -pi/2    1
``-y``          ``x`` rotation by +pi/2    1
==============  =========================  ========

The identity is realised as an idle period (default duration 2, i.e. the
time of a pi rotation) so that it is exposed to detuning noise like any
driven gate.  Durations are in units of the pi/2 pulse time.  In time
order, the frame update precedes the physical pulse.

Elements are indexed ``4 * z_image + frame_index`` with z-images ordered as
in the table and frame angles ordered ``(0, pi/2, pi, -pi/2)``; index 0 is
the identity.  The table ships as a versioned JSON data file so that walk
weights stay reproducible; `canonical_pulse_table` regenerates it.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .pauli import (
    ID2,
    SIGNED_PAULIS,
    SignedPauli,
    conjugate_pauli,
    phase_equal,
    rotation,
    su2_exp,
)

TABLE_VERSION = 1
DEFAULT_IDLE_DURATION = 2

PULSE_AXES = ("x", "y", "idle", "frame-z")

#: Noise slots advance once per pulse on these axes; frame updates are free.
NOISY_AXES = ("x", "y", "idle")


@dataclass(frozen=True)
class PhysicalPulse:
    """A timed control primitive: driven rotation, idle, or frame update.

    ``duration`` counts pi/2 pulse times; the detuning phase accumulated at
    unit detuning is ``duration * pi/4``.
    """

    axis: str
    angle: float
    duration: int

    def __post_init__(self):
        if self.axis not in PULSE_AXES:
            raise ValueError(f"unknown pulse axis {self.axis!r}")
        if self.axis == "frame-z" and self.duration != 0:
            raise ValueError("frame updates are instantaneous")
        if self.axis == "idle" and (self.angle != 0.0 or self.duration <= 0):
            raise ValueError("idle pulses have zero angle and positive duration")

    @property
    def is_noisy(self) -> bool:
        return self.axis in NOISY_AXES

    @property
    def detuning_phase(self) -> float:
        """Half-angle of the z error per unit detuning: duration * pi/4."""
        return self.duration * np.pi / 4.0


@dataclass(frozen=True)
class CliffordElement:
    index: int
    pulses: tuple[PhysicalPulse, ...]
    net_unitary: np.ndarray

    @property
    def duration(self) -> int:
        return sum(p.duration for p in self.pulses)

    @property
    def noisy_pulse_count(self) -> int:
        return sum(1 for p in self.pulses if p.is_noisy)


def noisy_pulse_unitary(pulse: PhysicalPulse, delta: float) -> np.ndarray:
    """Unitary of one pulse under a concurrent dimensionless detuning.

    Driven pulses and idles evolve under
    ``exp(-i [ (angle/2) sigma_axis + (duration * pi/4) * delta * sigma_z ])``;
    frame updates are exact and noise-free.
    """
    if abs(delta) > 0.5:
        warnings.warn(f"detuning delta={delta} outside perturbative range")
    if pulse.axis == "frame-z":
        return rotation("z", pulse.angle)
    vz = pulse.detuning_phase * delta
    if pulse.axis == "idle":
        return su2_exp(0.0, 0.0, vz)
    if pulse.axis == "x":
        return su2_exp(pulse.angle / 2.0, 0.0, vz)
    return su2_exp(0.0, pulse.angle / 2.0, vz)


_Z_IMAGE_PULSES = (
    None,
    ("x", 2),   # angle pi
    ("y", 1),   # +pi/2
    ("y", -1),  # -pi/2
    ("x", -1),
    ("x", 1),
)
_FRAME_ANGLES = (0, 1, 2, -1)  # units of pi/2


def canonical_pulse_table(idle_duration: int = DEFAULT_IDLE_DURATION) -> list[dict]:
    """Regenerate the decomposition table (see module docstring)."""
    table = []
    for zi in range(6):
        for fi, frame in enumerate(_FRAME_ANGLES):
            index = 4 * zi + fi
            pulses = []
            if index == 0:
                pulses.append({"axis": "idle", "angle_units_of_pi_over_2": 0,
                               "duration": idle_duration})
            else:
                if frame != 0:
                    pulses.append({"axis": "frame-z",
                                   "angle_units_of_pi_over_2": frame, "duration": 0})
                q = _Z_IMAGE_PULSES[zi]
                if q is not None:
                    axis, units = q
                    pulses.append({"axis": axis, "angle_units_of_pi_over_2": units,
                                   "duration": abs(units)})
            table.append({"index": index, "pulses": pulses})
    return table


def load_pulse_table() -> dict:
    """Load the shipped decomposition table."""
    text = resources.files("noisewalk.data").joinpath("clifford_pulses.json").read_text()
    return json.loads(text)


def _element_from_entry(entry: dict, idle_duration: int | None) -> CliffordElement:
    pulses = []
    for p in entry["pulses"]:
        duration = p["duration"]
        if p["axis"] == "idle" and idle_duration is not None:
            duration = idle_duration
        pulses.append(
            PhysicalPulse(p["axis"], p["angle_units_of_pi_over_2"] * np.pi / 2.0, duration)
        )
    net = ID2.copy()
    for pulse in pulses:
        net = noisy_pulse_unitary(pulse, 0.0) @ net
    return CliffordElement(entry["index"], tuple(pulses), net)


class CliffordGroup:
    """The 24-element group with composition tables and pulse decompositions."""

    def __init__(self, elements: list[CliffordElement]):
        if len(elements) != 24:
            raise ValueError(f"expected 24 elements, got {len(elements)}")
        self.elements = elements
        nets = [e.net_unitary for e in elements]
        for i in range(24):
            for j in range(i + 1, 24):
                if phase_equal(nets[i], nets[j]):
                    raise ValueError(f"elements {i} and {j} coincide up to phase")
        self.mul_table = np.empty((24, 24), dtype=np.intp)
        for i in range(24):
            for j in range(24):
                self.mul_table[i, j] = self.find_index(nets[i] @ nets[j])
        self.identity_index = self.find_index(ID2)
        self.inverse_table = np.empty(24, dtype=np.intp)
        for i in range(24):
            self.inverse_table[i] = int(
                np.nonzero(self.mul_table[i] == self.identity_index)[0][0]
            )
        # image_code[a][k]: code of K^dag sigma_a K for element k
        self.image_codes = {
            axis: np.array(
                [_pauli_code(conjugate_pauli(e.net_unitary, SignedPauli(axis, 1)))
                 for e in self.elements],
                dtype=np.intp,
            )
            for axis in ("x", "y", "z")
        }

    def find_index(self, u: np.ndarray) -> int:
        for k, e in enumerate(self.elements):
            if phase_equal(u, e.net_unitary):
                return k
        raise ValueError("unitary is not a Clifford (up to phase)")

    @property
    def identity(self) -> CliffordElement:
        return self.elements[self.identity_index]

    def compose(self, a: CliffordElement, b: CliffordElement) -> CliffordElement:
        """Group element equal to the matrix product ``a . b`` up to phase."""
        return self.elements[self.mul_table[a.index, b.index]]

    def inverse(self, a: CliffordElement) -> CliffordElement:
        return self.elements[self.inverse_table[a.index]]

    def product_index(self, seq) -> int:
        """Index of the net unitary of a time-ordered sequence."""
        k = self.identity_index
        for g in seq:
            k = self.mul_table[_as_index(g), k]
        return int(k)

    def product(self, seq) -> CliffordElement:
        return self.elements[self.product_index(seq)]

    def inverse_of_product(self, seq) -> CliffordElement:
        """Element ``G`` with ``compose(product(seq), G) ~ identity``.

        Since ``G`` is the group inverse, appending it in time (so that it
        left-multiplies the net product) also restores the identity.
        """
        if len(seq) == 0:
            raise ValueError("empty sequence")
        return self.elements[self.inverse_table[self.product_index(seq)]]


def _pauli_code(p: SignedPauli) -> int:
    return SIGNED_PAULIS.index(p)


def _as_index(g) -> int:
    return g.index if isinstance(g, CliffordElement) else int(g)


@lru_cache(maxsize=4)
def build_clifford_group(idle_duration: int = DEFAULT_IDLE_DURATION) -> CliffordGroup:
    """Build the group from the shipped table.

    ``idle_duration`` overrides the identity idle length (1 = pi/2 time,
    2 = pi time).
    """
    data = load_pulse_table()
    if data["version"] != TABLE_VERSION:
        raise ValueError(f"unsupported table version {data['version']}")
    override = None if idle_duration == data["idle_duration"] else idle_duration
    elements = [_element_from_entry(e, override) for e in data["cliffords"]]
    return CliffordGroup(elements)


def compose(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    return build_clifford_group().compose(a, b)


def inverse_of_product(seq) -> CliffordElement:
    return build_clifford_group().inverse_of_product(seq)


def flatten_pulses(seq) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flatten a gate sequence into pulse-stream arrays for the kernels.

    Returns ``(axis_codes, angles, detuning_phases, slot_index)`` where
    ``axis_codes`` uses 0=x, 1=y, 2=idle, 3=frame-z and ``slot_index`` maps
    each pulse to its noise slot (-1 for frame updates).
    """
    ax, th, he, slots = [], [], [], []
    slot = 0
    for g in seq:
        for p in g.pulses:
            ax.append(PULSE_AXES.index(p.axis))
            th.append(p.angle)
            he.append(p.detuning_phase)
            if p.is_noisy:
                slots.append(slot)
                slot += 1
            else:
                slots.append(-1)
    return (
        np.array(ax, dtype=np.int8),
        np.array(th, dtype=np.float64),
        np.array(he, dtype=np.float64),
        np.array(slots, dtype=np.int64),
    )


def noise_slot_count(seq) -> int:
    return sum(g.noisy_pulse_count for g in seq)


def sequence_unitary(seq, noise_values) -> np.ndarray:
    """Net unitary of a time-ordered gate sequence under per-pulse detunings.

    ``noise_values`` supplies one delta per noisy pulse in the flattened
    stream (frame updates consume none).
    """
    values = np.asarray(noise_values, dtype=float)
    expected = noise_slot_count(seq)
    if values.shape != (expected,):
        raise ValueError(
            f"noise trajectory has shape {values.shape}, expected ({expected},)"
        )
    u = ID2.copy()
    slot = 0
    for g in seq:
        for p in g.pulses:
            if p.is_noisy:
                u = noisy_pulse_unitary(p, values[slot]) @ u
                slot += 1
            else:
                u = noisy_pulse_unitary(p, 0.0) @ u
    return u
