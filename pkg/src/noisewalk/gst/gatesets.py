"""Gate sets as Pauli transfer matrices with state-preparation and
measurement vectors, plus the injected error models.

Gate labels: ``Gi`` (idle identity), ``Gx``/``Gy`` (+pi/2 rotations), and
for the extended set ``Gnx``/``Gny`` (-pi/2 rotations).  Each gate is
defined by a timed physical pulse, so detuning errors follow the same
concurrent model as the benchmarking simulator, idle included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..cliffords import PhysicalPulse, noisy_pulse_unitary
from ..pauli import EFFECT_ZERO, RHO_ZERO, unitary_to_ptm

STANDARD_LABELS = ("Gi", "Gx", "Gy")
EXTENDED_LABELS = ("Gi", "Gx", "Gy", "Gnx", "Gny")

GATE_PULSES = {
    "Gi": PhysicalPulse("idle", 0.0, 2),
    "Gx": PhysicalPulse("x", np.pi / 2, 1),
    "Gy": PhysicalPulse("y", np.pi / 2, 1),
    "Gnx": PhysicalPulse("x", -np.pi / 2, 1),
    "Gny": PhysicalPulse("y", -np.pi / 2, 1),
}

ERROR_KINDS = ("none", "overrotation", "detuning")


@dataclass(frozen=True)
class ErrorModel:
    """Injected coherent error: angle scaling or concurrent detuning.

    Overrotation maps every driven angle ``theta -> (1+magnitude) theta``
    and leaves the idle untouched; detuning applies the concurrent
    ``sigma_z`` term to every timed pulse, idles included.
    """

    kind: str
    magnitude: float = 0.0

    def __post_init__(self):
        if self.kind not in ERROR_KINDS:
            raise ValueError(f"unknown error kind {self.kind!r}")
        if self.kind != "none" and abs(self.magnitude) >= 0.5:
            raise ValueError("error magnitude must satisfy |m| < 0.5")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "magnitude": self.magnitude}

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorModel":
        return cls(d["kind"], d.get("magnitude", 0.0))


@dataclass
class GateSet:
    """Labelled PTMs plus SPAM vectors in the normalised Pauli basis."""

    labels: tuple
    gates: dict
    rho: np.ndarray
    effect: np.ndarray

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=float)
        self.effect = np.asarray(self.effect, dtype=float)
        for lab in self.labels:
            if lab not in self.gates:
                raise ValueError(f"missing gate {lab!r}")

    def copy(self) -> "GateSet":
        return GateSet(
            self.labels,
            {k: v.copy() for k, v in self.gates.items()},
            self.rho.copy(),
            self.effect.copy(),
        )

    def transform(self, t: np.ndarray) -> "GateSet":
        """Gauge transform: gates ``T G T^-1``, ``rho -> T rho``,
        ``effect -> effect T^-1``; all probabilities are unchanged."""
        ti = np.linalg.inv(t)
        return GateSet(
            self.labels,
            {k: t @ g @ ti for k, g in self.gates.items()},
            t @ self.rho,
            self.effect @ ti,
        )

    def probability(self, labels) -> float:
        v = self.rho.copy()
        for lab in labels:
            v = self.gates[lab] @ v
        return float(self.effect @ v)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "gates": {k: v.tolist() for k, v in self.gates.items()},
            "rho": self.rho.tolist(),
            "effect": self.effect.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GateSet":
        return cls(
            tuple(d["labels"]),
            {k: np.array(v) for k, v in d["gates"].items()},
            np.array(d["rho"]),
            np.array(d["effect"]),
        )


def gate_unitary(label: str, detuning: float = 0.0, overrotation: float = 0.0) -> np.ndarray:
    """2x2 unitary of a named gate under the injected errors."""
    pulse = GATE_PULSES[label]
    if overrotation != 0.0 and pulse.axis != "idle":
        pulse = PhysicalPulse(pulse.axis, pulse.angle * (1.0 + overrotation), pulse.duration)
    return noisy_pulse_unitary(pulse, detuning)


def ideal_gateset(extended: bool = False) -> GateSet:
    labels = EXTENDED_LABELS if extended else STANDARD_LABELS
    gates = {lab: unitary_to_ptm(gate_unitary(lab)) for lab in labels}
    return GateSet(labels, gates, RHO_ZERO.copy(), EFFECT_ZERO.copy())


def apply_error_model(ideal: GateSet, model: ErrorModel) -> GateSet:
    """Rebuild every gate from its pulse under the injected error."""
    if model.kind == "none" or model.magnitude == 0.0:
        return ideal.copy()
    kwargs = (
        {"detuning": model.magnitude}
        if model.kind == "detuning"
        else {"overrotation": model.magnitude}
    )
    gates = {lab: unitary_to_ptm(gate_unitary(lab, **kwargs)) for lab in ideal.labels}
    return GateSet(ideal.labels, gates, ideal.rho.copy(), ideal.effect.copy())
