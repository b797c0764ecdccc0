"""Forward simulation of design sequences and synthetic datasets.

Probabilities are ``effect . PTM(meas fid) . core . PTM(prep fid) . rho``.
The forward pass factorizes every core into powers of its primitive period
and builds the powers by a doubling ladder, so a full-design evaluation
costs a few hundred 4x4 products; this keeps iterative fitting cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..noise import derive_rng
from .design import FIDUCIALS, GSTExperimentDesign, SequenceSpec
from .gatesets import GateSet


def _primitive_period(core: tuple) -> tuple:
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and core == core[:d] * (n // d):
            return core[:d]
    return core


class ForwardPlan:
    """Precomputed core factorizations for a fixed sequence list."""

    def __init__(self, sequences: list):
        self.sequences = sequences
        self.core_of = []
        self.powers: dict = {}
        core_ids: dict = {}
        for s in sequences:
            if s.core not in core_ids:
                core_ids[s.core] = True
                if s.core:
                    base = _primitive_period(s.core)
                    self.powers.setdefault(base, set()).add(len(s.core) // len(base))
        self.powers = {b: sorted(e) for b, e in self.powers.items()}

    def core_matrices(self, gates: dict) -> dict:
        mats = {(): np.eye(4)}
        for base, exponents in self.powers.items():
            m_base = np.eye(4)
            for lab in base:
                m_base = gates[lab] @ m_base
            ladder = {1: m_base}

            def power(e):
                if e in ladder:
                    return ladder[e]
                m = power(e // 2)
                m = m @ m
                if e % 2:
                    m = m_base @ m
                ladder[e] = m
                return m

            for e in exponents:
                mats[base * e] = power(e)
        return mats

    def probabilities(self, gates: dict, rho: np.ndarray, effect: np.ndarray) -> np.ndarray:
        fid_mats = []
        for fid in FIDUCIALS:
            m = np.eye(4)
            for lab in fid:
                m = gates[lab] @ m
            fid_mats.append(m)
        rho_cols = [m @ rho for m in fid_mats]
        effect_rows = [effect @ m for m in fid_mats]
        cores = self.core_matrices(gates)
        out = np.empty(len(self.sequences))
        for k, s in enumerate(self.sequences):
            out[k] = effect_rows[s.meas] @ cores[s.core] @ rho_cols[s.prep]
        return out


def forward_probabilities(gateset: GateSet, design: GSTExperimentDesign) -> np.ndarray:
    """Exact outcome probabilities for every design sequence, in order."""
    return ForwardPlan(design.sequences).probabilities(
        gateset.gates, gateset.rho, gateset.effect
    )


@dataclass
class GSTDataset:
    """Per-sequence outcome estimates for one design.

    ``estimates`` are exact probabilities when ``shots`` is None, else
    binomial frequencies ``successes / shots``.
    """

    design: GSTExperimentDesign
    estimates: np.ndarray
    shots: int | None
    seed: int | None = None

    def lookup(self) -> dict:
        return {s.labels: float(p) for s, p in zip(self.design.sequences, self.estimates)}

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "seed": self.seed,
            "estimator": "binomial-mle",
            "sequences": [list(s.labels) for s in self.design.sequences],
            "estimates": self.estimates.tolist(),
        }


def simulate_dataset(
    gateset: GateSet,
    design: GSTExperimentDesign,
    shots: int | None = None,
    seed: int = 0,
) -> GSTDataset:
    """Simulate the design; probabilities are clipped to [0, 1] before
    binomial sampling."""
    p = np.clip(forward_probabilities(gateset, design), 0.0, 1.0)
    if shots is None:
        return GSTDataset(design, p, None, None)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = derive_rng(seed, 4)
    counts = rng.binomial(shots, p)
    return GSTDataset(design, counts / shots, shots, seed)
