"""Engineered detuning-noise ensembles in the two correlation extremes.

Samples are dimensionless detunings ``delta = Delta / Omega`` drawn from
``N(0, sigma^2)``.  Quasi-DC realizations hold one draw fixed across every
pulse slot of a sequence (maximal temporal correlation); white realizations
redraw independently per slot (no correlation).  All sampling is backed by
numpy's PCG64 generator seeded explicitly, so ensembles are reproducible
bit-for-bit from their spec.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NOISE_KINDS = ("quasi-dc", "white")

#: PRNG identification recorded in run metadata alongside every dataset.
PRNG_METADATA = {"library": "numpy", "algorithm": "PCG64", "stream_split": "SeedSequence.spawn_key"}


def normalize_kind(kind: str) -> str:
    k = {"dc": "quasi-dc"}.get(kind, kind)
    if k not in NOISE_KINDS:
        raise ValueError(f"unknown noise kind {kind!r}; expected one of {NOISE_KINDS}")
    return k


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Child generator at a named position in the seed tree.

    Streams are split with ``SeedSequence(master_seed, spawn_key=path)``;
    distinct paths are statistically independent and reproducible.
    """
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    sigma: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "sigma": self.sigma, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "NoiseSpec":
        return cls(d["kind"], d["sigma"], d["seed"])


@dataclass(frozen=True)
class NoiseRealization:
    """One detuning trajectory: a value per pulse slot."""

    values: np.ndarray
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.kind == "quasi-dc" and self.values.size > 1:
            if np.ptp(self.values) != 0.0:
                raise ValueError("quasi-dc realization must be constant across slots")


@dataclass(frozen=True)
class NoiseEnsemble:
    """N reproducible realizations with a common spec.

    ``values`` has shape ``(n_realizations, pulse_count)``.
    """

    spec: NoiseSpec
    values: np.ndarray

    @property
    def n_realizations(self) -> int:
        return self.values.shape[0]

    @property
    def pulse_count(self) -> int:
        return self.values.shape[1]

    def realization(self, n: int) -> NoiseRealization:
        return NoiseRealization(self.values[n], self.spec.kind)

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "values": self.values.tolist()}


def sample_ensemble(spec: NoiseSpec, n_realizations: int, pulse_count: int) -> NoiseEnsemble:
    """Draw an ensemble; deterministic given ``spec.seed``.

    Quasi-DC: one Gaussian draw per realization, broadcast to all slots.
    White: independent draws per (realization, slot).
    """
    if pulse_count < 1:
        raise ValueError("pulse_count must be >= 1")
    if n_realizations < 1:
        raise ValueError("n_realizations must be >= 1")
    rng = derive_rng(spec.seed)
    if spec.kind == "quasi-dc":
        draws = rng.normal(0.0, spec.sigma, size=n_realizations)
        values = np.repeat(draws[:, None], pulse_count, axis=1)
    else:
        values = rng.normal(0.0, spec.sigma, size=(n_realizations, pulse_count))
    return NoiseEnsemble(spec, values)


def ensemble_rms(ensemble: NoiseEnsemble) -> float:
    """Root-mean-square detuning over all values of all realizations."""
    if ensemble.values.size == 0:
        raise ValueError("empty ensemble")
    return float(np.sqrt(np.mean(ensemble.values**2)))
