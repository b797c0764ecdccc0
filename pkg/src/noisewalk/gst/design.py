"""Experiment designs: fiducial-sandwiched germ powers with length doubling.

The sequence list is built in a fixed order and deduplicated on the full
gate string, keeping first occurrences:

1. all 36 fiducial pairs (the Gram block),
2. every bare gate in all 36 fiducial sandwiches,
3. for each maximum length ``L`` in ``(1, 2, 4, ..., 256)`` and each germ,
   the germ repeated ``floor(L / len(germ))`` times (skipped when zero)
   in all 36 fiducial sandwiches.

For the standard three-gate set and its 11 germs this enumerates exactly
2737 distinct sequences.  The extended five-gate design swaps in a
39-germ set: the 11 standard germs, their images under sign inversion of
every rotation, and rule-generated mixed-sign compounds (shipped as a
versioned data file; see `generate_extended_germs`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources

from .gatesets import EXTENDED_LABELS, STANDARD_LABELS

GERMS_VERSION = 1

FIDUCIALS = (
    (),
    ("Gx",),
    ("Gy",),
    ("Gx", "Gx"),
    ("Gx", "Gx", "Gx"),
    ("Gy", "Gy", "Gy"),
)

STANDARD_GERMS = (
    ("Gx",),
    ("Gy",),
    ("Gi",),
    ("Gx", "Gy"),
    ("Gx", "Gy", "Gi"),
    ("Gx", "Gi", "Gy"),
    ("Gx", "Gi", "Gi"),
    ("Gy", "Gi", "Gi"),
    ("Gx", "Gx", "Gi", "Gy"),
    ("Gx", "Gy", "Gy", "Gi"),
    ("Gx", "Gx", "Gy", "Gx", "Gy", "Gy"),
)

MAX_LENGTHS = (1, 2, 4, 8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class SequenceSpec:
    """One design entry: prep fiducial, repeated-germ core, meas fiducial."""

    prep: int
    core: tuple
    meas: int
    max_len: int

    @property
    def labels(self) -> tuple:
        return FIDUCIALS[self.prep] + self.core + FIDUCIALS[self.meas]


@dataclass
class GSTExperimentDesign:
    gate_labels: tuple
    germs: tuple
    max_lengths: tuple
    sequences: list

    @property
    def n_sequences(self) -> int:
        return len(self.sequences)

    def subset(self, max_len: int) -> list:
        return [s for s in self.sequences if s.max_len <= max_len]

    def to_dict(self) -> dict:
        return {
            "gate_labels": list(self.gate_labels),
            "fiducials": [list(f) for f in FIDUCIALS],
            "germs": [list(g) for g in self.germs],
            "max_lengths": list(self.max_lengths),
            "sequences": [list(s.labels) for s in self.sequences],
        }


def _build(gate_labels, germs, max_lengths) -> GSTExperimentDesign:
    seen = set()
    sequences = []

    def add(prep, core, meas, max_len):
        labels = FIDUCIALS[prep] + core + FIDUCIALS[meas]
        if labels not in seen:
            seen.add(labels)
            sequences.append(SequenceSpec(prep, core, meas, max_len))

    pairs = list(itertools.product(range(len(FIDUCIALS)), range(len(FIDUCIALS))))
    for prep, meas in pairs:
        add(prep, (), meas, 1)
    for gate in gate_labels:
        for prep, meas in pairs:
            add(prep, (gate,), meas, 1)
    for max_len in max_lengths:
        for germ in germs:
            reps = max_len // len(germ)
            if reps < 1:
                continue
            core = germ * reps
            for prep, meas in pairs:
                add(prep, core, meas, max_len)
    return GSTExperimentDesign(tuple(gate_labels), tuple(germs), tuple(max_lengths), sequences)


def standard_design() -> GSTExperimentDesign:
    """The three-gate design; exactly 2737 sequences."""
    return _build(STANDARD_LABELS, STANDARD_GERMS, MAX_LENGTHS)


def _invert_label(lab: str) -> str:
    return {"Gx": "Gnx", "Gnx": "Gx", "Gy": "Gny", "Gny": "Gy", "Gi": "Gi"}[lab]


def _cyclic_canonical(germ: tuple) -> tuple:
    return min(germ[k:] + germ[:k] for k in range(len(germ)))


def generate_extended_germs(total: int = 39) -> list:
    """Rule-generated germ list for the five-gate set.

    Start from the 11 standard germs; add each germ's sign-inverted image
    when new; then scan mixed-sign candidates of lengths 2..6 over all
    five labels in enumeration order, keeping those that contain a
    negative rotation and are new up to cyclic rotation, until ``total``
    germs are collected.
    """
    germs = list(STANDARD_GERMS)
    seen_cyclic = {_cyclic_canonical(g) for g in germs}
    for germ in STANDARD_GERMS:
        image = tuple(_invert_label(lab) for lab in germ)
        c = _cyclic_canonical(image)
        if c not in seen_cyclic:
            seen_cyclic.add(c)
            germs.append(image)
    labels = ("Gx", "Gy", "Gi", "Gnx", "Gny")
    for length in range(2, 7):
        if len(germs) >= total:
            break
        for combo in itertools.product(labels, repeat=length):
            if len(germs) >= total:
                break
            if not any(lab in ("Gnx", "Gny") for lab in combo):
                continue
            c = _cyclic_canonical(combo)
            if c != combo or c in seen_cyclic:
                continue
            seen_cyclic.add(c)
            germs.append(combo)
    if len(germs) != total:
        raise RuntimeError(f"germ generation produced {len(germs)} != {total}")
    return germs


def load_extended_germs() -> list:
    text = resources.files("noisewalk.data").joinpath("extended_germs.json").read_text()
    data = json.loads(text)
    if data["version"] != GERMS_VERSION:
        raise ValueError(f"unsupported germ file version {data['version']}")
    return [tuple(g) for g in data["germs"]]


def extended_design() -> GSTExperimentDesign:
    """The five-gate design with the 39-germ set from the data file."""
    return _build(EXTENDED_LABELS, tuple(load_extended_germs()), MAX_LENGTHS)
