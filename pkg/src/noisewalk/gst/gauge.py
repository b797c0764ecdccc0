"""Gauge optimization: find the similarity transform bringing an estimated
gate set closest to its targets in Frobenius distance.

Observable probabilities are invariant under ``G -> T G T^-1`` with
``rho -> T rho`` and ``effect -> effect T^-1``; per-gate distance measures
are not.  The default schedule runs two rounds: first over the full
trace-preserving gauge group (12 parameters), then a unitary polish
(3 rotation parameters).

The SPAM terms enter the objective with weight ``w_spam``; the default
1e-3 weights gates far above SPAM, which is what lets a frame rotation
absorb a common tilt of the rotation axes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from .gatesets import GateSet

GAUGE_GROUPS = ("none", "unitary", "tp-then-unitary", "full-tp")

DEFAULT_SPAM_WEIGHT = 1e-3


@dataclass(frozen=True)
class GaugeTransform:
    matrix: np.ndarray
    group: str
    objective: float
    flagged: bool = False


def _tp_matrix(params: np.ndarray) -> np.ndarray:
    t = np.eye(4)
    t[1:, 0] = params[:3]
    t[1:, 1:] = params[3:].reshape(3, 3)
    return t


def _unitary_matrix(params: np.ndarray) -> np.ndarray:
    wx, wy, wz = params
    omega = np.array([[0.0, -wz, wy], [wz, 0.0, -wx], [-wy, wx, 0.0]])
    t = np.eye(4)
    t[1:, 1:] = expm(omega)
    return t


def _residuals(t: np.ndarray, gs: GateSet, target: GateSet, w_spam: float) -> np.ndarray:
    ti = np.linalg.inv(t)
    parts = [(t @ gs.gates[lab] @ ti - target.gates[lab]).ravel() for lab in gs.labels]
    root = np.sqrt(w_spam)
    parts.append(root * (t @ gs.rho - target.rho))
    parts.append(root * (gs.effect @ ti - target.effect))
    return np.concatenate(parts)


def _objective(t, gs, target, w_spam) -> float:
    r = _residuals(t, gs, target, w_spam)
    return float(r @ r)


def _minimize_stage(make_t, x0, gs, target, w_spam):
    res = least_squares(
        lambda x: _residuals(make_t(x), gs, target, w_spam),
        x0,
        method="lm",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=20000,
    )
    return make_t(res.x)


def gauge_optimize(
    estimate: GateSet,
    target: GateSet,
    group: str = "tp-then-unitary",
    w_spam: float = DEFAULT_SPAM_WEIGHT,
) -> tuple[GateSet, GaugeTransform]:
    """Minimize the summed Frobenius distance to ``target`` over a gauge group.

    Returns the transformed gate set and the transform.  If optimization
    fails to improve on the identity, the identity gauge is returned
    flagged.
    """
    if group not in GAUGE_GROUPS:
        raise ValueError(f"unknown gauge group {group!r}")
    if set(estimate.labels) != set(target.labels):
        raise ValueError("estimate and target carry different gate labels")
    identity = np.eye(4)
    base = _objective(identity, estimate, target, w_spam)
    if group == "none":
        return estimate.copy(), GaugeTransform(identity, group, base)

    t_total = identity
    current = estimate
    tp_start = np.concatenate([np.zeros(3), np.eye(3).ravel()])
    try:
        if group in ("full-tp", "tp-then-unitary"):
            t1 = _minimize_stage(_tp_matrix, tp_start, current, target, w_spam)
            current = current.transform(t1)
            t_total = t1 @ t_total
        if group in ("unitary", "tp-then-unitary"):
            t2 = _minimize_stage(_unitary_matrix, np.zeros(3), current, target, w_spam)
            current = current.transform(t2)
            t_total = t2 @ t_total
    except (np.linalg.LinAlgError, ValueError) as exc:
        warnings.warn(f"gauge optimization diverged ({exc}); returning identity gauge")
        return estimate.copy(), GaugeTransform(identity, group, base, flagged=True)

    final = _objective(identity, current, target, w_spam)
    if not np.isfinite(final) or final > base + 1e-12:
        warnings.warn("gauge optimization failed to improve; returning identity gauge")
        return estimate.copy(), GaugeTransform(identity, group, base, flagged=True)
    return current, GaugeTransform(t_total, group, final)
