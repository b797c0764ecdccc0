"""Simulation kernels: compiled extension with a numpy fallback.

The compiled backend is selected at import when available; set the
environment variable ``NOISEWALK_NO_EXT=1`` to force the numpy fallback
(used by the parity tests and the benchmark).
"""

import os

from . import fallback

if os.environ.get("NOISEWALK_NO_EXT"):
    _impl = fallback
    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = fallback
        BACKEND = "numpy"

sequence_unitaries = _impl.sequence_unitaries
survival_batch = _impl.survival_batch
pauli_rotation_product = _impl.pauli_rotation_product

__all__ = [
    "BACKEND",
    "fallback",
    "pauli_rotation_product",
    "sequence_unitaries",
    "survival_batch",
]
