"""Caps, backend selection and run configuration.

Caps make exhaustive scans' cost explicit: any enumeration that would emit
more objects than the cap raises ``CapExceededError`` instead of silently
grinding.  The kernel backend is chosen per process via the
``STRONGBLOCKS_BACKEND`` environment variable (``numba`` or ``numpy``);
the default is numba when importable, with the pure-numpy path as fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

# Enumeration caps (counts of objects, not bytes).
ENUM_CAP = 1 << 22          # projective points / hyperplanes / codim-2 spaces
CODEWORD_CAP = 1 << 22      # messages scanned by distance/minimality engines
SUBSET_CAP = 1 << 22        # subset-times-point work in saturation checks
TOWER_CAP = 1 << 24         # largest top-field size a tower may have
LOG_TABLE_CAP = 1 << 20     # build full exp/log tables up to this field size
KERNEL_FIELD_CAP = 1 << 10  # largest field usable in array kernels

DEFAULT_SEED = 1729

_BACKEND_ENV = "STRONGBLOCKS_BACKEND"


def backend_name() -> str:
    """Resolve the active kernel backend ('numba' or 'numpy')."""
    value = os.environ.get(_BACKEND_ENV, "").strip().lower()
    if value in ("numba", "numpy"):
        return value
    if value not in ("", "auto"):
        raise ValueError(f"unknown {_BACKEND_ENV}={value!r}; use 'numba' or 'numpy'")
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


@dataclass
class RunConfig:
    """Per-run knobs shared by the CLI and the reproduction suites."""

    cap_enum: int = ENUM_CAP
    cap_codewords: int = CODEWORD_CAP
    cap_subsets: int = SUBSET_CAP
    threads: int = 1
    seed: int = DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.cap_enum <= 0 or self.cap_codewords <= 0 or self.cap_subsets <= 0:
            raise ValueError("caps must be positive")
        if self.threads < 1:
            raise ValueError("thread count must be >= 1")
