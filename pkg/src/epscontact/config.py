"""Global numerical tolerance.

"Zero" throughout the library means |x| <= tol on O(1)-normalized inputs.
The default is 1e-9 absolute and can be overridden per call, globally via
:func:`set_tol`, or by the ``EPSCONTACT_TOL`` environment variable.
"""

from __future__ import annotations

import os

DEFAULT_TOL = 1e-9

_tol = float(os.environ.get("EPSCONTACT_TOL", DEFAULT_TOL))


def get_tol(tol: float | None = None) -> float:
    """Resolve an optional per-call tolerance against the global setting."""
    if tol is None:
        return _tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return float(tol)


def set_tol(tol: float) -> None:
    global _tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _tol = float(tol)
