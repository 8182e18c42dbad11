"""Kernel lane selection.

CKN_VERIFY_BACKEND=pure forces the numpy lane, =fast insists on the compiled
one (ImportError if it was not built), anything else or unset picks the
compiled lane when importable.  The choice is made once at import.
"""

import os

from . import _purekernels

try:
    from . import _fastkernels
except ImportError:
    _fastkernels = None

_requested = os.environ.get("CKN_VERIFY_BACKEND", "auto").lower()

if _requested == "pure":
    _active = _purekernels
elif _requested == "fast":
    if _fastkernels is None:
        raise ImportError(
            "CKN_VERIFY_BACKEND=fast but the compiled kernels are not built; "
            "reinstall with Cython and a C compiler available"
        )
    _active = _fastkernels
else:
    _active = _fastkernels if _fastkernels is not None else _purekernels


def kernels():
    """The active kernel module (hyp1f1, hyp1f1_many, BACKEND_KIND)."""
    return _active


def available_kernels():
    """All importable lanes, keyed by kind; used by benchmarks and parity tests."""
    lanes = {"pure": _purekernels}
    if _fastkernels is not None:
        lanes["compiled"] = _fastkernels
    return lanes


def backend_kind() -> str:
    return _active.BACKEND_KIND
