"""Backend selection for the hot numerical kernels.

Two interchangeable kernel modules exist: ``_kernels_numba`` (jitted) and
``_kernels_numpy`` (pure numpy).  The environment variable ``QCAP_BACKEND``
picks one:

* ``auto`` (default): numba if importable, else numpy;
* ``numba``: require numba, raise if missing;
* ``numpy``: force the pure-numpy fallback.

The chosen module is re-exported as :data:`kernels`; everything above this
layer is backend-agnostic.
"""

import os

_VALID = ("auto", "numba", "numpy")
_requested = os.environ.get("QCAP_BACKEND", "auto").strip().lower()
if _requested not in _VALID:
    raise RuntimeError(
        "QCAP_BACKEND must be one of %r, got %r" % (_VALID, _requested)
    )

if _requested == "numpy":
    from . import _kernels_numpy as kernels

    NUMBA_ENABLED = False
elif _requested == "numba":
    from . import _kernels_numba as kernels

    NUMBA_ENABLED = True
else:
    try:
        from . import _kernels_numba as kernels

        NUMBA_ENABLED = True
    except ImportError:
        from . import _kernels_numpy as kernels

        NUMBA_ENABLED = False


def backend_name():
    """Name of the active kernel backend, 'numba' or 'numpy'."""
    return "numba" if NUMBA_ENABLED else "numpy"
