"""Backend selection for the integer kernels.

numba is used when importable unless ``DGQ_DISABLE_NUMBA=1``; the pure-numpy
versions have the same signatures and results.  ``DGQ_THREADS`` caps the
numba thread pool.
"""
import os
import warnings

from . import _numpy

BACKEND = "numpy"
kernels = _numpy

if os.environ.get("DGQ_DISABLE_NUMBA", "0") not in ("1", "true", "yes"):
    try:
        import numba

        warnings.filterwarnings("ignore", message="The TBB threading layer")

        from . import _numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass
    else:
        kernels = _numba
        BACKEND = "numba"
        threads = os.environ.get("DGQ_THREADS")
        if threads:
            numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))

__all__ = ["BACKEND", "kernels"]
