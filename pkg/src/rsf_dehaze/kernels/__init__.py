"""Backend dispatch for the hot numeric kernels.

Two interchangeable implementations exist:

* ``numba_impl`` -- @njit direct-loop kernels (default when numba imports),
* ``numpy_impl`` -- vectorized pure-numpy fallback.

Selection happens once at import time from the ``RSF_BACKEND`` environment
variable (``numba`` or ``numpy``).  ``benchmarks/benchmark_backends.py``
compares the two.
"""

import os

from . import numpy_impl

_requested = os.environ.get("RSF_BACKEND", "numba").strip().lower()

if _requested not in ("numba", "numpy"):
    raise RuntimeError(f"RSF_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

_impl = numpy_impl
_backend_name = "numpy"

if _requested == "numba":
    try:
        from . import numba_impl

        _impl = numba_impl
        _backend_name = "numba"
    except ImportError:
        pass  # numba missing: stay on the numpy path


def backend_name():
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _backend_name


def warmup():
    """Precompile jitted kernels; no-op on the numpy path."""
    if _backend_name == "numba":
        _impl.warmup()


def conv2d_forward(xpad, weight, bias):
    return _impl.conv2d_forward(xpad, weight, bias)


def conv2d_input_grad(gout, weight):
    return _impl.conv2d_input_grad(gout, weight)


def conv2d_weight_grad(xpad, gout):
    return _impl.conv2d_weight_grad(xpad, gout)


def unfilter_scanlines(raw, n_rows, row_bytes, bpp):
    return _impl.unfilter_scanlines(raw, n_rows, row_bytes, bpp)
