"""Hot kernels with a compiled backend and a numpy fallback.

The compiled extension is used when it was built and importable. Set
``KMGWO_PURE_PYTHON=1`` to force the numpy versions.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"

if os.environ.get("KMGWO_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels


def _contig(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def gwo_sweep(positions, leaders, a, draws, lower, upper):
    if _impl is _pykernels:
        return _pykernels.gwo_sweep(positions, leaders, a, draws, lower, upper)
    return _impl.gwo_sweep(
        _contig(positions), _contig(leaders), float(a), _contig(draws), _contig(lower), _contig(upper)
    )


def lennard_jones(X):
    if _impl is _pykernels:
        return _pykernels.lennard_jones(X)
    return _impl.lennard_jones(_contig(X))


def chebyshev(X):
    if _impl is _pykernels:
        return _pykernels.chebyshev(X)
    return _impl.chebyshev(_contig(X))


__all__ = ["BACKEND", "gwo_sweep", "lennard_jones", "chebyshev"]
