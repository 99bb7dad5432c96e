"""Kernel selection.

The compiled extension is used when it imports; set ``PIFLAT_PURE_PYTHON=1``
to force the pure Python kernels (the benchmark and the kernel equivalence
tests use both).
"""
import os

from . import _pykernels

if os.environ.get("PIFLAT_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

add = _impl.add
sub = _impl.sub
neg = _impl.neg
scale = _impl.scale
mul = _impl.mul
mul_term = _impl.mul_term
divexact = _impl.divexact


def load(backend):
    """Return the kernel module for ``backend`` ("python" or "cython")."""
    if backend == "python":
        return _pykernels
    from . import _ckernels

    return _ckernels
