"""Backend selection for the hot numerical kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is imported. Both are always importable by name for comparison.
"""
from . import _neumann_py

try:
    from . import _neumann as _neumann_ext
except ImportError:  # extension not built
    _neumann_ext = None

BACKEND = "cython" if _neumann_ext is not None else "python"

neumann_sum_py = _neumann_py.neumann_sum
neumann_sum_ext = _neumann_ext.neumann_sum if _neumann_ext is not None else None
neumann_sum = neumann_sum_ext or neumann_sum_py
