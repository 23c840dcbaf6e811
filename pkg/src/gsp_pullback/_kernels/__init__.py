"""Hot integer kernels with a compiled backend and a numpy fallback.

Set ``GSP_PULLBACK_PURE=1`` to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("GSP_PULLBACK_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import count_symplectic_mod_p, q_table  # noqa: F401

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass
if BACKEND == "python":
    from ._pykernels import count_symplectic_mod_p, q_table  # noqa: F401

from . import _pykernels as python_kernels  # noqa: E402

__all__ = ["BACKEND", "q_table", "count_symplectic_mod_p", "python_kernels"]
