"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is loaded. Setting ``PRODINEQ_PURE_PYTHON=1``
forces the fallback.
"""

import os

if os.environ.get("PRODINEQ_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

power_product = _impl.power_product
taylor_shift = _impl.taylor_shift
hom_eval = _impl.hom_eval
divide_linear = _impl.divide_linear
prem = _impl.prem

__all__ = ["BACKEND", "power_product", "taylor_shift", "hom_eval", "divide_linear", "prem"]
