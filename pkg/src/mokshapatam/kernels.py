"""Select the compiled simulation kernel when it is built, else the numpy one.

Set ``MOKSHAPATAM_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

WON, CUTOFF, TRAPPED = _kernels_py.WON, _kernels_py.CUTOFF, _kernels_py.TRAPPED

BACKEND = "python"
simulate_batch = _kernels_py.simulate_batch

if not os.environ.get("MOKSHAPATAM_PURE_PYTHON"):
    try:
        from ._kernels import simulate_batch  # noqa: F811
    except ImportError:
        pass
    else:
        BACKEND = "cython"

python_simulate_batch = _kernels_py.simulate_batch
