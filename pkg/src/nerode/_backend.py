"""Select the compiled kernels when importable, the pure-Python ones otherwise.

Set ``NERODE_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

if os.environ.get("NERODE_PURE_PYTHON"):
    from . import _fallback as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _fallback as _impl

BACKEND = "cython" if _impl.__name__.endswith("_kernels") else "python"


def as_table(a):
    return np.ascontiguousarray(a, dtype=np.intc)


def refine(trans, emit):
    return _impl.refine(as_table(trans), as_table(emit))


def run(trans, emit, state, word):
    return _impl.run(as_table(trans), as_table(emit), int(state),
                     np.ascontiguousarray(word, dtype=np.intc))
