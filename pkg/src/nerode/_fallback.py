"""Pure-Python kernels used when the compiled extension is unavailable.

Both functions take machines as integer tables indexed ``[state, input]``
and must agree bit-for-bit with :mod:`nerode._kernels`.
"""

import numpy as np


def _relabel(signatures):
    ids = {}
    out = [ids.setdefault(sig, len(ids)) for sig in signatures]
    return out, len(ids)


def refine(trans, emit):
    """Moore partition refinement.

    Returns ``(block, count)`` where ``block[s]`` is the class of state ``s``.
    Classes are numbered by the first state (in index order) that falls
    into them, so the numbering depends only on the partition.
    """
    t = trans.tolist()
    block, count = _relabel(tuple(row) for row in emit.tolist())
    while True:
        new, new_count = _relabel(
            (block[s],) + tuple(block[x] for x in t[s]) for s in range(len(t))
        )
        if new_count == count:
            return np.asarray(new, dtype=np.intc), count
        block, count = new, new_count


def run(trans, emit, state, word):
    """Feed ``word`` from ``state``; return ``(outputs, final_state)``."""
    out = np.empty(len(word), dtype=np.intc)
    for i, a in enumerate(word.tolist()):
        out[i] = emit[state, a]
        state = int(trans[state, a])
    return out, state
