"""Brute-force reference computations.

None of these use the refinement kernels, the product-machine search or the
engine's graph routines; they walk the transition dictionaries directly.
"""

import itertools
from fractions import Fraction

import sympy

from nerode.signal import Sequence


def walk(m, state, word):
    """Outputs emitted while feeding ``word`` from ``state``."""
    out = []
    for a in word:
        out.append(m.emissions[state][a])
        state = m.transitions[state][a]
    return tuple(out), state


def words(symbols, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def distinguishability_classes(m, states, max_len):
    """Group states by their outputs on every word of length <= max_len."""
    syms = m.input_alphabet.symbols
    all_words = [w for w in words(syms, max_len) if w]
    sig = {s: tuple(walk(m, s, w)[0] for w in all_words) for s in states}
    return len(set(sig.values())), sig


def xc_predecessor_fixpoint(m):
    """Keep only states with a predecessor inside the current set, until stable.

    What survives is the set of states with arbitrarily long backward paths.
    """
    current = set(m.states)
    while True:
        keep = {t for s in current for t in m.transitions[s].values() if t in current}
        keep &= current
        if keep == current:
            return current
        current = keep


def shortest_distinguishing_word(m1, m2, max_len):
    syms = m1.input_alphabet.symbols
    for w in words(syms, max_len, 1):
        if walk(m1, m1.rest_state, w)[0] != walk(m2, m2.rest_state, w)[0]:
            return w
    return None


def io_agrees_on_words(sys1, sys2, alpha, max_len, tail=2):
    """Compare the two systems on every word of length <= max_len placed at 0."""
    for w in words(alpha.symbols, max_len):
        u = Sequence(alpha, 0, w)
        lo, hi = -1, len(w) + tail
        if sys1.evaluate(u, lo, hi) != sys2.evaluate(u, lo, hi):
            return False, w
    return True, None


def reachability_observability_rank(sys):
    """Dimension of the reachable modulo unobservable part, via sympy."""
    n = sys.order
    if n == 0:
        return 0
    A = sympy.Matrix(sys.A.to_rows())
    B = sympy.Matrix(sys.B.to_rows())
    C = sympy.Matrix(sys.C.to_rows())
    reach = sympy.Matrix.hstack(*[A ** k * B for k in range(n)])
    obs = sympy.Matrix.vstack(*[C * A ** k for k in range(n)])
    return (obs * reach).rank()


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as lists of 0/1 ints."""
    vecs = [int("".join(str(v & 1) for v in r), 2) if r else 0 for r in rows]
    rank = 0
    while vecs:
        pivot = max(vecs)
        vecs.remove(pivot)
        if pivot == 0:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        vecs = [v ^ pivot if (v >> top) & 1 else v for v in vecs]
    return rank


def gf2_matmul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) % 2
             for j in range(len(Y[0]))] for i in range(len(X))]


def gf2_quotient_dimension(sys):
    """``dim(reachable) - dim(reachable ∩ unobservable)`` over GF(2)."""
    n = sys.order
    if n == 0:
        return 0
    A = [list(r) for r in sys.A]
    B = [list(r) for r in sys.B]
    C = [list(r) for r in sys.C]
    reach_cols, cur = [], B
    for _ in range(n):
        reach_cols.append([r[0] for r in cur])
        cur = gf2_matmul(A, cur)
    reach = [list(col) for col in zip(*reach_cols)]
    obs, cur = [], C
    for _ in range(n):
        obs.append(cur[0])
        cur = gf2_matmul(cur, A)
    return gf2_rank(gf2_matmul(obs, reach))


def scalar_markov_by_hand(a: Fraction, count: int):
    """``[0, 1, a, a^2, ...]`` for the system ``x' = a x + u, y = x``."""
    return [Fraction(0)] + [a ** (k - 1) for k in range(1, count)]


def reachable_by_walking(m):
    """States visited by some word from rest (plain depth-first walk)."""
    seen, stack = {m.rest_state}, [m.rest_state]
    while stack:
        s = stack.pop()
        for t in m.transitions[s].values():
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen
