"""Small named systems and seeded random generators.

Used by the test-suite, the benchmark and the documentation examples.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .linear import LinearSystem, RationalMatrix
from .signal import Alphabet, Sequence
from .systems import FiniteWindowSystem, MealyMachine, ModularLinearSystem

BINARY = Alphabet(("0", "1"), "0")


def alphabet(size: int, prefix: str = "") -> Alphabet:
    """Alphabet ``("0", "1", ...)`` with default ``"0"``."""
    return Alphabet(tuple(f"{prefix}{i}" for i in range(size)), f"{prefix}0")


def delay_machine(k: int, alpha: Alphabet = BINARY) -> MealyMachine:
    """``y(n) = u(n - k)``; states remember the last ``k`` inputs."""
    if k == 0:
        return identity_window(alpha).to_mealy()
    syms = alpha.symbols
    hist = list(itertools.product(syms, repeat=k))
    label = lambda h: "d" + "".join(h)  # noqa: E731
    return MealyMachine(
        input_alphabet=alpha,
        outputs=syms,
        states=tuple(label(h) for h in hist),
        rest_state=label((alpha.default,) * k),
        transitions={label(h): {a: label(h[1:] + (a,)) for a in syms} for h in hist},
        emissions={label(h): {a: h[0] for a in syms} for h in hist},
    )


def identity_window(alpha: Alphabet = BINARY) -> FiniteWindowSystem:
    return FiniteWindowSystem(alpha, alpha.symbols, 1, {(a,): a for a in alpha})


def redundant_delay1() -> MealyMachine:
    """Delay-1 over ``{0, 1}`` with every state duplicated (4 states)."""
    return MealyMachine(
        input_alphabet=BINARY,
        outputs=("0", "1"),
        states=("z", "z'", "o", "o'"),
        rest_state="z",
        transitions={
            "z": {"0": "z", "1": "o'"},
            "z'": {"0": "z'", "1": "o"},
            "o": {"0": "z'", "1": "o"},
            "o'": {"0": "z", "1": "o'"},
        },
        emissions={
            "z": {"0": "0", "1": "0"},
            "z'": {"0": "0", "1": "0"},
            "o": {"0": "1", "1": "1"},
            "o'": {"0": "1", "1": "1"},
        },
    )


def random_machine(rng: random.Random, n_states: int, n_inputs: int = 2,
                   n_outputs: int = 2, redundancy: float = 0.0,
                   connected: bool = False) -> MealyMachine:
    """Random valid machine; state ``s0`` is the rest state.

    With ``redundancy > 0`` a fraction of the states are created as exact
    copies of earlier ones (same rows, successors possibly swapped for
    copies), which produces non-minimal machines.  ``connected`` threads a
    random spanning tree from ``s0`` through the non-copy states.
    """
    alpha = alphabet(n_inputs, "a")
    outputs = tuple(f"y{i}" for i in range(n_outputs))
    states = tuple(f"s{i}" for i in range(n_states))
    trans, emit = {}, {}
    copy_of = {}
    for i, s in enumerate(states):
        if i > 0 and rng.random() < redundancy:
            copy_of[s] = states[rng.randrange(i)]
    for s in states:
        if s not in copy_of:
            trans[s] = {a: rng.choice(states) for a in alpha}
            emit[s] = {a: rng.choice(outputs) for a in alpha}
    trans["s0"][alpha.default] = "s0"
    if connected:
        originals = [s for s in states if s not in copy_of]
        for i in range(1, len(originals)):
            src = originals[rng.randrange(i)]
            choices = [a for a in alpha if not (src == "s0" and a == alpha.default)]
            if choices:
                trans[src][rng.choice(choices)] = originals[i]
    for s in states:
        if s in copy_of:
            trans[s] = dict(trans[copy_of[s]])
            emit[s] = dict(emit[copy_of[s]])
    # redirect some edges to copies so duplicates are actually used
    for s in states:
        for a in alpha:
            t = trans[s][a]
            twins = [c for c, o in copy_of.items() if o == t]
            if twins and rng.random() < 0.5 and not (s == "s0" and a == alpha.default):
                trans[s][a] = rng.choice(twins)
    return MealyMachine(alpha, outputs, states, "s0", trans, emit)


def random_window(rng: random.Random, n_inputs: int, window: int,
                  n_outputs: int = 2) -> FiniteWindowSystem:
    alpha = alphabet(n_inputs, "a")
    outputs = tuple(f"y{i}" for i in range(n_outputs))
    table = {w: rng.choice(outputs)
             for w in itertools.product(alpha.symbols, repeat=window)}
    return FiniteWindowSystem(alpha, outputs, window, table)


def random_sequence(rng: random.Random, alpha: Alphabet, max_len: int = 12,
                    span: int = 10) -> Sequence:
    length = rng.randint(0, max_len)
    start = rng.randint(-span, span)
    return Sequence(alpha, start, tuple(rng.choice(alpha.symbols) for _ in range(length)))


def random_mod2_system(rng: random.Random, n: int) -> ModularLinearSystem:
    bit = lambda: rng.randint(0, 1)  # noqa: E731
    return ModularLinearSystem(
        A=[[bit() for _ in range(n)] for _ in range(n)],
        B=[[bit()] for _ in range(n)],
        C=[[bit() for _ in range(n)]],
        D=[[bit()]],
        p=2,
    )


def _small_fraction(rng: random.Random, zero_prob: float) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_rational_system(rng: random.Random, n: int, p: int = 1, m: int = 1,
                           zero_prob: float = 0.3) -> LinearSystem:
    """Random system; sparse entries make unreachable or unobservable modes common."""
    def mat(r, c):
        return RationalMatrix(r, c, tuple(_small_fraction(rng, zero_prob)
                                          for _ in range(r * c)))
    return LinearSystem(mat(n, n), mat(n, m), mat(p, n), mat(p, m))
