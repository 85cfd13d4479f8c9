"""Decidable classes of causal, time-invariant systems.

Three concrete families are supported:

``MealyMachine``
    a finite state-space realization ``x(n+1) = f(u(n), x(n))``,
    ``y(n) = g(u(n), x(n))``;
``FiniteWindowSystem``
    ``y(n)`` is a table lookup of ``u(n-m+1), ..., u(n)``;
``ModularLinearSystem``
    a single-input single-output linear recursion over ``Z_p``.

Inputs are finite-support sequences.  A Mealy machine is anchored at its
rest state: ``x(k)`` is the rest state for every ``k`` up to the start of
the input's support.  The rest state must be fixed under the default input,
which makes the anchoring point irrelevant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Mapping, Union

import numpy as np

from . import _backend
from .errors import AlphabetError, CapacityError, ValidationError
from .signal import Alphabet, Sequence

__all__ = [
    "MealyMachine",
    "FiniteWindowSystem",
    "ModularLinearSystem",
    "System",
    "evaluate",
    "to_mealy",
    "window_to_mealy",
    "linear_mod_p_to_mealy",
    "validate_machine",
    "MAX_ENUMERATED_STATES",
]

MAX_ENUMERATED_STATES = 2 ** 16


def _check_input(alphabet: Alphabet, u: Sequence):
    if u.alphabet != alphabet:
        raise AlphabetError(
            f"input sequence alphabet {u.alphabet.symbols!r} (default "
            f"{u.alphabet.default!r}) does not match system input alphabet "
            f"{alphabet.symbols!r} (default {alphabet.default!r})"
        )


def _check_window(lo: int, hi: int):
    if lo > hi:
        raise ValueError(f"empty evaluation window [{lo}, {hi}]")


@dataclass(frozen=True)
class _Tables:
    state_index: dict
    trans: np.ndarray
    emit: np.ndarray


@dataclass(frozen=True)
class MealyMachine:
    """Finite Mealy machine ``(f, g, X, rest)``.

    ``transitions[s][a]`` is ``f(a, s)`` and ``emissions[s][a]`` is
    ``g(a, s)``.  Construction does not validate; call
    :func:`validate_machine` or :meth:`require_valid`.
    """

    input_alphabet: Alphabet
    outputs: tuple
    states: tuple
    rest_state: Hashable
    transitions: Mapping = field(repr=False)
    emissions: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "states", tuple(self.states))

    __hash__ = None

    def step(self, a, s):
        """``f(a, s)``."""
        return self.transitions[s][a]

    def emit(self, a, s):
        """``g(a, s)``."""
        return self.emissions[s][a]

    @property
    def output_default(self):
        return self.emit(self.input_alphabet.default, self.rest_state)

    @property
    def output_alphabet(self) -> Alphabet:
        return Alphabet(self.outputs, self.output_default)

    def require_valid(self) -> "MealyMachine":
        problems = validate_machine(self)
        if problems:
            raise ValidationError(problems)
        return self

    @cached_property
    def tables(self) -> _Tables:
        """Integer transition/emission tables indexed ``[state, input]``."""
        self.require_valid()
        sidx = {s: i for i, s in enumerate(self.states)}
        oidx = {y: i for i, y in enumerate(self.outputs)}
        syms = self.input_alphabet.symbols
        trans = np.array(
            [[sidx[self.transitions[s][a]] for a in syms] for s in self.states],
            dtype=np.intc,
        ).reshape(len(self.states), len(syms))
        emit = np.array(
            [[oidx[self.emissions[s][a]] for a in syms] for s in self.states],
            dtype=np.intc,
        ).reshape(len(self.states), len(syms))
        return _Tables(sidx, trans, emit)

    def run(self, word, state=None):
        """Feed ``word`` from ``state`` (rest by default).

        Returns the tuple of emitted outputs and the final state.
        """
        t = self.tables
        alpha = self.input_alphabet
        start = self.rest_state if state is None else state
        codes = np.fromiter((alpha.index(a) for a in word), dtype=np.intc)
        out, final = _backend.run(t.trans, t.emit, t.state_index[start], codes)
        return tuple(self.outputs[i] for i in out.tolist()), self.states[final]

    def evaluate(self, u: Sequence, lo: int, hi: int) -> Sequence:
        _check_input(self.input_alphabet, u)
        _check_window(lo, hi)
        begin = lo if u.is_constant else min(u.start, lo)
        outs, _ = self.run(u.window(begin, hi + 1))
        return Sequence(self.output_alphabet, lo, outs[lo - begin:])

    def to_mealy(self) -> "MealyMachine":
        return self


def validate_machine(m: MealyMachine) -> list:
    """All invariant violations of ``m`` as human-readable strings."""
    problems = []
    if len(set(m.states)) != len(m.states):
        dupes = sorted({str(s) for s in m.states if m.states.count(s) > 1})
        problems.append(f"duplicate state labels: {', '.join(dupes)}")
    if len(set(m.outputs)) != len(m.outputs):
        problems.append("duplicate output symbols")
    if not m.outputs:
        problems.append("output alphabet is empty")
    states = set(m.states)
    outputs = set(m.outputs)
    if m.rest_state not in states:
        problems.append(f"rest_state {m.rest_state!r} is not a declared state")
    for table, name in ((m.transitions, "transition"), (m.emissions, "emission")):
        for s in table:
            if s not in states:
                problems.append(f"{name} table mentions undeclared state {s!r}")
    for s in m.states:
        trow = m.transitions.get(s, {})
        erow = m.emissions.get(s, {})
        for a in m.input_alphabet:
            if a not in trow:
                problems.append(
                    f"totality: transition missing for (input {a!r}, state {s!r})"
                )
            elif trow[a] not in states:
                problems.append(
                    f"transition (input {a!r}, state {s!r}) targets undeclared "
                    f"state {trow[a]!r}"
                )
            if a not in erow:
                problems.append(
                    f"totality: emission missing for (input {a!r}, state {s!r})"
                )
            elif erow[a] not in outputs:
                problems.append(
                    f"emission (input {a!r}, state {s!r}) is {erow[a]!r}, not an "
                    f"output symbol"
                )
        for a in sorted(set(trow) | set(erow), key=str):
            if a not in m.input_alphabet:
                problems.append(f"state {s!r} has entry for unknown input {a!r}")
    o = m.input_alphabet.default
    if m.rest_state in states:
        nxt = m.transitions.get(m.rest_state, {}).get(o)
        if nxt is not None and nxt != m.rest_state:
            problems.append(
                f"rest fixed-point: rest_state {m.rest_state!r} moves to {nxt!r} "
                f"under default input {o!r}"
            )
    return problems


def _word_key(word) -> str:
    return ",".join(str(a) for a in word)


@dataclass(frozen=True)
class FiniteWindowSystem:
    """``y(n) = table[(u(n-m+1), ..., u(n))]`` for a window length ``m >= 1``."""

    input_alphabet: Alphabet
    outputs: tuple
    window: int
    table: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))

    __hash__ = None

    @property
    def output_default(self):
        return self.table[(self.input_alphabet.default,) * self.window]

    @property
    def output_alphabet(self) -> Alphabet:
        return Alphabet(self.outputs, self.output_default)

    def words(self):
        return itertools.product(self.input_alphabet.symbols, repeat=self.window)

    def violations(self) -> list:
        problems = []
        if not isinstance(self.window, int) or self.window < 1:
            return [f"window length must be a positive integer, got {self.window!r}"]
        if len(set(self.outputs)) != len(self.outputs):
            problems.append("duplicate output symbols")
        outputs = set(self.outputs)
        for w in self.words():
            if w not in self.table:
                problems.append(f"totality: table entry missing for word {_word_key(w)!r}")
            elif self.table[w] not in outputs:
                problems.append(
                    f"table entry for word {_word_key(w)!r} is {self.table[w]!r}, "
                    f"not an output symbol"
                )
        for w in self.table:
            if len(w) != self.window or any(a not in self.input_alphabet for a in w):
                problems.append(f"table has malformed word {_word_key(w)!r}")
        return problems

    def require_valid(self) -> "FiniteWindowSystem":
        problems = self.violations()
        if problems:
            raise ValidationError(problems)
        return self

    def evaluate(self, u: Sequence, lo: int, hi: int) -> Sequence:
        _check_input(self.input_alphabet, u)
        _check_window(lo, hi)
        m = self.window
        return Sequence.tabulate(
            self.output_alphabet, lo, hi + 1,
            lambda k: self.table[u.window(k - m + 1, k + 1)],
        )

    def to_mealy(self) -> MealyMachine:
        return window_to_mealy(self)


def _history_label(h) -> str:
    return "<" + _word_key(h) + ">"


def window_to_mealy(w: FiniteWindowSystem) -> MealyMachine:
    """Mealy machine whose state is the last ``m - 1`` inputs."""
    w.require_valid()
    alpha = w.input_alphabet
    histories = list(itertools.product(alpha.symbols, repeat=w.window - 1))
    transitions, emissions = {}, {}
    for h in histories:
        label = _history_label(h)
        transitions[label] = {a: _history_label((h + (a,))[1:]) for a in alpha}
        emissions[label] = {a: w.table[h + (a,)] for a in alpha}
    return MealyMachine(
        input_alphabet=alpha,
        outputs=w.outputs,
        states=tuple(_history_label(h) for h in histories),
        rest_state=_history_label((alpha.default,) * (w.window - 1)),
        transitions=transitions,
        emissions=emissions,
    )


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _as_matrix(rows, n_rows, n_cols, name, problems):
    try:
        out = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError):
        problems.append(f"{name} must be a matrix of integers")
        return None
    if len(out) != n_rows or any(len(r) != n_cols for r in out):
        problems.append(f"{name} must be {n_rows}x{n_cols}")
        return None
    return out


@dataclass(frozen=True)
class ModularLinearSystem:
    """SISO ``x(k+1) = A x(k) + B u(k)``, ``y(k) = C x(k) + D u(k)`` over ``Z_p``.

    Matrices are given as integer nested lists of shapes ``n x n``,
    ``n x 1``, ``1 x n`` and ``1 x 1``; entries are reduced mod ``p``.
    Input and output symbols are the strings ``"0" .. "p-1"``.
    """

    A: tuple
    B: tuple
    C: tuple
    D: tuple
    p: int

    def __post_init__(self):
        problems = []
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValidationError([f"modulus {self.p!r} is not a prime"])
        n = len(self.A)
        B = [[v] if not isinstance(v, (list, tuple)) else v for v in self.B]
        C = [self.C] if self.C and not isinstance(self.C[0], (list, tuple)) else self.C
        if n == 0 and not C:
            C = [[]]
        D = [[self.D]] if not isinstance(self.D, (list, tuple)) else self.D
        D = [D] if D and not isinstance(D[0], (list, tuple)) else D
        mats = {}
        for name, rows, shape in (("A", self.A, (n, n)), ("B", B, (n, 1)),
                                  ("C", C, (1, n)), ("D", D, (1, 1))):
            mat = _as_matrix(rows, *shape, name, problems)
            if mat is not None:
                mats[name] = tuple(tuple(v % self.p for v in r) for r in mat)
        if problems:
            raise ValidationError(problems)
        for name, mat in mats.items():
            object.__setattr__(self, name, mat)

    @property
    def order(self) -> int:
        return len(self.A)

    @property
    def input_alphabet(self) -> Alphabet:
        return Alphabet(tuple(str(i) for i in range(self.p)), "0")

    @property
    def output_alphabet(self) -> Alphabet:
        return self.input_alphabet

    def next_state(self, x: tuple, a: int) -> tuple:
        p = self.p
        return tuple(
            (sum(r * v for r, v in zip(row, x)) + b[0] * a) % p
            for row, b in zip(self.A, self.B)
        )

    def output(self, x: tuple, a: int) -> int:
        return (sum(c * v for c, v in zip(self.C[0], x)) + self.D[0][0] * a) % self.p

    def evaluate(self, u: Sequence, lo: int, hi: int) -> Sequence:
        _check_input(self.input_alphabet, u)
        _check_window(lo, hi)
        begin = lo if u.is_constant else min(u.start, lo)
        x = (0,) * self.order
        ys = []
        for k in range(begin, hi + 1):
            a = int(u[k])
            if k >= lo:
                ys.append(str(self.output(x, a)))
            x = self.next_state(x, a)
        return Sequence(self.output_alphabet, lo, ys)

    def to_mealy(self) -> MealyMachine:
        return linear_mod_p_to_mealy(self.A, self.B, self.C, self.D, self.p)


def _vector_label(x) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


def linear_mod_p_to_mealy(A, B, C, D, p: int) -> MealyMachine:
    """Enumerate every state vector of a SISO linear system over ``Z_p``."""
    sys = A if isinstance(A, ModularLinearSystem) else ModularLinearSystem(A, B, C, D, p)
    n = sys.order
    if sys.p ** n > MAX_ENUMERATED_STATES:
        raise CapacityError(
            f"{sys.p}^{n} states exceed the enumeration guard of "
            f"{MAX_ENUMERATED_STATES}"
        )
    alpha = sys.input_alphabet
    vectors = list(itertools.product(range(sys.p), repeat=n))
    transitions, emissions = {}, {}
    for x in vectors:
        label = _vector_label(x)
        transitions[label] = {
            a: _vector_label(sys.next_state(x, int(a))) for a in alpha
        }
        emissions[label] = {a: str(sys.output(x, int(a))) for a in alpha}
    return MealyMachine(
        input_alphabet=alpha,
        outputs=alpha.symbols,
        states=tuple(_vector_label(x) for x in vectors),
        rest_state=_vector_label((0,) * n),
        transitions=transitions,
        emissions=emissions,
    )


System = Union[MealyMachine, FiniteWindowSystem, ModularLinearSystem]


def to_mealy(sys: System) -> MealyMachine:
    """Convert any supported system to a validated Mealy machine."""
    if isinstance(sys, FiniteWindowSystem):
        sys.require_valid()
    return sys.to_mealy().require_valid()


def evaluate(sys: System, u: Sequence, lo: int, hi: int) -> Sequence:
    """``T u`` restricted to ``[lo, hi]`` (inclusive), default elsewhere."""
    return sys.evaluate(u, lo, hi)
