"""Nerode classes, minimal realizations and the quotient map onto them.

For a finite machine the Nerode class of an input history is represented by
the block of behaviourally equivalent states the history drives the machine
into.  :func:`minimize` builds the quotient machine on those blocks;
:func:`quotient_map` checks that every state a realization can occupy along
a bi-infinite trajectory maps onto a quotient state compatibly with the
dynamics and the output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Optional

import numpy as np

from . import _backend
from .errors import AlphabetError, PreconditionError
from .signal import Sequence
from .systems import MealyMachine, System, to_mealy

__all__ = [
    "REST_REACHABLE",
    "CONTROLLABLE",
    "Partition",
    "NerodeRealization",
    "QuotientMapReport",
    "reachable_states",
    "controllable_subset",
    "partition_refine",
    "minimize",
    "state_at",
    "nerode_equivalent",
    "machine_equivalence",
    "quotient_map",
]

REST_REACHABLE = "rest-reachable"
CONTROLLABLE = "controllable"
_MODE_ALIASES = {
    "rest": REST_REACHABLE,
    REST_REACHABLE: REST_REACHABLE,
    "xc": CONTROLLABLE,
    CONTROLLABLE: CONTROLLABLE,
}


def _mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown minimization mode {mode!r}") from None


def _forward_closure(m: MealyMachine, seeds) -> list:
    """States reachable from ``seeds`` in breadth-first order."""
    seen = {}
    queue = deque()
    for s in seeds:
        if s not in seen:
            seen[s] = None
            queue.append(s)
    while queue:
        s = queue.popleft()
        row = m.transitions[s]
        for a in m.input_alphabet:
            t = row[a]
            if t not in seen:
                seen[t] = None
                queue.append(t)
    return list(seen)


def reachable_states(m: MealyMachine) -> tuple:
    """States reachable from the rest state, in breadth-first order.

    Inputs are tried in alphabet order, so the order is canonical.
    """
    m.require_valid()
    return tuple(_forward_closure(m, [m.rest_state]))


def _cycle_states(m: MealyMachine) -> set:
    """States lying on a directed cycle of the all-inputs transition graph."""
    t = m.tables
    n = len(m.states)
    succ = [sorted(set(row)) for row in t.trans.tolist()]
    # iterative Tarjan
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack, out = [], set()
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ[v]:
                    out.update(comp)
    return {m.states[i] for i in out}


def controllable_subset(m: MealyMachine) -> tuple:
    """States occupied at time 0 by some bi-infinite trajectory.

    In a finite machine a state admits an infinite backward extension
    exactly when some directed cycle reaches it, so this is the forward
    closure of the cycle states.  Returned in declared state order.
    """
    m.require_valid()
    closure = set(_forward_closure(m, sorted(_cycle_states(m), key=m.states.index)))
    return tuple(s for s in m.states if s in closure)


@dataclass(frozen=True)
class Partition:
    """Behavioural equivalence classes of a set of states.

    ``class_of`` maps each covered state to a class id; ids are contiguous
    from 0 and numbered by first appearance in ``states``.
    """

    machine: MealyMachine = field(repr=False, compare=False)
    states: tuple
    class_of: dict

    @property
    def classes(self) -> tuple:
        return tuple(range(len(set(self.class_of.values()))))

    def blocks(self) -> list:
        out = [[] for _ in self.classes]
        for s in self.states:
            out[self.class_of[s]].append(s)
        return out

    def __len__(self) -> int:
        return len(self.classes)


def _renumber(labels) -> list:
    ids = {}
    return [ids.setdefault(x, len(ids)) for x in labels]


def partition_refine(m: MealyMachine, over=None) -> Partition:
    """Merge states of ``over`` (default: all states) with identical futures.

    Refinement runs on the forward closure of ``over`` so that successors
    outside the requested set are still taken into account.
    """
    m.require_valid()
    over = tuple(m.states if over is None else over)
    closure = _forward_closure(m, over)
    t = m.tables
    idx = np.asarray([t.state_index[s] for s in closure], dtype=np.intp)
    local = np.full(len(m.states), -1, dtype=np.intc)
    local[idx] = np.arange(len(idx), dtype=np.intc)
    block, _ = _backend.refine(local[t.trans[idx]], t.emit[idx])
    block = block.tolist()
    pos = {s: i for i, s in enumerate(closure)}
    ids = _renumber(block[pos[s]] for s in over)
    return Partition(m, over, dict(zip(over, ids)))


@dataclass(frozen=True)
class NerodeRealization:
    """Quotient machine together with the projection of source states onto it."""

    machine: MealyMachine
    projection: dict
    domain_mode: str = REST_REACHABLE

    @property
    def size(self) -> int:
        return len(self.machine.states)


def _quotient(m: MealyMachine, part: Partition, label=lambda i: f"q{i}"):
    """Quotient machine on the blocks of ``part``, states named in BFS order."""
    blocks = part.blocks()
    rep = [b[0] for b in blocks]
    cls = part.class_of
    order, seen = [], set()
    pending = deque()
    for seed in [cls[m.rest_state]] + list(range(len(blocks))):
        if seed in seen:
            continue
        seen.add(seed)
        pending.append(seed)
        while pending:
            c = pending.popleft()
            order.append(c)
            for a in m.input_alphabet:
                d = cls[m.step(a, rep[c])]
                if d not in seen:
                    seen.add(d)
                    pending.append(d)
    name = {c: label(i) for i, c in enumerate(order)}
    transitions = {
        name[c]: {a: name[cls[m.step(a, rep[c])]] for a in m.input_alphabet}
        for c in order
    }
    emissions = {
        name[c]: {a: m.emit(a, rep[c]) for a in m.input_alphabet} for c in order
    }
    q = MealyMachine(
        input_alphabet=m.input_alphabet,
        outputs=m.outputs,
        states=tuple(name[c] for c in order),
        rest_state=name[cls[m.rest_state]],
        transitions=transitions,
        emissions=emissions,
    )
    return q, {s: name[cls[s]] for s in part.states}


def minimize(sys: System, mode: str = REST_REACHABLE) -> NerodeRealization:
    """Nerode realization of ``sys``.

    ``mode`` selects the domain that is quotiented: the states reachable
    from rest (``"rest-reachable"``/``"rest"``) or the controllable subset
    (``"controllable"``/``"xc"``).  Quotient states are named ``q0, q1, ...``
    in breadth-first order from the quotient rest state.
    """
    mode = _mode(mode)
    m = to_mealy(sys)
    domain = reachable_states(m) if mode == REST_REACHABLE else controllable_subset(m)
    q, projection = _quotient(m, partition_refine(m, domain))
    return NerodeRealization(q, projection, mode)


def _check_alphabet(real: NerodeRealization, u: Sequence):
    if u.alphabet != real.machine.input_alphabet:
        raise AlphabetError("sequence alphabet does not match the realization")


def state_at(real: NerodeRealization, u: Sequence, n: int):
    """Quotient state after consuming ``u(k)`` for all ``k < n`` from rest.

    This is the class of ``u`` at time ``n`` in the convention where the
    class depends on the past ``u(k), k < n``, i.e. ``[q^n u]_0``.
    """
    _check_alphabet(real, u)
    m = real.machine
    if u.is_constant or n <= u.start:
        return m.rest_state
    _, final = m.run(u.window(u.start, n))
    return final


def nerode_equivalent(real: NerodeRealization, u1: Sequence, u2: Sequence) -> bool:
    """Whether ``u1`` and ``u2`` are Nerode equivalent at time 0."""
    _check_alphabet(real, u2)
    return state_at(real, u1, 0) == state_at(real, u2, 0)


def machine_equivalence(m1: MealyMachine, m2: MealyMachine,
                        max_len: Optional[int] = None):
    """Decide whether two machines define the same input/output map.

    Returns ``(equivalent, counterexample)``.  The counterexample is a
    shortest input word which, fed from both rest states at time 0, makes
    the last emitted outputs differ.  With ``max_len`` only words up to that
    length are considered.
    """
    m1.require_valid()
    m2.require_valid()
    a1, a2 = m1.input_alphabet, m2.input_alphabet
    if set(a1.symbols) != set(a2.symbols) or a1.default != a2.default:
        raise AlphabetError("machines have different input alphabets")
    start = (m1.rest_state, m2.rest_state)
    parent: dict = {start: None}
    queue = deque([(start, 0)])

    def word_to(pair, last):
        word = [last]
        while parent[pair] is not None:
            pair, a = parent[pair]
            word.append(a)
        return tuple(reversed(word))

    while queue:
        pair, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            continue
        s1, s2 = pair
        for a in a1:
            if m1.emit(a, s1) != m2.emit(a, s2):
                return False, word_to(pair, a)
        for a in a1:
            nxt = (m1.step(a, s1), m2.step(a, s2))
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append((nxt, depth + 1))
    return True, None


@dataclass(frozen=True)
class QuotientMapReport:
    """The map from the controllable subset onto the quotient states.

    ``f_violations`` lists pairs ``(b, a)`` where mapping then stepping
    differs from stepping then mapping; ``g_violations`` lists pairs whose
    outputs disagree.  ``unmapped`` holds controllable states equivalent to
    no quotient state.
    """

    map: dict
    surjective: bool
    f_violations: list
    g_violations: list
    unmapped: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return (self.surjective and not self.f_violations
                and not self.g_violations and not self.unmapped)

    def to_json(self) -> dict:
        return {
            "map": {str(k): str(v) for k, v in self.map.items()},
            "surjective": self.surjective,
            "f_violations": [[str(b), str(a)] for b, a in self.f_violations],
            "g_violations": [[str(b), str(a)] for b, a in self.g_violations],
            "unmapped": [str(a) for a in self.unmapped],
        }


def _joint_blocks(m1: MealyMachine, m2: MealyMachine):
    """Behavioural classes over the disjoint union of two machines."""
    t1, t2 = m1.tables, m2.tables
    syms = m1.input_alphabet.symbols
    perm = [m2.input_alphabet.index(a) for a in syms]
    outputs = list(dict.fromkeys(m1.outputs + m2.outputs))
    oidx = {y: i for i, y in enumerate(outputs)}
    remap1 = np.asarray([oidx[y] for y in m1.outputs], dtype=np.intc)
    remap2 = np.asarray([oidx[y] for y in m2.outputs], dtype=np.intc)
    n1 = len(m1.states)
    trans = np.vstack([t1.trans, t2.trans[:, perm] + n1])
    emit = np.vstack([remap1[t1.emit], remap2[t2.emit[:, perm]]])
    block, _ = _backend.refine(trans, emit)
    block = block.tolist()
    return block[:n1], block[n1:]


def quotient_map(real_given: MealyMachine, minimal) -> QuotientMapReport:
    """Build and check the surjection from ``X_c`` onto the quotient states.

    ``minimal`` is a :class:`NerodeRealization` or a plain machine claimed
    to be minimal.  Raises :class:`PreconditionError` carrying a
    counterexample when the two machines are not equivalent from rest.
    """
    q = minimal.machine if isinstance(minimal, NerodeRealization) else minimal
    equivalent, cex = machine_equivalence(real_given, q)
    if not equivalent:
        raise PreconditionError(
            "machines are not input/output equivalent", counterexample=cex
        )
    xc = controllable_subset(real_given)
    b1, b2 = _joint_blocks(real_given, q)
    by_block = {}
    for t, blk in zip(q.states, b2):
        by_block.setdefault(blk, t)
    gidx = real_given.tables.state_index
    pmap, unmapped = {}, []
    for a in xc:
        t = by_block.get(b1[gidx[a]])
        if t is None:
            unmapped.append(a)
        else:
            pmap[a] = t
    f_viol, g_viol = [], []
    for a, t in pmap.items():
        for b in real_given.input_alphabet:
            if q.step(b, t) != pmap.get(real_given.step(b, a)):
                f_viol.append((b, a))
            if q.emit(b, t) != real_given.emit(b, a):
                g_viol.append((b, a))
    surjective = set(pmap.values()) == set(q.states)
    return QuotientMapReport(pmap, surjective, f_viol, g_viol, unmapped)
