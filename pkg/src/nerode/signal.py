"""Bi-infinite sequences over finite alphabets and the four signal operators.

A sequence ``u`` in ``U^Z`` is stored as a finite perturbation of the
constant sequence ``o, o, o, ...`` where ``o`` is the alphabet's default
symbol.  Construction always trims leading and trailing defaults, so two
sequences are semantically equal exactly when their fields are equal.

The operators are

* :func:`shift` -- ``(q^n u)(k) = u(k + n)``
* :func:`project` -- keep ``u(k)`` for ``k`` in an index set, ``o`` elsewhere
* :func:`concat` -- ``u1`` strictly before time ``n``, ``u2`` from ``n`` on
* :func:`insert` -- overwrite a single sample
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence as _Seq

from .errors import AlphabetError

__all__ = [
    "Alphabet",
    "IndexSet",
    "Sequence",
    "canonicalize",
    "shift",
    "project",
    "concat",
    "insert",
    "Z_MINUS",
    "N0",
    "ALL",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite symbol set with a designated default symbol."""

    symbols: tuple
    default: Hashable

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate symbols in alphabet {symbols!r}")
        if self.default not in symbols:
            raise AlphabetError(
                f"default symbol {self.default!r} is not in {symbols!r}"
            )

    def __contains__(self, symbol) -> bool:
        return symbol in self._lookup

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def _lookup(self) -> dict:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {s: i for i, s in enumerate(self.symbols)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def index(self, symbol) -> int:
        try:
            return self._lookup[symbol]
        except KeyError:
            raise AlphabetError(f"symbol {symbol!r} is not in {self.symbols!r}") from None

    def check(self, symbol):
        if symbol not in self._lookup:
            raise AlphabetError(f"symbol {symbol!r} is not in {self.symbols!r}")
        return symbol


@dataclass(frozen=True)
class IndexSet:
    """Subset of the integers of one of the shapes ``{k < n}``, ``{k >= n}``,
    a finite set, or all of ``Z``.

    Use the constructors :meth:`before`, :meth:`starting_at`, :meth:`finite`
    and :meth:`everything` rather than the raw fields.
    """

    kind: str
    bound: int = 0
    indices: tuple = ()

    _KINDS = ("before", "from", "finite", "all")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown index-set kind {self.kind!r}")
        if self.kind == "finite":
            object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))
            object.__setattr__(self, "bound", 0)
        else:
            object.__setattr__(self, "indices", ())
            if self.kind == "all":
                object.__setattr__(self, "bound", 0)

    @classmethod
    def before(cls, n: int) -> "IndexSet":
        """All indices ``k < n``; ``before(1)`` is ``Z_-``."""
        return cls("before", int(n))

    @classmethod
    def starting_at(cls, n: int) -> "IndexSet":
        """All indices ``k >= n``; ``starting_at(0)`` is ``N_0``."""
        return cls("from", int(n))

    @classmethod
    def finite(cls, indices: Iterable[int]) -> "IndexSet":
        return cls("finite", 0, tuple(int(k) for k in indices))

    @classmethod
    def everything(cls) -> "IndexSet":
        return cls("all")

    def __contains__(self, k: int) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "before":
            return k < self.bound
        if self.kind == "from":
            return k >= self.bound
        return k in self.indices

    def translate(self, n: int) -> "IndexSet":
        """The set ``A + n = {k + n : k in A}``."""
        if self.kind == "finite":
            return IndexSet.finite(k + n for k in self.indices)
        if self.kind == "all":
            return self
        return IndexSet(self.kind, self.bound + n)


Z_MINUS = IndexSet.before(1)
N0 = IndexSet.starting_at(0)
ALL = IndexSet.everything()


@dataclass(frozen=True)
class Sequence:
    """A bi-infinite sequence equal to ``alphabet.default`` outside a window.

    ``values[i]`` is the sample at time ``start + i``.  The stored window is
    always trimmed, so the empty window is the constant-default sequence and
    its ``start`` is normalised to 0.
    """

    alphabet: Alphabet
    start: int = 0
    values: tuple = ()

    def __post_init__(self):
        values = tuple(self.values)
        lookup = self.alphabet._lookup
        for v in values:
            if v not in lookup:
                raise AlphabetError(
                    f"symbol {v!r} is not in {self.alphabet.symbols!r}"
                )
        o = self.alphabet.default
        lo, hi = 0, len(values)
        while lo < hi and values[lo] == o:
            lo += 1
        while hi > lo and values[hi - 1] == o:
            hi -= 1
        start = int(self.start) + lo if hi > lo else 0
        object.__setattr__(self, "values", values[lo:hi])
        object.__setattr__(self, "start", start)

    @classmethod
    def constant(cls, alphabet: Alphabet) -> "Sequence":
        return cls(alphabet, 0, ())

    @classmethod
    def tabulate(cls, alphabet: Alphabet, lo: int, hi: int,
                 fn: Callable[[int], Any]) -> "Sequence":
        """Sequence with value ``fn(k)`` for ``lo <= k < hi`` and default elsewhere."""
        return cls(alphabet, lo, tuple(fn(k) for k in range(lo, hi)))

    @property
    def stop(self) -> int:
        """One past the last non-default index (equals ``start`` when empty)."""
        return self.start + len(self.values)

    @property
    def is_constant(self) -> bool:
        return not self.values

    def __getitem__(self, k: int):
        i = k - self.start
        if 0 <= i < len(self.values):
            return self.values[i]
        return self.alphabet.default

    at = __getitem__

    def window(self, lo: int, hi: int) -> tuple:
        """Samples at ``lo, ..., hi - 1``."""
        return tuple(self[k] for k in range(lo, hi))

    def to_json(self) -> dict:
        return {
            "default": self.alphabet.default,
            "start": self.start,
            "values": list(self.values),
        }

    @classmethod
    def from_json(cls, obj: dict, alphabet: Alphabet) -> "Sequence":
        if obj.get("default", alphabet.default) != alphabet.default:
            raise AlphabetError(
                f"sequence default {obj['default']!r} differs from alphabet "
                f"default {alphabet.default!r}"
            )
        return cls(alphabet, int(obj.get("start", 0)), tuple(obj.get("values", ())))

    def __repr__(self) -> str:
        if not self.values:
            return f"Sequence(const {self.alphabet.default!r})"
        return f"Sequence(start={self.start}, values={list(self.values)!r})"


def canonicalize(start: int, values: _Seq, alphabet: Alphabet) -> Sequence:
    """Build the canonical sequence carrying ``values`` from time ``start``."""
    return Sequence(alphabet, start, tuple(values))


def shift(u: Sequence, n: int) -> Sequence:
    """``q^n u``, i.e. ``result(k) = u(k + n)``."""
    if u.is_constant:
        return u
    return Sequence(u.alphabet, u.start - n, u.values)


def project(u: Sequence, index_set: IndexSet) -> Sequence:
    """Keep ``u(k)`` for ``k`` in ``index_set``; default elsewhere."""
    if u.is_constant or index_set.kind == "all":
        return u
    o = u.alphabet.default
    vals = tuple(
        v if k in index_set else o
        for k, v in enumerate(u.values, start=u.start)
    )
    return Sequence(u.alphabet, u.start, vals)


def _same_alphabet(u1: Sequence, u2: Sequence):
    if u1.alphabet != u2.alphabet:
        raise AlphabetError(
            f"alphabet mismatch: {u1.alphabet!r} vs {u2.alphabet!r}"
        )


def concat(u1: Sequence, u2: Sequence, n: int) -> Sequence:
    """``u1`` strictly before time ``n``, ``u2`` from time ``n`` onwards."""
    _same_alphabet(u1, u2)
    spans = [(s.start, s.stop) for s in (u1, u2) if not s.is_constant]
    if not spans:
        return u1
    lo = min(a for a, _ in spans)
    hi = max(b for _, b in spans)
    return Sequence.tabulate(
        u1.alphabet, lo, hi, lambda k: u1[k] if k < n else u2[k]
    )


def insert(u: Sequence, a, n: int) -> Sequence:
    """``(u, a)_n``: ``u`` with the sample at time ``n`` replaced by ``a``."""
    u.alphabet.check(a)
    if u.is_constant:
        return Sequence(u.alphabet, n, (a,))
    lo, hi = min(u.start, n), max(u.stop, n + 1)
    return Sequence.tabulate(u.alphabet, lo, hi, lambda k: a if k == n else u[k])
