import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nerode.errors import AlphabetError
from nerode.signal import (ALL, N0, Z_MINUS, Alphabet, IndexSet, Sequence,
                           canonicalize, concat, insert, project, shift)

BIN = Alphabet(("0", "1"), "0")


@st.composite
def alphabets(draw):
    k = draw(st.integers(2, 4))
    syms = tuple(str(i) for i in range(k))
    return Alphabet(syms, draw(st.sampled_from(syms)))


@st.composite
def sequences(draw, alpha=None):
    alpha = alpha or draw(alphabets())
    vals = draw(st.lists(st.sampled_from(alpha.symbols), max_size=12))
    return Sequence(alpha, draw(st.integers(-15, 15)), tuple(vals))


@st.composite
def sequence_pairs(draw):
    alpha = draw(alphabets())
    return alpha, draw(sequences(alpha)), draw(sequences(alpha))


def pointwise(u, lo=-40, hi=40):
    return [u[k] for k in range(lo, hi)]


class TestAlphabet:
    def test_rejects_empty_duplicates_and_foreign_default(self):
        with pytest.raises(AlphabetError):
            Alphabet((), "0")
        with pytest.raises(AlphabetError):
            Alphabet(("0", "0"), "0")
        with pytest.raises(AlphabetError):
            Alphabet(("0", "1"), "2")

    def test_membership(self):
        assert "1" in BIN and "2" not in BIN
        assert BIN.index("1") == 1


class TestCanonicalize:
    def test_trims_defaults(self):
        u = canonicalize(0, ["0", "1", "0"], BIN)
        assert (u.start, u.values) == (1, ("1",))

    def test_all_default_is_constant(self):
        assert canonicalize(-5, ["0", "0"], BIN) == Sequence.constant(BIN)

    def test_already_canonical_unchanged(self):
        u = canonicalize(2, ["1", "0", "1"], BIN)
        assert (u.start, u.values) == (2, ("1", "0", "1"))

    def test_foreign_symbol_rejected(self):
        with pytest.raises(AlphabetError):
            canonicalize(0, ["2"], BIN)

    @given(sequences(), st.integers(0, 5), st.integers(0, 5))
    def test_padding_does_not_change_value(self, u, left, right):
        o = u.alphabet.default
        padded = canonicalize(u.start - left, (o,) * left + u.values + (o,) * right, u.alphabet)
        assert padded == u


class TestShift:
    def test_identity(self):
        u = Sequence(BIN, 3, ("1", "0", "1"))
        assert shift(u, 0) == u

    def test_one_step_moves_support_left(self):
        u = Sequence(BIN, 0, ("1",))
        assert shift(u, 1) == Sequence(BIN, -1, ("1",))

    @given(sequences(), st.integers(-20, 20))
    def test_bijective(self, u, n):
        assert shift(shift(u, n), -n) == u

    @given(sequences(), st.integers(-20, 20))
    def test_pointwise(self, u, n):
        v = shift(u, n)
        assert all(v[k] == u[k + n] for k in range(-40, 40))


class TestProject:
    def test_all_is_identity(self):
        u = Sequence(BIN, -2, ("1", "1", "0", "1"))
        assert project(u, ALL) == u

    def test_constant_stays_constant(self):
        c = Sequence.constant(BIN)
        for A in (Z_MINUS, N0, IndexSet.finite([1, 4]), IndexSet.before(-3)):
            assert project(c, A) == c

    def test_before_zero(self):
        u = Sequence(BIN, -1, ("1", "1"))
        assert project(u, IndexSet.before(0)) == Sequence(BIN, -1, ("1",))

    @given(sequences(), st.lists(st.integers(-20, 20), max_size=6))
    def test_pointwise_finite(self, u, idx):
        A = IndexSet.finite(idx)
        v = project(u, A)
        assert all(v[k] == (u[k] if k in idx else u.alphabet.default) for k in range(-40, 40))


class TestConcat:
    def test_self_concat(self):
        u = Sequence(BIN, -3, ("1", "0", "1"))
        for n in range(-5, 5):
            assert concat(u, u, n) == u

    def test_constants(self):
        c = Sequence.constant(BIN)
        assert concat(c, c, 4) == c

    def test_disjoint_supports(self):
        u1 = Sequence(BIN, 0, ("1",))
        u2 = Sequence(BIN, 5, ("1",))
        assert concat(u1, u2, 3) == Sequence(BIN, 0, ("1", "0", "0", "0", "0", "1"))

    def test_alphabet_mismatch(self):
        other = Alphabet(("0", "1"), "1")
        with pytest.raises(AlphabetError):
            concat(Sequence.constant(BIN), Sequence.constant(other), 0)


class TestInsert:
    @given(sequences(), st.integers(-20, 20))
    def test_reinsert_own_value(self, u, n):
        assert insert(u, u[n], n) == u

    def test_into_constant(self):
        assert insert(Sequence.constant(BIN), "1", 0) == Sequence(BIN, 0, ("1",))

    def test_foreign_symbol(self):
        with pytest.raises(AlphabetError):
            insert(Sequence.constant(BIN), "x", 0)


class TestLaws:
    @settings(max_examples=300)
    @given(sequences(), st.integers(-8, 8))
    def test_past_projection_commutes_with_shift(self, u, n):
        assert project(shift(u, n), Z_MINUS) == shift(project(u, IndexSet.before(n + 1)), n)

    @settings(max_examples=300)
    @given(sequences(), st.integers(-8, 8))
    def test_future_projection_commutes_with_shift(self, u, n):
        assert project(shift(u, n), N0) == shift(project(u, IndexSet.starting_at(n)), n)

    @settings(max_examples=300)
    @given(sequences(), st.integers(-8, 8), st.lists(st.integers(-15, 15), max_size=6))
    def test_general_projection_shift(self, u, n, idx):
        A = IndexSet.finite(idx)
        assert project(shift(u, n), A) == shift(project(u, A.translate(n)), n)

    @settings(max_examples=300)
    @given(sequence_pairs(), st.integers(-15, 15), st.integers(-15, 15))
    def test_shift_distributes_over_concat(self, pair, k, n):
        _, u1, u2 = pair
        assert shift(concat(u1, u2, k), n) == concat(shift(u1, n), shift(u2, n), k - n)

    @settings(max_examples=300)
    @given(sequence_pairs(), st.data())
    def test_concat_insert_exchange(self, pair, data):
        alpha, u1, u2 = pair
        a = data.draw(st.sampled_from(alpha.symbols))
        assert concat(u1, insert(u2, a, 0), 0) == concat(insert(u1, a, 0), u2, 1)

    @given(sequences())
    def test_structural_equality_is_semantic(self, u):
        v = Sequence.tabulate(u.alphabet, -30, 30, lambda k: u[k])
        assert v == u and pointwise(v) == pointwise(u)


def test_json_round_trip():
    u = Sequence(BIN, -2, ("1", "0", "1"))
    assert u.to_json() == {"default": "0", "start": -2, "values": ["1", "0", "1"]}
    assert Sequence.from_json(u.to_json(), BIN) == u


def test_json_default_mismatch():
    with pytest.raises(AlphabetError):
        Sequence.from_json({"default": "1", "start": 0, "values": []}, BIN)
