"""Wreath recursions, canonical ids, nuclei, magic levels."""

import pytest
from hypothesis import given, settings, strategies as st

from selfsim.automaton import (Action, WreathRecursion, inverse_word,
                               letter_char, letter_value, reduce_word)
from selfsim.errors import CapExceeded, InputError, UnknownName
from selfsim.groups import builtin_action, builtin_recursion, load_recursion


# ------------------------------------------------------------------- parsing

def test_word_parse_roundtrip():
    rec = builtin_recursion("grigorchuk")
    w = rec.parse_word("ab~cd")
    assert rec.format_word(w) == "ab~cd"
    assert rec.parse_word("") == ()


def test_parse_rejects_unknown_names():
    rec = builtin_recursion("odometer")
    with pytest.raises(UnknownName):
        rec.parse_word("az")
    with pytest.raises(InputError):
        rec.parse_word("~")


def test_reduce_and_inverse_words():
    assert reduce_word((1, -1, 2)) == (2,)
    assert inverse_word((1, 2)) == (-2, -1)
    assert reduce_word(inverse_word((1, -1))) == ()


def test_letter_codec():
    for x in (0, 1, 9, 10, 35):
        assert letter_value(letter_char(x)) == x


def test_recursion_validates_shapes():
    with pytest.raises(InputError):
        WreathRecursion.from_dict({
            "alphabet": 2,
            "generators": [
                {"name": "a", "perm": [0, 0], "restrictions": ["", ""]}],
        })
    with pytest.raises(InputError):
        WreathRecursion.from_dict({
            "alphabet": 2,
            "generators": [
                {"name": "a", "perm": [1, 0], "restrictions": [""]}],
        })


# ---------------------------------------------------------- the group action

def _as_int(word):
    # leftmost letter is acted on first; read it as the least significant bit
    return sum(int(c) << i for i, c in enumerate(word))


def _as_word(n, width):
    return "".join(str((n >> i) & 1) for i in range(width))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 10 - 1), st.integers(1, 5))
def test_odometer_generator_is_binary_increment(value, reps):
    act = builtin_action("odometer")
    width = 10
    w = _as_word(value, width)
    g = act.element("a" * reps)
    assert _as_int(g.act(w)) == (value + reps) % 2 ** width


def test_action_preserves_length_and_levels():
    act = builtin_action("grigorchuk")
    g = act.element("abd")
    assert len(g.act("0110")) == 4
    assert g.act("") == ""


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=8),
       st.text(alphabet="abcd", min_size=0, max_size=4),
       st.text(alphabet="abcd", min_size=0, max_size=4))
def test_product_acts_as_composition(w, g_text, h_text):
    act = builtin_action("grigorchuk")
    g, h = act.element(g_text), act.element(h_text)
    assert (g * h).act(w) == h.act(g.act(w))


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01", min_size=2, max_size=8),
       st.text(alphabet="ab", min_size=1, max_size=4))
def test_selfsimilarity_identity(w, g_text):
    # (xw)^g = x^g w^{g|_x}, with x the first letter
    act = builtin_action("basilica")
    g = act.element(g_text)
    x, rest = w[0], w[1:]
    assert g.act(w) == g.act(x) + g.restrict(x).act(rest)


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=6),
       st.text(alphabet="abcd", min_size=0, max_size=3),
       st.text(alphabet="abcd", min_size=0, max_size=3))
def test_restriction_cocycle(v, g_text, h_text):
    # (gh)|_v = g|_v · h|_{v^g}
    act = builtin_action("grigorchuk")
    g, h = act.element(g_text), act.element(h_text)
    lhs = (g * h).restrict(v)
    rhs = g.restrict(v) * h.restrict(g.act(v))
    assert lhs == rhs


def test_inverse_undoes_action():
    act = builtin_action("basilica")
    g = act.element("ab~a")
    w = "01101"
    assert g.inverse().act(g.act(w)) == w
    assert (g * g.inverse()).is_identity()


# -------------------------------------------------------------- canonical ids

def test_id_equality_is_semantic():
    act = builtin_action("grigorchuk")
    # classic relations: every generator is an involution and bc = d
    for name in "abcd":
        sq = act.element(name + name)
        assert sq.is_identity()
    assert act.element("bc") == act.element("d")
    assert act.element("cd") == act.element("b")
    assert act.element("bd") == act.element("c")


def test_distinct_elements_get_distinct_ids():
    act = builtin_action("basilica")
    seen = {act.element(w).id for w in ("", "a", "b", "ab", "ba", "~a")}
    assert len(seen) == 6


def test_equal_reports_consistently_with_is_trivial():
    # the standard relations: (ad)^4 = (ac)^8 = (ab)^16 = e
    act = builtin_action("grigorchuk")
    for pair, order in (("ad", 4), ("ac", 8), ("ab", 16)):
        w = act.recursion.parse_word(pair)
        assert act.is_trivial(w * order)
        assert not act.is_trivial(w * (order // 2))


# ------------------------------------------------------- nucleus and magic

def test_nucleus_oracle_odometer():
    act = builtin_action("odometer")
    nuc = act.compute_nucleus()
    assert nuc.size == 3
    assert set(nuc.names()) == {"e", "a", "~a"}


def test_nucleus_oracle_grigorchuk():
    act = builtin_action("grigorchuk")
    nuc = act.compute_nucleus()
    assert nuc.size == 5
    assert set(nuc.names()) == {"e", "a", "b", "c", "d"}


def test_nucleus_oracle_basilica():
    act = builtin_action("basilica")
    nuc = act.compute_nucleus()
    assert nuc.size == 7
    assert set(nuc.names()) == {"e", "a", "b", "~a", "~b", "~ab", "~ba"}


@pytest.mark.parametrize("name", ["odometer", "grigorchuk", "basilica"])
def test_nucleus_invariants(name):
    act = builtin_action(name)
    ids = set(act.nucleus_ids())
    assert act.identity_id in ids
    letters = [letter_char(x) for x in range(act.d)]
    for sid in ids:
        assert act.inverse(sid) in ids
        for x in letters:
            assert act.restrict_id(sid, x) in ids


@pytest.mark.parametrize("name,table", [
    ("odometer", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3)]),
    ("grigorchuk", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3)]),
    ("basilica", [(1, 0), (2, 2), (3, 4), (4, 4), (5, 6)]),
])
def test_magic_levels(name, table):
    act = builtin_action(name)
    assert [(r, act.magic_level(r)) for r, _ in table] == table


def test_magic_level_bounds_every_ball_element():
    act = builtin_action("grigorchuk")
    m = act.magic_level(3)
    nucleus = set(act.nucleus_ids())
    letters = [letter_char(x) for x in range(act.d)]
    for sid in act.ball_ids(3):
        for v in ("".join(p) for p in __import__("itertools").product(
                letters, repeat=m)):
            assert act.restrict_id(sid, v) in nucleus


def test_good_symbols_restrict_to_symbols():
    act = builtin_action("odometer")
    assert set(act.good_names()) == {"a", "~a"}


# ---------------------------------------------------------------------- caps

def test_noncontracting_raises_cap(noncontracting_file):
    with pytest.raises(CapExceeded):
        Action(load_recursion(noncontracting_file))


def test_tiny_state_cap_trips():
    rec = builtin_recursion("grigorchuk")
    with pytest.raises(CapExceeded):
        Action(rec, state_cap=2)
