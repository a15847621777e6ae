import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amaut import automaton as am
from amaut.automaton import Amaut, AutomatonError, EmptySurface, NotDeterministic, Payload, Segment

import oracles


def atom(word, tag):
    return am.atom(word, Payload(rule=tag, segments=(Segment(tag, word, 0, len(word)),)))


def test_atom_language():
    a = atom("facala", "s")
    assert am.enumerate_language(a, 10) == {"facala"}
    assert a.n_states == 7 and len(a.accepts) == 1


def test_atom_rejects_empty():
    with pytest.raises(EmptySurface):
        am.atom("", Payload())


def test_empty_language():
    assert am.enumerate_language(am.empty(), 5) == set()
    assert am.lookup(am.empty(), "") == []


def test_concat_composes_offsets():
    a = am.concat(atom("wAHid", "n"), am.union(atom("un", "s"), atom("an", "s")))
    assert am.enumerate_language(a, 10) == {"wAHidun", "wAHidan"}
    (p,) = am.lookup(a, "wAHidun")
    assert [(s.component, s.start, s.end) for s in p.segments] == [("wAHid", 0, 5), ("un", 5, 7)]
    assert p.rule == "n+s"


def test_union_keeps_payloads_apart():
    a = am.union(atom("ab", "x"), atom("ab", "y"))
    assert [p.rule for p in am.lookup(a, "ab")] == ["x", "y"]


def test_four_scheme_union():
    u = am.union(*(atom(s, s) for s in ("facala", "facila", "facula", "faclala")))
    d = am.determinize(u)
    assert d.is_deterministic()
    assert len(d.accepts) == 4
    assert am.enumerate_language(d, 10) == {"facala", "facila", "facula", "faclala"}
    m = am.minimize(d)
    assert len(m.accepts) == 4 and m.n_states <= d.n_states


def test_minimize_needs_dfa():
    with pytest.raises(NotDeterministic):
        am.minimize(am.union(atom("a", "x"), atom("b", "y")))


def test_minimize_merges_equal_payload_states():
    p = Payload(rule="r")
    u = am.union(am.atom("ab", p), am.atom("cb", p))
    m = am.minimize(am.determinize(u))
    # start, a|c, b
    assert m.n_states == 3


def test_bad_transitions():
    with pytest.raises(AutomatonError):
        Amaut(2, 0, [{"ab": [1]}, {}], {})
    with pytest.raises(AutomatonError):
        Amaut(1, 3, [{}], {})
    with pytest.raises(AutomatonError):
        Amaut(1, 0, [{}], {0: set()})


def test_count_words():
    u = am.union(atom("ab", "x"), atom("ab", "y"), atom("c", "z"))
    assert am.count_words(u) == 2
    loop = Amaut(1, 0, [{"a": [0]}], {0: {Payload()}})
    assert am.count_words(loop) is None


def test_enumerate_max_len():
    loop = Amaut(1, 0, [{"a": [0]}], {0: {Payload()}})
    assert am.enumerate_language(loop, 3) == {"", "a", "aa", "aaa"}
    with pytest.raises(AutomatonError):
        am.enumerate_language(loop, -1)


def test_epsilon_cycle_terminates():
    a = Amaut(2, 0, [{am.EPS: [1], "a": [1]}, {am.EPS: [0]}], {1: {Payload()}})
    assert am.enumerate_language(a, 2) == {"", "a", "aa"}
    assert am.enumerate_language(am.determinize(a), 2) == {"", "a", "aa"}


def test_lookup_order_is_sorted():
    u = am.union(atom("ab", "z"), atom("ab", "a"), atom("ab", "m"))
    assert [p.rule for p in am.lookup(u, "ab")] == ["a", "m", "z"]


def test_trim_drops_dead_states():
    a = Amaut(3, 0, [{"a": [1], "b": [2]}, {}, {}], {1: {Payload()}})
    t = am.trim(a)
    assert t.n_states == 2
    assert am.enumerate_language(t, 3) == {"a"}


_seed = st.integers(min_value=0, max_value=10**9)


@settings(max_examples=60, deadline=None)
@given(_seed)
def test_operations_agree_with_oracle(seed):
    rng = oracles.seeded(seed)
    ea, na, pa = oracles.random_nfa(rng, tag="a")
    eb, nb, pb = oracles.random_nfa(rng, tag="b")
    a, b = oracles.to_amaut(ea, na, pa), oracles.to_amaut(eb, nb, pb)
    ma = oracles.language_map(ea, pa, "abc", 5)
    mb = oracles.language_map(eb, pb, "abc", 5)
    assert oracles.as_sets(am.enumerate_payloads(a, 5)) == ma
    assert oracles.as_sets(am.enumerate_payloads(am.union(a, b), 5)) == oracles.union_map(ma, mb)
    assert oracles.as_sets(am.enumerate_payloads(am.concat(a, b), 5)) == oracles.concat_map(ma, mb, 5)
    d = am.determinize(a)
    assert d.is_deterministic()
    assert oracles.as_sets(am.enumerate_payloads(d, 5)) == ma
    assert oracles.as_sets(am.enumerate_payloads(am.minimize(d), 5)) == ma


@settings(max_examples=40, deadline=None)
@given(_seed)
def test_minimize_is_idempotent(seed):
    rng = oracles.seeded(seed)
    a = oracles.to_amaut(*oracles.random_nfa(rng))
    m = am.minimize(am.determinize(a))
    mm = am.minimize(m)
    assert mm.n_states == m.n_states
    assert m.n_states <= am.trim(am.determinize(a)).n_states
