import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordprox.errors import NotComparable, UnknownElement
from ordprox.order import CyclicOrder, PartialOrder, TotalOrder
from ordprox.proximity import (
    ProximityValue,
    PropertyResult,
    chain_between,
    check_properties,
    near,
    near_cyclic,
    near_partial,
    near_total,
)

from conftest import all_posets, random_cyclic_order, random_partial_order, random_total_order

NEAR, FAR, UNDEFINED = ProximityValue.NEAR, ProximityValue.FAR, ProximityValue.UNDEFINED


def test_numeric_convention():
    assert NEAR.numeric == 0
    assert FAR.numeric == 1
    assert UNDEFINED.numeric is None


class TestNearPartial:
    def test_cover_is_near(self, b3):
        assert near_partial(b3, "{}", "{x}") is NEAR

    def test_two_steps_is_far(self, b3):
        assert near_partial(b3, "{}", "{x,y}") is FAR

    def test_incomparable_is_undefined(self, b3):
        assert near_partial(b3, "{x}", "{y}") is UNDEFINED

    def test_reflexive_near(self, b3):
        assert near_partial(b3, "{x}", "{x}") is NEAR

    def test_unknown(self, b3):
        with pytest.raises(UnknownElement):
            near_partial(b3, "{w}", "{x}")

    def test_matches_brute_force_definition(self):
        rng = random.Random(7)
        for _ in range(30):
            po = random_partial_order(rng, rng.randint(1, 7))
            el = po.elements
            for a, b in itertools.product(el, repeat=2):
                if not po.leq(a, b):
                    expected = UNDEFINED
                elif any(po.leq(a, x) and po.leq(x, b) for x in el if x not in (a, b)):
                    expected = FAR
                else:
                    expected = NEAR
                assert near_partial(po, a, b) is expected


class TestNearTotal:
    def test_integer_window(self, window):
        assert near_total(window, 0, 1) is NEAR
        assert near_total(window, 0, 2) is FAR
        assert near_total(window, 1, 0) is UNDEFINED

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 8).flatmap(lambda n: st.permutations(range(n))))
    def test_undefined_only_when_strictly_above(self, seq):
        to = TotalOrder.from_sequence(seq)
        for a, b in itertools.product(seq, repeat=2):
            assert (near_total(to, a, b) is UNDEFINED) == (to.rank(b) < to.rank(a))


class TestNearCyclic:
    def test_successor_is_near(self, five_cycle):
        assert near_cyclic(five_cycle, "v1", "v2") is NEAR
        assert near_cyclic(five_cycle, "v5", "v1") is NEAR

    def test_reverse_is_far(self, five_cycle):
        assert near_cyclic(five_cycle, "v2", "v1") is FAR

    def test_irreflexive(self, five_cycle):
        assert near_cyclic(five_cycle, "v1", "v1") is FAR

    def test_unknown(self, five_cycle):
        with pytest.raises(UnknownElement):
            near_cyclic(five_cycle, "v1", "v9")

    def test_matches_triple_definition(self):
        # NEAR iff some [a,b,c] holds and no x gives [a,x,b]
        rng = random.Random(11)
        for n in range(3, 8):
            cyc = random_cyclic_order(rng, n)
            el = cyc.elements
            for a, b in itertools.product(el, repeat=2):
                exists = any(cyc.triple(a, b, c) for c in el)
                blocked = any(cyc.triple(a, x, b) for x in el if x not in (a, b))
                expected = NEAR if exists and not blocked else FAR
                assert near_cyclic(cyc, a, b) is expected

    @pytest.mark.parametrize("n", range(3, 9))
    def test_near_count_and_return_time(self, n):
        cyc = random_cyclic_order(random.Random(n), n)
        el = cyc.elements
        near_pairs = [(a, b) for a in el for b in el if near(cyc, a, b) is NEAR]
        assert len(near_pairs) == n
        step = dict(near_pairs)
        for a in el:
            cur, steps = step[a], 1
            while cur != a:
                cur, steps = step[cur], steps + 1
            assert steps == n


@pytest.mark.parametrize("n", range(1, 6))
def test_partial_axioms_exhaustive(n):
    for po in all_posets(n):
        el = po.elements
        v = {(a, b): near(po, a, b) for a in el for b in el}
        for a, b in itertools.product(el, repeat=2):
            if v[a, b] is NEAR and v[b, a] is NEAR:
                assert a == b
        for a, b, c in itertools.permutations(el, 3):
            if v[a, b] is NEAR and v[b, c] is NEAR:
                assert v[a, c] is FAR


@pytest.mark.parametrize("n", [6, 7, 8])
def test_partial_axioms_random_large(n):
    rng = random.Random(100 + n)
    for _ in range(20):
        assert check_properties(random_partial_order(rng, n)).ok


class TestCheckProperties:
    def test_total_order_all_hold(self, window):
        report = check_properties(window)
        assert report.ok
        assert report.names() == ["reflexivity", "antisymmetry", "antitransitivity", "totality"]

    def test_cyclic_all_five_hold(self, five_cycle):
        report = check_properties(five_cycle)
        assert report.ok
        assert report.names() == [
            "irreflexivity", "antisymmetry", "antitransitivity", "totality", "cyclicity"
        ]

    def test_partial_property_names(self, b3):
        report = check_properties(b3)
        assert report.ok
        assert report.names() == ["reflexivity", "antisymmetry", "antitransitivity"]

    def test_non_transitive_relation_reported(self):
        broken = PartialOrder("abc", [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")])
        report = check_properties(broken)
        r = report["antitransitivity"]
        assert not r.holds
        assert r.counterexample == ("a", "b", "c")

    def test_missing_reflexive_reported(self):
        broken = PartialOrder("ab", [("a", "b"), ("b", "b")])
        r = check_properties(broken)["reflexivity"]
        assert r.counterexample == ("a",)

    def test_split_cycle_breaks_totality(self):
        broken = CyclicOrder("abcdef", {"a": "b", "b": "c", "c": "a", "d": "e", "e": "f", "f": "d"})
        report = check_properties(broken)
        assert not report["totality"].holds
        assert not report.ok

    def test_open_path_breaks_cyclicity(self):
        broken = CyclicOrder("abc", {"a": "b", "b": "c"})
        r = check_properties(broken)["cyclicity"]
        assert r.counterexample == ("a", "b", "c")

    def test_report_invariant(self):
        with pytest.raises(ValueError):
            PropertyResult("x", True, ("a",))
        with pytest.raises(ValueError):
            PropertyResult("x", False, None)

    def test_to_dict(self, five_cycle):
        d = check_properties(five_cycle).to_dict()
        assert d["kind"] == "cyclic" and d["ok"]


class TestChainBetween:
    def test_window(self, window):
        # oracle: everything between 0 and 3, in rank order
        expected = sorted(x for x in window.elements if window.leq(0, x) and window.leq(x, 3))
        assert chain_between(window, 0, 3) == expected == [0, 1, 2, 3]

    def test_same(self, window):
        assert chain_between(window, 2, 2) == [2]

    def test_wrong_direction(self, window):
        with pytest.raises(NotComparable):
            chain_between(window, 3, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 8).flatmap(lambda n: st.permutations(range(n))), st.data())
    def test_chain_links_are_near(self, seq, data):
        to = TotalOrder.from_sequence(seq)
        a, b = sorted(data.draw(st.lists(st.sampled_from(seq), min_size=2, max_size=2)), key=to.rank)
        chain = chain_between(to, a, b)
        assert chain[0] == a and chain[-1] == b
        assert len(chain) - 1 == to.rank(b) - to.rank(a)
        assert all(near_total(to, x, y) is NEAR for x, y in zip(chain, chain[1:]))


def test_random_orders_all_kinds_hold():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(3, 8)
        for order in (random_partial_order(rng, n), random_total_order(rng, n), random_cyclic_order(rng, n)):
            assert check_properties(order).ok
