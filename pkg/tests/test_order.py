import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordprox.errors import (
    AntisymmetryViolation,
    DegenerateTriple,
    DuplicateElement,
    IncomparablePair,
    InconsistentTriples,
    AmbiguousTriples,
    MissingReflexivePair,
    TooFewElements,
    TransitivityViolation,
    UnknownElement,
    ValidationError,
)
from ordprox.order import (
    CyclicOrder,
    TotalOrder,
    cyclic_from_total,
    order_from_json,
    triple_holds,
    validate_cyclic_order,
    validate_partial_order,
    validate_total_order,
)

from conftest import powerset_lattice, random_partial_order


def three_disjunct(to, a, b, c):
    le = to.leq
    return (le(a, b) and le(b, c)) or (le(b, c) and le(c, a)) or (le(c, a) and le(a, b))


class TestPartialOrder:
    def test_powerset_lattice_is_valid(self):
        labels, pairs = powerset_lattice()
        po = validate_partial_order(labels, pairs)
        assert len(po) == 8
        assert po.leq("{}", "{x,y,z}")
        assert not po.leq("{x}", "{y}")

    def test_single_element(self):
        po = validate_partial_order(["a"], [("a", "a")])
        assert po.pairs == [("a", "a")]

    def test_antisymmetry_violation(self):
        with pytest.raises(AntisymmetryViolation):
            validate_partial_order(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")])

    def test_missing_reflexive_pair_is_not_added(self):
        with pytest.raises(MissingReflexivePair):
            validate_partial_order(["a", "b"], [("a", "a"), ("a", "b")])

    def test_transitivity_checked_not_completed(self):
        pairs = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")]
        with pytest.raises(TransitivityViolation) as exc:
            validate_partial_order("abc", pairs)
        assert exc.value.triple == ("a", "b", "c")

    def test_unknown_element(self):
        with pytest.raises(UnknownElement):
            validate_partial_order(["a"], [("a", "a"), ("a", "z")])

    def test_duplicate_and_empty_ids(self):
        with pytest.raises(DuplicateElement):
            validate_partial_order(["a", "a"], [("a", "a")])
        with pytest.raises(ValidationError):
            validate_partial_order([""], [("", "")])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 7), st.integers(0, 10_000))
    def test_axioms_hold_as_set_membership(self, n, seed):
        po = random_partial_order(random.Random(seed), n)
        pairs = set(po.pairs)
        el = po.elements
        for a in el:
            assert (a, a) in pairs
        for a, b in itertools.product(el, repeat=2):
            if (a, b) in pairs and (b, a) in pairs:
                assert a == b
        for a, b, c in itertools.product(el, repeat=3):
            if (a, b) in pairs and (b, c) in pairs:
                assert (a, c) in pairs


class TestTotalOrder:
    def test_integer_window(self):
        el = list(range(6))
        to = validate_total_order(el, [(a, b) for a in el for b in el if a <= b])
        assert [to.rank(i) for i in el] == el
        assert to.chain == tuple(el)

    def test_powerset_is_not_total(self):
        labels, pairs = powerset_lattice()
        with pytest.raises(IncomparablePair) as exc:
            validate_total_order(labels, pairs)
        assert exc.value.pair == ("{x}", "{y}")

    def test_one_element(self):
        to = validate_total_order(["a"], [("a", "a")])
        assert to.rank("a") == 0

    @settings(max_examples=60, deadline=None)
    @given(st.permutations(list("abcdefg")))
    def test_rank_matches_pairs(self, seq):
        pairs = [(seq[i], seq[j]) for i in range(len(seq)) for j in range(i, len(seq))]
        to = validate_total_order(sorted(seq), pairs)
        for a, b in itertools.product(seq, repeat=2):
            assert (to.rank(a) <= to.rank(b)) == to.leq(a, b)


class TestCyclicOrder:
    def test_five_cycle_from_its_triples(self):
        seq = ["v1", "v2", "v3", "v4", "v5"]
        triples = CyclicOrder.from_sequence(seq).triples()
        cyc = validate_cyclic_order(seq, triples)
        assert cyc.successor == {"v1": "v2", "v2": "v3", "v3": "v4", "v4": "v5", "v5": "v1"}

    def test_five_cycle_sample_triples(self, five_cycle):
        assert triple_holds(five_cycle, "v4", "v5", "v1")
        assert triple_holds(five_cycle, "v5", "v2", "v4")
        assert not triple_holds(five_cycle, "v4", "v2", "v5")
        assert not triple_holds(five_cycle, "v1", "v5", "v4")

    def test_repeated_components_are_false(self, five_cycle):
        assert not triple_holds(five_cycle, "v1", "v1", "v3")

    def test_unknown_element_in_query(self, five_cycle):
        with pytest.raises(UnknownElement):
            triple_holds(five_cycle, "v1", "v2", "zz")

    def test_contradictory_triples(self):
        with pytest.raises(InconsistentTriples):
            validate_cyclic_order("abc", [("a", "b", "c"), ("c", "b", "a")])

    def test_single_triple_on_three(self):
        # oracle: of the two circular arrangements of {a,b,c}, only a->b->c has [a,b,c]
        arrangements = [("a", "b", "c"), ("a", "c", "b")]
        realising = [s for s in arrangements if CyclicOrder.from_sequence(s).triple("a", "b", "c")]
        assert realising == [("a", "b", "c")]
        cyc = validate_cyclic_order("abc", [("a", "b", "c")])
        assert cyc.successor == {"a": "b", "b": "c", "c": "a"}

    def test_errors(self):
        with pytest.raises(TooFewElements):
            validate_cyclic_order("ab", [])
        with pytest.raises(DegenerateTriple):
            validate_cyclic_order("abc", [("a", "a", "b")])
        with pytest.raises(UnknownElement):
            validate_cyclic_order("abc", [("a", "b", "q")])

    def test_ambiguity_can_be_rejected(self):
        # [a,b,c] alone leaves d free to sit in any of three gaps
        cyc = validate_cyclic_order("abcd", [("a", "b", "c")])
        assert cyc.triple("a", "b", "c")
        with pytest.raises(AmbiguousTriples):
            validate_cyclic_order("abcd", [("a", "b", "c")], require_unique=True)

    def test_recovers_shuffled_declaration(self):
        rng = random.Random(3)
        for n in range(3, 8):
            seq = [f"x{i}" for i in range(n)]
            rng.shuffle(seq)
            truth = CyclicOrder.from_sequence(seq)
            decl = sorted(seq)
            cyc = validate_cyclic_order(decl, truth.triples(), require_unique=True)
            assert cyc.triples() == truth.triples()

    @pytest.mark.parametrize("n", range(3, 8))
    def test_axioms_exhaustive(self, n):
        cyc = CyclicOrder.from_sequence(range(n))
        el = cyc.elements
        t = cyc.triple
        for a, b, c in itertools.product(el, repeat=3):
            if t(a, b, c):
                assert t(b, c, a)
                assert not t(c, b, a)
            if len({a, b, c}) == 3:
                assert t(a, b, c) or t(c, b, a)
            for d in el:
                if t(a, b, c) and t(a, c, d):
                    assert t(a, b, d)


class TestCyclicFromTotal:
    def test_three(self):
        cyc = cyclic_from_total(TotalOrder.from_sequence([1, 2, 3]))
        assert cyc.successor == {1: 2, 2: 3, 3: 1}
        assert cyc.triple(1, 2, 3)
        assert not cyc.triple(3, 2, 1)

    def test_three_against_enumeration(self):
        to = TotalOrder.from_sequence([1, 2, 3])
        cyc = cyclic_from_total(to)
        for p in itertools.permutations([1, 2, 3]):
            assert cyc.triple(*p) == three_disjunct(to, *p)

    def test_wraparound_four(self):
        to = TotalOrder.from_sequence("abcd")
        cyc = cyclic_from_total(to)
        assert three_disjunct(to, "d", "a", "b")
        assert cyc.triple("d", "a", "b")

    def test_too_few(self):
        with pytest.raises(TooFewElements):
            cyclic_from_total(TotalOrder.from_sequence("ab"))

    def test_duplicate_ids_rejected_upstream(self):
        with pytest.raises(DuplicateElement):
            TotalOrder.from_sequence("aab")

    @settings(max_examples=80, deadline=None)
    @given(st.integers(3, 7).flatmap(lambda n: st.permutations(range(n))))
    def test_matches_three_disjunct_definition(self, seq):
        to = TotalOrder.from_sequence(seq)
        cyc = cyclic_from_total(to)
        expected = {
            (a, b, c)
            for a, b, c in itertools.permutations(seq, 3)
            if three_disjunct(to, a, b, c)
        }
        assert cyc.triples() == expected


class TestJson:
    def test_partial(self):
        obj = {"kind": "partial", "elements": ["a", "b"], "pairs": [["a", "a"], ["b", "b"], ["a", "b"]]}
        assert order_from_json(json.loads(json.dumps(obj))).leq("a", "b")

    def test_cyclic(self):
        obj = {"kind": "cyclic", "elements": ["a", "b", "c"], "triples": [["a", "b", "c"]]}
        assert order_from_json(obj).successor["a"] == "b"

    def test_bad_kind(self):
        with pytest.raises(ValidationError):
            order_from_json({"kind": "lattice", "elements": []})
