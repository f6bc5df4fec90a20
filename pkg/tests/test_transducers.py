import pytest

from forest_skein.errors import DomainError, TransducerError
from forest_skein.forests import A, B, I, random_tree, rho, tau
from forest_skein.dynamics import PartitionTable
from forest_skein.points import ONE, RationalPoint, ZERO, random_point
from forest_skein.syntax import parse_point, parse_tree
from forest_skein.transducers import (
    COPY,
    Transducer,
    compose_transducers,
    compose_word,
    copy_states,
    eval_transducer,
    generator_transducer,
    is_prefix_map,
    local_action,
    local_action_symbols,
    prefix_replacement_along,
    prefix_transducer,
    transducer_equal,
)

NS = [3, 4, 5, 6]


def test_stalling_machine_is_rejected():
    with pytest.raises(TransducerError):
        Transducer("", ((("", 0), ("1", 0)),))


def test_generator_needs_n_at_least_3():
    with pytest.raises(DomainError):
        generator_transducer(2, "A0")


def test_b1_on_the_first_cones_for_n3():
    b1 = generator_transducer(3, "B1")
    x = parse_point("1(01)")
    assert eval_transducer(b1, x.prepend("00")) == x.prepend("01")
    assert eval_transducer(b1, x.prepend("01")) == x.prepend("10")
    assert eval_transducer(b1, x.prepend("10")) == x.prepend("1100")
    assert eval_transducer(b1, parse_point("10(0)")) == RationalPoint("1100", "0")
    assert eval_transducer(b1, ONE) == ONE


@pytest.mark.parametrize("n", NS)
def test_b1_shifts_the_partition(n, rng):
    table = PartitionTable(n)
    b1 = generator_transducer(n, "B1")
    b1n = compose_word(n, ["B1"] * n)
    for i in range(1, 21):
        x = random_point(rng)
        assert b1.eval(x.prepend(table.mu(i))) == x.prepend(table.mu(i + 1))
        assert b1n.eval(x.prepend(table.mu(i))) == x.prepend("11" + table.mu(i))


@pytest.mark.parametrize("n", NS)
def test_generator_identities(n):
    assert transducer_equal(compose_word(n, ["A1", "A1"]), compose_word(n, ["B1"] * n))
    assert transducer_equal(generator_transducer(n, "B0"), compose_word(n, ["A0"] * (n - 1)))


@pytest.mark.parametrize("n", NS)
def test_skein_relation_holds_leafwise(n):
    for i in range(1, n + 2):
        assert transducer_equal(local_action(n, tau(n, A), i), local_action(n, rho(n, B), i))


def test_local_action_symbols_follow_the_path():
    t = parse_tree("a(b(I,a(I,I)),I)")
    assert local_action_symbols(t, 1) == ["A0", "B0"]
    assert local_action_symbols(t, 2) == ["A0", "B1", "A0"]
    assert local_action_symbols(t, 3) == ["A0", "B1", "A1"]
    assert local_action_symbols(t, 4) == ["A1"]
    assert transducer_equal(local_action(3, t, 1), compose_word(3, ["A0", "B0"]))
    assert local_action(3, I, 1) is COPY


def test_compose_with_copy_is_neutral():
    b1 = generator_transducer(4, "B1")
    assert compose_transducers(COPY, b1) is b1
    assert compose_transducers(b1, COPY) is b1


@pytest.mark.parametrize("n", [3, 4])
def test_composition_is_evaluation_order(n, rng):
    syms = ["A0", "A1", "B0", "B1"]
    for _ in range(100):
        s = compose_word(n, [syms[int(k)] for k in rng.integers(0, 4, size=int(rng.integers(1, 5)))])
        t = compose_word(n, [syms[int(k)] for k in rng.integers(0, 4, size=int(rng.integers(1, 5)))])
        x = random_point(rng)
        assert compose_transducers(s, t).eval(x) == t.eval(s.eval(x))


def test_a0_and_a1_are_inequivalent_with_a_witness():
    a0, a1 = generator_transducer(3, "A0"), generator_transducer(3, "A1")
    verdict = transducer_equal(a0, a1)
    assert not verdict
    assert a0.eval(verdict.witness) != a1.eval(verdict.witness)


@pytest.mark.parametrize("n", [3, 4])
def test_equivalence_against_sampling(n, rng):
    syms = ["A0", "A1", "B0", "B1"]
    for _ in range(150):
        s = compose_word(n, [syms[int(k)] for k in rng.integers(0, 4, size=int(rng.integers(1, 7)))])
        t = compose_word(n, [syms[int(k)] for k in rng.integers(0, 4, size=int(rng.integers(1, 7)))])
        verdict = transducer_equal(s, t)
        if verdict:
            assert all(s.eval(x) == t.eval(x) for x in (random_point(rng) for _ in range(20)))
        else:
            assert s.eval(verdict.witness) != t.eval(verdict.witness)


def test_prefix_map_detection():
    assert is_prefix_map(prefix_transducer("0110")) == "0110"
    assert is_prefix_map(compose_word(3, ["A0", "A1", "B0"])) == "0100"
    assert is_prefix_map(generator_transducer(3, "B1")) is None
    assert is_prefix_map(COPY) == ""


def test_eval_simple_points():
    a0 = generator_transducer(3, "A0")
    assert a0.eval(ONE) == RationalPoint("0", "1")
    assert a0.eval(ZERO) == ZERO


def test_local_action_rejects_bad_index(rng):
    t = random_tree(rng, 3)
    with pytest.raises(DomainError):
        local_action(3, t, 0)


def test_copy_states():
    assert copy_states(COPY) == frozenset({0})
    assert copy_states(prefix_transducer("01")) == frozenset({0})
    b1 = generator_transducer(3, "B1")
    assert b1.initial_state not in copy_states(b1)


def test_prefix_replacement_along_a_point():
    b1 = generator_transducer(3, "B1")
    assert prefix_replacement_along(b1, RationalPoint("10", "0")) == ("10", "1100")
    assert prefix_replacement_along(b1, ONE) is None
    assert prefix_replacement_along(prefix_transducer("11"), ZERO) == ("", "11")
