import pytest

from forest_skein.errors import ParseError
from forest_skein.gamma import (
    GammaPlusElement,
    centre_row,
    colour_word_minus,
    colour_word_plus,
    gamma_minus_invariants,
    gamma_plus_invariants,
    gamma_plus_mod_centre_invariants,
    gamma_plus_normalise,
    germ_invariants,
    relator_row,
)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_centre_relations(n):
    z = GammaPlusElement(n, 1)
    assert colour_word_plus(n, "aa") == z
    assert colour_word_plus(n, "b" * n) == z


def test_inverses_expand_through_the_centre():
    assert str(gamma_plus_normalise(3, "A")) == "z^-1·a"
    assert str(gamma_plus_normalise(3, "B")) == "z^-1·b^2"
    assert str(gamma_plus_normalise(3, "b·A")) == "z^-1·b·a"


def test_inverse_and_identity(rng):
    for n in (3, 4, 5):
        for _ in range(50):
            w = "".join("ab"[int(i)] for i in rng.integers(0, 2, size=int(rng.integers(0, 9))))
            g = colour_word_plus(n, w)
            assert (g * g.inverse()).is_identity
            assert str(GammaPlusElement(n)) == "e"


def test_free_product_image_drops_the_centre():
    g = gamma_plus_normalise(4, "aab")
    assert g.k == 1
    assert g.free_product_image() == (("b", 1),)
    assert g.abelian_image() == (0, 1)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as info:
        gamma_plus_normalise(3, "ab?")
    assert info.value.position == 2


def test_gamma_minus_is_z():
    assert colour_word_minus(3, "aa").value == 2
    assert colour_word_minus(3, "b").value == 2
    assert colour_word_minus(5, "b").value == 4
    # a^{n-1} = b
    for n in (3, 4, 5):
        assert colour_word_minus(n, "a" * (n - 1)) == colour_word_minus(n, "b")


def test_invariants():
    assert gamma_plus_invariants(3).free_rank == 1
    assert gamma_plus_invariants(3).torsion == ()
    assert gamma_plus_invariants(4).torsion == (2,)
    assert gamma_minus_invariants(4).free_rank == 1
    assert gamma_minus_invariants(4).torsion == ()
    assert gamma_plus_mod_centre_invariants(3).torsion == (6,)
    assert gamma_plus_mod_centre_invariants(4).torsion == (2, 4)
    assert gamma_plus_mod_centre_invariants(5).torsion == (10,)
    assert str(gamma_plus_mod_centre_invariants(4)) == "Z_2 ⊕ Z_4"


def test_germ_invariants_distinguish_n():
    seen = {n: germ_invariants(n)["gamma_plus_mod_centre"] for n in (3, 4, 5)}
    assert len({inv.torsion for inv in seen.values()}) == 3
    assert all(inv.order == 2 * n for n, inv in seen.items())


def test_normal_form_is_confluent():
    z = GammaPlusElement(3, 1)
    assert gamma_plus_normalise(3, "abbbA") == z
    assert gamma_plus_normalise(3, "a·z·A") == z
    assert gamma_plus_normalise(3, "bbbaA") == gamma_plus_normalise(3, "aabB")
    assert str(gamma_plus_normalise(3, "ab")) == "a·b"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_relator_rows_come_from_the_relation_trees(n):
    assert relator_row(n, "plus") == [2, -n]
    assert relator_row(n, "minus") == [n - 1, -1]
    assert centre_row(n) == [2, 0]
    assert colour_word_plus(n, "aa") == GammaPlusElement(n, 1)
