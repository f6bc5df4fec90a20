from fractions import Fraction as Q

import pytest

from forest_skein.dynamics import (
    PartitionTable,
    canonical_action,
    Germ,
    check_piece,
    circle_germ,
    cone_image,
    dyadic_class,
    germ_at,
    germ_classify,
    in_image,
    preserves_cyclic_order,
    preserves_lex_order,
    render,
)
from forest_skein.errors import DomainError
from forest_skein.forests import A, B, caret, random_tree
from forest_skein.gamma import GammaMinusElement, GammaPlusElement, gamma_plus_normalise
from forest_skein.groups import GroupElement, c_bar, inverse, iota_embed, random_element
from forest_skein.permutations import Permutation
from forest_skein.points import ONE, ZERO, RationalPoint, random_point, sigma_circle
from forest_skein.syntax import parse_element, parse_point, parse_tree
from forest_skein.transducers import local_action, local_action_symbols

YB_YA_PIECES = [
    (Q(0), Q(1, 2), Q(0), Q(1, 4), -1),
    (Q(1, 2), Q(5, 8), Q(1, 4), Q(1, 2), 1),
    (Q(5, 8), Q(3, 4), Q(1, 2), Q(3, 4), 1),
    (Q(3, 4), Q(7, 8), Q(3, 4), Q(13, 16), -1),
]


def _rows(graph):
    return [(p.x0, p.x1, p.y0, p.y1, p.slope_log2) for p in graph.pieces]


# --- Partition ----------------------------------------------------------------
@pytest.mark.parametrize("n", [3, 4, 5])
def test_mu_recurrence(n):
    table = PartitionTable(n)
    assert table.mu(1) == "0" * (n - 1)
    for i in range(1, 51):
        assert table.mu(i + n) == "11" + table.mu(i)


def test_locate_finds_the_unique_cone(rng):
    table = PartitionTable(4)
    for _ in range(200):
        x = random_point(rng)
        found = table.locate(x)
        if x == ONE:
            assert found is None
            continue
        i, rest = found
        assert rest.prepend(table.mu(i)) == x
    assert table.locate(ONE) is None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_leaf_images_partition_cantor_space(n, rng):
    for _ in range(60):
        t = random_tree(rng, int(rng.integers(0, 8)))
        words = [local_action_symbols(t, i) for i in range(1, t.leaf_count + 1)]
        for _ in range(20):
            x = random_point(rng)
            assert sum(in_image(n, w, x) for w in words) == 1


# --- Canonical action ---------------------------------------------------------
def test_yb_over_ya_on_cones(yb_ya):
    x = parse_point("0(110)")
    assert canonical_action(yb_ya, x.prepend("0")) == x.prepend("00")
    assert canonical_action(yb_ya, x.prepend("100")) == x.prepend("01")
    assert canonical_action(yb_ya, x.prepend("101")) == x.prepend("10")
    assert canonical_action(yb_ya, x.prepend("110")) == x.prepend("1100")


def test_transposed_caret_example(ctx3, rng):
    g = GroupElement(ctx3, caret(B), Permutation((2, 1)), caret(A), "T")
    for _ in range(30):
        x = random_point(rng)
        # the left cone of Y_a goes to where β(Y_b, 2) sends it
        assert canonical_action(g, x.prepend("0")) == local_action(3, caret(B), 2).eval(x)


def test_f_elements_preserve_order_and_fix_the_ends(ctx3, rng):
    for _ in range(10):
        g = random_element(ctx3, rng, carets=3, type_tag="F")
        pairs = [(random_point(rng), random_point(rng)) for _ in range(20)]
        assert preserves_lex_order(g, pairs)
        assert canonical_action(g, ZERO) == ZERO
        assert canonical_action(g, ONE) == ONE


def test_t_elements_preserve_cyclic_order(ctx3, rng):
    for _ in range(10):
        g = random_element(ctx3, rng, carets=3, type_tag="T")
        triples = [tuple(random_point(rng) for _ in range(3)) for _ in range(20)]
        assert preserves_cyclic_order(g, triples)


def test_dyadic_classes_are_preserved(ctx3, rng):
    for _ in range(10):
        g = random_element(ctx3, rng, carets=3, type_tag="V")
        for period in ("0", "1"):
            x = RationalPoint("".join(str(b) for b in rng.integers(0, 2, size=4)), period)
            assert dyadic_class(canonical_action(g, x)) == dyadic_class(x)


# --- Rendering ----------------------------------------------------------------
def test_render_yb_over_ya(yb_ya):
    graph = render(yb_ya, depth=6)
    assert _rows(graph)[:4] == YB_YA_PIECES
    # cones of depth 6 whose image needs a seventh bit stay singular
    assert graph.singular == ((Q(31, 32), Q(63, 64)), (Q(63, 64), Q(1)))
    assert graph.singular_measure == Q(3, 64)
    assert all(p.y1 - p.y0 == p.slope * (p.x1 - p.x0) for p in graph.pieces)


def test_render_shows_the_self_similar_block(yb_ya):
    graph = render(yb_ya, depth=8)
    assert (Q(7, 8), Q(15, 16), Q(13, 16), Q(15, 16)) in [(p.x0, p.x1, p.y0, p.y1) for p in graph.merged()]
    assert all(a >= Q(7, 8) for a, _ in graph.singular)


def test_render_pieces_recheck(yb_ya, ctx3, rng):
    for g in [yb_ya, random_element(ctx3, rng, carets=3, type_tag="T")]:
        graph = render(g, depth=7)
        assert all(check_piece(g, p) for p in graph.pieces)
        xs = [p.x0 for p in graph.pieces]
        assert xs == sorted(xs)


def test_render_identity(ctx3):
    graph = render(GroupElement.identity(ctx3))
    assert _rows(graph) == [(Q(0), Q(1), Q(0), Q(1), 0)]
    assert graph.singular == ()


def test_iota_fixes_the_outside(yb_ya):
    graph = render(iota_embed(yb_ya), depth=8)
    for p in graph.pieces:
        if p.x1 <= Q(1, 4) or p.x0 >= Q(1, 2):
            assert (p.x0, p.x1) == (p.y0, p.y1)


def test_render_refuses_v(ctx3):
    g = parse_element("[a(I,a(I,I)) | perm(2 1 3) | a(a(I,I),I)]", ctx3)
    with pytest.raises(DomainError):
        render(g)
    with pytest.raises(DomainError):
        render(GroupElement.identity(ctx3), depth=0)


# --- Germs --------------------------------------------------------------------
def test_germ_classify():
    assert germ_classify(Q(0)) == "Γ⁺×Γ⁻"
    assert germ_classify(Q(3, 4)) == "Γ⁺×Γ⁻"
    assert germ_classify(sigma_circle(RationalPoint("", "10"))) == "Z"
    assert germ_classify(RationalPoint("", "10")) == "Z"
    assert germ_classify(RationalPoint("01", "1")) == "Γ⁺×Γ⁻"


def _period_shift(ctx):
    """Maps 01·z to 0101·z, fixing the point (01)."""
    return GroupElement.make(ctx, parse_tree("a(a(I,a(a(I,I),I)),I)"), parse_tree("a(a(a(I,I),I),a(I,I))"))


def test_germs_at_zero_are_the_cbar_values(ctx, rng):
    for _ in range(25):
        g = random_element(ctx, rng, carets=int(rng.integers(1, 5)), type_tag="F")
        left, right = circle_germ(g, Q(0))
        assert left == Germ(ONE, c_bar("plus", g))
        assert right == Germ(ZERO, c_bar("minus", g))


def test_germs_at_the_ends_of_an_embedded_cone(yb_ya):
    e = iota_embed(yb_ya)
    a = gamma_plus_normalise(3, "a")
    # 01·1̄ has shortest prefix 0, so the germ at 1̄ comes back conjugated by a
    assert germ_at(e, RationalPoint("01", "1")).value == a * c_bar("plus", yb_ya) * a.inverse()
    assert germ_at(e, RationalPoint("01", "0")).value == c_bar("minus", yb_ya)
    left, right = circle_germ(e, Q(1, 2))
    assert left.point == RationalPoint("0", "1") and not left.is_trivial
    assert right == Germ(RationalPoint("1", "0"), GammaMinusElement(3, 0))


def test_germ_at_a_periodic_point_counts_periods(ctx3):
    g = _period_shift(ctx3)
    x = RationalPoint("", "01")
    assert germ_at(g, x) == Germ(x, 1)
    assert germ_at(inverse(g), x).value == -1
    assert circle_germ(g, Q(1, 3)) == (Germ(x, 1),)
    assert germ_at(g, RationalPoint("1", "10")).is_trivial


def test_identity_germ_at_a_deep_dyadic(ctx3):
    e = GroupElement.identity(ctx3)
    assert germ_at(e, RationalPoint("0101", "1")).value == GammaPlusElement(3)
    assert germ_at(e, RationalPoint("0110", "0")).is_trivial


def test_germ_needs_a_fixed_point(ctx3, yb_ya):
    with pytest.raises(DomainError):
        germ_at(_period_shift(ctx3), RationalPoint("00", "1"))
    with pytest.raises(DomainError):
        germ_at(yb_ya, RationalPoint("1", "0"))


def test_cone_image(yb_ya):
    assert cone_image(yb_ya, "110") == "1100"
    assert cone_image(yb_ya, "0") == "00"
    assert cone_image(yb_ya, "") is None
