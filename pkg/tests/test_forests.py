import pytest

from forest_skein.errors import DomainError
from forest_skein.forests import (
    A,
    B,
    Forest,
    I,
    Node,
    caret,
    colour_word,
    compose,
    compose_tree,
    count_colour,
    hanging_subtrees,
    leaf_addresses,
    leaf_path,
    random_tree,
    recompose,
    replace_at,
    right_vine,
    right_vine_decomposition,
    right_vines,
    rho,
    subtree_match,
    tau,
    tensor,
    trivial_forest,
    vine,
)
from forest_skein.syntax import parse_tree


def test_tau_has_n_carets_and_the_documented_leaves():
    for n in (3, 4, 5, 6):
        t = tau(n, A)
        assert t.caret_count == n
        assert t.leaf_count == n + 1
        leaves = leaf_addresses(t)
        assert leaves[0] == "0" * (n - 1)
        assert leaves[-2:] == ["10", "11"]
        assert leaves[1:n - 1] == ["0" * (n - i) + "1" for i in range(2, n)]


def test_rho_matches_tau_leaf_count():
    assert rho(3, B).leaf_count == tau(3, A).leaf_count == 4


def test_vines():
    assert vine("left", 0, A) == I
    assert repr(vine("left", 2, B)) == "b(b(I,I),I)"
    assert repr(vine("right", 2, A)) == "a(I,a(I,I))"
    with pytest.raises(DomainError):
        vine("up", 2, A)


def test_compose_stacks_forest_on_leaves():
    f = Forest.of(caret(A))
    g = Forest((caret(B), I))
    h = compose(f, g)
    assert repr(h.trees[0]) == "a(b(I,I),I)"
    with pytest.raises(DomainError):
        compose(f, Forest((I,)))


def test_tensor_concatenates():
    f = tensor(caret(A), I, caret(B))
    assert f.roots == 3
    assert f.leaves == 5


def test_leaf_path_is_root_first():
    t = parse_tree("a(b(I,a(I,I)),I)")
    assert leaf_path(t, 1) == [("a", "0"), ("b", "0")]
    assert leaf_path(t, 3) == [("a", "0"), ("b", "1"), ("a", "1")]
    assert leaf_path(t, 4) == [("a", "1")]
    with pytest.raises(DomainError):
        leaf_path(t, 5)


def test_subtree_match_and_replace_keeps_hanging_order():
    t = Node(A, Node(A, caret(B), I), Node(A, I, caret(B)))
    pattern = tau(3, A)
    assert subtree_match(t, "", pattern)
    hanging = hanging_subtrees(t, pattern)
    assert hanging == [caret(B), I, I, caret(B)]
    out = replace_at(t, "", rho(3, B), pattern=pattern)
    assert hanging_subtrees(out, rho(3, B)) == hanging


def test_replace_at_rejects_leaf_count_mismatch():
    with pytest.raises(DomainError):
        replace_at(caret(A), "", tau(3, A))


def test_right_vine_decomposition_recomposes(rng):
    for _ in range(100):
        t = random_tree(rng, int(rng.integers(0, 9)))
        factors = right_vine_decomposition(t)
        assert recompose(factors) == t
        assert sum(v.caret_count for v in right_vines(t)) == t.caret_count


def test_colour_words():
    t = parse_tree("b(a(I,I),a(I,b(I,I)))")
    assert colour_word("minus", t) == "ba"
    assert colour_word("plus", t) == "bab"
    assert colour_word("plus", right_vine("abb")) == "abb"


def test_compose_tree_counts_colours():
    t = compose_tree(caret(B), Forest((caret(A), caret(B))))
    assert count_colour(t, B) == 2
    assert count_colour(t, A) == 1


def _forest_on(rng, roots, max_carets=3):
    return Forest(tuple(random_tree(rng, int(rng.integers(0, max_carets))) for _ in range(roots)))


# --- Monoidal laws ------------------------------------------------------------
def test_compose_is_associative(rng):
    for _ in range(100):
        f = _forest_on(rng, int(rng.integers(1, 3)), max_carets=5)
        g = _forest_on(rng, f.leaves)
        h = _forest_on(rng, g.leaves)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert compose(f, trivial_forest(f.leaves)) == f
        assert compose(trivial_forest(f.roots), f) == f


def test_interchange_law(rng):
    for _ in range(100):
        f = _forest_on(rng, int(rng.integers(1, 3)))
        g = _forest_on(rng, int(rng.integers(1, 3)))
        f2 = _forest_on(rng, f.leaves)
        g2 = _forest_on(rng, g.leaves)
        assert compose(tensor(f, g), tensor(f2, g2)) == tensor(compose(f, f2), compose(g, g2))


def test_tensor_is_associative(rng):
    for _ in range(50):
        f, g, h = (_forest_on(rng, int(rng.integers(1, 3))) for _ in range(3))
        assert tensor(tensor(f, g), h) == tensor(f, tensor(g, h))
    assert tensor(I, caret(A)) == Forest((I, caret(A)))


def test_lambda_and_rho_from_carets():
    assert compose(caret(A), tensor(caret(A), I)) == Forest.of(vine("left", 2, A))
    assert compose(caret(B), tensor(I, caret(B))) == Forest.of(vine("right", 2, B))


# --- Addresses and patterns ---------------------------------------------------
def test_leaf_addresses_strictly_increase(rng):
    assert leaf_addresses(I) == [""]
    assert leaf_addresses(rho(3, B)) == ["0", "10", "110", "111"]
    for _ in range(100):
        t = random_tree(rng, int(rng.integers(0, 10)))
        leaves = leaf_addresses(t)
        assert len(leaves) == t.leaf_count
        assert all(u < v for u, v in zip(leaves, leaves[1:]))


def test_replace_rho_by_tau_at_the_root():
    assert subtree_match(rho(3, B), "", rho(3, B))
    assert not subtree_match(caret(A), "", caret(B))
    assert replace_at(rho(3, B), "", tau(3, A)) == tau(3, A)


def test_left_vine_decomposes_into_two_carets():
    factors = right_vine_decomposition(vine("left", 2, A))
    assert factors == [Forest.of(caret(A)), Forest((caret(A), I))]
    assert right_vine_decomposition(rho(4, B)) == [Forest.of(rho(4, B))]


# --- Colour words -------------------------------------------------------------
def test_colour_words_of_a_germ_tree():
    t = parse_tree("a(b(I,I),I)")
    assert colour_word("minus", t) == "ab"
    assert colour_word("plus", t) == "a"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_colour_words_of_the_relation(n):
    assert colour_word("plus", tau(n, A)) == "aa"
    assert colour_word("plus", rho(n, B)) == "b" * n


def test_colour_words_multiply_under_compose(rng):
    for _ in range(200):
        f = _forest_on(rng, int(rng.integers(1, 3)), max_carets=5)
        g = _forest_on(rng, f.leaves, max_carets=4)
        fg = compose(f, g)
        for side in ("minus", "plus"):
            assert colour_word(side, fg) == colour_word(side, f) + colour_word(side, g)
