"""
Forest-skein group elements
---------------------------
Fractions [t/π/s] of the F_n category: numerator tree t, leaf permutation π,
denominator tree s. Type tags F ⊂ T ⊂ V (identity / rotation / any π) give the
groups L_n ⊂ G_n ⊂ M_n.

Equality is decided through the canonical action: after growing s into an
a-tree, an element is trivial iff each numerator local action is the prefix
map of the matching denominator leaf. The action is faithful, so this is a
complete decision procedure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from forest_skein.errors import DomainError
from forest_skein.forests import (
    A,
    B,
    Forest,
    I,
    Node,
    Tree,
    colour_word,
    compose_tree,
    count_colour,
    leaf_addresses,
    random_tree,
    replace_subtree,
    vine,
)
from forest_skein.gamma import (
    GammaMinusElement,
    GammaPlusElement,
    colour_word_minus,
    colour_word_plus,
)
from forest_skein.permutations import Permutation, bzs_drag, random_permutation, unpermute
from forest_skein.points import RationalPoint
from forest_skein.skein import (
    Grow,
    MoveTrace,
    SkeinContext,
    grow_to_a_tree,
    make_good_tree,
    right_common_multiple,
)
from forest_skein.transducers import local_action, prefix_transducer, transducer_equal

logger = logging.getLogger(__name__)

TYPE_TAGS = ("F", "T", "V")


def smallest_tag(pi: Permutation) -> str:
    if pi.is_identity:
        return "F"
    return "T" if pi.rotation_amount is not None else "V"


def join_tags(*tags: str) -> str:
    return max(tags, key=TYPE_TAGS.index)


@dataclass(frozen=True)
class GroupElement:
    ctx: SkeinContext
    numerator: Tree
    perm: Permutation
    denominator: Tree
    type_tag: str = "F"

    def __post_init__(self) -> None:
        if self.type_tag not in TYPE_TAGS:
            raise DomainError(f"type tag must be one of {TYPE_TAGS}, got {self.type_tag!r}")
        leaves = self.numerator.leaf_count
        if self.denominator.leaf_count != leaves or self.perm.size != leaves:
            raise DomainError(
                f"leaf mismatch: numerator {leaves}, permutation {self.perm.size}, "
                f"denominator {self.denominator.leaf_count}"
            )
        if self.type_tag == "F" and not self.perm.is_identity:
            raise DomainError("type F needs the identity permutation")
        if self.type_tag == "T" and self.perm.rotation_amount is None:
            raise DomainError("type T needs a rotation")

    @classmethod
    def make(
        cls,
        ctx: SkeinContext,
        numerator: Tree,
        denominator: Tree,
        perm: Permutation | None = None,
        type_tag: str | None = None,
    ) -> "GroupElement":
        perm = perm or Permutation.identity(numerator.leaf_count)
        return cls(ctx, numerator, perm, denominator, type_tag or smallest_tag(perm))

    @classmethod
    def identity(cls, ctx: SkeinContext, type_tag: str = "F") -> "GroupElement":
        return cls(ctx, I, Permutation.identity(1), I, type_tag)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def leaves(self) -> int:
        return self.perm.size

    def grow(self, p: Forest) -> "GroupElement":
        """(t/π/s) ~ (t∘p^π / π^p / s∘p)."""
        p_pi, pi_p = bzs_drag(p, self.perm)
        return GroupElement(
            self.ctx,
            compose_tree(self.numerator, p_pi),
            pi_p,
            compose_tree(self.denominator, p),
            self.type_tag,
        )

    @cached_property
    def reduced(self) -> "GroupElement":
        """An equal representative whose denominator is an a-tree."""
        rewrite = grow_to_a_tree(self.ctx, self.denominator)
        grown = self.grow(rewrite.growth)
        return GroupElement(self.ctx, grown.numerator, grown.perm, rewrite.tree, self.type_tag)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __str__(self) -> str:
        from forest_skein.syntax import format_element

        return format_element(self)


def _same_context(x: GroupElement, y: GroupElement) -> None:
    if x.ctx != y.ctx:
        raise DomainError(f"context mismatch: n={x.n} vs n={y.n}")


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    """x·y: grow x's denominator and y's numerator to a common tree.

    With s_x∘p' = t_y∘q' in F_n and q the forest with q^{π_y} = q', the product
    is [t_x∘p'^{π_x} / π_x^{p'}∘π_y^{q} / s_y∘q].
    """
    _same_context(x, y)
    cm = right_common_multiple(x.ctx, x.denominator, y.numerator)
    gx = x.grow(cm.p)
    gy = y.grow(unpermute(cm.q, y.perm))
    return GroupElement(
        x.ctx,
        gx.numerator,
        gx.perm.compose(gy.perm),
        gy.denominator,
        join_tags(x.type_tag, y.type_tag),
    )


def inverse(x: GroupElement) -> GroupElement:
    return GroupElement(x.ctx, x.denominator, x.perm.inverse(), x.numerator, x.type_tag)


def _exposed_carets(t: Tree) -> dict[int, tuple[str, str]]:
    """0-based first leaf -> (address, colour) of every caret whose two
    children are leaves."""
    out: dict[int, tuple[str, str]] = {}
    pos = 0
    stack: list[tuple[str, Tree]] = [("", t)]
    while stack:
        addr, u = stack.pop()
        if not isinstance(u, Node):
            pos += 1
        elif not isinstance(u.left, Node) and not isinstance(u.right, Node):
            out[pos] = (addr, u.colour)
            pos += 2
        else:
            stack += [(addr + "1", u.right), (addr + "0", u.left)]
    return out


def _prune(t: Tree, addrs: Iterable[str]) -> Tree:
    for addr in addrs:
        t = replace_subtree(t, addr, I)
    return t


def cancel_carets(x: GroupElement) -> GroupElement:
    """Undo growth: drop a denominator caret on leaves i, i+1 together with a
    numerator caret of the same colour on leaves π(i), π(i)+1 = π(i+1).

    Repeats until no such pair is left; the result is an equal element.
    """
    t, pi, s = x.numerator, x.perm, x.denominator
    cancelled = 0
    while True:
        top, bottom = _exposed_carets(t), _exposed_carets(s)
        pairs = [
            (i, pi(i + 1) - 1, s_addr, top[pi(i + 1) - 1][0])
            for i, (s_addr, colour) in bottom.items()
            if pi(i + 2) == pi(i + 1) + 1 and top.get(pi(i + 1) - 1, ("", ""))[1] == colour
        ]
        if not pairs:
            break
        cancelled += len(pairs)
        dropped_in = {i + 2 for i, _, _, _ in pairs}
        dropped_out = {j + 2 for _, j, _, _ in pairs}
        kept_out = [j for j in range(1, pi.size + 1) if j not in dropped_out]
        rank = {j: r for r, j in enumerate(kept_out, start=1)}
        pi = Permutation(tuple(rank[pi(i)] for i in range(1, pi.size + 1) if i not in dropped_in))
        s = _prune(s, (addr for _, _, addr, _ in pairs))
        t = _prune(t, (addr for _, _, _, addr in pairs))
    if not cancelled:
        return x
    return GroupElement(x.ctx, t, pi, s, x.type_tag)


def times(x: GroupElement, y: GroupElement) -> GroupElement:
    """x·y with matching carets cancelled."""
    return cancel_carets(multiply(x, y))


def power(x: GroupElement, k: int) -> GroupElement:
    base = x if k >= 0 else inverse(x)
    out = GroupElement.identity(x.ctx, x.type_tag)
    for _ in range(abs(k)):
        out = times(out, base)
    return out


def commutator(x: GroupElement, y: GroupElement) -> GroupElement:
    """[x, y] = x⁻¹y⁻¹xy."""
    return times(times(inverse(x), inverse(y)), times(x, y))


def product(elements: Iterable[GroupElement], ctx: SkeinContext) -> GroupElement:
    out = GroupElement.identity(ctx)
    for g in elements:
        out = times(out, g)
    return out


# --- Word problem -------------------------------------------------------------
def identity_witness(x: GroupElement) -> RationalPoint | None:
    """A rational point moved by x, or None when x is trivial."""
    r = x.reduced
    for i, addr in enumerate(leaf_addresses(r.denominator), start=1):
        beta = local_action(x.n, r.numerator, r.perm(i))
        verdict = transducer_equal(beta, prefix_transducer(addr))
        if not verdict:
            assert verdict.witness is not None
            return verdict.witness.prepend(addr)
    return None


def is_identity(x: GroupElement) -> bool:
    return identity_witness(x) is None


def equals(x: GroupElement, y: GroupElement) -> bool:
    _same_context(x, y)
    return is_identity(multiply(x, inverse(y)))


# --- Invariants ---------------------------------------------------------------
def abelianise(x: GroupElement) -> int:
    """χ̄[t/π/s] = #b(t) - #b(s) mod n."""
    if x.type_tag == "V":
        raise DomainError("abelianise is defined on type F and T elements")
    return (count_colour(x.numerator, B) - count_colour(x.denominator, B)) % x.n


def in_derived_subgroup(x: GroupElement) -> bool:
    return abelianise(x) == 0


def _require_identity_perm(x: GroupElement, what: str) -> None:
    if not x.perm.is_identity:
        raise DomainError(f"{what} needs an element with the identity permutation")


def c_bar(side: str, x: GroupElement) -> GammaPlusElement | GammaMinusElement:
    """c̄^±[t/s] = c^±(t)·c^±(s)⁻¹ in Γ^±."""
    _require_identity_perm(x, "c_bar")
    if side == "plus":
        return colour_word_plus(x.n, colour_word("plus", x.numerator)) * colour_word_plus(
            x.n, colour_word("plus", x.denominator)
        ).inverse()
    if side == "minus":
        return colour_word_minus(x.n, colour_word("minus", x.numerator)) * colour_word_minus(
            x.n, colour_word("minus", x.denominator)
        ).inverse()
    raise DomainError(f"side must be 'minus' or 'plus', got {side!r}")


def germ_at_zero(x: GroupElement) -> tuple[GammaPlusElement, GammaMinusElement]:
    """The germ of x at the circle point 0, as (germ at 1̄, germ at 0̄).

    Elements fixing 0 have the identity permutation in every representative:
    0̄ lies only in the first leaf cone.
    """
    if x.type_tag == "V":
        raise DomainError("germ_at_zero is defined on type F and T elements")
    if not x.perm.is_identity:
        raise DomainError("element does not fix 0")
    return c_bar("plus", x), c_bar("minus", x)  # type: ignore[return-value]


# --- Embeddings and free words ------------------------------------------------
def sigma_generator(ctx: SkeinContext, colour: str) -> GroupElement:
    """[ρ₂(c)/λ₂(c)], a section of c̄⁺ on the generator c."""
    if colour not in (A, B):
        raise DomainError(f"unknown colour {colour!r}")
    return GroupElement.make(ctx, vine("right", 2, colour), vine("left", 2, colour))


@lru_cache(maxsize=None)
def free_generator(ctx: SkeinContext, i: int) -> GroupElement:
    """The image of [a, b^i]: the commutator of σ(a) and σ(b)^i."""
    if not 0 < i < ctx.n:
        raise DomainError(f"generator index must satisfy 0 < i < {ctx.n}, got {i}")
    return commutator(sigma_generator(ctx, A), power(sigma_generator(ctx, B), i))


def free_word_image(ctx: SkeinContext, word: Sequence[tuple[int, int]]) -> GroupElement:
    """word = [(i, ±1), ...] standing for the product of [a, b^i]^{±1}."""
    cache: dict[int, GroupElement] = {}
    out = GroupElement.identity(ctx)
    for i, e in word:
        if i not in cache:
            cache[i] = free_generator(ctx, i)
        g = cache[i] if e > 0 else inverse(cache[i])
        for _ in range(abs(e)):
            out = times(out, g)
    return out


def iota_tree(t: Tree) -> Tree:
    """Y_a(Y_a⊗I)(I⊗t⊗I)."""
    return Node(A, Node(A, I, t), I)


def iota_embed(x: GroupElement) -> GroupElement:
    """[ι(t)/ι(s)]; supported in the cone 01, fixing 00 and 1."""
    _require_identity_perm(x, "iota_embed")
    return GroupElement.make(x.ctx, iota_tree(x.numerator), iota_tree(x.denominator))


# --- Seminormal forms ---------------------------------------------------------
@dataclass(frozen=True)
class SeminormalForm:
    """`element` equals the input; its denominator is an a-tree and its
    numerator a good tree. The traces take the grown input trees to them."""

    element: GroupElement
    numerator_trace: MoveTrace
    denominator_trace: MoveTrace


def seminormal_form(x: GroupElement) -> SeminormalForm:
    ctx = x.ctx
    denom = grow_to_a_tree(ctx, x.denominator)
    step = x.grow(denom.growth)
    good = make_good_tree(ctx, step.numerator)
    extra = unpermute(good.growth, step.perm)
    grown = step.grow(extra)
    a_tree = compose_tree(denom.tree, extra)
    addrs = leaf_addresses(denom.tree)
    denom_trace = denom.trace + MoveTrace(
        tuple(Grow(addr, e) for addr, e in zip(addrs, extra.trees) if isinstance(e, Node))
    )
    element = GroupElement(ctx, good.tree, grown.perm, a_tree, x.type_tag)
    logger.debug("seminormal_form: %d + %d moves", len(good.trace), len(denom_trace))
    return SeminormalForm(element, good.trace, denom_trace)


# --- Random elements ----------------------------------------------------------
_PERM_KIND = {"F": "identity", "T": "rotation", "V": "general"}


def random_element(
    ctx: SkeinContext,
    rng: np.random.Generator,
    carets: int = 4,
    type_tag: str = "F",
) -> GroupElement:
    """Two random trees with `carets` carets each, joined by a random
    permutation of the given type."""
    if type_tag not in TYPE_TAGS:
        raise DomainError(f"type tag must be one of {TYPE_TAGS}, got {type_tag!r}")
    t = random_tree(rng, carets)
    s = random_tree(rng, carets)
    pi = random_permutation(rng, t.leaf_count, _PERM_KIND[type_tag])
    return GroupElement(ctx, t, pi, s, type_tag)
