"""
Skein engine
------------
Rewriting with the single skein relation τ_n(a) = ρ_n(b):

- skein_flip           : swap the two sides of the relation at an address
- grow_to_a_tree       : grow any tree until it is equal (in F_n) to an a-tree
- right_common_multiple: u∘p = v∘q via a-trees and their shape join
- make_good_vine / make_good_tree : grow by an a-forest into a good tree
  whose right-vines all have a-coloured roots

Every procedure records a MoveTrace (grows and flips, addressed in the tree
being rewritten). `replay` re-runs a trace from its source and re-checks every
pattern match, so results are certified rather than trusted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from forest_skein import config
from forest_skein.errors import DomainError, SkeinError
from forest_skein.forests import (
    A,
    B,
    ROOT,
    Forest,
    Leaf,
    Node,
    Tree,
    caret,
    colour_word,
    compose,
    format_address,
    grow_leaf_index0,
    is_right_vine,
    leaf_addresses,
    leaf_index0,
    replace_at,
    replace_subtree,
    rho,
    right_vines,
    subtree_at,
    subtree_match,
    tau,
    trivial_forest,
)

logger = logging.getLogger(__name__)

TAU2RHO = "tau2rho"
RHO2TAU = "rho2tau"


@dataclass(frozen=True)
class SkeinContext:
    """The index n of F_n = FS<a,b | τ_n(a) = ρ_n(b)>."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainError(f"n must be >= 3, got {self.n}")

    @cached_property
    def tau_a(self) -> Tree:
        return tau(self.n, A)

    @cached_property
    def rho_b(self) -> Tree:
        return rho(self.n, B)

    def move_budget(self, carets: int, factor: int | None = None) -> int:
        """Move cap for rewriting a tree with `carets` carets.

        A b-vertex above an a-subtree sinks two levels per round, so the
        output (and the move count) can grow with carets x depth; the cap is
        quadratic in the caret count.
        """
        return (factor or config.MOVE_FACTOR) * self.n * (max(carets, 1) + 1) ** 2


# --- Traces -------------------------------------------------------------------
@dataclass(frozen=True)
class Grow:
    address: str
    tree: Tree

    def __str__(self) -> str:
        return f"grow {format_address(self.address)} {self.tree!r}"


@dataclass(frozen=True)
class Flip:
    address: str
    direction: str

    def __str__(self) -> str:
        return f"flip {format_address(self.address)} {self.direction}"


Move = Union[Grow, Flip]


@dataclass(frozen=True)
class MoveTrace:
    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __add__(self, other: "MoveTrace") -> "MoveTrace":
        return MoveTrace(self.moves + other.moves)

    def lines(self) -> list[str]:
        return [str(m) for m in self.moves]

    def flips(self) -> list[Flip]:
        return [m for m in self.moves if isinstance(m, Flip)]


def skein_flip(ctx: SkeinContext, t: Tree, at: str) -> Tree:
    """Swap τ_n(a) and ρ_n(b) at `at`, keeping the hanging subtrees in order."""
    if subtree_match(t, at, ctx.tau_a):
        return replace_at(t, at, ctx.rho_b, pattern=ctx.tau_a)
    if subtree_match(t, at, ctx.rho_b):
        return replace_at(t, at, ctx.tau_a, pattern=ctx.rho_b)
    raise SkeinError(f"no skein pattern at {format_address(at)}")


def _directed_flip(ctx: SkeinContext, t: Tree, at: str, direction: str) -> Tree:
    if direction == TAU2RHO:
        source, target = ctx.tau_a, ctx.rho_b
    elif direction == RHO2TAU:
        source, target = ctx.rho_b, ctx.tau_a
    else:
        raise SkeinError(f"unknown flip direction {direction!r}")
    try:
        matched = subtree_match(t, at, source)
    except DomainError as exc:
        raise SkeinError(str(exc)) from exc
    if not matched:
        raise SkeinError(f"{direction}: pattern does not match at {format_address(at)}")
    return replace_at(t, at, target, pattern=source)


def replay(ctx: SkeinContext, source: Tree, trace: MoveTrace) -> Tree:
    """Re-run a trace from `source`, checking every grow site is a leaf and
    every flip site matches. Raises SkeinError on the first bad move."""
    t = source
    for step, move in enumerate(trace.moves):
        if isinstance(move, Grow):
            try:
                site = subtree_at(t, move.address)
            except DomainError as exc:
                raise SkeinError(f"move {step}: {exc}") from exc
            if not isinstance(site, Leaf):
                raise SkeinError(f"move {step}: grow site {format_address(move.address)} is not a leaf")
            t = replace_subtree(t, move.address, move.tree)
        else:
            try:
                t = _directed_flip(ctx, t, move.address, move.direction)
            except SkeinError as exc:
                raise SkeinError(f"move {step}: {exc}") from exc
    return t


# --- Working state ------------------------------------------------------------
class _Rewriter:
    """Mutable scratch state for one rewriting run: the current tree, the
    accumulated growth forest (roots = leaves of the source) and the trace."""

    def __init__(self, ctx: SkeinContext, tree: Tree, budget: int):
        self.ctx = ctx
        self.source = tree
        self.tree = tree
        self.growth = trivial_forest(tree.leaf_count)
        self.moves: list[Move] = []
        self.budget = budget

    def _tick(self) -> None:
        if len(self.moves) > self.budget:
            raise SkeinError(
                f"move budget {self.budget} exhausted (n={self.ctx.n}, "
                f"source carets={self.source.caret_count})"
            )

    def grow(self, addr: str, g: Tree) -> None:
        j = leaf_index0(self.tree, addr)
        self.tree = replace_subtree(self.tree, addr, g)
        self.growth = grow_leaf_index0(self.growth, j, g)
        self.moves.append(Grow(addr, g))
        self._tick()

    def flip(self, addr: str, direction: str) -> None:
        self.tree = _directed_flip(self.ctx, self.tree, addr, direction)
        self.moves.append(Flip(addr, direction))
        self._tick()

    def conform(self, at: str, pattern: Tree) -> None:
        """Grow and flip inside the subtree at `at` until `pattern` matches.

        A leaf in the way is grown by the rest of the pattern. A vertex of the
        wrong colour is first conformed to the side of the relation it can
        flip from (τ_n(a) for an a, ρ_n(b) for a b) and flipped. Work on a
        right child never disturbs the already conformed left child.
        """
        ctx = self.ctx
        tasks: list[tuple[str, Tree | str]] = [(at, pattern)]
        while tasks:
            addr, want = tasks.pop()
            if isinstance(want, str):
                self.flip(addr, want)
                continue
            if isinstance(want, Leaf):
                continue
            u = subtree_at(self.tree, addr)
            if isinstance(u, Leaf):
                self.grow(addr, want)
                continue
            # popped in reverse: fix the colour, then the left child, then the right
            tasks += [(addr + "1", want.right), (addr + "0", want.left)]
            if u.colour == A and want.colour == B:
                tasks += [(addr, TAU2RHO), (addr, ctx.tau_a)]
            elif u.colour == B and want.colour == A:
                tasks += [(addr, RHO2TAU), (addr, ctx.rho_b)]

    @property
    def trace(self) -> MoveTrace:
        return MoveTrace(tuple(self.moves))


# --- Growing to an a-tree -----------------------------------------------------
@dataclass(frozen=True)
class Rewrite:
    """Result of a certified rewrite: `source`∘`growth` equals `tree` in F_n,
    and replaying `trace` from `source` yields `tree`."""

    source: Tree
    tree: Tree
    growth: Forest
    trace: MoveTrace = field(default_factory=MoveTrace)


def grow_to_a_tree(ctx: SkeinContext, t: Tree) -> Rewrite:
    """Grow t (by a forest that may contain b-carets) into a tree equal in F_n
    to an a-tree.

    One top-down sweep in prefix order, so every ancestor of the visited
    vertex is already an a-vertex. A b-vertex v is conformed to ρ_n(b) and
    flipped to τ_n(a): an existing ρ_n(b) flips at once (a right b-vine of
    length m costs about m/n flips), a short b-run ending in a leaf is grown
    to length n, and a run ending in an a-vertex borrows n b's from it by a
    τ→ρ flip, leaving one b two levels further down.
    """
    rw = _Rewriter(ctx, t, ctx.move_budget(t.caret_count))
    pending = [ROOT]
    while pending:
        v = pending.pop()
        u = subtree_at(rw.tree, v)
        if isinstance(u, Leaf):
            continue
        if u.colour == B:
            rw.conform(v, ctx.rho_b)
            rw.flip(v, RHO2TAU)
        pending += [v + "1", v + "0"]
    logger.debug("grow_to_a_tree: %d moves for %d carets (n=%d)", len(rw.moves), t.caret_count, ctx.n)
    return Rewrite(t, rw.tree, rw.growth, rw.trace)


# --- Right common multiples ---------------------------------------------------
def join_shapes(s: Tree, t: Tree) -> Tree:
    """Least common upper bound of two a-trees in the shape lattice."""
    if isinstance(s, Leaf):
        return t
    if isinstance(t, Leaf):
        return s
    return Node(A, join_shapes(s.left, t.left), join_shapes(s.right, t.right))


def _extend_to(rewrite: Rewrite, target: Tree) -> tuple[Forest, MoveTrace]:
    """Grow an a-tree result further until it becomes `target`."""
    addrs = leaf_addresses(rewrite.tree)
    extra = [subtree_at(target, addr) for addr in addrs]
    moves = [Grow(addr, e) for addr, e in zip(addrs, extra) if isinstance(e, Node)]
    return compose(rewrite.growth, Forest(tuple(extra))), rewrite.trace + MoveTrace(tuple(moves))


@dataclass(frozen=True)
class CommonMultiple:
    """u∘p = v∘q = target in F_n; left_trace takes u to target, right_trace v."""

    p: Forest
    q: Forest
    target: Tree
    left_trace: MoveTrace
    right_trace: MoveTrace


def right_common_multiple(ctx: SkeinContext, u: Tree, v: Tree) -> CommonMultiple:
    if u == v:
        k = u.leaf_count
        return CommonMultiple(trivial_forest(k), trivial_forest(k), u, MoveTrace(), MoveTrace())
    left = grow_to_a_tree(ctx, u)
    right = grow_to_a_tree(ctx, v)
    target = join_shapes(left.tree, right.tree)
    p, left_trace = _extend_to(left, target)
    q, right_trace = _extend_to(right, target)
    return CommonMultiple(p, q, target, left_trace, right_trace)


# --- Good trees ---------------------------------------------------------------
def good_word_check(ctx: SkeinContext, w: str) -> bool:
    """a^i·w' with w' empty or b-initial and free of a² and b^n."""
    rest = w.lstrip(A)
    return "aa" not in rest and B * ctx.n not in rest


def is_good_tree(ctx: SkeinContext, t: Tree) -> bool:
    return all(good_word_check(ctx, colour_word("plus", v)) for v in right_vines(t))


def has_a_rooted_vines(t: Tree) -> bool:
    return all(v.colour == A for v in right_vines(t))


def _settled(ctx: SkeinContext, t: Tree) -> bool:
    return is_good_tree(ctx, t) and has_a_rooted_vines(t)


def _leftmost_defect(word: str, start: int, n: int) -> tuple[int, str] | None:
    for p in range(start, len(word)):
        if word.startswith("aa", p):
            return p, "aa"
        if word.startswith(B * n, p):
            return p, "bn"
    return None


def _ensure_left_a_path(rw: _Rewriter, at: str, k: int) -> None:
    """Make λ_k(a) match at `at` by growing a-carets; a b on the way is
    settled first, which colours every left edge below it with a."""
    for m in range(k):
        addr = at + "0" * m
        u = subtree_at(rw.tree, addr)
        if isinstance(u, Leaf):
            rw.grow(addr, caret(A))
        elif u.colour == B:
            _settle(rw, addr)


def _settle(rw: _Rewriter, base: str) -> None:
    """Rewrite the subtree at `base` into a good tree with a-rooted vines,
    growing only by a-carets.

    The spine word is normalised left to right: the leftmost a² past the
    leading a-block is flipped to b^n (after completing λ_{n-2}(a) on its left),
    the leftmost b^n flipped to a². Each step moves the leftmost defect
    strictly left until it is absorbed into the leading a-block. A spine with
    no leading a gets τ_n(a) appended at its last leaf first. The trees
    hanging off the settled spine are then settled in turn.
    """
    ctx = rw.ctx
    n = ctx.n
    if _settled(ctx, subtree_at(rw.tree, base)):
        return
    while True:
        word = colour_word("plus", subtree_at(rw.tree, base))
        lead = len(word) - len(word.lstrip(A))
        defect = _leftmost_defect(word, lead, n)
        if defect is None:
            if lead == 0 and word:
                rw.grow(base + "1" * len(word), ctx.tau_a)
                continue
            break
        p, kind = defect
        at = base + "1" * p
        if kind == "aa":
            _ensure_left_a_path(rw, at + "0", n - 2)
            rw.flip(at, TAU2RHO)
        else:
            rw.flip(at, RHO2TAU)
    spine = len(colour_word("plus", subtree_at(rw.tree, base)))
    for j in range(spine):
        _settle(rw, base + "1" * j + "0")


def make_good_tree(ctx: SkeinContext, t: Tree) -> Rewrite:
    """Grow t by an a-forest into an equal good tree whose right-vines all
    have a-coloured roots."""
    budget = ctx.move_budget(t.caret_count) * ctx.n
    rw = _Rewriter(ctx, t, budget)
    _settle(rw, "")
    if not _settled(ctx, rw.tree):
        raise SkeinError("rewriting stopped short of a good tree")
    logger.debug("make_good_tree: %d moves for %d carets (n=%d)", len(rw.moves), t.caret_count, ctx.n)
    return Rewrite(t, rw.tree, rw.growth, rw.trace)


def make_good_vine(ctx: SkeinContext, r: Tree) -> Rewrite:
    """make_good_tree restricted to coloured right-vines."""
    if not is_right_vine(r):
        raise DomainError("input is not a right-vine")
    return make_good_tree(ctx, r)
