"""
Coloured forests
----------------
Free coloured binary trees and forests over the colours {a, b}: composition
(stacking), tensor (horizontal concatenation), addressing, vines, subtree
surgery, the right-vine decomposition and boundary colour words.

Conventions
-----------
- Trees are immutable; equality is structural (free forests, no skein
  identification at this layer).
- An address is a str over "01", most significant turn first; "" is the root.
- Leaves and roots are counted left to right; public indices are 1-based,
  helpers suffixed `_index0` are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from forest_skein.errors import DomainError

A = "a"
B = "b"
COLOURS = (A, B)
ROOT = ""


# --- Trees --------------------------------------------------------------------
@dataclass(frozen=True)
class Leaf:
    """The trivial tree I."""

    leaf_count = 1
    caret_count = 0

    def __repr__(self) -> str:
        return "I"


@dataclass(frozen=True, eq=False)
class Node:
    """An interior vertex with a colour and two children."""

    colour: str
    left: "Tree"
    right: "Tree"
    leaf_count: int = field(init=False, repr=False)
    caret_count: int = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.colour not in COLOURS:
            raise DomainError(f"unknown colour {self.colour!r}")
        object.__setattr__(self, "leaf_count", self.left.leaf_count + self.right.leaf_count)
        object.__setattr__(self, "caret_count", self.left.caret_count + self.right.caret_count + 1)
        # children cache their own hash, so this stays O(1)
        object.__setattr__(self, "_hash", hash((self.colour, self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node) or self._hash != other._hash:
            return False
        return self.colour == other.colour and self.left == other.left and self.right == other.right

    def __repr__(self) -> str:
        return f"{self.colour}({self.left!r},{self.right!r})"


Tree = Union[Leaf, Node]
I = Leaf()


def caret(colour: str) -> Node:
    """Y_a or Y_b."""
    return Node(colour, I, I)


# --- Forests ------------------------------------------------------------------
@dataclass(frozen=True)
class Forest:
    """An ordered, non-empty tuple of trees."""

    trees: tuple[Tree, ...]

    def __post_init__(self) -> None:
        if not self.trees:
            raise DomainError("a forest has at least one tree")

    @classmethod
    def of(cls, *trees: Tree) -> "Forest":
        return cls(tuple(trees))

    @property
    def roots(self) -> int:
        return len(self.trees)

    @property
    def leaves(self) -> int:
        return sum(t.leaf_count for t in self.trees)

    @property
    def carets(self) -> int:
        return sum(t.caret_count for t in self.trees)

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __getitem__(self, i: int) -> Tree:
        return self.trees[i]

    def __repr__(self) -> str:
        return ",".join(repr(t) for t in self.trees)


def as_forest(f: Forest | Tree) -> Forest:
    return f if isinstance(f, Forest) else Forest((f,))


def trivial_forest(k: int) -> Forest:
    """I^{⊗k}."""
    if k < 1:
        raise DomainError("trivial forest needs k >= 1")
    return Forest((I,) * k)


def graft(t: Tree, hanging: Sequence[Tree]) -> Tree:
    """Attach hanging[i] to the i-th leaf of t (len(hanging) == leaves(t))."""
    if len(hanging) != t.leaf_count:
        raise DomainError(f"cannot graft {len(hanging)} trees onto {t.leaf_count} leaves")
    it = iter(hanging)

    def walk(u: Tree) -> Tree:
        if isinstance(u, Leaf):
            return next(it)
        return Node(u.colour, walk(u.left), walk(u.right))

    return walk(t)


def compose(f: Forest | Tree, g: Forest | Tree) -> Forest:
    """Stack g under f: the i-th root of g is grafted onto the i-th leaf of f."""
    f, g = as_forest(f), as_forest(g)
    if f.leaves != g.roots:
        raise DomainError(f"arity mismatch: {f.leaves} leaves on top, {g.roots} roots below")
    out = []
    pos = 0
    for t in f.trees:
        out.append(graft(t, g.trees[pos:pos + t.leaf_count]))
        pos += t.leaf_count
    return Forest(tuple(out))


def compose_tree(t: Tree, g: Forest | Tree) -> Tree:
    """compose() for a single tree on top; returns the tree."""
    return compose(t, g).trees[0]


def tensor(*forests: Forest | Tree) -> Forest:
    """Horizontal concatenation."""
    trees: list[Tree] = []
    for f in forests:
        trees.extend(as_forest(f).trees)
    return Forest(tuple(trees))


# --- Addressing ---------------------------------------------------------------
def leaf_addresses(t: Tree) -> list[str]:
    """Leaf addresses in left-to-right (lexicographic) order."""
    out: list[str] = []

    def walk(u: Tree, addr: str) -> None:
        if isinstance(u, Leaf):
            out.append(addr)
        else:
            walk(u.left, addr + "0")
            walk(u.right, addr + "1")

    walk(t, ROOT)
    return out


def interior_vertices(t: Tree) -> Iterator[tuple[str, Node]]:
    """(address, node) for every interior vertex, in prefix order."""
    stack: list[tuple[str, Tree]] = [(ROOT, t)]
    while stack:
        addr, u = stack.pop()
        if isinstance(u, Node):
            yield addr, u
            stack.append((addr + "1", u.right))
            stack.append((addr + "0", u.left))


def subtree_at(t: Tree, addr: str) -> Tree:
    u = t
    for bit in addr:
        if isinstance(u, Leaf):
            raise DomainError(f"address {format_address(addr)} is not a vertex of the tree")
        u = u.left if bit == "0" else u.right
    return u


def replace_subtree(t: Tree, addr: str, new: Tree) -> Tree:
    """Path-copy t with the subtree at addr swapped for new."""
    if not addr:
        return new
    if isinstance(t, Leaf):
        raise DomainError("address runs past a leaf")
    if addr[0] == "0":
        return Node(t.colour, replace_subtree(t.left, addr[1:], new), t.right)
    return Node(t.colour, t.left, replace_subtree(t.right, addr[1:], new))


def leaf_index0(t: Tree, addr: str) -> int:
    """0-based position of the leaf at addr."""
    idx = 0
    u = t
    for bit in addr:
        if isinstance(u, Leaf):
            raise DomainError(f"address {format_address(addr)} is not a vertex of the tree")
        if bit == "1":
            idx += u.left.leaf_count
            u = u.right
        else:
            u = u.left
    if not isinstance(u, Leaf):
        raise DomainError(f"address {format_address(addr)} is not a leaf")
    return idx


def leaf_path(t: Tree, i: int) -> list[tuple[str, str]]:
    """(colour, turn) pairs from the root down to the i-th leaf (1-based)."""
    if not 1 <= i <= t.leaf_count:
        raise DomainError(f"leaf index {i} out of range 1..{t.leaf_count}")
    path: list[tuple[str, str]] = []
    k = i - 1
    u = t
    while isinstance(u, Node):
        if k < u.left.leaf_count:
            path.append((u.colour, "0"))
            u = u.left
        else:
            path.append((u.colour, "1"))
            k -= u.left.leaf_count
            u = u.right
    return path


def format_address(addr: str) -> str:
    return addr if addr else "ε"


# --- Colour counts ------------------------------------------------------------
def count_colour(t: Tree | Forest, colour: str) -> int:
    if isinstance(t, Forest):
        return sum(count_colour(u, colour) for u in t.trees)
    return sum(1 for _, node in interior_vertices(t) if node.colour == colour)


def is_monochromatic(t: Tree | Forest, colour: str = A) -> bool:
    """True for a-trees / a-forests (a leaf counts as one)."""
    other = B if colour == A else A
    return count_colour(t, other) == 0


def recolour(t: Tree, colour: str) -> Tree:
    """t(c): same shape, every interior vertex coloured c."""
    if isinstance(t, Leaf):
        return t
    return Node(colour, recolour(t.left, colour), recolour(t.right, colour))


# --- Vines --------------------------------------------------------------------
def vine(kind: str, k: int, colour: str) -> Tree:
    """Monochromatic left-vine λ_k(c) or right-vine ρ_k(c); k = 0 gives I."""
    if kind not in ("left", "right"):
        raise DomainError(f"vine kind must be 'left' or 'right', got {kind!r}")
    if k < 0:
        raise DomainError("vine length must be non-negative")
    t: Tree = I
    for _ in range(k):
        t = Node(colour, t, I) if kind == "left" else Node(colour, I, t)
    return t


def right_vine(colours: Iterable[str]) -> Tree:
    """A coloured right-vine whose spine reads `colours` from the root down."""
    cs = list(colours)
    t: Tree = I
    for c in reversed(cs):
        t = Node(c, I, t)
    return t


def tau(n: int, colour: str) -> Tree:
    """τ_n(c) = Y∘(λ_{n-2}⊗Y): n carets, leaves 0^{n-1}, 0^{n-2}1, ..., 01, 10, 11."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    return Node(colour, vine("left", n - 2, colour), caret(colour))


def rho(n: int, colour: str) -> Tree:
    return vine("right", n, colour)


def is_right_vine(t: Tree) -> bool:
    u = t
    while isinstance(u, Node):
        if not isinstance(u.left, Leaf):
            return False
        u = u.right
    return True


# --- Subtree surgery ----------------------------------------------------------
def _matches(u: Tree, pattern: Tree) -> bool:
    if isinstance(pattern, Leaf):
        return True
    if isinstance(u, Leaf) or u.colour != pattern.colour:
        return False
    return _matches(u.left, pattern.left) and _matches(u.right, pattern.right)


def subtree_match(t: Tree, at: str, pattern: Tree) -> bool:
    """True iff every interior vertex of pattern sits on an identically
    coloured interior vertex of t, offset by `at`."""
    return _matches(subtree_at(t, at), pattern)


def hanging_subtrees(u: Tree, pattern: Tree) -> list[Tree]:
    """The subtrees of u hanging below the leaves of a matched pattern."""
    if isinstance(pattern, Leaf):
        return [u]
    assert isinstance(u, Node)
    return hanging_subtrees(u.left, pattern.left) + hanging_subtrees(u.right, pattern.right)


def replace_at(t: Tree, at: str, new_pattern: Tree, pattern: Tree | None = None) -> Tree:
    """Swap `pattern` (matched at `at`) for `new_pattern`, re-hanging the
    subtrees below the pattern's leaves on new_pattern's leaves in order.

    Without `pattern` the whole subtree at `at` is the pattern, so it must
    have as many leaves as new_pattern.
    """
    sub = subtree_at(t, at)
    if pattern is None:
        pattern = sub
    if not _matches(sub, pattern):
        raise DomainError(f"pattern does not match at {format_address(at)}")
    if pattern.leaf_count != new_pattern.leaf_count:
        raise DomainError(
            f"leaf count mismatch: pattern has {pattern.leaf_count}, replacement {new_pattern.leaf_count}"
        )
    return replace_subtree(t, at, graft(new_pattern, hanging_subtrees(sub, pattern)))


# --- Right-vine decomposition -------------------------------------------------
def _spine(u: Node) -> tuple[list[str], list[Tree]]:
    """Colours down the right spine of u and the trees hanging off it."""
    colours: list[str] = []
    hanging: list[Tree] = []
    v: Tree = u
    while isinstance(v, Node):
        colours.append(v.colour)
        hanging.append(v.left)
        v = v.right
    hanging.append(v)
    return colours, hanging


def right_vine_decomposition(t: Tree) -> list[Forest]:
    """Factors I^{⊗i} ⊗ ρ ⊗ I^{⊗k} (ρ a coloured right-vine) composing to t.

    The leftmost pending vertex is expanded first, so carets further left
    come earlier. A leaf has the empty decomposition.
    """
    factors: list[Forest] = []
    pending: list[Tree] = [t]
    while True:
        pos = next((i for i, u in enumerate(pending) if isinstance(u, Node)), None)
        if pos is None:
            return factors
        node = pending[pos]
        colours, hanging = _spine(node)
        factors.append(
            Forest((I,) * pos + (right_vine(colours),) + (I,) * (len(pending) - pos - 1))
        )
        pending[pos:pos + 1] = hanging


def right_vines(t: Tree) -> list[Tree]:
    """The coloured right-vines of t, in decomposition order."""
    out: list[Tree] = []
    for f in right_vine_decomposition(t):
        out.extend(u for u in f.trees if isinstance(u, Node))
    return out


def recompose(factors: Sequence[Forest]) -> Tree:
    if not factors:
        return I
    acc = factors[0]
    for f in factors[1:]:
        acc = compose(acc, f)
    if acc.roots != 1:
        raise DomainError("factors do not compose to a tree")
    return acc.trees[0]


# --- Colour words -------------------------------------------------------------
def colour_word(side: str, f: Forest | Tree) -> str:
    """c^-(f): colours root -> first leaf of the first tree ("minus");
    c^+(f): root -> last leaf of the last tree ("plus")."""
    f = as_forest(f)
    if side == "minus":
        u, step = f.trees[0], "left"
    elif side == "plus":
        u, step = f.trees[-1], "right"
    else:
        raise DomainError(f"side must be 'minus' or 'plus', got {side!r}")
    word = []
    while isinstance(u, Node):
        word.append(u.colour)
        u = getattr(u, step)
    return "".join(word)


# --- Growth forests -----------------------------------------------------------
def grow_leaf_index0(f: Forest, j: int, g: Tree) -> Forest:
    """Replace the j-th leaf (0-based, across the forest) by the tree g."""
    if not 0 <= j < f.leaves:
        raise DomainError(f"leaf {j} out of range")
    trees = list(f.trees)
    for pos, t in enumerate(trees):
        if j < t.leaf_count:
            addr = leaf_addresses(t)[j]
            trees[pos] = replace_subtree(t, addr, g)
            return Forest(tuple(trees))
        j -= t.leaf_count
    raise AssertionError("unreachable")


# --- Random trees -------------------------------------------------------------
def random_tree(
    rng: np.random.Generator,
    carets: int,
    colours: Sequence[str] = COLOURS,
) -> Tree:
    """A random coloured tree with exactly `carets` carets."""
    if carets == 0:
        return I
    left = int(rng.integers(0, carets))
    colour = colours[int(rng.integers(0, len(colours)))]
    return Node(colour, random_tree(rng, left, colours), random_tree(rng, carets - 1 - left, colours))


def random_right_vine(rng: np.random.Generator, carets: int) -> Tree:
    return right_vine(COLOURS[int(rng.integers(0, 2))] for _ in range(carets))
