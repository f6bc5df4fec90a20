"""
Term syntax
-----------
Parsers and formatters for the text forms used by the CLI and the API:

    tree    := "I" | ("a"|"b") "(" tree "," tree ")"
    forest  := tree ("," tree)*
    element := "[" tree "|" perm "|" tree "]"
    perm    := "id" | "rot(" int ")" | "perm(" int (" " int)* ")"
    point   := bits "(" bits ")"              u(p) is u·p^ω

Whitespace between tokens is ignored (inside perm(...) it separates images).
ParseError positions are offsets into the input with whitespace removed.
"""

from __future__ import annotations

import re

from forest_skein.errors import DomainError, ParseError
from forest_skein.forests import COLOURS, Forest, I, Node, Tree
from forest_skein.groups import GroupElement, smallest_tag
from forest_skein.permutations import Permutation
from forest_skein.points import RationalPoint
from forest_skein.skein import SkeinContext


class _Cursor:
    def __init__(self, text: str):
        self.source = text
        self.text = re.sub(r"\s+", "", text)
        self.pos = 0

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.source, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise self.fail(f"expected {token!r}")
        self.pos += len(token)

    def done(self) -> None:
        if self.pos != len(self.text):
            raise self.fail("trailing input")


def _tree(cur: _Cursor) -> Tree:
    c = cur.peek()
    if c == "I":
        cur.pos += 1
        return I
    if c not in COLOURS:
        raise cur.fail("expected 'I', 'a' or 'b'")
    cur.pos += 1
    cur.expect("(")
    left = _tree(cur)
    cur.expect(",")
    right = _tree(cur)
    cur.expect(")")
    return Node(c, left, right)


def parse_tree(text: str) -> Tree:
    cur = _Cursor(text)
    t = _tree(cur)
    cur.done()
    return t


def parse_forest(text: str) -> Forest:
    cur = _Cursor(text)
    trees = [_tree(cur)]
    while cur.peek() == ",":
        cur.pos += 1
        trees.append(_tree(cur))
    cur.done()
    return Forest(tuple(trees))


def format_tree(t: Tree) -> str:
    return repr(t)


def format_forest(f: Forest) -> str:
    return ",".join(repr(t) for t in f.trees)


# --- Permutations and elements ------------------------------------------------
_PERM = re.compile(r"\s*(id|rot\(\s*(-?\d+)\s*\)|perm\(([\d\s]*)\))\s*$")


def parse_perm(text: str, m: int) -> Permutation:
    """Permutation syntax on m strands."""
    match = _PERM.match(text)
    if not match:
        raise ParseError(f"bad permutation {text.strip()!r}", text, 0)
    if match.group(1) == "id":
        return Permutation.identity(m)
    if match.group(2) is not None:
        return Permutation.rotation(m, int(match.group(2)) % m)
    images = tuple(int(i) for i in match.group(3).split())
    if len(images) != m:
        raise DomainError(f"permutation has {len(images)} images, the trees have {m} leaves")
    return Permutation(images)


def format_perm(pi: Permutation) -> str:
    if pi.is_identity:
        return "id"
    r = pi.rotation_amount
    if r is not None:
        return f"rot({r})"
    return "perm(" + " ".join(str(i) for i in pi.images) + ")"


def parse_element(text: str, ctx: SkeinContext, type_tag: str | None = None) -> GroupElement:
    """`[t | π | s]`; the type tag defaults to the smallest one the
    permutation allows."""
    cur = _Cursor(text)
    cur.expect("[")
    t = _tree(cur)
    cur.expect("|")
    start = cur.pos
    end = cur.text.find("|", start)
    if end < 0:
        raise cur.fail("expected '|'")
    # permutation images are whitespace separated, so slice the raw text
    raw_parts = text.split("|")
    if len(raw_parts) != 3:
        raise cur.fail("expected exactly two '|' separators")
    try:
        pi = parse_perm(raw_parts[1], t.leaf_count)
    except ParseError:
        raise ParseError(f"bad permutation {raw_parts[1].strip()!r}", text, start) from None
    cur.pos = end + 1
    s = _tree(cur)
    cur.expect("]")
    cur.done()
    return GroupElement(ctx, t, pi, s, type_tag or smallest_tag(pi))


def format_element(g: GroupElement) -> str:
    return f"[{g.numerator!r} | {format_perm(g.perm)} | {g.denominator!r}]"


# --- Points -------------------------------------------------------------------
_POINT = re.compile(r"([01]*)\(([01]+)\)")


def split_point(text: str) -> tuple[str, str]:
    """(u, p) as written, before normalisation."""
    compact = re.sub(r"\s+", "", text)
    match = _POINT.fullmatch(compact)
    if not match:
        bad = next((i for i, c in enumerate(compact) if c not in "01()"), len(compact))
        raise ParseError("expected a point u(p) over bits", text, bad)
    return match.group(1), match.group(2)


def parse_point(text: str) -> RationalPoint:
    return RationalPoint(*split_point(text))


def format_point(x: RationalPoint) -> str:
    return str(x)
