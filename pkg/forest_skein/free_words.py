"""
Free subgroup words
-------------------
Reduced words in g_1..g_{n-1} (sympy free groups), where g_i stands for the
commutator [a, b^i] of Z₂*Zₙ, and their images under σ̄ in L_n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from sympy.combinatorics.free_groups import FreeGroupElement, free_group

from forest_skein.errors import DomainError
from forest_skein.gamma import GammaPlusElement
from forest_skein.groups import GroupElement, c_bar, free_generator, identity_witness, inverse, times
from forest_skein.skein import SkeinContext

logger = logging.getLogger(__name__)


def generator_names(n: int) -> str:
    return ", ".join(f"g{i}" for i in range(1, n))


def reduced_words(n: int, max_len: int) -> Iterator[FreeGroupElement]:
    """Nontrivial reduced words of length <= max_len, shortest first."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    _, *gens = free_group(generator_names(n))
    letters = list(gens) + [g**-1 for g in gens]
    layer = [gens[0] ** 0]
    for length in range(1, max_len + 1):
        nxt = []
        for w in layer:
            for x in letters:
                v = w * x
                if len(v) == length:
                    nxt.append(v)
        yield from nxt
        layer = nxt


def word_syllables(w: FreeGroupElement) -> list[tuple[int, int]]:
    """[(i, e), ...] from sympy's array form, with g_i ↦ i."""
    return [(int(str(sym)[1:]), int(e)) for sym, e in w.array_form]


def expected_commutator(n: int, i: int) -> GammaPlusElement:
    """[a, b^i] = a⁻¹b⁻ⁱab^i in Γ⁺ normal form."""
    return GammaPlusElement(n).times_letters([("a", -1), ("b", -i), ("a", 1), ("b", i)])


@dataclass(frozen=True)
class FreeWordReport:
    n: int
    max_len: int
    checked: int
    identity_hits: tuple[str, ...]
    generator_mismatches: tuple[int, ...]
    word_mismatches: tuple[str, ...] = ()
    witnessed: int = 0

    @property
    def ok(self) -> bool:
        return not self.identity_hits and not self.generator_mismatches and not self.word_mismatches


def _last_letter(w: FreeGroupElement) -> tuple[int, int]:
    sym, e = w.array_form[-1]
    return int(str(sym)[1:]), 1 if e > 0 else -1


def check_free_words(ctx: SkeinContext, max_len: int, witness_len: int = 1) -> FreeWordReport:
    """Check that no nontrivial reduced word maps to the identity.

    Words are built shortest first, each image being the cached image of its
    prefix times one generator (or inverse) image. c̄⁺ is a homomorphism, so
    an image whose c̄⁺ value equals the nontrivial expected Γ⁺ product is not
    the identity. Words up to witness_len, and any word whose c̄⁺ value is
    trivial, also get a moved point from the word problem.
    """
    n = ctx.n
    letters: dict[tuple[int, int], tuple[GroupElement, GammaPlusElement]] = {}
    mismatches = []
    for i in range(1, n):
        g, want = free_generator(ctx, i), expected_commutator(n, i)
        if c_bar("plus", g) != want:
            mismatches.append(i)
        letters[(i, 1)] = (g, want)
        letters[(i, -1)] = (inverse(g), want.inverse())

    images: dict[FreeGroupElement, tuple[GroupElement, GammaPlusElement]] = {}
    hits: list[str] = []
    word_mismatches: list[str] = []
    checked = witnessed = 0
    for w in reduced_words(n, max_len):
        g, want = letters[_last_letter(w)]
        if len(w) > 1:
            head, head_want = images[w.subword(0, len(w) - 1)]
            g, want = times(head, g), head_want * want
        if len(w) < max_len:
            images[w] = (g, want)
        checked += 1

        value = c_bar("plus", g)
        if value != want:
            word_mismatches.append(str(w))
        if value.is_identity or len(w) <= witness_len:
            witnessed += 1
            if identity_witness(g) is None:
                hits.append(str(w))
    logger.info(
        "free words: n=%d, %d words up to length %d, %d witnessed, %d identity hits",
        n, checked, max_len, witnessed, len(hits),
    )
    return FreeWordReport(n, max_len, checked, tuple(hits), tuple(mismatches), tuple(word_mismatches), witnessed)
