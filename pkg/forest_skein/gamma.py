"""
Germ quotient groups
--------------------
Γ⁺ = <a, b | a² = bⁿ> with central z = a² = bⁿ, and Γ⁻ = <a, b | a^{n-1} = b> ≅ Z.

Γ⁺ elements are kept in the normal form z^k·w, where w alternates single a's
and blocks b^j (1 <= j < n); w is the normal form of the image in Z₂*Zₙ.
Abelian invariants are read off Smith normal forms (sympy).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from forest_skein.errors import DomainError, ParseError
from forest_skein.forests import A, B, colour_word, rho, tau

Syllable = tuple[str, int]


@dataclass(frozen=True)
class GammaPlusElement:
    n: int
    k: int = 0
    word: tuple[Syllable, ...] = ()

    # --- arithmetic -----------------------------------------------------------
    def _push(self, k: int, word: list[Syllable], letter: str, exp: int) -> int:
        """Append letter^exp (exp in {1, -1}); returns the new central exponent."""
        if exp < 0:
            # a⁻¹ = z⁻¹·a and b⁻¹ = z⁻¹·b^{n-1}
            k -= 1
            exp = 1 if letter == "a" else self.n - 1
        if letter == "a":
            if word and word[-1][0] == "a":
                word.pop()
                return k + 1
            word.append(("a", 1))
            return k
        if word and word[-1][0] == "b":
            j = word[-1][1] + exp
            word.pop()
            if j >= self.n:
                k += 1
                j -= self.n
            if j:
                word.append(("b", j))
            return k
        word.append(("b", exp))
        return k

    def times_letters(self, letters: Iterable[tuple[str, int]]) -> "GammaPlusElement":
        k, word = self.k, list(self.word)
        for letter, exp in letters:
            if letter == "z":
                k += exp
                continue
            if letter not in ("a", "b"):
                raise DomainError(f"unknown generator {letter!r}")
            for _ in range(abs(exp)):
                k = self._push(k, word, letter, 1 if exp > 0 else -1)
        return GammaPlusElement(self.n, k, tuple(word))

    def letters(self) -> list[tuple[str, int]]:
        out: list[tuple[str, int]] = [("z", self.k)] if self.k else []
        for letter, j in self.word:
            out.extend([(letter, 1)] * j)
        return out

    def __mul__(self, other: "GammaPlusElement") -> "GammaPlusElement":
        if self.n != other.n:
            raise DomainError("Γ⁺ elements for different n")
        return self.times_letters(other.letters())

    def inverse(self) -> "GammaPlusElement":
        inv = [(letter, -exp) for letter, exp in reversed(self.letters())]
        return GammaPlusElement(self.n).times_letters(inv)

    @property
    def is_identity(self) -> bool:
        return self.k == 0 and not self.word

    # --- images ---------------------------------------------------------------
    def free_product_image(self) -> tuple[Syllable, ...]:
        """Normal form of the image in Z₂*Zₙ (z becomes trivial)."""
        return self.word

    def abelian_image(self) -> tuple[int, int]:
        """Image in Z₂ × Zₙ: (a-count mod 2, b-exponent sum mod n)."""
        a = sum(j for letter, j in self.word if letter == "a") % 2
        b = sum(j for letter, j in self.word if letter == "b") % self.n
        return a, b

    def __str__(self) -> str:
        parts = []
        if self.k == 1:
            parts.append("z")
        elif self.k:
            parts.append(f"z^{self.k}")
        for letter, j in self.word:
            parts.append(letter if j == 1 else f"{letter}^{j}")
        return "·".join(parts) if parts else "e"


_TOKEN = re.compile(r"([abzABZ])(?:\^\(?(-?\d+)\)?|(⁻¹))?")


def parse_gamma_word(text: str) -> list[tuple[str, int]]:
    """Letters a, b, z with optional ^k or ⁻¹; A, B, Z are inverses."""
    letters: list[tuple[str, int]] = []
    pos = 0
    text = re.sub(r"[\s·*.]", "", text)
    if text in ("", "e"):
        return letters
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character in Γ word", text, pos)
        letter, exp, inv = m.groups()
        e = int(exp) if exp is not None else 1
        if inv:
            e = -e
        if letter.isupper():
            letter, e = letter.lower(), -e
        letters.append((letter, e))
        pos = m.end()
    return letters


def gamma_plus_normalise(n: int, word: str | Sequence[tuple[str, int]]) -> GammaPlusElement:
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    letters = parse_gamma_word(word) if isinstance(word, str) else list(word)
    return GammaPlusElement(n).times_letters(letters)


def colour_word_plus(n: int, w: str) -> GammaPlusElement:
    return gamma_plus_normalise(n, [(c, 1) for c in w])


# --- Γ⁻ -----------------------------------------------------------------------
@dataclass(frozen=True)
class GammaMinusElement:
    """Γ⁻ ≅ Z via a ↦ 1, b ↦ n-1."""

    n: int
    value: int = 0

    def __mul__(self, other: "GammaMinusElement") -> "GammaMinusElement":
        return GammaMinusElement(self.n, self.value + other.value)

    def inverse(self) -> "GammaMinusElement":
        return GammaMinusElement(self.n, -self.value)

    @property
    def is_identity(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)


def colour_word_minus(n: int, w: str) -> GammaMinusElement:
    return GammaMinusElement(n, sum(1 if c == "a" else n - 1 for c in w))


# --- Abelian invariants -------------------------------------------------------
@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z_{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


def abelian_invariants(relations: Sequence[Sequence[int]], generators: int) -> AbelianInvariants:
    """Invariant factors of Z^generators / <rows of `relations`>."""
    if not relations:
        return AbelianInvariants(generators, ())
    rows = [list(r) for r in relations]
    rows += [[0] * generators for _ in range(max(0, generators - len(rows)))]
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return AbelianInvariants(generators - len(nonzero), tuple(sorted(d for d in nonzero if d > 1)))


def _letter_counts(word: str) -> list[int]:
    return [word.count(A), word.count(B)]


def relator_row(n: int, side: str) -> list[int]:
    """c^±(τ_n(a)) · c^±(ρ_n(b))⁻¹ abelianised, as exponents of (a, b)."""
    top, bottom = colour_word(side, tau(n, A)), colour_word(side, rho(n, B))
    return [x - y for x, y in zip(_letter_counts(top), _letter_counts(bottom))]


def centre_row(n: int) -> list[int]:
    """The central element z = c⁺(τ_n(a)) abelianised."""
    return _letter_counts(colour_word("plus", tau(n, A)))


def gamma_plus_invariants(n: int) -> AbelianInvariants:
    """Γ⁺ab: a² = bⁿ gives Z ⊕ Z_gcd(2, n)."""
    return abelian_invariants([relator_row(n, "plus")], 2)


def gamma_plus_mod_centre_invariants(n: int) -> AbelianInvariants:
    """(Γ⁺/<z>)ab = (Z₂*Zₙ)ab = Z₂ × Zₙ."""
    return abelian_invariants([relator_row(n, "plus"), centre_row(n)], 2)


def gamma_minus_invariants(n: int) -> AbelianInvariants:
    """Γ⁻ = <a, b | a^{n-1} = b> is infinite cyclic."""
    return abelian_invariants([relator_row(n, "minus")], 2)


def germ_invariants(n: int) -> dict[str, AbelianInvariants]:
    """The germ-group invariants at a dyadic point: Γ⁺ × Γ⁻."""
    return {
        "gamma_plus": gamma_plus_invariants(n),
        "gamma_plus_mod_centre": gamma_plus_mod_centre_invariants(n),
        "gamma_minus": gamma_minus_invariants(n),
    }
