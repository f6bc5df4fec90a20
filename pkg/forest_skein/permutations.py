"""
Leaf permutations
-----------------
Permutations of strands, 1-based: strand i on top ends at position π(i) below.
`a.compose(b)` is a∘b (b first). Also the Brin-Zappa-Szép drag
π∘g = g^π∘π^g that moves a forest past a permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from forest_skein.errors import DomainError
from forest_skein.forests import Forest, Tree


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DomainError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def rotation(cls, m: int, r: int) -> "Permutation":
        """i ↦ i + r mod m."""
        return cls(tuple((i + r) % m + 1 for i in range(m)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise DomainError(f"cannot compose permutations of sizes {self.size} and {other.size}")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    @property
    def rotation_amount(self) -> int | None:
        """r when this is rotation(r), else None."""
        r = (self.images[0] - 1) % self.size
        return r if self == Permutation.rotation(self.size, r) else None

    @property
    def kind(self) -> str:
        if self.is_identity:
            return "identity"
        return "rotation" if self.rotation_amount is not None else "general"


def bzs_drag(g: Forest, pi: Permutation) -> tuple[Forest, Permutation]:
    """(g^π, π^g) with π∘g = g^π∘π^g.

    The tree g_j moves to position π(j); strand j of π splits into one strand
    per leaf of g_j, running from block j of g's leaves to block π(j) of g^π's.
    """
    if g.roots != pi.size:
        raise DomainError(f"arity mismatch: forest has {g.roots} roots, permutation {pi.size} strands")
    moved: list[Tree | None] = [None] * pi.size
    for j, t in enumerate(g.trees, start=1):
        moved[pi(j) - 1] = t
    g_pi = Forest(tuple(moved))  # type: ignore[arg-type]
    start_top, start_bottom = [0], [0]
    for t in g.trees:
        start_top.append(start_top[-1] + t.leaf_count)
    for t in g_pi.trees:
        start_bottom.append(start_bottom[-1] + t.leaf_count)
    images = [0] * g.leaves
    for j, t in enumerate(g.trees, start=1):
        for k in range(t.leaf_count):
            images[start_top[j - 1] + k] = start_bottom[pi(j) - 1] + k + 1
    return g_pi, Permutation(tuple(images))


def unpermute(f: Forest, pi: Permutation) -> Forest:
    """The forest q with q^π = f."""
    if f.roots != pi.size:
        raise DomainError("arity mismatch")
    return Forest(tuple(f.trees[pi(j) - 1] for j in range(1, pi.size + 1)))


def random_permutation(rng: np.random.Generator, m: int, kind: str = "general") -> Permutation:
    if kind == "identity":
        return Permutation.identity(m)
    if kind == "rotation":
        return Permutation.rotation(m, int(rng.integers(0, m)))
    return Permutation(tuple(int(i) + 1 for i in rng.permutation(m)))
