"""
Self-test
---------
A quick, seeded pass over the headline computations: graph pieces of
[Y_b/Y_a], the generator identities, abelianisation, germ quotients, the word
problem, certified rewriting, free words and the germ invariants. Each check
returns (name, ok, detail); the CLI prints them and exits non-zero on failure.
"""

from __future__ import annotations

import logging
from fractions import Fraction as Q
from typing import Callable

import numpy as np

from forest_skein import config
from forest_skein.dynamics import render
from forest_skein.forests import A, B, caret, random_tree, rho, tau, vine
from forest_skein.free_words import check_free_words
from forest_skein.gamma import colour_word_minus, germ_invariants
from forest_skein.groups import (
    GroupElement,
    abelianise,
    c_bar,
    inverse,
    is_identity,
    multiply,
    power,
    random_element,
    seminormal_form,
)
from forest_skein.skein import SkeinContext, grow_to_a_tree, is_good_tree, replay
from forest_skein.transducers import (
    compose_word,
    generator_transducer,
    local_action,
    transducer_equal,
)

logger = logging.getLogger(__name__)

Check = tuple[str, bool, str]

EXPECTED_PIECES = [
    (Q(0), Q(1, 2), Q(0), Q(1, 4), -1),
    (Q(1, 2), Q(5, 8), Q(1, 4), Q(1, 2), 1),
    (Q(5, 8), Q(3, 4), Q(1, 2), Q(3, 4), 1),
    (Q(3, 4), Q(7, 8), Q(3, 4), Q(13, 16), -1),
]


def yb_over_ya(ctx: SkeinContext) -> GroupElement:
    return GroupElement.make(ctx, caret(B), caret(A))


def check_graph() -> Check:
    g = render(yb_over_ya(SkeinContext(3)), depth=8)
    got = [(p.x0, p.x1, p.y0, p.y1, p.slope_log2) for p in g.pieces[:4]]
    repeat = any(
        (p.x0, p.x1, p.y0, p.y1) == (Q(7, 8), Q(15, 16), Q(13, 16), Q(15, 16)) for p in g.merged()
    )
    inside = all(a >= Q(7, 8) for a, _ in g.singular)
    return "graph [Y_b/Y_a]", got == EXPECTED_PIECES and repeat and inside, f"{len(g.pieces)} pieces"


def check_transducers() -> Check:
    bad = []
    for n in (3, 4, 5, 6):
        if not transducer_equal(compose_word(n, ["A1", "A1"]), compose_word(n, ["B1"] * n)):
            bad.append(f"A1^2 != B1^n (n={n})")
        if not transducer_equal(generator_transducer(n, "B0"), compose_word(n, ["A0"] * (n - 1))):
            bad.append(f"B0 != A0^(n-1) (n={n})")
        for i in range(1, n + 2):
            if not transducer_equal(local_action(n, tau(n, A), i), local_action(n, rho(n, B), i)):
                bad.append(f"skein leaf {i} (n={n})")
    return "transducer identities", not bad, "; ".join(bad) or "n=3..6"


def check_abelianisation(n: int) -> Check:
    ctx = SkeinContext(n)
    g = yb_over_ya(ctx)
    bad = [k for k in range(2 * n + 1) if abelianise(power(g, k)) != k % n]
    return "abelianisation", not bad, f"bad powers {bad}" if bad else f"k=0..{2 * n}"


def check_germ_quotients(n: int) -> Check:
    ctx = SkeinContext(n)
    ok = all(
        c_bar("minus", GroupElement.make(ctx, vine("left", 2, c), rho(2, c))) == colour_word_minus(n, c)
        for c in (A, B)
    )
    return "c̄⁻ of [λ₂(s)/ρ₂(s)]", ok, "s in {a, b}"


def check_word_problem(n: int, rng: np.random.Generator, samples: int = 10) -> Check:
    ctx = SkeinContext(n)
    bad = 0
    for _ in range(samples):
        g = random_element(ctx, rng, carets=3, type_tag="V")
        bad += not is_identity(multiply(g, inverse(g)))
    bad += is_identity(yb_over_ya(ctx))
    return "word problem", bad == 0, f"{samples} random g·g⁻¹"


def check_rewriting(n: int, rng: np.random.Generator, samples: int = 10) -> Check:
    ctx = SkeinContext(n)
    for _ in range(samples):
        t = random_tree(rng, int(rng.integers(1, 7)))
        r = grow_to_a_tree(ctx, t)
        if replay(ctx, t, r.trace) != r.tree:
            return "rewriting", False, f"grow_to_a_tree replay failed on {t!r}"
        g = GroupElement.make(ctx, t, random_tree(rng, t.caret_count))
        snf = seminormal_form(g).element
        if not is_good_tree(ctx, snf.numerator):
            return "rewriting", False, f"seminormal numerator not good for {g}"
    return "rewriting", True, f"{samples} random trees"


def check_free_subgroup(n: int) -> Check:
    report = check_free_words(SkeinContext(n), max_len=2)
    return "free words", report.ok, f"{report.checked} words, {len(report.identity_hits)} identity hits"


def check_invariants() -> Check:
    torsions = {n: germ_invariants(n)["gamma_plus_mod_centre"].torsion for n in (3, 4, 5)}
    distinct = len(set(torsions.values())) == 3
    return "germ invariants", distinct, ", ".join(f"n={n}: {t}" for n, t in torsions.items())


def run_selftest(n: int, seed: int | None = None) -> list[Check]:
    rng = np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)
    checks: list[Callable[[], Check]] = [
        check_graph,
        check_transducers,
        lambda: check_abelianisation(n),
        lambda: check_germ_quotients(n),
        lambda: check_word_problem(n, rng),
        lambda: check_rewriting(n, rng),
        lambda: check_free_subgroup(n),
        check_invariants,
    ]
    results = []
    for check in checks:
        name, ok, detail = check()
        logger.info("selftest %s: %s (%s)", name, "ok" if ok else "FAIL", detail)
        results.append((name, ok, detail))
    return results
