"""
Sequential transducers
----------------------
Deterministic machines reading one bit at a time and emitting a (possibly
empty) bit-word per step, after an initial output. They realise the maps
A₀, A₁, B₀, B₁ on Cantor space and every composite of them, i.e. the local
actions β(t, i).

- Machines are immutable; states are 0..k-1.
- Non-stalling (every cycle emits at least one bit) is checked at construction.
- Composition is the reachable product machine; nothing is minimised.
- Equivalence works on onward ("earliest output") forms. It relies on the
  machine computing an injective map, which holds for every local action.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from forest_skein import config
from forest_skein.errors import DomainError, TransducerError
from forest_skein.forests import A, B, Tree, leaf_path
from forest_skein.points import ONE, ZERO, RationalPoint, common_prefix

logger = logging.getLogger(__name__)

Row = tuple[tuple[str, int], tuple[str, int]]
GENERATORS = ("A0", "A1", "B0", "B1")


@dataclass(frozen=True)
class Transducer:
    initial_output: str
    transitions: tuple[Row, ...]
    initial_state: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        k = len(self.transitions)
        if not 0 <= self.initial_state < k:
            raise TransducerError("initial state out of range")
        for state, row in enumerate(self.transitions):
            if len(row) != 2:
                raise TransducerError(f"state {state} needs exactly two transitions")
            for out, nxt in row:
                if set(out) - {"0", "1"}:
                    raise TransducerError(f"state {state}: output {out!r} is not a bit-word")
                if not 0 <= nxt < k:
                    raise TransducerError(f"state {state}: target {nxt} out of range")
        if set(self.initial_output) - {"0", "1"}:
            raise TransducerError("initial output is not a bit-word")
        self._check_non_stalling()

    def _check_non_stalling(self) -> None:
        # the silent edges must form an acyclic graph
        silent = [[nxt for out, nxt in row if not out] for row in self.transitions]
        colour = [0] * len(silent)
        for root in range(len(silent)):
            if colour[root]:
                continue
            stack = [(root, iter(silent[root]))]
            colour[root] = 1
            while stack:
                state, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    colour[state] = 2
                    stack.pop()
                elif colour[nxt] == 1:
                    raise TransducerError(f"stalling cycle through state {nxt}")
                elif colour[nxt] == 0:
                    colour[nxt] = 1
                    stack.append((nxt, iter(silent[nxt])))

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, bit: str) -> tuple[str, int]:
        return self.transitions[state][bit == "1"]

    def run_word(self, state: int, word: str) -> tuple[str, int]:
        out = []
        for bit in word:
            o, state = self.transitions[state][bit == "1"]
            out.append(o)
        return "".join(out), state

    def eval_from(self, state: int, x: RationalPoint, lead: str = "") -> RationalPoint:
        """Output from `state` on x, after `lead`. Exact: simulate period by
        period until the state at a period boundary repeats."""
        head, state = self.run_word(state, x.prefix)
        chunks: list[str] = []
        seen: dict[int, int] = {}
        while state not in seen:
            seen[state] = len(chunks)
            out, state = self.run_word(state, x.period)
            chunks.append(out)
        start = seen[state]
        period = "".join(chunks[start:])
        if not period:
            raise TransducerError("machine stalls on a periodic input")
        return RationalPoint(lead + head + "".join(chunks[:start]), period)

    def eval(self, x: RationalPoint) -> RationalPoint:
        return self.eval_from(self.initial_state, x, self.initial_output)


def eval_transducer(t: Transducer, x: RationalPoint) -> RationalPoint:
    return t.eval(x)


# --- Basic machines -----------------------------------------------------------
COPY = Transducer("", ((("0", 0), ("1", 0)),), name="id")


def prefix_transducer(w: str) -> Transducer:
    """x ↦ w·x."""
    return Transducer(w, COPY.transitions, name=f"prefix({w})")


def _b1_transitions(n: int) -> tuple[Row, ...]:
    # 0: loop root; 1..n-2: read 0^k; n-1: read "1"; n: copy
    root, one, copy = 0, n - 1, n
    rows: list[Row] = [(("", 1), ("", one))]
    for k in range(1, n - 1):
        if k + 1 == n - 1:
            on0 = ("0" * (n - 2) + "1", copy)  # ℓ₁ ↦ ℓ₂
        else:
            on0 = ("", k + 1)
        # read 0^k·1 = ℓ_{n-k}, emit ℓ_{n-k+1}
        on1 = ("10", copy) if k == 1 else ("0" * (k - 1) + "1", copy)
        rows.append((on0, on1))
    rows.append((("11" + "0" * (n - 1), copy), ("11", root)))  # ℓ_n ↦ 11·ℓ₁, 11 loops
    rows.append((("0", copy), ("1", copy)))
    return tuple(rows)


@lru_cache(maxsize=None)
def generator_transducer(n: int, sym: str) -> Transducer:
    """A₀(x)=0x, A₁(x)=1x, B₀(x)=0^{n-1}x, and B₁(μ_i·x)=μ_{i+1}·x."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if sym == "A0":
        return Transducer("0", COPY.transitions, name="A0")
    if sym == "A1":
        return Transducer("1", COPY.transitions, name="A1")
    if sym == "B0":
        return Transducer("0" * (n - 1), COPY.transitions, name="B0")
    if sym == "B1":
        return Transducer("", _b1_transitions(n), name="B1")
    raise DomainError(f"unknown generator {sym!r}; expected one of {GENERATORS}")


def compose_transducers(first: Transducer, then: Transducer) -> Transducer:
    """The machine for then∘first (first reads the input)."""
    if first is COPY or first == COPY:
        return then
    if then is COPY or then == COPY:
        return first
    lead, q0 = then.run_word(then.initial_state, first.initial_output)
    start = (first.initial_state, q0)
    index = {start: 0}
    order = [start]
    rows: list[Row] = []
    for p, q in order:  # order grows while we walk it
        row = []
        for bit in "01":
            w, p2 = first.step(p, bit)
            out, q2 = then.run_word(q, w)
            key = (p2, q2)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append((out, index[key]))
        rows.append((row[0], row[1]))
    name = f"{then.name}∘{first.name}" if first.name and then.name else ""
    return Transducer(then.initial_output + lead, tuple(rows), 0, name=name)


def compose_word(n: int, syms: Sequence[str]) -> Transducer:
    """syms[0]∘syms[1]∘...: the last symbol reads the input first."""
    machine = COPY
    for sym in reversed(syms):
        machine = compose_transducers(machine, generator_transducer(n, sym))
    return machine


def power(t: Transducer, k: int) -> Transducer:
    machine = COPY
    for _ in range(k):
        machine = compose_transducers(machine, t)
    return machine


# --- Local actions ------------------------------------------------------------
_SYMBOL = {(A, "0"): "A0", (A, "1"): "A1", (B, "0"): "B0", (B, "1"): "B1"}


@lru_cache(maxsize=config.CACHE_SIZE)
def local_action_word(n: int, path: tuple[tuple[str, str], ...]) -> Transducer:
    """β for a root-to-leaf path: the root's generator is applied last."""
    if not path:
        return COPY
    head = generator_transducer(n, _SYMBOL[path[0]])
    return compose_transducers(local_action_word(n, path[1:]), head)


def local_action(n: int, t: Tree, i: int) -> Transducer:
    """β(t, i) for the i-th leaf (1-based)."""
    return local_action_word(n, tuple(leaf_path(t, i)))


def local_action_symbols(t: Tree, i: int) -> list[str]:
    return [_SYMBOL[step] for step in leaf_path(t, i)]


# --- Onward form and equivalence ----------------------------------------------
_Value = Union[str, RationalPoint]


def _prepend(w: str, v: _Value) -> _Value:
    return w + v if isinstance(v, str) else v.prepend(w)


def _lcp(x: _Value, y: _Value) -> _Value:
    if isinstance(x, RationalPoint) and isinstance(y, RationalPoint):
        w = common_prefix(x, y)
        return x if w is None else w
    if isinstance(x, RationalPoint):
        x, y = y, x
    # x is finite; y may be either
    limit = len(x) if isinstance(y, RationalPoint) else min(len(x), len(y))
    ybits = y.head(limit) if isinstance(y, RationalPoint) else y
    k = 0
    while k < limit and x[k] == ybits[k]:
        k += 1
    return x[:k]


def state_prefixes(t: Transducer) -> list[str]:
    """For each state, the longest word every output from that state starts
    with. Computed as the greatest fixpoint of
    L(q) = lcp(out(q,0)·L(δ(q,0)), out(q,1)·L(δ(q,1))) from L(q) = run on 0̄."""
    values: list[_Value] = [t.eval_from(q, ZERO) for q in range(t.num_states)]
    changed = True
    while changed:
        changed = False
        for q, ((o0, n0), (o1, n1)) in enumerate(t.transitions):
            new = _lcp(_prepend(o0, values[n0]), _prepend(o1, values[n1]))
            if new != values[q]:
                values[q] = new
                changed = True
    for q, v in enumerate(values):
        if not isinstance(v, str):
            raise TransducerError(f"state {q} computes a constant map; machine is not injective")
    return values  # type: ignore[return-value]


def onward(t: Transducer) -> Transducer:
    """Same map, with every output emitted as early as possible."""
    lead = state_prefixes(t)
    rows: list[Row] = []
    for q, row in enumerate(t.transitions):
        new_row = []
        for out, nxt in row:
            full = out + lead[nxt]
            if not full.startswith(lead[q]):
                raise AssertionError("state prefix is not a common prefix")
            new_row.append((full[len(lead[q]):], nxt))
        rows.append((new_row[0], new_row[1]))
    return Transducer(t.initial_output + lead[t.initial_state], tuple(rows), t.initial_state, name=t.name)


@dataclass(frozen=True)
class Equivalence:
    equal: bool
    witness: RationalPoint | None = None

    def __bool__(self) -> bool:
        return self.equal


def _steer(t: Transducer, state: int, bit: str) -> str:
    """An input word from `state` whose first emitted bit is `bit`."""
    seen = {state}
    queue = deque([(state, "")])
    while queue:
        q, path = queue.popleft()
        for b in "01":
            out, nxt = t.step(q, b)
            if out:
                if out[0] == bit:
                    return path + b
            elif nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, path + b))
    raise TransducerError("no continuation emits the requested bit; machine is not onward")


def _witness(s: Transducer, t: Transducer, path: str, ps: int, pt: int, os: str, ot: str) -> RationalPoint:
    """A point separating two onward machines that agreed on `path` and now
    emit os vs ot, landing in states ps / pt."""
    if os.startswith(ot) or ot.startswith(os):
        if len(os) < len(ot):
            tail = _steer(s, ps, "1" if ot[len(os)] == "0" else "0")
        else:
            tail = _steer(t, pt, "1" if os[len(ot)] == "0" else "0")
        return RationalPoint(path + tail, "0")
    return RationalPoint(path, "0")


def transducer_equal(s: Transducer, t: Transducer) -> Equivalence:
    """Decide whether two injective machines compute the same map.

    Onward machines for equal maps emit identical words on every input prefix,
    so a product walk comparing outputs edge by edge decides equality; the
    first difference yields a separating rational point.
    """
    s1, t1 = onward(s), onward(t)
    if s1.initial_output != t1.initial_output:
        w = _witness(s1, t1, "", s1.initial_state, t1.initial_state, s1.initial_output, t1.initial_output)
        return Equivalence(False, w)
    start = (s1.initial_state, t1.initial_state)
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (p, q), path = queue.popleft()
        for bit in "01":
            os, p2 = s1.step(p, bit)
            ot, q2 = t1.step(q, bit)
            if os != ot:
                return Equivalence(False, _witness(s1, t1, path + bit, p2, q2, os, ot))
            if (p2, q2) not in seen:
                seen.add((p2, q2))
                queue.append(((p2, q2), path + bit))
    return Equivalence(True)


def is_prefix_map(t: Transducer) -> str | None:
    """v if t(x) = v·x for all x, else None. The candidate v comes from the
    images of 0̄ and 1̄; transducer_equal confirms it."""
    w = common_prefix(t.eval(ZERO), t.eval(ONE))
    if w is None:
        raise TransducerError("machine maps 0̄ and 1̄ to the same point")
    return w if transducer_equal(t, prefix_transducer(w)) else None


# --- Prefix replacement along a point -----------------------------------------
def copy_states(t: Transducer) -> frozenset[int]:
    """States from which t copies its input: the largest set of states whose
    rows read ("0", q0), ("1", q1) with q0 and q1 in the set."""
    states = set(range(t.num_states))
    changed = True
    while changed:
        changed = False
        for q in sorted(states):
            (o0, n0), (o1, n1) = t.transitions[q]
            if o0 != "0" or o1 != "1" or n0 not in states or n1 not in states:
                states.discard(q)
                changed = True
    return frozenset(states)


def prefix_replacement_along(t: Transducer, x: RationalPoint) -> tuple[str, str] | None:
    """(w, v) with w a prefix of x and t(w·z) = v·z for all z, w as short as
    possible; None when t never settles into copying along x."""
    m = onward(t)
    copying = copy_states(m)
    state, out = m.initial_state, [m.initial_output]
    seen: set[tuple[int, int]] = set()
    k = 0
    while state not in copying:
        if k >= len(x.prefix):
            phase = (state, (k - len(x.prefix)) % len(x.period))
            if phase in seen:
                return None
            seen.add(phase)
        o, state = m.step(state, x.bit(k))
        out.append(o)
        k += 1
    return x.head(k), "".join(out)
