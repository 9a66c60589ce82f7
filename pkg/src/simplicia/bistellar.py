"""Bistellar moves and flip-based sphere recognition.

Convention: in a k-move kappa(a, b) on a d-dimensional complex, ``a`` has
dimension d - k and ``b`` dimension k.  k = 0 stars a new vertex ``b`` inside
the facet ``a``; k = d removes the vertex ``a`` whose link is the boundary of
the missing facet ``b``.  Moves with 0 < k < d are proper and keep the vertex
count.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .core import Complex, ComplexError, Verdict, link
from .invariants import binom, f_vector

DEFAULT_BUDGET = 4000
DEFAULT_RESTARTS = 6


@dataclass(frozen=True)
class Move:
    a: tuple
    b: tuple
    k: int

    def reverse(self, d: int) -> "Move":
        return Move(self.b, self.a, d - self.k)

    def describe(self, K: Complex | None = None) -> str:
        ta = K.tokens(self.a) if K else list(self.a)
        tb = K.tokens(self.b) if K else list(self.b)
        return f"kappa({''.join(map(str, ta))}, {''.join(map(str, tb))}) [dim a={len(self.a) - 1}, dim b={len(self.b) - 1}]"


@dataclass
class MoveTrace:
    start: Complex
    moves: list = field(default_factory=list)
    fvectors: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)

    def replay(self) -> Complex:
        K = self.start
        for m in self.moves:
            K = apply_move(K, m)
        return K

    def json_lines(self) -> str:
        out = []
        for i, (m, f) in enumerate(zip(self.moves, self.fvectors), 1):
            tok = lambda s: [self.labels.get(v, str(v)) for v in s]  # noqa: E731
            out.append(json.dumps({"step": i, "a": tok(m.a), "b": tok(m.b), "k": m.k, "f": list(f)}))
        return "\n".join(out)

    def __len__(self):
        return len(self.moves)


def f_delta(d: int, k: int) -> tuple:
    """Change of the f-vector (f_0..f_d) under a k-move in dimension d."""
    out = []
    for m in range(d + 1):
        size = m + 1
        added = binom(d - k + 1, size - (k + 1)) if size - (k + 1) <= d - k else 0
        removed = binom(k + 1, size - (d - k + 1)) if size - (d - k + 1) <= k else 0
        out.append(added - removed)
    return tuple(out)


class FlipState:
    """Mutable pseudomanifold with an index from proper faces to their facets."""

    def __init__(self, K: Complex):
        if not K.is_pure:
            raise ComplexError("bistellar moves need a pure complex")
        self.d = K.dim
        self.facets: set = set()
        self.star: dict = {}
        self.cand: set = set()
        self.fcount = [0] * (self.d + 1)
        self.next_vertex = max(K.vertices) + 1
        for f in K.facets:
            self._add(f)

    def _touch(self, A):
        need = self.d + 2 - len(A)
        st = self.star.get(A)
        if st is not None and len(st) == need:
            self.cand.add(A)
        else:
            self.cand.discard(A)

    def _add(self, f):
        self.facets.add(f)
        self.fcount[self.d] += 1
        for r in range(1, len(f)):
            for A in combinations(f, r):
                st = self.star.get(A)
                if st is None:
                    st = self.star[A] = set()
                    self.fcount[r - 1] += 1
                st.add(f)
                self._touch(A)

    def _remove(self, f):
        self.facets.remove(f)
        self.fcount[self.d] -= 1
        for r in range(1, len(f)):
            for A in combinations(f, r):
                st = self.star[A]
                st.discard(f)
                if not st:
                    del self.star[A]
                    self.fcount[r - 1] -= 1
                    self.cand.discard(A)
                else:
                    self._touch(A)

    def is_face(self, s) -> bool:
        return s in self.star or s in self.facets

    def move_at(self, A):
        """The move with a = A if one is valid, else None."""
        st = self.star.get(A)
        if st is None:
            return None
        need = self.d + 2 - len(A)
        if len(st) != need:
            return None
        lv = set()
        for f in st:
            lv.update(f)
        lv.difference_update(A)
        if len(lv) != need:
            return None
        B = tuple(sorted(lv))
        if self.is_face(B):
            return None
        return Move(A, B, self.d + 1 - len(A))

    def moves(self) -> list:
        out = []
        for A in self.cand:
            m = self.move_at(A)
            if m is not None:
                out.append(m)
        out.sort(key=lambda m: (m.k, m.a))
        return out

    def apply(self, m: Move):
        for x in m.b:
            self._remove(tuple(sorted(set(m.a) | (set(m.b) - {x}))))
        for y in m.a:
            self._add(tuple(sorted(set(m.b) | (set(m.a) - {y}))))

    def star_facet(self, facet) -> Move:
        v = self.next_vertex
        self.next_vertex += 1
        m = Move(tuple(facet), (v,), 0)
        self.apply(m)
        return m

    @property
    def n(self) -> int:
        return self.fcount[0]

    def fvector(self) -> tuple:
        return tuple(self.fcount)

    def to_complex(self, labels: dict) -> Complex:
        return Complex(frozenset(self.facets), labels)


def _pseudomanifold_or_raise(K: Complex):
    from .recognition import is_pseudomanifold

    if not K.is_pure or not is_pseudomanifold(K):
        raise ComplexError("bistellar moves need a pure pseudomanifold")


def valid_moves(K: Complex, include_zero: bool = False) -> list:
    """Proper moves and vertex removals; optionally one 0-move per facet."""
    _pseudomanifold_or_raise(K)
    st = FlipState(K)
    out = st.moves()
    if include_zero:
        fresh = st.next_vertex
        out += [Move(f, (fresh,), 0) for f in sorted(K.facets)]
    return out


def proper_moves(K: Complex) -> list:
    return [m for m in valid_moves(K) if 0 < m.k < K.dim]


def apply_move(K: Complex, m: Move) -> Complex:
    d = K.dim
    a, b = tuple(sorted(m.a)), tuple(sorted(m.b))
    if set(a) & set(b):
        raise ComplexError("invalid move: a and b share vertices")
    if len(a) + len(b) != d + 2 or m.k != len(b) - 1:
        raise ComplexError("invalid move: dimensions do not add up")
    labels = dict(K.labels)
    if m.k == 0:
        if a not in K.facets:
            raise ComplexError("invalid move: a is not a facet")
        if b[0] in K.labels:
            raise ComplexError("invalid move: b present")
        labels[b[0]] = _fresh_token(K)
    else:
        if not K.contains(a):
            raise ComplexError("invalid move: a not in K")
        if K.contains(b):
            raise ComplexError("invalid move: b present")
        lk = link(K, a)
        if lk.facets != frozenset(combinations(b, len(b) - 1)):
            raise ComplexError("invalid move: link mismatch")
    fs = set(K.facets)
    for x in b:
        fs.discard(tuple(sorted(set(a) | (set(b) - {x}))))
    for y in a:
        fs.add(tuple(sorted(set(b) | (set(a) - {y}))))
    return Complex(frozenset(fs), labels, K.name)


def _fresh_token(K: Complex) -> str:
    used = set(K.labels.values())
    nums = [int(t) for t in used if t.isdigit()]
    tok = str(max(nums) + 1 if nums else len(used))
    while tok in used:
        tok += "'"
    return tok


def _lex_delta(d: int, k: int) -> tuple:
    # energy is (f_d, f_{d-1}, ..., f_0) compared lexicographically
    return tuple(reversed(f_delta(d, k)))


def _uphill_size(delta: tuple) -> int:
    for x in delta:
        if x:
            return x
    return 0


def reduce_to_sphere(K: Complex, budget: int = DEFAULT_BUDGET, seed: int = 0,
                     restarts: int = DEFAULT_RESTARTS, t0: float = 1.0,
                     cooling: float = 0.999) -> Verdict:
    """Anneal towards the boundary of a simplex; Yes with a MoveTrace, else Unknown.

    ``budget`` caps the moves per restart.  Downhill moves (in the
    lexicographic order on (f_d, ..., f_0)) are always acceptable; an uphill
    move of leading size s is weighted by exp(-s / T) with T decaying
    geometrically from ``t0``.
    """
    from .recognition import is_pseudomanifold

    if not K.is_pure or not is_pseudomanifold(K):
        return Verdict.unknown("not a pseudomanifold")
    d = K.dim
    if d < 1:
        return Verdict.unknown("dimension < 1")
    deltas = {k: _lex_delta(d, k) for k in range(0, d + 1)}
    size = {k: _uphill_size(deltas[k]) for k in deltas}
    if K.n > d + 2 and not FlipState(K).moves():
        return Verdict.unknown("no proper move or vertex removal applies (locally minimal)")
    for r in range(restarts):
        rng = random.Random(seed * 7919 + r)
        st = FlipState(K)
        trace = MoveTrace(K, labels=dict(K.labels))
        T = t0
        for _ in range(budget):
            if st.n == d + 2:
                return Verdict.yes(trace, f"reduced in {len(trace)} moves (restart {r})")
            moves = st.moves()
            if not moves:
                break
            collapse = [m for m in moves if m.k == d]
            if collapse:
                m = rng.choice(collapse)
            else:
                weights = []
                for mv in moves:
                    s = size[mv.k]
                    weights.append(1.0 if s <= 0 else math.exp(-s / T))
                m = rng.choices(moves, weights)[0]
            st.apply(m)
            trace.moves.append(m)
            trace.fvectors.append(st.fvector())
            T = max(T * cooling, 0.05)
        if st.n == d + 2:
            return Verdict.yes(trace, f"reduced in {len(trace)} moves (restart {r})")
    return Verdict.unknown(f"not reduced within {restarts} x {budget} moves")


def bistellar_equivalent(K: Complex, L: Complex, depth: int) -> Verdict:
    """Bounded two-sided search over proper moves and vertex removals."""
    from .isomorphism import are_isomorphic, canonical_key

    if K.dim != L.dim or not K.is_pure or not L.is_pure:
        raise ComplexError("dimension mismatch")
    d = K.dim

    def neighbours(X):
        st = FlipState(X)
        for m in st.moves():
            yield m, apply_move(X, m)

    seen = [{canonical_key(K): (K, None, None)}, {canonical_key(L): (L, None, None)}]
    frontier = [[K], [L]]

    def path(side, key):
        moves = []
        X, parent, m = seen[side][key]
        while parent is not None:
            moves.append(m)
            X, parent, m = seen[side][parent]
        return X, moves

    def meet():
        common = set(seen[0]) & set(seen[1])
        if not common:
            return None
        key = min(common)
        X0 = seen[0][key][0]
        X1 = seen[1][key][0]
        _, fwd = path(0, key)
        _, back = path(1, key)
        iso = are_isomorphic(X0, X1).certificate
        return Verdict.yes({"forward": list(reversed(fwd)), "iso": iso,
                            "backward": [m.reverse(d) for m in back]},
                           f"equivalent in {len(fwd) + len(back)} moves")

    found = meet()
    if found:
        return found
    for step in range(depth):
        side = step % 2
        nxt = []
        for X in frontier[side]:
            px = canonical_key(X)
            for m, Y in neighbours(X):
                ky = canonical_key(Y)
                if ky not in seen[side]:
                    seen[side][ky] = (Y, px, m)
                    nxt.append(Y)
        frontier[side] = nxt
        found = meet()
        if found:
            return found
    return Verdict.unknown(f"not connected within depth {depth}")


def flip_graph_component(K: Complex, limit: int = 10_000) -> list:
    """Canonical forms reachable by proper moves (bounded breadth-first walk)."""
    from .isomorphism import canonical_key

    start = canonical_key(K)
    seen = {start: K}
    queue = deque([K])
    while queue and len(seen) < limit:
        X = queue.popleft()
        for m in FlipState(X).moves():
            if 0 < m.k < X.dim:
                Y = apply_move(X, m)
                ky = canonical_key(Y)
                if ky not in seen:
                    seen[ky] = Y
                    queue.append(Y)
    return list(seen.values())
