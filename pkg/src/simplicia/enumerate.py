"""Isomorph-free exhaustive generation of small triangulations.

Surfaces are grown around a vertex of maximum degree: its link is fixed as
the cycle 1..delta, then open edges are closed one triangle at a time while
every vertex link stays a union of paths (or a single closed cycle).  New
vertices are introduced in increasing order only, so unused vertices are
never tried twice.  Leaves are accepted by canonical key.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .core import Complex, ComplexError, disjoint_union, is_connected, join
from .constructions import standard_sphere
from .isomorphism import canonical_form, canonical_key
from .recognition import classify_surface, is_pseudomanifold

SURFACE_RANGE = (4, 9)
GATED_SURFACE_N = 9


@dataclass
class EnumerationReport:
    n: int
    total: int
    breakdown: dict
    elapsed: float
    complexes: list = field(default_factory=list, repr=False)
    kind: str = "surfaces"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "total": self.total,
                "breakdown": dict(self.breakdown), "elapsed": round(self.elapsed, 3)}


def _jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("SIMPLICIA_JOBS", "1") or 1)
    return max(1, jobs)


def _standardize(K: Complex, name: str = "") -> Complex:
    """Canonical form with tokens 1..n in canonical order."""
    C, _ = canonical_form(K)
    return Complex(C.facets, {v: str(v + 1) for v in C.vertices}, name)


# ---------------------------------------------------------------- surfaces


class _SurfaceSearch:
    def __init__(self, n: int, delta: int, order_seed: int | None = None):
        self.n = n
        self.delta = delta
        self.rng = random.Random(order_seed) if order_seed is not None else None
        self.tris: set = set()
        self.ecount: dict = {}
        self.lk: list = [dict() for _ in range(n)]
        self.closed = [False] * n
        self.used = delta + 1
        self.found: dict = {}
        for i in range(1, delta + 1):
            self._add((0, i, i % delta + 1))

    def _add(self, t):
        t = tuple(sorted(t))
        self.tris.add(t)
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            self.ecount[e] = self.ecount.get(e, 0) + 1
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            L = self.lk[x]
            L.setdefault(y, set()).add(z)
            L.setdefault(z, set()).add(y)
            if all(len(s) == 2 for s in L.values()) and self._single_cycle(x):
                self.closed[x] = True

    def _remove(self, t):
        t = tuple(sorted(t))
        self.tris.remove(t)
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            self.ecount[e] -= 1
            if not self.ecount[e]:
                del self.ecount[e]
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            L = self.lk[x]
            self.closed[x] = False
            L[y].discard(z)
            L[z].discard(y)
            if not L[y]:
                del L[y]
            if not L[z]:
                del L[z]

    def _single_cycle(self, x) -> bool:
        L = self.lk[x]
        start = next(iter(L))
        prev, cur, steps = None, start, 0
        while True:
            nxt = [w for w in L[cur] if w != prev]
            prev, cur = cur, nxt[0]
            steps += 1
            if cur == start:
                return steps == len(L)

    def _path_end(self, x, y):
        """Other end of the path through y in link(x) (y must have degree 1)."""
        L = self.lk[x]
        prev, cur, size = None, y, 1
        while True:
            nxt = [w for w in L[cur] if w != prev]
            if not nxt:
                return cur, size
            prev, cur = cur, nxt[0]
            size += 1

    def _ok_at(self, x, y, z) -> bool:
        # adding link edge y-z to link(x)
        if self.closed[x]:
            return False
        L = self.lk[x]
        iny, inz = y in L, z in L
        if iny and len(L[y]) >= 2 or inz and len(L[z]) >= 2:
            return False
        if len(L) + (not iny) + (not inz) > self.delta:
            return False
        if iny and inz:
            end, size = self._path_end(x, y)
            if end == z:
                # closing the cycle: it must be the whole link
                return size == len(L) and size >= 3
        return True

    def _open_edge(self):
        for x in range(self.used):
            if self.closed[x]:
                continue
            L = self.lk[x]
            ends = sorted(v for v, s in L.items() if len(s) == 1)
            if ends:
                return x, ends[0]
        return None

    def run(self):
        self._search()
        return self.found

    def _search(self):
        oe = self._open_edge()
        if oe is None:
            if self.used == self.n:
                K = Complex._raw(frozenset(self.tris), {v: str(v + 1) for v in range(self.n)})
                key = canonical_key(K)
                if key not in self.found:
                    self.found[key] = K
            return
        x, p = oe
        q = next(iter(self.lk[x][p]))
        cands = [w for w in range(self.used) if w not in (x, p, q)]
        if self.used < self.n:
            cands.append(self.used)
        if self.rng is not None:
            self.rng.shuffle(cands)
        for w in cands:
            t = tuple(sorted((x, p, w)))
            if t in self.tris:
                continue
            if not (self._ok_at(x, p, w) and self._ok_at(p, x, w) and self._ok_at(w, x, p)):
                continue
            fresh = w == self.used
            if fresh:
                self.used += 1
            self._add(t)
            self._search()
            self._remove(t)
            if fresh:
                self.used -= 1


def _connected_for_delta(args):
    n, delta, seed = args
    return list(_SurfaceSearch(n, delta, seed).run().values())


def connected_surfaces(n: int, jobs: int | None = None, order_seed: int | None = None) -> list:
    """Connected combinatorial surfaces on exactly n vertices, one per isomorphism type."""
    if n < 4:
        return []
    tasks = [(n, delta, order_seed) for delta in range(3, n)]
    j = _jobs(jobs)
    if j > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(j, len(tasks))) as ex:
            parts = list(ex.map(_connected_for_delta, tasks))
    else:
        parts = [_connected_for_delta(t) for t in tasks]
    found: dict = {}
    for part in parts:
        for K in part:
            found.setdefault(canonical_key(K), K)
    return [_standardize(found[k]) for k in sorted(found)]


def _vertex_partitions(n: int, smallest: int = 4, most: int | None = None):
    """Non-increasing tuples of parts >= smallest summing to n with at least two parts."""
    def rec(rest, top):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, top), smallest - 1, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, most or n):
        if len(parts) >= 2:
            yield parts


def surfaces(n: int, connected: bool = False, allow_gated: bool = False,
             jobs: int | None = None, order_seed: int | None = None) -> EnumerationReport:
    """All combinatorial 2-manifolds on exactly n vertices up to isomorphism."""
    lo, hi = SURFACE_RANGE
    if not lo <= n <= hi:
        raise ValueError(f"surfaces(n) needs {lo} <= n <= {hi}")
    if n >= GATED_SURFACE_N and not allow_gated:
        raise ValueError(f"surfaces({n}) is gated; pass allow_gated=True")
    t0 = time.perf_counter()
    by_n = {}

    def conn(m):
        if m not in by_n:
            by_n[m] = connected_surfaces(m, jobs=jobs, order_seed=order_seed)
        return by_n[m]

    out = list(conn(n))
    breakdown: dict = {}
    for K in out:
        tag = classify_surface(K).tag
        breakdown[tag] = breakdown.get(tag, 0) + 1
    if not connected:
        seen = set()
        for parts in _vertex_partitions(n):
            # components of equal size are chosen as multisets
            groups: dict = {}
            for p in parts:
                groups[p] = groups.get(p, 0) + 1
            choice_lists = [list(combinations_with_replacement(conn(p), c)) for p, c in groups.items()]
            for combo in _product(choice_lists):
                comps = [K for group in combo for K in group]
                U = comps[0]
                for C in comps[1:]:
                    U = disjoint_union(U, C)
                U = _standardize(U)
                key = canonical_key(U)
                if key in seen:
                    continue
                seen.add(key)
                out.append(U)
                breakdown["disconnected"] = breakdown.get("disconnected", 0) + 1
    return EnumerationReport(n, len(out), breakdown, time.perf_counter() - t0, out)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


# ---------------------------------------------------------------- ridge closing


def _close_ridges(start: list, candidates: list, accept, order_seed: int | None = None) -> dict:
    """Pure pseudomanifold completions of ``start`` using facets from ``candidates``.

    Every ridge must end up in exactly two facets.  ``accept(facets)`` filters
    closed results; accepted ones are deduplicated by canonical key.
    """
    rng = random.Random(order_seed) if order_seed is not None else None
    by_ridge: dict = {}
    for f in candidates:
        for r in combinations(f, len(f) - 1):
            by_ridge.setdefault(r, []).append(f)
    chosen: set = set(start)
    rcount: dict = {}
    for f in start:
        for r in combinations(f, len(f) - 1):
            rcount[r] = rcount.get(r, 0) + 1
    found: dict = {}

    def search():
        open_r = [r for r, c in rcount.items() if c == 1]
        if not open_r:
            K = Complex._raw(frozenset(chosen), {})
            K = Complex(K.facets, {v: str(v) for v in K.vertices})
            if accept(K):
                found.setdefault(canonical_key(K), K)
            return
        # most constrained ridge first
        best, opts = None, None
        for r in open_r:
            cs = [f for f in by_ridge.get(r, ()) if f not in chosen
                  and all(rcount.get(s, 0) < 2 for s in combinations(f, len(f) - 1))]
            if best is None or len(cs) < len(opts):
                best, opts = r, cs
                if not cs:
                    return
        if rng is not None:
            rng.shuffle(opts)
        for f in opts:
            chosen.add(f)
            for s in combinations(f, len(f) - 1):
                rcount[s] = rcount.get(s, 0) + 1
            search()
            for s in combinations(f, len(f) - 1):
                rcount[s] -= 1
                if not rcount[s]:
                    del rcount[s]
            chosen.discard(f)

    search()
    return found


def _join_types(d: int) -> dict:
    """Canonical key -> tag for the joins S^c_{c+2} * S^{d-c-1}_{d-c+1}."""
    out = {}
    for c in range(0, d):
        e = d - c - 1
        if c > e:
            break
        J = join(standard_sphere(c), standard_sphere(e))
        out[canonical_key(J)] = f"S^{c}_{c + 2} * S^{e}_{e + 2}"
    return out


def pseudomanifolds_d_plus_3(d: int, order_seed: int | None = None) -> EnumerationReport:
    """All d-pseudomanifolds on d + 3 vertices, each checked to be a join of two standard spheres."""
    if not 1 <= d <= 5:
        raise ValueError("pseudomanifolds_d_plus_3 needs 1 <= d <= 5")
    t0 = time.perf_counter()
    n = d + 3
    cands = list(combinations(range(n), d + 1))

    def accept(K):
        return K.n == n and bool(is_pseudomanifold(K))

    found = _close_ridges([tuple(range(d + 1))], cands, accept, order_seed)
    joins = _join_types(d)
    breakdown: dict = {}
    out = []
    for key in sorted(found):
        tag = joins.get(key)
        if tag is None:
            raise ComplexError(f"{d}-pseudomanifold on {n} vertices that is not a join of spheres")
        breakdown[tag] = breakdown.get(tag, 0) + 1
        out.append(_standardize(found[key]))
    return EnumerationReport(n, len(out), breakdown, time.perf_counter() - t0, out,
                             kind=f"pseudomanifolds d={d}")


def neighbourly_3spheres_8(order_seed: int | None = None) -> EnumerationReport:
    """2-neighbourly 8-vertex combinatorial 3-manifolds up to isomorphism.

    The link of vertex 0 runs over the 7-vertex 2-spheres; the rest is closed
    with 4-subsets of 1..7.
    """
    from .core import link
    from .recognition import _is_2sphere

    t0 = time.perf_counter()
    rep = connected_surfaces(7)
    spheres = [S for S in rep if classify_surface(S).tag == "S2"]
    cands = list(combinations(range(1, 8), 4))

    def accept(K):
        if K.n != 8 or len(K.facets) != 20:
            return False
        from .invariants import f_vector

        if f_vector(K)[1] != 28:
            return False
        return all(_is_2sphere(link(K, (v,))) for v in K.vertices)

    found: dict = {}
    for S in spheres:
        # relabel the link onto 1..7
        ids = {v: i + 1 for i, v in enumerate(S.vertices)}
        start = [tuple(sorted((0,) + tuple(ids[v] for v in f))) for f in S.facets]
        for key, K in _close_ridges(start, cands, accept, order_seed).items():
            found.setdefault(key, K)
    out = [_standardize(found[k]) for k in sorted(found)]
    return EnumerationReport(8, len(out), {"neighbourly 3-manifold": len(out)},
                             time.perf_counter() - t0, out, kind="neighbourly 3-spheres")


def is_connected_report(rep: EnumerationReport) -> bool:
    return all(is_connected(K) for K in rep.complexes)
