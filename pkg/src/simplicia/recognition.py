"""Deciding what a complex is.

Pseudomanifold, normality, orientability and surface type are decided
exactly.  Combinatorial manifolds are decided exactly up to dimension 3;
above that, vertex links are handed to the bistellar reducer, and an
undecided link makes the verdict ``Unknown`` rather than a guess.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Complex, ComplexError, Status, Verdict, faces, is_connected, link
from .homology import homology
from .invariants import euler_characteristic, f_vector


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    genus: int
    chi: int

    @property
    def tag(self) -> str:
        if self.orientable:
            return {0: "S2", 1: "T2"}.get(self.genus, f"M({self.genus},+)")
        return {1: "RP2", 2: "Klein"}.get(self.genus, f"M({self.genus},-)")

    def __str__(self):
        return self.tag


def _ridge_map(K: Complex) -> dict:
    ridges: dict = {}
    for f in K.facets:
        for i in range(len(f)):
            ridges.setdefault(f[:i] + f[i + 1:], []).append(f)
    return ridges


def _dual_components(K: Complex, ridges: dict) -> list:
    adj: dict = {f: [] for f in K.facets}
    for cof in ridges.values():
        for a in cof:
            for b in cof:
                if a is not b:
                    adj[a].append(b)
    seen: set = set()
    comps = []
    for f in sorted(K.facets):
        if f in seen:
            continue
        comp = {f}
        queue = deque([f])
        while queue:
            g = queue.popleft()
            for h in adj[g]:
                if h not in comp:
                    comp.add(h)
                    queue.append(h)
        seen |= comp
        comps.append(comp)
    return comps


def _require_pure(K: Complex):
    if not K.is_pure:
        raise ComplexError("complex is not pure")


def is_pseudomanifold(K: Complex) -> Verdict:
    _require_pure(K)
    d = K.dim
    if d == 0:
        if len(K.facets) == 2:
            return Verdict.yes({"type": "S^0_2"})
        return Verdict.no({"reason": "only S^0_2 is a 0-pseudomanifold", "points": K.n})
    ridges = _ridge_map(K)
    for r in sorted(ridges):
        if len(ridges[r]) != 2:
            return Verdict.no({"reason": "ridge", "ridge": K.tokens(r), "cofaces": len(ridges[r])})
    comps = _dual_components(K, ridges)
    if len(comps) > 1:
        return Verdict.no({"reason": "dual graph disconnected", "components": len(comps)})
    return Verdict.yes({"facets": len(K.facets)})


def is_normal_pseudomanifold(K: Complex) -> Verdict:
    pm = is_pseudomanifold(K)
    if not pm:
        raise ComplexError("not a pseudomanifold")
    for k in range(0, K.dim - 1):
        for s in sorted(faces(K, k)):
            if not is_connected(link(K, s)):
                return Verdict.no({"reason": "disconnected link", "face": K.tokens(s)})
    return Verdict.yes({"checked_up_to_dim": K.dim - 2})


def orientation(K: Complex):
    """Coherent facet signs, or (None, witness ridge) when none exist."""
    ridges = _ridge_map(K)
    sign: dict = {}
    for start in sorted(K.facets):
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for i in range(len(f)):
                r = f[:i] + f[i + 1:]
                induced_f = sign[f] * (-1) ** i
                for g in ridges[r]:
                    if g == f:
                        continue
                    j = next(t for t in range(len(g)) if g[:t] + g[t + 1:] == r)
                    want = -induced_f * (-1) ** j
                    if g in sign:
                        if sign[g] != want:
                            return None, r
                    else:
                        sign[g] = want
                        queue.append(g)
    return sign, None


def orientable(K: Complex) -> Verdict:
    if not is_pseudomanifold(K):
        raise ComplexError("orientability needs a pseudomanifold")
    sign, witness = orientation(K)
    if sign is None:
        return Verdict.no({"reason": "orientation conflict", "ridge": K.tokens(witness)})
    return Verdict.yes({"signs": {tuple(K.tokens(f)): s for f, s in sign.items()}})


def _is_cycle(L: Complex) -> bool:
    if L.dim != 1 or not L.is_pure:
        return False
    deg: dict = {}
    for f in L.facets:
        for v in f:
            deg[v] = deg.get(v, 0) + 1
    return all(x == 2 for x in deg.values()) and is_connected(L)


def _links_are_cycles(K: Complex):
    for v in K.vertices:
        if not _is_cycle(link(K, (v,))):
            return v
    return None


def classify_surface(K: Complex) -> SurfaceType:
    if K.dim != 2 or not K.is_pure:
        raise ComplexError("classify_surface needs a pure 2-complex")
    bad = _links_are_cycles(K)
    if bad is not None:
        raise ComplexError(f"link of vertex {K.token(bad)} is not a cycle")
    if not is_connected(K):
        raise ComplexError("surface is not connected")
    chi = euler_characteristic(K)
    sign, _ = orientation(K)
    if sign is not None:
        return SurfaceType(True, (2 - chi) // 2, chi)
    return SurfaceType(False, 2 - chi, chi)


def _is_2sphere(L: Complex) -> bool:
    return (L.dim == 2 and L.is_pure and is_connected(L)
            and _links_are_cycles(L) is None and euler_characteristic(L) == 2)


# complexes known to have sphere homology without being spheres; filled by catalog
_KNOWN_NON_SPHERES: list = []


def register_non_sphere(K: Complex, name: str) -> None:
    _KNOWN_NON_SPHERES.append((f_vector(K), K, name))


def _known_non_sphere(L: Complex):
    if not _KNOWN_NON_SPHERES:
        from . import catalog  # noqa: F401  (registers entries)
    from .isomorphism import are_isomorphic

    fl = f_vector(L)
    for f, K, name in _KNOWN_NON_SPHERES:
        if f == fl and are_isomorphic(K, L):
            return name
    return None


def is_combinatorial_sphere(L: Complex, effort: int | None = None, seed: int = 0) -> Verdict:
    """Exact for dim <= 2; necessary conditions plus flip reduction above."""
    if not L.facets or L.dim < 0:
        return Verdict.yes({"type": "S^-1"})
    if not L.is_pure:
        return Verdict.no({"reason": "not pure"})
    d = L.dim
    if d == 0:
        if L.n == 2:
            return Verdict.yes({"type": "S^0"})
        return Verdict.no({"reason": "0-sphere needs two points", "points": L.n})
    if d == 1:
        if _is_cycle(L):
            return Verdict.yes({"type": "cycle", "length": L.n})
        return Verdict.no({"reason": "not a cycle"})
    if d == 2:
        if _is_2sphere(L):
            return Verdict.yes({"type": "2-sphere", "chi": 2})
        return Verdict.no({"reason": "not a 2-sphere", "chi": euler_characteristic(L)})
    pm = is_pseudomanifold(L)
    if not pm:
        return Verdict.no({"reason": "not a pseudomanifold", "detail": pm.certificate})
    chi = euler_characteristic(L)
    if chi != 1 + (-1) ** d:
        return Verdict.no({"reason": "euler characteristic", "chi": chi})
    H = homology(L)
    if not H.is_sphere_like():
        return Verdict.no({"reason": "homology", "homology": H.lines()})
    name = _known_non_sphere(L)
    if name is not None:
        return Verdict.no({"reason": "isomorphic to a known non-sphere", "name": name})
    from .bistellar import DEFAULT_BUDGET, reduce_to_sphere

    v = reduce_to_sphere(L, budget=effort or DEFAULT_BUDGET, seed=seed)
    return v


def is_combinatorial_manifold(K: Complex, effort: int | None = None, seed: int = 0) -> Verdict:
    """Every vertex link a combinatorial sphere (worst status over vertices)."""
    if not K.is_pure:
        return Verdict.no({"reason": "not pure"})
    d = K.dim
    if d == 0:
        return Verdict.yes({"dim": 0})
    if d >= 4:
        # a sphere-homology non-sphere as the link of any face rules K out
        for k in range(0, d - 3):
            for s in sorted(faces(K, k)):
                L = link(K, s)
                if L.dim >= 3 and _known_non_sphere_quick(L):
                    name = _known_non_sphere(L)
                    if name is not None:
                        return Verdict.no({"reason": "face link is a known non-sphere",
                                           "face": K.tokens(s), "name": name})
    cache: dict = {}
    undecided = []
    from .isomorphism import canonical_key

    for v in K.vertices:
        L = link(K, (v,))
        key = canonical_key(L) if d >= 4 else None
        if key is not None and key in cache:
            verdict = cache[key]
        else:
            verdict = is_combinatorial_sphere(L, effort=effort, seed=seed)
            if key is not None:
                cache[key] = verdict
        if verdict.status is Status.NO:
            return Verdict.no({"reason": "vertex link is not a sphere", "vertex": K.token(v),
                               "detail": verdict.certificate})
        if verdict.status is Status.UNKNOWN:
            undecided.append(K.token(v))
    if undecided:
        return Verdict.unknown(f"links undecided at {undecided}")
    return Verdict.yes({"dim": d, "links_checked": K.n})


def _known_non_sphere_quick(L: Complex) -> bool:
    if not _KNOWN_NON_SPHERES:
        from . import catalog  # noqa: F401
    n = L.n
    return any(f[0] == n for f, _, _ in _KNOWN_NON_SPHERES)


def is_stacked_sphere(K: Complex) -> Verdict:
    """Greedily collapse vertices whose link is the boundary of a d-simplex."""
    if not K.is_pure or K.dim < 2:
        raise ComplexError("is_stacked_sphere needs a pure complex of dimension >= 2")
    d = K.dim
    cur = set(K.facets)
    removed = []
    while True:
        verts = set()
        for f in cur:
            verts.update(f)
        if len(verts) == d + 2 and len(cur) == d + 2:
            return Verdict.yes({"collapsed": [K.token(v) for v in removed]})
        if len(verts) <= d + 2:
            return Verdict.no({"reason": "stuck", "facets": len(cur)})
        found = None
        for v in sorted(verts):
            star = [f for f in cur if v in f]
            if len(star) != d + 1:
                continue
            lverts = set()
            for f in star:
                lverts.update(f)
            lverts.discard(v)
            if len(lverts) != d + 1:
                continue
            b = tuple(sorted(lverts))
            if b in cur:
                continue
            found = (v, star, b)
            break
        if found is None:
            return Verdict.no({"reason": "no vertex with minimal link", "vertices": len(verts),
                               "collapsed": [K.token(v) for v in removed]})
        v, st, b = found
        cur.difference_update(st)
        # a new facet b that is also a face of a remaining facet would be degenerate
        cur.add(b)
        removed.append(v)

