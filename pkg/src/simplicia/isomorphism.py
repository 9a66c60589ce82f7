"""Canonical labelling of simplicial complexes.

Vertices are split into an ordered partition that is refined until every
vertex sees the same multiset of facet patterns as the others in its cell.
When refinement stalls, a vertex of the first smallest non-trivial cell is
individualised and the search branches.  Among the children only those whose
refinement trace is minimal are explored, so the leaves visited depend only on
the isomorphism type.  The canonical encoding is the smallest sorted facet
list over those leaves.
"""

from __future__ import annotations

from .core import Complex, Status, Verdict


def _setup(K: Complex):
    verts = K.vertices
    idx = {v: i for i, v in enumerate(verts)}
    facets = [tuple(idx[v] for v in f) for f in K.facets]
    inc: list[list[int]] = [[] for _ in verts]
    for j, f in enumerate(facets):
        for v in f:
            inc[v].append(j)
    return verts, facets, inc


def _refine(cells: list, facets, inc):
    """Refine an ordered partition to equitability.

    Returns the refined partition and a trace that depends only on the
    isomorphism class of (complex, partition).
    """
    n = sum(len(c) for c in cells)
    cell_of = [0] * n
    for ci, c in enumerate(cells):
        for v in c:
            cell_of[v] = ci
    trace = []
    changed = True
    while changed:
        changed = False
        new_cells = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sigs = {}
            for v in c:
                pats = []
                for j in inc[v]:
                    pats.append(tuple(sorted(cell_of[w] for w in facets[j] if w != v)))
                pats.sort()
                sigs[v] = tuple(pats)
            groups: dict = {}
            for v in c:
                groups.setdefault(sigs[v], []).append(v)
            if len(groups) == 1:
                new_cells.append(c)
                continue
            changed = True
            for key in sorted(groups):
                trace.append((len(new_cells), len(groups[key]), hash(key)))
                new_cells.append(groups[key])
        if changed:
            cells = new_cells
            for ci, c in enumerate(cells):
                for v in c:
                    cell_of[v] = ci
    trace.append(tuple(len(c) for c in cells))
    return cells, tuple(trace)


def _encode(cells, facets):
    pos = {}
    for i, c in enumerate(cells):
        pos[c[0]] = i
    enc = sorted(tuple(sorted(pos[v] for v in f)) for f in facets)
    return tuple(enc), pos


def _initial_cells(n, facets, inc):
    # start from facet-size profile so non-pure complexes split immediately
    keys = {}
    for v in range(n):
        keys.setdefault(tuple(sorted(len(facets[j]) for j in inc[v])), []).append(v)
    return [keys[k] for k in sorted(keys)]


def canonical_labeling(K: Complex) -> tuple[tuple, dict]:
    """Return (canonical encoding, map vertex id -> canonical position)."""
    cached = K._cache.get("canon")
    if cached is not None:
        return cached
    verts, facets, inc = _setup(K)
    n = len(verts)
    if n == 0:
        res = ((tuple(),) if K.facets else (), {})
        K._cache["canon"] = res
        return res
    best: list = [None, None]

    def search(cells):
        cells, _ = _refine(cells, facets, inc)
        if all(len(c) == 1 for c in cells):
            enc, pos = _encode(cells, facets)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, pos
            return
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        children = []
        for v in cells[target]:
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            refined, trace = _refine(child, facets, inc)
            children.append((trace, refined))
        low = min(t for t, _ in children)
        for trace, refined in children:
            if trace == low:
                search(refined)

    search(_initial_cells(n, facets, inc))
    enc, pos = best
    res = (enc, {verts[i]: p for i, p in pos.items()})
    K._cache["canon"] = res
    return res


def canonical_key(K: Complex) -> tuple:
    return canonical_labeling(K)[0]


def canonical_form(K: Complex) -> tuple[Complex, dict]:
    """Relabeling-invariant representative and the relabeling that produces it."""
    enc, pos = canonical_labeling(K)
    labels = {p: K.token(v) for v, p in pos.items()}
    C = Complex(frozenset(enc), labels, K.name)
    return C, dict(pos)


def are_isomorphic(K: Complex, L: Complex) -> Verdict:
    """Yes with a vertex bijection K -> L, or No with the first invariant that differs."""
    if K.n != L.n:
        return Verdict.no({"reason": "vertex count", "values": (K.n, L.n)})
    fk = sorted(len(f) for f in K.facets)
    fl = sorted(len(f) for f in L.facets)
    if fk != fl:
        return Verdict.no({"reason": "facet sizes", "values": (len(fk), len(fl))})
    from .core import neighbours

    dk = sorted(len(s) for s in neighbours(K).values())
    dl = sorted(len(s) for s in neighbours(L).values())
    if dk != dl:
        return Verdict.no({"reason": "degree sequence", "values": (dk, dl)})
    ek, pk = canonical_labeling(K)
    el, pl = canonical_labeling(L)
    if ek != el:
        return Verdict.no({"reason": "canonical form"})
    inv = {p: v for v, p in pl.items()}
    mapping = {v: inv[p] for v, p in pk.items()}
    return Verdict.yes(mapping)


def is_isomorphism(K: Complex, L: Complex, mapping: dict) -> bool:
    image = frozenset(tuple(sorted(mapping[v] for v in f)) for f in K.facets)
    return image == L.facets and len(set(mapping.values())) == len(mapping)


def automorphism_check(K: Complex, perm: dict) -> bool:
    return is_isomorphism(K, K, perm)


__all__ = [
    "Status",
    "are_isomorphic",
    "automorphism_check",
    "canonical_form",
    "canonical_key",
    "canonical_labeling",
    "is_isomorphism",
]
