"""Parametric families of complexes and the standard operations that build them."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations

from .core import Complex, ComplexError, INF, bfs_distances, from_facets, relabel

GROUP_CAP = 10_000


def _fresh_vertex(K: Complex) -> tuple[int, str]:
    v = max(K.vertices) + 1 if K.vertices else 0
    used = set(K.labels.values())
    nums = [int(t) for t in used if t.isdigit()]
    tok = str(max(nums) + 1 if nums else v)
    while tok in used:
        tok = tok + "'"
    return v, tok


def standard_sphere(d: int) -> Complex:
    """Boundary of the (d+1)-simplex on vertices 1..d+2."""
    if d < 0:
        raise ValueError("d must be >= 0")
    verts = range(1, d + 3)
    return from_facets([list(c) for c in combinations(verts, d + 1)], name=f"S^{d}_{d + 2}")


def standard_ball(d: int) -> Complex:
    if d < 0:
        raise ValueError("d must be >= 0")
    return from_facets([list(range(1, d + 2))], name=f"B^{d}_{d + 1}")


def _gale_even(U: tuple, n: int) -> bool:
    inU = set(U)
    outside = [v for v in range(1, n + 1) if v not in inU]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for u in U if a < u < b) % 2:
            return False
    return True


def cyclic_sphere(d: int, n: int) -> Complex:
    """Boundary of the cyclic (d+1)-polytope on n points (Gale evenness)."""
    if d < 0 or n < d + 2:
        raise ValueError("cyclic sphere needs d >= 0 and n >= d+2")
    fs = [list(U) for U in combinations(range(1, n + 1), d + 1) if _gale_even(U, n)]
    return from_facets(fs, name=f"C^{d}_{n}")


def cyclic_sphere_circular(d: int, n: int) -> Complex:
    """Odd-d variant: (d+1)-sets whose induced subgraph of the n-cycle has only even components."""
    if d % 2 == 0:
        raise ValueError("circular criterion applies to odd d only")
    if n < d + 2:
        raise ValueError("n >= d+2 required")
    fs = []
    for U in combinations(range(1, n + 1), d + 1):
        inU = set(U)
        ok = True
        # walk each maximal run of consecutive members around the cycle
        starts = [u for u in U if (u - 2) % n + 1 not in inU]
        if not starts:
            ok = len(U) % 2 == 0
        for s in starts:
            run, v = 0, s
            while v in inU:
                run += 1
                v = v % n + 1
            if run % 2:
                ok = False
                break
        if ok:
            fs.append(list(U))
    return from_facets(fs, name=f"C^{d}_{n}")


def kuhnel_complex(d: int, n: int) -> Complex:
    """Delete one interior vertex from each (d+2)-path of the n-cycle."""
    if d < 2 or n < 2 * d + 3:
        raise ValueError("Kuhnel complex needs d >= 2 and n >= 2d+3")
    fs = set()
    for i in range(n):
        path = [(i + t) % n + 1 for t in range(d + 2)]
        for t in range(1, d + 1):
            fs.add(tuple(sorted(path[:t] + path[t + 1:])))
    return from_facets(sorted(fs), name=f"K^{d}_{n}")


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"invalid partition {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly increasing: {parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def is_even(self) -> bool:
        return sum(1 for p in self.parts if p % 2 == 0) % 2 == 0

    def permutation(self) -> dict:
        """Product of the cycles (s+1, ..., s+p) over consecutive blocks."""
        pi, s = {}, 0
        for p in self.parts:
            block = list(range(s + 1, s + p + 1))
            for a, b in zip(block, block[1:] + block[:1]):
                pi[a] = b
            s += p
        return pi

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))


def partitions(m: int):
    """All weakly increasing partitions of m."""
    def rec(rest, low):
        if rest == 0:
            yield ()
            return
        for p in range(low, rest + 1):
            for tail in rec(rest - p, p):
                yield (p, *tail)
    for parts in rec(m, 1):
        yield Partition(parts)


def identify(K: Complex, rep: dict, name: str = "") -> Complex:
    """Quotient by a vertex map v -> rep[v]; facets must stay non-degenerate."""
    fs = []
    for f in K.facets:
        img = tuple(sorted({rep.get(v, v) for v in f}))
        if len(img) != len(f):
            raise ComplexError(f"identification collapses facet {K.tokens(f)}")
        fs.append(img)
    labels = {v: K.token(v) for v in K.vertices if rep.get(v, v) == v}
    return Complex._raw(fs, labels, name)


def kuhnel_partition(d: int, p) -> Complex:
    """K^d_{2d+4}(p): the band on 3d+5 vertices with its ends glued by pi_p."""
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    if d < 2:
        raise ValueError("d >= 2 required")
    if p.total != d + 1:
        raise ValueError(f"{p.parts} is not a partition of {d + 1}")
    fs = set()
    for i in range(1, 2 * d + 5):
        window = list(range(i, i + d + 2))
        for t in range(1, d + 1):
            fs.add(tuple(window[:t] + window[t + 1:]))
    N = from_facets(sorted(fs))
    pi = p.permutation()
    rep = {}
    for i in range(1, d + 2):
        rep[N.vertex_of(str(2 * d + 4 + i))] = N.vertex_of(str(pi[i]))
    Q = identify(N, rep, name=f"K^{d}_{2 * d + 4}({','.join(map(str, p.parts))})")
    return Q


def one_point_suspension(K: Complex, u) -> Complex:
    """Facets u*a for facets a missing u, plus v*b for every facet b (v fresh)."""
    if not K.is_pure:
        raise ComplexError("one-point suspension needs a pure complex")
    u = K.vertex_of(u)
    v, tok = _fresh_vertex(K)
    fs = [tuple(sorted(f + (u,))) for f in K.facets if u not in f]
    fs += [f + (v,) for f in K.facets]
    labels = dict(K.labels)
    labels[v] = tok
    return Complex._raw(fs, labels, f"Sigma({K.name})" if K.name else "")


def stellar_subdivide(K: Complex, s) -> Complex:
    """Star a new vertex inside the face s."""
    s = tuple(sorted(s))
    if len(s) < 2:
        raise ComplexError("starring needs a face of dimension >= 1")
    if not K.contains(s):
        raise ComplexError(f"not a simplex of K: {K.tokens(s)}")
    a, tok = _fresh_vertex(K)
    ss = set(s)
    fs = []
    for f in K.facets:
        if ss.issubset(f):
            for x in s:
                fs.append(tuple(sorted(set(f) - {x})) + (a,))
        else:
            fs.append(f)
    labels = dict(K.labels)
    labels[a] = tok
    return Complex._raw(fs, labels, K.name)


def star_in_facet(K: Complex, facet) -> Complex:
    facet = tuple(sorted(facet))
    if facet not in K.facets:
        raise ComplexError("not a facet")
    return stellar_subdivide(K, facet)


def stacked_sphere(n: int, d: int, seed: int = 0) -> Complex:
    """Start at the boundary of a simplex and star n-d-2 random facets."""
    if d < 1 or n < d + 2:
        raise ValueError("stacked sphere needs d >= 1 and n >= d+2")
    rng = random.Random(seed)
    K = standard_sphere(d)
    for _ in range(n - d - 2):
        K = star_in_facet(K, rng.choice(sorted(K.facets)))
    return K.renamed(f"stacked({n},{d},{seed})")


def barycentric_subdivision(K: Complex) -> Complex:
    """Vertices are the faces of K; facets are the maximal chains."""
    fs = set()
    for f in K.facets:
        for order in permutations(f):
            chain = tuple(tuple(sorted(order[: i + 1])) for i in range(len(order)))
            fs.add(chain)
    index: dict = {}
    for chain in sorted(fs):
        for face in chain:
            index.setdefault(face, None)
    faces_sorted = sorted(index, key=lambda t: (len(t), t))
    vid = {face: i for i, face in enumerate(faces_sorted)}
    labels = {}
    for face, i in vid.items():
        toks = K.tokens(face)
        labels[i] = "{" + ",".join(toks) + "}"
    facets = [tuple(sorted(vid[x] for x in chain)) for chain in fs]
    out = Complex._raw(facets, labels, f"sd({K.name})" if K.name else "")
    out._cache["faces_of"] = {i: face for face, i in vid.items()}
    return out


@dataclass(frozen=True)
class GroupAction:
    """Permutation generators acting on a complex's vertex ids."""

    generators: tuple

    def __init__(self, generators):
        object.__setattr__(self, "generators", tuple(dict(g) for g in generators))

    def expand(self, domain, cap: int = GROUP_CAP) -> list:
        """All group elements as tuples over ``domain`` order (identity first)."""
        domain = list(domain)
        pos = {v: i for i, v in enumerate(domain)}
        gens = [tuple(pos[g.get(v, v)] for v in domain) for g in self.generators]
        ident = tuple(range(len(domain)))
        seen = {ident}
        order = [ident]
        queue = deque([ident])
        while queue:
            h = queue.popleft()
            for g in gens:
                gh = tuple(g[x] for x in h)
                if gh not in seen:
                    seen.add(gh)
                    order.append(gh)
                    queue.append(gh)
                    if len(seen) > cap:
                        raise ValueError(f"group order exceeds cap {cap}")
        return [{domain[i]: domain[t[i]] for i in range(len(domain))} for t in order]


def check_automorphisms(K: Complex, G: GroupAction) -> None:
    for g in G.generators:
        image = frozenset(tuple(sorted(g.get(v, v) for v in f)) for f in K.facets)
        if image != K.facets:
            raise ComplexError(f"generator is not an automorphism: {g}")


def properness_witness(K: Complex, elements: list):
    """First (u, g) with d(u, g u) < 3 for a non-identity g, or None."""
    dist = {}
    for g in elements:
        if all(g[v] == v for v in K.vertices):
            continue
        for u in K.vertices:
            if u not in dist:
                dist[u] = bfs_distances(K, u)
            if dist[u].get(g[u], INF) < 3:
                return u, g
    return None


def quotient(K: Complex, G: GroupAction, cap: int = GROUP_CAP, check_proper: bool = True) -> Complex:
    """Orbit complex K/G; the action must be by automorphisms and proper."""
    check_automorphisms(K, G)
    elements = G.expand(K.vertices, cap)
    if check_proper:
        w = properness_witness(K, elements)
        if w is not None:
            u, g = w
            raise ComplexError(
                f"action is not proper: d({K.token(u)}, {K.token(g[u])}) < 3")
    rep = {}
    for v in K.vertices:
        rep[v] = min(g[v] for g in elements)
    fs = {tuple(sorted({rep[v] for v in f})) for f in K.facets}
    labels = {v: K.token(v) for v in K.vertices if rep[v] == v}
    nm = f"{K.name}/G" if K.name else ""
    return Complex._raw(fs, labels, nm)


def real_projective_space(d: int) -> Complex:
    """Barycentric subdivision of the boundary of a simplex modulo U -> V \\ U."""
    if not 1 <= d <= 6:
        raise ValueError("real_projective_space supports 1 <= d <= 6")
    S = standard_sphere(d)
    B = barycentric_subdivision(S)
    face_of = B._cache["faces_of"]
    full = frozenset(S.vertices)
    by_face = {frozenset(f): i for i, f in face_of.items()}
    eta = {i: by_face[full - frozenset(f)] for i, f in face_of.items()}
    P = quotient(B, GroupAction([eta]))
    return P.renamed(f"RP^{d}_{2 ** (d + 1) - 1}")


def torus(d: int) -> Complex:
    """(2^{d+1}-1)-vertex d-torus: lattice translates of the permutation simplices."""
    if not 1 <= d <= 4:
        raise ValueError("torus supports 1 <= d <= 4")
    m = 2 ** (d + 1) - 1
    weight = [2 ** i for i in range(d)]
    fs = set()
    for g in permutations(range(d)):
        steps = [0]
        for i in g:
            steps.append(steps[-1] + weight[i])
        for x in range(m):
            fs.add(tuple(sorted((x + s) % m for s in steps)))
    return from_facets(sorted(fs), name=f"T^{d}_{m}")


def suspension(K: Complex) -> Complex:
    """Join with two points."""
    from .core import join

    return join(K, standard_sphere(0))
