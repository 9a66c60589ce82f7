"""Small vertex-minimal triangulations shipped as data, with their known invariants.

Every entry is stored as a ``.cplx`` file under ``data/catalog``.  Entries that
come from a rule (cyclic patterns, orbits of a permutation group, a bistellar
move, an affine plane) also carry that rule here, and ``verify`` checks that
the rule reproduces the stored file exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations

from .constructions import GROUP_CAP, GroupAction
from .core import Complex, ComplexError, from_facets, link, parse
from .homology import homology
from .invariants import (
    COMPLEMENTARITY_LIMIT,
    complementarity_check,
    dehn_sommerville_residuals,
    f_vector,
    lbt_check,
)

DATA_PACKAGE = "simplicia.data.catalog"


@dataclass(frozen=True)
class Expected:
    n: int
    chi: int
    betti: tuple
    torsion: tuple
    orientable: bool
    f: tuple | None = None
    manifold: bool = True
    sphere: bool = False
    complementary: bool = False
    facets: int | None = None
    notes: str = ""


@dataclass
class CatalogEntry:
    name: str
    title: str
    complex: Complex
    expected: Expected
    generator: object = None  # zero-argument callable, or None for verbatim data


@dataclass
class CatalogReport:
    name: str
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def failed(self) -> list:
        return [k for k, ok in self.checks.items() if ok is False]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "failed": self.failed, "details": self.details,
                "elapsed": round(self.elapsed, 3)}


def _cyc(i: int, m: int) -> int:
    # residues written 1..m
    return (i - 1) % m + 1


def _icosahedron() -> Complex:
    fs = []
    for i in range(1, 6):
        j, k = _cyc(i + 1, 5), _cyc(i + 3, 5)
        fs += [["u", f"u{i}", f"u{j}"], [f"u{i}", f"u{j}", f"v{k}"],
               [f"v{i}", f"v{j}", f"u{k}"], ["v", f"v{i}", f"v{j}"]]
    return from_facets(fs, name="icosahedron")


def _rp2_6() -> Complex:
    fs = []
    for i in range(1, 6):
        fs += [["u", f"u{i}", f"u{_cyc(i + 1, 5)}"],
               [f"u{i}", f"u{_cyc(i + 1, 5)}", f"u{_cyc(i + 3, 5)}"]]
    return from_facets(fs, name="RP^2_6")


def _torus_7() -> Complex:
    fs = []
    for i in range(1, 8):
        fs += [[str(i), str(_cyc(i + 1, 7)), str(_cyc(i + 3, 7))],
               [str(i), str(_cyc(i + 2, 7)), str(_cyc(i + 3, 7))]]
    return from_facets(fs, name="T^2_7")


_M_TRIPLES = [(1, 2, 5), (1, 3, 5), (1, 3, 4), (1, 8, 9), (1, 6, 8), (1, 2, 6), (2, 3, 6)]


def _m_9() -> Complex:
    fs = [[str(1 + p), str(4 + p), str(7 + p)] for p in range(3)]
    for p in range(3):
        for t in _M_TRIPLES:
            fs.append([str(_cyc(x + 3 * p, 9)) for x in t])
    return from_facets(fs, name="M^2_9")


def _n_10() -> Complex:
    fs = []
    for i in range(1, 10):
        u = lambda s: f"u{_cyc(i + s, 9)}"  # noqa: E731
        fs += [["u", u(0), u(1)], [u(0), u(1), u(4)], [u(0), u(2), u(4)], [u(0), u(3), u(6)]]
    return from_facets(fs, name="N^2_10")


def _t3_15() -> Complex:
    fs = []
    for p, q, r in permutations((1, 2, 4)):
        for i in range(1, 16):
            fs.append([str(_cyc(i + s, 15)) for s in (0, p, p + q, p + q + r)])
    return from_facets(fs, name="T^3_15")


def _s3_8_39() -> Complex:
    from .bistellar import Move, apply_move

    S = load_data("s3_8_38")
    a, b = S.simplex("46"), S.simplex("357")
    return apply_move(S, Move(a, b, 2)).renamed("S^3_8,39")


def _cp2_9() -> Complex:
    """Vertices are the points xy of the affine plane over Z_3; Pi is the class x = const."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    tok = {p: f"{p[0]}{p[1]}" for p in pts}
    gamma = [[p for p in pts if p[0] == i] for i in range(3)]
    fs = []
    for i in range(3):
        for x in gamma[i]:
            fs.append([tok[p] for p in gamma[(i + 1) % 3] + gamma[i] if p != x])
    # the other three parallel classes: y = m x + c
    lines = {m: [[p for p in pts if p[1] == (m * p[0] + c) % 3] for c in range(3)] for m in range(3)}
    for m1, m2 in combinations(range(3), 2):
        for a in lines[m1]:
            for b in lines[m2]:
                fs.append([tok[p] for p in set(a) | set(b)])
    return from_facets(fs, name="CP^2_9")


def orbit_expand(G: GroupAction, representatives, labels: dict | None = None,
                 cap: int = GROUP_CAP, name: str = "") -> Complex:
    """Union of the G-orbits of the representative facets (vertex ids as in G)."""
    domain = sorted({v for g in G.generators for v in g} | {v for r in representatives for v in r})
    elements = G.expand(domain, cap)
    fs = set()
    for r in representatives:
        for g in elements:
            fs.add(tuple(sorted(g[v] for v in r)))
    K = Complex._raw(fs, labels or {v: str(v) for v in domain}, name)
    return K


def _orbit_sizes(G: GroupAction, representatives, cap: int = GROUP_CAP) -> list:
    domain = sorted({v for g in G.generators for v in g} | {v for r in representatives for v in r})
    elements = G.expand(domain, cap)
    return [len({tuple(sorted(g[v] for v in r)) for g in elements}) for r in representatives]


def _cycles(*cycles) -> dict:
    g = {}
    for c in cycles:
        for i, v in enumerate(c):
            g[v] = c[(i + 1) % len(c)]
    return g


RP4_GROUP = GroupAction([
    _cycles((2, 7), (4, 10), (5, 6), (11, 12)),
    _cycles((1, 2, 3, 4, 5, 10), (6, 8, 9), (11, 12, 13, 14, 15, 16)),
])
RP4_REPS = [(1, 2, 4, 5, 11), (1, 2, 4, 11, 13)]


def _rp4_16() -> Complex:
    return orbit_expand(RP4_GROUP, RP4_REPS, name="RP^4_16")


# GF(4) = {0, 1, x, y} encoded 0, 1, 2, 3; addition is xor, y = x + 1 = x^2
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def _k3_vertex(a: int, b: int) -> int:
    # v_i has first coordinate i mod 4 and second i div 4 (in the order 0, 1, x, y)
    return a + 4 * b


def _k3_group() -> GroupAction:
    gens = []
    for ta, tb in [(1, 0), (2, 0), (0, 1), (0, 2)]:
        gens.append({_k3_vertex(a, b): _k3_vertex(a ^ ta, b ^ tb) for a in range(4) for b in range(4)})
    y = 3
    A = ((0, y), (y, 1))
    mat = {}
    for a in range(4):
        for b in range(4):
            na = _GF4_MUL[A[0][0]][a] ^ _GF4_MUL[A[0][1]][b]
            nb = _GF4_MUL[A[1][0]][a] ^ _GF4_MUL[A[1][1]][b]
            mat[_k3_vertex(a, b)] = _k3_vertex(na, nb)
    gens.append(mat)
    return GroupAction(gens)


K3_GROUP = _k3_group()
K3_REPS = [(1, 2, 3, 4, 8), (1, 4, 6, 9, 10)]


def _k3_16() -> Complex:
    return orbit_expand(K3_GROUP, K3_REPS, name="K3_16")


_SPHERE = lambda d: ((1,) + (0,) * (d - 1) + (1,), ((),) * (d + 1))  # noqa: E731


def _surface(n, chi, orientable, torsion1=(), **kw):
    b1 = 2 - chi if orientable else 1 - chi
    betti = (1, b1, 1 if orientable else 0)
    f = (n, 3 * (n - chi), 2 * (n - chi))
    return Expected(n=n, chi=chi, betti=betti, torsion=((), tuple(torsion1), ()),
                    orientable=orientable, f=f, **kw)


_S3_8 = dict(n=8, chi=0, betti=_SPHERE(3)[0], torsion=_SPHERE(3)[1], orientable=True,
             f=(8, 28, 40, 20), sphere=True)

# name -> (title, expected, generator)
_ENTRIES = {
    "icosahedron": ("boundary of the icosahedron", _surface(12, 2, True, sphere=True), _icosahedron),
    "rp2_6": ("6-vertex real projective plane (hemi-icosahedron)",
              _surface(6, 1, False, (2,), complementary=True), _rp2_6),
    "torus_7": ("7-vertex torus", _surface(7, 0, True), _torus_7),
    "klein_8": ("8-vertex Klein bottle", _surface(8, 0, False, (2,)), None),
    "m_9": ("9-vertex non-orientable surface, chi = -3", _surface(9, -3, False, (2,)), _m_9),
    "n_10": ("10-vertex non-orientable surface, chi = -5", _surface(10, -5, False, (2,)), _n_10),
    "s3_8_35": ("neighbourly 8-vertex 3-sphere no. 35 (polytopal)", Expected(**_S3_8), None),
    "s3_8_36": ("neighbourly 8-vertex 3-sphere no. 36 (polytopal)", Expected(**_S3_8), None),
    "s3_8_37": ("neighbourly 8-vertex 3-sphere no. 37 (polytopal)", Expected(**_S3_8), None),
    "s3_8_38": ("Brueckner-Gruenbaum sphere (non-polytopal)", Expected(**_S3_8), None),
    "s3_8_39": ("8-vertex 3-sphere from the 2-move kappa(46, 357) on s3_8_38",
                Expected(n=8, chi=0, betti=_SPHERE(3)[0], torsion=_SPHERE(3)[1], orientable=True,
                         f=(8, 27, 38, 19), sphere=True,
                         notes="source sphere read as s3_8_38"), _s3_8_39),
    "rp3_11": ("11-vertex real projective 3-space",
               Expected(n=11, chi=0, betti=(1, 0, 0, 1), torsion=((), (2,), (), ()),
                        orientable=True, facets=40), None),
    "l3_12": ("12-vertex lens space L(3,1)",
              Expected(n=12, chi=0, betti=(1, 0, 0, 1), torsion=((), (3,), (), ()),
                       orientable=True), None),
    "t3_15": ("15-vertex 3-torus",
              Expected(n=15, chi=0, betti=(1, 3, 3, 1), torsion=((),) * 4, orientable=True,
                       f=(15, 105, 180, 90)), _t3_15),
    "h3_16": ("16-vertex Poincare homology 3-sphere",
              Expected(n=16, chi=0, betti=_SPHERE(3)[0], torsion=_SPHERE(3)[1], orientable=True,
                       f=(16, 106, 180, 90)), None),
    "cp2_9": ("9-vertex complex projective plane",
              Expected(n=9, chi=3, betti=(1, 0, 1, 0, 1), torsion=((),) * 5, orientable=True,
                       f=(9, 36, 84, 90, 36), complementary=True), _cp2_9),
    "s2x2_11": ("11-vertex S^2 x S^2",
                Expected(n=11, chi=4, betti=(1, 0, 2, 0, 1), torsion=((),) * 5,
                         orientable=True), None),
    "rp4_16": ("16-vertex real projective 4-space",
               Expected(n=16, chi=1, betti=(1, 0, 0, 0, 0), torsion=((), (2,), (), (2,), ()),
                        orientable=False, f=(16, 120, 330, 375, 150)), _rp4_16),
    "k3_16": ("16-vertex K3 surface",
              Expected(n=16, chi=24, betti=(1, 0, 22, 0, 1), torsion=((),) * 5, orientable=True,
                       facets=288, notes="orbits of length 240 and 48"), _k3_16),
    "s3x2_12": ("12-vertex S^3 x S^2",
                Expected(n=12, chi=0, betti=(1, 0, 1, 1, 0, 1), torsion=((),) * 6,
                         orientable=True), None),
}


def names() -> list:
    return list(_ENTRIES)


list_names = names


def load_data(name: str) -> Complex:
    if name not in _ENTRIES:
        raise KeyError(f"unknown catalog entry: {name}")
    return _load_text(name)


@lru_cache(maxsize=None)
def _load_text(name: str) -> Complex:
    text = resources.files(DATA_PACKAGE).joinpath(f"{name}.cplx").read_text(encoding="utf-8")
    return parse(text, name=name)


def data_path(name: str):
    return resources.files(DATA_PACKAGE).joinpath(f"{name}.cplx")


def get(name: str) -> CatalogEntry:
    if name not in _ENTRIES:
        raise KeyError(f"unknown catalog entry: {name}")
    title, expected, gen = _ENTRIES[name]
    return CatalogEntry(name, title, load_data(name), expected, gen)


def _same_facets(A: Complex, B: Complex) -> bool:
    def key(K):
        return frozenset(frozenset(K.tokens(f)) for f in K.facets)

    return key(A) == key(B)


def verify(name: str, manifold: bool = True, effort: int | None = None, seed: int = 0) -> CatalogReport:
    """Check a stored entry against its expected invariants.

    ``manifold=True`` also decides that every vertex link is a sphere, which
    for the 4- and 5-dimensional entries runs the flip reducer on the links.
    """
    from .recognition import is_combinatorial_manifold, is_pseudomanifold, orientable

    t0 = time.perf_counter()
    e = get(name)
    K, x = e.complex, e.expected
    rep = CatalogReport(name)
    c = rep.checks
    f = f_vector(K)
    rep.details["f"] = list(f.counts)
    c["n"] = K.n == x.n
    c["chi"] = f.chi == x.chi
    if x.f is not None:
        c["f_vector"] = tuple(f.counts) == x.f
    if x.facets is not None:
        c["facets"] = len(K.facets) == x.facets
    H = homology(K)
    rep.details["homology"] = H.lines()
    c["homology"] = H.betti == x.betti and H.torsion == x.torsion
    c["pseudomanifold"] = bool(is_pseudomanifold(K))
    c["orientable"] = bool(orientable(K)) == x.orientable
    c["dehn_sommerville"] = dehn_sommerville_residuals(K).ok
    c["lower_bound"] = lbt_check(K).ok
    if K.n <= COMPLEMENTARITY_LIMIT:
        c["complementarity"] = complementarity_check(K) == x.complementary
    if e.generator is not None:
        c["generator"] = _same_facets(e.generator(), K)
    if manifold:
        v = is_combinatorial_manifold(K, effort=effort, seed=seed)
        rep.details["manifold"] = str(v.status)
        c["manifold"] = None if v.status.name == "UNKNOWN" else (bool(v) == x.manifold)
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_all(manifold: bool = True, seed: int = 0) -> list:
    return [verify(n, manifold=manifold, seed=seed) for n in names()]


def vertex_link(name: str, token) -> Complex:
    K = get(name).complex
    return link(K, (K.vertex_of(str(token)),))


def _register():
    from .recognition import register_non_sphere

    register_non_sphere(load_data("h3_16"), "h3_16")


_register()

__all__ = ["CatalogEntry", "CatalogReport", "Expected", "get", "names", "list_names", "load_data",
           "verify", "verify_all", "orbit_expand", "RP4_GROUP", "RP4_REPS", "K3_GROUP", "K3_REPS",
           "ComplexError"]
