"""Finite abstract simplicial complexes stored by their facets.

A :class:`Complex` is an immutable value.  Vertices are non-negative integers;
each vertex also carries a display token so that alphanumeric labels such as
``u1`` or ``a`` survive a read/modify/write cycle.  Complexes built with
:func:`from_facets` have dense ids ``0..n-1``; complexes derived from another
complex (links, stars, induced subcomplexes) keep the parent's ids.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

Simplex = tuple  # strictly increasing tuple of vertex ids

INF = float("inf")


class ComplexError(ValueError):
    """Raised for malformed complexes and invalid face arguments."""


class Status(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer.  ``YES`` and ``NO`` always carry a certificate."""

    status: Status
    certificate: Any = None
    detail: str = ""

    def __post_init__(self):
        if self.status is Status.UNKNOWN and self.certificate is not None:
            raise ValueError("Unknown verdicts carry no certificate")
        if self.status is not Status.UNKNOWN and self.certificate is None:
            raise ValueError(f"{self.status} verdict needs a certificate")

    def __bool__(self) -> bool:
        return self.status is Status.YES

    @classmethod
    def yes(cls, certificate, detail=""):
        return cls(Status.YES, certificate, detail)

    @classmethod
    def no(cls, certificate, detail=""):
        return cls(Status.NO, certificate, detail)

    @classmethod
    def unknown(cls, detail=""):
        return cls(Status.UNKNOWN, None, detail)


def _maximal(sets: Iterable[Simplex]) -> frozenset:
    """Drop every set that is contained in another one."""
    uniq = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    out = []
    for s in uniq:
        fs = frozenset(s)
        if any(fs <= k for k in kept if len(k) > len(fs)):
            continue
        kept.append(fs)
        out.append(s)
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class Complex:
    facets: frozenset
    labels: dict = field(default_factory=dict, compare=False, repr=False)
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    # The face cache is filled lazily; concurrent fills compute identical
    # values, so a lost race only costs time.

    def __post_init__(self):
        verts = set()
        for f in self.facets:
            verts.update(f)
        missing = verts.difference(self.labels)
        if missing:
            labels = dict(self.labels)
            for v in missing:
                labels[v] = str(v)
            object.__setattr__(self, "labels", labels)
        elif len(self.labels) != len(verts):
            object.__setattr__(self, "labels", {v: self.labels[v] for v in verts})

    @classmethod
    def _raw(cls, facets, labels=None, name="", reduce=True) -> "Complex":
        fs = _maximal(tuple(sorted(f)) for f in facets) if reduce else frozenset(facets)
        lab = {} if labels is None else labels
        return cls(fs, lab, name)

    def __eq__(self, other):
        return isinstance(other, Complex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        nm = f"{self.name!r}, " if self.name else ""
        return f"Complex({nm}n={self.n}, dim={self.dim}, facets={len(self.facets)})"

    @property
    def vertices(self) -> tuple:
        if "vertices" not in self._cache:
            vs = set()
            for f in self.facets:
                vs.update(f)
            self._cache["vertices"] = tuple(sorted(vs))
        return self._cache["vertices"]

    @property
    def n(self) -> int:
        return len(self.vertices)

    vertex_count = n

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def token(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def tokens(self, s: Iterable[int]) -> list[str]:
        return [self.token(v) for v in s]

    def vertex_of(self, token) -> int:
        """Vertex id for a display token (or an id passed through)."""
        if isinstance(token, int) and token in self.labels:
            return token
        t = str(token)
        for v, lab in self.labels.items():
            if lab == t:
                return v
        raise ComplexError(f"unknown vertex {token!r}")

    def simplex(self, tokens: Iterable) -> Simplex:
        return tuple(sorted(self.vertex_of(t) for t in tokens))

    def faces(self, k: int) -> frozenset:
        return faces(self, k)

    def contains(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        if not s:
            return True
        return any(s.issubset(f) for f in self.facets)

    def sorted_facets(self) -> list:
        return sorted(self.facets)

    def renamed(self, name: str) -> "Complex":
        return Complex(self.facets, self.labels, name)


# ---------------------------------------------------------------- construction


def from_facets(facet_lists: Sequence[Sequence], name: str = "") -> Complex:
    """Build a complex from facet lists of ids or tokens.

    Vertices are renumbered densely in order of first appearance.  Integer ids
    keep their decimal form as display token.
    """
    facet_lists = list(facet_lists)
    if not facet_lists:
        raise ComplexError("empty complex")
    index: dict = {}
    labels: dict[int, str] = {}
    out = []
    for raw in facet_lists:
        raw = list(raw)
        if not raw:
            raise ComplexError("empty facet")
        if len(set(raw)) != len(raw):
            raise ComplexError(f"degenerate facet {raw!r}")
        f = []
        for t in raw:
            if isinstance(t, bool) or not isinstance(t, (int, str)):
                raise ComplexError(f"bad vertex {t!r}")
            if isinstance(t, int) and t < 0:
                raise ComplexError(f"negative vertex id {t}")
            key = str(t)
            if key not in index:
                index[key] = len(index)
                labels[index[key]] = key
            f.append(index[key])
        out.append(tuple(sorted(f)))
    return Complex._raw(out, labels, name)


def relabel(K: Complex, mapping: dict, labels: dict | None = None, name: str | None = None) -> Complex:
    """Apply an injective vertex map to every facet."""
    facets = [tuple(sorted(mapping[v] for v in f)) for f in K.facets]
    if labels is None:
        labels = {mapping[v]: K.token(v) for v in K.vertices}
    return Complex(frozenset(facets), labels, K.name if name is None else name)


def normalize(K: Complex) -> Complex:
    """Renumber vertices densely in increasing id order, keeping tokens."""
    mapping = {v: i for i, v in enumerate(K.vertices)}
    return relabel(K, mapping)


def closure(s: Iterable[int], labels: dict | None = None) -> Complex:
    s = tuple(sorted(s))
    return Complex(frozenset([s]), dict(labels or {}))


def boundary(s: Iterable[int], labels: dict | None = None) -> Complex:
    """Boundary complex of a simplex; the boundary of a vertex is {()}."""
    s = tuple(sorted(s))
    fs = frozenset(itertools.combinations(s, len(s) - 1))
    return Complex(fs, {v: (labels or {}).get(v, str(v)) for v in s if labels})


# ---------------------------------------------------------------- face-level ops


def faces(K: Complex, k: int) -> frozenset:
    """All k-dimensional faces; k = -1 gives the empty simplex only."""
    if k < -1 or k > K.dim:
        return frozenset()
    key = ("faces", k)
    cached = K._cache.get(key)
    if cached is None:
        out = set()
        for f in K.facets:
            if len(f) > k:
                out.update(itertools.combinations(f, k + 1))
        cached = frozenset(out)
        K._cache[key] = cached
    return cached


def all_faces(K: Complex) -> list:
    """Every nonempty face, grouped by dimension."""
    return [faces(K, k) for k in range(K.dim + 1)]


def _require_face(K: Complex, s) -> Simplex:
    s = tuple(sorted(s))
    if len(set(s)) != len(s):
        raise ComplexError("not a simplex of K")
    if not K.contains(s):
        raise ComplexError(f"not a simplex of K: {K.tokens(s)}")
    return s


def link(K: Complex, s) -> Complex:
    """lk(s) = {F \\ s : F facet, s subset of F}; the link of a facet is {()}."""
    s = _require_face(K, s)
    ss = set(s)
    fs = [tuple(v for v in f if v not in ss) for f in K.facets if ss.issubset(f)]
    return Complex._raw(fs, K.labels)


def star(K: Complex, s) -> Complex:
    s = _require_face(K, s)
    ss = set(s)
    return Complex(frozenset(f for f in K.facets if ss.issubset(f)), K.labels)


def degree(K: Complex, v: int) -> int:
    """Number of neighbours of v in the edge graph."""
    return len(neighbours(K)[v])


def join(K: Complex, L: Complex) -> Complex:
    """Simplicial join; L's vertices are shifted past K's when they collide."""
    shift = 0
    if set(K.vertices) & set(L.vertices):
        shift = max(K.vertices) + 1 - min(L.vertices)
    labels = dict(K.labels)
    used = set(labels.values())
    for v in L.vertices:
        tok = L.token(v)
        if tok in used:
            tok = f"{tok}'"
            while tok in used:
                tok += "'"
        used.add(tok)
        labels[v + shift] = tok
    facets = [tuple(f) + tuple(v + shift for v in g) for f in K.facets for g in L.facets]
    return Complex._raw(facets, labels)


def induced(K: Complex, U: Iterable[int]) -> Complex:
    U = set(U)
    unknown = U.difference(K.vertices)
    if unknown:
        raise ComplexError(f"unknown vertices {sorted(unknown)}")
    fs = [tuple(v for v in f if v in U) for f in K.facets]
    fs = [f for f in fs if f]
    if not fs:
        return Complex(frozenset([()]), {})
    return Complex._raw(fs, K.labels)


def disjoint_union(K: Complex, L: Complex) -> Complex:
    shift = max(K.vertices) + 1 - min(L.vertices)
    labels = dict(K.labels)
    for v in L.vertices:
        labels[v + shift] = f"{L.token(v)}'" if L.token(v) in K.labels.values() else L.token(v)
    fs = list(K.facets) + [tuple(v + shift for v in g) for g in L.facets]
    return Complex._raw(fs, labels)


# ---------------------------------------------------------------- edge graph


def neighbours(K: Complex) -> dict:
    if "nbrs" not in K._cache:
        nb: dict[int, set] = {v: set() for v in K.vertices}
        for f in K.facets:
            for a in f:
                nb[a].update(f)
        for v in nb:
            nb[v].discard(v)
        K._cache["nbrs"] = {v: frozenset(s) for v, s in nb.items()}
    return K._cache["nbrs"]


def edge_graph(K: Complex) -> dict:
    """Adjacency map of the 1-skeleton."""
    return neighbours(K)


def bfs_distances(K: Complex, source: int) -> dict:
    nb = neighbours(K)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in nb[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def graph_distance(K: Complex, u: int, v: int):
    """Edge-graph distance; ``INF`` across components."""
    return bfs_distances(K, u).get(v, INF)


def components(K: Complex) -> list:
    seen: set = set()
    comps = []
    for v in K.vertices:
        if v in seen:
            continue
        comp = set(bfs_distances(K, v))
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(K: Complex) -> bool:
    return len(components(K)) <= 1


# ---------------------------------------------------------------- I/O


def _token_key(tok: str):
    return (0, int(tok), "") if tok.isdigit() else (1, 0, tok)


def emit(K: Complex, name: str | None = None) -> str:
    """Render as .cplx text; facets sorted lexicographically by token."""
    rows = []
    for f in K.facets:
        toks = sorted(K.tokens(f), key=_token_key)
        rows.append(toks)
    rows.sort(key=lambda r: [_token_key(t) for t in r])
    nm = K.name if name is None else name
    head = [f"# name: {nm}"] if nm else []
    return "\n".join(head + [" ".join(r) for r in rows]) + "\n"


def parse(text: str, name: str = "") -> Complex:
    """Parse .cplx text (one facet per line, '#' comments)."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("name:") and not name:
                name = body[5:].strip()
            continue
        rows.append(line.split())
    return from_facets(rows, name=name)


def read(path) -> Complex:
    from pathlib import Path

    p = Path(path)
    K = parse(p.read_text(encoding="utf-8"))
    return K if K.name else K.renamed(p.stem)


def write(K: Complex, path) -> None:
    from pathlib import Path

    Path(path).write_text(emit(K), encoding="utf-8")


def compact(words: str) -> list[list[str]]:
    """Split compact notation such as '1234 12ab' into token lists."""
    return [list(w) for w in words.replace(",", " ").split()]
