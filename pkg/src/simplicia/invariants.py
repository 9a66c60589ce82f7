"""Face numbers, h-vectors and the classical bounds as checkable predicates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import Complex, ComplexError, faces

COMPLEMENTARITY_LIMIT = 20


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class FVector:
    counts: tuple

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self.counts == other.counts
        return self.counts == tuple(other)

    def __hash__(self):
        return hash(self.counts)

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    @property
    def chi(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.counts))

    def with_empty(self) -> list:
        return [1, *self.counts]


@dataclass(frozen=True)
class HVector:
    entries: tuple

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, HVector):
            return self.entries == other.entries
        return self.entries == tuple(other)

    def __hash__(self):
        return hash(self.entries)


@dataclass
class BoundReport:
    """Slacks and equation residuals; ``failed`` names violated predicates."""

    name: str
    values: dict = field(default_factory=dict)
    failed: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def __getitem__(self, key):
        return self.values[key]


def f_vector(K: Complex) -> FVector:
    return FVector(tuple(len(faces(K, k)) for k in range(K.dim + 1)))


def euler_characteristic(K: Complex) -> int:
    return f_vector(K).chi


def h_from_f(f: FVector | tuple) -> HVector:
    counts = tuple(f)
    d = len(counts) - 1
    fe = [1, *counts]  # fe[i + 1] = f_i
    h = []
    for j in range(d + 2):
        s = 0
        for i in range(-1, j):
            s += (-1) ** (j - i - 1) * binom(d - i, j - i - 1) * fe[i + 1]
        h.append(s)
    return HVector(tuple(h))


def f_from_h(h: HVector | tuple) -> FVector:
    entries = tuple(h)
    d = len(entries) - 2
    out = []
    for i in range(1, d + 2):
        out.append(sum(binom(d + 1 - j, i - j) * entries[j] for j in range(i + 1)))
    return FVector(tuple(out))


def h_vector(K: Complex) -> HVector:
    if not K.is_pure:
        raise ComplexError("h-vector needs a pure complex")
    return h_from_f(f_vector(K))


def neighborliness(K: Complex) -> int:
    f = f_vector(K)
    n = f[0]
    k = 0
    while k < len(f) and f[k] == binom(n, k + 1):
        k += 1
    return k


def dehn_sommerville_residuals(K: Complex, chi: int | None = None) -> BoundReport:
    """Residuals of the Euler, binomial-sum and h-symmetry equations (0 = holds).

    ``chi`` defaults to the complex's own Euler characteristic; for odd d the
    Euler equation is checked against 0.
    """
    if not K.is_pure:
        raise ComplexError("Dehn-Sommerville needs a pure complex")
    f = f_vector(K)
    d = f.dim
    h = h_from_f(f)
    c = f.chi if chi is None else chi
    res: dict = {}
    res["euler"] = f.chi - (0 if d % 2 == 1 else c)
    if d % 2 == 0:
        for j in range(1, d // 2 + 1):
            res[f"sum_{j}"] = sum((-1) ** i * binom(i + 1, 2 * j - 1) * f[i] for i in range(2 * j - 1, d + 1))
        for j in range(d // 2 + 1):
            rhs = (-1) ** (d + 1 - j) * binom(d + 1, j) * (c - 2)
            res[f"h_{j}"] = h[j] - h[d + 1 - j] - rhs
    else:
        for j in range(1, (d - 1) // 2 + 1):
            res[f"sum_{j}"] = sum((-1) ** i * binom(i + 1, 2 * j) * f[i] for i in range(2 * j, d + 1))
        for j in range((d + 1) // 2):
            res[f"h_{j}"] = h[j] - h[d + 1 - j]
    failed = [k for k, v in res.items() if v != 0]
    return BoundReport("dehn_sommerville", res, failed)


def phi(k: int, n: int, d: int) -> int:
    """Lower-bound value phi_k(n, d+1) for an n-vertex d-dimensional manifold."""
    if d < 1 or n < d + 2 or not 1 <= k <= d:
        raise ValueError(f"phi needs d >= 1, n >= d+2, 1 <= k <= d (got k={k}, n={n}, d={d})")
    if k == d:
        return d * n - (d + 2) * (d - 1)
    return binom(d + 1, k) * n - binom(d + 2, k + 1) * k


def stacked_fvector(n: int, d: int) -> FVector:
    if d < 1 or n < d + 2:
        raise ValueError("stacked spheres need d >= 1 and n >= d+2")
    return FVector((n, *(phi(k, n, d) for k in range(1, d + 1))))


def lbt_check(K: Complex) -> BoundReport:
    f = f_vector(K)
    d, n = f.dim, f[0]
    slack = {k: f[k] - phi(k, n, d) for k in range(1, d + 1)}
    failed = [f"f_{k}" for k, s in slack.items() if s < 0]
    return BoundReport("lbt", {"slack": slack}, failed)


def ubt_check(K: Complex) -> BoundReport:
    """Compare against the cyclic sphere with the same n and d."""
    from .constructions import cyclic_sphere

    f = f_vector(K)
    d, n = f.dim, f[0]
    if n < d + 2:
        raise ValueError("upper bound needs n >= d+2")
    fc = f_vector(cyclic_sphere(d, n))
    slack = {i: fc[i] - f[i] for i in range(d + 1)}
    failed = [f"f_{i}" for i, s in slack.items() if s < 0]
    return BoundReport("ubt", {"slack": slack, "cyclic": fc.counts}, failed)


def complementarity_check(K: Complex) -> bool:
    verts = K.vertices
    n = len(verts)
    if n > COMPLEMENTARITY_LIMIT:
        raise ValueError("complementarity check limit")
    full = (1 << n) - 1
    pos = {v: i for i, v in enumerate(verts)}
    # a subset is a face iff it lies inside some facet mask
    masks = [sum(1 << pos[v] for v in f) for f in K.facets]
    is_face = bytearray(1 << n)
    for m in masks:
        sub = m
        while True:
            is_face[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & m
    for U in range(1, full):
        if is_face[U] == is_face[full ^ U]:
            return False
    return True


# minimal vertex numbers that exceed the closed-form bound by one
_SURFACE_EXCEPTIONS = {(0, False): 8, (-2, True): 10, (-1, False): 9}


def surface_vertex_bound(chi: int, orientable: bool | None = None) -> int:
    """Least n with (7 + sqrt(49 - 24 chi)) / 2 <= n.

    With ``orientable`` given, the Klein bottle, the double torus and the
    non-orientable surface with chi = -1 get their extra vertex.
    """
    if chi > 2:
        raise ValueError("closed surfaces have chi <= 2")
    disc = 49 - 24 * chi
    r = math.isqrt(disc)
    # ceil((7 + sqrt(disc)) / 2) in exact arithmetic
    n = (7 + r) // 2
    while 2 * n - 7 < 0 or (2 * n - 7) ** 2 < disc:
        n += 1
    if orientable is not None:
        n = _SURFACE_EXCEPTIONS.get((chi, orientable), n)
    return n


def _dim4(K: Complex):
    if K.dim != 4:
        raise ValueError(f"dimension mismatch: expected 4, got {K.dim}")


def kuhnel_4d_bound(K: Complex) -> bool:
    """10 (chi - 2) <= C(n - 4, 3) for a combinatorial 4-manifold."""
    _dim4(K)
    f = f_vector(K)
    return 10 * (f.chi - 2) <= binom(f[0] - 4, 3)


def kuhnel_4d_report(K: Complex) -> BoundReport:
    _dim4(K)
    f = f_vector(K)
    lhs, rhs = 10 * (f.chi - 2), binom(f[0] - 4, 3)
    return BoundReport(
        "kuhnel_4d",
        {"lhs": lhs, "rhs": rhs, "slack": rhs - lhs, "equality": lhs == rhs},
        [] if lhs <= rhs else ["kuhnel_4d"],
    )


def walkup_4d_bound(K: Complex) -> BoundReport:
    """f_1 >= 5n - 15/2 chi."""
    _dim4(K)
    f = f_vector(K)
    slack = f[1] - (5 * f[0] - Fraction(15, 2) * f.chi)
    return BoundReport("walkup_4d", {"slack": slack}, [] if slack >= 0 else ["walkup_4d"])


def walkup_3d_bound(K: Complex) -> BoundReport:
    """f_1 >= 4n + 8 for 3-manifolds other than S^3 and the S^2-bundles over S^1."""
    if K.dim != 3:
        raise ValueError(f"dimension mismatch: expected 3, got {K.dim}")
    f = f_vector(K)
    slack = f[1] - (4 * f[0] + 8)
    return BoundReport("walkup_3d", {"slack": slack, "f1": f[1], "bound": 4 * f[0] + 8},
                       [] if slack >= 0 else ["walkup_3d"])


def missing_faces(K: Complex, k: int) -> list:
    """k-subsets of the vertex set that are not faces."""
    fk = faces(K, k - 1)
    return [s for s in combinations(K.vertices, k) if s not in fk]


def report(K: Complex, name: str | None = None) -> dict:
    """Flat invariant summary used by the CLI."""
    f = f_vector(K)
    out = {
        "name": K.name if name is None else name,
        "dim": f.dim,
        "n": f[0],
        "f": list(f.counts),
        "h": list(h_from_f(f).entries) if K.is_pure else None,
        "chi": f.chi,
        "neighborly": neighborliness(K),
        "ds_ok": dehn_sommerville_residuals(K).ok if K.is_pure else None,
        "lbt_slack": None,
        "ubt_slack": None,
        "complementarity": complementarity_check(K) if K.n <= COMPLEMENTARITY_LIMIT else None,
    }
    if K.is_pure and f.dim >= 1 and f[0] >= f.dim + 2:
        out["lbt_slack"] = [lbt_check(K).values["slack"][k] for k in range(1, f.dim + 1)]
        out["ubt_slack"] = [ubt_check(K).values["slack"][i] for i in range(f.dim + 1)]
    return out
