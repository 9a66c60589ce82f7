"""Integral simplicial homology via Smith normal form of boundary matrices."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Complex, faces


@dataclass(frozen=True)
class HomologyProfile:
    """``betti[i]`` and the invariant factors ``torsion[i]`` of H_i (unreduced)."""

    betti: tuple
    torsion: tuple

    def group(self, i: int) -> str:
        if i >= len(self.betti):
            return "0"
        parts = []
        b = self.betti[i]
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts.extend(f"Z_{t}" for t in self.torsion[i])
        return " + ".join(parts) if parts else "0"

    def lines(self) -> list[str]:
        return [f"H_{i} = {self.group(i)}" for i in range(len(self.betti))]

    def __str__(self):
        return ", ".join(self.lines())

    @property
    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def is_sphere_like(self) -> bool:
        """Same integral homology as S^d, d = len(betti) - 1."""
        d = len(self.betti) - 1
        if any(self.torsion):
            return False
        if d == 0:
            return self.betti == (2,)
        return self.betti == (1,) + (0,) * (d - 1) + (1,)

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion],
                "groups": self.lines()}


def boundary_matrix(K: Complex, k: int):
    """Sparse rows of the k-th boundary map: {column k-face index: {row index: sign}}."""
    rows = {s: i for i, s in enumerate(sorted(faces(K, k - 1)))}
    cols = sorted(faces(K, k))
    out = []
    for s in cols:
        entry = {}
        for i in range(len(s)):
            entry[rows[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        out.append(entry)
    return out, len(rows), len(cols)


def _dense_snf_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a small dense matrix."""
    A = [row[:] for row in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []

    def swap_in(t, i, j):
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        swap_in(t, best[1], best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    ri, rt = A[i], A[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A[t:]:
                        row[j] -= q * row[t]
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_in(t, i, j)
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            for j in range(t, n):
                A[t][j] += A[bad][j]
        diag.append(abs(A[t][t]))
    return diag


def smith_diagonal(columns: list[dict], nrows: int) -> list[int]:
    """Invariant factors (including 1s) of a sparse integer matrix given by columns."""
    rows: dict[int, dict[int, int]] = {}
    colmap: dict[int, set] = {}
    for j, col in enumerate(columns):
        for i, a in col.items():
            if a:
                rows.setdefault(i, {})[j] = a
                colmap.setdefault(j, set()).add(i)
    diag: list[int] = []

    def eliminate(pi, pj):
        prow = rows.pop(pi)
        a = prow[pj]
        for i in list(colmap[pj]):
            if i == pi:
                continue
            row = rows[i]
            q = row[pj] * a  # a is a unit, so row[pj] / a == row[pj] * a
            for j, b in prow.items():
                v = row.get(j, 0) - q * b
                if v:
                    if j not in row:
                        colmap.setdefault(j, set()).add(i)
                    row[j] = v
                else:
                    if j in row:
                        del row[j]
                        colmap[j].discard(i)
            if not row:
                del rows[i]
        for j in prow:
            colmap[j].discard(pi)
        del colmap[pj]
        # remaining entries of the pivot row are cleared by column ops that
        # touch no other row, so they are simply dropped
        for j in prow:
            if j != pj and not colmap.get(j, True):
                del colmap[j]

    while True:
        best = None
        for i, row in rows.items():
            lr = len(row)
            for j, a in row.items():
                if a == 1 or a == -1:
                    cost = (lr - 1) * (len(colmap[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        eliminate(best[1], best[2])
        diag.append(1)
    if rows:
        ri = sorted(rows)
        cj = sorted({j for r in rows.values() for j in r})
        cidx = {j: k for k, j in enumerate(cj)}
        dense = [[0] * len(cj) for _ in ri]
        for a, i in enumerate(ri):
            for j, v in rows[i].items():
                dense[a][cidx[j]] = v
        diag.extend(_dense_snf_diagonal(dense))
    return diag


def homology(K: Complex) -> HomologyProfile:
    """Unreduced integral homology H_0 .. H_dim."""
    cached = K._cache.get("homology")
    if cached is not None:
        return cached
    d = K.dim
    if d < 0:
        return HomologyProfile((), ())
    ranks = [0] * (d + 2)  # ranks[k] = rank of boundary C_k -> C_{k-1}
    tors: list[tuple] = [()] * (d + 2)
    for k in range(1, d + 1):
        cols, nrows, _ = boundary_matrix(K, k)
        diag = smith_diagonal(cols, nrows)
        ranks[k] = len(diag)
        tors[k] = tuple(sorted(x for x in diag if x > 1))
    betti, torsion = [], []
    for k in range(d + 1):
        nk = len(faces(K, k))
        betti.append(nk - ranks[k] - ranks[k + 1])
        torsion.append(tors[k + 1])
    res = HomologyProfile(tuple(betti), tuple(torsion))
    K._cache["homology"] = res
    return res
