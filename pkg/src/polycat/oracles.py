"""Independent reference computations used to cross-check the main routines.

``mesh_hom_dims`` works directly on a finite translation quiver: morphisms
out of x are built degree by degree as paths modulo mesh relations, with
exact rational linear algebra.  It never looks at a covering, so it is an
independent route to the numbers produced by knitting on ZT.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .quiver import TranslationQuiver


def _column_reduce(cols: list[list[Fraction]], dim: int):
    """Reduced basis of the span of ``cols``: list of (pivot row, vector)."""
    basis: list[tuple[int, list[Fraction]]] = []
    for c in cols:
        v = list(c)
        for p, b in basis:
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i in range(dim) if v[i]), None)
        if piv is None:
            continue
        f = v[piv]
        v = [x / f for x in v]
        new = []
        for p, b in basis:
            if b[piv]:
                g = b[piv]
                b = [x - g * y for x, y in zip(b, v)]
            new.append((p, b))
        basis = new + [(piv, v)]
    return basis


def mesh_hom_dims(q: TranslationQuiver, x: int, max_degree: int | None = None) -> list[int]:
    """dim Hom(x, z) in the mesh category of q, for every vertex z."""
    n = len(q)
    max_degree = max_degree if max_degree is not None else 6 * n + 10
    # dims[L][z] and arrow maps amap[L][(w, z)]: V_{L-1}(w) -> V_L(z) as row lists
    dims = [[1 if z == x else 0 for z in range(n)]]
    amaps: list[dict] = [{}]
    total = list(dims[0])
    quiet = 0
    for L in range(1, max_degree + 1):
        cur_dims, cur_maps = [0] * n, {}
        for z in range(n):
            preds = q.pred[z]
            offs, size = {}, 0
            for w in preds:
                offs[w] = size
                size += dims[L - 1][w]
            if size == 0:
                continue
            rel_cols = []
            if L >= 2:
                tz = q.tau[z]
                for j in range(dims[L - 2][tz]):
                    col = [Fraction(0)] * size
                    for w in preds:
                        mat = amaps[L - 1].get((tz, w)) if L - 1 >= 1 else None
                        if mat is None:
                            continue
                        for i in range(dims[L - 1][w]):
                            col[offs[w] + i] += mat[i][j]
                    rel_cols.append(col)
            basis = _column_reduce(rel_cols, size)
            pivots = {p for p, _ in basis}
            keep = [i for i in range(size) if i not in pivots]
            # projection D -> D / im R in the coordinates ``keep``
            proj = []
            for e in range(size):
                v = [Fraction(int(i == e)) for i in range(size)]
                for p, b in basis:
                    if v[p]:
                        f = v[p]
                        v = [a - f * c for a, c in zip(v, b)]
                proj.append([v[i] for i in keep])
            cur_dims[z] = len(keep)
            if not keep:
                continue
            for w in preds:
                rows = []
                for k in range(len(keep)):
                    rows.append([proj[offs[w] + i][k] for i in range(dims[L - 1][w])])
                cur_maps[(w, z)] = rows
        dims.append(cur_dims)
        amaps.append(cur_maps)
        total = [a + b for a, b in zip(total, cur_dims)]
        if any(cur_dims):
            quiet = 0
        else:
            quiet += 1
            if quiet == 2:
                return total
    raise RuntimeError(f"mesh category of {q.name} did not terminate by degree {max_degree}")


def mesh_ext_table(q: TranslationQuiver) -> list[list[int]]:
    """Ext^1(x, y) = Hom(tau^{-1} x, y) computed by ``mesh_hom_dims``."""
    hom = [mesh_hom_dims(q, x) for x in range(len(q))]
    return [hom[q.tau_inv[x]] for x in range(len(q))]


def chord_crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    p, q = sorted(a)
    u, v = sorted(b)
    if len({p, q, u, v}) < 4:
        return False
    return (p < u < q) != (p < v < q)


def brute_force_triangulations(m: int) -> list[tuple[tuple[int, int], ...]]:
    """All triangulations of the convex m-gon, by exhaustive search over chord sets."""
    chords = [(i, j) for i in range(1, m + 1) for j in range(i + 2, m + 1) if not (i == 1 and j == m)]
    out = []
    for sub in combinations(chords, m - 3):
        if all(not chord_crosses(a, b) for a, b in combinations(sub, 2)):
            out.append(sub)
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)
