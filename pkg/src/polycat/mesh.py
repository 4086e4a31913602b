"""Hom and Ext dimensions in mesh categories via additive knitting on ZT.

For a Dynkin tree T the hammock of a vertex x of ZT is computed slice by
slice with the clamped recursion

    h(y) = max(0, sum_{w -> y} h(w) - h(tau y)),   h(x) = 1.

Dimensions in a finite quotient Gamma = ZT/G are sums over the G-lifts.
Ext^1(x, y) = Hom(tau^{-1} x, y) in the (2-Calabi-Yau) cluster category.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .polygon import (
    Colour,
    Diagonal,
    TreeShape,
    crosses,
    mod1,
    parse_diagonal,
    rho,
    tau,
    tau_inverse,
)
from .quiver import CoveringQuiver, QuiverError, TranslationQuiver, build_covering


class WindowOverflow(RuntimeError):
    """The support of a hammock reached the edge of the covering window."""


class NotClusterCategory(ValueError):
    """The quiver is not the AR quiver of a cluster category (orbit degree != 1)."""


def hom_dims_from(cover: CoveringQuiver, x: tuple) -> dict[tuple, int]:
    """dim Hom(x, y) for all y in the window with nonzero value."""
    if x not in cover:
        raise QuiverError(f"{x} is outside the covering window")
    n0, v0 = x
    order = cover.tree.topological_order
    h: dict[tuple, int] = {x: 1}
    quiet = 0
    for n in range(n0, cover.hi + 1):
        any_nonzero = False
        for w in order:
            y = (n, w)
            if y == x:
                any_nonzero = True
                continue
            val = sum(h.get(p, 0) for p in cover.preds(n, w)) - h.get((n - 1, w), 0)
            if val > 0:
                h[y] = val
                any_nonzero = True
        if any_nonzero:
            quiet = 0
        else:
            quiet += 1
            if quiet == 2:
                return h
    raise WindowOverflow(f"hammock of {x} not finished inside slices {cover.lo}..{cover.hi}")


# Coxeter numbers and whether the Nakayama permutation is nontrivial
def coxeter_number(kind: str, n: int) -> int:
    return {"A": n + 1, "D": 2 * n - 2}.get(kind) or {6: 12, 7: 18, 8: 30}[n]


def _nakayama_twisted(kind: str, n: int) -> bool:
    if kind == "A":
        return n > 1
    if kind == "D":
        return n % 2 == 1
    return n == 6


def cluster_check(q: TranslationQuiver) -> tuple[bool, str]:
    """Is q = ZT/<tau^{-1} Sigma> for a Dynkin tree T (so that Ext is 2-CY)?"""
    cov = q.cover
    if cov is None:
        return False, "no covering data"
    if q.spec is not None:
        dyn = q.spec.shape.dynkin_type()
        shape = q.spec.shape
    else:
        verts = cov.tree.vertices
        shape = _shape_from_slots(verts)
        dyn = shape.dynkin_type() if shape else None
    if dyn is None:
        return False, "tree is not Dynkin"
    kind, n = dyn
    h = coxeter_number(kind, n)
    if h % 2:
        return False, f"{kind}{n}: Coxeter number {h} is odd"
    want_m = h // 2 + 1
    if cov.period != want_m:
        return False, f"{kind}{n}: period {cov.period}, cluster category needs {want_m}"
    twisted = _nakayama_twisted(kind, n)
    if kind == "A" and twisted:
        return False, f"{kind}{n}: Nakayama reflection is not a leg swap"
    if twisted != cov.twist:
        return False, f"{kind}{n}: twist {cov.twist}, cluster category needs {twisted}"
    if twisted and shape is not None and not (shape.s == shape.t and _swap_legs_match(shape, kind, n)):
        return False, f"{kind}{n}: swapped legs are not the ones exchanged by Nakayama"
    return True, f"{kind}{n}"


def _swap_legs_match(shape: TreeShape, kind: str, n: int) -> bool:
    if kind == "D":
        return shape.s == shape.t == 1 and (n > 4 or shape.r == 1)
    if kind == "E":
        return (shape.r, shape.s, shape.t) == (1, 2, 2)
    return False


def _shape_from_slots(verts) -> TreeShape | None:
    try:
        r = sum(1 for c, _ in verts if c is Colour.PAIRED) - 1
        s = sum(1 for c, _ in verts if c is Colour.RED)
        t = sum(1 for c, _ in verts if c is Colour.BLUE)
    except (TypeError, ValueError):
        return None
    return TreeShape(r, s, t)


class Hammocks:
    """Cached hammocks of a quotient, one per tree vertex, translated as needed."""

    def __init__(self, q: TranslationQuiver, W: int | None = None):
        if q.cover is None:
            raise QuiverError(f"{q.name} has no covering data")
        self.q = q
        self.cov = q.cover
        self.W = W if W is not None else 4 * len(self.cov.tree.vertices) + 2 * self.cov.period
        self.window = build_covering(self.cov.tree, W=self.W, m=self.cov.period, twist=self.cov.twist)
        self._cache: dict = {}

    def from_tree_vertex(self, v) -> dict:
        if v not in self._cache:
            self._cache[v] = hom_dims_from(self.window, (0, v))
        return self._cache[v]

    def hom(self, x: int, y: int) -> int:
        a, v = self.cov.lifts[x]
        b, w = self.cov.lifts[y]
        h = self.from_tree_vertex(v)
        m = self.cov.period
        total = 0
        k = -((b - a) // m) - 1  # start a little before relative slice 0
        while True:
            n, u = self.cov.deck(b, w, k)
            rel = n - a
            if rel > self.W:
                break
            if rel >= 0:
                total += h.get((rel, u), 0)
            k += 1
        return total

    def hom_matrix(self) -> np.ndarray:
        n = len(self.q)
        out = np.zeros((n, n), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                out[x, y] = self.hom(x, y)
        return out


def hom_dim_quotient(q: TranslationQuiver, x: int, y: int) -> int:
    return Hammocks(q).hom(x, y)


@dataclass
class ExtTable:
    quiver: TranslationQuiver
    dims: np.ndarray
    category: str = ""
    hom: np.ndarray | None = field(default=None, repr=False)

    def _idx(self, d) -> int:
        if isinstance(d, (int, np.integer)):
            return int(d)
        if isinstance(d, str):
            d = parse_diagonal(d, self.quiver.spec.m)
        return self.quiver.index[d]

    def __call__(self, x, y) -> int:
        return int(self.dims[self._idx(x), self._idx(y)])

    def compatible(self, x, y) -> bool:
        return self(x, y) == 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        labels = [str(v) for v in self.quiver.vertices]
        w.writerow([""] + labels)
        for lab, row in zip(labels, self.dims):
            w.writerow([lab] + [int(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "quiver": self.quiver.name,
            "category": self.category,
            "vertices": [str(v) for v in self.quiver.vertices],
            "ext": self.dims.tolist(),
        })


def ext_table(q: TranslationQuiver, W: int | None = None) -> ExtTable:
    """dim Ext^1 for all pairs; refuses quivers that are not cluster categories.

    ``W`` overrides the covering window radius used for knitting.
    """
    ok, why = cluster_check(q)
    if not ok:
        raise NotClusterCategory(f"{q.name}: {why}")
    hm = Hammocks(q, W)
    hom = hm.hom_matrix()
    n = len(q)
    ext = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        ext[x] = hom[q.tau_inv[x]]
    if not np.array_equal(ext, ext.T):
        raise AssertionError(f"Ext table of {q.name} is not symmetric")
    return ExtTable(q, ext, why, hom)


def hom_table(q: TranslationQuiver) -> np.ndarray:
    return Hammocks(q).hom_matrix()


# -- curves in the E6 heptagon model ------------------------------------------


@dataclass(frozen=True)
class Curve:
    base: Diagonal
    label: int
    members: tuple[Diagonal, ...]

    def __contains__(self, d) -> bool:
        return d in self.members

    def __len__(self) -> int:
        return len(self.members)


def _is_e6(q: TranslationQuiver) -> bool:
    return q.spec is not None and q.spec.m == 7 and q.spec.shape == TreeShape(1, 2, 2)


def _require_e6(q: TranslationQuiver) -> None:
    if not _is_e6(q):
        raise QuiverError(f"curves are only defined on the heptagon E6 quiver, not {q.name}")


def _oriented_components(d: Diagonal) -> list[tuple[Colour, int, int]]:
    if d.colour is Colour.PAIRED:
        return [(Colour.RED, d.source, d.target), (Colour.BLUE, d.target, d.source)]
    return [(d.colour, d.source, d.target)]


def _holders(q: TranslationQuiver, c: Colour, a: int, b: int) -> list[Diagonal]:
    """Members of q having the oriented component [a, b]_c."""
    m = q.spec.m
    if (a - b) % m in (0, 1, m - 1):
        return []
    if c is Colour.RED:
        cands = [Diagonal.of(a, b, Colour.RED, m), Diagonal.of(a, b, Colour.PAIRED, m)]
    else:
        cands = [Diagonal.of(a, b, Colour.BLUE, m), Diagonal.of(b, a, Colour.PAIRED, m)]
    return [d for d in cands if d in q.index]


def rotation_walk(q, start: Diagonal, colours, step: int, pivots, end: Diagonal) -> tuple[Diagonal, ...]:
    """Diagonals met by minimal rotations about each pivot in turn, from ``start`` to ``end``.

    ``step`` is +1 for clockwise and -1 for anticlockwise rotation.  Only
    components whose colour is in ``colours`` move, so a single-coloured walk
    stays in its colour while a paired walk follows both components.  About
    each pivot the walk continues until it is blocked by the boundary.
    """
    m = q.spec.m
    cur, out = [start], [start]
    for p in pivots:
        while True:
            nxt = []
            for d in cur:
                for c, a, b in _oriented_components(d):
                    if c not in colours or p not in (a, b):
                        continue
                    if a == p:
                        b = mod1(b + step, m)
                    else:
                        a = mod1(a + step, m)
                    nxt.extend(e for e in _holders(q, c, a, b) if e not in nxt)
            if not nxt:
                break
            cur = nxt
            out.extend(e for e in nxt if e not in out)
            if end in cur:
                return tuple(out)
    raise QuiverError(f"rotation walk from {start} never reached {end}")


def _shift(q, members, k: int) -> tuple[Diagonal, ...]:
    f = tau if k > 0 else tau_inverse
    for _ in range(abs(k)):
        members = tuple(f(d, q.spec) for d in members)
    return members


def _first_slice_curves(q: TranslationQuiver) -> dict[Diagonal, list[tuple[Diagonal, ...]]]:
    P = lambda s: parse_diagonal(s, 7)  # noqa: E731
    R, B = Colour.RED, Colour.BLUE
    both = (R, B)
    c16 = [
        rotation_walk(q, P("[2,7]R"), (R,), 1, (7, 5, 3), P("[6,3]R")),
        rotation_walk(q, P("[5,7]B"), (B,), -1, (7, 2, 4), P("[1,4]B")),
    ]
    c15 = [
        rotation_walk(q, P("[2,6]R"), (R,), 1, (6, 4, 2), P("[5,2]R")),
        c16[0],
        rotation_walk(q, P("[4,7]B"), (B,), -1, (7, 2, 4), P("[1,4]B")),
        # one anticlockwise step further than the second curve of [1,6]R
        _shift(q, c16[1], 1),
    ]
    c13 = [
        rotation_walk(q, P("[2,4]P"), both, 1, (2, 7, 5), P("[5,1]P")),
        rotation_walk(q, P("[7,2]P"), both, -1, (2, 4, 6), P("[3,6]P")),
    ]
    c14 = [
        rotation_walk(q, P("[2,5]P"), both, 1, (2, 7, 5), P("[5,1]P")),
        _shift(q, c13[0], -1),
        rotation_walk(q, P("[7,3]P"), both, -1, (3, 5, 7), P("[4,7]P")),
        c13[1],
    ]
    out = {P("[1,6]R"): c16, P("[1,5]R"): c15, P("[1,3]P"): c13, P("[1,4]P"): c14}
    for x in (P("[1,6]R"), P("[1,5]R")):
        out[rho(x)] = [tuple(rho(d) for d in c) for c in out[x]]
    return out


_CURVE_CACHE: dict = {}


def curves_E6(q: TranslationQuiver, x: Diagonal | str) -> list[Curve]:
    """Curves of x: explicit walks on the first slice, tau-shifts elsewhere."""
    _require_e6(q)
    if isinstance(x, str):
        x = parse_diagonal(x, 7)
    if "first" not in _CURVE_CACHE:
        _CURVE_CACHE["first"] = _first_slice_curves(q)
    first = _CURVE_CACHE["first"]
    k, x0 = 0, x
    while x0 not in first:
        x0, k = tau(x0, q.spec), k + 1
    return [Curve(x, i + 1, _shift(q, c, -k)) for i, c in enumerate(first[x0])]


def ext_via_curves(q: TranslationQuiver, x, y) -> int:
    """Number of curves of x that contain y."""
    if isinstance(y, str):
        y = parse_diagonal(y, 7)
    return sum(1 for c in curves_E6(q, x) if y in c)


def curve_ext_matrix(q: TranslationQuiver) -> np.ndarray:
    n = len(q)
    out = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(q.vertices):
        for c in curves_E6(q, x):
            for d in c.members:
                out[i, q.index[d]] += 1
    return out


def displayed_C1_16R(q: TranslationQuiver) -> set[Diagonal]:
    """The set display {[7,2+i]_c} u {[5,7+i]_c} u {[6,3]_R}, c in {R,P}, filtered by membership."""
    _require_e6(q)
    out = set()
    for i in range(4):
        for c in (Colour.RED, Colour.PAIRED):
            for a, b in ((7, 2 + i), (5, 7 + i)):
                if (a - b) % 7 in (0, 1, 6):
                    continue
                d = Diagonal.of(a, mod1(b, 7), c, 7)
                if d in q.index:
                    out.add(d)
    out.add(parse_diagonal("[6,3]R", 7))
    return out


# -- front and back crossings ------------------------------------------------


@dataclass(frozen=True)
class CrossingLift:
    base: Diagonal
    front: frozenset  # I_1, contains tau^{-1} base
    back: frozenset  # I_2, contains tau base

    @property
    def disjoint(self) -> bool:
        return not (self.front & self.back)


def crossing_lift(q: TranslationQuiver, x, table: ExtTable | None = None) -> CrossingLift:
    """Components of (Ext-hammock of x) meet (diagonals whose chord crosses x's chord).

    The second set is the preimage of the Ext-hammock of the unoriented chord
    in the type A cluster category of the polygon.
    """
    _require_e6(q)
    table = table or ext_table(q)
    if isinstance(x, str):
        x = parse_diagonal(x, 7)
    i = q.index[x]
    support = {j for j in range(len(q)) if table.dims[i, j] and crosses(x, q.vertices[j])}

    def component(seed: int) -> frozenset:
        if seed not in support:
            return frozenset()
        seen, todo = {seed}, [seed]
        while todo:
            a = todo.pop()
            for b in q.succ[a] + q.pred[a]:
                if b in support and b not in seen:
                    seen.add(b)
                    todo.append(b)
        return frozenset(q.vertices[j] for j in seen)

    front = component(q.tau_inv[i])
    back = component(q.tau[i])
    return CrossingLift(x, front, back)


def smaller_side(x: Diagonal) -> set[int]:
    """Polygon vertices strictly inside the smaller region cut off by x's chord."""
    a, b = x.chord
    m = x.m
    inside = set(range(a + 1, b))
    outside = set(range(1, m + 1)) - inside - {a, b}
    if len(inside) == len(outside):
        raise QuiverError(f"{x} is a diameter; neither side is smaller")
    return inside if len(inside) < len(outside) else outside


def enters_smaller_region(x: Diagonal, y: Diagonal) -> bool:
    """Does y point into the smaller region cut off by x?

    Arrow heads are read in the colour frame of x: for a blue x the picture is
    mirrored by rho, which reverses orientation, so the tail of a single y is
    what must land in the region.  Paired y count with either endpoint.
    """
    if y.colour is Colour.PAIRED:
        heads = {y.source, y.target}
    elif x.colour is Colour.BLUE:
        heads = {y.source}
    else:
        heads = {y.target}
    return bool(heads & smaller_side(x))


def cuts_violations(q: TranslationQuiver, table: ExtTable | None = None) -> list[str]:
    """Check the crossing statements for every first-slice diagonal; returns failures.

    Checked: front and back crossings are disjoint and contain tau^{-1}x and
    tau x; every diagonal crossing x lies in them or their rho-images; a
    crossing y has nonzero Ext with x when x is paired, or when x is single
    and y enters the smaller region of x.
    """
    _require_e6(q)
    table = table or ext_table(q)
    bad = []
    for x, y, e, lift in _crossing_cells(q, table):
        if y is None:
            if not lift.disjoint:
                bad.append(f"{x}: front and back crossings meet")
            if tau_inverse(x, q.spec) not in lift.front or tau(x, q.spec) not in lift.back:
                bad.append(f"{x}: tau-neighbours missing from their crossing")
            if x.colour is Colour.PAIRED and lift.front != {rho(d) for d in lift.front}:
                bad.append(f"{x} paired but front crossing is not rho-closed")
            continue
        cover = set(lift.front) | set(lift.back)
        cover |= {rho(d) for d in cover}
        if y not in cover:
            bad.append(f"{x}: crossing diagonal {y} outside the front/back crossings")
        if x.colour is Colour.PAIRED and e < 1:
            bad.append(f"{x} paired, crosses {y}, ext {e}")
        if x.colour is not Colour.PAIRED and enters_smaller_region(x, y) and e < 1:
            bad.append(f"{x} single, {y} enters smaller region, ext {e}")
    return bad


def cuts_dimension_exceptions(q: TranslationQuiver, table: ExtTable | None = None) -> list[tuple]:
    """Crossing pairs covered by the crossing statements whose Ext dimension is not exactly 1."""
    table = table or ext_table(q)
    out = []
    for x, y, e, _ in _crossing_cells(q, table):
        if y is None:
            continue
        if x.colour is Colour.PAIRED or enters_smaller_region(x, y):
            if e != 1:
                out.append((x, y, e))
    return out


def _crossing_cells(q, table):
    for x in q.vertices:
        if x.anchor != 1:
            continue
        lift = crossing_lift(q, x, table)
        yield x, None, None, lift
        for y in q.vertices:
            if crosses(x, y):
                yield x, y, table(x, y), lift


__all__ = [
    "Curve", "CrossingLift", "crossing_lift", "cuts_dimension_exceptions", "curve_ext_matrix", "curves_E6", "cuts_violations",
    "displayed_C1_16R", "enters_smaller_region", "ext_via_curves", "rotation_walk",
    "ExtTable", "Hammocks", "NotClusterCategory", "WindowOverflow", "cluster_check",
    "coxeter_number", "ext_table", "hom_dim_quotient", "hom_dims_from", "hom_table",
]
