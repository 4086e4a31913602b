"""Translation quivers of coloured oriented diagonals and their coverings.

``build_gamma`` draws arrows from minimal clockwise rotations of the
diagonals themselves (a paired diagonal rotates through both of its
coloured components).  The repetition quiver ZT and its quotients are built
separately in ``build_covering``/``zt_quotient`` so the two constructions can
be compared by ``isomorphic_translation_quivers``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable

from .polygon import (
    Colour,
    Diagonal,
    PolygonSpec,
    SpecError,
    TreeShape,
    build_diagonal_set,
    mod1,
    rho,
    tau,
)

Vertex = Hashable


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Tree:
    """An oriented tree with an optional involutive automorphism."""

    vertices: tuple
    arrows: tuple
    automorphism: dict | None = None
    name: str = ""

    def flip(self, v, times: int = 1):
        if self.automorphism is None or times % 2 == 0:
            return v
        return self.automorphism[v]

    @cached_property
    def topological_order(self) -> tuple:
        indeg = {v: 0 for v in self.vertices}
        for _, w in self.arrows:
            indeg[w] += 1
        order, ready = [], [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a, b in self.arrows:
                if a == v:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
        if len(order) != len(self.vertices):
            raise QuiverError(f"{self.name or 'tree'} orientation has a cycle")
        return tuple(order)

    @cached_property
    def out_nbrs(self) -> dict:
        out = {v: [] for v in self.vertices}
        for a, b in self.arrows:
            out[a].append(b)
        return out

    @cached_property
    def in_nbrs(self) -> dict:
        inn = {v: [] for v in self.vertices}
        for a, b in self.arrows:
            inn[b].append(a)
        return inn


def shape_tree(shape: TreeShape) -> Tree:
    """T_{r,s,t} labelled by the (colour, reach) slots of one polygon slice."""
    auto = {v: shape.swap_legs(v) for v in shape.tree_vertices} if shape.symmetric else None
    return Tree(shape.tree_vertices, shape.tree_arrows, auto, f"T{(shape.r, shape.s, shape.t)}")


def dynkin_tree(kind: str, n: int) -> Tree:
    """A simply laced Dynkin tree with integer labels.

    E_n uses Bourbaki numbering (branch vertex 4, vertex 2 hanging off it) and
    is oriented away from the branch vertex.  The automorphism is the one
    induced by the Nakayama functor where nontrivial; orientations are chosen
    so that it preserves arrows.
    """
    kind = kind.upper()
    if kind == "A":
        edges = [(i, i + 1) for i in range(1, n)]
        auto = None
    elif kind == "D":
        if n < 4:
            raise QuiverError("D_n needs n >= 4")
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        auto = {**{i: i for i in range(1, n - 1)}, n - 1: n, n: n - 1} if n % 2 else None
    elif kind == "E":
        if n not in (6, 7, 8):
            raise QuiverError("E_n needs n in 6..8")
        edges = [(4, 3), (3, 1), (4, 2)] + [(i, i + 1) for i in range(4, n)]
        auto = {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4} if n == 6 else None
    else:
        raise QuiverError(f"unknown Dynkin kind {kind}")
    arrows = tuple(edges)
    return Tree(tuple(range(1, n + 1)), arrows, auto, f"{kind}{n}")


@dataclass(frozen=True)
class CoverData:
    """How a finite quiver is a quotient of ZT by <tau^{-period} (automorphism)^twist>.

    ``lifts[i]`` is a preferred preimage (slice, tree vertex) of vertex i.
    """

    tree: Tree
    period: int
    twist: bool
    lifts: tuple

    @cached_property
    def _by_lift(self) -> dict:
        return {lift: i for i, lift in enumerate(self.lifts)}

    @cached_property
    def base(self) -> int:
        return min(n for n, _ in self.lifts)

    def project(self, n: int, v) -> int:
        k = (n - self.base) // self.period
        n0 = n - k * self.period
        v0 = self.tree.flip(v, k) if self.twist else v
        return self._by_lift[(n0, v0)]

    def deck(self, n: int, v, k: int = 1) -> tuple:
        return (n + k * self.period, self.tree.flip(v, k) if self.twist else v)


@dataclass
class TranslationQuiver:
    vertices: tuple
    arrows: tuple
    tau: tuple
    spec: PolygonSpec | None = None
    name: str = ""
    cover: CoverData | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_set(self) -> frozenset:
        return frozenset(self.arrows)

    @cached_property
    def succ(self) -> tuple:
        out = [[] for _ in self.vertices]
        for a, b in self.arrows:
            out[a].append(b)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple:
        inn = [[] for _ in self.vertices]
        for a, b in self.arrows:
            inn[b].append(a)
        return tuple(tuple(sorted(s)) for s in inn)

    @cached_property
    def tau_inv(self) -> tuple:
        inv = [None] * len(self.vertices)
        for i, j in enumerate(self.tau):
            inv[j] = i
        return tuple(inv)

    def tau_orbit_length(self, i: int) -> int:
        n, j = 1, self.tau[i]
        while j != i:
            j, n = self.tau[j], n + 1
        return n

    def to_json(self) -> str:
        spec = None
        if self.spec is not None:
            sh = self.spec.shape
            spec = {"m": self.spec.m, "r": sh.r, "s": sh.s, "t": sh.t}
        payload = {
            "schema": 1,
            "spec": spec,
            "vertices": [str(v) for v in self.vertices],
            "arrows": [list(a) for a in sorted(set(self.arrows))],
            "tau": list(self.tau),
        }
        return json.dumps(payload, indent=1)


# -- the polygon quivers ---------------------------------------------------


def _components(d: Diagonal) -> list[tuple[Colour, int, int]]:
    """Coloured oriented components as (colour, lifted from, lifted to)."""
    a, k = d.anchor, d.reach
    if d.colour is Colour.RED:
        return [(Colour.RED, a, a + k)]
    if d.colour is Colour.BLUE:
        return [(Colour.BLUE, a + k, a)]
    return [(Colour.RED, a, a + k), (Colour.BLUE, a + k, a)]


def _objects_with_component(c: Colour, frm: int, to: int, spec: PolygonSpec):
    """Members of the diagonal set (with lifted anchor) having the given component."""
    slots = set(spec.shape.tree_vertices)
    if c is Colour.RED:
        anchor, reach = frm, to - frm
    else:
        anchor, reach = to, frm - to
    for colour in (c, Colour.PAIRED):
        if (colour, reach) in slots:
            yield anchor, reach, colour


def _reduce(anchor: int, reach: int, colour: Colour, spec: PolygonSpec) -> Diagonal:
    wraps = (anchor - 1) // spec.m
    d = Diagonal(mod1(anchor, spec.m), reach, colour, spec.m)
    if spec.mobius and wraps % 2:
        d = rho(d)
    return d


def minimal_rotations(d: Diagonal, spec: PolygonSpec) -> list[Diagonal]:
    """Targets of the minimal clockwise rotations starting at ``d``."""
    out = []
    for c, frm, to in _components(d):
        for f2, t2 in ((frm, to + 1), (frm + 1, to)):
            for anchor, reach, colour in _objects_with_component(c, f2, t2, spec):
                tgt = _reduce(anchor, reach, colour, spec)
                if tgt != d and tgt not in out:
                    out.append(tgt)
    return sorted(out)


def build_gamma(spec: PolygonSpec) -> TranslationQuiver:
    """The quiver Gamma^m_{r,s,t} with translation tau."""
    ds = build_diagonal_set(spec)
    arrows = []
    for i, d in enumerate(ds):
        for e in minimal_rotations(d, spec):
            if e not in ds:
                raise QuiverError(f"rotation of {d} left the diagonal set: {e}")
            arrows.append((i, ds.index(e)))
    tau_map = tuple(ds.index(tau(d, spec)) for d in ds)
    lifts = tuple((d.anchor, (d.colour, d.reach)) for d in ds)
    cover = CoverData(shape_tree(spec.shape), spec.m, spec.mobius, lifts)
    return TranslationQuiver(ds.members, tuple(arrows), tau_map, spec, str(spec), cover)


def gamma_for(m: int, r: int, s: int, t: int, relaxed: bool = False) -> TranslationQuiver:
    return build_gamma(PolygonSpec(m, TreeShape(r, s, t), relaxed))


# -- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _weakly_connected(n: int, arrows: Iterable[tuple[int, int]]) -> bool:
    if n == 0:
        return True
    adj = [[] for _ in range(n)]
    for a, b in arrows:
        adj[a].append(b)
        adj[b].append(a)
    seen, todo = {0}, [0]
    while todo:
        for j in adj[todo.pop()]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return len(seen) == n


def validate_stable_translation(q: TranslationQuiver) -> ValidationReport:
    """Check the stable translation quiver axioms; violations are returned, not raised."""
    rep = ValidationReport()
    n = len(q.vertices)
    name = lambda i: str(q.vertices[i])  # noqa: E731
    seen = set()
    for a, b in q.arrows:
        if a == b:
            rep.violations.append(f"loop at {name(a)}")
        if (a, b) in seen:
            rep.violations.append(f"multiple arrow {name(a)} -> {name(b)}")
        seen.add((a, b))
    if len(q.tau) != n or sorted(q.tau) != list(range(n)):
        rep.violations.append("tau is not a bijection of the vertices")
        return rep
    if not _weakly_connected(n, q.arrows):
        rep.violations.append("quiver is not connected")
    for x in range(n):
        into = set(q.pred[x])
        out_of_tau = set(q.succ[q.tau[x]])
        if into != out_of_tau:
            rep.violations.append(
                f"Riedtmann axiom fails at {name(x)}: in {sorted(map(name, into))} "
                f"vs out of tau {sorted(map(name, out_of_tau))}"
            )
    return rep


# -- repetition quivers ----------------------------------------------------


@dataclass
class CoveringQuiver:
    """Window of ZT over slices lo..hi, with tau = left shift and deck transformation."""

    tree: Tree
    lo: int
    hi: int
    period: int
    twist: bool

    @property
    def vertices(self) -> list[tuple]:
        return [(n, v) for n in range(self.lo, self.hi + 1) for v in self.tree.vertices]

    @property
    def arrows(self) -> list[tuple[tuple, tuple]]:
        out = []
        for n in range(self.lo, self.hi + 1):
            for v, w in self.tree.arrows:
                out.append(((n, v), (n, w)))
                if n + 1 <= self.hi:
                    out.append(((n, w), (n + 1, v)))
        return out

    def preds(self, n: int, w) -> list[tuple]:
        return [(n, v) for v in self.tree.in_nbrs[w]] + [(n - 1, u) for u in self.tree.out_nbrs[w]]

    @staticmethod
    def tau(x: tuple) -> tuple:
        return (x[0] - 1, x[1])

    def deck(self, x: tuple, k: int = 1) -> tuple:
        n, v = x
        return (n + k * self.period, self.tree.flip(v, k) if self.twist else v)

    def __contains__(self, x) -> bool:
        return self.lo <= x[0] <= self.hi and x[1] in self.tree.out_nbrs


def default_window(tree: Tree) -> int:
    return 4 * len(tree.vertices)


def build_covering(
    shape: TreeShape | Tree, W: int | None = None, m: int | None = None, twist: bool | None = None
) -> CoveringQuiver:
    """Windowed ZT over slices -W..W with deck tau^{-m} (times the leg swap when twisted).

    Without ``twist`` the leg swap is used exactly when the polygon quiver of
    size m lies on a Moebius strip.
    """
    tree = shape if isinstance(shape, Tree) else shape_tree(shape)
    W = default_window(tree) if W is None else W
    if W < 1:
        raise QuiverError(f"window radius must be positive, got {W}")
    if m is None:
        m = 2 * W + 1
    if twist is None:
        twist = isinstance(shape, TreeShape) and shape.symmetric and m % 2 == 1
    if twist and tree.automorphism is None:
        raise QuiverError("twisted deck transformation needs a tree automorphism")
    return CoveringQuiver(tree, -W, W, m, twist)


def zt_quotient(tree: Tree, m: int, twist: bool = False, name: str = "") -> TranslationQuiver:
    """ZT / <tau^{-m} g> with g the tree automorphism when ``twist``; vertices (slice, v)."""
    if twist and tree.automorphism is None:
        raise QuiverError("twist requested but tree has no automorphism")
    verts = [(i, v) for i in range(m) for v in tree.vertices]
    idx = {x: k for k, x in enumerate(verts)}

    def wrap(i, v):
        k = i // m
        return idx[(i - k * m, tree.flip(v, k) if twist else v)]

    arrows = []
    for i in range(m):
        for v, w in tree.arrows:
            arrows.append((idx[(i, v)], idx[(i, w)]))
            arrows.append((idx[(i, w)], wrap(i + 1, v)))
    tau_map = tuple(wrap(i - 1, v) for i, v in verts)
    cover = CoverData(tree, m, twist, tuple(verts))
    label = name or f"Z{tree.name}/tau^-{m}" + ("rho" if twist else "")
    return TranslationQuiver(tuple(verts), tuple(arrows), tau_map, None, label, cover)


def covering_projection(cover: CoveringQuiver, q: TranslationQuiver) -> dict:
    """Vertex map from the window onto q; checks arrows and tau are respected."""
    if q.cover is None:
        raise QuiverError(f"{q.name} carries no covering data")
    proj = {x: q.cover.project(*x) for x in cover.vertices}
    for a, b in cover.arrows:
        if (proj[a], proj[b]) not in q.arrow_set:
            raise QuiverError(f"arrow {a}->{b} does not map to an arrow of {q.name}")
    for x in cover.vertices:
        tx = cover.tau(x)
        if tx in cover and proj[tx] != q.tau[proj[x]]:
            raise QuiverError(f"projection does not commute with tau at {x}")
    return proj


# -- quotients and projections -------------------------------------------


def quotient_quiver(
    q: TranslationQuiver, key: Callable[[Vertex], Hashable], name: str = ""
) -> tuple[TranslationQuiver, list[int]]:
    """Identify vertices with equal ``key``; arrows and tau are induced.

    Returns the quotient and the vertex map q -> quotient.
    """
    labels, cls = [], {}
    vmap = []
    for v in q.vertices:
        k = key(v)
        if k not in cls:
            cls[k] = len(labels)
            labels.append(k)
        vmap.append(cls[k])
    arrows = sorted({(vmap[a], vmap[b]) for a, b in q.arrows})
    tau_q = [None] * len(labels)
    for i, j in enumerate(q.tau):
        a, b = vmap[i], vmap[j]
        if tau_q[a] is not None and tau_q[a] != b:
            raise QuiverError(f"translation is not well defined on class {labels[a]}")
        tau_q[a] = b
    quot = TranslationQuiver(tuple(labels), tuple(arrows), tuple(tau_q), q.spec, name)
    return quot, vmap


def is_quiver_morphism(src: TranslationQuiver, dst: TranslationQuiver, vmap: list[int]) -> bool:
    """Surjective on vertices, arrows to arrows, commutes with tau."""
    if set(vmap) != set(range(len(dst))):
        return False
    if any((vmap[a], vmap[b]) not in dst.arrow_set for a, b in src.arrows):
        return False
    return all(vmap[src.tau[i]] == dst.tau[vmap[i]] for i in range(len(src)))


def rho_orbit(d: Diagonal) -> tuple[Diagonal, ...]:
    return tuple(sorted({d, rho(d)}))


def fold_rho(q: TranslationQuiver) -> TranslationQuiver:
    """Fold a symmetric quiver along rho; vertices are rho-orbits of diagonals."""
    if q.spec is None or not q.spec.shape.symmetric:
        raise QuiverError("fold_rho needs a quiver of a symmetric tree shape")
    sh = q.spec.shape
    folded, _ = quotient_quiver(q, rho_orbit, f"Gamma^{q.spec.m}_{{{sh.r},{sh.t}}}")
    return folded


def forget_orientation(q_folded: TranslationQuiver) -> TranslationQuiver:
    """Send each rho-orbit to its underlying unoriented chord."""
    chords, _ = quotient_quiver(q_folded, lambda orbit: orbit[0].chord, "Gamma_Pi")
    return chords


def build_gamma_Dn_triples(n: int) -> TranslationQuiver:
    """The quiver Gamma_{D_n} of centrally symmetric triples in the 2n-gon.

    A vertex is labelled by the member of its class lying in the D_n slots
    (paired reach 2..n-1 or a central single diagonal).
    """
    if n < 4:
        raise QuiverError("Gamma_{D_n} needs n >= 4")
    big = build_gamma(PolygonSpec(2 * n, TreeShape(n - 3, n - 1, n - 1)))
    m = 2 * n
    rep: dict[Diagonal, Diagonal] = {}
    for i in range(1, m + 1):
        for k in range(2, n):
            p = Diagonal(i, k, Colour.PAIRED, m)
            rep[p] = p
            rep[Diagonal.of(i + k + n, i + n, Colour.RED, m)] = p
            rep[Diagonal.of(i + n, i + k + n, Colour.BLUE, m)] = p
        for c in (Colour.RED, Colour.BLUE):
            d = Diagonal(i, n, c, m)
            rep[d] = d
    if set(rep) != set(big.vertices):
        raise QuiverError("triples do not partition the diagonal set")
    quot, _ = quotient_quiver(big, rep.__getitem__, f"Gamma_D{n}")
    verts = sorted(quot.vertices)
    order = [quot.index[v] for v in verts]
    pos = {old: new for new, old in enumerate(order)}
    arrows = tuple(sorted((pos[a], pos[b]) for a, b in quot.arrows))
    tau_map = tuple(pos[quot.tau[old]] for old in order)
    tree = shape_tree(TreeShape(n - 3, 1, 1))
    lifts = tuple((d.anchor, (d.colour, d.reach)) for d in verts)
    return TranslationQuiver(tuple(verts), arrows, tau_map, None, f"Gamma_D{n}",
                             CoverData(tree, m, False, lifts))


def dn_triples_projection(n: int) -> tuple[TranslationQuiver, TranslationQuiver, list[int]]:
    """(Gamma^{2n}_{n-3,n-1,n-1}, Gamma_{D_n}, vertex map) for checking the surjection."""
    big = build_gamma(PolygonSpec(2 * n, TreeShape(n - 3, n - 1, n - 1)))
    small = build_gamma_Dn_triples(n)
    m = 2 * n
    vmap = []
    for d in big.vertices:
        if d.colour is Colour.PAIRED or d.reach == n:
            r = d
        else:
            # [i+k+n, i+n]_R and [i+n, i+k+n]_B belong to the triple of [i, i+k]_P
            k = m - d.reach
            r = Diagonal(mod1(d.anchor - k - n, m), k, Colour.PAIRED, m)
        vmap.append(small.index[r])
    return big, small, vmap


# -- isomorphism search ------------------------------------------------------


def _refined_colours(q: TranslationQuiver, rounds: int = 4) -> list:
    col = [(q.tau_orbit_length(i), len(q.pred[i]), len(q.succ[i])) for i in range(len(q))]
    for _ in range(rounds):
        col = [
            (col[i], tuple(sorted(col[j] for j in q.pred[i])),
             tuple(sorted(col[j] for j in q.succ[i])), col[q.tau[i]])
            for i in range(len(q))
        ]
    return col


def isomorphic_translation_quivers(q1: TranslationQuiver, q2: TranslationQuiver) -> dict | None:
    """A vertex bijection q1 -> q2 preserving arrows and commuting with tau, or None.

    Vertices of q1 are assigned in breadth-first order from vertex 0 and
    candidates tried in index order, so the result is the least isomorphism
    in that order.
    """
    n = len(q1)
    if n != len(q2) or len(set(q1.arrows)) != len(set(q2.arrows)):
        return None
    if n == 0:
        return {}
    c1, c2 = _refined_colours(q1), _refined_colours(q2)
    # colours are compared structurally, so refine both with the same recipe
    if sorted(map(repr, c1)) != sorted(map(repr, c2)):
        return None
    c1 = [repr(c) for c in c1]
    c2 = [repr(c) for c in c2]

    def rel(q, i):
        return (("s", q.succ[i]), ("p", q.pred[i]), ("t", (q.tau[i],)), ("ti", (q.tau_inv[i],)))

    order, parent = [], {}
    for start in range(n):
        if start in parent:
            continue
        parent[start] = None
        dq = deque([start])
        while dq:
            i = dq.popleft()
            order.append(i)
            for kind, nbrs in rel(q1, i):
                for j in nbrs:
                    if j not in parent:
                        parent[j] = (i, kind)
                        dq.append(j)

    phi: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, c: int) -> bool:
        for j, cj in phi.items():
            if ((i, j) in q1.arrow_set) != ((c, cj) in q2.arrow_set):
                return False
            if ((j, i) in q1.arrow_set) != ((cj, c) in q2.arrow_set):
                return False
        if q1.tau[i] in phi and phi[q1.tau[i]] != q2.tau[c]:
            return False
        if q1.tau_inv[i] in phi and phi[q1.tau_inv[i]] != q2.tau_inv[c]:
            return False
        return True

    def candidates(i: int):
        par = parent[i]
        if par is None:
            pool = range(n)
        else:
            p, kind = par
            pool = dict(rel(q2, phi[p]))[kind]
        return [c for c in sorted(pool) if c not in used and c2[c] == c1[i]]

    def search(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for c in candidates(i):
            if consistent(i, c):
                phi[i] = c
                used.add(c)
                if search(pos + 1):
                    return True
                del phi[i]
                used.discard(c)
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    return dict(phi) if found else None


def check_isomorphism(q1: TranslationQuiver, q2: TranslationQuiver, phi: dict) -> bool:
    if sorted(phi.values()) != list(range(len(q2))) or len(phi) != len(q1):
        return False
    img = {(phi[a], phi[b]) for a, b in q1.arrows}
    if img != set(q2.arrows):
        return False
    return all(phi[q1.tau[i]] == q2.tau[phi[i]] for i in range(len(q1)))


__all__ = [
    "CoverData", "CoveringQuiver", "QuiverError", "TranslationQuiver", "Tree", "ValidationReport",
    "build_covering", "build_gamma", "build_gamma_Dn_triples", "check_isomorphism",
    "covering_projection", "dn_triples_projection", "dynkin_tree", "fold_rho",
    "forget_orientation", "gamma_for", "is_quiver_morphism", "isomorphic_translation_quivers",
    "minimal_rotations", "quotient_quiver", "rho_orbit", "shape_tree",
    "validate_stable_translation", "zt_quotient", "SpecError",
]
