"""Cluster configurations: enumeration, classification, mutation and exchange graphs.

A configuration is a maximal set of pairwise Ext-orthogonal vertices.  They
are found as maximal cliques of the compatibility graph with a pivoting
Bron-Kerbosch search over integer bitsets.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .mesh import ExtTable, ext_table
from .polygon import (
    Colour, Diagonal, SpecError, crosses, mod1, parse_diagonal, rho, sigma, tau, tau_inverse,
)
from .quiver import TranslationQuiver

THREADS_ENV = "POLYCAT_THREADS"


class ConsistencyError(RuntimeError):
    """A structural statement about configurations failed on the computed data."""


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- clique enumeration ------------------------------------------------------


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _bron_kerbosch(R: int, P: int, X: int, adj: list[int], out: list[int]) -> None:
    if not P:
        if not X:
            out.append(R)
        return
    u = max(_bits(P | X), key=lambda w: (P & adj[w]).bit_count())
    cand = P & ~adj[u]
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        _bron_kerbosch(R | low, P & adj[v], X & adj[v], adj, out)
        P &= ~low
        X |= low
        cand &= ~low


def degeneracy_order(adj: list[int]) -> list[int]:
    n = len(adj)
    alive = (1 << n) - 1
    order = []
    for _ in range(n):
        v = min(_bits(alive), key=lambda w: ((adj[w] & alive).bit_count(), w))
        order.append(v)
        alive &= ~(1 << v)
    return order


_ADJ: list[int] = []


def _init_worker(adj):
    global _ADJ
    _ADJ = adj


def _branch(task):
    v, P, X = task
    out: list[int] = []
    _bron_kerbosch(1 << v, P, X, _ADJ, out)
    return out


def maximal_cliques(adj: list[int], workers: int = 1) -> list[tuple[int, ...]]:
    """All maximal cliques, sorted; top-level branches may run in worker processes."""
    order = degeneracy_order(adj)
    tasks, seen = [], 0
    for v in order:
        later = adj[v] & ~seen
        tasks.append((v, later, adj[v] & seen))
        seen |= 1 << v
    if workers > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(adj,)) as ex:
            chunks = list(ex.map(_branch, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        _init_worker(adj)
        chunks = [_branch(t) for t in tasks]
    cliques = [tuple(_bits(R)) for chunk in chunks for R in chunk]
    return sorted(cliques)


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class Configuration:
    members: tuple  # sorted Diagonals

    @classmethod
    def of(cls, members) -> "Configuration":
        return cls(tuple(sorted(members)))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, d) -> bool:
        return d in self.members

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.members)) + "}"

    def to_json(self) -> list[str]:
        return [str(d) for d in self.members]

    def digest(self) -> str:
        return hashlib.sha1(" ".join(self.to_json()).encode()).hexdigest()[:10]

    def replace(self, old, new) -> "Configuration":
        return Configuration.of([new if d == old else d for d in self.members])

    def map(self, f) -> "Configuration":
        return Configuration.of(f(d) for d in self.members)


class ClusterModel:
    """A cluster-category quiver with its Ext table and (lazily) its configurations."""

    def __init__(self, q: TranslationQuiver, table: ExtTable | None = None, workers: int | None = None):
        self.q = q
        self.table = table if table is not None else ext_table(q)
        self.workers = default_workers() if workers is None else workers
        self.k = q.spec.shape.rank if q.spec is not None else len(q.cover.tree.vertices)

    @cached_property
    def compat(self) -> list[int]:
        n = len(self.q)
        d = self.table.dims
        return [sum(1 << j for j in range(n) if j != i and d[i, j] == 0) for i in range(n)]

    @cached_property
    def configurations(self) -> list[Configuration]:
        return enumerate_configurations(self.table, self.k, self.workers)

    @cached_property
    def config_index(self) -> dict[Configuration, int]:
        return {c: i for i, c in enumerate(self.configurations)}

    def idx(self, d) -> int:
        if isinstance(d, str):
            d = parse_diagonal(d, self.q.spec.m)
        try:
            return self.q.index[d]
        except KeyError:
            raise SpecError(f"{d} is not a vertex of {self.q.name}") from None

    def is_configuration(self, members) -> bool:
        """Pairwise Ext-orthogonal, of size k and maximal; non-vertices make it False."""
        try:
            ids = [self.idx(d) for d in members]
        except SpecError:
            return False
        if len(set(ids)) != self.k:
            return False
        if any(self.table.dims[a, b] for a in ids for b in ids):
            return False
        mask = 0
        for a in ids:
            mask |= 1 << a
        common = (1 << len(self.q)) - 1
        for a in ids:
            common &= self.compat[a]
        return not (common & ~mask)

    def candidates(self, rest) -> list[Diagonal]:
        """Vertices compatible with every member of ``rest`` (and not in it)."""
        common = (1 << len(self.q)) - 1
        for d in rest:
            common &= self.compat[self.idx(d)]
        return [self.q.vertices[j] for j in _bits(common)]


def enumerate_configurations(table: ExtTable, k: int, workers: int = 1) -> list[Configuration]:
    """All maximal Ext-orthogonal sets; each must have exactly k members."""
    q = table.quiver
    n = len(q)
    d = table.dims
    if any(d[i, i] for i in range(n)):
        raise ConsistencyError("a vertex has self-extensions")
    adj = [sum(1 << j for j in range(n) if j != i and d[i, j] == 0) for i in range(n)]
    cliques = maximal_cliques(adj, workers)
    bad = [c for c in cliques if len(c) != k]
    if bad:
        raise ConsistencyError(f"{len(bad)} maximal compatible sets have size != {k}, e.g. {bad[0]}")
    return sorted(Configuration.of(q.vertices[i] for i in c) for c in cliques)


# -- classification ----------------------------------------------------------


def is_long_paired(d: Diagonal) -> bool:
    return d.colour is Colour.PAIRED and d.reach == 3


def is_short_paired(d: Diagonal) -> bool:
    return d.colour is Colour.PAIRED and d.reach == 2


@dataclass(frozen=True)
class ConfigClass:
    has_long_paired: bool
    short_paired_count: int
    family: str

    def __post_init__(self):
        if self.has_long_paired and self.family != "F1":
            raise ConsistencyError("a long paired diagonal forces family F1")


def classify(config: Configuration) -> ConfigClass:
    longs = sum(1 for d in config if is_long_paired(d))
    shorts = sum(1 for d in config if is_short_paired(d))
    return ConfigClass(longs > 0, shorts, "F1" if longs else "F2")


def census(configs) -> dict:
    out = Counter()
    for c in configs:
        cl = classify(c)
        out["total"] += 1
        if cl.has_long_paired:
            out["long_paired"] += 1
        else:
            out[f"short_{cl.short_paired_count}"] += 1
    return {key: out.get(key, 0) for key in ("total", "long_paired", "short_0", "short_1", "short_2")}


@dataclass(frozen=True)
class LongDiagonalSplit:
    L: Diagonal
    quad: tuple[int, ...]
    pent: tuple[int, ...]


def split_long(L: Diagonal) -> LongDiagonalSplit:
    """The quadrilateral on the clockwise side of L and the complementary pentagon."""
    m = L.m
    a, b = L.source, L.target
    if (b - a) % m != 3 or m != 7:
        raise ValueError(f"{L} does not split the heptagon into a quadrilateral and a pentagon")
    quad = tuple(mod1(a + k, m) for k in range(4))
    pent = tuple(mod1(b + k, m) for k in range(5))
    return LongDiagonalSplit(L, quad, pent)


def _fan_triangulations(poly: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    """The five triangulations of a pentagon (each is a fan from one corner)."""
    out = []
    for k in range(5):
        p = poly[k:] + poly[:k]
        out.append([(p[0], p[2]), (p[0], p[3])])
    return out


def _single_on_chord(q: TranslationQuiver, chord, colour: Colour) -> Diagonal:
    a, b = chord
    for x, y in ((a, b), (b, a)):
        d = Diagonal.of(x, y, colour, q.spec.m)
        if d in q.index:
            return d
    raise ValueError(f"no {colour.value} single diagonal on chord {chord}")


def _naive_F1(q: TranslationQuiver, L: Diagonal) -> list[Configuration]:
    sp = split_long(L)
    quad, pent = sp.quad, sp.pent
    shorts = [Diagonal.of(quad[0], quad[2], Colour.PAIRED, 7), Diagonal.of(quad[1], quad[3], Colour.PAIRED, 7)]
    out = []
    for s in shorts:
        for tr in _fan_triangulations(pent):
            for tb in _fan_triangulations(pent):
                members = [L, s] + [_single_on_chord(q, c, Colour.RED) for c in tr]
                members += [_single_on_chord(q, c, Colour.BLUE) for c in tb]
                out.append(Configuration.of(members))
    return out


F1_BASE_ANCHOR = 4


def generate_family_F1(model: ClusterModel, L: Diagonal | str) -> list[Configuration]:
    """The 50 configurations containing the long paired diagonal L.

    Away from the seam the configurations are: L, a short paired diagonal
    triangulating the quadrilateral, and red resp. blue single diagonals
    triangulating the pentagon.  They are built at a base anchor and moved to
    L by tau-shifts, which carries out the colour/orientation adjustment near
    the first slice.
    """
    q = model.q
    if isinstance(L, str):
        L = parse_diagonal(L, 7)
    if not is_long_paired(L) or L not in q.index:
        raise ValueError(f"{L} is not a long paired diagonal")
    base = Diagonal(F1_BASE_ANCHOR, 3, Colour.PAIRED, 7)
    shift = (F1_BASE_ANCHOR - L.anchor) % 7
    out = []
    for c in _naive_F1(q, base):
        for _ in range(shift):
            c = c.map(lambda d: tau(d, q.spec))
        if L not in c:
            raise ConsistencyError(f"tau transport of {base} did not reach {L}")
        if not model.is_configuration(c):
            raise ConsistencyError(f"generated set {c} is not a configuration")
        out.append(c)
    if len(set(out)) != 50:
        raise ConsistencyError(f"{L} produced {len(set(out))} distinct configurations")
    return sorted(out)


def naive_F1_valid_count(model: ClusterModel, L: Diagonal) -> int:
    """How many of the untransported naive sets over L are configurations."""
    return sum(model.is_configuration(c) for c in _naive_F1(model.q, L))


# -- complements and mutation --------------------------------------------------


def complements(model: ClusterModel, config: Configuration, d) -> tuple[Diagonal, Diagonal]:
    """(d, d*) with d* the unique other completion of config minus d."""
    if isinstance(d, str):
        d = parse_diagonal(d, model.q.spec.m)
    if d not in config:
        raise ValueError(f"{d} is not a member of {config}")
    rest = [e for e in config if e != d]
    cands = [e for e in model.candidates(rest) if e != d]
    if len(cands) != 1:
        raise ConsistencyError(f"{config} at {d}: {len(cands)} complements {list(map(str, cands))}")
    star = cands[0]
    if model.table(d, star) != 1:
        raise ConsistencyError(f"Ext({d}, {star}) = {model.table(d, star)}, expected 1")
    return d, star


def mutate(model: ClusterModel, config: Configuration, d) -> Configuration:
    d, star = complements(model, config, d)
    return config.replace(d, star)


def _sides(a: int, b: int, c: int, e: int, m: int):
    """Sides of the quadrilateral on four distinct polygon vertices (in cyclic order)."""
    vs = sorted({a, b, c, e})
    return [tuple(sorted((vs[i], vs[(i + 1) % 4]))) for i in range(4)]


def is_flip_mutation(model: ClusterModel, config: Configuration, d) -> tuple[bool, dict]:
    """Is the exchange of d a flip of a quadrilateral diagonal?

    d and d* must cross, and every side of the quadrilateral spanned by their
    endpoints must be a boundary edge or the chord of a remaining member.
    """
    d, star = complements(model, config, d)
    m = model.q.spec.m
    witness = {"d": str(d), "d_star": str(star)}
    if not crosses(d, star):
        witness["reason"] = "chords do not cross"
        return False, witness
    chords = {e.chord for e in config if e != d}
    missing = []
    for s in _sides(*d.chord, *star.chord, m):
        boundary = (s[1] - s[0]) % m in (1, m - 1)
        if not boundary and s not in chords:
            missing.append(s)
    if missing:
        witness["reason"] = f"quadrilateral sides {missing} not present"
        return False, witness
    witness["quadrilateral"] = sorted(set(d.chord) | set(star.chord))
    return True, witness


def flip_cases(model: ClusterModel) -> list[tuple[Configuration, Diagonal, str]]:
    """(config, member, case) for every mutation covered by the flip statements."""
    out = []
    for c in model.configurations:
        for L in c:
            if is_long_paired(L):
                sp = split_long(L)
                for d in c:
                    if d == L:
                        continue
                    ends = set(d.chord)
                    if is_short_paired(d) and ends <= set(sp.quad):
                        out.append((c, d, "paired in quadrilateral"))
                    elif d.colour is not Colour.PAIRED and ends <= set(sp.pent):
                        out.append((c, d, "single in pentagon"))
            elif L.colour is not Colour.PAIRED and L.reach == 4:
                for d in long_single_quad_pair(L):
                    if d in c:
                        out.append((c, d, "single in quadrilateral of long single"))
    return out


def long_single_quad_pair(L: Diagonal) -> tuple[Diagonal, Diagonal]:
    """The two single diagonals triangulating the quadrilateral cut off by a long single L.

    For L = [i, i+4]_R these are [i, i+5]_R and [i+6, i+4]_R; when L sits in the
    first slice the second one is taken through rho.  Blue L is handled via rho(L).
    """
    m = 7
    red = L if L.colour is Colour.RED else rho(L)
    i = red.anchor
    a = Diagonal.of(i, i + 5, Colour.RED, m)
    b = Diagonal.of(i + 6, i + 4, Colour.RED, m)
    if i == 1:
        b = rho(b)
    if L.colour is Colour.BLUE:
        a, b = rho(a), rho(b)
    return a, b


def quad_pair_census(model: ClusterModel, i: int) -> tuple[int, Counter]:
    """For configs containing [i,i+4]_R: how many of its quadrilateral pair they contain."""
    L = Diagonal.of(i, i + 4, Colour.RED, 7)
    a, b = long_single_quad_pair(L)
    hits = Counter((a in c) + (b in c) for c in model.configurations if L in c)
    return sum(hits.values()), hits


# -- exchange graph ------------------------------------------------------------


@dataclass
class ExchangeGraph:
    vertices: list
    edges: list  # (i, j, (d, d*)) with i < j
    name: str = ""

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in self.vertices]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]

    def degrees(self) -> set[int]:
        return {len(a) for a in self.adjacency}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen, todo = {0}, deque([0])
        while todo:
            for j in self.adjacency[todo.popleft()]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == len(self.vertices)

    def to_dot(self) -> str:
        lines = [f"graph \"{self.name or 'exchange'}\" {{", "  // schema 1"]
        for c in self.vertices:
            lines.append(f"  \"{c.digest()}\" [label=\"{' '.join(c.to_json())}\"];")
        for i, j, (a, b) in self.edges:
            lines.append(
                f"  \"{self.vertices[i].digest()}\" -- \"{self.vertices[j].digest()}\" [label=\"{a}/{b}\"];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "name": self.name,
            "vertices": [c.to_json() for c in self.vertices],
            "edges": [[i, j, str(a), str(b)] for i, j, (a, b) in self.edges],
        })


def exchange_graph(model: ClusterModel) -> ExchangeGraph:
    configs = model.configurations
    index = model.config_index
    edges = {}
    for i, c in enumerate(configs):
        for d in c:
            d, star = complements(model, c, d)
            j = index.get(c.replace(d, star))
            if j is None:
                raise ConsistencyError(f"mutation of {c} at {d} left the configuration list")
            a, b = (i, j) if i < j else (j, i)
            pair = (d, star) if i < j else (star, d)
            edges[(a, b)] = pair
    g = ExchangeGraph(configs, [(a, b, p) for (a, b), p in sorted(edges.items())], model.q.name)
    for i, c in enumerate(configs):
        for j in g.adjacency[i]:
            if len(set(c) & set(configs[j])) != model.k - 1:
                raise ConsistencyError("adjacent configurations differ in more than one member")
    return g


# -- geometry of the two heptagons -------------------------------------------


@dataclass(frozen=True)
class SplitPlacement:
    first: tuple  # red and paired members
    second: tuple  # blue and paired members
    noncrossing: bool


def noncrossing_split(config) -> SplitPlacement:
    """Draw red+paired members in one heptagon and blue+paired in another."""
    first = tuple(d for d in config if d.colour is not Colour.BLUE)
    second = tuple(d for d in config if d.colour is not Colour.RED)
    ok = not any(crosses(a, b) for part in (first, second) for a, b in combinations(part, 2))
    return SplitPlacement(first, second, ok)


def noncrossing_shift(model: ClusterModel, config: Configuration) -> int | None:
    """Least k >= 0 such that tau^k(config) passes the literal two-heptagon split.

    Shifting moves the Moebius seam relative to the members; rotating the
    shifted picture back by k steps draws every member in place, with those
    carried across the seam drawn by their rho-image.
    """
    cur = config
    for k in range(2 * model.q.spec.m):
        if noncrossing_split(cur).noncrossing:
            return k
        cur = tau_config(model, cur)
    return None


def find_converse_counterexample(model: ClusterModel):
    """A k-set of distinct diagonals that is non-crossing in the split yet not Ext-orthogonal."""
    q = model.q
    verts = q.vertices
    n = len(verts)

    def clash(a: Diagonal, b: Diagonal) -> bool:
        same = (a.colour is not Colour.BLUE and b.colour is not Colour.BLUE) or (
            a.colour is not Colour.RED and b.colour is not Colour.RED)
        return same and crosses(a, b)

    adj = [sum(1 << j for j in range(n) if j != i and not clash(verts[i], verts[j])) for i in range(n)]
    for clique in maximal_cliques(adj):
        if len(clique) < model.k:
            continue
        for sub in combinations(clique, model.k):
            if any(model.table.dims[a, b] for a, b in combinations(sub, 2)):
                return Configuration.of(verts[i] for i in sub)
    return None


# -- symmetries --------------------------------------------------------------


def sigma_image(model: ClusterModel, config: Configuration, i: int = 6) -> Configuration:
    img = config.map(lambda d: sigma(i, d))
    if not model.is_configuration(img):
        raise ConsistencyError(f"sigma_{i} image of {config} is not a configuration")
    return img


def tau_config(model: ClusterModel, config: Configuration, inverse: bool = False) -> Configuration:
    f = tau_inverse if inverse else tau
    return config.map(lambda d: f(d, model.q.spec))


def tau_orbits(model: ClusterModel, configs) -> list[list[Configuration]]:
    todo = set(configs)
    out = []
    for c in sorted(configs):
        if c not in todo:
            continue
        orbit, x = [], c
        while True:
            orbit.append(x)
            todo.discard(x)
            x = tau_config(model, x)
            if x == c:
                break
        out.append(orbit)
    return out


def group_orbits(model: ClusterModel, configs, use_sigma: bool = True) -> list[list[Configuration]]:
    """Orbits under <tau, sigma_6>; each orbit sorted, orbits ordered by least member."""
    pool = set(configs)
    out = []
    for c in sorted(configs):
        if c not in pool:
            continue
        seen, todo = {c}, [c]
        while todo:
            x = todo.pop()
            moves = [tau_config(model, x)]
            if use_sigma:
                moves.append(x.map(lambda d: sigma(6, d)))
            for y in moves:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        pool -= seen
        out.append(sorted(seen))
    return out


# -- quivers of cluster-tilted algebras ----------------------------------------


QT_BASE = ("[2,4]P", "[2,5]P", "[2,6]R", "[2,7]R", "[6,2]B", "[7,2]B")


def triangle_rule_matrix(config: Configuration, m: int = 7) -> np.ndarray:
    """Exchange matrix of a configuration whose chords triangulate each heptagon.

    In each of the two heptagons (red+paired, blue+paired) two diagonals
    bounding a common triangle are joined by an arrow pointing from one to
    its image under anticlockwise rotation about their shared vertex.  Arrows
    between paired members appear in both heptagons but are counted once.
    """
    members = list(config.members)
    pos = {d: i for i, d in enumerate(members)}
    arrows = set()
    for part in (noncrossing_split(config).first, noncrossing_split(config).second):
        chords = {d.chord: d for d in part}
        if len(chords) != m - 3:
            raise ValueError(f"{config} does not triangulate a heptagon with {part}")
        for a, b, c in combinations(range(1, m + 1), 3):
            sides = [(a, b), (b, c), (a, c)]
            present = [s for s in sides if s in chords or (s[1] - s[0]) % m in (1, m - 1)]
            if len(present) != 3:
                continue
            inner = [s for s in sides if s in chords]
            for s, t in combinations(inner, 2):
                v = (set(s) & set(t)).pop()
                x, y = (set(s) - {v}).pop(), (set(t) - {v}).pop()
                # turning s anticlockwise about v sweeps the triangle iff y is
                # met before v when walking backwards from x
                src, dst = (s, t) if (x - y) % m < (x - v) % m else (t, s)
                arrows.add((pos[chords[src]], pos[chords[dst]]))
    B = np.zeros((len(members), len(members)), dtype=np.int64)
    for i, j in arrows:
        B[i, j] += 1
        B[j, i] -= 1
    return B


def matrix_mutation(B: np.ndarray, k: int) -> np.ndarray:
    """Fomin-Zelevinsky mutation of a skew-symmetric matrix at index k."""
    out = B.copy()
    n = B.shape[0]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i, j] = -B[i, j]
            else:
                out[i, j] = B[i, j] + (abs(B[i, k]) * B[k, j] + B[i, k] * abs(B[k, j])) // 2
    return out


def _relabel(B: np.ndarray, old: Configuration, new: Configuration, d, star) -> np.ndarray:
    order = [star if e == d else e for e in old.members]
    perm = [order.index(e) for e in new.members]
    return B[np.ix_(perm, perm)]


def quiver_shape(B: np.ndarray) -> tuple[str, int] | None:
    """Dynkin type of the underlying graph of B when it is a tree."""
    n = B.shape[0]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if B[i, j]]
    if len(edges) != n - 1 or any(abs(B[i, j]) != 1 for i, j in edges):
        return None
    deg = Counter()
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    branch = [v for v in range(n) if deg[v] >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or deg[branch[0]] > 3:
        return None
    c = branch[0]
    legs = []
    for start in (j for j in range(n) if B[c, j]):
        length, prev, cur = 1, c, start
        while True:
            nxt = [j for j in range(n) if B[cur, j] and j != prev]
            if not nxt:
                break
            prev, cur, length = cur, nxt[0], length + 1
        legs.append(length)
    legs.sort()
    if legs[:2] == [1, 1]:
        return ("D", n)
    if legs[:2] == [1, 2] and legs[2] in (2, 3, 4):
        return ("E", n)
    return None


@dataclass
class QuiverTransport:
    base: Configuration
    matrices: dict = field(default_factory=dict)  # Configuration -> matrix in member order
    checked_edges: int = 0


def transport_quivers(model: ClusterModel, graph: ExchangeGraph | None = None,
                      base: Configuration | None = None) -> QuiverTransport:
    """Carry the base exchange matrix to every configuration along a BFS tree.

    Every exchange-graph edge (tree or not) is then checked to commute with
    matrix mutation, which makes the result independent of the path taken.
    """
    graph = graph or exchange_graph(model)
    base = base or Configuration.of(parse_diagonal(s, 7) for s in QT_BASE)
    if not model.is_configuration(base):
        raise ConsistencyError(f"base {base} is not a configuration")
    configs = graph.vertices
    index = {c: i for i, c in enumerate(configs)}
    mats = {base: triangle_rule_matrix(base)}
    todo = deque([base])
    while todo:
        c = todo.popleft()
        for d in c:
            d, star = complements(model, c, d)
            nc = c.replace(d, star)
            if nc in mats:
                continue
            k = c.members.index(d)
            mats[nc] = _relabel(matrix_mutation(mats[c], k), c, nc, d, star)
            todo.append(nc)
    if len(mats) != len(configs):
        raise ConsistencyError("exchange graph is not connected")
    checked = 0
    for i, j, (d, star) in graph.edges:
        c, nc = configs[i], configs[j]
        k = c.members.index(d)
        expect = _relabel(matrix_mutation(mats[c], k), c, nc, d, star)
        if not np.array_equal(expect, mats[nc]):
            raise ConsistencyError(f"quiver transport is path dependent across {c} -- {nc}")
        checked += 1
    for c, B in mats.items():
        if not np.array_equal(B, -B.T) or np.any(np.diag(B)):
            raise ConsistencyError(f"quiver of {c} has loops or 2-cycles")
        _ = index[c]
    return QuiverTransport(base, mats, checked)



def mutation_path(model: ClusterModel, src: Configuration, dst: Configuration) -> list[Diagonal]:
    """Members to mutate at, in order, along a shortest path from src to dst."""
    prev = {src: None}
    todo = deque([src])
    while todo and dst not in prev:
        c = todo.popleft()
        for d in c:
            nc = mutate(model, c, d)
            if nc not in prev:
                prev[nc] = (c, d)
                todo.append(nc)
    if dst not in prev:
        raise ConsistencyError(f"{dst} is not reachable from {src}")
    path, cur = [], dst
    while prev[cur] is not None:
        cur, d = prev[cur]
        path.append(d)
    return path[::-1]


def quiver_of_config(model: ClusterModel, config: Configuration, base: Configuration | None = None,
                     path=None) -> np.ndarray:
    """Exchange matrix of config obtained by mutating the base quiver along ``path``.

    ``path`` lists the members mutated at, starting from the base; by default a
    shortest path is used.  Rows and columns follow ``config.members``.
    """
    base = base or Configuration.of(parse_diagonal(s, 7) for s in QT_BASE)
    path = mutation_path(model, base, config) if path is None else list(path)
    cur, B = base, triangle_rule_matrix(base)
    for d in path:
        d = parse_diagonal(d, 7) if isinstance(d, str) else d
        d, star = complements(model, cur, d)
        nc = cur.replace(d, star)
        B = _relabel(matrix_mutation(B, cur.members.index(d)), cur, nc, d, star)
        if np.any(np.diag(B)) or not np.array_equal(B, -B.T):
            raise ConsistencyError(f"loop or 2-cycle after mutating {cur} at {d}")
        cur = nc
    if cur != config:
        raise ConsistencyError(f"path ends at {cur}, not {config}")
    return B

__all__ = [
    "ClusterModel", "ConfigClass", "Configuration", "ConsistencyError", "ExchangeGraph",
    "LongDiagonalSplit", "QuiverTransport", "census", "classify", "complements",
    "enumerate_configurations", "exchange_graph", "find_converse_counterexample",
    "generate_family_F1", "group_orbits", "long_single_quad_pair", "mutation_path",
    "noncrossing_shift", "quiver_of_config", "is_flip_mutation", "quad_pair_census",
    "matrix_mutation", "maximal_cliques", "mutate", "noncrossing_split", "flip_cases",
    "quiver_shape", "sigma_image", "split_long", "tau_config", "tau_orbits",
    "transport_quivers", "triangle_rule_matrix",
]
