"""rho-symmetric cluster configurations of the E6 model and the F4 exchange graph.

A configuration fixed by rho has two paired members and two rho-orbits of
single members.  Mutating at a paired member or at a whole single orbit keeps
the configuration rho-symmetric; the resulting graph on the 105 symmetric
configurations is the F4 exchange graph.

Kinds are read off from the underlying unoriented chords: four distinct chords
(a triangulation of the heptagon) is type T, three chords is type C (one chord
carries both a paired and a single orbit, the middle diagonal) and two chords
is type L.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .oracles import chord_crosses
from .polygon import Colour, Diagonal, rho, sigma
from .tilting import ClusterModel, ConsistencyError, Configuration, ExchangeGraph, complements

M = 7
KINDS = ("T", "C", "L")
EXPECTED_CENSUS = {"T": 84, "C": 14, "L": 7}


class F4Error(ConsistencyError):
    """A symmetric configuration or move violates the expected structure."""


def rho_orbit(d: Diagonal) -> frozenset:
    return frozenset((d, rho(d)))


def rho_orbits(q) -> list[frozenset]:
    """All rho-orbits of vertices of the quiver, sorted by their least member."""
    seen = {rho_orbit(d) for d in q.vertices}
    return sorted(seen, key=lambda o: min(o).key)


def chords(config) -> tuple[tuple[int, int], ...]:
    return tuple(sorted({d.chord for d in config}))


def is_triangulation(cs) -> bool:
    cs = list(cs)
    return len(cs) == M - 3 and not any(chord_crosses(a, b) for a, b in combinations(cs, 2))


def internal_triangles(cs) -> list[tuple[int, int, int]]:
    """Triangles of a triangulation whose three sides are all diagonals."""
    s = set(cs)
    out = []
    for a, b, c in combinations(range(1, M + 1), 3):
        if {(a, b), (b, c), (a, c)} <= s:
            out.append((a, b, c))
    return out


@dataclass(frozen=True)
class SymmetricConfiguration:
    config: Configuration
    kind: str

    @cached_property
    def paired(self) -> tuple[Diagonal, ...]:
        return tuple(d for d in self.config if d.colour is Colour.PAIRED)

    @cached_property
    def single_orbits(self) -> tuple[frozenset, ...]:
        orbits = {rho_orbit(d) for d in self.config if d.colour is not Colour.PAIRED}
        return tuple(sorted(orbits, key=lambda o: min(o).key))

    @property
    def slots(self) -> tuple[Diagonal, ...]:
        """Mutation slots: the paired members, then the least member of each single orbit."""
        return self.paired + tuple(min(o) for o in self.single_orbits)

    def __str__(self) -> str:
        return f"{self.kind} {self.config}"


def kind_of(config) -> str:
    cs = chords(config)
    if len(cs) == 4:
        if not is_triangulation(cs):
            raise F4Error(f"four chords that do not triangulate: {config}")
        return "T"
    if len(cs) == 3:
        return "C"
    if len(cs) == 2:
        return "L"
    raise F4Error(f"unexpected chord count {len(cs)} in {config}")


def _check_shape(config) -> None:
    paired = [d for d in config if d.colour is Colour.PAIRED]
    singles = [d for d in config if d.colour is not Colour.PAIRED]
    if len(paired) != 2 or len({rho_orbit(d) for d in singles}) != 2 or len(singles) != 4:
        raise F4Error(f"symmetric configuration without 2 paired + 2 single orbits: {config}")


def rho_symmetric_configs(model: ClusterModel) -> list[SymmetricConfiguration]:
    out = []
    for c in model.configurations:
        if c.map(rho) == c:
            _check_shape(c)
            out.append(SymmetricConfiguration(c, kind_of(c)))
    got = Counter(sc.kind for sc in out)
    if dict(got) != EXPECTED_CENSUS:
        raise F4Error(f"symmetric census {dict(got)} != {EXPECTED_CENSUS}")
    return out


def orbit_mutate(model: ClusterModel, sc: SymmetricConfiguration, slot) -> SymmetricConfiguration:
    """Mutate at a paired member, or at both members of a single rho-orbit."""
    d = sc.slots[slot] if isinstance(slot, int) else slot
    if d not in sc.config:
        raise F4Error(f"{d} is not a member of {sc.config}")
    if d.colour is Colour.PAIRED:
        _, star = complements(model, sc.config, d)
        if star.colour is not Colour.PAIRED:
            raise F4Error(f"paired {d} exchanged with single {star}")
        new = sc.config.replace(d, star)
    else:
        _, star = complements(model, sc.config, d)
        mid = sc.config.replace(d, star)
        _, star2 = complements(model, mid, rho(d))
        if star2 != rho(star):
            raise F4Error(f"orbit of {d} exchanged with non-orbit {star}, {star2}")
        new = mid.replace(rho(d), star2)
    if new.map(rho) != new or not model.is_configuration(new):
        raise F4Error(f"mutation of {sc.config} at {d} left the symmetric set")
    return SymmetricConfiguration(new, kind_of(new))


def exchanged(model: ClusterModel, sc: SymmetricConfiguration, slot) -> tuple[Diagonal, Diagonal]:
    d = sc.slots[slot] if isinstance(slot, int) else slot
    return complements(model, sc.config, d)


# -- move patterns -------------------------------------------------------------


def _same_single(d: Diagonal, i: int, j: int) -> Colour | None:
    """Colour c with rho_orbit(d) == rho_orbit([i, j]_c), if any."""
    for c in (Colour.RED, Colour.BLUE):
        if rho_orbit(d) == rho_orbit(Diagonal.of(i, j, c, M)):
            return c
    return None


def _lc_pattern(d: Diagonal, e: Diagonal) -> bool:
    """d in the L configuration, e its replacement in the C configuration."""
    for i in range(1, M + 1):
        if d.colour is Colour.PAIRED:
            if d == Diagonal.of(i + 1, i + 3, "P", M) and e == Diagonal.of(i - 3, i - 1, "P", M):
                return True
        else:
            c = _same_single(d, i + 3, i + 1)
            if c is not None and _same_single(e, i - 1, i - 3) is c:
                return True
    return False


def _ct_pattern(d: Diagonal, e: Diagonal, t_chords) -> bool:
    """d in the C configuration, e its replacement in the T configuration."""
    tri_sides = {tuple(sorted(p)) for t in internal_triangles(t_chords) for p in combinations(t, 2)}
    for i in range(1, M + 1):
        if d.colour is Colour.PAIRED:
            if d == Diagonal.of(i - 2, i, "P", M) and e == Diagonal.of(i, i + 3, "P", M):
                return True
        else:
            c = _same_single(d, i + 2, i)
            if c is not None and _same_single(e, i, i - 3) is c and e.chord in tri_sides:
                return True
    return False


def _tt_pattern(d: Diagonal, e: Diagonal, before, after) -> bool:
    """Flip of unoriented chords with paired exchanged for paired, single for single."""
    if (d.colour is Colour.PAIRED) != (e.colour is Colour.PAIRED):
        return False
    rest = set(before) - {d.chord}
    return set(after) == rest | {e.chord} and chord_crosses(d.chord, e.chord)


def _mirror(d: Diagonal) -> Diagonal:
    return sigma(M, d)


def _pattern_or_mirror(check, d: Diagonal, e: Diagonal, *extra) -> str | None:
    """'direct' if the move matches the stated pattern, 'mirror' if its sigma-image does."""
    if check(d, e, *extra):
        return "direct"
    mirrored = [tuple(sorted(_mirror_chord(c))) for c in extra[0]] if extra else []
    if check(_mirror(d), _mirror(e), *([mirrored] if extra else [])):
        return "mirror"
    return None


def _mirror_chord(c: tuple[int, int]) -> tuple[int, int]:
    return tuple((2 * M - v - 1) % M + 1 for v in c)


@dataclass(frozen=True)
class Move:
    source: SymmetricConfiguration
    target: SymmetricConfiguration
    old: Diagonal
    new: Diagonal
    label: str
    pattern: str | None  # "direct", "mirror" or None when no stated pattern matches

    @property
    def pattern_ok(self) -> bool:
        return self.pattern is not None


def classify_move(model: ClusterModel, sc: SymmetricConfiguration, slot) -> Move:
    """Label a symmetric mutation and match it against the stated move patterns.

    L-C and C-T patterns are stated for one orientation; the sigma-image of a
    C configuration mutates by the mirrored pattern, reported as "mirror".
    """
    d, e = exchanged(model, sc, slot)
    tgt = orbit_mutate(model, sc, slot)
    pair = frozenset((sc.kind, tgt.kind))
    if pair == {"L", "C"}:
        label = "L-C"
        a, b = (d, e) if sc.kind == "L" else (e, d)
        pattern = _pattern_or_mirror(_lc_pattern, a, b)
    elif pair == {"C", "T"}:
        label = "C-T"
        a, b, t = (d, e, tgt) if sc.kind == "C" else (e, d, sc)
        pattern = _pattern_or_mirror(_ct_pattern, a, b, chords(t.config))
    elif pair == {"T"}:
        label = "T-T"
        ok = _tt_pattern(d, e, chords(sc.config), chords(tgt.config))
        pattern = "direct" if ok else None
    else:
        raise F4Error(f"move {sc.kind}->{tgt.kind} at {d} is none of L-C, C-T, T-T")
    return Move(sc, tgt, d, e, label, pattern)


def bounds_internal_triangle(chord: tuple[int, int], cs) -> bool:
    sides = {tuple(sorted(p)) for t in internal_triangles(cs) for p in combinations(t, 2)}
    return chord in sides


def tt_flip_violations(moves) -> list[Move]:
    """Moves at a T chord not bounding an internal triangle that are not T-T flips."""
    bad = []
    for mv in moves:
        if mv.source.kind != "T":
            continue
        if not bounds_internal_triangle(mv.old.chord, chords(mv.source.config)):
            if mv.label != "T-T" or not mv.pattern_ok:
                bad.append(mv)
    return bad


def all_moves(model: ClusterModel, symmetric=None) -> list[Move]:
    symmetric = symmetric if symmetric is not None else rho_symmetric_configs(model)
    return [classify_move(model, sc, k) for sc in symmetric for k in range(len(sc.slots))]


def move_table(moves) -> dict[str, int]:
    """Counts of unordered moves per label (each edge counted once)."""
    seen = Counter()
    for mv in moves:
        if mv.source.config < mv.target.config:
            seen[mv.label] += 1
    return dict(sorted(seen.items()))


def f4_exchange_graph(model: ClusterModel, symmetric=None) -> ExchangeGraph:
    symmetric = symmetric if symmetric is not None else rho_symmetric_configs(model)
    index = {sc.config: n for n, sc in enumerate(symmetric)}
    edges = {}
    for n, sc in enumerate(symmetric):
        for k in range(len(sc.slots)):
            d, e = exchanged(model, sc, k)
            tgt = orbit_mutate(model, sc, k)
            j = index.get(tgt.config)
            if j is None:
                raise F4Error(f"orbit mutation left the symmetric set: {tgt.config}")
            key = (min(n, j), max(n, j))
            edges.setdefault(key, (d, e) if n < j else (e, d))
    return ExchangeGraph([sc.config for sc in symmetric],
                         [(i, j, lab) for (i, j), lab in sorted(edges.items())], name="F4")


def triangulation_projection(symmetric) -> Counter:
    """Number of type T configurations over each heptagon triangulation."""
    return Counter(chords(sc.config) for sc in symmetric if sc.kind == "T")


def orbit_counts(q) -> dict[str, int]:
    orbits = rho_orbits(q)
    paired = sum(1 for o in orbits if len(o) == 1)
    return {"orbits": len(orbits), "paired": paired, "single": len(orbits) - paired,
            "f4_cluster_variables": 24}
