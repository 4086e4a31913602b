"""Coloured oriented diagonals of a regular m-gon.

A diagonal is stored by its anchor vertex, its reach and its colour.  For red
and paired diagonals the anchor is the starting vertex and the diagonal is
``[anchor, anchor + reach]``; a blue diagonal anchored at ``i`` with reach
``a`` is ``[i + a, i]``.  With this encoding the generating set of a tree
shape ``(r, s, t)`` is, for every anchor, the paired reaches ``2..r+2``, the
red reaches ``r+3..r+s+2`` and the blue reaches ``r+3..r+t+2``.

Vertices of the polygon are labelled ``1..m`` (clockwise).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property


class Colour(str, Enum):
    RED = "R"
    BLUE = "B"
    PAIRED = "P"

    @property
    def rank(self) -> int:
        return _COLOUR_RANK[self]


_COLOUR_RANK = {Colour.PAIRED: 0, Colour.RED: 1, Colour.BLUE: 2}


class SpecError(ValueError):
    """Raised for polygon specs or diagonals that violate their invariants."""


def mod1(x: int, m: int) -> int:
    """Reduce ``x`` into the vertex range ``1..m``."""
    return (x - 1) % m + 1


@dataclass(frozen=True, order=True)
class TreeShape:
    """Leg lengths of the three-legged tree T_{r,s,t}."""

    r: int
    s: int
    t: int

    def __post_init__(self):
        if min(self.r, self.s, self.t) < 0:
            raise SpecError(f"negative leg length in {self}")

    @property
    def symmetric(self) -> bool:
        return self.s == self.t

    @property
    def rank(self) -> int:
        return self.r + self.s + self.t + 1

    @cached_property
    def tree_vertices(self) -> tuple[tuple[Colour, int], ...]:
        """Tree vertices as (colour, reach) in the order of one polygon slice."""
        r, s, t = self.r, self.s, self.t
        verts = [(Colour.PAIRED, a) for a in range(2, r + 3)]
        verts += [(Colour.RED, a) for a in range(r + 3, r + s + 3)]
        verts += [(Colour.BLUE, a) for a in range(r + 3, r + t + 3)]
        return tuple(verts)

    @cached_property
    def tree_arrows(self) -> tuple[tuple[tuple[Colour, int], tuple[Colour, int]], ...]:
        """Orientation of T_{r,s,t} by increasing reach (paired leg -> centre -> single legs)."""
        verts = set(self.tree_vertices)
        out = []
        for c, a in self.tree_vertices:
            if c is Colour.PAIRED and a == self.r + 2:
                nexts = [(Colour.RED, a + 1), (Colour.BLUE, a + 1)]
            else:
                nexts = [(c, a + 1)]
            out.extend(((c, a), w) for w in nexts if w in verts)
        return tuple(out)

    def swap_legs(self, v: tuple[Colour, int]) -> tuple[Colour, int]:
        """Tree automorphism exchanging the red and blue legs (needs s == t)."""
        c, a = v
        if c is Colour.RED:
            return (Colour.BLUE, a)
        if c is Colour.BLUE:
            return (Colour.RED, a)
        return v

    def dynkin_type(self) -> tuple[str, int] | None:
        """Dynkin label of T_{r,s,t}, or None for non-Dynkin trees."""
        legs = sorted((self.r, self.s, self.t))
        n = self.rank
        if legs[0] == 0:
            return ("A", n)
        if legs[:2] == [1, 1]:
            return ("D", n)
        if legs[:2] == [1, 2] and legs[2] in (2, 3, 4):
            return ("E", n)
        return None


@dataclass(frozen=True)
class PolygonSpec:
    """A regular m-gon together with a tree shape.

    ``relaxed`` lifts the size bound so that reaches may run up to ``m``
    (needed for the punctured D_n model of size m = n).
    """

    m: int
    shape: TreeShape
    relaxed: bool = False

    def __post_init__(self):
        r, s, t = self.shape.r, self.shape.s, self.shape.t
        longest = max(r + s, r + t) + 2
        if self.m < 4 and not self.relaxed:
            raise SpecError(f"polygon needs at least 4 sides, got {self.m}")
        if self.relaxed:
            if longest > self.m:
                raise SpecError(f"reach {longest} exceeds m={self.m} even in relaxed mode")
        elif longest > self.m - 2:
            raise SpecError(
                f"m={self.m} too small for shape {(r, s, t)}: need m >= {longest + 2}"
            )

    @property
    def mobius(self) -> bool:
        """True when the quiver lies on a Moebius strip (odd m, symmetric tree)."""
        return self.shape.symmetric and self.m % 2 == 1

    def __str__(self) -> str:
        r, s, t = self.shape.r, self.shape.s, self.shape.t
        return f"Gamma^{self.m}_{{{r},{s},{t}}}"


@dataclass(frozen=True)
class Diagonal:
    anchor: int
    reach: int
    colour: Colour
    m: int = field(compare=True)

    def __post_init__(self):
        if not 1 <= self.anchor <= self.m:
            raise SpecError(f"anchor {self.anchor} outside 1..{self.m}")
        if not 1 <= self.reach <= self.m:
            raise SpecError(f"reach {self.reach} outside 1..{self.m}")

    @classmethod
    def of(cls, i: int, j: int, colour: Colour | str, m: int) -> "Diagonal":
        """Diagonal ``[i, j]_colour``; ``i == j`` denotes the loop of reach m."""
        colour = Colour(colour)
        if colour is Colour.BLUE:
            anchor, reach = mod1(j, m), (i - j) % m
        else:
            anchor, reach = mod1(i, m), (j - i) % m
        return cls(anchor, reach or m, colour, m)

    @property
    def source(self) -> int:
        if self.colour is Colour.BLUE:
            return mod1(self.anchor + self.reach, self.m)
        return self.anchor

    @property
    def target(self) -> int:
        if self.colour is Colour.BLUE:
            return self.anchor
        return mod1(self.anchor + self.reach, self.m)

    @property
    def chord(self) -> tuple[int, int]:
        """Underlying unoriented chord as a sorted vertex pair."""
        a, b = self.source, self.target
        return (a, b) if a <= b else (b, a)

    @property
    def is_boundary(self) -> bool:
        return self.reach in (1, self.m - 1, self.m)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.anchor, self.reach, self.colour.rank)

    def __lt__(self, other: "Diagonal") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"[{self.source},{self.target}]{self.colour.value}"

    def __repr__(self) -> str:
        return f"Diagonal({self})"


_DIAG_RE = re.compile(r"^\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*([RBP])\s*$")


def parse_diagonal(text: str, m: int) -> Diagonal:
    """Parse ``"[i,j]R"`` style notation (1-based vertices)."""
    match = _DIAG_RE.match(text)
    if match is None:
        raise SpecError(f"cannot parse diagonal {text!r}")
    i, j, c = int(match[1]), int(match[2]), match[3]
    if not (1 <= i <= m and 1 <= j <= m):
        raise SpecError(f"vertex out of range in {text!r} for m={m}")
    return Diagonal.of(i, j, c, m)


@dataclass(frozen=True)
class DiagonalSet:
    spec: PolygonSpec
    members: tuple[Diagonal, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, d) -> bool:
        return d in self._index

    @cached_property
    def _index(self) -> dict[Diagonal, int]:
        return {d: i for i, d in enumerate(self.members)}

    def index(self, d: Diagonal) -> int:
        return self._index[d]

    def slice(self, anchor: int) -> tuple[Diagonal, ...]:
        return tuple(d for d in self.members if d.anchor == anchor)


def slice_diagonal(spec: PolygonSpec, anchor: int, v: tuple[Colour, int]) -> Diagonal:
    c, a = v
    return Diagonal(mod1(anchor, spec.m), a, c, spec.m)


def build_diagonal_set(spec: PolygonSpec) -> DiagonalSet:
    """The generating set Pi_{r,s,t}, sorted by (anchor, reach, colour)."""
    members = [slice_diagonal(spec, i, v) for i in range(1, spec.m + 1)
               for v in spec.shape.tree_vertices]
    if not spec.relaxed:
        bad = [d for d in members if d.is_boundary]
        if bad:
            raise SpecError(f"boundary segments generated: {bad[:3]}")
    if len(set(members)) != len(members):
        raise SpecError(f"diagonals of {spec} are not pairwise distinct")
    return DiagonalSet(spec, tuple(sorted(members)))


def in_first_slice(d: Diagonal) -> bool:
    return d.anchor == 1


def crosses(a: Diagonal, b: Diagonal) -> bool:
    """Interior crossing of the underlying chords; colour and orientation ignored."""
    if a.m != b.m:
        raise SpecError("diagonals live in polygons of different size")
    p, q = a.chord
    u, v = b.chord
    if len({p, q, u, v}) < 4:
        return False
    return (p < u < q) != (p < v < q)


def rho(d: Diagonal) -> Diagonal:
    """Simultaneous change of colour and orientation; paired diagonals are fixed."""
    if d.colour is Colour.PAIRED:
        return d
    other = Colour.BLUE if d.colour is Colour.RED else Colour.RED
    return Diagonal(d.anchor, d.reach, other, d.m)


def tau(d: Diagonal, spec: PolygonSpec) -> Diagonal:
    """Anticlockwise rotation; on the first slice of a Moebius quiver followed by rho."""
    _check_member(d, spec)
    out = Diagonal(mod1(d.anchor - 1, spec.m), d.reach, d.colour, spec.m)
    if spec.mobius and d.anchor == 1:
        out = rho(out)
    return out


def tau_inverse(d: Diagonal, spec: PolygonSpec) -> Diagonal:
    _check_member(d, spec)
    out = Diagonal(mod1(d.anchor + 1, spec.m), d.reach, d.colour, spec.m)
    if spec.mobius and d.anchor == spec.m:
        out = rho(out)
    return out


def _check_member(d: Diagonal, spec: PolygonSpec) -> None:
    if d.m != spec.m or (d.colour, d.reach) not in set(spec.shape.tree_vertices):
        raise SpecError(f"{d} is not in the diagonal set of {spec}")


def sigma(i: int, d: Diagonal) -> Diagonal:
    """Reflection of the heptagon along the axis through vertex i, then orientation switch.

    The two single diagonals [i+1, i-1]_R and [i-1, i+1]_B are sent to their
    rho-images instead.
    """
    if d.m != 7:
        raise SpecError("sigma is only defined on the heptagon")
    m = d.m
    if d.colour is not Colour.PAIRED and d.chord == tuple(sorted((mod1(i - 1, m), mod1(i + 1, m)))):
        return rho(d)

    def refl(v: int) -> int:
        return mod1(2 * i - v, m)

    return Diagonal.of(refl(d.target), refl(d.source), d.colour, m)
