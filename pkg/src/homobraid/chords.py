"""
Chords in a disk or polygon, compared at shared endpoints.

Chords are unordered endpoint pairs of boundary points listed in
counterclockwise order.  At a shared endpoint ``p`` the chord whose other
endpoint comes first when reading counterclockwise from just after ``p`` is
the one further to the right: standing at ``p`` and facing into the disk, it
points more to the right hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

Chord = frozenset


class ChordConfigError(ValueError):
    """Raised with ``clause`` naming the violated condition."""

    def __init__(self, clause: str, message: str):
        self.clause = clause
        super().__init__(f"{clause}: {message}")


def chord(p: Hashable, q: Hashable) -> Chord:
    return frozenset((p, q))


def _other(c: Chord, p: Hashable) -> Hashable:
    (q,) = c - {p}
    return q


def _crosses(c: Chord, d: Chord, pos: dict) -> bool:
    a, b = sorted(pos[x] for x in c)
    x, y = sorted(pos[x] for x in d)
    return (a < x < b) != (a < y < b) and len({a, b, x, y}) == 4


def _fmt(c: Chord) -> str:
    return "-".join(map(str, sorted(c, key=str)))


@dataclass(frozen=True)
class ChordConfig:
    points: tuple
    chords_a: frozenset
    chords_b: frozenset
    sides: tuple | None = None  # side index of each point, aligned with ``points``

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ChordConfigError("points", "boundary points must be distinct")
        pos = {p: i for i, p in enumerate(self.points)}
        for name, chords in (("A", self.chords_a), ("B", self.chords_b)):
            seen: set = set()
            for c in chords:
                if len(c) != 2:
                    raise ChordConfigError("chord", f"{name} chord {_fmt(c)} needs two distinct endpoints")
                for x in c:
                    if x not in pos:
                        raise ChordConfigError("points", f"{name} chord endpoint {x} is not a boundary point")
                    if x in seen:
                        raise ChordConfigError("disjointness", f"two {name} chords share endpoint {x}")
                    seen.add(x)
            for c in chords:
                for d in chords:
                    if c != d and _crosses(c, d, pos):
                        raise ChordConfigError("disjointness", f"{name} chords {_fmt(c)} and {_fmt(d)} cross")
        ends_a = set().union(*self.chords_a) if self.chords_a else set()
        ends_b = set().union(*self.chords_b) if self.chords_b else set()
        if ends_a != ends_b:
            raise ChordConfigError("endpoints", "A and B must have the same set of endpoints")
        if self.sides is not None:
            if len(self.sides) != len(self.points):
                raise ChordConfigError("sides", "every point needs a side")
            changes = sum(self.sides[i] != self.sides[i - 1] for i in range(len(self.sides)))
            if len(set(self.sides)) > 1 and changes != len(set(self.sides)):
                raise ChordConfigError("sides", "each side must be a contiguous run of points")
            side = dict(zip(self.points, self.sides))
            for name, chords in (("A", self.chords_a), ("B", self.chords_b)):
                for c in chords:
                    p, q = tuple(c)
                    if side[p] == side[q]:
                        raise ChordConfigError("sides", f"{name} chord {_fmt(c)} joins two points of one side")

    @property
    def polygon(self) -> bool:
        return self.sides is not None

    def side_of(self, p: Hashable) -> int | None:
        if self.sides is None:
            return None
        return self.sides[self.points.index(p)]

    def at(self, chords: Iterable[Chord], p: Hashable) -> Chord:
        return next(c for c in chords if p in c)

    def swapped(self) -> ChordConfig:
        return ChordConfig(self.points, self.chords_b, self.chords_a, self.sides)


def make_config(
    points: Sequence[Hashable],
    chords_a: Iterable[tuple],
    chords_b: Iterable[tuple],
    sides: Sequence[int] | None = None,
) -> ChordConfig:
    return ChordConfig(
        tuple(points),
        frozenset(chord(*c) for c in chords_a),
        frozenset(chord(*c) for c in chords_b),
        tuple(sides) if sides is not None else None,
    )


def is_right_of(a: Chord, b: Chord, p: Hashable, order: Sequence[Hashable]) -> bool:
    """Whether ``a`` is to the right of ``b`` at their common endpoint ``p``."""
    if a == b or a & b != {p}:
        raise ValueError(f"chords {_fmt(a)} and {_fmt(b)} do not share exactly the endpoint {p}")
    n = len(order)
    i = order.index(p)

    def after_p(x: Hashable) -> int:
        return (order.index(x) - i) % n

    return after_p(_other(a, p)) < after_p(_other(b, p))


@dataclass(frozen=True)
class Witness:
    a: Chord
    b: Chord
    p: Hashable

    def __str__(self) -> str:
        return f"a={_fmt(self.a)} b={_fmt(self.b)} p={self.p}"


@dataclass(frozen=True)
class WitnessPair:
    right: Witness  # b right of a at p
    left: Witness  # b left of a at p
    different_sides: bool = False


class Equal:
    """Result of :func:`find_witnesses` when both chord sets coincide."""

    def __repr__(self) -> str:
        return "Equal"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Equal)

    def __hash__(self) -> int:
        return 0


EQUAL = Equal()


def incidences(cfg: ChordConfig) -> Iterator[Witness]:
    """Each endpoint where the A chord and the B chord differ, in boundary order."""
    for p in cfg.points:
        try:
            a = cfg.at(cfg.chords_a, p)
        except StopIteration:
            continue
        b = cfg.at(cfg.chords_b, p)
        if a != b:
            yield Witness(a, b, p)


def _ends_apart(cfg: ChordConfig, w: Witness) -> bool:
    return cfg.side_of(_other(w.a, w.p)) != cfg.side_of(_other(w.b, w.p))


def check_witness(cfg: ChordConfig, w: Witness, right: bool) -> bool:
    """Re-check a witness from scratch, including the side condition in polygon mode."""
    if w.a not in cfg.chords_a or w.b not in cfg.chords_b or w.a & w.b != {w.p}:
        return False
    if is_right_of(w.b, w.a, w.p, cfg.points) != right:
        return False
    return not cfg.polygon or _ends_apart(cfg, w)


def find_witnesses(cfg: ChordConfig) -> Equal | WitnessPair:
    """
    ``EQUAL`` if the chord sets agree, otherwise the first right and first
    left incidence met when scanning the boundary points in order.
    """
    if cfg.chords_a == cfg.chords_b:
        return EQUAL
    right = left = None
    for w in incidences(cfg):
        if cfg.polygon and not _ends_apart(cfg, w):
            continue
        if is_right_of(w.b, w.a, w.p, cfg.points):
            right = right or w
        else:
            left = left or w
        if right and left:
            return WitnessPair(right, left, cfg.polygon)
    raise AssertionError(f"no witness pair for a valid configuration with A != B: {cfg}")


# -- configuration files ----------------------------------------------------


def parse_chord_config(text: str) -> ChordConfig:
    """
    Read a configuration::

        points: 1 2 3 4
        sides: 0 0 1 1        (optional)
        A: 1-2 3-4
        B: 1-4 2-3

    ``#`` starts a comment.
    """
    fields: dict[str, list[str]] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("points", "sides", "A", "B"):
            raise ChordConfigError("syntax", f"line {n}: expected 'points:', 'sides:', 'A:' or 'B:'")
        if key in fields:
            raise ChordConfigError("syntax", f"line {n}: {key} given twice")
        fields[key] = rest.split()
    for key in ("points", "A", "B"):
        if key not in fields:
            raise ChordConfigError("syntax", f"missing '{key}:' line")
    points = fields["points"]

    def chords(key: str) -> list[tuple[str, str]]:
        out = []
        for tok in fields[key]:
            ends = tok.split("-")
            if len(ends) != 2 or not all(ends):
                raise ChordConfigError("syntax", f"{key}: chord {tok!r} is not of the form p-q")
            out.append((ends[0], ends[1]))
        return out

    sides = None
    if "sides" in fields:
        try:
            sides = [int(s) for s in fields["sides"]]
        except ValueError:
            raise ChordConfigError("syntax", "sides must be integers") from None
    return make_config(points, chords("A"), chords("B"), sides)


def dump_chord_config(cfg: ChordConfig) -> str:
    lines = ["points: " + " ".join(map(str, cfg.points))]
    if cfg.sides is not None:
        lines.append("sides: " + " ".join(map(str, cfg.sides)))
    order = {p: i for i, p in enumerate(cfg.points)}

    def fmt(chords: frozenset) -> str:
        pairs = sorted((tuple(sorted(c, key=order.get)) for c in chords), key=lambda pr: order[pr[0]])
        return " ".join(f"{p}-{q}" for p, q in pairs)

    lines.append("A: " + fmt(cfg.chords_a))
    lines.append("B: " + fmt(cfg.chords_b))
    return "\n".join(lines) + "\n"


# -- enumeration ------------------------------------------------------------


def noncrossing_matchings(points: Sequence[Hashable]) -> Iterator[frozenset]:
    """All perfect non-crossing matchings of points in circular order."""
    if not points:
        yield frozenset()
        return
    first = points[0]
    for k in range(1, len(points), 2):
        for inside in noncrossing_matchings(points[1:k]):
            for outside in noncrossing_matchings(points[k + 1 :]):
                yield inside | outside | {chord(first, points[k])}
