"""
Surfaces as polygons glued along pairs of sides.

Each polygon is a named cyclic list of side labels, listed counterclockwise.
Side labels are unique across the surface.  A gluing pairs two sides; an
ordinary pair is identified with orientation reversal (the orientable way),
a ``twisted`` pair without it.  Sides left unpaired form the boundary.

Text format (one record per line, ``#`` starts a comment)::

    polygon D1 a b c d
    glue b x
    glue c y twisted
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .braids import BraidWord


class SurfaceError(ValueError):
    pass


class NonOrientableError(SurfaceError):
    pass


Corner = tuple[int, int]  # (polygon index, side index); the corner where that side starts


@dataclass(frozen=True)
class CombinatorialSurface:
    names: tuple[str, ...]
    polygons: tuple[tuple[str, ...], ...]
    pairs: tuple[tuple[str, str], ...]  # orientation-reversing identifications

    def __post_init__(self) -> None:
        where: dict[str, tuple[int, int]] = {}
        for p, sides in enumerate(self.polygons):
            for j, label in enumerate(sides):
                where[label] = (p, j)
        partner: dict[str, str] = {}
        for a, b in self.pairs:
            partner[a] = b
            partner[b] = a
        object.__setattr__(self, "_where", where)
        object.__setattr__(self, "_partner", partner)

    def side(self, label: str) -> tuple[int, int]:
        return self._where[label]

    def partner(self, label: str) -> str | None:
        return self._partner.get(label)

    def polygon(self, name: str) -> tuple[str, ...]:
        return self.polygons[self.names.index(name)]

    def sides(self) -> Iterable[str]:
        for sides in self.polygons:
            yield from sides

    def boundary_sides(self) -> list[str]:
        return [s for s in self.sides() if s not in self._partner]

    def renamed(self, prefix: str) -> CombinatorialSurface:
        return CombinatorialSurface(
            tuple(prefix + n for n in self.names),
            tuple(tuple(prefix + s for s in sides) for sides in self.polygons),
            tuple((prefix + a, prefix + b) for a, b in self.pairs),
        )


def build_surface(
    polygons: Mapping[str, Sequence[str]] | Sequence[tuple[str, Sequence[str]]],
    gluing: Iterable[tuple[str, str] | tuple[str, str, bool]] = (),
) -> CombinatorialSurface:
    """
    Validate polygons and gluings and return an oriented surface.

    Twisted pairs are accepted when flipping some polygons makes every
    identification orientation-reversing; the returned surface has those
    polygons flipped and no twisted pairs left.  Otherwise
    :class:`NonOrientableError` is raised.
    """
    items = list(polygons.items()) if isinstance(polygons, Mapping) else list(polygons)
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise SurfaceError("polygon names must be unique")
    where: dict[str, int] = {}
    for p, (name, sides) in enumerate(items):
        if not sides:
            raise SurfaceError(f"polygon {name!r} has no sides")
        for s in sides:
            if s in where:
                raise SurfaceError(f"side label {s!r} used more than once")
            where[s] = p

    pairs: list[tuple[str, str, bool]] = []
    used: set[str] = set()
    for g in gluing:
        a, b, twisted = (g[0], g[1], bool(g[2])) if len(g) == 3 else (g[0], g[1], False)
        for s in (a, b):
            if s not in where:
                raise SurfaceError(f"gluing refers to unknown side {s!r}")
            if s in used:
                raise SurfaceError(f"side {s!r} glued more than once")
        if a == b:
            raise SurfaceError(f"side {a!r} glued to itself")
        used.update((a, b))
        pairs.append((a, b, twisted))

    # orientation sign per polygon: an untwisted pair needs equal signs, a twisted one opposite
    adj: dict[int, list[tuple[int, bool]]] = {p: [] for p in range(len(items))}
    for a, b, twisted in pairs:
        adj[where[a]].append((where[b], twisted))
        adj[where[b]].append((where[a], twisted))
    sign: dict[int, int] = {}
    for start in range(len(items)):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            p = stack.pop()
            for q, twisted in adj[p]:
                want = -sign[p] if twisted else sign[p]
                if q not in sign:
                    sign[q] = want
                    stack.append(q)
                elif sign[q] != want:
                    raise NonOrientableError("the gluing pattern is not orientable")

    out_polygons = []
    for p, (_, sides) in enumerate(items):
        sides = tuple(sides)
        out_polygons.append(sides if sign[p] == 1 else sides[::-1])
    return CombinatorialSurface(tuple(names), tuple(out_polygons), tuple((a, b) for a, b, _ in pairs))


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_char: int
    boundary_components: int
    genus: int
    connected: bool
    components: tuple[SurfaceInvariants, ...] = ()


class _Union:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _successor(surface: CombinatorialSurface, corner: Corner) -> Corner | None:
    """Next corner around a vertex: across the side leaving ``corner``, if it is glued."""
    p, j = corner
    other = surface.partner(surface.polygons[p][j])
    if other is None:
        return None
    q, k = surface.side(other)
    return (q, (k + 1) % len(surface.polygons[q]))


def boundary_cycles(surface: CombinatorialSurface) -> list[list[str]]:
    """Unpaired sides grouped into boundary circles, each traversed in order."""
    boundary = surface.boundary_sides()
    seen: set[str] = set()
    cycles = []
    for start in boundary:
        if start in seen:
            continue
        cycle = []
        label = start
        while label not in seen:
            seen.add(label)
            cycle.append(label)
            p, j = surface.side(label)
            corner: Corner = (p, (j + 1) % len(surface.polygons[p]))
            while True:
                nxt = _successor(surface, corner)
                if nxt is None:
                    break
                corner = nxt
            label = surface.polygons[corner[0]][corner[1]]
        cycles.append(cycle)
    return cycles


def _vertex_classes(surface: CombinatorialSurface) -> _Union:
    corners = [(p, j) for p, sides in enumerate(surface.polygons) for j in range(len(sides))]
    uf = _Union(corners)
    for c in corners:
        nxt = _successor(surface, c)
        if nxt is not None:
            uf.union(c, nxt)
    return uf


def _polygon_components(surface: CombinatorialSurface) -> list[list[int]]:
    uf = _Union(range(len(surface.polygons)))
    for a, b in surface.pairs:
        uf.union(surface.side(a)[0], surface.side(b)[0])
    groups: dict[int, list[int]] = {}
    for p in range(len(surface.polygons)):
        groups.setdefault(uf.find(p), []).append(p)
    return list(groups.values())


def surface_invariants(surface: CombinatorialSurface) -> SurfaceInvariants:
    """
    Euler characteristic, boundary count and genus.  For a disconnected
    surface the totals are returned with ``connected=False`` and the
    per-component values in ``components``.
    """
    vertices = _vertex_classes(surface)
    cycles = boundary_cycles(surface)
    comps = _polygon_components(surface)
    comp_of = {p: k for k, ps in enumerate(comps) for p in ps}

    v = [set() for _ in comps]
    e = [0] * len(comps)
    f = [0] * len(comps)
    b = [0] * len(comps)
    for p, sides in enumerate(surface.polygons):
        k = comp_of[p]
        f[k] += 1
        for j in range(len(sides)):
            v[k].add(vertices.find((p, j)))
    for label in surface.sides():
        k = comp_of[surface.side(label)[0]]
        # glued pairs count once
        e[k] += 1 if surface.partner(label) is None else 0.5
    for cycle in cycles:
        b[comp_of[surface.side(cycle[0])[0]]] += 1

    per = []
    for k in range(len(comps)):
        chi = len(v[k]) - int(e[k]) + f[k]
        twice_genus = 2 - chi - b[k]
        assert twice_genus % 2 == 0 and twice_genus >= 0, (chi, b[k])
        per.append(SurfaceInvariants(chi, b[k], twice_genus // 2, True))
    if len(per) == 1:
        return per[0]
    return SurfaceInvariants(
        sum(c.euler_char for c in per),
        sum(c.boundary_components for c in per),
        sum(c.genus for c in per),
        False,
        tuple(per),
    )


def cut_along(surface: CombinatorialSurface, label: str) -> CombinatorialSurface:
    other = surface.partner(label)
    if other is None:
        raise SurfaceError(f"side {label!r} is not glued")
    pairs = tuple(pr for pr in surface.pairs if label not in pr)
    return CombinatorialSurface(surface.names, surface.polygons, pairs)


def is_proper_arc(surface: CombinatorialSurface, label: str) -> bool:
    """Whether the glued side ``label`` is an arc with both endpoints on the boundary."""
    if surface.partner(label) is None:
        return False
    p, j = surface.side(label)
    n = len(surface.polygons[p])
    for corner in ((p, j), (p, (j + 1) % n)):
        # a boundary vertex is an open chain of corners; an interior one closes up
        c = corner
        while True:
            c = _successor(surface, c)
            if c is None:
                break
            if c == corner:
                return False
    return True


def is_essential_arc(surface: CombinatorialSurface, label: str) -> bool:
    """
    Whether the proper arc along glued side ``label`` is essential, i.e.
    does not cut off a disk.
    """
    if not is_proper_arc(surface, label):
        raise SurfaceError(f"side {label!r} is not a proper arc")
    cut = cut_along(surface, label)
    before = len(_polygon_components(surface))
    comps = _polygon_components(cut)
    if len(comps) == before:
        return True
    for ps in comps:
        keep = set(ps)
        sub = CombinatorialSurface(
            tuple(cut.names[p] for p in ps),
            tuple(cut.polygons[p] for p in ps),
            tuple(pr for pr in cut.pairs if cut.side(pr[0])[0] in keep),
        )
        inv = surface_invariants(sub)
        if inv.euler_char == 1 and inv.boundary_components == 1:
            if label in sub.sides() or surface.partner(label) in sub.sides():
                return False
    return True


def insert_arc_region(surface: CombinatorialSurface, label: str, name: str) -> CombinatorialSurface:
    """
    Thicken the proper arc along glued side ``label`` into a new square
    polygon ``name``.  Its sides ``name.0 .. name.3`` alternate boundary,
    interior, boundary, interior.
    """
    if not is_proper_arc(surface, label):
        raise SurfaceError(f"side {label!r} is not a proper arc")
    other = surface.partner(label)
    q = [f"{name}.{t}" for t in range(4)]
    pairs = tuple(pr for pr in surface.pairs if label not in pr) + ((q[1], label), (q[3], other))
    return CombinatorialSurface(surface.names + (name,), surface.polygons + (tuple(q),), pairs)


def disjoint_union(surfaces: Iterable[CombinatorialSurface]) -> CombinatorialSurface:
    names: tuple[str, ...] = ()
    polygons: tuple[tuple[str, ...], ...] = ()
    pairs: tuple[tuple[str, str], ...] = ()
    for s in surfaces:
        names += s.names
        polygons += s.polygons
        pairs += s.pairs
    return CombinatorialSurface(names, polygons, pairs)


def glue_faces(
    surface: CombinatorialSurface,
    face_a: str,
    face_b: str,
    rotation: int = 0,
) -> CombinatorialSurface:
    """
    Murasugi-sum two polygons of one (disconnected) surface.

    Side ``j`` of ``face_a`` is identified with side ``j + rotation`` of
    ``face_b``.  Exactly one of each matched pair must be glued in its own
    surface, so the faces' sides alternate between the two pages'
    boundaries.  ``face_b`` disappears; its glued sides are re-glued to the
    matching sides of ``face_a``.
    """
    a = surface.polygon(face_a)
    b = surface.polygon(face_b)
    if len(a) != len(b):
        raise SurfaceError(f"faces {face_a!r} and {face_b!r} have different side counts")
    if len(a) % 2:
        raise SurfaceError(f"summing region {face_a!r} has an odd number of sides")
    m = len(a)
    pairs = {frozenset(pr) for pr in surface.pairs}
    for j in range(m):
        sa, sb = a[j], b[(j + rotation) % m]
        pa, pb = surface.partner(sa), surface.partner(sb)
        if (pa is None) == (pb is None):
            raise SurfaceError(
                f"sides {sa!r} and {sb!r} must lie on the boundary of exactly one page"
            )
        if pb is not None:
            if pb in b:
                raise SurfaceError(f"face {face_b!r} is glued to itself")
            pairs.discard(frozenset((sb, pb)))
            pairs.add(frozenset((sa, pb)))
    k = surface.names.index(face_b)
    ordered = []
    for pr in surface.pairs:
        if frozenset(pr) in pairs:
            ordered.append(pr)
            pairs.discard(frozenset(pr))
    ordered.extend(tuple(sorted(pr)) for pr in sorted(pairs, key=sorted))
    return CombinatorialSurface(
        surface.names[:k] + surface.names[k + 1 :],
        surface.polygons[:k] + surface.polygons[k + 1 :],
        tuple(ordered),
    )


def seifert_surface_of_word(word: BraidWord) -> CombinatorialSurface:
    """
    One disk per strand and one band per letter.  Around each disk the bands
    to the strand below and above attach in word order.
    """
    polygons: list[tuple[str, tuple[str, ...]]] = []
    pairs = []
    for d in range(1, word.strands + 1):
        sides: list[str] = []
        for t, x in enumerate(word.letters):
            if x.index in (d - 1, d):
                sides += [f"D{d}.a{t}", f"D{d}.f{t}"]
        polygons.append((f"D{d}", tuple(sides) if sides else (f"D{d}.f",)))
    for t, x in enumerate(word.letters):
        polygons.append((f"b{t}", (f"b{t}.lo", f"b{t}.r", f"b{t}.hi", f"b{t}.l")))
        pairs.append((f"b{t}.lo", f"D{x.index}.a{t}"))
        pairs.append((f"b{t}.hi", f"D{x.index + 1}.a{t}"))
    return build_surface(polygons, pairs)


def dump_surface(surface: CombinatorialSurface) -> str:
    lines = ["# homobraid surface v1"]
    for name, sides in zip(surface.names, surface.polygons):
        lines.append(" ".join(["polygon", name, *sides]))
    for a, b in surface.pairs:
        lines.append(f"glue {a} {b}")
    return "\n".join(lines) + "\n"


def parse_surface(text: str) -> CombinatorialSurface:
    polygons = []
    gluing = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "polygon" and len(rest) >= 2:
            polygons.append((rest[0], tuple(rest[1:])))
        elif head == "glue" and len(rest) == 2:
            gluing.append((rest[0], rest[1]))
        elif head == "glue" and len(rest) == 3 and rest[2] == "twisted":
            gluing.append((rest[0], rest[1], True))
        else:
            raise SurfaceError(f"line {lineno}: cannot parse {raw!r}")
    return build_surface(polygons, gluing)
