"""
Trees of open books.

A vertex is an open book known only symbolically: a page (a
:class:`~homobraid.surfaces.CombinatorialSurface`) and a monodromy recorded
as a certified veering label plus a word of signed twists.  An edge carries
a summing region: a polygon face present in both endpoint pages whose sides
alternate between the two pages' boundaries.  Regions at a vertex are
distinct faces of its page and never share a side.

Veering labels are never computed from a monodromy.  Torus-link blocks and
Hopf bands carry the veering of their sign; merged blocks inherit the common
label of their members.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from .braids import (
    BraidWord,
    NotHomogeneousError,
    SplitWordError,
    cyclic_blocks,
    homogeneity_profile,
    is_split,
    parse_word,
    render_word,
    seesaw_profile,
    subword,
    torus_exponents,
)
from .surfaces import (
    CombinatorialSurface,
    build_surface,
    disjoint_union,
    glue_faces,
    insert_arc_region,
    is_essential_arc,
    is_proper_arc,
)
from .traces import Commutation, commutation


class TreeError(ValueError):
    pass


class DestabilizableError(TreeError):
    pass


class UnknownVeeringError(TreeError):
    pass


class InvalidGrowingError(TreeError):
    pass


class RegionOverlapError(TreeError):
    pass


class NonEssentialRegionError(TreeError):
    pass


class NonEssentialEdgeError(TreeError):
    def __init__(self, edge: Edge):
        self.edge = edge
        where = f" at strand {edge.region.disk}" if edge.region.disk is not None else ""
        super().__init__(f"summing region of edge {edge.a}-{edge.b}{where} is not essential ({edge.region.sides} sides)")

    @property
    def strand(self) -> int | None:
        return self.edge.region.disk


class CertificateError(TreeError):
    pass


class Kind(enum.Enum):
    TORUS_BLOCK = "torusBlock"
    HOPF_BAND = "hopfBand"
    COMPOSITE = "composite"


class Veering(enum.Enum):
    RIGHT = "strictlyRight"
    LEFT = "strictlyLeft"
    UNKNOWN = "unknown"

    @property
    def short(self) -> str:
        return {"strictlyRight": "R", "strictlyLeft": "L", "unknown": "?"}[self.value]

    @classmethod
    def of_sign(cls, sign: int) -> Veering:
        return cls.RIGHT if sign > 0 else cls.LEFT


class Provenance(enum.Enum):
    SEESAW = "seesawAtLeastFour"
    ANNULUS = "annulusCocore"
    ASSERTED = "assertedByInput"
    ARC_CHECK = "arcCutCheck"
    NONE = "none"


@dataclass(frozen=True)
class TwistSymbol:
    vertex: str
    index: int
    sign: int

    def __str__(self) -> str:
        return f"{self.vertex}.{self.index}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class OpenBookVertex:
    id: str
    kind: Kind
    veering: Veering
    page: CombinatorialSurface = field(repr=False, compare=False)
    k: int | None = None
    sign: int | None = None
    members: tuple[str, ...] = ()
    source: str | None = None
    twists: tuple[TwistSymbol, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is Kind.TORUS_BLOCK:
            if self.k is None or abs(self.k) < 2:
                raise TreeError(f"torus block {self.id} needs |k| >= 2, got {self.k}")
            signed = self.k
        elif self.kind is Kind.HOPF_BAND:
            if self.sign not in (1, -1):
                raise TreeError(f"Hopf band {self.id} needs sign +1 or -1")
            signed = self.sign
        else:
            return
        if self.veering is not Veering.of_sign(signed):
            raise TreeError(f"vertex {self.id} of sign {signed:+d} cannot be {self.veering.value}")

    def expansion(self) -> tuple[TwistSymbol, ...]:
        if self.kind is Kind.TORUS_BLOCK:
            s = 1 if self.k > 0 else -1
            return tuple(TwistSymbol(self.id, j, s) for j in range(1, abs(self.k)))
        if self.kind is Kind.HOPF_BAND:
            return (TwistSymbol(self.id, 1, self.sign),)
        return self.twists


@dataclass(frozen=True)
class SummingRegion:
    sides: int
    face_a: str
    face_b: str
    rotation: int  # side j of face_a meets side j + rotation of face_b
    essential: bool
    provenance: Provenance
    placement: str = ""
    disk: int | None = None  # braid trees: the strand whose disk holds the region


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    region: SummingRegion


@dataclass(frozen=True)
class TreeOfOpenBooks:
    vertices: tuple[OpenBookVertex, ...]
    edges: tuple[Edge, ...] = ()
    conclusions: tuple[str, ...] = ()
    source_word: str | None = None

    def __post_init__(self) -> None:
        ids = [v.id for v in self.vertices]
        if not ids:
            raise TreeError("a tree of open books needs a vertex")
        if len(set(ids)) != len(ids):
            raise TreeError("vertex ids must be unique")
        if len(self.edges) != len(ids) - 1:
            raise TreeError(f"{len(ids)} vertices need {len(ids) - 1} edges, got {len(self.edges)}")
        index = {v.id: v for v in self.vertices}
        adj: dict[str, list[str]] = {i: [] for i in ids}
        faces: dict[str, set[str]] = {i: set() for i in ids}
        for e in self.edges:
            for end, face in ((e.a, e.region.face_a), (e.b, e.region.face_b)):
                if end not in index:
                    raise TreeError(f"edge endpoint {end!r} is not a vertex")
                page = index[end].page
                if face not in page.names:
                    raise TreeError(f"vertex {end} has no region face {face!r}")
                if len(page.polygon(face)) != e.region.sides:
                    raise TreeError(f"region {face!r} on {end} does not have {e.region.sides} sides")
                if face in faces[end]:
                    raise RegionOverlapError(f"region {face!r} on {end} used by two edges")
                faces[end].add(face)
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(ids):
            raise TreeError("the underlying graph is not connected")
        for vid, fs in faces.items():
            page = index[vid].page
            for f in fs:
                for s in page.polygon(f):
                    other = page.partner(s)
                    if other is not None and page.names[page.side(other)[0]] in fs:
                        raise RegionOverlapError(f"regions on {vid} touch along side {s!r}")
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", {k: tuple(v) for k, v in adj.items()})

    def vertex(self, vid: str) -> OpenBookVertex:
        return self._index[vid]

    def neighbors(self, vid: str) -> tuple[str, ...]:
        return self._adj[vid]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def edges_at(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if vid in (e.a, e.b)]

    def commuting(self) -> Commutation:
        """Pairs of vertices whose monodromies have disjoint support."""
        ids = self.ids
        return commutation(
            (u, w) for i, u in enumerate(ids) for w in ids[i + 1 :] if w not in self._adj[u]
        )


# -- pages ------------------------------------------------------------------


def page_of_tree(tree: TreeOfOpenBooks) -> CombinatorialSurface:
    """Glue the vertex pages along the edge regions; labels get a ``<vertex>:`` prefix."""
    total = disjoint_union(v.page.renamed(f"{v.id}:") for v in tree.vertices)
    for e in tree.edges:
        r = e.region
        total = glue_faces(total, f"{e.a}:{r.face_a}", f"{e.b}:{r.face_b}", r.rotation)
    return total


def annulus_page(regions: int) -> CombinatorialSurface:
    """
    An annulus cut into squares around its core.  With ``regions > 0`` the
    squares ``P0 .. P{regions-1}`` are neighbourhoods of cocores, in
    counterclockwise order; sides 1 and 3 of each are interior.
    """
    if regions == 0:
        return build_surface({"G0": ("G0.0", "G0.1", "G0.2", "G0.3")}, [("G0.1", "G0.3")])
    polygons = {}
    pairs = []
    for j in range(regions):
        polygons[f"P{j}"] = tuple(f"P{j}.{t}" for t in range(4))
        polygons[f"G{j}"] = tuple(f"G{j}.{t}" for t in range(4))
        pairs.append((f"P{j}.1", f"G{j}.3"))
        pairs.append((f"G{j}.1", f"P{(j + 1) % regions}.3"))
    return build_surface(polygons, pairs)


def _braid_vertex_page(word: BraidWord, i: int) -> CombinatorialSurface:
    """
    Page of the torus-link piece for generator ``i``: disks ``D_i`` and
    ``D_{i+1}`` plus one band per letter σ_i.  A disk shared with a
    neighbouring generator is cut by chords into a region face ``R{m}`` and
    caps, one cap per cyclic block; this page keeps only the caps of its own
    blocks.
    """
    n = word.strands
    polygons: list[tuple[str, tuple[str, ...]]] = []
    pairs: list[tuple[str, str]] = []
    for m in (i, i + 1):
        if 2 <= m <= n - 1:
            blocks = cyclic_blocks(word, m)
            region = f"R{m}"
            polygons.append((region, tuple(f"{region}.c{j}" for j in range(len(blocks)))))
            for j, (g, positions) in enumerate(blocks):
                if g != i:
                    continue
                cap = f"D{m}.cap{j}"
                sides = [f"{cap}.c"]
                for t in positions:
                    sides += [f"D{m}.a{t}", f"D{m}.f{t}"]
                polygons.append((cap, tuple(sides)))
                pairs.append((f"{region}.c{j}", f"{cap}.c"))
        else:
            sides = []
            for t, x in enumerate(word.letters):
                if x.index == i:
                    sides += [f"D{m}.a{t}", f"D{m}.f{t}"]
            polygons.append((f"D{m}", tuple(sides)))
    for t, x in enumerate(word.letters):
        if x.index == i:
            polygons.append((f"b{t}", (f"b{t}.lo", f"b{t}.r", f"b{t}.hi", f"b{t}.l")))
            pairs.append((f"b{t}.lo", f"D{i}.a{t}"))
            pairs.append((f"b{t}.hi", f"D{i + 1}.a{t}"))
    return build_surface(polygons, pairs)


def braid_tree(word: BraidWord) -> TreeOfOpenBooks:
    """
    The line of torus-link pieces ``T(2, k_i)`` of a homogeneous, non-split,
    fully destabilized word, one per generator, summed along the disks of the
    interior strands.
    """
    if not homogeneity_profile(word).is_homogeneous:
        raise NotHomogeneousError(f"{render_word(word)!r} is not homogeneous")
    if word.strands < 2:
        raise TreeError("braid trees need at least two strands")
    if is_split(word):
        raise SplitWordError(f"{render_word(word)!r} is split")
    ks = torus_exponents(word)
    once = [i for i, k in enumerate(ks, 1) if abs(k) == 1]
    if once:
        raise DestabilizableError(f"σ_{once[0]} occurs exactly once; destabilize or factor first")
    vertices = tuple(
        OpenBookVertex(f"s{i}", Kind.TORUS_BLOCK, Veering.of_sign(k), _braid_vertex_page(word, i), k=k)
        for i, k in enumerate(ks, 1)
    )
    seesaw = seesaw_profile(word)
    edges = []
    for m in range(2, word.strands):
        blocks = cyclic_blocks(word, m)
        g = seesaw[m]
        essential = g >= 4
        cuts = ",".join(str(pos[-1]) for _, pos in blocks)
        edges.append(
            Edge(
                f"s{m - 1}",
                f"s{m}",
                SummingRegion(
                    sides=len(blocks),
                    face_a=f"R{m}",
                    face_b=f"R{m}",
                    rotation=0,
                    essential=essential,
                    provenance=Provenance.SEESAW if essential else Provenance.NONE,
                    placement=f"disk {m}, g={g}, block ends after letters {cuts}",
                    disk=m,
                ),
            )
        )
    return TreeOfOpenBooks(vertices, tuple(edges), source_word=render_word(word))


# -- plane trees ------------------------------------------------------------


@dataclass(frozen=True)
class PlaneTree:
    """A ±-labelled tree; the order of ``children`` is the circular order after the parent edge."""

    sign: int
    children: tuple[PlaneTree, ...] = ()

    def __str__(self) -> str:
        return "(" + ("+" if self.sign > 0 else "-") + "".join(map(str, self.children)) + ")"

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def parse_plane_tree(text: str) -> PlaneTree:
    """
    Parse ``(+(+)(-))``: a sign after each opening parenthesis, then the
    children in order.  Whitespace is ignored and ``#`` starts a comment.
    """
    s = re.sub(r"\s+", "", re.sub(r"#[^\n]*", "", text))
    pos = 0

    def node() -> PlaneTree:
        nonlocal pos
        if pos >= len(s) or s[pos] != "(":
            raise TreeError(f"plane tree: expected '(' at offset {pos}")
        pos += 1
        if pos >= len(s) or s[pos] not in "+-":
            raise TreeError(f"plane tree: expected '+' or '-' at offset {pos}")
        sign = 1 if s[pos] == "+" else -1
        pos += 1
        children = []
        while pos < len(s) and s[pos] == "(":
            children.append(node())
        if pos >= len(s) or s[pos] != ")":
            raise TreeError(f"plane tree: expected ')' at offset {pos}")
        pos += 1
        return PlaneTree(sign, tuple(children))

    tree = node()
    if pos != len(s):
        raise TreeError(f"plane tree: trailing input at offset {pos}")
    return tree


def arborescent_tree(plane: PlaneTree) -> TreeOfOpenBooks:
    """
    Hopf bands plumbed along a plane tree.  The regions in each annulus
    follow the circular order of the edges at that vertex, starting with the
    edge to the parent.
    """
    vertices: list[OpenBookVertex] = []
    edges: list[Edge] = []

    def visit(node: PlaneTree, parent: str | None) -> str:
        vid = f"h{len(vertices)}"
        degree = len(node.children) + (parent is not None)
        vertices.append(
            OpenBookVertex(vid, Kind.HOPF_BAND, Veering.of_sign(node.sign), annulus_page(degree), sign=node.sign)
        )
        first = 1 if parent is not None else 0
        for j, child in enumerate(node.children):
            cid = visit(child, vid)
            edges.append(
                Edge(
                    vid,
                    cid,
                    SummingRegion(
                        sides=4,
                        face_a=f"P{first + j}",
                        face_b="P0",
                        rotation=1,
                        essential=True,
                        provenance=Provenance.ANNULUS,
                        placement=f"slot {first + j} of {vid}, slot 0 of {cid}",
                    ),
                )
            )
        return vid

    visit(plane, None)
    return TreeOfOpenBooks(tuple(vertices), tuple(edges))


def _fresh_id(taken: Sequence[str], base: str) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def figure_eight_plumb(
    tree: TreeOfOpenBooks,
    vertex: str,
    arc: str,
    *,
    assert_essential: bool = False,
    fixed_arcs_meet_arc: bool = False,
) -> TreeOfOpenBooks:
    """
    Plumb a positive and then a negative Hopf band in a chain onto ``vertex``
    along the arc given by the glued page side ``arc``.

    The arc is thickened into a new square region of the vertex page.  It
    must not touch the regions already used at that vertex, and must be
    essential: checked by cutting unless the caller asserts it.  Passing
    ``fixed_arcs_meet_arc=True`` asserts that every fixed essential arc of
    the open book meets the arc, which licenses the ``noFixedEssentialArcs``
    conclusion.
    """
    v = tree.vertex(vertex)
    page = v.page
    if not is_proper_arc(page, arc):
        raise TreeError(f"{arc!r} is not an interior arc of the page of {vertex}")
    used = set()
    for e in tree.edges_at(vertex):
        used.add(e.region.face_a if e.a == vertex else e.region.face_b)
    for s in (arc, page.partner(arc)):
        if page.names[page.side(s)[0]] in used:
            raise RegionOverlapError(f"arc {arc!r} touches a region already used at {vertex}")
    if assert_essential:
        provenance = Provenance.ASSERTED
    elif is_essential_arc(page, arc):
        provenance = Provenance.ARC_CHECK
    else:
        raise NonEssentialRegionError(f"arc {arc!r} is boundary parallel in the page of {vertex}")

    k = 0
    while f"Q{k}" in page.names:
        k += 1
    face = f"Q{k}"
    new_v = replace(v, page=insert_arc_region(page, arc, face))
    pid = _fresh_id(tree.ids, "p")
    nid = _fresh_id(tree.ids + (pid,), "n")
    p = OpenBookVertex(pid, Kind.HOPF_BAND, Veering.RIGHT, annulus_page(2), sign=1)
    n = OpenBookVertex(nid, Kind.HOPF_BAND, Veering.LEFT, annulus_page(1), sign=-1)
    vertices = tuple(new_v if u.id == vertex else u for u in tree.vertices) + (p, n)
    edges = tree.edges + (
        Edge(vertex, pid, SummingRegion(4, face, "P0", 1, True, provenance, f"arc {arc} of {vertex}")),
        Edge(pid, nid, SummingRegion(4, "P1", "P0", 1, True, Provenance.ANNULUS, f"cocores of {pid}, {nid}")),
    )
    conclusions = tree.conclusions
    if fixed_arcs_meet_arc:
        conclusions += ("noFixedEssentialArcs",)
    return TreeOfOpenBooks(vertices, edges, conclusions, tree.source_word)


# -- blocks -----------------------------------------------------------------


def _require_veering(tree: TreeOfOpenBooks) -> None:
    unknown = [v.id for v in tree.vertices if v.veering is Veering.UNKNOWN]
    if unknown:
        raise UnknownVeeringError(f"vertices without a strict veering label: {', '.join(unknown)}")


def veering_blocks(tree: TreeOfOpenBooks) -> list[tuple[str, ...]]:
    """Maximal connected sets of vertices with the same veering, members in tree order."""
    _require_veering(tree)
    block_of: dict[str, int] = {}
    blocks: list[list[str]] = []
    for v in tree.vertices:
        if v.id in block_of:
            continue
        k = len(blocks)
        blocks.append([])
        stack = [v.id]
        block_of[v.id] = k
        while stack:
            u = stack.pop()
            for w in tree.neighbors(u):
                if w not in block_of and tree.vertex(w).veering is v.veering:
                    block_of[w] = k
                    stack.append(w)
    for v in tree.vertices:
        blocks[block_of[v.id]].append(v.id)
    return [tuple(b) for b in blocks]


def subtree(tree: TreeOfOpenBooks, members: Sequence[str]) -> TreeOfOpenBooks:
    keep = set(members)
    return TreeOfOpenBooks(
        tuple(v for v in tree.vertices if v.id in keep),
        tuple(e for e in tree.edges if e.a in keep and e.b in keep),
    )


def block_tree(tree: TreeOfOpenBooks) -> TreeOfOpenBooks:
    """
    Contract every maximal same-veering subtree to one composite vertex.

    A composite's page is the glued page of its members, and its veering is
    their common label (an essential sum of strictly right-veering open books
    stays strictly right-veering, likewise for left).
    """
    blocks = veering_blocks(tree)
    name_of: dict[str, str] = {}
    new_vertices = []
    for members in blocks:
        if len(members) == 1:
            name_of[members[0]] = members[0]
            new_vertices.append(tree.vertex(members[0]))
            continue
        sub = subtree(tree, members)
        bid = "+".join(members)
        for m in members:
            name_of[m] = bid
        order = next(growings(sub))
        source = None
        if tree.source_word is not None and all(re.fullmatch(r"s\d+", m) for m in members):
            idx = sorted(int(m[1:]) for m in members)
            word = parse_word(tree.source_word)
            source = render_word(subword(word, idx[0], idx[-1]))
        new_vertices.append(
            OpenBookVertex(
                bid,
                Kind.COMPOSITE,
                tree.vertex(members[0]).veering,
                page_of_tree(sub),
                members=tuple(members),
                source=source,
                twists=tuple(t for m in order for t in tree.vertex(m).expansion()),
            )
        )
    new_edges = []
    for e in tree.edges:
        ba, bb = name_of[e.a], name_of[e.b]
        if ba == bb:
            continue
        r = e.region
        face_a = r.face_a if ba == e.a else f"{e.a}:{r.face_a}"
        face_b = r.face_b if bb == e.b else f"{e.b}:{r.face_b}"
        new_edges.append(Edge(ba, bb, replace(r, face_a=face_a, face_b=face_b)))
    return TreeOfOpenBooks(tuple(new_vertices), tuple(new_edges), tree.conclusions, tree.source_word)


def is_bipartite_by_veering(tree: TreeOfOpenBooks) -> bool:
    return all(tree.vertex(e.a).veering is not tree.vertex(e.b).veering for e in tree.edges)


# -- growings ---------------------------------------------------------------


def growings(tree: TreeOfOpenBooks) -> Iterator[tuple[str, ...]]:
    """Every vertex order in which each prefix spans a subtree."""
    ids = tree.ids
    n = len(ids)

    def extend(order: list[str], grown: set[str]) -> Iterator[tuple[str, ...]]:
        if len(order) == n:
            yield tuple(order)
            return
        for v in ids:
            if v not in grown and any(w in grown for w in tree.neighbors(v)):
                order.append(v)
                grown.add(v)
                yield from extend(order, grown)
                grown.discard(v)
                order.pop()

    for start in ids:
        yield from extend([start], {start})


def is_growing(tree: TreeOfOpenBooks, order: Sequence[str]) -> bool:
    if sorted(order) != sorted(tree.ids):
        return False
    grown = {order[0]}
    for v in order[1:]:
        if not any(w in grown for w in tree.neighbors(v)):
            return False
        grown.add(v)
    return True


def _require_growing(tree: TreeOfOpenBooks, order: Sequence[str]) -> None:
    if not is_growing(tree, order):
        raise InvalidGrowingError(f"{' '.join(order)} is not a growing of the tree")


def growing_word(tree: TreeOfOpenBooks, order: Sequence[str]) -> tuple[str, ...]:
    """
    Monodromy of the growing as a composition word: the first grown vertex
    acts first and is written rightmost, so ``(b, a, c)`` gives ``c a b``.
    """
    _require_growing(tree, order)
    return tuple(reversed(order))


def monodromy_factorization(tree: TreeOfOpenBooks, order: Sequence[str]) -> tuple[TwistSymbol, ...]:
    """Per-vertex twist expansions concatenated in growing order (application order)."""
    _require_growing(tree, order)
    return tuple(t for vid in order for t in tree.vertex(vid).expansion())


def block_exhausting_growing(tree: TreeOfOpenBooks) -> tuple[str, ...]:
    """A growing that finishes every veering block before leaving it."""
    block_of = {m: k for k, b in enumerate(veering_blocks(tree)) for m in b}
    ids = tree.ids
    order = [ids[0]]
    grown = {ids[0]}
    while len(order) < len(ids):
        frontier = [v for v in ids if v not in grown and any(w in grown for w in tree.neighbors(v))]
        current = block_of[order[-1]]
        inside = [v for v in frontier if block_of[v] == current]
        # blocks are subtrees, so an unfinished block always has a frontier vertex
        pick = inside[0] if inside else frontier[0]
        order.append(pick)
        grown.add(pick)
    return tuple(order)


# -- certificates -----------------------------------------------------------

RULE_BLOCK = "essential-sum-keeps-strict-veering"
RULE_EDGE = "opposite-veering-sum-keeps-no-fixed-arcs"
RULE_TREE = "strictly-veering-tree-has-no-fixed-essential-arcs"


@dataclass(frozen=True)
class Citation:
    rule: str
    subject: str

    def __str__(self) -> str:
        return f"{self.rule}[{self.subject}]"


@dataclass(frozen=True)
class PrimenessCertificate:
    tree: TreeOfOpenBooks
    block_tree: TreeOfOpenBooks
    growing: tuple[str, ...]
    monodromy_word: tuple[str, ...]
    citations: tuple[Citation, ...]

    @property
    def block_veering(self) -> tuple[str, ...]:
        return tuple(v.veering.short for v in self.block_tree.vertices)


def primeness_certificate(tree: TreeOfOpenBooks) -> PrimenessCertificate:
    _require_veering(tree)
    for e in tree.edges:
        if not e.region.essential:
            raise NonEssentialEdgeError(e)
    blocks = block_tree(tree)
    order = block_exhausting_growing(tree)
    citations = [Citation(RULE_BLOCK, v.id) for v in blocks.vertices if v.kind is Kind.COMPOSITE]
    citations += [Citation(RULE_EDGE, f"{e.a}-{e.b}") for e in blocks.edges]
    citations.append(Citation(RULE_TREE, "+".join(blocks.ids)))
    cert = PrimenessCertificate(tree, blocks, order, growing_word(tree, order), tuple(citations))
    validate_certificate(cert)
    return cert


def validate_certificate(cert: PrimenessCertificate) -> None:
    """Re-check a certificate from its own data; raises :class:`CertificateError`."""
    tree, blocks = cert.tree, cert.block_tree

    def fail(msg: str) -> None:
        raise CertificateError(msg)

    if any(v.veering is Veering.UNKNOWN for v in tree.vertices):
        fail("a vertex has no strict veering label")
    if not all(e.region.essential for e in tree.edges):
        fail("a summing region is not essential")
    if not all(e.region.essential for e in blocks.edges):
        fail("a block-tree summing region is not essential")
    if not is_bipartite_by_veering(blocks):
        fail("block tree is not bipartite by veering")

    member_of: dict[str, str] = {}
    for b in blocks.vertices:
        members = b.members if b.kind is Kind.COMPOSITE else (b.id,)
        for m in members:
            if m in member_of:
                fail(f"vertex {m} lies in two blocks")
            member_of[m] = b.id
            if m not in tree.ids:
                fail(f"block {b.id} names unknown vertex {m}")
            if tree.vertex(m).veering is not b.veering:
                fail(f"vertex {m} does not share the veering of block {b.id}")
        if len(members) > 1 and len(subtree(tree, members).edges) != len(members) - 1:
            fail(f"block {b.id} is not a subtree")
    if set(member_of) != set(tree.ids):
        fail("blocks do not partition the vertices")
    for e in tree.edges:
        same = member_of[e.a] == member_of[e.b]
        if same != (tree.vertex(e.a).veering is tree.vertex(e.b).veering):
            fail(f"edge {e.a}-{e.b} breaks block maximality")

    if not is_growing(tree, cert.growing):
        fail("growing is not valid for the tree")
    runs = [member_of[v] for v in cert.growing]
    entered: list[str] = []
    for k, b in enumerate(runs):
        if k == 0 or b != runs[k - 1]:
            if b in entered:
                fail(f"growing leaves block {b} before finishing it")
            entered.append(b)
    if cert.monodromy_word != tuple(reversed(cert.growing)):
        fail("monodromy word does not match the growing")

    want = [Citation(RULE_BLOCK, v.id) for v in blocks.vertices if v.kind is Kind.COMPOSITE]
    want += [Citation(RULE_EDGE, f"{e.a}-{e.b}") for e in blocks.edges]
    want.append(Citation(RULE_TREE, "+".join(blocks.ids)))
    if list(cert.citations) != want:
        fail("citation chain does not match the block tree")


# -- serialization ----------------------------------------------------------


def _vertex_record(v: OpenBookVertex) -> str:
    parts = [f"vertex {v.id}", f"kind={v.kind.value}"]
    if v.kind is Kind.TORUS_BLOCK:
        parts.append(f"k={v.k}")
    elif v.kind is Kind.HOPF_BAND:
        parts.append(f"sign={'+' if v.sign > 0 else '-'}")
    else:
        parts.append(f"members={','.join(v.members)}")
        if v.source is not None:
            parts.append(f'source="{v.source}"')
    parts.append(f"veering={v.veering.short}")
    return " ".join(parts)


def _edge_record(e: Edge) -> str:
    r = e.region
    return (
        f"edge {e.a} {e.b} sides={r.sides} faceA={r.face_a} faceB={r.face_b} rotation={r.rotation} "
        f"essential={'yes' if r.essential else 'no'} provenance={r.provenance.value} "
        f'placement="{r.placement}"'
    )


def dump_tree(tree: TreeOfOpenBooks) -> str:
    lines = ["# homobraid tree v1"]
    if tree.source_word is not None:
        lines.append(f'word "{tree.source_word}"')
    lines += [_vertex_record(v) for v in tree.vertices]
    lines += [_edge_record(e) for e in tree.edges]
    lines += [f"conclusion {c}" for c in tree.conclusions]
    return "\n".join(lines) + "\n"


def tree_to_dict(tree: TreeOfOpenBooks) -> dict:
    vertices = []
    for v in tree.vertices:
        d: dict = {"id": v.id, "kind": v.kind.value, "veering": v.veering.value}
        if v.kind is Kind.TORUS_BLOCK:
            d["k"] = v.k
        elif v.kind is Kind.HOPF_BAND:
            d["sign"] = v.sign
        else:
            d["members"] = list(v.members)
            if v.source is not None:
                d["source"] = v.source
        vertices.append(d)
    edges = [
        {
            "a": e.a,
            "b": e.b,
            "sides": e.region.sides,
            "faceA": e.region.face_a,
            "faceB": e.region.face_b,
            "rotation": e.region.rotation,
            "essential": e.region.essential,
            "provenance": e.region.provenance.value,
            "placement": e.region.placement,
        }
        for e in tree.edges
    ]
    out: dict = {"vertices": vertices, "edges": edges}
    if tree.source_word is not None:
        out["word"] = tree.source_word
    if tree.conclusions:
        out["conclusions"] = list(tree.conclusions)
    return out


def certificate_to_dict(cert: PrimenessCertificate) -> dict:
    return {
        "blocks": [
            {"id": v.id, "veering": v.veering.short, "members": list(v.members or (v.id,))}
            for v in cert.block_tree.vertices
        ],
        "blockVeering": "".join(cert.block_veering),
        "growing": list(cert.growing),
        "monodromyWord": list(cert.monodromy_word),
        "citations": [str(c) for c in cert.citations],
    }


