import dataclasses
import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from conftest import braid_words
from homobraid.braids import (
    NotHomogeneousError,
    SplitWordError,
    destabilize_fully,
    is_split,
    parse_word,
    seesaw_profile,
)
from homobraid.openbook import (
    CertificateError,
    Citation,
    DestabilizableError,
    Edge,
    InvalidGrowingError,
    Kind,
    NonEssentialEdgeError,
    NonEssentialRegionError,
    OpenBookVertex,
    PlaneTree,
    Provenance,
    RegionOverlapError,
    SummingRegion,
    TreeError,
    TreeOfOpenBooks,
    UnknownVeeringError,
    Veering,
    annulus_page,
    arborescent_tree,
    block_exhausting_growing,
    block_tree,
    braid_tree,
    dump_tree,
    figure_eight_plumb,
    growing_word,
    growings,
    is_bipartite_by_veering,
    monodromy_factorization,
    page_of_tree,
    parse_plane_tree,
    primeness_certificate,
    tree_to_dict,
    validate_certificate,
    veering_blocks,
)
from homobraid.primeness import primeness_verdict
from homobraid.surfaces import build_surface, surface_invariants
from homobraid.traces import trace_cyclic_equivalent


def hopf(vid, sign, regions):
    v = Veering.RIGHT if sign > 0 else Veering.LEFT
    return OpenBookVertex(vid, Kind.HOPF_BAND, v, annulus_page(regions), sign=sign)


def plumb_edge(a, slot_a, b, slot_b):
    return Edge(a, b, SummingRegion(4, f"P{slot_a}", f"P{slot_b}", 1, True, Provenance.ANNULUS))


def path_abc():
    return TreeOfOpenBooks(
        (hopf("a", 1, 1), hopf("b", -1, 2), hopf("c", 1, 1)),
        (plumb_edge("a", 0, "b", 0), plumb_edge("b", 1, "c", 0)),
    )


def shape(inv):
    return inv.euler_char, inv.boundary_components


class TestVertex:
    def test_veering_follows_sign(self):
        with pytest.raises(TreeError):
            OpenBookVertex("x", Kind.TORUS_BLOCK, Veering.RIGHT, annulus_page(0), k=-3)
        with pytest.raises(TreeError):
            OpenBookVertex("x", Kind.HOPF_BAND, Veering.LEFT, annulus_page(0), sign=1)
        with pytest.raises(TreeError):
            OpenBookVertex("x", Kind.TORUS_BLOCK, Veering.LEFT, annulus_page(0), k=-1)

    def test_expansions(self):
        v = OpenBookVertex("x", Kind.TORUS_BLOCK, Veering.LEFT, annulus_page(0), k=-4)
        assert [str(t) for t in v.expansion()] == ["x.1-", "x.2-", "x.3-"]
        assert len(hopf("h", 1, 0).expansion()) == 1


class TestTreeValidation:
    def test_cycle_rejected(self):
        vs = (hopf("a", 1, 2), hopf("b", 1, 2), hopf("c", 1, 2))
        es = (plumb_edge("a", 0, "b", 0), plumb_edge("b", 1, "c", 0), plumb_edge("c", 1, "a", 1))
        with pytest.raises(TreeError):
            TreeOfOpenBooks(vs, es)

    def test_region_used_twice(self):
        vs = (hopf("a", 1, 1), hopf("b", 1, 1), hopf("c", 1, 1))
        es = (plumb_edge("a", 0, "b", 0), plumb_edge("a", 0, "c", 0))
        with pytest.raises(RegionOverlapError):
            TreeOfOpenBooks(vs, es)

    def test_missing_face(self):
        with pytest.raises(TreeError):
            TreeOfOpenBooks((hopf("a", 1, 1), hopf("b", 1, 1)), (plumb_edge("a", 3, "b", 0),))

    def test_touching_regions(self):
        # two regions of one annulus that share a side cannot both be used
        page = build_surface(
            {"P0": ("P0.0", "P0.1", "P0.2", "P0.3"), "P1": ("P1.0", "P1.1", "P1.2", "P1.3")},
            [("P0.1", "P1.3"), ("P1.1", "P0.3")],
        )
        mid = OpenBookVertex("m", Kind.HOPF_BAND, Veering.RIGHT, page, sign=1)
        with pytest.raises(RegionOverlapError):
            TreeOfOpenBooks(
                (mid, hopf("x", 1, 1), hopf("y", 1, 1)),
                (plumb_edge("m", 0, "x", 0), plumb_edge("m", 1, "y", 0)),
            )


class TestBraidTree:
    def test_beta_comp(self, beta_comp):
        t = braid_tree(beta_comp)
        assert [v.k for v in t.vertices] == [-3, 3, 5, -3]
        assert [(e.region.sides, e.region.essential) for e in t.edges] == [(2, False)] * 3

    def test_beta_prime(self, beta_prime):
        t = braid_tree(beta_prime)
        assert [e.region.sides for e in t.edges] == [4, 4, 6]
        assert all(e.region.essential and e.region.provenance is Provenance.SEESAW for e in t.edges)
        assert [e.region.disk for e in t.edges] == [2, 3, 4]

    def test_odd_seesaw_drops_a_side(self):
        w = parse_word("1^2 2 1 2 1^2")
        assert seesaw_profile(w)[2] == 5
        (e,) = braid_tree(w).edges
        assert (e.region.sides, e.region.essential) == (4, True)

    def test_preconditions(self):
        with pytest.raises(NotHomogeneousError):
            braid_tree(parse_word("1 1^-1 2 2"))
        with pytest.raises(SplitWordError):
            braid_tree(parse_word("1^2 3^2"))
        with pytest.raises(DestabilizableError):
            braid_tree(parse_word("1^2 2 3^2"))

    def test_page_matches_seifert_surface(self, beta_prime):
        assert surface_invariants(page_of_tree(braid_tree(beta_prime))).euler_char == -9

    @settings(max_examples=200)
    @given(braid_words(max_strands=6, max_letters=14, homogeneous=True))
    def test_essential_iff_seesaw_at_least_four(self, w):
        d = destabilize_fully(w).reduced
        if is_split(d) or d.strands < 2 or any(d.count(i) < 2 for i in range(1, d.strands)):
            return
        t = braid_tree(d)
        g = seesaw_profile(d)
        for e in t.edges:
            assert e.region.essential == (g[e.region.disk] >= 4)
            assert e.region.sides == (g[e.region.disk] // 2) * 2
        inv = surface_invariants(page_of_tree(t))
        assert inv.euler_char == d.strands - len(d)
        assert inv.euler_char == sum(surface_invariants(v.page).euler_char for v in t.vertices) - len(t.edges)


class TestBlocks:
    def test_beta_prime_blocks(self, beta_prime):
        b = block_tree(braid_tree(beta_prime))
        assert [v.veering.short for v in b.vertices] == ["L", "R", "L"]
        assert b.vertices[1].members == ("s2", "s3")
        assert b.vertices[1].source == "2^3 1^2 2^2 1"

    def test_all_positive_single_block(self):
        t = arborescent_tree(parse_plane_tree("(+(+)(+(+)))"))
        b = block_tree(t)
        assert len(b.vertices) == 1
        assert b.vertices[0].veering is Veering.RIGHT
        assert shape(surface_invariants(b.vertices[0].page)) == shape(surface_invariants(page_of_tree(t)))

    def test_single_vertex(self):
        t = TreeOfOpenBooks((hopf("h", -1, 0),))
        assert block_tree(t) == t

    def test_unknown_veering(self):
        v = OpenBookVertex("u", Kind.COMPOSITE, Veering.UNKNOWN, annulus_page(0))
        with pytest.raises(UnknownVeeringError):
            block_tree(TreeOfOpenBooks((v,)))

    def test_bipartite_and_idempotent(self):
        t = arborescent_tree(parse_plane_tree("(+(+(-)(-(-)))(-(+)))"))
        b = block_tree(t)
        assert is_bipartite_by_veering(b)
        assert block_tree(b) == b
        assert sum(len(v.members or (v.id,)) for v in b.vertices) == len(t.vertices)
        assert shape(surface_invariants(page_of_tree(b))) == shape(surface_invariants(page_of_tree(t)))


class TestGrowings:
    def test_counts(self):
        assert len(list(growings(TreeOfOpenBooks((hopf("v", 1, 0),))))) == 1
        two = arborescent_tree(parse_plane_tree("(+(-))"))
        assert len(list(growings(two))) == 2

    def test_path_of_three(self):
        assert set(growings(path_abc())) == {
            ("a", "b", "c"),
            ("b", "a", "c"),
            ("b", "c", "a"),
            ("c", "b", "a"),
        }

    @pytest.mark.parametrize("text", ["(+(+)(+)(+))", "(+(-(+(-))))", "(+(+(+))(+))"])
    def test_matches_permutation_filter(self, text):
        t = arborescent_tree(parse_plane_tree(text))
        g = nx.Graph([(e.a, e.b) for e in t.edges])
        assert set(growings(t)) == oracles.growings(g)

    def test_growing_word(self):
        assert growing_word(TreeOfOpenBooks((hopf("v", 1, 0),)), ("v",)) == ("v",)
        assert growing_word(path_abc(), ("b", "a", "c")) == ("c", "a", "b")
        with pytest.raises(InvalidGrowingError):
            growing_word(path_abc(), ("a", "c", "b"))

    def test_figure_eight_word(self):
        w = TreeOfOpenBooks((hopf("w", 1, 0),))
        t = figure_eight_plumb(w, "w", "G0.1")
        assert growing_word(t, ("w", "p", "n")) == ("n", "p", "w")

    def test_path_growings_conjugate(self):
        t = path_abc()
        rel = t.commuting()
        words = [growing_word(t, g) for g in growings(t)]
        for u, v in itertools.product(words, repeat=2):
            assert trace_cyclic_equivalent(u, v, rel)

    def test_block_exhausting(self):
        t = arborescent_tree(parse_plane_tree("(+(-(-))(+(+)))"))
        order = block_exhausting_growing(t)
        blocks = {m: k for k, b in enumerate(veering_blocks(t)) for m in b}
        runs = [blocks[v] for k, v in enumerate(order) if k == 0 or blocks[v] != blocks[order[k - 1]]]
        assert len(runs) == len(set(runs))


class TestCertificate:
    def test_beta_prime(self, beta_prime):
        c = primeness_certificate(braid_tree(beta_prime))
        assert c.block_veering == ("L", "R", "L")
        assert c.monodromy_word == tuple(reversed(c.growing))
        assert [x.rule for x in c.citations] == [
            "essential-sum-keeps-strict-veering",
            "opposite-veering-sum-keeps-no-fixed-arcs",
            "opposite-veering-sum-keeps-no-fixed-arcs",
            "strictly-veering-tree-has-no-fixed-essential-arcs",
        ]

    def test_beta_comp_refused_at_strand_two(self, beta_comp):
        with pytest.raises(NonEssentialEdgeError) as info:
            primeness_certificate(braid_tree(beta_comp))
        assert info.value.strand == 2
        assert (info.value.edge.a, info.value.edge.b) == ("s1", "s2")

    def test_single_hopf_band(self):
        c = primeness_certificate(TreeOfOpenBooks((hopf("h", 1, 0),)))
        assert c.block_veering == ("R",)

    def test_validator_rejects_tampering(self, beta_prime):
        c = primeness_certificate(braid_tree(beta_prime))
        validate_certificate(c)
        bad_growing = dataclasses.replace(c, growing=("s1", "s3", "s2", "s4"))
        bad_word = dataclasses.replace(c, monodromy_word=c.growing)
        bad_cites = dataclasses.replace(c, citations=c.citations[1:])
        extra_cite = dataclasses.replace(c, citations=c.citations + (Citation("x", "y"),))
        merged = dataclasses.replace(c, block_tree=block_tree(arborescent_tree(parse_plane_tree("(+)"))))
        for bad in (bad_growing, bad_word, bad_cites, extra_cite, merged):
            with pytest.raises(CertificateError):
                validate_certificate(bad)

    def test_validator_rejects_leaving_a_block_early(self):
        t = arborescent_tree(parse_plane_tree("(+(+)(-))"))
        c = primeness_certificate(t)
        # h1 and h0 form a block; starting at h1 then h0 is fine, but h0, h2, h1 splits the block
        with pytest.raises(CertificateError):
            validate_certificate(dataclasses.replace(c, growing=("h0", "h2", "h1"), monodromy_word=("h1", "h2", "h0")))

    @settings(max_examples=200)
    @given(braid_words(max_strands=6, max_letters=14, homogeneous=True))
    def test_agrees_with_verdict(self, w):
        if is_split(w):
            return
        d = destabilize_fully(w).reduced
        prime = primeness_verdict(d).is_prime
        if d.strands < 2:
            assert prime
            return
        try:
            t = braid_tree(d)
        except DestabilizableError:
            # an interior generator occurring once always leaves a 2- or 3-block seesaw
            assert not prime
            return
        try:
            primeness_certificate(t)
            certified = True
        except NonEssentialEdgeError:
            certified = False
        assert certified == prime


class TestArborescent:
    def test_single_band(self):
        t = arborescent_tree(parse_plane_tree("(+)"))
        assert shape(surface_invariants(page_of_tree(t))) == (0, 2)

    def test_two_bands(self):
        t = arborescent_tree(parse_plane_tree("(+(+))"))
        inv = surface_invariants(page_of_tree(t))
        assert (inv.euler_char, inv.boundary_components, inv.genus) == (-1, 1, 1)
        assert primeness_certificate(t).block_veering == ("R",)

    def test_star(self):
        t = arborescent_tree(parse_plane_tree("(-(+)(+)(+))"))
        assert surface_invariants(page_of_tree(t)).euler_char == -3
        assert primeness_certificate(t).block_veering == ("L", "R", "R", "R")

    def test_circular_order_starts_at_parent(self):
        t = arborescent_tree(parse_plane_tree("(+(+(+)(+)))"))
        h1_edges = [(e.a, e.b, e.region.face_a, e.region.face_b) for e in t.edges if "h1" in (e.a, e.b)]
        assert h1_edges == [("h1", "h2", "P1", "P0"), ("h1", "h3", "P2", "P0"), ("h0", "h1", "P0", "P0")]

    @pytest.mark.parametrize("text", ["", "(", "(+", "(x)", "(+))", "(+)(+)", "(+(-)x)"])
    def test_malformed(self, text):
        with pytest.raises(TreeError):
            parse_plane_tree(text)

    def test_round_trip(self):
        assert str(parse_plane_tree(" ( + ( - ) ( + ( - ) ) ) ")) == "(+(-)(+(-)))"
        assert PlaneTree(1, (PlaneTree(-1),)).size() == 2


class TestFigureEight:
    def test_onto_single_band(self):
        t = figure_eight_plumb(TreeOfOpenBooks((hopf("w", 1, 0),)), "w", "G0.1", fixed_arcs_meet_arc=True)
        assert t.ids == ("w", "p", "n")
        assert [(e.a, e.b) for e in t.edges] == [("w", "p"), ("p", "n")]
        assert t.conclusions == ("noFixedEssentialArcs",)
        assert [v.sign for v in t.vertices[1:]] == [1, -1]

    def test_no_conclusion_without_assertion(self):
        t = figure_eight_plumb(TreeOfOpenBooks((hopf("w", 1, 0),)), "w", "G0.1")
        assert t.conclusions == ()
        assert t.edges[0].region.provenance is Provenance.ARC_CHECK

    def test_onto_braid_tree(self, beta_prime):
        t = braid_tree(beta_prime)
        out = figure_eight_plumb(t, "s1", "D1.a2", assert_essential=True)
        assert len(out.vertices) == len(t.vertices) + 2 == 6
        assert out.edges[-2].region.provenance is Provenance.ASSERTED
        inv = surface_invariants(page_of_tree(out))
        assert inv.euler_char == -9 - 2

    def test_overlap(self, beta_prime):
        t = braid_tree(beta_prime)
        with pytest.raises(RegionOverlapError):
            figure_eight_plumb(t, "s1", "R2.c0", assert_essential=True)

    def test_inessential_arc(self):
        page = build_surface(
            {
                "P0": ("P0.0", "P0.1", "P0.2", "P0.3"),
                "G0": ("G0.0", "G0.1", "G0.2", "G0.3"),
                "F": ("F.0", "F.1", "F.2"),
            },
            [("P0.1", "G0.3"), ("G0.1", "P0.3"), ("F.0", "G0.2")],
        )
        v = OpenBookVertex("w", Kind.HOPF_BAND, Veering.RIGHT, page, sign=1)
        with pytest.raises(NonEssentialRegionError):
            figure_eight_plumb(TreeOfOpenBooks((v,)), "w", "F.0")

    def test_twice_gets_fresh_names(self):
        t = figure_eight_plumb(TreeOfOpenBooks((hopf("w", 1, 3),)), "w", "G0.1")
        t = figure_eight_plumb(t, "w", "G1.1")
        assert t.ids == ("w", "p", "n", "p1", "n1")
        assert surface_invariants(page_of_tree(t)).euler_char == -4

    def test_second_arc_next_to_new_region(self):
        t = figure_eight_plumb(TreeOfOpenBooks((hopf("w", 1, 0),)), "w", "G0.1")
        with pytest.raises(RegionOverlapError):
            figure_eight_plumb(t, "w", "G0.3")


class TestMonodromy:
    def test_single_band(self):
        t = TreeOfOpenBooks((hopf("h", 1, 0),))
        assert len(monodromy_factorization(t, ("h",))) == 1

    def test_beta_comp_signs(self, beta_comp):
        t = braid_tree(beta_comp)
        symbols = monodromy_factorization(t, ("s1", "s2", "s3", "s4"))
        assert [s.sign for s in symbols] == [-1, -1, 1, 1, 1, 1, 1, 1, -1, -1]

    def test_beta_prime_count(self, beta_prime):
        t = braid_tree(beta_prime)
        assert len(monodromy_factorization(t, next(growings(t)))) == 10

    def test_invalid_growing(self, beta_prime):
        with pytest.raises(InvalidGrowingError):
            monodromy_factorization(braid_tree(beta_prime), ("s1", "s3", "s2", "s4"))

    def test_composite_keeps_member_twists(self, beta_prime):
        b = block_tree(braid_tree(beta_prime))
        assert len(monodromy_factorization(b, next(growings(b)))) == 10


class TestSerialization:
    def test_beta_prime_dump(self, beta_prime):
        lines = dump_tree(braid_tree(beta_prime)).splitlines()
        assert lines[0] == "# homobraid tree v1"
        assert lines[1] == 'word "3 -4 1^-2 3^2 2^2 -4 -1 3^2 2 -4"'
        assert lines[2] == "vertex s1 kind=torusBlock k=-3 veering=L"
        assert lines[6].startswith("edge s1 s2 sides=4 faceA=R2 faceB=R2 rotation=0 essential=yes")
        assert "provenance=seesawAtLeastFour" in lines[6]

    def test_dict(self):
        d = tree_to_dict(arborescent_tree(parse_plane_tree("(+(-))")))
        assert d["vertices"][1] == {"id": "h1", "kind": "hopfBand", "veering": "strictlyLeft", "sign": -1}
        assert d["edges"][0]["provenance"] == "annulusCocore"
