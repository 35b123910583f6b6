"""Path homomorphisms: validation, composition, the extended lift, and the
category-tower classification."""
import pytest

from pathalg import (
    DomainMismatch,
    Graph,
    InvalidPathHom,
    Path,
    PathHom,
    UnsupportedInfiniteEmitter,
    classify,
    compose,
    enumerate_path_homs,
    extended_lift,
)
from pathalg.morphisms import is_regular
from pathalg.registry import GRAPHS, MORPHISMS

loop = GRAPHS["loop"]
rp2 = GRAPHS["rp2"]
toeplitz = GRAPHS["toeplitz"]
rose2 = GRAPHS["rose2"]
pt = GRAPHS["pt"]
phi = MORPHISMS["phi_rp2"]


class TestValidation:
    def test_missing_vertex_image(self):
        with pytest.raises(InvalidPathHom):
            PathHom(rp2, toeplitz, {"v": "v"}, {"s": ("e",), "r": ("f",), "t": ("f",)})

    def test_unknown_codomain_vertex(self):
        with pytest.raises(InvalidPathHom):
            PathHom(pt, pt, {"v": "zz"}, {})

    def test_extraneous_vertex_key(self):
        with pytest.raises(InvalidPathHom):
            PathHom(pt, pt, {"v": "v", "q": "v"}, {})

    def test_missing_edge_image(self):
        with pytest.raises(InvalidPathHom):
            PathHom(loop, loop, {"v": "v"}, {})

    def test_extraneous_edge_key(self):
        with pytest.raises(InvalidPathHom):
            PathHom(pt, loop, {"v": "v"}, {"e": ("e",)})

    def test_endpoint_mismatch(self):
        with pytest.raises(InvalidPathHom):
            # image of the loop must close up at f(v)
            PathHom(loop, toeplitz, {"v": "v"}, {"e": ("f",)})

    def test_empty_image_means_collapse(self):
        f = PathHom(loop, pt, {"v": "v"}, {"e": ()})
        assert f.edge_image("e").is_vertex

    def test_identity(self):
        ident = PathHom.identity(rp2)
        p = Path.of(rp2, ("s", "t"))
        assert ident.apply(p) == p


class TestApply:
    def test_concatenates_images(self):
        p = Path.of(rp2, ("s", "s", "r"))
        assert str(phi.apply(p)) == "e e e e f"

    def test_vertex_path(self):
        assert phi.apply(Path.at(rp2, "w")) == Path.at(toeplitz, "w")

    def test_collapsing_everything(self):
        f = PathHom(rose2, pt, {"v": "v"}, {"e1": (), "e2": ()})
        assert f.apply(Path.of(rose2, ("e1", "e2"))).is_vertex

    def test_wrong_domain(self):
        with pytest.raises(DomainMismatch):
            phi.apply(Path.at(toeplitz, "v"))


class TestCompose:
    def test_diagram_order(self):
        sq = MORPHISMS["loop_square"]
        r2l = MORPHISMS["rose2_to_loop"]
        both = compose(sq, r2l)
        assert both.emap["e1"].edges == ("e", "e", "e", "e")
        assert both.emap["e2"].edges == ("e", "e")

    def test_identity_neutral(self):
        assert compose(PathHom.identity(toeplitz), phi) == phi
        assert compose(phi, PathHom.identity(rp2)) == phi

    def test_non_composable(self):
        with pytest.raises(DomainMismatch):
            compose(MORPHISMS["rose2_to_loop"], phi)


class TestExtendedLift:
    def test_ghosts_reverse_and_star(self):
        lifted = extended_lift(phi)
        assert str(lifted.emap["t"]) == "e f"
        assert str(lifted.emap["t*"]) == "f* e*"
        assert str(lifted.emap["s*"]) == "e* e*"

    def test_collapsed_edge_ghost(self):
        f = PathHom(loop, pt, {"v": "v"}, {"e": ()})
        lifted = extended_lift(f)
        assert lifted.emap["e*"].is_vertex

    def test_lift_composes(self):
        sq = MORPHISMS["loop_square"]
        assert compose(extended_lift(sq), extended_lift(sq)) == extended_lift(compose(sq, sq))


class TestClassification:
    def test_phi_is_rmbpg(self):
        verdict = classify(phi)
        assert verdict.in_rmbpg and verdict.witnesses == {}

    def test_monotone_witness_is_first_in_scan_order(self):
        verdict = classify(MORPHISMS["rose2_to_loop"])
        assert not verdict.monotone
        assert verdict.witnesses["monotone"] == ["e2", "e1"]

    def test_constant_collapse_witnesses(self):
        verdict = classify(MORPHISMS["rose2_to_pt"])
        assert verdict.witnesses["monotone"] == ["e1", "e2"]
        assert verdict.witnesses["regular"]["kind"] == "star_not_injective"

    def test_not_injective_witness(self):
        f = PathHom(
            GRAPHS["parallel2"], loop, {"v": "v", "w": "v"}, {"e1": ("e",), "e2": ("e", "e")}
        )
        verdict = classify(f)
        assert verdict.witnesses["vertex_injective"] == ["v", "w"]
        assert verdict.witnesses["vertex_bijective_finite"]["kind"] == "not_injective"
        assert not verdict.in_ipg and verdict.in_pg

    def test_not_surjective_witness(self):
        verdict = classify(MORPHISMS["edge_to_line"])
        assert verdict.witnesses["vertex_bijective_finite"] == {
            "kind": "not_surjective",
            "vertex": "b",
        }
        assert verdict.in_rmipg and not verdict.in_bpg

    def test_missing_branch_witness(self):
        verdict = classify(MORPHISMS["branch_missing"])
        assert verdict.witnesses["regular"] == {
            "vertex": "v",
            "kind": "missing_branch",
            "path": ["x2", "y1"],
        }

    def test_star_embedding_missing_loop(self):
        verdict = classify(MORPHISMS["star_embed"])
        assert verdict.in_mbpg and not verdict.in_rmbpg
        assert verdict.witnesses["regular"]["path"] == ["u"]

    def test_zero_regular_escape(self):
        # collapsing the lone loop of a 0-regular vertex is regular
        verdict = classify(MORPHISMS["loop_to_pt"])
        assert verdict.regular and verdict.in_rmbpg

    def test_zero_regular_escape_needs_lone_loop(self):
        # same collapse at a two-edge vertex is not regular
        f = PathHom(rose2, loop, {"v": "v"}, {"e1": (), "e2": ("e",)})
        result = is_regular(f)
        assert not result.ok
        assert result.witness["kind"] == "collapsed_edge"
        assert result.witness["edge"] == "e1"

    def test_positive_images_missing_first_edges_fail(self):
        # a 0-regular vertex with a positive-length image still needs the
        # full expansion condition
        f = PathHom(loop, toeplitz, {"v": "v", }, {"e": ("e", "e")})
        result = is_regular(f)
        assert not result.ok
        assert result.witness == {"vertex": "v", "kind": "missing_branch", "path": ["f"]}

    def test_satisfies_names(self):
        verdict = classify(phi)
        for name in ("PG", "IPG", "BPG", "MIPG", "MBPG", "RMIPG", "RMBPG"):
            assert verdict.satisfies(name)
        with pytest.raises(ValueError):
            verdict.satisfies("XYZ")

    def test_flagged_graphs_refused(self):
        g = Graph(["v"], [("e", "v", "v")], infinite_emitters=["v"])
        with pytest.raises(UnsupportedInfiniteEmitter):
            classify(PathHom(g, g, {"v": "v"}, {"e": ("e",)}))

    def test_json_shape(self):
        data = classify(MORPHISMS["rose2_to_loop"]).to_json_data()
        assert set(data) == {
            "is_path_hom",
            "vertex_injective",
            "vertex_bijective_finite",
            "monotone",
            "regular",
            "classes",
            "witnesses",
        }
        assert data["classes"]["MIPG"] is False
        # witnesses present for exactly the false flags
        assert set(data["witnesses"]) == {"monotone", "regular"}


class TestEnumeration:
    def test_counts_loop_to_loop(self):
        homs = list(enumerate_path_homs(loop, loop, 2))
        # loop image of length 0, 1 or 2
        assert len(homs) == 3

    def test_respects_length_cap(self):
        homs = list(enumerate_path_homs(loop, loop, 4))
        assert len(homs) == 5

    def test_injective_only_filter(self):
        all_homs = list(enumerate_path_homs(GRAPHS["parallel2"], toeplitz, 1))
        inj = list(enumerate_path_homs(GRAPHS["parallel2"], toeplitz, 1, vertex_injective_only=True))
        assert len(inj) < len(all_homs)
        assert all(len(set(h.vmap.values())) == 2 for h in inj)

    def test_deterministic_order(self):
        first = [repr(h) for h in enumerate_path_homs(rose2, toeplitz, 2)]
        second = [repr(h) for h in enumerate_path_homs(rose2, toeplitz, 2)]
        assert first == second
