"""Algebra contexts, normalization, products, stars, and induced maps."""
import random
from fractions import Fraction

import pytest

from pathalg import (
    AlgebraContext,
    ContextMismatch,
    NotMonotone,
    NotRegular,
    NotVertexInjective,
    Path,
    PathHom,
    StarInPathMode,
    UnsupportedInfiniteEmitter,
    compose,
    induce,
    induce_cohn,
    induce_leavitt,
    induce_path,
    normal_form,
    verify_relations_preserved,
)
from pathalg.algebra import GeneratorWord, Letter
from pathalg.graphs import Graph
from pathalg.registry import GRAPHS, MORPHISMS

from helpers import (
    element_laurent,
    element_matrix,
    line_graph,
    random_fold,
    random_word,
    word_laurent,
    word_matrix,
)

loop = GRAPHS["loop"]
rp2 = GRAPHS["rp2"]
toeplitz = GRAPHS["toeplitz"]
line3 = GRAPHS["line3"]

L_loop = AlgebraContext.leavitt(loop)
C_loop = AlgebraContext.cohn(loop)
L_toe = AlgebraContext.leavitt(toeplitz)
P_rp2 = AlgebraContext.path(rp2)


def nf(ctx, *letters, scalar=1):
    return normal_form(ctx, GeneratorWord(tuple(letters), Fraction(scalar)))


class TestContexts:
    def test_modes(self):
        assert P_rp2.is_path_mode and not P_rp2.is_cohn
        assert C_loop.is_cohn and not C_loop.is_leavitt
        assert L_loop.is_leavitt and not L_loop.is_cohn
        partial = AlgebraContext.relative_cohn(line3, ["b"])
        assert not partial.is_cohn and not partial.is_leavitt
        assert partial.relation_vertices == ("b",)

    def test_leavitt_relation_vertices(self):
        assert AlgebraContext.leavitt(line3).relation_vertices == ("a", "b")
        assert AlgebraContext.leavitt(rp2).relation_vertices == ("v",)

    def test_relation_vertex_must_be_regular(self):
        with pytest.raises(ValueError):
            AlgebraContext.relative_cohn(line3, ["c"])  # sink

    def test_path_mode_has_no_relation_vertices(self):
        with pytest.raises(ValueError):
            AlgebraContext(rp2, "path", ["v"])

    def test_flagged_graph_refused(self):
        g = Graph(["v"], [("e", "v", "v")], infinite_emitters=["v"])
        with pytest.raises(UnsupportedInfiniteEmitter):
            AlgebraContext.leavitt(g)

    def test_context_equality(self):
        assert AlgebraContext.leavitt(loop) == L_loop
        assert AlgebraContext.cohn(loop) != L_loop


class TestCanonicalStrings:
    def test_basic_renderings(self):
        assert str(L_toe.vertex("v")) == "v"
        assert str(L_toe.edge("e")) == "e"
        assert str(L_toe.edge_star("f")) == "f*"
        assert str(L_toe.zero()) == "0"
        assert str(L_toe.unit()) == "v + w"

    def test_pair_rendering_reverses_right(self):
        ef = Path.of(toeplitz, ("e", "f"))
        assert str(L_toe.pair_element(ef, ef)) == "e f f* e*"

    def test_scalar_rendering(self):
        x = L_toe.vertex("v").scale(Fraction(3, 2)) - L_toe.vertex("w")
        assert str(x) == "3/2 v - w"
        assert str(-L_toe.vertex("v")) == "-v"

    def test_path_mode_rendering(self):
        sr = P_rp2.path_element(Path.of(rp2, ("s", "r")))
        assert str(sr) == "s r"


class TestRelations:
    def test_ck1_in_quotient_modes(self):
        for ctx in (C_loop, L_toe, AlgebraContext.leavitt(rp2)):
            g = ctx.graph
            for e in g.edges:
                for f in g.edges:
                    prod = ctx.edge_star(e) * ctx.edge(f)
                    if e == f:
                        assert prod == ctx.vertex(g.tgt(e)), (e, f)
                    else:
                        assert prod.is_zero, (e, f)

    def test_ck2_at_relation_vertices_only(self):
        # leavitt: full sum collapses to the vertex projection
        total = L_toe.zero()
        for e in toeplitz.out_edges("v"):
            total = total + L_toe.edge(e) * L_toe.edge_star(e)
        assert total == L_toe.vertex("v")
        # cohn: the same sum stays distinct from the projection
        total_c = C_loop.edge("e") * C_loop.edge_star("e")
        assert total_c != C_loop.vertex("v")
        assert str(total_c) == "e e*"

    def test_relative_mode_discriminates(self):
        partial = AlgebraContext.relative_cohn(line3, ["b"])
        # at b the relation holds
        assert partial.edge("y") * partial.edge_star("y") == partial.vertex("b")
        # at a it does not
        assert str(partial.edge("x") * partial.edge_star("x")) == "x x*"


class TestNormalForm:
    def test_ghost_then_edges(self):
        assert str(nf(L_loop, Letter("S*", "e"), Letter("S", "e"), Letter("S", "e"))) == "e"

    def test_range_projection_collapses(self):
        elem = nf(L_loop, Letter("S", "e"), Letter("S*", "e"))
        assert str(elem) == "v"
        assert (elem - L_loop.vertex("v")).is_zero

    def test_cohn_keeps_range_projection(self):
        assert str(nf(C_loop, Letter("S", "e"), Letter("S*", "e"))) == "e e*"

    def test_toeplitz_double_shift(self):
        elem = nf(
            L_toe, Letter("S", "e"), Letter("S", "e"), Letter("S*", "e"), Letter("S*", "e")
        )
        assert str(elem) == "v - f f* - e f f* e*"

    def test_orthogonal_vertices_kill_products(self):
        assert nf(L_toe, Letter("P", "v"), Letter("P", "w")).is_zero

    def test_scalar_carries(self):
        assert str(nf(L_loop, Letter("S", "e"), scalar=Fraction(-5, 3))) == "-5/3 e"

    def test_pair_element_already_normal(self):
        s = Path.of(rp2, ("s",))
        ctx = AlgebraContext.leavitt(rp2)
        elem = ctx.pair_element(s, s)
        # tail s is the special edge at v, so (s,s) rewrites
        assert str(elem) == "v - r r* - t t*"


class TestStar:
    def test_star_reverses_words(self):
        elem = nf(L_toe, Letter("S", "e"), Letter("S", "f"))
        assert str(elem.star()) == "f* e*"

    def test_star_is_involutive(self):
        rng = random.Random(7)
        for _ in range(50):
            word = random_word(L_toe, rng, 5)
            elem = normal_form(L_toe, word)
            assert elem.star().star() == elem

    def test_star_is_antimultiplicative(self):
        rng = random.Random(8)
        for _ in range(50):
            a = normal_form(L_toe, random_word(L_toe, rng, 4))
            b = normal_form(L_toe, random_word(L_toe, rng, 4))
            assert (a * b).star() == b.star() * a.star()

    def test_star_refused_in_path_mode(self):
        with pytest.raises(StarInPathMode):
            P_rp2.path_element(Path.of(rp2, ("s",))).star()


class TestProducts:
    def test_path_mode_concatenation(self):
        s = P_rp2.path_element(Path.of(rp2, ("s",)))
        r = P_rp2.path_element(Path.of(rp2, ("r",)))
        assert str(s * r) == "s r"
        assert (r * s).is_zero

    def test_incomparable_pair_product_is_zero(self):
        ctx = AlgebraContext.leavitt(rp2)
        assert (ctx.edge_star("r") * ctx.edge("t")).is_zero

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            L_loop.vertex("v") * C_loop.vertex("v")

    def test_integer_and_fraction_scalars(self):
        x = L_toe.edge("e")
        assert 2 * x == x + x
        assert x * Fraction(1, 2) + x * Fraction(1, 2) == x

    def test_matrix_oracle_agreement(self):
        rng = random.Random(11)
        for n in (2, 3, 4):
            g = line_graph(n)
            ctx = AlgebraContext.leavitt(g)
            for _ in range(60):
                word = random_word(ctx, rng, 6)
                elem = normal_form(ctx, word)
                assert element_matrix(n, elem) == word_matrix(n, word)

    def test_laurent_oracle_agreement(self):
        rng = random.Random(12)
        for _ in range(100):
            word = random_word(L_loop, rng, 8)
            elem = normal_form(L_loop, word)
            assert element_laurent(elem) == word_laurent(word)

    def test_association_independence(self):
        rng = random.Random(13)
        for ctx in (L_toe, C_loop, AlgebraContext.relative_cohn(line3, ["b"])):
            for _ in range(40):
                word = random_word(ctx, rng, 6)
                assert random_fold(ctx, word, rng) == normal_form(ctx, word)


class TestInducedMaps:
    def test_path_functor_values(self):
        ctx = AlgebraContext.path(rp2)
        elem = ctx.path_element(Path.of(rp2, ("s", "r")))
        image = induce_path(MORPHISMS["phi_rp2"], elem)
        assert str(image) == "e e f"
        assert image.context == AlgebraContext.path(toeplitz)

    def test_path_functor_merges_coefficients(self):
        rose2 = GRAPHS["rose2"]
        ctx = AlgebraContext.path(rose2)
        f = PathHom(rose2, loop, {"v": "v"}, {"e1": ("e",), "e2": ("e",)})
        elem = ctx.path_element(Path.of(rose2, ("e1",))) + ctx.path_element(
            Path.of(rose2, ("e2",))
        )
        assert str(induce_path(f, elem)) == "2 e"

    def test_path_functor_needs_vertex_injectivity(self):
        par = GRAPHS["parallel2"]
        f = PathHom(par, loop, {"v": "v", "w": "v"}, {"e1": ("e",), "e2": ("e",)})
        with pytest.raises(NotVertexInjective) as info:
            induce_path(f, AlgebraContext.path(par).vertex("v"))
        assert info.value.witness == ["v", "w"]

    def test_cohn_functor_needs_monotone(self):
        with pytest.raises(NotMonotone) as info:
            induce_cohn(
                MORPHISMS["rose2_to_loop"],
                AlgebraContext.cohn(GRAPHS["rose2"]).vertex("v"),
            )
        assert info.value.witness == ["e2", "e1"]

    def test_leavitt_functor_needs_regular(self):
        with pytest.raises(NotRegular) as info:
            induce_leavitt(
                MORPHISMS["star_embed"],
                AlgebraContext.leavitt(GRAPHS["star2"]).vertex("v"),
            )
        assert info.value.witness["kind"] == "missing_branch"

    def test_cohn_functor_value(self):
        ctx = AlgebraContext.cohn(GRAPHS["edge"])
        elem = ctx.edge("e")
        image = induce_cohn(MORPHISMS["edge_to_line"], elem)
        assert str(image) == "x y"
        assert image.context == AlgebraContext.cohn(line3)

    def test_leavitt_functor_value_renormalizes(self):
        ctx = AlgebraContext.leavitt(loop)
        ee = ctx.pair_element(Path.of(loop, ("e",)), Path.of(loop, ("e",)))
        # (e,e) collapses to v in the domain; the image must collapse too
        image = induce_leavitt(MORPHISMS["loop_square"], ee)
        assert image == AlgebraContext.leavitt(loop).vertex("v")

    def test_star_compatibility(self):
        rng = random.Random(14)
        ctx = AlgebraContext.leavitt(rp2)
        for _ in range(30):
            elem = normal_form(ctx, random_word(ctx, rng, 5))
            image = induce_leavitt(MORPHISMS["phi_rp2"], elem)
            assert induce_leavitt(MORPHISMS["phi_rp2"], elem.star()) == image.star()

    def test_functoriality_on_composites(self):
        first = MORPHISMS["edge_to_line"]
        second = MORPHISMS["line3_to_cycle3"]
        both = compose(second, first)
        ctx = AlgebraContext.leavitt(GRAPHS["edge"])
        rng = random.Random(15)
        for _ in range(30):
            elem = normal_form(ctx, random_word(ctx, rng, 5))
            stepwise = induce_leavitt(second, induce_leavitt(first, elem))
            assert stepwise == induce_leavitt(both, elem)

    def test_induce_dispatch(self):
        assert str(induce(MORPHISMS["phi_rp2"], AlgebraContext.path(rp2).vertex("w"))) == "w"
        assert str(
            induce(MORPHISMS["phi_rp2"], AlgebraContext.leavitt(rp2).edge("s"))
        ) == "e e"
        # a proper relation subset matches neither endpoint functor
        partial = AlgebraContext.relative_cohn(line3, ["b"])
        with pytest.raises(ContextMismatch):
            induce(MORPHISMS["line3_to_cycle3"], partial.vertex("a"))

    def test_wrong_source_context(self):
        with pytest.raises(ContextMismatch):
            induce_leavitt(MORPHISMS["phi_rp2"], L_toe.vertex("v"))


class TestRelationReports:
    def test_rmbpg_map_preserves_everything(self):
        for mode in ("cohn", "leavitt"):
            report = verify_relations_preserved(MORPHISMS["phi_rp2"], mode)
            assert report.all_ok
            assert report.failures() == ()

    def test_path_mode_report_is_empty(self):
        report = verify_relations_preserved(MORPHISMS["phi_rp2"], "path")
        assert report.all_ok and report.checks == ()

    def test_non_regular_map_breaks_ck2(self):
        report = verify_relations_preserved(MORPHISMS["star_embed"], "leavitt")
        assert not report.all_ok
        kinds = {c.kind for c in report.failures()}
        assert kinds == {"CK2"}

    def test_json_shape(self):
        data = verify_relations_preserved(MORPHISMS["loop_square"], "leavitt").to_json_data()
        assert data["mode"] == "leavitt"
        assert all(c["ok"] for c in data["checks"])
