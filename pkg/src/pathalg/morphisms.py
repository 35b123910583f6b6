"""Path homomorphisms of directed graphs and the category-tower predicates.

A path homomorphism sends vertices to vertices and edges to paths so that
endpoints are respected; it then extends multiplicatively to all finite
paths.  On top of that sit the predicate classes:

    PG      all path homomorphisms
    IPG     vertex-injective ones
    BPG     vertex-bijective ones (finite graphs)
    MIPG    vertex-injective + monotone
    MBPG    vertex-bijective + monotone
    RMIPG   MIPG + regular
    RMBPG   MBPG + regular

Monotone: distinct edges never have prefix-comparable images.  Regular: the
image of each regular vertex's outgoing edge set is the leaf set of a
complete expansion tree, with an escape clause for 0-regular vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .errors import DomainMismatch, InvalidPathHom, UnsupportedInfiniteEmitter
from .graphs import (
    CheckResult,
    Graph,
    Path,
    extended_graph,
    paths_up_to,
    prefix_leq,
    reg0_vertices,
    regular_vertices,
    star_letter,
)

CATEGORY_NAMES = ("PG", "IPG", "BPG", "MIPG", "MBPG", "RMIPG", "RMBPG")


class PathHom:
    """A path homomorphism dom -> cod.

    ``vmap`` maps every dom vertex to a cod vertex; ``emap`` maps every dom
    edge to a Path in cod (edge-id sequences are accepted and converted, the
    empty sequence meaning the length-0 path at the image of the edge's
    source).  Endpoint compatibility is validated eagerly, which is what
    makes the multiplicative extension in ``apply`` well defined.
    """

    __slots__ = ("dom", "cod", "vmap", "emap", "_key")

    def __init__(self, dom: Graph, cod: Graph, vmap: Mapping[str, str], emap: Mapping[str, object]):
        vm = {}
        for v in dom.vertices:
            if v not in vmap:
                raise InvalidPathHom(f"vertex {v!r} has no image", generator=v)
            w = vmap[v]
            if not cod.has_vertex(w):
                raise InvalidPathHom(f"vertex {v!r} maps to unknown vertex {w!r}", generator=v)
            vm[v] = w
        for v in vmap:
            if v not in vm:
                raise InvalidPathHom(f"vmap names {v!r}, not a domain vertex", generator=v)

        em = {}
        for e in dom.edges:
            if e not in emap:
                raise InvalidPathHom(f"edge {e!r} has no image", generator=e)
            img = emap[e]
            if not isinstance(img, Path):
                img = tuple(img)
                img = (
                    Path.at(cod, vm[dom.src(e)])
                    if not img
                    else Path.of(cod, img)
                )
            if img.graph != cod:
                raise InvalidPathHom(f"image of edge {e!r} lives in the wrong graph", generator=e)
            if img.source != vm[dom.src(e)] or img.target != vm[dom.tgt(e)]:
                raise InvalidPathHom(
                    f"image of edge {e!r} runs {img.source!r}->{img.target!r}, "
                    f"expected {vm[dom.src(e)]!r}->{vm[dom.tgt(e)]!r}",
                    generator=e,
                )
            em[e] = img
        for e in emap:
            if e not in em:
                raise InvalidPathHom(f"emap names {e!r}, not a domain edge", generator=e)

        self.dom = dom
        self.cod = cod
        self.vmap = vm
        self.emap = em
        self._key = (
            dom,
            cod,
            tuple(vm[v] for v in dom.vertices),
            tuple(em[e] for e in dom.edges),
        )

    @classmethod
    def identity(cls, g: Graph) -> "PathHom":
        return cls(g, g, {v: v for v in g.vertices}, {e: (e,) for e in g.edges})

    def vertex_image(self, v: str) -> str:
        return self.vmap[v]

    def edge_image(self, e: str) -> Path:
        return self.emap[e]

    def apply(self, p: Path) -> Path:
        if p.graph != self.dom:
            raise DomainMismatch("path does not live in the morphism's domain")
        if p.is_vertex:
            return Path.at(self.cod, self.vmap[p.vertex])
        edges = []
        for e in p.edges:
            edges.extend(self.emap[e].edges)
        if not edges:
            return Path.at(self.cod, self.vmap[p.source])
        return Path.of(self.cod, edges)

    def __eq__(self, other):
        if not isinstance(other, PathHom):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        images = ", ".join(f"{e}->{self.emap[e]}" for e in self.dom.edges)
        return f"PathHom({images or 'no edges'})"


def compose(g: PathHom, f: PathHom) -> PathHom:
    """The composite g after f."""
    if f.cod != g.dom:
        raise DomainMismatch("codomain of the first factor differs from domain of the second")
    vmap = {v: g.vmap[f.vmap[v]] for v in f.dom.vertices}
    emap = {e: g.apply(f.emap[e]) for e in f.dom.edges}
    return PathHom(f.dom, g.cod, vmap, emap)


def extended_lift(f: PathHom) -> PathHom:
    """The lift of f to the doubled graphs: ghost edges map to the starred
    reversals of the original images."""
    dom_ext = extended_graph(f.dom)
    cod_ext = extended_graph(f.cod)
    emap = {}
    for e in f.dom.edges:
        img = f.emap[e]
        if img.is_vertex:
            emap[e] = Path.at(cod_ext, img.vertex)
            emap[e + "*"] = Path.at(cod_ext, img.vertex)
        else:
            emap[e] = Path.of(cod_ext, img.edges)
            emap[e + "*"] = Path.of(
                cod_ext, tuple(star_letter(f.cod, x) for x in reversed(img.edges))
            )
    return PathHom(dom_ext, cod_ext, dict(f.vmap), emap)


@dataclass(frozen=True)
class CategoryVerdict:
    """Classification of one path homomorphism against the category tower.

    ``witnesses`` holds a counterexample for exactly the false flags, keyed
    by flag name; each witness is the lexicographically first one in
    declaration order.
    """

    is_path_hom: bool
    vertex_injective: bool
    vertex_bijective_finite: bool
    monotone: bool
    regular: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def in_pg(self) -> bool:
        return self.is_path_hom

    @property
    def in_ipg(self) -> bool:
        return self.is_path_hom and self.vertex_injective

    @property
    def in_bpg(self) -> bool:
        return self.is_path_hom and self.vertex_bijective_finite

    @property
    def in_mipg(self) -> bool:
        return self.in_ipg and self.monotone

    @property
    def in_mbpg(self) -> bool:
        return self.in_bpg and self.monotone

    @property
    def in_rmipg(self) -> bool:
        return self.in_mipg and self.regular

    @property
    def in_rmbpg(self) -> bool:
        return self.in_mbpg and self.regular

    def satisfies(self, category: str) -> bool:
        try:
            return getattr(self, "in_" + category.lower())
        except AttributeError:
            raise ValueError(f"unknown category {category!r}; expected one of {CATEGORY_NAMES}")

    def to_json_data(self) -> dict:
        return {
            "is_path_hom": self.is_path_hom,
            "vertex_injective": self.vertex_injective,
            "vertex_bijective_finite": self.vertex_bijective_finite,
            "monotone": self.monotone,
            "regular": self.regular,
            "classes": {name: self.satisfies(name) for name in CATEGORY_NAMES},
            "witnesses": self.witnesses,
        }


def _vertex_injectivity_witness(f: PathHom) -> Optional[list]:
    vs = f.dom.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if f.vmap[vs[i]] == f.vmap[vs[j]]:
                return [vs[i], vs[j]]
    return None


def _monotonicity_witness(f: PathHom) -> Optional[list]:
    es = f.dom.edges
    for e in es:
        for e2 in es:
            if e != e2 and prefix_leq(f.emap[e], f.emap[e2]):
                return [e, e2]
    return None


def _expansion_failure(cod: Graph, root: str, paths: Sequence[Path], prefix: list) -> Optional[dict]:
    """None iff ``paths`` (positive-length, from ``root``) is the leaf set of
    a complete expansion tree rooted at ``root``.

    The tree view: partition by first edge; the first-edge set must be all of
    the root's outgoing edges; each part is either the single path that stops
    there (a leaf) or recursively an expansion set one level down.  A missing
    outgoing edge, or a leaf that other paths extend past, is a failure.
    """
    groups: dict[str, list[Path]] = {}
    for p in paths:
        x = p.edges[0]
        rest = p.drop_first()
        groups.setdefault(x, []).append(rest)
    for x in cod.out_edges(root):
        if x not in groups:
            return {"kind": "missing_branch", "path": prefix + [x]}
    for x in cod.out_edges(root):
        residuals = groups[x]
        stopped = [r for r in residuals if r.is_vertex]
        if stopped:
            if len(residuals) == 1:
                continue
            return {"kind": "leaf_extension_conflict", "path": prefix + [x]}
        failure = _expansion_failure(cod, cod.tgt(x), residuals, prefix + [x])
        if failure is not None:
            return failure
    return None


def is_regular(f: PathHom) -> CheckResult:
    """Regularity of f; a False verdict carries the first offending vertex
    together with the specific clause that broke."""
    reg0 = set(reg0_vertices(f.dom))
    for v in regular_vertices(f.dom):
        star = f.dom.out_edges(v)
        images = [f.emap[e] for e in star]
        if v in reg0 and images[0].is_vertex:
            # 0-regular escape: the lone loop may collapse onto its vertex
            continue
        for j in range(len(star)):
            for i in range(j):
                if images[i] == images[j]:
                    return CheckResult(
                        False,
                        {"vertex": v, "kind": "star_not_injective", "edges": [star[i], star[j]]},
                    )
        for e, img in zip(star, images):
            if img.is_vertex:
                return CheckResult(False, {"vertex": v, "kind": "collapsed_edge", "edge": e})
        failure = _expansion_failure(f.cod, f.vmap[v], images, [])
        if failure is not None:
            return CheckResult(False, {"vertex": v, **failure})
    return CheckResult(True)


def classify(f: PathHom) -> CategoryVerdict:
    """Evaluate every predicate of the category tower on f."""
    for g in (f.dom, f.cod):
        if g.infinite_emitters:
            raise UnsupportedInfiniteEmitter(
                "classification is defined over fully listed graphs only"
            )
    witnesses: dict = {}

    inj_witness = _vertex_injectivity_witness(f)
    vertex_injective = inj_witness is None
    if inj_witness is not None:
        witnesses["vertex_injective"] = inj_witness

    if inj_witness is not None:
        bij_witness = {"kind": "not_injective", "vertices": inj_witness}
    else:
        covered = set(f.vmap.values())
        missing = next((w for w in f.cod.vertices if w not in covered), None)
        bij_witness = None if missing is None else {"kind": "not_surjective", "vertex": missing}
    vertex_bijective = bij_witness is None
    if bij_witness is not None:
        witnesses["vertex_bijective_finite"] = bij_witness

    mono_witness = _monotonicity_witness(f)
    monotone = mono_witness is None
    if mono_witness is not None:
        witnesses["monotone"] = mono_witness

    regular_result = is_regular(f)
    if not regular_result.ok:
        witnesses["regular"] = regular_result.witness

    return CategoryVerdict(
        is_path_hom=True,
        vertex_injective=vertex_injective,
        vertex_bijective_finite=vertex_bijective,
        monotone=monotone,
        regular=regular_result.ok,
        witnesses=witnesses,
    )


def enumerate_path_homs(
    dom: Graph,
    cod: Graph,
    max_image_len: int,
    vertex_injective_only: bool = False,
) -> Iterator[PathHom]:
    """All path homomorphisms dom -> cod whose edge images have length at
    most ``max_image_len``, in deterministic order.

    With ``vertex_injective_only`` the vertex maps are restricted to
    injections, which prunes the search space for IPG-and-above surveys.
    """
    pools: dict[tuple[str, str], list[Path]] = {}
    for p in paths_up_to(cod, max_image_len):
        pools.setdefault((p.source, p.target), []).append(p)

    nv = len(dom.vertices)
    for choice in itertools.product(cod.vertices, repeat=nv):
        if vertex_injective_only and len(set(choice)) != nv:
            continue
        vmap = dict(zip(dom.vertices, choice))
        candidate_lists = []
        for e in dom.edges:
            candidates = pools.get((vmap[dom.src(e)], vmap[dom.tgt(e)]), [])
            if not candidates:
                candidate_lists = None
                break
            candidate_lists.append(candidates)
        if candidate_lists is None:
            continue
        for images in itertools.product(*candidate_lists):
            yield PathHom(dom, cod, vmap, dict(zip(dom.edges, images)))
