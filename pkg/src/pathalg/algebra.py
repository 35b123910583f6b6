"""Exact-arithmetic elements of path algebras and their Cuntz-Krieger
quotients, with normal forms, the star involution, and induced maps.

A context fixes the graph and the relation set:

    path             the plain path algebra; basis = all finite paths
    relative_cohn(X) the quotient of the doubled path algebra by
                     (CK1)  S_e* S_f = delta_{e,f} P_{t(e)}   always, and
                     (CK2)  sum_{s(e)=v} S_e S_e* = P_v       for v in X

with Cohn = X empty and Leavitt = X all regular vertices.  Scalars are
rationals, so the star involution fixes coefficients.

Normal-form basis in the quotient modes: monomials S_alpha S_beta* with
t(alpha) = t(beta), except those where alpha and beta both end in the special
edge of some v in X (the declaration-order-first edge out of v).  Such a pair
rewrites by the tail reduction

    (a g, b g)  ->  (a, b) - sum_{e out of v, e != g} (a e, b e)

whose sum terms are already tail-normal; only the shorter core recurses, so
rewriting terminates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import (
    ContextMismatch,
    NotMonotone,
    NotRegular,
    NotVertexInjective,
    StarInPathMode,
    UnsupportedInfiniteEmitter,
)
from .graphs import Graph, Path, prefix_leq, regular_vertices, strip_prefix
from .morphisms import PathHom, classify

PATH = "path"
RELATIVE_COHN = "relative_cohn"


class Letter(NamedTuple):
    """One generator symbol: kind 'P' (vertex projection), 'S' (edge), or
    'S*' (starred edge)."""

    kind: str
    name: str

    def render(self) -> str:
        return self.name + ("*" if self.kind == "S*" else "")


@dataclass(frozen=True)
class GeneratorWord:
    """A scalar multiple of a product of generator letters."""

    letters: tuple[Letter, ...]
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def __str__(self):
        body = " ".join(l.render() for l in self.letters) or "1"
        return body if self.scalar == 1 else f"{self.scalar} {body}"


class Monomial(NamedTuple):
    """Basis monomial: a bare Path in path mode (right is None), or the pair
    (left, right) denoting S_left S_right* with matching targets."""

    left: Path
    right: Optional[Path]

    def sort_key(self):
        if self.right is None:
            return (self.left.sort_key(),)
        return (self.left.sort_key(), self.right.sort_key())


class AlgebraContext:
    """A graph together with a relation mode; builds elements and words."""

    __slots__ = ("graph", "mode", "relation_vertices", "special_edge")

    def __init__(self, graph: Graph, mode: str, relation_vertices: Iterable[str] = ()):
        if graph.infinite_emitters:
            raise UnsupportedInfiniteEmitter(
                "algebra contexts need the full edge list; flagged graphs are refused"
            )
        if mode not in (PATH, RELATIVE_COHN):
            raise ValueError(f"unknown mode {mode!r}")
        self.graph = graph
        self.mode = mode
        if mode == PATH:
            if tuple(relation_vertices):
                raise ValueError("path mode carries no relation vertices")
            self.relation_vertices = ()
            self.special_edge = {}
        else:
            reg = set(regular_vertices(graph))
            seen = []
            for v in relation_vertices:
                if v not in reg:
                    raise ValueError(f"relation vertex {v!r} is not regular")
                if v not in seen:
                    seen.append(v)
            # declaration order, for deterministic relation enumeration
            self.relation_vertices = tuple(v for v in graph.vertices if v in seen)
            self.special_edge = {v: graph.out_edges(v)[0] for v in self.relation_vertices}

    @classmethod
    def path(cls, graph: Graph) -> "AlgebraContext":
        return cls(graph, PATH)

    @classmethod
    def cohn(cls, graph: Graph) -> "AlgebraContext":
        return cls(graph, RELATIVE_COHN)

    @classmethod
    def relative_cohn(cls, graph: Graph, vertices: Iterable[str]) -> "AlgebraContext":
        return cls(graph, RELATIVE_COHN, vertices)

    @classmethod
    def leavitt(cls, graph: Graph) -> "AlgebraContext":
        return cls(graph, RELATIVE_COHN, regular_vertices(graph))

    @property
    def is_path_mode(self) -> bool:
        return self.mode == PATH

    @property
    def is_cohn(self) -> bool:
        return self.mode == RELATIVE_COHN and not self.relation_vertices

    @property
    def is_leavitt(self) -> bool:
        return self.mode == RELATIVE_COHN and set(self.relation_vertices) == set(
            regular_vertices(self.graph)
        )

    def describe(self) -> str:
        if self.is_path_mode:
            return "path algebra"
        if self.is_cohn:
            return "Cohn algebra"
        if self.is_leavitt:
            return "Leavitt algebra"
        return f"relative Cohn algebra at {list(self.relation_vertices)}"

    def __eq__(self, other):
        if not isinstance(other, AlgebraContext):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.mode == other.mode
            and self.relation_vertices == other.relation_vertices
        )

    def __hash__(self):
        return hash((self.graph, self.mode, self.relation_vertices))

    def __repr__(self):
        return f"AlgebraContext({self.describe()}, {self.graph!r})"

    # -- element builders ----------------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def unit(self) -> "AlgebraElement":
        # sum of all vertex projections; the empty graph's algebra is 0
        terms = {}
        for v in self.graph.vertices:
            terms[self._vertex_monomial(v)] = Fraction(1)
        return AlgebraElement(self, terms)

    def _vertex_monomial(self, v: str) -> Monomial:
        p = Path.at(self.graph, v)
        return Monomial(p, None if self.is_path_mode else p)

    def vertex(self, v: str) -> "AlgebraElement":
        if not self.graph.has_vertex(v):
            raise KeyError(v)
        return AlgebraElement(self, {self._vertex_monomial(v): Fraction(1)})

    def edge(self, e: str) -> "AlgebraElement":
        return self.path_element(Path.of(self.graph, (e,)))

    def edge_star(self, e: str) -> "AlgebraElement":
        if self.is_path_mode:
            raise StarInPathMode("starred generators only exist in the quotient modes")
        p = Path.of(self.graph, (e,))
        mono = Monomial(Path.at(self.graph, p.target), p)
        return AlgebraElement(self, {mono: Fraction(1)})

    def path_element(self, p: Path) -> "AlgebraElement":
        if p.graph != self.graph:
            raise ContextMismatch("path lives in a different graph")
        if self.is_path_mode:
            return AlgebraElement(self, {Monomial(p, None): Fraction(1)})
        mono = Monomial(p, Path.at(self.graph, p.target))
        return AlgebraElement(self, {mono: Fraction(1)})

    def pair_element(self, left: Path, right: Path) -> "AlgebraElement":
        """S_left S_right*, renormalized."""
        if self.is_path_mode:
            raise StarInPathMode("pair monomials only exist in the quotient modes")
        if left.graph != self.graph or right.graph != self.graph:
            raise ContextMismatch("paths live in a different graph")
        if left.target != right.target:
            raise ValueError("pair monomial needs matching targets")
        acc: dict[Monomial, Fraction] = {}
        _accumulate_pair(self, left, right, Fraction(1), acc)
        return AlgebraElement(self, acc)

    def letter_element(self, letter: Letter) -> "AlgebraElement":
        if letter.kind == "P":
            return self.vertex(letter.name)
        if letter.kind == "S":
            return self.edge(letter.name)
        if letter.kind == "S*":
            return self.edge_star(letter.name)
        raise ValueError(f"unknown letter kind {letter.kind!r}")


def _accumulate_pair(
    ctx: AlgebraContext, left: Path, right: Path, coeff: Fraction, acc: dict
) -> None:
    """Add coeff * S_left S_right* to acc in normal form (tail reduction)."""
    special = ctx.special_edge
    while left.edges and right.edges and left.edges[-1] == right.edges[-1]:
        gamma = left.edges[-1]
        v = ctx.graph.src(gamma)
        if special.get(v) != gamma:
            break
        left = left.drop_last()
        right = right.drop_last()
        for e in ctx.graph.out_edges(v):
            if e == gamma:
                continue
            # sum terms end in a non-special edge: already tail-normal
            mono = Monomial(left.extend(e), right.extend(e))
            acc[mono] = acc.get(mono, Fraction(0)) - coeff
    mono = Monomial(left, right)
    acc[mono] = acc.get(mono, Fraction(0)) + coeff


def _prune(terms: dict) -> dict:
    return {m: c for m, c in terms.items() if c}


class AlgebraElement:
    """A finite rational combination of basis monomials, kept normalized."""

    __slots__ = ("context", "terms")

    def __init__(self, context: AlgebraContext, terms: Mapping[Monomial, Fraction]):
        self.context = context
        self.terms = _prune(dict(terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(sorted(self.terms, key=Monomial.sort_key))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def _check_context(self, other: "AlgebraElement") -> None:
        if self.context != other.context:
            raise ContextMismatch("elements live in different algebra contexts")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_context(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return AlgebraElement(self.context, terms)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.context, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "AlgebraElement":
        scalar = Fraction(scalar)
        return AlgebraElement(self.context, {m: scalar * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> "AlgebraElement":
        if self.context.is_path_mode:
            raise StarInPathMode("the path algebra carries no star involution here")
        # (left, right) -> (right, left); tail-normality is symmetric
        return AlgebraElement(
            self.context, {Monomial(m.right, m.left): c for m, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in self.monomials():
            coeff = self.terms[mono]
            body = _render_monomial(mono)
            mag = abs(coeff)
            text = body if mag == 1 else f"{mag} {body}"
            if not parts:
                parts.append(text if coeff > 0 else "-" + text)
            else:
                parts.append((" + " if coeff > 0 else " - ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"<{self} :: {self.context.describe()}>"


def _render_monomial(mono: Monomial) -> str:
    left, right = mono.left, mono.right
    letters = list(left.edges)
    if right is not None:
        letters.extend(e + "*" for e in reversed(right.edges))
    if not letters:
        return left.vertex
    return " ".join(letters)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check_context(b)
    ctx = a.context
    acc: dict[Monomial, Fraction] = {}
    if ctx.is_path_mode:
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                if m1.left.target != m2.left.source:
                    continue
                mono = Monomial(m1.left.concat(m2.left), None)
                acc[mono] = acc.get(mono, Fraction(0)) + c1 * c2
        return AlgebraElement(ctx, acc)
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            beta, gamma = m1.right, m2.left
            # S_beta* S_gamma collapses along the prefix order or dies
            if prefix_leq(beta, gamma):
                rest = strip_prefix(beta, gamma)
                _accumulate_pair(ctx, m1.left.concat(rest), m2.right, c1 * c2, acc)
            elif prefix_leq(gamma, beta):
                rest = strip_prefix(gamma, beta)
                _accumulate_pair(ctx, m1.left, m2.right.concat(rest), c1 * c2, acc)
    return AlgebraElement(ctx, acc)


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def scalar_mul(scalar, a: AlgebraElement) -> AlgebraElement:
    return a.scale(scalar)


def star(a: AlgebraElement) -> AlgebraElement:
    return a.star()


def normal_form(ctx: AlgebraContext, word: GeneratorWord) -> AlgebraElement:
    """Evaluate a generator word to its basis representation."""
    result = ctx.unit()
    for letter in word.letters:
        if letter.kind == "S*" and ctx.is_path_mode:
            raise StarInPathMode("starred letters are not allowed in path mode")
        result = multiply(result, ctx.letter_element(letter))
    return result.scale(word.scalar)


# -- induced homomorphisms ----------------------------------------------------


def _map_path(f: PathHom, p: Path) -> Path:
    return f.apply(p)


def induce_path(f: PathHom, a: AlgebraElement) -> AlgebraElement:
    """Push a path-algebra element along f (needs vertex-injectivity, which
    is what keeps non-composable products at zero in the image)."""
    if not a.context.is_path_mode or a.context.graph != f.dom:
        raise ContextMismatch("element does not live in the path algebra of the domain")
    verdict = classify(f)
    if not verdict.vertex_injective:
        raise NotVertexInjective(
            "induced path-algebra map needs a vertex-injective morphism",
            witness=verdict.witnesses.get("vertex_injective"),
        )
    target = AlgebraContext.path(f.cod)
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in a.terms.items():
        key = Monomial(_map_path(f, mono.left), None)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return AlgebraElement(target, terms)


def _induced_quotient_map(
    f: PathHom, a: AlgebraElement, target: AlgebraContext
) -> AlgebraElement:
    acc: dict[Monomial, Fraction] = {}
    for mono, coeff in a.terms.items():
        _accumulate_pair(target, _map_path(f, mono.left), _map_path(f, mono.right), coeff, acc)
    return AlgebraElement(target, acc)


def induce_cohn(f: PathHom, a: AlgebraElement) -> AlgebraElement:
    """Push a Cohn-algebra element along f; defined for MIPG morphisms."""
    if a.context.graph != f.dom or not a.context.is_cohn or a.context.is_path_mode:
        raise ContextMismatch("element does not live in the Cohn algebra of the domain")
    verdict = classify(f)
    if not verdict.vertex_injective:
        raise NotVertexInjective(
            "induced Cohn map needs a vertex-injective morphism",
            witness=verdict.witnesses.get("vertex_injective"),
        )
    if not verdict.monotone:
        raise NotMonotone(
            "induced Cohn map needs a monotone morphism",
            witness=verdict.witnesses.get("monotone"),
        )
    return _induced_quotient_map(f, a, AlgebraContext.cohn(f.cod))


def induce_leavitt(f: PathHom, a: AlgebraElement) -> AlgebraElement:
    """Push a Leavitt-algebra element along f; defined for RMIPG morphisms."""
    if a.context.graph != f.dom or a.context.is_path_mode or not a.context.is_leavitt:
        raise ContextMismatch("element does not live in the Leavitt algebra of the domain")
    verdict = classify(f)
    if not verdict.vertex_injective:
        raise NotVertexInjective(
            "induced Leavitt map needs a vertex-injective morphism",
            witness=verdict.witnesses.get("vertex_injective"),
        )
    if not verdict.monotone:
        raise NotMonotone(
            "induced Leavitt map needs a monotone morphism",
            witness=verdict.witnesses.get("monotone"),
        )
    if not verdict.regular:
        raise NotRegular(
            "induced Leavitt map needs a regular morphism",
            witness=verdict.witnesses.get("regular"),
        )
    return _induced_quotient_map(f, a, AlgebraContext.leavitt(f.cod))


def induce(f: PathHom, a: AlgebraElement) -> AlgebraElement:
    """Dispatch on the element's context mode."""
    if a.context.is_path_mode:
        return induce_path(f, a)
    if a.context.is_cohn:
        return induce_cohn(f, a)
    if a.context.is_leavitt:
        return induce_leavitt(f, a)
    raise ContextMismatch(
        "induced maps exist for the path, Cohn, and Leavitt contexts only"
    )


# -- relation preservation -----------------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    kind: str          # "CK1" or "CK2"
    label: str         # human-readable relation instance
    data: tuple        # (e, f) for CK1, (v,) for CK2
    ok: bool
    residual: str      # normal form of the image, "0" when ok

    def to_json_data(self) -> dict:
        return {
            "kind": self.kind,
            "relation": self.label,
            "ok": self.ok,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class RelationReport:
    mode: str
    checks: tuple[RelationCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[RelationCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def to_json_data(self) -> dict:
        return {
            "mode": self.mode,
            "all_ok": self.all_ok,
            "checks": [c.to_json_data() for c in self.checks],
        }


def verify_relations_preserved(f: PathHom, mode: str) -> RelationReport:
    """Push every defining relation of the domain context through the
    generator assignment and normalize in the codomain context; the images
    must vanish for the induced map of that mode to exist."""
    mode = mode.lower()
    if mode == PATH:
        return RelationReport(PATH, ())
    if mode == "cohn":
        dom_ctx = AlgebraContext.cohn(f.dom)
        cod_ctx = AlgebraContext.cohn(f.cod)
    elif mode == "leavitt":
        dom_ctx = AlgebraContext.leavitt(f.dom)
        cod_ctx = AlgebraContext.leavitt(f.cod)
    else:
        raise ValueError(f"unknown relation mode {mode!r}")

    checks = []
    g = f.dom
    for e in g.edges:
        for e2 in g.edges:
            # CK1 image: S_f(e)* S_f(e2) - delta P_f(t(e))
            img = multiply(
                cod_ctx.pair_element(Path.at(f.cod, f.apply(Path.of(g, (e,))).target), f.apply(Path.of(g, (e,)))),
                cod_ctx.path_element(f.apply(Path.of(g, (e2,)))),
            )
            if e == e2:
                img = img - cod_ctx.vertex(f.vertex_image(g.tgt(e)))
            checks.append(
                RelationCheck(
                    kind="CK1",
                    label=f"{e}* {e2}"
                    + (f" - {g.tgt(e)}" if e == e2 else ""),
                    data=(e, e2),
                    ok=img.is_zero,
                    residual=str(img),
                )
            )
    for v in dom_ctx.relation_vertices:
        total = cod_ctx.zero()
        for e in g.out_edges(v):
            img_path = f.apply(Path.of(g, (e,)))
            total = total + cod_ctx.pair_element(img_path, img_path)
        img = total - cod_ctx.vertex(f.vertex_image(v))
        label = " + ".join(f"{e} {e}*" for e in g.out_edges(v)) + f" - {v}"
        checks.append(
            RelationCheck(kind="CK2", label=label, data=(v,), ok=img.is_zero, residual=str(img))
        )
    return RelationReport(mode, tuple(checks))
