"""Finite directed graphs, finite paths, the prefix order, and path sets.

Identifiers are opaque strings.  Every iteration order in this module derives
from declaration order, so everything built on top (normal forms, witnesses,
reports) is deterministic.

A vertex may carry a symbolic "infinite emitter" flag: it is then understood
to emit the listed edges plus an unspecified number of extra edges, optionally
confined to a declared set of target vertices.  Operations that would need
the unlisted edges refuse such graphs with UnsupportedInfiniteEmitter.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    NonComposablePath,
    UnsupportedInfiniteEmitter,
)


class CheckResult(NamedTuple):
    """A boolean verdict plus a counterexample when the verdict is False."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


class Graph:
    """A finite directed graph.

    ``vertices`` is a sequence of ids, ``edges`` a sequence of
    ``(id, src, tgt)`` triples, ``infinite_emitters`` a sequence whose items
    are either a vertex id or a ``(vertex, targets)`` pair declaring where the
    unlisted edges land (``targets=None`` means undeclared).
    """

    __slots__ = (
        "vertices",
        "edges",
        "infinite_emitters",
        "_triples",
        "_src",
        "_tgt",
        "_out",
        "_in",
        "_vindex",
        "_eindex",
        "_hash",
    )

    def __init__(self, vertices=(), edges=(), infinite_emitters=()):
        vindex = {}
        for v in vertices:
            if v in vindex:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            vindex[v] = len(vindex)
        self.vertices = tuple(vindex)
        self._vindex = vindex

        eindex, src, tgt = {}, {}, {}
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        triples = []
        for item in edges:
            e, s, t = item
            if e in eindex:
                raise DuplicateId(f"duplicate edge id {e!r}")
            if s not in vindex:
                raise DanglingEndpoint(f"edge {e!r}: unknown source vertex {s!r}")
            if t not in vindex:
                raise DanglingEndpoint(f"edge {e!r}: unknown target vertex {t!r}")
            eindex[e] = len(eindex)
            src[e], tgt[e] = s, t
            out[s].append(e)
            inc[t].append(e)
            triples.append((e, s, t))
        self.edges = tuple(eindex)
        self._eindex = eindex
        self._src, self._tgt = src, tgt
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}
        self._triples = tuple(triples)

        emitters = []
        seen = set()
        for item in infinite_emitters:
            if isinstance(item, str):
                v, targets = item, None
            else:
                v, targets = item
                targets = None if targets is None else tuple(targets)
            if v not in vindex:
                raise DanglingEndpoint(f"infinite emitter flag on unknown vertex {v!r}")
            if v in seen:
                raise DuplicateId(f"vertex {v!r} flagged as infinite emitter twice")
            seen.add(v)
            if targets is not None:
                if not targets:
                    raise DanglingEndpoint(
                        f"infinite emitter {v!r}: declared target set is empty"
                    )
                for w in targets:
                    if w not in vindex:
                        raise DanglingEndpoint(
                            f"infinite emitter {v!r}: unknown target vertex {w!r}"
                        )
            emitters.append((v, targets))
        self.infinite_emitters = tuple(emitters)
        self._hash = hash((self.vertices, self._triples, self.infinite_emitters))

    # -- accessors ---------------------------------------------------------

    def src(self, e: str) -> str:
        return self._src[e]

    def tgt(self, e: str) -> str:
        return self._tgt[e]

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> tuple[str, ...]:
        return self._in[v]

    def has_vertex(self, v) -> bool:
        return v in self._vindex

    def has_edge(self, e) -> bool:
        return e in self._eindex

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def edge_index(self, e: str) -> int:
        return self._eindex[e]

    def edge_triples(self) -> tuple[tuple[str, str, str], ...]:
        return self._triples

    def is_flagged(self, v: str) -> bool:
        return any(v == w for w, _ in self.infinite_emitters)

    def emitter_targets(self, v: str) -> Optional[tuple[str, ...]]:
        """Declared landing set of the unlisted edges out of flagged ``v``."""
        for w, targets in self.infinite_emitters:
            if w == v:
                return targets
        raise KeyError(v)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.vertices == other.vertices
            and self._triples == other._triples
            and self.infinite_emitters == other.infinite_emitters
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        flag = f", flagged={len(self.infinite_emitters)}" if self.infinite_emitters else ""
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges{flag})"


def validate_graph(g: Graph) -> None:
    """Re-run the structural checks on an existing graph.

    Construction already enforces them, so this only fires on graphs whose
    internals were tampered with; it exists so deserialized data has a single
    audit point.
    """
    Graph(g.vertices, g._triples, g.infinite_emitters)


class Path:
    """A length-0 path (a vertex) or a nonempty composable edge sequence."""

    __slots__ = ("graph", "vertex", "edges")

    def __init__(self, graph: Graph, vertex: Optional[str] = None, edges: Sequence[str] = ()):
        edges = tuple(edges)
        if edges:
            if vertex is not None:
                raise ValueError("a positive-length path must not also name a vertex")
            prev = None
            for e in edges:
                if not graph.has_edge(e):
                    raise DanglingEndpoint(f"unknown edge {e!r}")
                if prev is not None and graph.tgt(prev) != graph.src(e):
                    raise NonComposablePath(
                        f"edge {prev!r} ends at {graph.tgt(prev)!r} but "
                        f"edge {e!r} starts at {graph.src(e)!r}"
                    )
                prev = e
        else:
            if vertex is None:
                raise ValueError("a length-0 path must name its vertex")
            if not graph.has_vertex(vertex):
                raise DanglingEndpoint(f"unknown vertex {vertex!r}")
        self.graph = graph
        self.vertex = vertex
        self.edges = edges

    @classmethod
    def at(cls, graph: Graph, vertex: str) -> "Path":
        return cls(graph, vertex=vertex)

    @classmethod
    def of(cls, graph: Graph, edges: Sequence[str]) -> "Path":
        if not edges:
            raise ValueError("Path.of needs at least one edge; use Path.at for vertices")
        return cls(graph, edges=edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def source(self) -> str:
        return self.vertex if self.is_vertex else self.graph.src(self.edges[0])

    @property
    def target(self) -> str:
        return self.vertex if self.is_vertex else self.graph.tgt(self.edges[-1])

    def __len__(self) -> int:
        return len(self.edges)

    def concat(self, other: "Path") -> "Path":
        if self.graph != other.graph:
            raise ValueError("cannot concatenate paths from different graphs")
        if self.target != other.source:
            raise NonComposablePath(
                f"path ending at {self.target!r} cannot precede one starting at {other.source!r}"
            )
        if self.is_vertex:
            return other
        if other.is_vertex:
            return self
        return Path(self.graph, edges=self.edges + other.edges)

    def extend(self, edge: str) -> "Path":
        return self.concat(Path.of(self.graph, (edge,)))

    def drop_last(self) -> "Path":
        if self.is_vertex:
            raise ValueError("a length-0 path has no last edge")
        if len(self.edges) == 1:
            return Path.at(self.graph, self.graph.src(self.edges[0]))
        return Path(self.graph, edges=self.edges[:-1])

    def drop_first(self) -> "Path":
        if self.is_vertex:
            raise ValueError("a length-0 path has no first edge")
        if len(self.edges) == 1:
            return Path.at(self.graph, self.graph.tgt(self.edges[0]))
        return Path(self.graph, edges=self.edges[1:])

    def sort_key(self) -> tuple:
        """Length-major, then lexicographic in edge declaration order."""
        if self.is_vertex:
            return (0, (self.graph.vertex_index(self.vertex),))
        return (len(self.edges), tuple(self.graph.edge_index(e) for e in self.edges))

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return (
            self.vertex == other.vertex
            and self.edges == other.edges
            and self.graph == other.graph
        )

    def __hash__(self):
        return hash((self.vertex, self.edges))

    def __str__(self):
        return self.vertex if self.is_vertex else " ".join(self.edges)

    def __repr__(self):
        return f"Path({str(self)!r})"


def prefix_leq(a: Path, b: Path) -> bool:
    """Whether ``b = a . g`` for some path ``g`` (vertices are prefixes of the
    paths starting at them)."""
    if a.graph != b.graph:
        raise ValueError("prefix order only compares paths in the same graph")
    if a.is_vertex:
        return b.source == a.vertex
    if len(a) > len(b):
        return False
    return b.edges[: len(a.edges)] == a.edges


def strip_prefix(a: Path, b: Path) -> Path:
    """The unique ``g`` with ``b = a . g``; requires ``prefix_leq(a, b)``."""
    if not prefix_leq(a, b):
        raise ValueError(f"{a!r} is not a prefix of {b!r}")
    if a.is_vertex:
        return b
    rest = b.edges[len(a.edges):]
    if rest:
        return Path(b.graph, edges=rest)
    return Path.at(b.graph, b.target)


def _require_unflagged(g: Graph, op: str) -> None:
    if g.infinite_emitters:
        v = g.infinite_emitters[0][0]
        raise UnsupportedInfiniteEmitter(
            f"{op}: vertex {v!r} is flagged as an infinite emitter, so the "
            f"listed edges are incomplete"
        )


def regular_vertices(g: Graph) -> tuple[str, ...]:
    """Vertices that emit at least one and finitely many edges.

    Flagged vertices would never qualify, but their presence makes the listed
    edge set unreliable for everything else too, so the whole graph is
    refused.
    """
    _require_unflagged(g, "regular_vertices")
    return tuple(v for v in g.vertices if g.out_edges(v))


def reg0_vertices(g: Graph) -> tuple[str, ...]:
    """Regular vertices whose single outgoing edge is a self-loop."""
    _require_unflagged(g, "reg0_vertices")
    out = []
    for v in g.vertices:
        es = g.out_edges(v)
        if len(es) == 1 and g.tgt(es[0]) == v:
            out.append(v)
    return tuple(out)


def star_letter(base: Graph, letter: str) -> str:
    """Involution on the letters of the doubled graph built from ``base``:
    an original edge gains a trailing ``*``, a ghost edge loses it."""
    if base.has_edge(letter):
        return letter + "*"
    if letter.endswith("*") and base.has_edge(letter[:-1]):
        return letter[:-1]
    raise DanglingEndpoint(f"{letter!r} is not a letter of the doubled graph")


@lru_cache(maxsize=None)
def extended_graph(g: Graph) -> Graph:
    """The doubled graph: every edge ``e`` gains a reversed ghost ``e*``."""
    ghosts = [(e + "*", g.tgt(e), g.src(e)) for e in g.edges]
    return Graph(g.vertices, g.edge_triples() + tuple(ghosts), g.infinite_emitters)


@lru_cache(maxsize=None)
def _paths_of_length(g: Graph, n: int) -> tuple[Path, ...]:
    if n == 0:
        return tuple(Path.at(g, v) for v in g.vertices)
    if n == 1:
        return tuple(Path.of(g, (e,)) for e in g.edges)
    out = []
    for p in _paths_of_length(g, n - 1):
        for e in g.out_edges(p.target):
            out.append(p.extend(e))
    # extending keeps each level sorted by declaration-order lex, except that
    # level 1 must seed from global edge order rather than per-vertex order
    return tuple(sorted(out, key=Path.sort_key))


def paths_up_to(g: Graph, n: int) -> tuple[Path, ...]:
    """All paths of length <= n, ordered by length then lexicographically in
    edge declaration order.  Every bounded search in the package routes
    through this enumerator."""
    if n < 0:
        raise ValueError("path length bound must be >= 0")
    _require_unflagged(g, "paths_up_to")
    out = []
    for k in range(n + 1):
        out.extend(_paths_of_length(g, k))
    return tuple(out)


def iter_paths(g: Graph, n: int) -> Iterator[Path]:
    """Lazy variant of paths_up_to, in the same order."""
    if n < 0:
        raise ValueError("path length bound must be >= 0")
    _require_unflagged(g, "iter_paths")
    for k in range(n + 1):
        yield from _paths_of_length(g, k)


def vertex_simple_cycles(g: Graph) -> tuple[tuple[str, ...], ...]:
    """All cycles visiting each of their vertices once, as edge tuples.

    Each cycle is reported once, rotated to start at its smallest vertex in
    declaration order; discovery order is deterministic.
    """
    cycles = []

    def walk(start_i: int, u: str, visited: set, acc: list) -> None:
        for e in g.out_edges(u):
            w = g.tgt(e)
            wi = g.vertex_index(w)
            if wi == start_i:
                cycles.append(tuple(acc + [e]))
            elif wi > start_i and w not in visited:
                visited.add(w)
                acc.append(e)
                walk(start_i, w, visited, acc)
                acc.pop()
                visited.remove(w)

    for i, v in enumerate(g.vertices):
        walk(i, v, {v}, [])
    return tuple(cycles)


def vertex_simple_loops_have_exits(g: Graph) -> CheckResult:
    """Whether every vertex-simple loop has an edge off itself.

    The witness is the edge list of the first exitless loop found.
    """
    _require_unflagged(g, "vertex_simple_loops_have_exits")
    for cycle in vertex_simple_cycles(g):
        cycle_edges = set(cycle)
        on_cycle = [g.src(e) for e in cycle]
        if not any(
            x not in cycle_edges for u in on_cycle for x in g.out_edges(u)
        ):
            return CheckResult(False, list(cycle))
    return CheckResult(True)


class PathSet:
    """A finite set of paths in one graph; the path-set semiring carrier."""

    __slots__ = ("graph", "paths")

    def __init__(self, graph: Graph, paths: Iterable[Path] = ()):
        paths = frozenset(paths)
        for p in paths:
            if p.graph != graph:
                raise ValueError("all paths of a PathSet must live in its graph")
        self.graph = graph
        self.paths = paths

    def __eq__(self, other):
        if not isinstance(other, PathSet):
            return NotImplemented
        return self.graph == other.graph and self.paths == other.paths

    def __hash__(self):
        return hash(self.paths)

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(sorted(self.paths, key=Path.sort_key))

    def __repr__(self):
        inner = ", ".join(str(p) for p in self)
        return f"PathSet{{{inner}}}"


def pathset_zero(g: Graph) -> PathSet:
    return PathSet(g)


def pathset_unit(g: Graph) -> PathSet:
    """The multiplicative unit: all vertices as length-0 paths."""
    return PathSet(g, (Path.at(g, v) for v in g.vertices))


def pathset_add(a: PathSet, b: PathSet) -> PathSet:
    if a.graph != b.graph:
        raise ValueError("path sets live in different graphs")
    return PathSet(a.graph, a.paths | b.paths)


def pathset_mul(a: PathSet, b: PathSet) -> PathSet:
    """Elementwise concatenation, dropping non-composable pairs."""
    if a.graph != b.graph:
        raise ValueError("path sets live in different graphs")
    out = set()
    for p in a.paths:
        for q in b.paths:
            if p.target == q.source:
                out.add(p.concat(q))
    return PathSet(a.graph, out)
