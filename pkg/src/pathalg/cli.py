"""Command-line interface.

Exit codes: 0 success, 1 semantic verdict against the input (a failed
requirement, inadmissible inclusion, failed verification), 2 malformed
input or usage.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Mapping, Optional

from . import registry
from .algebra import AlgebraContext, induce
from .admissible import breaking_vertices, is_admissible, kernel_generators
from .errors import (
    AmbiguousInfiniteEmitter,
    ContextMismatch,
    DomainMismatch,
    ExpressionError,
    FileFormatError,
    GraphError,
    HypothesisNotMet,
    InvalidInclusion,
    InvalidPathHom,
    NotAdmissible,
    NotMonotone,
    NotRegular,
    NotVertexInjective,
    PreimageNotFound,
    StarInPathMode,
    UnsupportedInfiniteEmitter,
)
from .expressions import parse_expression
from .graphs import Graph
from .jsonio import (
    canonical_dumps,
    load_graph,
    load_inclusion,
    load_instance,
    load_morphism,
    morphism_to_data,
)
from .morphisms import CATEGORY_NAMES, PathHom, classify, compose
from .pullback import (
    FAIL,
    PullbackInstance,
    check_commutativity,
    check_hypotheses,
    check_kernel_inclusion,
)

_SEMANTIC_ERRORS = (
    NotAdmissible,
    NotMonotone,
    NotRegular,
    NotVertexInjective,
    HypothesisNotMet,
    PreimageNotFound,
    DomainMismatch,
)
_INPUT_ERRORS = (
    FileFormatError,
    GraphError,
    InvalidPathHom,
    InvalidInclusion,
    AmbiguousInfiniteEmitter,
    ExpressionError,
    ContextMismatch,
    UnsupportedInfiniteEmitter,
    StarInPathMode,
)


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _named_graphs(graph_files) -> dict[str, Graph]:
    names = dict(registry.GRAPHS)
    for path in graph_files or ():
        names[_stem(path)] = load_graph(path)
    return names


def _resolve_graph(spec: str, names: Mapping[str, Graph]) -> Graph:
    if spec in names:
        return names[spec]
    if os.path.exists(spec):
        return load_graph(spec)
    raise FileFormatError(f"{spec!r} is neither a built-in graph nor a readable file")


def _resolve_morphism(spec: str, names: Mapping[str, Graph]) -> PathHom:
    if spec in registry.MORPHISMS:
        return registry.MORPHISMS[spec]
    if os.path.exists(spec):
        return load_morphism(spec, names).realize()
    raise FileFormatError(f"{spec!r} is neither a built-in morphism nor a readable file")


def _resolve_inclusion(spec: str, names: Mapping[str, Graph]):
    if spec in registry.INCLUSIONS:
        return registry.INCLUSIONS[spec]
    if os.path.exists(spec):
        return load_inclusion(spec, names)
    raise FileFormatError(f"{spec!r} is neither a built-in inclusion nor a readable file")


def _resolve_instance(spec: str) -> PullbackInstance:
    if spec in registry.INSTANCES:
        return registry.INSTANCES[spec]()
    if os.path.exists(spec):
        return load_instance(spec)
    raise FileFormatError(f"{spec!r} is neither a built-in instance nor a readable file")


_CONTEXT_RE = re.compile(r"(P|C|L)(?:\[([^\[\]]*)\])?\((.*)\)")


def _resolve_context(spec: str, names: Mapping[str, Graph]) -> AlgebraContext:
    m = _CONTEXT_RE.fullmatch(spec.strip())
    if m is None:
        raise FileFormatError(
            f"cannot parse context {spec!r}; expected P(g), C(g), C[v1,v2](g) or L(g)"
        )
    kind, vlist, gspec = m.groups()
    graph = _resolve_graph(gspec.strip(), names)
    if kind != "C" and vlist is not None:
        raise FileFormatError("relation-vertex lists are only meaningful for C[...](g)")
    if kind == "P":
        return AlgebraContext.path(graph)
    if kind == "L":
        return AlgebraContext.leavitt(graph)
    if vlist is None:
        return AlgebraContext.cohn(graph)
    vertices = [v.strip() for v in vlist.split(",") if v.strip()]
    try:
        return AlgebraContext.relative_cohn(graph, vertices)
    except ValueError as exc:
        raise FileFormatError(str(exc))


def _print_json(data) -> None:
    sys.stdout.write(canonical_dumps(data))


# -- subcommands ----------------------------------------------------------------


def _cmd_classify(args) -> int:
    names = _named_graphs(args.graphs)
    hom = _resolve_morphism(args.morphism, names)
    verdict = classify(hom)
    if args.json:
        _print_json(verdict.to_json_data())
    else:
        flags = (
            ("path homomorphism", "is_path_hom"),
            ("vertex-injective", "vertex_injective"),
            ("vertex-bijective (finite)", "vertex_bijective_finite"),
            ("monotone", "monotone"),
            ("regular", "regular"),
        )
        for label, flag in flags:
            value = getattr(verdict, flag)
            line = f"{label}: {'yes' if value else 'no'}"
            if not value:
                line += f"  (witness: {verdict.witnesses.get(flag)})"
            print(line)
        classes = [name for name in CATEGORY_NAMES if verdict.satisfies(name)]
        print("classes: " + (" ".join(classes) if classes else "(none)"))
    if args.require:
        ok = verdict.satisfies(args.require)
        if not args.json:
            print(f"requirement {args.require}: {'met' if ok else 'NOT met'}")
        return 0 if ok else 1
    return 0


def _cmd_eval(args) -> int:
    names = _named_graphs(args.graphs)
    ctx = _resolve_context(args.context, names)
    elem = parse_expression(ctx, args.expression)
    payload = {"context": ctx.describe(), "expression": args.expression, "value": str(elem)}
    if args.apply:
        hom = _resolve_morphism(args.apply, names)
        image = induce(hom, elem)
        payload["applied"] = {
            "morphism": args.apply,
            "context": image.context.describe(),
            "value": str(image),
        }
    if args.json:
        payload["zero"] = elem.is_zero
        _print_json(payload)
    else:
        print(payload["value"])
        if args.apply:
            print(f"image in {payload['applied']['context']}: {payload['applied']['value']}")
    return 0


def _cmd_compose(args) -> int:
    names = _named_graphs(args.graphs)
    first = _resolve_morphism(args.first, names)
    second = _resolve_morphism(args.second, names)
    result = compose(second, first)
    _print_json(morphism_to_data(result, names))
    return 0


def _cmd_admissible(args) -> int:
    names = _named_graphs(args.graphs)
    inc = _resolve_inclusion(args.inclusion, names)
    report = is_admissible(inc)
    payload = report.to_json_data()

    breaking: Optional[list] = None
    breaking_note = ""
    try:
        breaking = list(breaking_vertices(inc.amb, set(inc.complement())))
    except AmbiguousInfiniteEmitter as exc:
        breaking_note = str(exc)
    payload["breaking_vertices"] = breaking

    kernel_data = None
    if report.ok:
        try:
            kernel_data = kernel_generators(inc).to_json_data()
        except AmbiguousInfiniteEmitter as exc:
            breaking_note = breaking_note or str(exc)
    payload["kernel_generators"] = kernel_data

    if args.json:
        _print_json(payload)
    else:
        a1 = payload["a1_saturated"]
        a2 = payload["a2_full_preimage"]
        print(f"A1 complement saturated: {'yes' if a1['ok'] else 'no'}"
              + ("" if a1["ok"] else f"  (witness: {a1['witness']})"))
        print(f"A2 incoming edges of image vertices are in the image: "
              f"{'yes' if a2['ok'] else 'no'}"
              + ("" if a2["ok"] else f"  (witness: {a2['witness']})"))
        hered = payload["hereditary_complement"]
        if hered is None:
            print("hereditary (diagnostic): undecidable from the declared data")
        else:
            print(f"hereditary (diagnostic): {'yes' if hered['ok'] else 'no'}"
                  + ("" if hered["ok"] else f"  (witness: {hered['witness']})"))
        comp = payload["complement"]
        print("complement vertices: " + (" ".join(comp) if comp else "(none)"))
        if breaking is None:
            print(f"breaking vertices: undecidable ({breaking_note})")
        else:
            print("breaking vertices: " + (" ".join(breaking) if breaking else "(none)"))
        if kernel_data is not None:
            nproj = len(kernel_data["vertex_projections"])
            ncorr = len(kernel_data["breaking_corrections"])
            print(f"kernel generators: {nproj} vertex projection(s), "
                  f"{ncorr} breaking correction(s)")
        print(f"admissible: {'yes' if report.ok else 'no'}")
    return 0 if report.ok else 1


def _cmd_pullback(args) -> int:
    inst = _resolve_instance(args.instance)
    if args.bound is not None:
        if args.bound < 0:
            raise FileFormatError("--bound must be non-negative")
        inst = inst.with_bound(args.bound)
    report = check_hypotheses(inst)
    payload = {"hypotheses": report.to_json_data(), "commutativity": None, "kernel": None}

    comm = kernel = None
    if report.overall != FAIL:
        comm = check_commutativity(inst)
        kernel = check_kernel_inclusion(inst, report)
        payload["commutativity"] = comm.to_json_data()
        payload["kernel"] = kernel.to_json_data()

    if args.json:
        _print_json(payload)
    else:
        print(report.render_text())
        if comm is not None:
            print("commutativity on generators:")
            print(comm.render_text())
        if kernel is not None:
            print(f"kernel inclusion (lengths <= {kernel.bound}):")
            print(kernel.render_text())

    ok = report.overall != FAIL and comm is not None and comm.all_ok and kernel.all_ok
    return 0 if ok else 1


def _cmd_examples(args) -> int:
    if args.name is not None and args.name not in registry.EXAMPLES:
        print(f"unknown example {args.name!r}; try 'pathalg list'", file=sys.stderr)
        return 2
    names = [args.name] if args.name else list(registry.EXAMPLES)
    all_ok = True
    for name in names:
        result = registry.run_example(name)
        status = "ok" if result.ok else "FAIL"
        print(f"[{status}] {name}: {result.summary}")
        for check in result.checks:
            if check.ok:
                print(f"    ok   {check.label} = {check.actual}")
            else:
                all_ok = False
                print(f"    FAIL {check.label}: expected {check.expected}, got {check.actual}")
    return 0 if all_ok else 1


def _cmd_list(args) -> int:
    print("graphs:")
    for name, g in registry.GRAPHS.items():
        print(f"  {name}  ({len(g.vertices)} vertices, {len(g.edges)} edges)")
    print("morphisms:")
    for name, hom in registry.MORPHISMS.items():
        dom = next(k for k, v in registry.GRAPHS.items() if v == hom.dom)
        cod = next(k for k, v in registry.GRAPHS.items() if v == hom.cod)
        print(f"  {name}  ({dom} -> {cod})")
    print("inclusions:")
    for name, inc in registry.INCLUSIONS.items():
        sub = next(k for k, v in registry.GRAPHS.items() if v == inc.sub)
        amb = next(k for k, v in registry.GRAPHS.items() if v == inc.amb)
        print(f"  {name}  ({sub} in {amb})")
    print("instances:")
    for name in registry.INSTANCES:
        print(f"  {name}")
    print("examples:")
    for name in registry.EXAMPLES:
        print(f"  {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathalg",
        description="Classify path homomorphisms, compute in graph algebras, "
        "and verify mixed-pullback squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a path homomorphism")
    p.add_argument("morphism", help="built-in morphism name or JSON file")
    p.add_argument("--graphs", nargs="*", metavar="FILE",
                   help="graph files referencable by their file stem")
    p.add_argument("--require", metavar="CLASS", type=str.upper,
                   choices=list(CATEGORY_NAMES),
                   help="exit 1 unless the morphism lies in CLASS")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("eval", help="evaluate an expression in a graph algebra")
    p.add_argument("context", help="P(g), C(g), C[v1,v2](g) or L(g)")
    p.add_argument("expression")
    p.add_argument("--apply", metavar="MORPHISM",
                   help="push the value through the map this morphism induces")
    p.add_argument("--graphs", nargs="*", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("compose", help="compose two morphisms (diagrammatic order)")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--graphs", nargs="*", metavar="FILE")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("admissible", help="check a graph inclusion for admissibility")
    p.add_argument("inclusion", help="built-in inclusion name or JSON file")
    p.add_argument("--graphs", nargs="*", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("pullback", help="verify a mixed-pullback square")
    p.add_argument("instance", help="built-in instance name or JSON file")
    p.add_argument("--bound", type=int, help="override the instance's length bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_pullback)

    p = sub.add_parser("examples", help="run the worked examples")
    p.add_argument("name", nargs="?", help="run a single example")
    p.set_defaults(func=_cmd_examples)

    p = sub.add_parser("list", help="list built-in objects")
    p.set_defaults(func=_cmd_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _SEMANTIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
