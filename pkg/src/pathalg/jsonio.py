"""JSON file formats for graphs, morphisms, inclusions and verifier instances.

Serialization is canonical: stable key order, two-space indent, trailing
newline.  Deserialization is strict about shapes and key names so that a
typo fails loudly instead of silently dropping data.
"""
from __future__ import annotations

import json
from typing import Mapping, Optional

from .admissible import GraphInclusion
from .errors import FileFormatError
from .graphs import Graph, Path
from .morphisms import PathHom
from .pullback import DeferredHom, PullbackInstance


def canonical_dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _require_dict(data, what: str) -> dict:
    if not isinstance(data, dict):
        raise FileFormatError(f"{what} must be a JSON object, got {type(data).__name__}")
    return data


def _require_keys(data: dict, what: str, required: tuple, optional: tuple = ()):
    for key in required:
        if key not in data:
            raise FileFormatError(f"{what} is missing the key {key!r}")
    for key in data:
        if key not in required and key not in optional:
            raise FileFormatError(f"{what} has an unknown key {key!r}")


def _str_list(data, what: str) -> list:
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise FileFormatError(f"{what} must be a list of strings")
    return data


def _str_map(data, what: str) -> dict:
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise FileFormatError(f"{what} must map strings to strings")
    return data


# -- graphs ----------------------------------------------------------------


def graph_to_data(g: Graph) -> dict:
    data = {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "src": g.src(e), "tgt": g.tgt(e)} for e in g.edges],
    }
    if g.infinite_emitters:
        emitters = []
        for v, targets in g.infinite_emitters:
            if targets is None:
                emitters.append(v)
            else:
                emitters.append({"vertex": v, "unlisted_targets": list(targets)})
        data["infinite_emitters"] = emitters
    return data


def graph_from_data(data) -> Graph:
    data = _require_dict(data, "a graph")
    _require_keys(data, "a graph", ("vertices", "edges"), ("infinite_emitters",))
    vertices = _str_list(data["vertices"], "'vertices'")
    if not isinstance(data["edges"], list):
        raise FileFormatError("'edges' must be a list")
    edges = []
    for i, entry in enumerate(data["edges"]):
        entry = _require_dict(entry, f"edge #{i}")
        _require_keys(entry, f"edge #{i}", ("id", "src", "tgt"))
        if not all(isinstance(entry[k], str) for k in ("id", "src", "tgt")):
            raise FileFormatError(f"edge #{i} fields must be strings")
        edges.append((entry["id"], entry["src"], entry["tgt"]))
    emitters = []
    for i, entry in enumerate(data.get("infinite_emitters", ())):
        if isinstance(entry, str):
            emitters.append(entry)
        else:
            entry = _require_dict(entry, f"infinite emitter #{i}")
            _require_keys(entry, f"infinite emitter #{i}", ("vertex", "unlisted_targets"))
            if not isinstance(entry["vertex"], str):
                raise FileFormatError(f"infinite emitter #{i} vertex must be a string")
            targets = _str_list(
                entry["unlisted_targets"], f"infinite emitter #{i} unlisted_targets"
            )
            emitters.append((entry["vertex"], tuple(targets)))
    return Graph(vertices, edges, infinite_emitters=emitters)


# -- morphisms --------------------------------------------------------------


def _graph_ref_to_data(g: Graph, names: Optional[Mapping[str, Graph]]):
    if names:
        for name, known in names.items():
            if known == g:
                return name
    return graph_to_data(g)


def _graph_from_ref(ref, names: Optional[Mapping[str, Graph]], what: str) -> Graph:
    if isinstance(ref, str):
        if names and ref in names:
            return names[ref]
        raise FileFormatError(f"{what} refers to an unknown graph name {ref!r}")
    return graph_from_data(ref)


def _emap_entry_to_data(image: Path):
    if image.is_vertex:
        return {"vertex": image.vertex}
    return list(image.edges)


def morphism_to_data(f: PathHom, names: Optional[Mapping[str, Graph]] = None) -> dict:
    return {
        "dom": _graph_ref_to_data(f.dom, names),
        "cod": _graph_ref_to_data(f.cod, names),
        "vmap": dict(f.vmap),
        "emap": {e: _emap_entry_to_data(f.emap[e]) for e in f.dom.edges},
    }


def _raw_emap(data, what: str) -> dict:
    data = _require_dict(data, what)
    out = {}
    for e, raw in data.items():
        if not isinstance(e, str):
            raise FileFormatError(f"{what} keys must be edge ids")
        if isinstance(raw, dict):
            _require_keys(raw, f"{what}[{e!r}]", ("vertex",))
            if not isinstance(raw["vertex"], str):
                raise FileFormatError(f"{what}[{e!r}] vertex must be a string")
            out[e] = {"vertex": raw["vertex"]}
        else:
            out[e] = list(_str_list(raw, f"{what}[{e!r}]"))
    return out


def morphism_from_data(data, names: Optional[Mapping[str, Graph]] = None) -> DeferredHom:
    """Morphism files realize lazily: the shape is validated here, the
    path-homomorphism laws only when the caller realizes the result."""
    data = _require_dict(data, "a morphism")
    _require_keys(data, "a morphism", ("dom", "cod", "vmap", "emap"))
    dom = _graph_from_ref(data["dom"], names, "'dom'")
    cod = _graph_from_ref(data["cod"], names, "'cod'")
    vmap = _str_map(data["vmap"], "'vmap'")
    emap = _raw_emap(data["emap"], "'emap'")
    return DeferredHom(dom, cod, vmap, emap)


# -- inclusions --------------------------------------------------------------


def inclusion_to_data(inc: GraphInclusion, names: Optional[Mapping[str, Graph]] = None) -> dict:
    return {
        "sub": _graph_ref_to_data(inc.sub, names),
        "amb": _graph_ref_to_data(inc.amb, names),
        "vmap": dict(inc.vmap),
        "emap": dict(inc.emap),
    }


def inclusion_from_data(data, names: Optional[Mapping[str, Graph]] = None) -> GraphInclusion:
    data = _require_dict(data, "an inclusion")
    _require_keys(data, "an inclusion", ("sub", "amb", "vmap", "emap"))
    sub = _graph_from_ref(data["sub"], names, "'sub'")
    amb = _graph_from_ref(data["amb"], names, "'amb'")
    vmap = _str_map(data["vmap"], "'vmap'")
    emap = _str_map(data["emap"], "'emap'")
    return GraphInclusion(sub, amb, vmap, emap)


# -- verifier instances -------------------------------------------------------

_INSTANCE_GRAPHS = ("amb1", "amb2", "sub1", "sub2")


def _inner_map_to_data(vmap: dict, emap_data: dict) -> dict:
    return {"vmap": dict(vmap), "emap": emap_data}


def instance_to_data(inst: PullbackInstance) -> dict:
    graphs = {
        "amb1": graph_to_data(inst.amb1),
        "amb2": graph_to_data(inst.amb2),
        "sub1": graph_to_data(inst.sub1),
        "sub2": graph_to_data(inst.sub2),
    }

    def hom_maps(h) -> dict:
        if isinstance(h, DeferredHom):
            return {"vmap": dict(h.vmap), "emap": {e: (dict(r) if isinstance(r, dict) else list(r)) for e, r in h.emap_raw.items()}}
        return {"vmap": dict(h.vmap), "emap": {e: _emap_entry_to_data(h.emap[e]) for e in h.dom.edges}}

    return {
        "graphs": graphs,
        "pi1": {"vmap": dict(inst.pi1.vmap), "emap": dict(inst.pi1.emap)},
        "pi2": {"vmap": dict(inst.pi2.vmap), "emap": dict(inst.pi2.emap)},
        "f": hom_maps(inst.f),
        "f_res": hom_maps(inst.f_res),
        "length_bound": inst.length_bound,
    }


def _inner_maps(data, what: str) -> tuple[dict, dict]:
    data = _require_dict(data, what)
    _require_keys(data, what, ("vmap", "emap"))
    return data["vmap"], data["emap"]


def instance_from_data(data) -> PullbackInstance:
    data = _require_dict(data, "an instance")
    _require_keys(data, "an instance", ("graphs", "pi1", "pi2", "f", "f_res", "length_bound"))
    graphs_data = _require_dict(data["graphs"], "'graphs'")
    _require_keys(graphs_data, "'graphs'", _INSTANCE_GRAPHS)
    graphs = {name: graph_from_data(graphs_data[name]) for name in _INSTANCE_GRAPHS}

    vmap, emap = _inner_maps(data["pi1"], "'pi1'")
    pi1 = GraphInclusion(graphs["sub1"], graphs["amb1"], _str_map(vmap, "'pi1' vmap"),
                         _str_map(emap, "'pi1' emap"))
    vmap, emap = _inner_maps(data["pi2"], "'pi2'")
    pi2 = GraphInclusion(graphs["sub2"], graphs["amb2"], _str_map(vmap, "'pi2' vmap"),
                         _str_map(emap, "'pi2' emap"))
    vmap, emap = _inner_maps(data["f"], "'f'")
    f = DeferredHom(graphs["amb1"], graphs["amb2"], _str_map(vmap, "'f' vmap"),
                    _raw_emap(emap, "'f' emap"))
    vmap, emap = _inner_maps(data["f_res"], "'f_res'")
    f_res = DeferredHom(graphs["sub1"], graphs["sub2"], _str_map(vmap, "'f_res' vmap"),
                        _raw_emap(emap, "'f_res' emap"))

    bound = data["length_bound"]
    if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
        raise FileFormatError("'length_bound' must be a non-negative integer")
    return PullbackInstance(pi1, pi2, f, f_res, bound)


# -- file helpers -------------------------------------------------------------


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}")


def load_graph(path: str) -> Graph:
    return graph_from_data(load_json(path))


def load_morphism(path: str, names: Optional[Mapping[str, Graph]] = None) -> DeferredHom:
    return morphism_from_data(load_json(path), names)


def load_inclusion(path: str, names: Optional[Mapping[str, Graph]] = None) -> GraphInclusion:
    return inclusion_from_data(load_json(path), names)


def load_instance(path: str) -> PullbackInstance:
    return instance_from_data(load_json(path))


def save_json(path: str, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(data))
