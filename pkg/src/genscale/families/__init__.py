"""Built-in monoid families and the declarative config loader.

A family config is a mapping with a ``kind`` key and kind-specific fields::

    kind = "AxB"            max_prime
    kind = "SelfSimilar"    alphabet, group_table, action, restriction,
                            group_labels?, generators?   (or group = "trivial" / "flip")
    kind = "AlgDynZd"       acting = "free" | "commutative" | "flip",
                            generators = [{name, matrix}]   (free/commutative)
                            p                               (flip)
    kind = "AlgDynF2t"      polynomials = ["t", "1+t"], names?
    kind = "GraphProduct"   vertices = [{name, monoid = {kind, ...}}], edges = [[v, w], ...]
    kind = "FreeProduct"    vertices as above, no edges

Vertex monoids are ``{kind = "Naturals"}`` or ``{kind = "Subdynamics", p = 2}``.
Errors raise :class:`ConfigError` naming the offending field path.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from genscale import gf2poly
from genscale.families.algdyn import AlgDynError, AlgDynF2t, AlgDynZd, CommutativeActing, FlipActing, FreeActing
from genscale.families.axb import AxB, Subdynamics
from genscale.families.graphproduct import GraphProduct, GraphProductError, Naturals, raam
from genscale.families.selfsimilar import SelfSimilar, SelfSimilarError, cyclic_flip_action
from genscale.kernel import Monoid

KINDS = ("AxB", "SelfSimilar", "AlgDynZd", "AlgDynF2t", "GraphProduct", "FreeProduct")


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class FamilyConfig:
    kind: str
    parameters: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], path: str = "family") -> "FamilyConfig":
        if not isinstance(data, Mapping):
            raise ConfigError(path, "expected a table")
        if "kind" not in data:
            raise ConfigError(f"{path}.kind", "missing")
        kind = data["kind"]
        if kind not in KINDS:
            raise ConfigError(f"{path}.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        return cls(kind, {k: v for k, v in data.items() if k != "kind"})


def _get(params: Mapping, key: str, path: str, typ=None, default: Any = ...):
    if key not in params:
        if default is ...:
            raise ConfigError(f"{path}.{key}", "missing")
        return default
    val = params[key]
    if typ is not None and not isinstance(val, typ):
        raise ConfigError(f"{path}.{key}", f"expected {getattr(typ, '__name__', typ)}, got {type(val).__name__}")
    return val


def _int_matrix(val, path: str) -> list[list[int]]:
    if isinstance(val, int):
        return [[val]]
    if not isinstance(val, list) or not val or not all(isinstance(r, list) for r in val):
        raise ConfigError(path, "expected an integer or a square integer matrix")
    if any(len(r) != len(val) or not all(isinstance(x, int) for x in r) for r in val):
        raise ConfigError(path, "matrix must be square with integer entries")
    return [list(r) for r in val]


def _load_vertex(data, path: str) -> Monoid:
    if not isinstance(data, Mapping) or "kind" not in data:
        raise ConfigError(path, "vertex monoid needs a kind (Naturals or Subdynamics)")
    if data["kind"] == "Naturals":
        return Naturals()
    if data["kind"] == "Subdynamics":
        p = _get(data, "p", path, int)
        if p < 2:
            raise ConfigError(f"{path}.p", "must be at least 2")
        return Subdynamics(p)
    raise ConfigError(f"{path}.kind", f"unsupported vertex monoid {data['kind']!r}")


def _load_graph_product(params, path: str, free: bool) -> GraphProduct:
    vertices = _get(params, "vertices", path, list)
    names, monoids = [], []
    for k, v in enumerate(vertices):
        vp = f"{path}.vertices[{k}]"
        if isinstance(v, str):
            names.append(v)
            monoids.append(Naturals())
            continue
        if not isinstance(v, Mapping):
            raise ConfigError(vp, "expected a vertex name or a table {name, monoid}")
        names.append(_get(v, "name", vp, str))
        monoids.append(_load_vertex(v.get("monoid", {"kind": "Naturals"}), f"{vp}.monoid"))
    edges = []
    if free:
        if params.get("edges"):
            raise ConfigError(f"{path}.edges", "a free product has no edges")
    else:
        for k, e in enumerate(_get(params, "edges", path, list, [])):
            ep = f"{path}.edges[{k}]"
            if not isinstance(e, list) or len(e) != 2:
                raise ConfigError(ep, "expected a pair of vertex names")
            try:
                edges.append(tuple(names.index(x) for x in e))
            except ValueError:
                raise ConfigError(ep, f"unknown vertex in {e}") from None
            if e[0] == e[1]:
                raise ConfigError(ep, "loops are not allowed in a simplicial graph")
    try:
        if all(isinstance(m, Naturals) for m in monoids):
            return raam(names, edges)
        return GraphProduct(names, edges, monoids, name="freeprod" if free else "graphprod")
    except GraphProductError as exc:
        raise ConfigError(path, str(exc)) from None


def load_family(config: FamilyConfig | Mapping[str, Any], path: str = "family") -> Monoid:
    """Build the monoid described by ``config``; invariant violations raise ConfigError."""
    if not isinstance(config, FamilyConfig):
        config = FamilyConfig.from_mapping(config, path)
    kind, params = config.kind, config.parameters
    try:
        if kind == "AxB":
            max_prime = _get(params, "max_prime", path, int, 13)
            if max_prime < 2:
                raise ConfigError(f"{path}.max_prime", "must be at least 2")
            return AxB(max_prime)
        if kind == "SelfSimilar":
            group = params.get("group")
            if group == "trivial":
                alphabet = _get(params, "alphabet", path, list)
                n = len(alphabet)
                tables = dict(alphabet=alphabet, group_table=[[0]], action=[list(range(n))],
                              restriction=[[0] * n], group_labels=["e"])
            elif group == "flip":
                tables = cyclic_flip_action(_get(params, "alphabet", path, list))
            elif group is not None:
                raise ConfigError(f"{path}.group", f"unknown preset {group!r}; use 'trivial', 'flip' or explicit tables")
            else:
                tables = {k: _get(params, k, path, list) for k in ("alphabet", "group_table", "action", "restriction")}
                if "group_labels" in params:
                    tables["group_labels"] = _get(params, "group_labels", path, list)
            if "generators" in params:
                tables["generators"] = _get(params, "generators", path, list)
            return SelfSimilar(**tables, name=params.get("name", "selfsimilar"))
        if kind == "AlgDynZd":
            acting = _get(params, "acting", path, str)
            name = params.get("name", "algdyn")
            if acting == "flip":
                return AlgDynZd(FlipActing(_get(params, "p", path, int)), name=name)
            if acting not in ("free", "commutative"):
                raise ConfigError(f"{path}.acting", f"expected free, commutative or flip, got {acting!r}")
            gens = _get(params, "generators", path, list)
            if not gens:
                raise ConfigError(f"{path}.generators", "need at least one generator")
            names, mats = [], []
            for k, g in enumerate(gens):
                gp = f"{path}.generators[{k}]"
                if not isinstance(g, Mapping):
                    raise ConfigError(gp, "expected a table {name, matrix}")
                names.append(_get(g, "name", gp, str))
                mats.append(_int_matrix(_get(g, "matrix", gp), f"{gp}.matrix"))
            if len({len(m) for m in mats}) != 1:
                raise ConfigError(f"{path}.generators", "matrices must share one dimension")
            cls = FreeActing if acting == "free" else CommutativeActing
            try:
                return AlgDynZd(cls(names, mats), name=name)
            except AlgDynError as exc:
                raise ConfigError(f"{path}.generators", str(exc)) from None
        if kind == "AlgDynF2t":
            polys = []
            for k, f in enumerate(_get(params, "polynomials", path, list)):
                try:
                    polys.append(gf2poly.parse(str(f)))
                except ValueError as exc:
                    raise ConfigError(f"{path}.polynomials[{k}]", str(exc)) from None
            return AlgDynF2t(polys, params.get("names"), name=params.get("name", "f2t"))
        if kind in ("GraphProduct", "FreeProduct"):
            return _load_graph_product(params, path, kind == "FreeProduct")
    except (SelfSimilarError, AlgDynError, GraphProductError) as exc:
        raise ConfigError(path, str(exc)) from None
    raise ConfigError(f"{path}.kind", f"unhandled kind {kind!r}")


def read_config_file(path: str | Path) -> dict:
    """Parse a JSON or TOML config file into a plain dict."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix == ".json":
            return json.loads(text)
        return tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(str(path), f"parse error: {exc}") from None


def family_section(data: Mapping[str, Any]) -> Mapping[str, Any]:
    """Configs may either be a bare family table or carry it under [family]."""
    return data["family"] if "family" in data else data


def load_family_file(path: str | Path) -> Monoid:
    return load_family(family_section(read_config_file(path)))


__all__ = [
    "AlgDynF2t",
    "AlgDynZd",
    "AxB",
    "ConfigError",
    "FamilyConfig",
    "GraphProduct",
    "KINDS",
    "Naturals",
    "SelfSimilar",
    "Subdynamics",
    "family_section",
    "load_family",
    "load_family_file",
    "raam",
    "read_config_file",
]
