"""The core graph Γ(S): vertices I(S)/∼, edges between intersecting classes.

Also realizes the core actions: α_a([s]) = [as] on classes and the induced
action β_a on Γ by graph automorphisms.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from genscale.graphs import coconnected_components_bfs, coconnected_components_uf
from genscale.kernel import Element, Monoid, NotCore


class UnknownClass(LookupError):
    """No stored vertex is core-equivalent to the element (cap too small?)."""


@dataclass(frozen=True)
class CoreGraph:
    family: str
    vertices: tuple[Element, ...]
    edges: frozenset[tuple[int, int]]
    components: tuple[tuple[int, ...], ...]
    component_cards: tuple[int | float, ...]
    exhaustive: bool
    certificate: str = ""
    labels: tuple[str, ...] = field(default=())

    @property
    def comp_index(self) -> dict[int, int]:
        return {v: i for i, block in enumerate(self.components) for v in block}

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def internal_edges(self, i: int) -> list[tuple[int, int]]:
        block = set(self.components[i])
        return sorted(e for e in self.edges if e[0] in block and e[1] in block)

    def component_shapes(self) -> list[tuple[int, int]]:
        """(vertex count, internal edge count) per component."""
        return [(len(b), len(self.internal_edges(i))) for i, b in enumerate(self.components)]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "vertices": list(self.labels),
            "edges": [list(e) for e in sorted(self.edges)],
            "components": [list(b) for b in self.components],
            "component_cards": [c if c != math.inf else "inf" for c in self.component_cards],
            "exhaustive": self.exhaustive,
            "certificate": self.certificate,
        }


def build_core_graph(S: Monoid, cap: int = 64) -> CoreGraph:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    enum = S.irreducible_classes(cap)
    verts: list[Element] = []
    for r in enum.representatives:
        # first-seen representative wins
        if not any(S.core_equivalent(r, v) for v in verts):
            verts.append(r)
    n = len(verts)
    edges = frozenset(
        (i, j) for i, j in itertools.combinations(range(n), 2) if S.intersects(verts[i], verts[j])
    )
    comps = coconnected_components_uf(n, edges)
    if comps != coconnected_components_bfs(n, edges):
        raise AssertionError("coconnected component routes disagree")
    cards = tuple(len(b) for b in comps)
    return CoreGraph(
        S.tag,
        tuple(verts),
        edges,
        tuple(comps),
        cards,
        enum.exhaustive and len(verts) == len(enum.representatives),
        enum.certificate,
        tuple(S.format(v) for v in verts),
    )


def vertex_of(S: Monoid, graph: CoreGraph, s: Element) -> int:
    for i, v in enumerate(graph.vertices):
        if v == s or S.core_equivalent(s, v):
            return i
    raise UnknownClass(f"{S.format(s)} matches no stored vertex of the core graph")


def component_of(S: Monoid, graph: CoreGraph, s: Element) -> int:
    return graph.comp_index[vertex_of(S, graph, s)]


def alpha_act(S: Monoid, a: Element, s: Element, graph: CoreGraph | None = None) -> Element:
    """Representative of α_a([s]) = [as], canonicalized to a stored vertex when possible."""
    if not S.is_core(a):
        raise NotCore(f"{S.format(a)} is not a core element")
    out = S.multiply(a, s)
    if graph is not None:
        try:
            return graph.vertices[vertex_of(S, graph, out)]
        except UnknownClass:
            pass
    return out


@dataclass(frozen=True)
class GeneratorAction:
    generator: str
    vertex_map: tuple[int, ...]
    component_map: tuple[int, ...]
    kind: str  # identity | component-preserving | permutes-components
    automorphism: bool
    bijective: bool


@dataclass(frozen=True)
class BetaSummary:
    actions: tuple[GeneratorAction, ...]
    preserves_components: bool
    inconclusive: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "preserves_components": self.preserves_components,
            "inconclusive": self.inconclusive,
            "reason": self.reason,
            "generators": [
                {
                    "generator": a.generator,
                    "kind": a.kind,
                    "component_map": list(a.component_map),
                    "automorphism": a.automorphism,
                    "bijective": a.bijective,
                }
                for a in self.actions
            ],
        }


def beta_component_action(S: Monoid, graph: CoreGraph) -> BetaSummary:
    if not graph.exhaustive:
        return BetaSummary((), False, True, "core graph is not exhaustive at this cap")
    comp = graph.comp_index
    actions = []
    for a in S.core_generators():
        vmap = []
        for s in graph.vertices:
            try:
                vmap.append(vertex_of(S, graph, S.multiply(a, s)))
            except UnknownClass:
                return BetaSummary(tuple(actions), False, True, f"α_{S.format(a)} leaves the stored vertices")
        bijective = sorted(vmap) == list(range(len(vmap)))
        auto = all(
            graph.has_edge(i, j) == graph.has_edge(vmap[i], vmap[j])
            for i, j in itertools.combinations(range(len(vmap)), 2)
        )
        cmap = []
        for i, block in enumerate(graph.components):
            images = {comp[vmap[v]] for v in block}
            cmap.append(images.pop() if len(images) == 1 else -1)
        if all(vmap[i] == i for i in range(len(vmap))):
            kind = "identity"
        elif all(cmap[i] == i for i in range(len(cmap))):
            kind = "component-preserving"
        else:
            kind = "permutes-components"
        actions.append(GeneratorAction(S.format(a), tuple(vmap), tuple(cmap), kind, auto, bijective))
    preserves = all(a.kind != "permutes-components" for a in actions)
    return BetaSummary(tuple(actions), preserves, False)


def graph_product_vertex_report(G) -> list[dict]:
    """For each singleton coconnected block {v} of the graph product, whether
    α of the vertex core preserves each coconnected component of Γ(S_v)."""
    out = []
    for block in G.components:
        if len(block) != 1:
            continue
        (v,) = block
        Sv = G.vertex[v]
        gv = build_core_graph(Sv, 10_000)
        beta = beta_component_action(Sv, gv)
        out.append(
            {
                "vertex": G.names[v],
                "monoid": Sv.tag,
                "components": len(gv.components),
                "preserves_components": beta.preserves_components,
                "inconclusive": beta.inconclusive,
            }
        )
    return out


def to_dot(graph: CoreGraph) -> str:
    lines = ["graph core {", "  node [shape=box];"]
    for i, block in enumerate(graph.components):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="V{i} (|V|={graph.component_cards[i]})";')
        for v in block:
            label = graph.labels[v].replace('"', '\\"')
            lines.append(f'    v{v} [label="{label}"];')
        lines.append("  }")
    for a, b in sorted(graph.edges):
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
