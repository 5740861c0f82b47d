"""Graph products S(Λ, (S_w)) of right LCM monoids with trivial unit groups.

An element is a reduced sequence of syllables (w, x) with x ≠ 1 in S_w.
Syllables at adjacent vertices commute, and two syllables at the same vertex
merge once they can be shuffled next to each other.  The canonical payload
is the lexicographically least shuffle: at every step the front-movable
syllable with the smallest vertex index is emitted first.

Right LCMs are computed by reversing the two syllable words against each
other, one syllable pair at a time: same vertex uses the vertex monoid,
adjacent vertices commute, non-adjacent vertices are orthogonal.
"""
from __future__ import annotations

import itertools
import re

from genscale.graphs import coconnected_components_bfs, normalize_edges
from genscale.kernel import ClassEnumeration, Monoid


class GraphProductError(ValueError):
    pass


class Naturals(Monoid):
    """(ℕ, +); every element is core, there are no noncore irreducibles."""

    kind = "naturals"

    def __init__(self):
        super().__init__("N")

    @property
    def unit_payload(self):
        return 0

    def _mul(self, s, t):
        return s + t

    def _lcm(self, s, t):
        r = max(s, t)
        return r, r - s, r - t

    def _is_core(self, s):
        return True

    def _is_noncore_irreducible(self, s):
        return False

    def _factor_noncore(self, s):
        raise AssertionError("N has no noncore elements")

    def irreducible_classes(self, cap):
        return ClassEnumeration((), True, "N is its own core")

    def core_generators(self):
        return [self.element(1)]

    def atoms(self):
        return [1]

    def factor_atoms(self, s):
        return [1] * s

    def is_atom(self, s):
        return s == 1

    def parse_payload(self, text):
        return int(text)

    def format_payload(self, s):
        return str(s)

    def random_payload(self, rng, size):
        return rng.randint(0, size)

    def oracle_pool(self, size):
        return [self.element(k) for k in range(size + 1)]


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+)|(\(.*\)))?$")


class GraphProduct(Monoid):
    kind = "graph_product"

    def __init__(self, names: list[str], edges: list[tuple[int, int]], vertex_monoids: list[Monoid], name="graphprod"):
        if len(set(names)) != len(names):
            raise GraphProductError("vertices: names must be distinct")
        if len(vertex_monoids) != len(names):
            raise GraphProductError("vertex_monoids: one monoid per vertex required")
        n = len(names)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphProductError(f"edges: ({a},{b}) refers to a missing vertex")
            if a == b:
                raise GraphProductError(f"edges: loop at {names[a]} (graph must be simplicial)")
        self.names = list(names)
        self.edges = normalize_edges(edges)
        self.vertex = list(vertex_monoids)
        self.adj = [frozenset(b for b in range(n) if (min(a, b), max(a, b)) in self.edges) for a in range(n)]
        self.components = coconnected_components_bfs(n, self.edges)
        self.comp_of = {v: j for j, block in enumerate(self.components) for v in block}
        self.singleton = [len(self.components[self.comp_of[v]]) == 1 for v in range(n)]
        for v, S in enumerate(self.vertex):
            if not hasattr(S, "atoms"):
                raise GraphProductError(f"vertex_monoids: {S.kind} at {names[v]} cannot serve as a vertex monoid")
        desc = ",".join(f"{nm}:{S.tag}" for nm, S in zip(names, self.vertex))
        elist = ",".join(f"{names[a]}-{names[b]}" for a, b in sorted(self.edges))
        super().__init__(f"{name}[{desc}|{elist}]")

    # -- normal forms ------------------------------------------------------
    def _append(self, word: list, syl: tuple) -> None:
        v, y = syl
        for i in range(len(word) - 1, -1, -1):
            w, x = word[i]
            if w == v:
                word[i] = (v, self.vertex[v]._mul(x, y))
                return
            if w not in self.adj[v]:
                break
        word.append(syl)

    def _normal(self, word: list) -> tuple:
        rest = list(word)
        out = []
        while rest:
            best = None
            blocked: set[int] = set()
            for i, (v, _) in enumerate(rest):
                if not (blocked - self.adj[v]) and v not in blocked:
                    if best is None or v < rest[best][0]:
                        best = i
                blocked.add(v)
            out.append(rest.pop(best))
        return tuple(out)

    def _reduce(self, syllables) -> tuple:
        word: list = []
        for syl in syllables:
            if syl[1] != self.vertex[syl[0]].unit_payload:
                self._append(word, syl)
        return self._normal(word)

    @property
    def unit_payload(self):
        return ()

    def _mul(self, s, t):
        word = list(s)
        for syl in t:
            self._append(word, syl)
        return self._normal(word)

    def _syllable_lcm(self, x, y):
        (v, a), (w, b) = x, y
        if v == w:
            res = self.vertex[v]._lcm(a, b) if a != b else (a, self.vertex[v].unit_payload, self.vertex[v].unit_payload)
            if res is None:
                return None
            _, a2, b2 = res
            unit = self.vertex[v].unit_payload
            return (None if a2 == unit else (v, a2)), (None if b2 == unit else (v, b2))
        if w in self.adj[v]:
            return y, x
        return None

    def _lcm(self, s, t):
        col = list(t)
        s_out = []
        for x in s:
            cur = x
            new_col = []
            for y in col:
                if cur is None:
                    new_col.append(y)
                    continue
                if y is None:
                    new_col.append(None)
                    continue
                res = self._syllable_lcm(cur, y)
                if res is None:
                    return None
                y_cof, x_cof = res  # cur·y_cof = y·x_cof
                new_col.append(y_cof)
                cur = x_cof
            s_out.append(cur)
            col = new_col
        left = self._reduce(c for c in col if c is not None)
        right = self._reduce(c for c in s_out if c is not None)
        lcm = self._mul(s, left)
        return lcm, left, right

    # -- structure ---------------------------------------------------------
    def _parts(self, s) -> list[tuple]:
        parts: list[list] = [[] for _ in self.components]
        for syl in s:
            parts[self.comp_of[syl[0]]].append(syl)
        return [tuple(p) for p in parts]

    def _part_is_core(self, j: int, part: tuple) -> bool:
        if not part:
            return True
        if len(self.components[j]) > 1:
            return False
        (v, x), = part
        return self.vertex[v]._is_core(x)

    def _part_is_irreducible(self, j: int, part: tuple) -> bool:
        if len(part) != 1:
            return False
        v, x = part[0]
        if len(self.components[j]) > 1:
            return self.vertex[v].is_atom(x)
        return self.vertex[v]._is_noncore_irreducible(x)

    def _is_core(self, s):
        return all(self._part_is_core(j, p) for j, p in enumerate(self._parts(s)))

    def _is_noncore_irreducible(self, s):
        parts = self._parts(s)
        irr = [j for j, p in enumerate(parts) if not self._part_is_core(j, p)]
        return len(irr) == 1 and self._part_is_irreducible(irr[0], parts[irr[0]])

    def _factor_noncore(self, s):
        letters, left, right = [], [], []
        singles = []
        for v, x in s:
            if self.singleton[v]:
                singles.append((v, x))
                continue
            letters += [(v, a) for a in self.vertex[v].factor_atoms(x)]
        for v, x in singles:
            S = self.vertex[v]
            if S._is_core(x):
                right.append((v, x))
                continue
            ls, a, b = S._factor_noncore(x)
            letters += [(v, y) for y in ls]
            left.append((v, a))
            right.append((v, b))
        return [self._reduce([y]) for y in letters], self._reduce(left), self._reduce(right)

    def irreducible_classes(self, cap):
        reps, blocks = [], []
        exhaustive = True
        for block in self.components:
            idx = []
            if len(block) > 1:
                for v in block:
                    for a in self.vertex[v].atoms():
                        idx.append(len(reps))
                        reps.append(self.element(((v, a),)))
            else:
                (v,) = block
                enum = self.vertex[v].irreducible_classes(cap)
                exhaustive &= enum.exhaustive
                for r in enum.representatives:
                    idx.append(len(reps))
                    reps.append(self.element(((v, r.payload),)))
            if idx:
                blocks.append(tuple(idx))
        exhaustive &= len(reps) <= cap
        blocks = [tuple(i for i in b if i < cap) for b in blocks]
        return ClassEnumeration(
            tuple(reps[:cap]),
            exhaustive,
            "atoms of vertex monoids in non-singleton coconnected components of the graph, "
            "plus the vertex classes of singleton components",
            tuple(b for b in blocks if b),
        )

    def core_generators(self):
        out = []
        for v, S in enumerate(self.vertex):
            if self.singleton[v]:
                out += [self.element(((v, g.payload),)) for g in S.core_generators()]
        return out

    def parse_payload(self, text):
        text = text.strip()
        if text in ("1", "ε", ""):
            return ()
        syllables = []
        for tok in _split_star(text):
            m = _TOKEN.match(tok.strip())
            if not m or m.group(1) not in self.names:
                raise ValueError(f"cannot parse syllable {tok!r}")
            v = self.names.index(m.group(1))
            S = self.vertex[v]
            if m.group(3):
                x = S.parse_payload(m.group(3))
            else:
                if len(S.atoms()) != 1:
                    raise ValueError(f"vertex {m.group(1)} needs an explicit element, e.g. {m.group(1)}(1,2)")
                x = S.unit_payload
                for _ in range(int(m.group(2) or 1)):
                    x = S._mul(x, S.atoms()[0])
            syllables.append((v, x))
        return self._reduce(syllables)

    def format_payload(self, s):
        if not s:
            return "1"
        out = []
        for v, x in s:
            S = self.vertex[v]
            if isinstance(S, Naturals):
                out.append(self.names[v] if x == 1 else f"{self.names[v]}^{x}")
            else:
                out.append(f"{self.names[v]}{S.format_payload(x)}")
        return "*".join(out)

    def random_payload(self, rng, size):
        syl = []
        for _ in range(rng.randint(0, size)):
            v = rng.randrange(len(self.names))
            S = self.vertex[v]
            syl.append((v, S._mul(rng.choice(S.atoms()), S.random_payload(rng, 1))))
        return self._reduce(syl)

    def oracle_pool(self, size):
        gens = [((v, a),) for v in range(len(self.names)) for a in self.vertex[v].atoms()]
        seen = {()}
        frontier = [()]
        for _ in range(size):
            nxt = []
            for p in frontier:
                for g in gens:
                    q = self._mul(p, g)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return [self.element(p) for p in sorted(seen, key=lambda p: (len(p), repr(p)))]

    def is_raam(self) -> bool:
        return all(isinstance(S, Naturals) for S in self.vertex)

    def closed_form_scale(self, s):
        """For right-angled Artin monoids: each generator in a non-singleton
        coconnected block Λ_j of Λ counts |Λ_j|, generators of singleton blocks count 1."""
        if not self.is_raam():
            return None
        out = 1
        for v, x in s.payload:
            size = len(self.components[self.comp_of[v]])
            if size > 1:
                out *= size**x
        return out


def _split_star(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and (ch == "*" or ch.isspace()):
            if cur:
                parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


def raam(names: list[str], edges: list[tuple[int, int]]) -> GraphProduct:
    return GraphProduct(names, edges, [Naturals() for _ in names], name="raam")


def all_graphs(n: int) -> list[frozenset[tuple[int, int]]]:
    """Every simplicial graph on vertices 0..n-1 (labelled)."""
    pairs = list(itertools.combinations(range(n), 2))
    return [frozenset(p for p, keep in zip(pairs, mask) if keep) for mask in itertools.product((0, 1), repeat=len(pairs))]


def canonical_graph(n: int, edges) -> tuple[tuple[int, int], ...]:
    """Lexicographically least relabelling of a graph on 0..n-1."""
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return best


def graph_classes(n: int) -> list[tuple[tuple[int, int], ...]]:
    """One canonical representative per isomorphism class of graphs on n vertices."""
    return sorted({canonical_graph(n, g) for g in all_graphs(n)}, key=lambda g: (len(g), g))
