"""Grid computation of right LCMs of products of noncore irreducibles.

For s = s_1⋯s_m and t = t_1⋯t_n the grid holds cells s_{k+1}^{(ℓ)} on
vertical edges and t_{ℓ+1}^{(k)} on horizontal edges, and square (k, ℓ)
completes

    s_{k+1}^{(ℓ)} · t_{ℓ+1}^{(k+1)} = t_{ℓ+1}^{(k)} · s_{k+1}^{(ℓ+1)}

by one right LCM.  Squares are labelled by the process that fills them:

    A  both cells irreducible, same coconnected component (must be ∼, else s ⊥ t)
    B  both irreducible, distinct components (balanced factorization)
    C  s-cell irreducible, t-cell core
    D  s-cell core, t-cell irreducible
    E  both core

If every square completes, sS ∩ tS = s·t_1^{(m)}⋯t_n^{(m)}·S.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from genscale.coregraph import CoreGraph, component_of
from genscale.kernel import Element, Monoid

CORE, IRR = "core", "irr"


class GridError(ValueError):
    """A square violates the preconditions of the grid algorithm."""


class PermutationSearchFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class IrreducibleWord:
    letters: tuple[Element, ...]
    component_trace: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)


def make_word(S: Monoid, graph: CoreGraph, letters: Sequence[Element]) -> IrreducibleWord:
    if not letters:
        raise ValueError("irreducible words are nonempty")
    for x in letters:
        if not S.is_noncore_irreducible(x):
            raise ValueError(f"{S.format(x)} is not noncore irreducible")
    return IrreducibleWord(tuple(letters), tuple(component_of(S, graph, x) for x in letters))


def fold(S: Monoid, word: IrreducibleWord | Sequence[Element]) -> Element:
    letters = word.letters if isinstance(word, IrreducibleWord) else word
    return S.product(letters)


def tag_of(S: Monoid, x: Element) -> str:
    if S.is_core(x):
        return CORE
    if S.is_noncore_irreducible(x):
        return IRR
    raise GridError(f"cell {S.format(x)} is neither core nor noncore irreducible")


def classify_square(S: Monoid, graph: CoreGraph, s_cell: Element, t_cell: Element) -> str:
    ts, tt = tag_of(S, s_cell), tag_of(S, t_cell)
    if ts == IRR and tt == IRR:
        return "A" if component_of(S, graph, s_cell) == component_of(S, graph, t_cell) else "B"
    if ts == IRR:
        return "C"
    if tt == IRR:
        return "D"
    return "E"


# expected tags of (new t-cell, new s-cell) per process
_EXPECTED = {"A": (CORE, CORE), "C": (CORE, IRR), "D": (IRR, CORE), "E": (CORE, CORE)}


@dataclass
class GridDiagram:
    m: int
    n: int
    s_cells: list[list[Element | None]]  # s_cells[k][ℓ] = s_{k+1}^{(ℓ)}
    t_cells: list[list[Element | None]]  # t_cells[ℓ][k] = t_{ℓ+1}^{(k)}
    process_log: dict[tuple[int, int], str] = field(default_factory=dict)
    outcome: str = "Complete"
    stopped_at: tuple[int, int] | None = None
    lcm: Element | None = None
    cofactor_left: Element | None = None
    cofactor_right: Element | None = None
    validated: bool | None = None

    def log_sequence(self) -> list[str]:
        return [self.process_log[key] for key in sorted(self.process_log, key=lambda kl: (kl[0], kl[1]))]

    def to_dict(self, S: Monoid) -> dict:
        fmt = lambda x: None if x is None else S.format(x)  # noqa: E731
        tag = lambda x: None if x is None else tag_of(S, x)  # noqa: E731
        return {
            "m": self.m,
            "n": self.n,
            "outcome": self.outcome,
            "stopped_at": list(self.stopped_at) if self.stopped_at else None,
            "s_cells": [[{"value": fmt(x), "tag": tag(x)} for x in row] for row in self.s_cells],
            "t_cells": [[{"value": fmt(x), "tag": tag(x)} for x in row] for row in self.t_cells],
            "process_log": [{"k": k, "l": l, "process": p} for (k, l), p in sorted(self.process_log.items())],
            "lcm": fmt(self.lcm),
            "cofactor_left": fmt(self.cofactor_left),
            "cofactor_right": fmt(self.cofactor_right),
            "validated": self.validated,
        }

    def to_json(self, S: Monoid) -> str:
        return json.dumps(self.to_dict(S), indent=2, ensure_ascii=False)

    def render_text(self, S: Monoid) -> str:
        """Nodes 'o' at grid points; t-cells on horizontal edges, s-cells on
        vertical edges between node rows, process labels inside the squares."""

        def lab(x):
            if x is None:
                return "?"
            return S.format(x) + ("*" if S.is_core(x) else "")

        labels = [lab(x) for row in self.s_cells + self.t_cells for x in row]
        w = max(len(x) for x in labels) + 8
        lines = []
        for k in range(self.m + 1):
            row = "o"
            for l in range(self.n):
                row += ("-- " + lab(self.t_cells[l][k]) + " ").ljust(w - 2, "-") + "->o"
            lines.append(row)
            if k == self.m:
                break
            mid = ""
            for l in range(self.n + 1):
                mid = mid.ljust(l * (w + 1)) + lab(self.s_cells[k][l])
                if l < self.n:
                    mid = mid.ljust(l * (w + 1) + w // 2) + f" [{self.process_log.get((k, l), ' ')}]"
            lines.append(mid)
        lines.append(f"outcome: {self.outcome}" + (f" at square {self.stopped_at}" if self.stopped_at else ""))
        if self.lcm is not None:
            lines.append(f"lcm = {S.format(self.lcm)}")
        lines.append("(* marks core cells)")
        return "\n".join(lines) + "\n"


def word_lcm(S: Monoid, graph: CoreGraph, s: IrreducibleWord, t: IrreducibleWord, validate: bool = True) -> GridDiagram:
    m, n = len(s), len(t)
    s_cells: list[list] = [[x] + [None] * n for x in s.letters]
    t_cells: list[list] = [[y] + [None] * m for y in t.letters]
    grid = GridDiagram(m, n, s_cells, t_cells)
    for k in range(m):  # column-major: k outer, ℓ inner
        for l in range(n):
            a, b = s_cells[k][l], t_cells[l][k]
            proc = classify_square(S, graph, a, b)
            grid.process_log[(k, l)] = proc
            res = S.right_lcm(a, b)
            if proc == "A":
                if not res.is_meet:
                    grid.outcome, grid.stopped_at = "Orthogonal", (k, l)
                    return grid
                if not (S.is_core(res.cofactor_left) and S.is_core(res.cofactor_right)):
                    raise GridError(f"edge-freeness violated at ({k},{l}): cells intersect but are not equivalent")
            elif not res.is_meet:
                if proc == "B":
                    raise GridError(f"balanced factorization violated at ({k},{l}): distinct components are orthogonal")
                raise GridError(f"core cell orthogonal to another element at ({k},{l})")
            new_t, new_s = res.cofactor_left, res.cofactor_right
            if S.multiply(a, new_t) != S.multiply(b, new_s):
                raise GridError(f"square ({k},{l}) does not commute")
            got = (tag_of(S, new_t), tag_of(S, new_s))
            if proc == "B":
                ok = got == (IRR, IRR) and component_of(S, graph, new_t) == component_of(S, graph, b) and (
                    component_of(S, graph, new_s) == component_of(S, graph, a)
                )
                if not ok:
                    raise GridError(f"balanced factorization violated at ({k},{l})")
            elif got != _EXPECTED[proc]:
                raise GridError(f"process {proc} at ({k},{l}) produced tags {got}")
            t_cells[l][k + 1] = new_t
            s_cells[k][l + 1] = new_s
    right_tail = S.product(t_cells[l][m] for l in range(n))
    left_tail = S.product(s_cells[k][n] for k in range(m))
    fs, ft = fold(S, s), fold(S, t)
    grid.lcm = S.multiply(fs, right_tail)
    if grid.lcm != S.multiply(ft, left_tail):
        raise GridError("grid boundary does not multiply out to a common multiple")
    grid.cofactor_left, grid.cofactor_right = right_tail, left_tail
    if validate:
        ref = S.right_lcm(fs, ft)
        grid.validated = ref.is_meet and S.core_equivalent(ref.lcm, grid.lcm) and S.intersects(ref.lcm, grid.lcm)
    return grid


def component_multiset(word: IrreducibleWord) -> Counter:
    return Counter(word.component_trace)


def _adjacent_transpositions(sigma: Sequence[int]) -> list[int]:
    """Positions k of swaps (k, k+1) turning 0..n-1 into sigma (bubble order)."""
    order = list(range(len(sigma)))
    swaps = []
    for k, target in enumerate(sigma):
        j = order.index(target)
        while j > k:
            order[j - 1], order[j] = order[j], order[j - 1]
            swaps.append(j - 1)
            j -= 1
    return swaps


def permute_word(S: Monoid, graph: CoreGraph, word: IrreducibleWord, sigma: Sequence[int]) -> IrreducibleWord:
    """A word t with fold(t) ∼ fold(word) and trace(t)[k] = trace(word)[sigma[k]]."""
    n = len(word)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{list(sigma)} is not a permutation of 0..{n - 1}")
    letters = list(word.letters)
    trace = list(word.component_trace)
    for k in _adjacent_transpositions(sigma):
        if trace[k] == trace[k + 1]:
            continue  # same component: the trace is unchanged by the swap
        letters = _swap_step(S, graph, letters, k)
        trace[k], trace[k + 1] = trace[k + 1], trace[k]
    out = make_word(S, graph, letters)
    if not S.core_equivalent(fold(S, out), fold(S, word)):
        raise PermutationSearchFailure("permuted word is not core-equivalent to the input")
    expected = tuple(word.component_trace[j] for j in sigma)
    if out.component_trace != expected:
        raise PermutationSearchFailure("permuted word has the wrong component trace")
    return out


def _swap_step(S: Monoid, graph: CoreGraph, letters: list[Element], k: int) -> list[Element]:
    sk, sk1 = letters[k], letters[k + 1]
    target = component_of(S, graph, sk1)
    for v in graph.components[target]:
        t = graph.vertices[v]
        res = S.right_lcm(sk, t)
        if not res.is_meet:
            continue
        t_prime, s_t = res.cofactor_left, res.cofactor_right  # sk·t' = t·s_t
        if not S.core_equivalent(t_prime, sk1):
            continue
        pair = S.right_lcm(S.multiply(sk, sk1), S.multiply(t, s_t))
        if not pair.is_meet:
            continue
        a, b = pair.cofactor_left, pair.cofactor_right  # sk·sk1·a = t·s_t·b
        out = letters[:k] + [t, S.multiply(s_t, b)]
        for s_j in letters[k + 2 :]:
            step = S.right_lcm(a, s_j)  # a·x = s_j·a'
            out.append(step.cofactor_left)
            a = step.cofactor_right
        return out
    raise PermutationSearchFailure(f"no letter of component {target} completes the swap at position {k}")
