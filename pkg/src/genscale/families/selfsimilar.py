"""Zappa–Szép products X^* ⋈ G of finite self-similar group actions."""
from __future__ import annotations

import itertools
import re

from genscale.kernel import ClassEnumeration, Monoid


class SelfSimilarError(ValueError):
    pass


class SelfSimilar(Monoid):
    """X^* ⋈ G with product (v, g)(w, h) = (v·g(w), g|_w·h).

    The finite group G is given by a multiplication table over labels
    0..|G|-1 together with the action table ``action[g][x] = g(x)`` and the
    restriction table ``restriction[g][x] = g|_x``.  Payloads are
    (word, g) with the word a tuple of letter indices.
    """

    kind = "selfsimilar"

    def __init__(
        self,
        alphabet: list[str],
        group_table: list[list[int]],
        action: list[list[int]],
        restriction: list[list[int]],
        group_labels: list[str] | None = None,
        generators: list[int] | None = None,
        name: str = "selfsimilar",
    ):
        self.alphabet = list(alphabet)
        self.table = [list(row) for row in group_table]
        self.action = [list(row) for row in action]
        self.restriction = [list(row) for row in restriction]
        self.order = len(self.table)
        self.labels = list(group_labels) if group_labels else [f"g{k}" for k in range(self.order)]
        self._validate()
        self.identity = next(
            e for e in range(self.order) if all(self.table[e][g] == g == self.table[g][e] for g in range(self.order))
        )
        self.inverse = [
            next(h for h in range(self.order) if self.table[g][h] == self.identity) for g in range(self.order)
        ]
        if generators is None:
            generators = [g for g in range(self.order) if g != self.identity]
        self.generators = list(generators)
        super().__init__(f"{name}[|X|={len(self.alphabet)},|G|={self.order}]")

    def _validate(self) -> None:
        n, order = len(self.alphabet), len(self.table)
        if n < 1 or len(set(self.alphabet)) != n:
            raise SelfSimilarError("alphabet: letters must be distinct and nonempty")
        if order < 1 or any(len(row) != order for row in self.table):
            raise SelfSimilarError("group_table: must be a square table")
        if any(not 0 <= x < order for row in self.table for x in row):
            raise SelfSimilarError("group_table: entries must be group labels")
        for name, tab, bound in (("action", self.action, n), ("restriction", self.restriction, order)):
            if len(tab) != order or any(len(row) != n for row in tab):
                raise SelfSimilarError(f"{name}: needs one row per group element and one column per letter")
            if any(not 0 <= x < bound for row in tab for x in row):
                raise SelfSimilarError(f"{name}: entry out of range")
        for a, b, c in itertools.product(range(order), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise SelfSimilarError("group_table: multiplication is not associative")
        ids = [e for e in range(order) if all(self.table[e][g] == g == self.table[g][e] for g in range(order))]
        if not ids:
            raise SelfSimilarError("group_table: no identity element")
        e = ids[0]
        if any(e not in row for row in self.table):
            raise SelfSimilarError("group_table: some element has no inverse")
        for g in range(order):
            if sorted(self.action[g]) != list(range(n)):
                raise SelfSimilarError(f"action: element {g} does not permute the alphabet")
        if any(self.action[e][x] != x or self.restriction[e][x] != e for x in range(n)):
            raise SelfSimilarError("action: identity must act trivially with trivial restrictions")
        # g(xw) = g(x) g|_x(w) defines the action on words; it is a group
        # action iff (gh)(w) = g(h(w)) and (gh)|_w = g|_{h(w)} h|_w.  Words of
        # length <= 2 suffice since both sides are recursive in the first letter.
        for g, h in itertools.product(range(order), repeat=2):
            gh = self.table[g][h]
            for w in itertools.chain.from_iterable(itertools.product(range(n), repeat=k) for k in (1, 2)):
                hw, h_w = self._act(h, w)
                ghw, gh_w = self._act(gh, w)
                g_hw, g_r = self._act(g, hw)
                if ghw != g_hw or gh_w != self.table[g_r][h_w]:
                    raise SelfSimilarError(
                        f"restriction: self-similarity fails for g={g}, h={h}, word={w}"
                    )

    def _act(self, g: int, word: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
        """Return (g(word), g|_word)."""
        out = []
        for x in word:
            out.append(self.action[g][x])
            g = self.restriction[g][x]
        return tuple(out), g

    @property
    def unit_payload(self):
        return ((), self.identity)

    def _mul(self, s, t):
        (v, g), (w, h) = s, t
        gw, g_w = self._act(g, w)
        return (v + gw, self.table[g_w][h])

    def _lcm(self, s, t):
        (v, g), (w, h) = s, t
        if len(v) < len(w) or (len(v) == len(w) and g > h):
            r = self._lcm(t, s)
            return None if r is None else (r[0], r[2], r[1])
        # now len(v) >= len(w), and the lcm is s itself when w prefixes v
        if v[: len(w)] != w:
            return None
        return s, self.unit_payload, self._left_quotient(t, s)

    def _left_quotient(self, t, s):
        """The unique x with t·x = s, given that t's word prefixes s's word."""
        (w, h), (v, g) = t, s
        hinv = self.inverse[h]
        u, hinv_u = self._act(hinv, v[len(w) :])
        # h(u) = suffix and h|_u · k = g  =>  k = (h|_u)^{-1} g
        _, h_u = self._act(h, u)
        return (u, self.table[self.inverse[h_u]][g])

    def _is_core(self, s):
        return len(s[0]) == 0

    def _is_noncore_irreducible(self, s):
        return len(s[0]) == 1

    def _factor_noncore(self, s):
        w, g = s
        e = self.identity
        letters = [((x,), e) for x in w[:-1]] + [((w[-1],), g)]
        return letters, self.unit_payload, self.unit_payload

    def irreducible_classes(self, cap):
        reps = tuple(self.element(((x,), self.identity)) for x in range(len(self.alphabet)))
        return ClassEnumeration(
            reps[:cap], cap >= len(reps), "classes [(x, e)] for x in X", (tuple(range(min(cap, len(reps)))),)
        )

    def core_generators(self):
        return [self.element(((), g)) for g in self.generators]

    def parse_payload(self, text):
        word_part, _, group_part = text.partition("|")
        word_part = word_part.strip()
        if word_part in ("", "()", "ε", "e"):
            word: tuple[int, ...] = ()
        else:
            tokens = re.findall("|".join(sorted(map(re.escape, self.alphabet), key=len, reverse=True)), word_part)
            if "".join(tokens) != word_part.replace(" ", ""):
                raise ValueError(f"cannot parse word {word_part!r} over alphabet {self.alphabet}")
            word = tuple(self.alphabet.index(x) for x in tokens)
        g = self.identity
        if group_part.strip():
            label = group_part.strip()
            if label not in self.labels:
                raise ValueError(f"unknown group label {label!r}")
            g = self.labels.index(label)
        return (word, g)

    def format_payload(self, s):
        word = "".join(self.alphabet[x] for x in s[0]) or "ε"
        if self.order == 1:
            return word
        return f"{word}|{self.labels[s[1]]}"

    def random_payload(self, rng, size):
        word = tuple(rng.randrange(len(self.alphabet)) for _ in range(rng.randint(0, size)))
        return (word, rng.randrange(self.order))

    def oracle_pool(self, size):
        words = itertools.chain.from_iterable(
            itertools.product(range(len(self.alphabet)), repeat=k) for k in range(size + 1)
        )
        return [self.element((tuple(w), g)) for w in words for g in range(self.order)]

    def closed_form_scale(self, s):
        return len(self.alphabet) ** len(s.payload[0])


def cyclic_flip_action(alphabet: list[str]) -> dict:
    """ℤ/2 acting on X^* by swapping letters 0 and 1 everywhere (g|_x = g)."""
    n = len(alphabet)
    swap = [1, 0] + list(range(2, n))
    return {
        "alphabet": alphabet,
        "group_table": [[0, 1], [1, 0]],
        "action": [list(range(n)), swap],
        "restriction": [[0] * n, [1] * n],
        "group_labels": ["e", "g"],
    }
