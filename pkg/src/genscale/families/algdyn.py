"""Semidirect products G ⋊_θ P from algebraic dynamical systems.

Two group types are supported: G = ℤ^d with P a monoid of integer matrices
(:class:`AlgDynZd`), and G = 𝔽₂[t] with P = ℕ^k acting by multiplication
with fixed polynomials (:class:`AlgDynF2t`, covering Ledrappier's shift).

For ℤ^d the acting monoid P comes in three built-in presentations:

``free``
    free monoid on the generators; normal form is the word.
``commutative``
    ℕ^k on pairwise commuting, independent generators; normal form is the
    exponent vector.
``flip``
    ⟨p₀, p₁⟩ ⋊ ⟨x⟩ ≅ ℕ² ⋊ ℤ/2 with p₀ = diag(p, 1), x the coordinate swap and
    x·p₀·x = p₁; normal form p₀^a p₁^b x^ε stored as (a, b, ε).
"""
from __future__ import annotations

import itertools
from typing import Sequence

from genscale import gf2poly as gf2
from genscale.intlinalg import Lattice, Matrix, as_matrix, det, identity, matmul, matvec, solve_in_span
from genscale.kernel import ClassEnumeration, Monoid


class AlgDynError(ValueError):
    pass


def _parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"expected a vector '(m1,...,md)', got {text!r}")
    inner = text[1:-1].strip()
    return tuple(int(x) for x in inner.split(",")) if inner else ()


def _split_top(text: str) -> list[str]:
    """Split 'a, (b, c), d' on top-level commas."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


class ActingMonoid:
    """Normal forms, products and right LCMs for the acting monoid P."""

    kind = "abstract"
    names: list[str]

    def unit(self): ...
    def mul(self, p, q): ...
    def lcm(self, p, q): ...
    def matrix(self, p) -> Matrix: ...
    def irreducible_classes(self) -> list: ...
    def is_irreducible(self, p) -> bool: ...
    def factor(self, p) -> tuple[list, object]: ...
    def length(self, p) -> int: ...
    def parse(self, text: str): ...
    def format(self, p) -> str: ...
    def random(self, rng, size): ...
    def units(self) -> list: ...
    def enumerate(self, size) -> list: ...


class FreeActing(ActingMonoid):
    kind = "free"

    def __init__(self, names: list[str], matrices: list[Matrix]):
        self.names, self.mats = names, matrices
        self.d = len(matrices[0])

    def unit(self):
        return ()

    def mul(self, p, q):
        return p + q

    def lcm(self, p, q):
        if q[: len(p)] == p:
            return q, q[len(p) :], ()
        if p[: len(q)] == q:
            return p, (), p[len(q) :]
        return None

    def matrix(self, p):
        out = identity(self.d)
        for k in p:
            out = matmul(out, self.mats[k])
        return out

    def irreducible_classes(self):
        return [(k,) for k in range(len(self.names))]

    def is_irreducible(self, p):
        return len(p) == 1

    def factor(self, p):
        return [(k,) for k in p], ()

    def length(self, p):
        return len(p)

    def units(self):
        return []

    def parse(self, text):
        text = text.strip()
        if text in ("1", "()", "ε"):
            return ()
        out = []
        for tok in text.split("*") if "*" in text else list(text):
            tok = tok.strip()
            if tok not in self.names:
                raise ValueError(f"unknown generator {tok!r}")
            out.append(self.names.index(tok))
        return tuple(out)

    def format(self, p):
        if not p:
            return "1"
        sep = "" if all(len(n) == 1 for n in self.names) else "*"
        return sep.join(self.names[k] for k in p)

    def random(self, rng, size):
        return tuple(rng.randrange(len(self.names)) for _ in range(rng.randint(0, size)))

    def enumerate(self, size):
        return [
            tuple(w)
            for k in range(size + 1)
            for w in itertools.product(range(len(self.names)), repeat=k)
        ]


class CommutativeActing(ActingMonoid):
    kind = "commutative"

    def __init__(self, names: list[str], matrices: list[Matrix]):
        self.names, self.mats = names, matrices
        self.d = len(matrices[0])
        k = len(matrices)
        for i, j in itertools.combinations(range(k), 2):
            a, b = matrices[i], matrices[j]
            if matmul(a, b) != matmul(b, a):
                raise AlgDynError(f"matrices: generators {names[i]} and {names[j]} do not commute")
            span = tuple(tuple(a[r]) + tuple(b[r]) for r in range(self.d))
            if Lattice(span).index != 1:
                raise AlgDynError(
                    f"matrices: generators {names[i]} and {names[j]} are not independent "
                    "(their images do not span Z^d, so the right LCM property fails)"
                )

    def unit(self):
        return (0,) * len(self.names)

    def mul(self, p, q):
        return tuple(a + b for a, b in zip(p, q))

    def lcm(self, p, q):
        r = tuple(max(a, b) for a, b in zip(p, q))
        return r, tuple(x - a for x, a in zip(r, p)), tuple(x - b for x, b in zip(r, q))

    def matrix(self, p):
        out = identity(self.d)
        for k, e in enumerate(p):
            for _ in range(e):
                out = matmul(out, self.mats[k])
        return out

    def irreducible_classes(self):
        return [tuple(int(i == k) for i in range(len(self.names))) for k in range(len(self.names))]

    def is_irreducible(self, p):
        return sum(p) == 1

    def factor(self, p):
        out = []
        for k, e in enumerate(p):
            out += [tuple(int(i == k) for i in range(len(p)))] * e
        return out, self.unit()

    def length(self, p):
        return sum(p)

    def units(self):
        return []

    def parse(self, text):
        text = text.strip()
        exps = [0] * len(self.names)
        if text in ("1", "()"):
            return tuple(exps)
        for tok in text.split("*"):
            name, _, e = tok.strip().partition("^")
            if name not in self.names:
                raise ValueError(f"unknown generator {name!r}")
            exps[self.names.index(name)] += int(e) if e else 1
        return tuple(exps)

    def format(self, p):
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, p) if e]
        return "*".join(parts) or "1"

    def random(self, rng, size):
        return tuple(rng.randint(0, size) for _ in self.names)

    def enumerate(self, size):
        return [tuple(e) for e in itertools.product(range(size + 1), repeat=len(self.names))]


class FlipActing(ActingMonoid):
    """ℕ² ⋊ ℤ/2 generated by p₀ = diag(p, 1) and the swap x."""

    kind = "flip"

    def __init__(self, p: int):
        if abs(p) < 2:
            raise AlgDynError("p: flip family needs |p| >= 2")
        self.p = p
        self.d = 2
        self.names = ["p0", "p1", "x"]

    def unit(self):
        return (0, 0, 0)

    def mul(self, s, t):
        a, b, e = s
        c, d, f = t
        if e:
            c, d = d, c
        return (a + c, b + d, e ^ f)

    def lcm(self, s, t):
        A, B = max(s[0], t[0]), max(s[1], t[1])
        r = (A, B, 0)
        return r, self._quotient(s, r), self._quotient(t, r)

    def _quotient(self, s, r):
        a, b, e = s
        da, db = r[0] - a, r[1] - b
        return (db, da, e) if e else (da, db, e)

    def matrix(self, s):
        a, b, e = s
        diag = ((self.p**a, 0), (0, self.p**b))
        return matmul(diag, ((0, 1), (1, 0))) if e else diag

    def irreducible_classes(self):
        return [(1, 0, 0), (0, 1, 0)]

    def is_irreducible(self, s):
        return s[0] + s[1] == 1

    def factor(self, s):
        a, b, e = s
        return [(1, 0, 0)] * a + [(0, 1, 0)] * b, (0, 0, e)

    def length(self, s):
        return s[0] + s[1]

    def units(self):
        return [(0, 0, 1)]

    def parse(self, text):
        out = (0, 0, 0)
        text = text.strip()
        if text in ("1", "()"):
            return out
        for tok in text.split("*"):
            name, _, e = tok.strip().partition("^")
            gen = {"p0": (1, 0, 0), "p1": (0, 1, 0), "x": (0, 0, 1)}.get(name)
            if gen is None:
                raise ValueError(f"unknown generator {name!r}")
            for _ in range(int(e) if e else 1):
                out = self.mul(out, gen)
        return out

    def format(self, s):
        a, b, e = s
        parts = [f"p0^{a}" if a > 1 else "p0"] * bool(a) + [f"p1^{b}" if b > 1 else "p1"] * bool(b)
        parts += ["x"] * e
        return "*".join(parts) or "1"

    def random(self, rng, size):
        return (rng.randint(0, size), rng.randint(0, size), rng.randint(0, 1))

    def enumerate(self, size):
        return [(a, b, e) for a in range(size + 1) for b in range(size + 1) for e in (0, 1)]


class AlgDynZd(Monoid):
    """ℤ^d ⋊_θ P with (m, p)(n, q) = (m + θ_p(n), pq).

    Payloads are (m, p) with m reduced modulo nothing (the group is ℤ^d, so
    every vector is its own normal form) and p in the acting monoid's normal
    form.  The right LCM representative has its vector reduced into the
    canonical coset representative modulo θ_r(ℤ^d).
    """

    kind = "algdyn_zd"

    def __init__(self, acting: ActingMonoid, name: str = "algdyn"):
        self.P = acting
        self.d = acting.d
        for nm, a in zip(getattr(acting, "names", []), getattr(acting, "mats", [])):
            if abs(det(a)) < 2:
                raise AlgDynError(
                    f"matrices: generator {nm} has determinant {det(a)}; need |det| >= 2 "
                    "(0 is not injective, ±1 would make the generator core)"
                )
        self._lattices: dict = {}
        super().__init__(f"{name}[{acting.kind},d={self.d}]")

    def lattice(self, p) -> Lattice:
        lat = self._lattices.get(p)
        if lat is None:
            lat = self._lattices[p] = Lattice(self.P.matrix(p))
        return lat

    def index(self, p) -> int:
        return abs(det(self.P.matrix(p)))

    @property
    def unit_payload(self):
        return ((0,) * self.d, self.P.unit())

    def _mul(self, s, t):
        (m, p), (n, q) = s, t
        tn = matvec(self.P.matrix(p), n)
        return (tuple(a + b for a, b in zip(m, tn)), self.P.mul(p, q))

    def _lcm(self, s, t):
        (m, p), (n, q) = s, t
        plcm = self.P.lcm(p, q)
        if plcm is None:
            return None
        r, p_cof, q_cof = plcm
        diff = tuple(b - a for a, b in zip(m, n))
        sol = solve_in_span(self.P.matrix(p), self.P.matrix(q), diff)
        if sol is None:
            return None
        k, _ = sol
        x = tuple(a + b for a, b in zip(m, matvec(self.P.matrix(p), k)))
        x = self.lattice(r).reduce(x)
        left = self._left_quotient(s, (x, r), p_cof)
        right = self._left_quotient(t, (x, r), q_cof)
        return (x, r), left, right

    def _left_quotient(self, s, target, p_cof):
        """Solve s·(k, p_cof) = target for k."""
        (m, p), (x, _) = s, target
        a = self.P.matrix(p)
        diff = tuple(b - c for b, c in zip(x, m))
        sol = solve_in_span(a, tuple((0,) * self.d for _ in range(self.d)), diff)
        if sol is None:
            raise ArithmeticError("internal: lcm representative outside the expected coset")
        return (sol[0], p_cof)

    def _is_core(self, s):
        return self.index(s[1]) == 1

    def _is_noncore_irreducible(self, s):
        return self.P.is_irreducible(s[1])

    def _factor_noncore(self, s):
        m, p = s
        parts, unit_tail = self.P.factor(p)
        zero = (0,) * self.d
        letters = [(m, parts[0])] + [(zero, q) for q in parts[1:]]
        return letters, self.unit_payload, (zero, unit_tail)

    def irreducible_classes(self, cap):
        reps, blocks = [], []
        for q in self.P.irreducible_classes():
            block = []
            for v in self.lattice(q).coset_representatives():
                block.append(len(reps))
                reps.append(self.element((v, q)))
            blocks.append(tuple(block))
        exhaustive = len(reps) <= cap
        blocks = [tuple(i for i in b if i < cap) for b in blocks]
        return ClassEnumeration(
            tuple(reps[:cap]),
            exhaustive,
            "classes (m, q) for q irreducible in P and m over Z^d / θ_q(Z^d)",
            tuple(b for b in blocks if b),
        )

    def core_generators(self):
        zero = (0,) * self.d
        out = [self.element((tuple(int(i == j) for j in range(self.d)), self.P.unit())) for i in range(self.d)]
        out += [self.element((zero, u)) for u in self.P.units()]
        return out

    def parse_payload(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"expected '((m1,...,md), word)', got {text!r}")
        parts = _split_top(text[1:-1])
        if len(parts) != 2:
            raise ValueError(f"expected '((m1,...,md), word)', got {text!r}")
        vec_text = parts[0]
        if not vec_text.startswith("("):
            vec_text = f"({vec_text})"
        vec = _parse_vector(vec_text)
        if len(vec) != self.d:
            raise ValueError(f"vector must have {self.d} entries, got {text!r}")
        return (vec, self.P.parse(parts[1]))

    def format_payload(self, s):
        m, p = s
        vec = str(m[0]) if self.d == 1 else "(" + ",".join(map(str, m)) + ")"
        return f"({vec},{self.P.format(p)})"

    def random_payload(self, rng, size):
        return (tuple(rng.randint(-6, 6) for _ in range(self.d)), self.P.random(rng, size))

    def oracle_pool(self, size):
        vecs = list(itertools.product(range(-size, size + 1), repeat=self.d))
        return [self.element((v, p)) for p in self.P.enumerate(min(size, 2)) for v in vecs]

    def closed_form_scale(self, s):
        """Free P: (Σ_i [G:θ_i G])^length.  Commutative P: the index [G:θ_p G]."""
        p = s.payload[1]
        if self.P.kind == "free":
            total = sum(abs(det(m)) for m in self.P.mats)
            return total ** self.P.length(p)
        if self.P.kind == "commutative":
            return self.index(p)
        return None

    def index_homomorphism(self, s) -> int:
        return self.index(s.payload[1])


class AlgDynF2t(Monoid):
    """𝔽₂[t] ⋊ ℕ^k with θ_e = multiplication by Π f_i^{e_i}.

    With f = (t, 1+t) this is Ledrappier's shift: G = ⊕_ℕ ℤ/2 encoded as
    polynomials (bit k ↔ coordinate k), σ = multiplication by t.
    Payloads are (g, e) with g an int bitmask and e an exponent tuple.
    """

    kind = "algdyn_f2t"

    def __init__(self, polys: Sequence[int], names: Sequence[str] | None = None, name: str = "f2t"):
        self.polys = [int(f) for f in polys]
        self.names = list(names) if names else [f"f{i}" for i in range(len(self.polys))]
        if not self.polys:
            raise AlgDynError("polynomials: need at least one generator")
        for f, n in zip(self.polys, self.names):
            if gf2.deg(f) < 1:
                raise AlgDynError(f"polynomials: generator {n} must have degree >= 1 (injective, non-surjective)")
        for i, j in itertools.combinations(range(len(self.polys)), 2):
            if gf2.gcd(self.polys[i], self.polys[j]) != 1:
                raise AlgDynError(
                    f"polynomials: generators {self.names[i]} and {self.names[j]} are not coprime"
                )
        super().__init__(f"{name}[" + ",".join(gf2.fmt(f) for f in self.polys) + "]")

    def poly(self, e) -> int:
        out = 1
        for f, k in zip(self.polys, e):
            out = gf2.mul(out, gf2.power(f, k))
        return out

    @property
    def unit_payload(self):
        return (0, (0,) * len(self.polys))

    def _mul(self, s, t):
        (g, e), (h, f) = s, t
        return (g ^ gf2.mul(self.poly(e), h), tuple(a + b for a, b in zip(e, f)))

    def _lcm(self, s, t):
        (g, e), (h, f) = s, t
        p, q = self.poly(e), self.poly(f)
        d = gf2.gcd(p, q)
        if gf2.mod(g ^ h, d):
            return None
        r = tuple(max(a, b) for a, b in zip(e, f))
        L = self.poly(r)
        pd, qd = gf2.exact_div(p, d), gf2.exact_div(q, d)
        # x = g + p·k with p·k ≡ h - g (mod q)
        _, inv, _ = gf2.xgcd(pd, qd)
        k = gf2.mod(gf2.mul(gf2.exact_div(g ^ h, d), inv), qd) if gf2.deg(qd) > 0 else 0
        x = gf2.mod(g ^ gf2.mul(p, k), L)
        left = (gf2.exact_div(x ^ g, p), tuple(a - b for a, b in zip(r, e)))
        right = (gf2.exact_div(x ^ h, q), tuple(a - b for a, b in zip(r, f)))
        return (x, r), left, right

    def _is_core(self, s):
        return not any(s[1])

    def _is_noncore_irreducible(self, s):
        return sum(s[1]) == 1

    def _factor_noncore(self, s):
        g, e = s
        k = len(e)
        gens = [tuple(int(i == j) for i in range(k)) for j, c in enumerate(e) for _ in range(c)]
        letters = [(g, gens[0])] + [(0, x) for x in gens[1:]]
        return letters, self.unit_payload, self.unit_payload

    def irreducible_classes(self, cap):
        reps, blocks = [], []
        k = len(self.polys)
        for j, f in enumerate(self.polys):
            e = tuple(int(i == j) for i in range(k))
            block = []
            for g in range(1 << gf2.deg(f)):
                block.append(len(reps))
                reps.append(self.element((g, e)))
            blocks.append(tuple(block))
        exhaustive = len(reps) <= cap
        blocks = [tuple(i for i in b if i < cap) for b in blocks]
        return ClassEnumeration(
            tuple(reps[:cap]), exhaustive, "classes (g, f_i) for g of degree < deg f_i", tuple(b for b in blocks if b)
        )

    def core_generators(self):
        top = max(gf2.deg(f) for f in self.polys)
        return [self.element((1 << k, (0,) * len(self.polys))) for k in range(top)]

    def parse_payload(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"expected '(poly, word)', got {text!r}")
        parts = _split_top(text[1:-1])
        if len(parts) != 2:
            raise ValueError(f"expected '(poly, word)', got {text!r}")
        g = gf2.parse(parts[0])
        exps = [0] * len(self.polys)
        word = parts[1].strip()
        if word not in ("1", "()", ""):
            for tok in word.split("*"):
                name, _, c = tok.strip().partition("^")
                if name not in self.names:
                    raise ValueError(f"unknown generator {name!r}")
                exps[self.names.index(name)] += int(c) if c else 1
        return (g, tuple(exps))

    def format_payload(self, s):
        g, e = s
        parts = [n if c == 1 else f"{n}^{c}" for n, c in zip(self.names, e) if c]
        return f"({gf2.fmt(g)},{'*'.join(parts) or '1'})"

    def random_payload(self, rng, size):
        return (rng.getrandbits(5), tuple(rng.randint(0, size) for _ in self.polys))

    def oracle_pool(self, size):
        exps = list(itertools.product(range(min(size, 2) + 1), repeat=len(self.polys)))
        return [self.element((g, e)) for e in exps for g in range(1 << size)]

    def index_homomorphism(self, s) -> int:
        """[G : θ_e(G)] = 2^deg; for Ledrappier this is σ ↦ 2, id+σ ↦ 2."""
        return 2 ** gf2.deg(self.poly(s.payload[1]))

    def closed_form_scale(self, s):
        degs = [gf2.deg(f) for f in self.polys]
        if len(set(degs)) == len(degs):
            return self.index_homomorphism(s)
        return None
