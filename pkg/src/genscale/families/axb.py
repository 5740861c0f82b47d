"""The ax+b-monoid ℕ ⋊ ℕ^× and its one-dimensional subdynamics ℕ ⋊ ⟨p⟩.

Elements are pairs (m, p) with m ≥ 0, p ≥ 1 and product
(m, p)(n, q) = (m + p·n, p·q).  Pairs are already a normal form since the
unit group is trivial.
"""
from __future__ import annotations

import math
import random
import re

from genscale.kernel import ClassEnumeration, Element, Monoid

_PAIR = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for k in range(2, math.isqrt(n) + 1):
        if sieve[k]:
            sieve[k * k :: k] = bytearray(len(range(k * k, n + 1, k)))
    return [k for k in range(n + 1) if sieve[k]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for k in range(2, math.isqrt(n) + 1):
        if n % k == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Prime factors with multiplicity, ascending."""
    out, k = [], 2
    while k * k <= n:
        while n % k == 0:
            out.append(k)
            n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def crt_smallest(m: int, p: int, n: int, q: int) -> int | None:
    """Smallest x ≥ max(m, n) with x ≡ m (mod p), x ≡ n (mod q), or None."""
    g = math.gcd(p, q)
    if (m - n) % g:
        return None
    lcm = p // g * q
    # x = m + p·k with p·k ≡ n - m (mod q)
    pg, qg = p // g, q // g
    k = ((n - m) // g) * pow(pg, -1, qg) % qg if qg > 1 else 0
    x = (m + p * k) % lcm
    lo = max(m, n)
    if x < lo:
        x += (lo - x + lcm - 1) // lcm * lcm
    return x


def parse_pair(text: str) -> tuple[int, int]:
    match = _PAIR.match(text.strip())
    if not match:
        raise ValueError(f"expected a pair '(m,p)', got {text!r}")
    return int(match.group(1)), int(match.group(2))


class AxB(Monoid):
    """ℕ ⋊ ℕ^×.

    Noncore irreducibles are the (m, p) with p prime and the ∼-classes of
    such elements are the residues of m modulo p, so the core graph splits
    into blocks V_p of size p.  ``max_prime`` bounds the primes enumerated;
    blocks for larger primes follow the same closed form.
    """

    kind = "axb"

    def __init__(self, max_prime: int = 13):
        if max_prime < 2:
            raise ValueError("axb: max_prime must be at least 2")
        super().__init__(f"axb[max_prime={max_prime}]")
        self.max_prime = max_prime

    @property
    def unit_payload(self):
        return (0, 1)

    def _mul(self, s, t):
        return (s[0] + s[1] * t[0], s[1] * t[1])

    def _lcm(self, s, t):
        (m, p), (n, q) = s, t
        x = crt_smallest(m, p, n, q)
        if x is None:
            return None
        lcm = p // math.gcd(p, q) * q
        return (x, lcm), ((x - m) // p, lcm // p), ((x - n) // q, lcm // q)

    def _is_core(self, s):
        return s[1] == 1

    def _is_noncore_irreducible(self, s):
        return is_prime(s[1])

    def _factor_noncore(self, s):
        m, p = s
        ps = prime_factors(p)
        letters = [(m, ps[0])] + [(0, r) for r in ps[1:]]
        return letters, (0, 1), (0, 1)

    def irreducible_classes(self, cap):
        reps, blocks = [], []
        for p in primes_upto(self.max_prime):
            blocks.append(tuple(range(len(reps), len(reps) + p)))
            reps.extend(self.element((k, p)) for k in range(p))
        exhaustive = len(reps) <= cap
        reps = reps[:cap]
        blocks = [tuple(i for i in b if i < cap) for b in blocks]
        return ClassEnumeration(tuple(reps), exhaustive, self._certificate(), tuple(b for b in blocks if b))

    def _certificate(self) -> str:
        return (
            f"blocks V_p = {{[(k,p)] : 0 <= k < p}} enumerated for primes p <= {self.max_prime}; "
            "larger primes contribute blocks of the same shape"
        )

    def core_generators(self):
        return [self.element((1, 1))]

    def parse_payload(self, text):
        m, p = parse_pair(text)
        if m < 0 or p < 1:
            raise ValueError(f"axb element needs m >= 0 and p >= 1, got {text!r}")
        return (m, p)

    def format_payload(self, s):
        return f"({s[0]},{s[1]})"

    def random_payload(self, rng, size):
        primes = primes_upto(self.max_prime)
        p = 1
        for _ in range(rng.randint(0, size)):
            p *= rng.choice(primes)
        return (rng.randrange(0, 4 * p + 3), p)

    def random_irreducible(self, rng: random.Random) -> Element:
        p = rng.choice(primes_upto(self.max_prime))
        return self.element((rng.randrange(0, 5 * p), p))

    def oracle_pool(self, size):
        return [self.element((k, q)) for q in range(1, size + 1) for k in range(size * size + 1)]

    def closed_form_scale(self, s):
        return s.payload[1]

    def spot_elements(self):
        return [self.element(x) for x in [(0, 12), (5, 6), (7, 12), (11, 30), (3, 8)]]


class Subdynamics(Monoid):
    """ℕ ⋊ ⟨p⟩ ⊂ ℕ ⋊ ℕ^×: pairs (m, p^j), stored as (m, j).

    Used as a vertex monoid of graph products.  Its atoms are a = (1, 1) and
    (0, p); the core is {(m, 1)}.
    """

    kind = "subdynamics"

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("subdynamics: p must be at least 2")
        super().__init__(f"subdyn[p={p}]")
        self.p = p

    @property
    def unit_payload(self):
        return (0, 0)

    def _mul(self, s, t):
        return (s[0] + self.p ** s[1] * t[0], s[1] + t[1])

    def _lcm(self, s, t):
        (m, i), (n, j) = s, t
        pi, pj = self.p**i, self.p**j
        x = crt_smallest(m, pi, n, pj)
        if x is None:
            return None
        k = max(i, j)
        return (x, k), ((x - m) // pi, k - i), ((x - n) // pj, k - j)

    def _is_core(self, s):
        return s[1] == 0

    def _is_noncore_irreducible(self, s):
        return s[1] == 1

    def _factor_noncore(self, s):
        m, j = s
        return [(m, 1)] + [(0, 1)] * (j - 1), (0, 0), (0, 0)

    def irreducible_classes(self, cap):
        reps = tuple(self.element((k, 1)) for k in range(min(self.p, cap)))
        return ClassEnumeration(reps, cap >= self.p, "residues modulo p", (tuple(range(len(reps))),))

    def core_generators(self):
        return [self.element((1, 0))]

    def atoms(self):
        return [(1, 0), (0, 1)]

    def factor_atoms(self, s):
        """Write s as a product of atoms: (m, j) = a^m · (0,p)^j."""
        m, j = s
        return [(1, 0)] * m + [(0, 1)] * j

    def is_atom(self, s):
        return s in ((1, 0), (0, 1))

    def parse_payload(self, text):
        m, q = parse_pair(text)
        j, r = 0, q
        while r % self.p == 0:
            r //= self.p
            j += 1
        if m < 0 or r != 1:
            raise ValueError(f"{text!r} is not an element of N x <{self.p}>")
        return (m, j)

    def format_payload(self, s):
        return f"({s[0]},{self.p ** s[1]})"

    def random_payload(self, rng, size):
        return (rng.randrange(0, 3 * size + 1), rng.randint(0, size))

    def oracle_pool(self, size):
        return [self.element((k, j)) for j in range(size) for k in range(self.p ** size + 1)]
