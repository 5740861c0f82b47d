"""Existence and construction of the generalized scale.

The four conditions checked by :func:`check_conditions`:

(i)   the component cardinalities |V_i| freely generate a nontrivial
      submonoid of ℕ^×;
(ii)  every coconnected component of Γ(S) is edge-free;
(iii) every noncore element is ∼ to a product of noncore irreducibles;
(iv)  balanced factorization across distinct components.

When all hold, N_s = Π_k |V_{i(s_k)}| over any such factorization.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from genscale import nx
from genscale.coregraph import CoreGraph, UnknownClass, component_of
from genscale.families.axb import prime_factors
from genscale.intlinalg import hnf_with_transform
from genscale.kernel import Element, Monoid, NotFactorable

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
DEFAULT_BOUND = 10**6


class NotInSubsemigroup(ValueError):
    pass


class NotFree(ValueError):
    pass


class ScaleUnavailable(ValueError):
    """Raised when a scale operation is requested but the report does not certify existence."""


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str = ""
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason, "witness": self.witness}


# -- N^x ---------------------------------------------------------------------


def _exponent_vectors(gens: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    primes = sorted({p for g in gens for p in prime_factors(g)})
    cols = []
    for g in gens:
        fs = prime_factors(g)
        cols.append([fs.count(p) for p in primes])
    return primes, cols


def integer_relation(gens: Sequence[int]) -> tuple[int, ...] | None:
    """A nonzero c ∈ ℤ^k with Π g_i^{c_i} = 1, or None if the gens are multiplicatively independent."""
    primes, cols = _exponent_vectors(gens)
    k = len(gens)
    if not primes:
        return None
    a = [[cols[j][i] for j in range(k)] for i in range(len(primes))]
    h, u = hnf_with_transform(a)
    for j in range(k):
        if all(row[j] == 0 for row in h):
            c = tuple(u[i][j] for i in range(k))
            if c[next(i for i, x in enumerate(c) if x)] < 0:
                c = tuple(-x for x in c)
            return c
    return None


def _two_factorizations(n: int, gens: Sequence[int]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens))
    found: list[tuple[int, ...]] = []

    def rec(rest, start, acc):
        if len(found) >= 2:
            return
        if rest == 1:
            found.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            if rest % gens[i] == 0:
                rec(rest // gens[i], i, acc + [gens[i]])

    rec(n, 0, [])
    return found


def check_freeness(cards: Sequence[int | float], bound: int = DEFAULT_BOUND) -> Verdict:
    """Decide whether ``cards`` freely generate a nontrivial submonoid of ℕ^×.

    Exact: the generators are free iff their prime-exponent vectors are
    linearly independent.  A collision witness is taken from the bounded
    sieve when one exists below ``bound``, else from the integer relation.
    """
    if not cards:
        return Verdict(FAIL, "no components: the generated submonoid is trivial")
    if any(c == math.inf for c in cards):
        return Verdict(FAIL, "infinite component cardinality", "inf")
    if any(c < 2 for c in cards):
        return Verdict(FAIL, f"component cardinality {min(cards)} < 2", min(cards))
    seen = set()
    for c in sorted(cards):
        if c in seen:
            return Verdict(FAIL, f"duplicate component cardinality {c}", c)
        seen.add(c)
    gens = sorted(int(c) for c in cards)
    if all(math.gcd(a, b) == 1 for a, b in itertools.combinations(gens, 2)):
        return Verdict(PASS, "pairwise coprime generators")
    rel = integer_relation(gens)
    if rel is None:
        return Verdict(PASS, "prime-exponent vectors are linearly independent")
    n = nx.first_collision(gens, bound) if bound >= 1 else 0
    if not n:
        n = math.prod(g**c for g, c in zip(gens, rel) if c > 0)
        lhs = [g for g, c in zip(gens, rel) for _ in range(max(c, 0))]
        rhs = [g for g, c in zip(gens, rel) for _ in range(max(-c, 0))]
        facts = [tuple(lhs), tuple(rhs)]
    else:
        facts = _two_factorizations(n, gens)
    desc = " = ".join("·".join(map(str, f)) for f in facts)
    return Verdict(FAIL, f"product collision {n} = {desc}", {"n": n, "factorizations": [list(f) for f in facts]})


@dataclass(frozen=True)
class NxSubsemigroup:
    generators: tuple[int, ...]

    def __init__(self, generators: Iterable[int]):
        gens = tuple(sorted(int(g) for g in generators))
        if any(g < 2 for g in gens):
            raise ValueError("generators must be at least 2")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        object.__setattr__(self, "generators", gens)

    def irreducibles(self) -> tuple[int, ...]:
        """Generators not expressible as a product of two or more generators."""
        out = []
        for g in self.generators:
            others = [h for h in self.generators if h < g]
            if not _two_factorizations(g, others):
                out.append(g)
        return tuple(out)

    def contains(self, n: int) -> bool:
        return n >= 1 and bool(_two_factorizations(n, self.generators))

    def is_free(self, bound: int = DEFAULT_BOUND) -> bool:
        return check_freeness(list(self.irreducibles()), bound).passed

    def lcm(self, a: int, b: int) -> int:
        """Least common multiple inside the (free) subsemigroup."""
        fa, fb = factor_in_nx(a, self), factor_in_nx(b, self)
        out = 1
        for g in set(fa) | set(fb):
            out *= g ** max(fa.count(g), fb.count(g))
        return out

    def elements_upto(self, bound: int) -> list[int]:
        member = nx.membership(self.generators, bound)
        return [n for n in range(1, bound + 1) if member[n]]


def factor_in_nx(n: int, semigroup: NxSubsemigroup) -> list[int]:
    """The unique multiset (sorted list) of irreducibles with product n."""
    if n < 1:
        raise NotInSubsemigroup(f"{n} is not a positive integer")
    facts = _two_factorizations(n, semigroup.irreducibles())
    if not facts:
        raise NotInSubsemigroup(f"{n} is not in the subsemigroup generated by {list(semigroup.generators)}")
    if len(facts) > 1:
        raise NotFree(f"{n} has two factorizations: {facts[0]} and {facts[1]}")
    return list(facts[0])


# -- zeta ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaResult:
    beta: float
    cutoff: int
    partial_sum: float
    euler_closed_form: float | None
    divergent: bool

    @property
    def abs_diff(self) -> float | None:
        if self.euler_closed_form is None:
            return None
        return abs(self.partial_sum - self.euler_closed_form)


def zeta_partial(semigroup: NxSubsemigroup, beta: float, cutoff: int) -> ZetaResult:
    """Σ n^{1-β} over n ≤ cutoff in the subsemigroup, with the Euler product
    Π_g (1 - g^{1-β})^{-1} over the irreducibles when it converges."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    irr = semigroup.irreducibles()
    partial = nx.zeta_sum(semigroup.generators, beta, cutoff)
    # every factor converges iff the largest generator has g^{1-β} < 1, i.e. β > 1
    g = max(irr)
    divergent = g ** (1.0 - beta) >= 1.0
    free = check_freeness(list(irr)).passed
    euler = None if divergent or not free else reduce(lambda acc, h: acc / (1.0 - h ** (1.0 - beta)), irr, 1.0)
    return ZetaResult(beta, cutoff, partial, euler, divergent)


# -- conditions ----------------------------------------------------------------


@dataclass
class ScaleReport:
    family: str
    cond_i: Verdict
    cond_ii: Verdict
    cond_iii: Verdict
    cond_iv: Verdict
    scale_on_components: dict[int, int] = field(default_factory=dict)
    exists: bool | str = False
    component_labels: dict[int, list[str]] = field(default_factory=dict)
    exhaustive: bool = True

    def conditions(self) -> dict[str, Verdict]:
        return {"i": self.cond_i, "ii": self.cond_ii, "iii": self.cond_iii, "iv": self.cond_iv}

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions().items() if v.status == FAIL]

    def semigroup(self) -> NxSubsemigroup:
        return NxSubsemigroup(self.scale_on_components.values())

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "exists": self.exists,
            "exhaustive": self.exhaustive,
            "cond_i": self.cond_i.to_dict(),
            "cond_ii": self.cond_ii.to_dict(),
            "cond_iii": self.cond_iii.to_dict(),
            "cond_iv": self.cond_iv.to_dict(),
            "scale_on_components": {str(k): v for k, v in sorted(self.scale_on_components.items())},
            "components": {str(k): v for k, v in sorted(self.component_labels.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)


def default_samples(S: Monoid, graph: CoreGraph, depth: int = 3, limit: int = 100_000) -> tuple[list[Element], str]:
    """Products of at most ``depth`` stored irreducibles, core-generator
    translates of short products, and the family's spot elements."""
    reps = list(graph.vertices)
    samples: list[Element] = []
    total = 0
    for k in range(1, depth + 1):
        for combo in itertools.product(reps, repeat=k):
            total += 1
            if len(samples) < limit:
                samples.append(S.product(combo))
    gens = S.core_generators()
    for a in gens:
        for x in reps:
            samples.append(S.multiply(a, x))
            samples.append(S.multiply(x, a))
            for y in reps[:16]:
                samples.append(S.multiply(S.multiply(a, x), y))
    samples += S.spot_elements()
    covered = min(total, limit)
    return samples, f"{covered} of {total} products of <= {depth} irreducible classes, plus {len(samples) - covered} translates and spot elements"


def _taint(v: Verdict, exhaustive: bool) -> Verdict:
    if exhaustive:
        return v
    return Verdict(INCONCLUSIVE, f"core graph not exhaustive at this cap ({v.status}: {v.reason})", v.witness)


def check_conditions(
    S: Monoid, graph: CoreGraph, samples: Sequence[Element] | None = None, bound: int = DEFAULT_BOUND
) -> ScaleReport:
    comp = graph.comp_index
    labels = {i: [graph.labels[v] for v in block] for i, block in enumerate(graph.components)}

    cond_i = check_freeness(list(graph.component_cards), bound)

    bad_edges = []
    for i in range(len(graph.components)):
        for a, b in graph.internal_edges(i):
            bad_edges.append([graph.labels[a], graph.labels[b]])
    if bad_edges:
        edges_txt = ", ".join(f"({a}, {b})" for a, b in bad_edges)
        cond_ii = Verdict(FAIL, f"coconnected component with edges: {edges_txt}", bad_edges)
    else:
        cond_ii = Verdict(PASS, "all coconnected components are edge-free")

    if samples is None:
        samples, coverage = default_samples(S, graph)
    else:
        coverage = f"{len(samples)} supplied samples"
    cond_iii = Verdict(PASS, f"factorization witnesses verified on {coverage}")
    for s in samples:
        if S.is_core(s):
            continue
        try:
            S.factor_noncore(s)
        except NotFactorable as exc:
            cond_iii = Verdict(FAIL, str(exc), S.format(s))
            break

    cond_iv = Verdict(PASS, "cross-component right LCMs have irreducible cofactors in the original components")
    verts = graph.vertices
    for i, j in itertools.combinations(range(len(verts)), 2):
        if comp[i] == comp[j]:
            continue
        s, t = verts[i], verts[j]
        res = S.right_lcm(s, t)
        witness = [graph.labels[i], graph.labels[j]]
        if not res.is_meet:
            cond_iv = Verdict(FAIL, f"{witness[0]} and {witness[1]} lie in distinct components but are orthogonal", witness)
            break
        t1, s1 = res.cofactor_left, res.cofactor_right  # s·t' = t·s'
        if not (S.is_noncore_irreducible(t1) and S.is_noncore_irreducible(s1)):
            cond_iv = Verdict(FAIL, f"cofactors of ({witness[0]}, {witness[1]}) are not noncore irreducible", witness)
            break
        try:
            ok = component_of(S, graph, t1) == comp[j] and component_of(S, graph, s1) == comp[i]
        except UnknownClass:
            cond_iv = Verdict(INCONCLUSIVE, f"cofactor class of ({witness[0]}, {witness[1]}) not stored", witness)
            break
        if not ok:
            cond_iv = Verdict(FAIL, f"cofactors of ({witness[0]}, {witness[1]}) change component", witness)
            break

    exh = graph.exhaustive
    cond_i, cond_ii, cond_iii, cond_iv = (_taint(v, exh) for v in (cond_i, cond_ii, cond_iii, cond_iv))
    verdicts = [cond_i, cond_ii, cond_iii, cond_iv]
    if any(v.status == FAIL for v in verdicts):
        exists: bool | str = False
    elif any(v.status == INCONCLUSIVE for v in verdicts):
        exists = INCONCLUSIVE
    else:
        exists = True
    table = {i: int(c) for i, c in enumerate(graph.component_cards)} if cond_i.passed else {}
    return ScaleReport(S.tag, cond_i, cond_ii, cond_iii, cond_iv, table, exists, labels, exh)


def _require(report: ScaleReport) -> None:
    if report.exists is not True:
        raise ScaleUnavailable(f"no generalized scale certified for {report.family} (exists={report.exists})")


def scale_value(S: Monoid, graph: CoreGraph, report: ScaleReport, s: Element) -> int:
    _require(report)
    if S.is_core(s):
        return 1
    try:
        fac = S.factor_noncore(s)
    except NotFactorable as exc:
        raise AssertionError(f"internal inconsistency: condition (iii) passed but {exc}") from None
    out = 1
    for x in fac.letters:
        out *= report.scale_on_components[component_of(S, graph, x)]
    return out


def transversal(S: Monoid, graph: CoreGraph, report: ScaleReport, n: int, verify: bool = True) -> list[Element]:
    """n pairwise orthogonal elements of N^{-1}(n), one per ∼-class."""
    _require(report)
    cards = report.scale_on_components
    by_card = {c: i for i, c in cards.items()}
    factors = factor_in_nx(n, report.semigroup())
    blocks = [[graph.vertices[v] for v in graph.components[by_card[c]]] for c in factors]
    out = [S.product(choice) for choice in itertools.product(*blocks)] if blocks else [S.unit]
    if verify:
        if len(out) != n:
            raise AssertionError(f"transversal has {len(out)} members, expected {n}")
        for a, b in itertools.combinations(out, 2):
            if S.intersects(a, b):
                raise AssertionError(f"transversal members {S.format(a)} and {S.format(b)} intersect")
    return out


def transversal_class(S: Monoid, members: Sequence[Element], s: Element) -> list[int]:
    """Indices of transversal members ∼ s (a correct transversal yields exactly one)."""
    return [i for i, t in enumerate(members) if S.core_equivalent(s, t)]


# -- Definition-level verification -------------------------------------------


@dataclass
class AxiomCheck:
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _fail(self, check: str, **witness) -> None:
        self.failures.append({"check": check, **witness})


def verify_scale_axioms(
    S: Monoid, graph: CoreGraph, report: ScaleReport, samples: Sequence[Element], n_cap: int = 12, pair_limit: int = 4000
) -> AxiomCheck:
    """(a) multiplicativity; (b) equal scale ⇒ ∼ or ⊥; (c) every s meets some
    member of each transversal; (d) distinct irreducible values meet;
    (e) N of a right LCM is the LCM of the values inside N(S)."""
    _require(report)
    out = AxiomCheck({k: 0 for k in "abcde"})
    N = {s: scale_value(S, graph, report, s) for s in samples}
    nsg = report.semigroup()
    irr_values = set(nsg.irreducibles())
    pairs = list(itertools.islice(itertools.combinations(samples, 2), pair_limit))
    for s, t in pairs:
        st = S.multiply(s, t)
        out.checked["a"] += 1
        if scale_value(S, graph, report, st) != N[s] * N[t]:
            out._fail("a", s=S.format(s), t=S.format(t))
        res = S.right_lcm(s, t)
        if N[s] == N[t]:
            out.checked["b"] += 1
            if res.is_meet and not S.core_equivalent(s, t):
                out._fail("b", s=S.format(s), t=S.format(t))
        if N[s] != N[t] and N[s] in irr_values and N[t] in irr_values:
            out.checked["d"] += 1
            if not res.is_meet:
                out._fail("d", s=S.format(s), t=S.format(t))
        if res.is_meet:
            out.checked["e"] += 1
            if scale_value(S, graph, report, res.lcm) != nsg.lcm(N[s], N[t]):
                out._fail("e", s=S.format(s), t=S.format(t))
    for n in nsg.elements_upto(n_cap):
        members = transversal(S, graph, report, n, verify=False)
        for s in samples:
            out.checked["c"] += 1
            if not any(S.intersects(s, t) for t in members):
                out._fail("c", s=S.format(s), n=n)
    return out
