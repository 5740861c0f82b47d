"""Abstract right LCM monoid contract and the operations derived from it.

Every concrete family subclasses :class:`Monoid` and implements a handful of
payload-level primitives (product, right LCM, core membership, noncore
irreducibility, factorization, class enumeration).  Everything else in the
package -- intersection tests, core equivalence, the core graph, the grid
algorithm and the scale checks -- is written against this contract only.

Elements are immutable :class:`Element` values carrying the tag of the monoid
that produced them together with a canonical payload, so equality of
elements is plain equality of payloads.
"""
from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


class FamilyMismatch(ValueError):
    """Raised when elements of two different monoids are combined."""


class NotCore(ValueError):
    """Raised when an operation that requires a core element gets another."""


class NotFactorable(ValueError):
    """Raised when a family cannot factor an element into noncore irreducibles."""


@dataclass(frozen=True)
class Element:
    family: str
    payload: Any

    def __repr__(self) -> str:
        return f"<{self.family} {self.payload!r}>"


@dataclass(frozen=True)
class Orthogonal:
    """sS and tS do not meet."""

    @property
    def is_meet(self) -> bool:
        return False


@dataclass(frozen=True)
class Meet:
    """sS ∩ tS = lcm·S with s·cofactor_left = t·cofactor_right = lcm."""

    lcm: Element
    cofactor_left: Element
    cofactor_right: Element

    @property
    def is_meet(self) -> bool:
        return True

    def swapped(self) -> "Meet":
        return Meet(self.lcm, self.cofactor_right, self.cofactor_left)


LcmOutcome = Orthogonal | Meet
ORTHOGONAL = Orthogonal()


@dataclass(frozen=True)
class IrreducibleFactorization:
    """Witness s·left_core = (letters[0]···letters[-1])·right_core."""

    source: Element
    letters: tuple[Element, ...]
    left_core: Element
    right_core: Element


@dataclass(frozen=True)
class ClassEnumeration:
    """Representatives of distinct ∼-classes of noncore irreducibles.

    ``exhaustive`` is True when the representatives, together with the
    family's closed-form description recorded in ``certificate``, account for
    every class; a cap cut inside a family-declared block clears it.
    ``blocks`` optionally groups the representatives as the family knows them
    (e.g. one block per prime for ax+b) so truncation can be reported.
    """

    representatives: tuple[Element, ...]
    exhaustive: bool
    certificate: str = ""
    blocks: tuple[tuple[int, ...], ...] = field(default=())


class Monoid(ABC):
    """A right LCM monoid with decidable primitives.

    Subclasses implement the underscore-prefixed payload primitives; the
    public methods wrap them with family checks.
    """

    kind: str = "abstract"

    def __init__(self, tag: str):
        self.tag = tag

    # -- payload primitives ------------------------------------------------
    @property
    @abstractmethod
    def unit_payload(self) -> Any: ...

    @abstractmethod
    def _mul(self, p: Any, q: Any) -> Any: ...

    @abstractmethod
    def _lcm(self, p: Any, q: Any) -> tuple[Any, Any, Any] | None:
        """Return (lcm, cofactor_left, cofactor_right) or None if orthogonal."""

    @abstractmethod
    def _is_core(self, p: Any) -> bool: ...

    @abstractmethod
    def _is_noncore_irreducible(self, p: Any) -> bool: ...

    @abstractmethod
    def _factor_noncore(self, p: Any) -> tuple[list[Any], Any, Any]:
        """Return (letters, a, b) with p·a = prod(letters)·b, a and b core."""

    @abstractmethod
    def irreducible_classes(self, cap: int) -> ClassEnumeration: ...

    @abstractmethod
    def core_generators(self) -> list[Element]: ...

    @abstractmethod
    def parse_payload(self, text: str) -> Any: ...

    @abstractmethod
    def format_payload(self, p: Any) -> str: ...

    @abstractmethod
    def random_payload(self, rng: random.Random, size: int) -> Any: ...

    @abstractmethod
    def oracle_pool(self, size: int) -> list[Element]:
        """Finite pool of elements used as cofactors by brute-force oracles."""

    def closed_form_scale(self, s: Element) -> int | None:
        """Scale predicted by the family's own description, if it has one."""
        return None

    def spot_elements(self) -> list[Element]:
        return []

    # -- wrapping ----------------------------------------------------------
    def element(self, payload: Any) -> Element:
        return Element(self.tag, payload)

    @property
    def unit(self) -> Element:
        return Element(self.tag, self.unit_payload)

    def _check(self, *elements: Element) -> None:
        for e in elements:
            if not isinstance(e, Element) or e.family != self.tag:
                raise FamilyMismatch(f"element {e!r} does not belong to {self.tag}")

    def parse(self, text: str) -> Element:
        return self.element(self.parse_payload(text.strip()))

    def format(self, s: Element) -> str:
        self._check(s)
        return self.format_payload(s.payload)

    # -- primitives on elements -------------------------------------------
    def multiply(self, s: Element, t: Element) -> Element:
        self._check(s, t)
        return Element(self.tag, self._mul(s.payload, t.payload))

    def product(self, elements: Iterable[Element]) -> Element:
        acc = self.unit_payload
        for e in elements:
            self._check(e)
            acc = self._mul(acc, e.payload)
        return Element(self.tag, acc)

    def right_lcm(self, s: Element, t: Element) -> LcmOutcome:
        self._check(s, t)
        if s == t:
            return Meet(s, self.unit, self.unit)
        res = self._lcm(s.payload, t.payload)
        if res is None:
            return ORTHOGONAL
        r, a, b = res
        return Meet(self.element(r), self.element(a), self.element(b))

    def is_core(self, s: Element) -> bool:
        self._check(s)
        return self._is_core(s.payload)

    def is_noncore_irreducible(self, s: Element) -> bool:
        self._check(s)
        return self._is_noncore_irreducible(s.payload)

    def factor_noncore(self, s: Element) -> IrreducibleFactorization:
        self._check(s)
        if self._is_core(s.payload):
            raise NotFactorable(f"{self.format(s)} is a core element")
        letters, a, b = self._factor_noncore(s.payload)
        lhs = self._mul(s.payload, a)
        rhs = self.unit_payload
        for x in letters:
            rhs = self._mul(rhs, x)
        rhs = self._mul(rhs, b)
        if lhs != rhs or not letters:
            raise NotFactorable(f"factorization witness for {self.format(s)} does not multiply out")
        if not (self._is_core(a) and self._is_core(b)):
            raise NotFactorable(f"adjustment elements for {self.format(s)} are not core")
        if not all(self._is_noncore_irreducible(x) for x in letters):
            raise NotFactorable(f"factor of {self.format(s)} is not noncore irreducible")
        return IrreducibleFactorization(
            s, tuple(self.element(x) for x in letters), self.element(a), self.element(b)
        )

    # -- derived operations ------------------------------------------------
    def intersects(self, s: Element, t: Element) -> bool:
        return self.right_lcm(s, t).is_meet

    def core_equivalent(self, s: Element, t: Element) -> bool:
        out = self.right_lcm(s, t)
        if not out.is_meet:
            return False
        return self.is_core(out.cofactor_left) and self.is_core(out.cofactor_right)

    def random_element(self, rng: random.Random, size: int = 3) -> Element:
        return self.element(self.random_payload(rng, size))

    def random_irreducible(self, rng: random.Random) -> Element:
        """A noncore irreducible: a class representative right-multiplied by core generators."""
        reps = self.irreducible_classes(64).representatives
        if not reps:
            raise ValueError(f"{self.tag} has no noncore irreducibles")
        s = rng.choice(reps)
        gens = self.core_generators()
        for _ in range(rng.randint(0, 2)):
            if gens:
                s = self.multiply(s, rng.choice(gens))
        return s

    def describe(self) -> str:
        return self.tag


def fold(S: Monoid, letters: Sequence[Element]) -> Element:
    return S.product(letters)
