"""Polynomials over GF(2) packed into Python ints (bit k = coefficient of t^k)."""
from __future__ import annotations


def deg(a: int) -> int:
    return a.bit_length() - 1


def mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def divmod_(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    db = deg(b)
    while a and deg(a) >= db:
        shift = deg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def mod(a: int, b: int) -> int:
    return divmod_(a, b)[1]


def power(a: int, n: int) -> int:
    out = 1
    for _ in range(n):
        out = mul(out, a)
    return out


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x·a + y·b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod_(a, b)
        a, b = b, r
        x0, x1 = x1, x0 ^ mul(q, x1)
        y0, y1 = y1, y0 ^ mul(q, y1)
    return a, x0, y0


def exact_div(a: int, b: int) -> int:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError(f"{fmt(b)} does not divide {fmt(a)}")
    return q


def fmt(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    for k in range(deg(a), -1, -1):
        if a >> k & 1:
            terms.append("1" if k == 0 else "t" if k == 1 else f"t^{k}")
    return "+".join(terms)


def parse(text: str) -> int:
    """Parse '1+t+t^3', '0', or a binary literal such as 0b1011."""
    text = text.replace(" ", "")
    if text.startswith("0b"):
        return int(text, 2)
    if text == "0":
        return 0
    out = 0
    for term in text.split("+"):
        if term == "1":
            k = 0
        elif term == "t":
            k = 1
        elif term.startswith("t^"):
            k = int(term[2:])
        elif term.startswith("e") and term[1:].isdigit():
            k = int(term[1:])
        else:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        out ^= 1 << k
    return out
