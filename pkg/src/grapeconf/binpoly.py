"""Exact integer polynomial arithmetic in the binomial basis {C(k,j)}.

A polynomial is stored by its coefficients b_j in the expansion
p(k) = sum_j b_j * C(k,j).  All coefficients are arbitrary-precision
integers; only the conversion to the power basis leaves the integers
(it returns exact rationals).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError


def binom(n: int, k: int) -> int:
    """C(n, k), defined as 0 for k < 0 or k > n.  Requires n >= 0."""
    if n < 0:
        raise ValueError("binomial coefficient with negative upper index")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class BinPoly:
    """Immutable integer polynomial in the binomial basis.

    The zero polynomial has empty support and degree ``None``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for j, b in items:
            j = int(j)
            if j < 0:
                raise ValueError("binomial basis index must be nonnegative")
            if not isinstance(b, int):
                raise TypeError("binomial coefficients must be integers")
            if b:
                c[j] = c.get(j, 0) + b
                if not c[j]:
                    del c[j]
        object.__setattr__(self, "_c", c)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "BinPoly":
        return BinPoly()

    @staticmethod
    def const(value: int) -> "BinPoly":
        return BinPoly({0: value})

    @staticmethod
    def basis(j: int, coeff: int = 1) -> "BinPoly":
        """coeff * C(k, j)."""
        return BinPoly({j: coeff})

    # -- basic queries --------------------------------------------------------

    def coeff(self, j: int) -> int:
        return self._c.get(j, 0)

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    @property
    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    @property
    def blead(self) -> int:
        """b-leading coefficient (0 for the zero polynomial)."""
        d = self.degree
        return 0 if d is None else self._c[d]

    def is_zero(self) -> bool:
        return not self._c

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "BinPoly") -> "BinPoly":
        c = dict(self._c)
        for j, b in other._c.items():
            c[j] = c.get(j, 0) + b
        return BinPoly(c)

    def __sub__(self, other: "BinPoly") -> "BinPoly":
        c = dict(self._c)
        for j, b in other._c.items():
            c[j] = c.get(j, 0) - b
        return BinPoly(c)

    def __neg__(self) -> "BinPoly":
        return BinPoly({j: -b for j, b in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return BinPoly({j: b * other for j, b in self._c.items()})
        if isinstance(other, BinPoly):
            return conv(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, k: int) -> int:
        return evaluate(self, k)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self) -> str:
        return f"BinPoly({render(self)!r})"

    def __bool__(self) -> bool:
        return bool(self._c)


ONE = BinPoly.const(1)
ZERO = BinPoly.zero()


def evaluate(p: BinPoly, k: int) -> int:
    """Exact value sum_j b_j * C(k, j) at an integer k >= 0."""
    if k < 0:
        raise ValueError("evaluation point must be nonnegative")
    total = 0
    for j, b in p._c.items():
        total += b * binom(k, j)
    return total


def shift_plus(p: BinPoly) -> BinPoly:
    """Partial-sum transform: shift_plus(p)(k) = p(0) + ... + p(k).

    Coefficient b_j moves to index j+1 (evaluation on the C(k+1, .) ladder
    collapses back to the C(k, .) basis by Pascal's rule, so the shifted
    polynomial is simply b_j -> index j+1 plus the constant resummation).
    """
    # p+(k) = sum_j b_j C(k+1, j+1) and C(k+1, j+1) = C(k, j+1) + C(k, j).
    c: dict[int, int] = {}
    for j, b in p._c.items():
        c[j + 1] = c.get(j + 1, 0) + b
        c[j] = c.get(j, 0) + b
    return BinPoly(c)


def conv(p: BinPoly, q: BinPoly) -> BinPoly:
    """Cauchy product of the binomial-basis coefficient sequences."""
    c: dict[int, int] = {}
    for j1, b1 in p._c.items():
        for j2, b2 in q._c.items():
            j = j1 + j2
            c[j] = c.get(j, 0) + b1 * b2
    return BinPoly(c)


def to_monomial(p: BinPoly) -> list[Fraction]:
    """Power-basis coefficients [a_0, ..., a_d] as exact rationals.

    Returns [] for the zero polynomial.  The leading coefficient satisfies
    a_d = b_d / d!.
    """
    d = p.degree
    if d is None:
        return []
    out = [Fraction(0)] * (d + 1)
    for j, b in p._c.items():
        # C(k, j) = (1/j!) * k (k-1) ... (k-j+1)
        falling = [1]
        for t in range(j):
            nxt = [0] * (len(falling) + 1)
            for deg, cf in enumerate(falling):
                nxt[deg + 1] += cf
                nxt[deg] += -t * cf
            falling = nxt
        scale = Fraction(b, math.factorial(j))
        for deg, cf in enumerate(falling):
            out[deg] += scale * cf
    return out


def from_monomial(coeffs: Iterable[int | Fraction]) -> BinPoly:
    """Inverse of ``to_monomial``; rejects inputs that are not integer-valued.

    Coefficients are ascending powers.  Uses forward differences at 0:
    b_j is the j-th finite difference of the value sequence.
    """
    a = [Fraction(x) for x in coeffs]
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return ZERO
    d = len(a) - 1
    values = [sum(cf * (k ** deg) for deg, cf in enumerate(a)) for k in range(d + 1)]
    out: dict[int, int] = {}
    for j in range(d + 1):
        if values[0] != 0:
            if values[0].denominator != 1:
                raise ValueError("polynomial is not integer-valued on the integers")
            out[j] = int(values[0])
        values = [values[t + 1] - values[t] for t in range(len(values) - 1)]
    return BinPoly(out)


# -- text and JSON renderings -------------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*
        (?:(?P<num>\d+)\s*(?:\*\s*)?)?          # optional integer factor
        (?:C\(\s*k\s*,\s*(?P<j>\d+)\s*\))?      # optional C(k,j)
        \s*$""",
    re.VERBOSE,
)


def render(p: BinPoly) -> str:
    """Canonical text form, e.g. ``3*C(k,2) - C(k,1) + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for j in sorted(p._c, reverse=True):
        b = p._c[j]
        mag = abs(b)
        if j == 0:
            body = str(mag)
        elif mag == 1:
            body = f"C(k,{j})"
        else:
            body = f"{mag}*C(k,{j})"
        parts.append(("-" if b < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def parse(text: str) -> BinPoly:
    """Parse the canonical text form back into a polynomial."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return ZERO
    chunks = s.replace("-", "+-").split("+")
    c: dict[int, int] = {}
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (m.group("num") is None and m.group("j") is None):
            raise ParseError(f"cannot parse polynomial term: {chunk!r}")
        num = int(m.group("num")) if m.group("num") is not None else 1
        j = int(m.group("j")) if m.group("j") is not None else 0
        c[j] = c.get(j, 0) + sign * num
    return BinPoly(c)


def to_json_dict(p: BinPoly) -> dict:
    return {"binomial": {str(j): b for j, b in sorted(p._c.items(), reverse=True)}}


def from_json_dict(data: dict) -> BinPoly:
    try:
        raw = data["binomial"]
        return BinPoly({int(j): int(b) for j, b in raw.items()})
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad polynomial JSON: {exc}") from exc
