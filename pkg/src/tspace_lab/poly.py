"""Polynomials without constant term over GF(q).

A :class:`Poly` is an element of the one-generator free algebra k<x>_0, which
is commutative, so it is an ordinary polynomial with zero constant term.
Substituting ``x -> g`` (:func:`p_compose`) is the general algebra
endomorphism of k<x>_0.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

from .gf import FieldElement, FieldError, FieldSpec, _check_same

# Exponents are kept within signed 64-bit range.
MAX_EXPONENT = 2 ** 63 - 1

Scalar = Union[int, FieldElement]


class Poly:
    """Sparse polynomial ``sum(c * x**m)`` with every exponent ``m >= 1``."""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: FieldSpec, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, FieldElement] = {}
        for m, c in items:
            m = int(m)
            if m < 1:
                raise ValueError(f"exponent {m} < 1: k<x>_0 has no constant term")
            if m > MAX_EXPONENT:
                raise OverflowError(f"exponent {m} exceeds 64-bit range")
            c = field.elem(c)
            acc[m] = acc[m] + c if m in acc else c
        self.field = field
        self._terms = tuple(sorted((m, c) for m, c in acc.items() if c))
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls(field)

    @classmethod
    def monomial(cls, field: FieldSpec, m: int, c: Scalar = 1) -> "Poly":
        return cls(field, [(m, c)])

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls.monomial(field, 1)

    @property
    def terms(self) -> dict[int, FieldElement]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def exponents(self) -> list[int]:
        return [m for m, _ in self._terms]

    def coeff(self, m: int) -> FieldElement:
        for k, c in self._terms:
            if k == m:
                return c
        return self.field.zero

    @property
    def degree(self) -> int:
        """Degree, or 0 for the zero polynomial."""
        return self._terms[-1][0] if self._terms else 0

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self._terms))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms:
            mono = "x" if m == 1 else f"x^{m}"
            if c == self.field.one:
                parts.append(mono)
            elif self.field.e == 1:
                parts.append(f"{c}{mono}")
            else:
                parts.append(f"({c}){mono}")
        return " + ".join(parts)

    # arithmetic
    def _same(self, other: "Poly") -> None:
        _check_same(self.field, other.field)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._same(other)
        return Poly(self.field, list(self._terms) + list(other._terms))

    def __neg__(self) -> "Poly":
        return Poly(self.field, [(m, -c) for m, c in self._terms])

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return p_mul(self, other)
        if isinstance(other, (int, FieldElement)):
            c = self.field.elem(other)
            return Poly(self.field, [(m, a * c) for m, a in self._terms])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 1:
            raise ValueError("k<x>_0 has no unit; powers start at 1")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else p_mul(result, base)
            k >>= 1
            if k:
                base = p_mul(base, base)
        return result

    def __call__(self, g: "Poly") -> "Poly":
        return p_compose(self, g)

    # serialization
    def to_json(self) -> dict:
        return {"terms": {str(m): list(c.coeffs) for m, c in self._terms}}

    @classmethod
    def from_json(cls, field: FieldSpec, data: Mapping) -> "Poly":
        terms = data["terms"] if "terms" in data else data
        return cls(field, [(int(m), field.elem(c)) for m, c in terms.items()])


def p_mul(f: Poly, g: Poly) -> Poly:
    f._same(g)
    acc: dict[int, FieldElement] = {}
    for a, ca in f.items():
        for b, cb in g.items():
            m = a + b
            v = ca * cb
            acc[m] = acc[m] + v if m in acc else v
    return Poly(f.field, acc)


def p_compose(f: Poly, g: Poly) -> Poly:
    """``f(g)``: substitute ``x -> g``; ``g = 0`` is the zero endomorphism."""
    f._same(g)
    if not g or not f:
        return Poly.zero(f.field)
    acc: list[tuple[int, FieldElement]] = []
    power, at = g, 1
    for m, c in f.items():
        if m > at:
            power = p_mul(power, g ** (m - at))
            at = m
        acc.extend((k, c * v) for k, v in power.items())
    return Poly(f.field, acc)


def q_class(d: int, q: int) -> int:
    """The label r in 1..q-1 with d = r mod (q-1)."""
    if d < 1:
        raise ValueError(f"degree {d} < 1 has no q-homogeneity class")
    if q < 2:
        raise ValueError("q must be at least 2")
    return (d - 1) % (q - 1) + 1


def q_components(f: Poly, q: int | None = None) -> dict[int, Poly]:
    """Split ``f`` into its q-homogeneous components, keyed by class label."""
    q = f.field.q if q is None else q
    parts: dict[int, list] = {}
    for m, c in f.items():
        parts.setdefault(q_class(m, q), []).append((m, c))
    return {r: Poly(f.field, parts[r]) for r in sorted(parts)}


_TERM = re.compile(r"^(\d*)\*?(?:x(?:\^(\d+))?)$")


def parse_poly(field: FieldSpec, text: str) -> Poly:
    """Parse strings like ``"x + 2x^3 - x^5"``; coefficients lie in the prime subfield."""
    s = text.replace(" ", "").replace("**", "^")
    if s in ("", "0"):
        return Poly.zero(field)
    if s[0] not in "+-":
        s = "+" + s
    terms = []
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        mt = _TERM.match(body)
        if not mt:
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        coef = int(mt.group(1)) if mt.group(1) else 1
        exp = int(mt.group(2)) if mt.group(2) else 1
        terms.append((exp, -coef if sign == "-" else coef))
    if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
        raise ValueError(f"cannot parse {text!r}")
    return Poly(field, terms)


__all__ = [
    "FieldError",
    "Poly",
    "p_compose",
    "p_mul",
    "parse_poly",
    "q_class",
    "q_components",
]
