"""Arithmetic in small finite fields GF(p^e).

Elements use the polynomial basis over GF(p): an element is a coefficient
vector ``(c_0, ..., c_{e-1})`` standing for ``c_0 + c_1 w + ... + c_{e-1} w^{e-1}``
where ``w`` is a root of the field's defining modulus.  Every element also has
an integer *code* ``sum(c_k * p**k)`` in ``range(q)``; the quotient-algebra
kernels work on codes through the lookup tables returned by :func:`tables`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

MAX_ORDER = 2 ** 16
MAX_DEGREE = 8
# Dense q x q lookup tables are only built for fields up to this order.
MAX_TABLE_ORDER = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for k in range(dm + 1):
            a[shift + k] = (a[shift + k] - lead * m[k]) % p
        _trim(a)
    return a


def _irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d == 1:
        return True
    if m[0] % p == 0:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _pmod(m, list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^e) defined by a monic irreducible ``modulus`` (low degree first)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def elem(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        """Coerce ``value`` into the field.

        Integers are taken as elements of the prime subfield (reduced mod p);
        sequences are polynomial-basis coordinates.
        """
        if isinstance(value, FieldElement):
            _check_same(self, value.field)
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.e - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.e:
            raise FieldError(f"expected {self.e} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} outside GF({self.q})")
        coords = []
        for _ in range(self.e):
            code, c = divmod(code, self.p)
            coords.append(c)
        return FieldElement(self, tuple(coords))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.e)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements in code order (zero first)."""
        for code in range(self.q):
            yield self.from_code(code)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        spec = field_make(int(data["p"]), int(data["e"]))
        if list(spec.modulus) != [int(c) for c in data["modulus"]]:
            raise FieldError(f"unexpected modulus {data['modulus']} for GF({spec.q})")
        return spec


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        p = self.field.p
        code = 0
        for c in reversed(self.coeffs):
            code = code * p + c
        return code

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        if self.field.e == 1:
            return str(self.coeffs[0])
        terms = [f"{c}" if k == 0 else f"{c}w^{k}" for k, c in enumerate(self.coeffs) if c]
        return "+".join(terms) or "0"

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            _check_same(self.field, other.field)
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.elem(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return f_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return f_mul(self, f_inv(other))

    def __pow__(self, m: int):
        return f_pow(self, m)


def _check_same(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldError(f"field mismatch: {a!r} vs {b!r}")


def field_make(p: int, e: int = 1) -> FieldSpec:
    """Return GF(p^e) with the lexicographically least monic irreducible modulus.

    Candidate moduli are compared as coefficient tuples, low degree first.

    >>> field_make(2, 2).modulus
    (1, 1, 1)
    """
    return _field_make(int(p), int(e))


@lru_cache(maxsize=None)
def _field_make(p: int, e: int) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise FieldError(f"extension degree {e} outside 1..{MAX_DEGREE}")
    if p ** e > MAX_ORDER:
        raise FieldError(f"field too large: {p}^{e} > {MAX_ORDER}")
    if e == 1:
        return FieldSpec(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=e):
        m = list(low) + [1]
        if _irreducible(m, p):
            return FieldSpec(p, e, tuple(m))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_of_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return field_make(p, e)


def f_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a.field, b.field)
    F = a.field
    p, e = F.p, F.e
    if e == 1:
        return FieldElement(F, ((a.coeffs[0] * b.coeffs[0]) % p,))
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] += x * y
    red = _pmod(prod, F.modulus, p)
    return FieldElement(F, tuple(red) + (0,) * (e - len(red)))


def f_pow(a: FieldElement, m: int) -> FieldElement:
    """``a**m`` by square-and-multiply; ``0**0`` is taken to be 1."""
    if m < 0:
        return f_pow(f_inv(a), -m)
    result = a.field.one
    base = a
    while m:
        if m & 1:
            result = f_mul(result, base)
        base = f_mul(base, base)
        m >>= 1
    return result


def f_inv(a: FieldElement) -> FieldElement:
    if not a:
        raise ZeroDivisionError("zero has no inverse")
    # a^(q-2) = a^-1 in the multiplicative group of order q-1
    return f_pow(a, a.field.q - 2)


@dataclass(frozen=True)
class FieldTables:
    """Code-indexed lookup tables for vectorized arithmetic."""

    p: int
    e: int
    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention
    digits: np.ndarray  # (q, e) coordinates of each code
    radix: np.ndarray  # (e,) powers of p
    # red[i, j, k]: coefficient of w^k in w^(i+j) reduced by the modulus
    red: np.ndarray


@lru_cache(maxsize=None)
def tables(field: FieldSpec) -> FieldTables:
    q, p, e = field.q, field.p, field.e
    if q > MAX_TABLE_ORDER:
        raise FieldError(f"lookup tables unavailable for GF({q})")
    elems = list(field.elements())
    digits = np.array([x.coeffs for x in elems], dtype=np.int64).reshape(q, e)
    radix = p ** np.arange(e, dtype=np.int64)
    add = (digits[:, None, :] + digits[None, :, :]) % p @ radix
    sub = (digits[:, None, :] - digits[None, :, :]) % p @ radix
    mul = np.array([[f_mul(a, b).code for b in elems] for a in elems], dtype=np.int64)
    neg = sub[0].copy()
    inv = np.zeros(q, dtype=np.int64)
    for a in elems[1:]:
        inv[a.code] = f_inv(a).code
    red = np.zeros((e, e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            mono = [0] * (i + j) + [1]
            r = _pmod(mono, field.modulus, p)
            red[i, j, : len(r)] = r
    arrays = (add, sub, mul, neg, inv, digits, radix, red)
    for arr in arrays:
        arr.setflags(write=False)
    return FieldTables(p, e, q, *arrays)


def all_prime_powers(limit: int) -> Iterable[int]:
    for q in range(2, limit + 1):
        try:
            field_of_order(q)
        except FieldError:
            continue
        yield q
