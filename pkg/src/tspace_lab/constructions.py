"""Explicit generating sets and bases attached to the T-spaces W_n.

With Q = q^n:

* W_n is generated as a T-space by ``x + x^Q`` and ``x^(Q+1)``;
* U_n has the linear basis ``(x^(Q^2) - x) x^i``, i >= 0;
* ``F(i, j) = x^(iQ+j) + x^(i+jQ)`` for i != j and ``F(i, i) = (x^(Q+1))^i``;
* E_n collects F(i, j) for Q > i >= j >= 0, i + j > 0, and spans a complement
  V_n of U_n inside W_n;
* Y_n is the monomial set ``x^(i+Qj)``, Q > i > j >= 0, spanning a complement
  of W_n, and B1[r] is its degree-class-r slice for n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Union

from .gf import FieldSpec, field_of_order
from .poly import MAX_EXPONENT, Poly
from .quotient import EXPONENT_GUARD

FieldLike = Union[int, FieldSpec]


def _field(q: FieldLike) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


def _big_q(F: FieldSpec, n: int) -> int:
    if n < 1:
        raise ValueError(f"level n={n} must be >= 1")
    if F.q ** (2 * n) > EXPONENT_GUARD:
        raise OverflowError(f"q^(2n) = {F.q}^{2 * n} exceeds the exponent guard")
    return F.q ** n


@dataclass(frozen=True, order=True)
class FPair:
    i: int
    j: int

    def __post_init__(self):
        if not (self.i >= self.j >= 0 and self.i + self.j > 0):
            raise ValueError(f"invalid pair F({self.i},{self.j}): need i >= j >= 0 and i + j > 0")

    def in_range(self, Q: int) -> bool:
        return self.i < Q

    def exponents(self, Q: int) -> tuple[int, ...]:
        if self.i == self.j:
            return ((Q + 1) * self.i,)
        return (self.i * Q + self.j, self.i + self.j * Q)

    def poly(self, q: FieldLike, n: int) -> Poly:
        F = _field(q)
        Q = F.q ** n
        return Poly(F, [(m, 1) for m in self.exponents(Q)])


def F_elem(q: FieldLike, n: int, i: int, j: int) -> Poly:
    """F(i, j) for either order of the arguments."""
    return FPair(max(i, j), min(i, j)).poly(q, n)


def wn_generators(q: FieldLike, n: int) -> list[Poly]:
    F = _field(q)
    Q = _big_q(F, n)
    return [Poly(F, [(1, 1), (Q, 1)]), Poly.monomial(F, Q + 1)]


def un_basis(q: FieldLike, n: int, count: int) -> list[Poly]:
    if count < 1:
        raise ValueError("count must be >= 1")
    F = _field(q)
    Q = _big_q(F, n)
    QQ = Q * Q
    if QQ + count - 1 > MAX_EXPONENT:
        raise OverflowError("exponent out of range")
    return [Poly(F, [(QQ + i, 1), (1 + i, -1)]) for i in range(count)]


def en_pairs(q: int, n: int) -> list[FPair]:
    Q = q ** n
    off = [FPair(i, j) for i in range(1, Q) for j in range(i)]
    diag = [FPair(i, i) for i in range(1, Q)]
    return off + diag


def en_set(q: FieldLike, n: int) -> list[Poly]:
    F = _field(q)
    _big_q(F, n)
    return [pr.poly(F, n) for pr in en_pairs(F.q, n)]


def en_size(q: int, n: int) -> int:
    Q = q ** n
    return comb(Q, 2) + Q - 1


def yn_exponents(q: int, n: int) -> list[int]:
    Q = q ** n
    return [i + Q * j for i in range(1, Q) for j in range(i)]


def yn_set(q: FieldLike, n: int) -> list[Poly]:
    F = _field(q)
    _big_q(F, n)
    return [Poly.monomial(F, m) for m in yn_exponents(F.q, n)]


def b1r_ts(q: int, r: int) -> list[int]:
    """The t with 0 <= t < r/2 or r+1 <= t < (q+r+1)/2."""
    if not 1 <= r <= q - 1:
        raise ValueError(f"class r={r} outside 1..{q - 1}")
    low = [t for t in range(q) if 2 * t < r]
    high = [t for t in range(r + 1, q + r + 1) if 2 * t < q + r + 1]
    return low + high


def b1r_set(q: FieldLike, r: int) -> list[Poly]:
    F = _field(q)
    return [Poly.monomial(F, r + t * (F.q - 1)) for t in b1r_ts(F.q, r)]


def f_reduce(pair: FPair, q: int, n: int) -> tuple[FPair, int]:
    """Rewrite F(i, j) modulo U_n until both indices are below Q = q^n.

    Returns ``(pair', c)`` with ``F(i, j) = c * F(pair')`` in A_n.  The
    rewriting steps are

    * F(i, i) -> F(t+1, t+1) where i = t + Q;
    * F(i, j) -> F(t+1, r+1) where i = t + Q, j = r + Q;
    * F(i, j) -> F(t, j+1) where i = t + Q and j < Q, with the corner
      F(0, Q) -> F(1, 0) when t = 0 and j + 1 = Q.

    In the third step ``t == j + 1`` can occur (e.g. F(3, 0) for Q = 2); then
    ``x^(tQ+j+1) + x^(t+(j+1)Q)`` is twice F(t, t), so ``c`` picks up a
    factor 2, which vanishes in characteristic 2.
    """
    Q = q ** n
    i, j = pair.i, pair.j
    scale = 1
    while i >= Q:
        t = i - Q
        if i == j:
            i = j = t + 1
        elif j >= Q:
            i, j = t + 1, j - Q + 1
        else:
            a, b = t, j + 1
            if a == b:
                i = j = a
                scale *= 2
            elif a < b == i:
                # only i = Q, j = Q - 1: F(0, Q) = x^Q + x^(Q^2) = F(1, 0) mod U_n
                i, j = 1, 0
            else:
                i, j = max(a, b), min(a, b)
    return FPair(i, j), scale
