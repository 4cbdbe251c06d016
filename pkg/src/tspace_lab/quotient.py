"""The quotient algebras A_n = k<x>_0 / U_n, where U_n = {x - x^(q^(2n))}^T.

A_n has the monomial basis x, x^2, ..., x^D with D = q^(2n) - 1, and every
monomial reduces by the exponent normal form ``m -> ((m - 1) mod D) + 1``.
Elements are dense vectors of field-element codes, index ``i`` holding the
coefficient of ``x^(i+1)``.

Because the normal form of ``x^(i+j)`` depends only on ``(i + j) mod D``,
multiplication in A_n is a cyclic convolution shifted by one place; the batch
kernels below exploit that and work on ``(S, D)`` arrays of codes so that the
closure engine can push thousands of substitutions through at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .gf import FieldElement, FieldError, FieldSpec, _check_same, tables
from .poly import Poly

# q^(2n) must stay within this bound.
EXPONENT_GUARD = 2 ** 31


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuotCtx:
    field: FieldSpec
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"level n={self.n} must be >= 1")
        if self.field.q ** (2 * self.n) > EXPONENT_GUARD:
            raise OverflowError(f"q^(2n) = {self.field.q}^{2 * self.n} exceeds the exponent guard")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def D(self) -> int:
        return self.field.q ** (2 * self.n) - 1

    @cached_property
    def tab(self):
        return tables(self.field)

    def __repr__(self) -> str:
        return f"A_{self.n}(GF({self.q}), D={self.D})"

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n}

    # element constructors
    def zero(self) -> "QuotElt":
        return QuotElt(self, np.zeros(self.D, dtype=np.int64))

    def monomial(self, m: int, c: Union[int, FieldElement] = 1) -> "QuotElt":
        v = np.zeros(self.D, dtype=np.int64)
        v[nf_exp(m, self) - 1] = self.field.elem(c).code
        return QuotElt(self, v)

    def x(self) -> "QuotElt":
        return self.monomial(1)

    def elt(self, coeffs: Sequence[int]) -> "QuotElt":
        return QuotElt(self, coeffs)

    def random(self, rng: np.random.Generator) -> "QuotElt":
        return QuotElt(self, rng.integers(0, self.q, size=self.D))

    def basis(self) -> list["QuotElt"]:
        return [self.monomial(m) for m in range(1, self.D + 1)]

    def sum_table(self) -> np.ndarray:
        """``T[i-1, j-1] = nf_exp(i + j)`` for 1 <= i, j <= D."""
        i = np.arange(1, self.D + 1)
        return (i[:, None] + i[None, :] - 1) % self.D + 1

    # ---- batch kernels on (S, D) code arrays ------------------------------
    def add_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.field.e == 1:
            return (A + B) % self.p
        return self.tab.add[A, B]

    def sub_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.field.e == 1:
            return (A - B) % self.p
        return self.tab.sub[A, B]

    def scale_rows(self, c, A: np.ndarray) -> np.ndarray:
        """Multiply rows by field codes ``c`` (scalar or broadcastable array)."""
        if self.field.e == 1:
            return (np.asarray(c) * A) % self.p
        return self.tab.mul[c, A]

    def mul_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.atleast_2d(A)
        B = np.atleast_2d(B)
        D, p, e = self.D, self.p, self.field.e
        S = max(A.shape[0], B.shape[0])
        A = np.broadcast_to(A, (S, D))
        B = np.broadcast_to(B, (S, D))
        live = np.flatnonzero(A.any(axis=0))
        if e == 1:
            out = np.zeros((S, D), dtype=np.int64)
            for a in live:
                # x^(a+1) * x^(b+1) lands at index (a + b + 1) mod D
                out += A[:, a : a + 1] * np.roll(B, a + 1, axis=1)
            return out % p
        tab = self.tab
        Ad = tab.digits[A]
        Bd = tab.digits[B]
        out = np.zeros((S, D, e), dtype=np.int64)
        for a in live:
            out += np.einsum("si,scj,ijk->sck", Ad[:, a, :], np.roll(Bd, a + 1, axis=1), tab.red)
        return (out % p) @ tab.radix

    def pow_rows(self, A: np.ndarray, k: int) -> np.ndarray:
        if k < 1:
            raise ValueError("A_n has no unit; powers start at 1")
        result = None
        base = A
        while k:
            if k & 1:
                result = base if result is None else self.mul_rows(result, base)
            k >>= 1
            if k:
                base = self.mul_rows(base, base)
        return result

    def compose_rows(self, f: np.ndarray, G: np.ndarray) -> np.ndarray:
        """``f(g)`` for every row ``g`` of ``G``; ``f`` is a single code vector."""
        G = np.atleast_2d(G)
        support = np.flatnonzero(f)
        acc = np.zeros_like(G)
        if support.size == 0:
            return acc
        power, at = G, 1
        for idx in support:
            m = int(idx) + 1
            while at < m:
                power = self.mul_rows(power, G)
                at += 1
            acc = self.add_rows(acc, self.scale_rows(int(f[idx]), power))
        return acc

    def frobenius_perm(self, k: int) -> np.ndarray:
        """Index map realizing ``u -> u^(q^k)``: coefficient at index i moves to ``perm[i]``."""
        m = np.arange(1, self.D + 1, dtype=np.int64)
        return (m * pow(self.q, k, self.D) - 1) % self.D


@lru_cache(maxsize=None)
def quot_ctx(field: FieldSpec, n: int) -> QuotCtx:
    return QuotCtx(field, n)


class QuotElt:
    """An element of A_n as a dense vector of coefficient codes."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: QuotCtx, coeffs: Iterable[int]):
        arr = np.array(coeffs, dtype=np.int64).reshape(-1)
        if arr.shape[0] != ctx.D:
            raise ValueError(f"expected {ctx.D} coefficients, got {arr.shape[0]}")
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.q):
            raise FieldError("coefficient code out of range")
        arr.setflags(write=False)
        self.ctx = ctx
        self.coeffs = arr

    def _same(self, other: "QuotElt") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"context mismatch: {self.ctx!r} vs {other.ctx!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotElt):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs.tobytes()))

    def __bool__(self) -> bool:
        return bool(self.coeffs.any())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def support(self) -> list[int]:
        """Exponents with nonzero coefficient."""
        return [int(i) + 1 for i in np.flatnonzero(self.coeffs)]

    def coeff(self, m: int) -> FieldElement:
        return self.ctx.field.from_code(int(self.coeffs[nf_exp(m, self.ctx) - 1]))

    def __add__(self, other: "QuotElt") -> "QuotElt":
        self._same(other)
        return QuotElt(self.ctx, self.ctx.add_rows(self.coeffs, other.coeffs))

    def __sub__(self, other: "QuotElt") -> "QuotElt":
        self._same(other)
        return QuotElt(self.ctx, self.ctx.sub_rows(self.coeffs, other.coeffs))

    def __neg__(self) -> "QuotElt":
        return QuotElt(self.ctx, self.ctx.sub_rows(np.zeros_like(self.coeffs), self.coeffs))

    def __mul__(self, other):
        if isinstance(other, QuotElt):
            return q_mul(self, other)
        if isinstance(other, (int, np.integer, FieldElement)):
            c = self.ctx.field.elem(other).code
            return QuotElt(self.ctx, self.ctx.scale_rows(c, self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer, FieldElement)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "QuotElt":
        return QuotElt(self.ctx, self.ctx.pow_rows(self.coeffs[None, :], k)[0])

    def __call__(self, g: "QuotElt") -> "QuotElt":
        return q_compose(self, g)

    def to_poly(self) -> Poly:
        """The representative of degree at most D."""
        F = self.ctx.field
        return Poly(F, [(m, F.from_code(int(self.coeffs[m - 1]))) for m in self.support()])

    def __repr__(self) -> str:
        return f"QuotElt[{self.ctx!r}]({self.to_poly()})"

    def __str__(self) -> str:
        return str(self.to_poly())

    def to_json(self) -> dict:
        return {"ctx": self.ctx.to_json(), "coeffs": [int(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx: QuotCtx, data) -> "QuotElt":
        coeffs = data["coeffs"] if isinstance(data, dict) else data
        return cls(ctx, coeffs)


def nf_exp(m: int, ctx: QuotCtx) -> int:
    """Normal form of the exponent of ``x^m`` in A_n, in ``1..D``."""
    if m < 1:
        raise ValueError(f"exponent {m} < 1")
    return (m - 1) % ctx.D + 1


def project(f: Poly, ctx: QuotCtx) -> QuotElt:
    _check_same(f.field, ctx.field)
    acc = [ctx.field.zero] * ctx.D
    for m, c in f.items():
        i = nf_exp(m, ctx) - 1
        acc[i] = acc[i] + c
    return QuotElt(ctx, [c.code for c in acc])


def q_mul(a: QuotElt, b: QuotElt) -> QuotElt:
    a._same(b)
    return QuotElt(a.ctx, a.ctx.mul_rows(a.coeffs[None, :], b.coeffs[None, :])[0])


def q_compose(f: QuotElt, g: QuotElt) -> QuotElt:
    """``f(g)`` in A_n; well defined because U_n is a T-ideal."""
    f._same(g)
    return QuotElt(f.ctx, f.ctx.compose_rows(f.coeffs, g.coeffs[None, :])[0])


def as_quot(h: Union[Poly, QuotElt], ctx: QuotCtx) -> QuotElt:
    if isinstance(h, QuotElt):
        if h.ctx != ctx:
            raise ContextMismatch(f"context mismatch: {h.ctx!r} vs {ctx!r}")
        return h
    return project(h, ctx)
