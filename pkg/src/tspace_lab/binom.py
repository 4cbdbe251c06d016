"""Binomial coefficients modulo p via base-p digits.

``C(M, N) = prod C(M_k, N_k) (mod p)`` over the base-p digits of M and N.
For a power q of p this gives ``C(tq + r, jq + i) = C(t, j) C(r, i)`` for
single q-digits, and :func:`special_case` evaluates the resulting closed forms
for ``C(r + t(q-1), 1 + j(q-1))`` and ``C(r + t(q-1), r-1 + j(q-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .gf import is_prime


@dataclass(frozen=True)
class DigitVector:
    base: int
    digits: tuple[int, ...]  # little-endian

    @classmethod
    def of(cls, value: int, base: int) -> "DigitVector":
        if value < 0:
            raise ValueError("negative value")
        if base < 2:
            raise ValueError("base must be >= 2")
        out = []
        while value:
            value, d = divmod(value, base)
            out.append(d)
        return cls(base, tuple(out))

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def digit(self, k: int) -> int:
        return self.digits[k] if k < len(self.digits) else 0


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def binom_mod_p(M: int, N: int, p: int) -> int:
    """``C(M, N) mod p`` as a product of digit binomials."""
    _check_prime(p)
    if M < 0 or N < 0:
        raise ValueError("M and N must be nonnegative")
    if N > M:
        return 0
    result = 1
    while N:
        M, m = divmod(M, p)
        N, k = divmod(N, p)
        if k > m:
            return 0
        result = result * comb(m, k) % p
    return result % p


def prime_of(q: int) -> int:
    """The characteristic of a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            r = q
            while r % p == 0:
                r //= p
            if r != 1:
                break
            return p
    raise ValueError(f"{q} is not a prime power")


def fines_app(t: int, r: int, j: int, i: int, q: int) -> int:
    """``C(tq + r, jq + i) = C(t, j) C(r, i) (mod p)`` for digits below q."""
    p = prime_of(q)
    if not all(0 <= v < q for v in (t, r, j, i)):
        raise ValueError(f"digits must lie in [0, {q})")
    return binom_mod_p(t, j, p) * binom_mod_p(r, i, p) % p


def special_ranges(case: str, r: int, q: int) -> list[int]:
    """Admissible t for a case and class r (empty if r itself is out of range)."""
    lo_r = 1 if case in ("I", "II") else 2
    if not lo_r <= r <= q - 1:
        return []
    if case == "I":
        return [t for t in range(0, r + 1) if 2 * t <= r]
    if case == "III":
        return [t for t in range(0, r + 1) if 2 * t < r]
    return [t for t in range(r + 1, q + r + 1) if 2 * t < q + r + 1]


def special_binomial(case: str, r: int, t: int, j: int, q: int) -> tuple[int, int]:
    """The binomial ``(M, N)`` a case is about."""
    if case in ("I", "II"):
        return r + t * (q - 1), 1 + j * (q - 1)
    return r + t * (q - 1), r - 1 + j * (q - 1)


def special_case(case: str, r: int, t: int, j: int, q: int) -> int:
    """Closed form of the case-(I..IV) binomial, reduced into [0, p)."""
    if case not in ("I", "II", "III", "IV"):
        raise ValueError(f"unknown case {case!r}")
    p = prime_of(q)
    if t not in special_ranges(case, r, q) or not 0 <= j <= t:
        raise ValueError(f"precondition violated: case {case}, q={q}, r={r}, t={t}, j={j}")
    if case == "I":
        val = 0 if j > 1 else (t if j == 1 else r - t)
    elif case == "II":
        if j > 1:
            val = binom_mod_p(t - 1, j - 1, p) * binom_mod_p(q + r - t, q + 1 - j, p)
        else:
            val = t - 1 if j == 1 else r - t
    elif case == "III":
        val = 0 if j < t - 1 else (t if j == t - 1 else r - t)
    else:
        if j <= r - 1:
            val = binom_mod_p(t - 1, j, p) * binom_mod_p(q + r - t, r - 1 - j, p)
        elif j < t - 1:
            val = 0
        else:
            val = t - 1 if j == t - 1 else r - t
    return val % p


def special_domain(case: str, q: int):
    """Every admissible ``(r, t, j)`` for a case, in lexicographic order."""
    for r in range(1, q):
        for t in special_ranges(case, r, q):
            for j in range(t + 1):
                yield r, t, j


def symmetry_sides(t: int, r: int, p: int) -> tuple[int, int]:
    """Both sides of ``(-1)^(t+1) C(r, t+1) (-1)(t+1) = (-1)^t C(r, t)(r - t)`` mod p."""
    lhs = (-1) ** (t + 1) * comb(r, t + 1) * (-1) * (t + 1)
    rhs = (-1) ** t * comb(r, t) * (r - t)
    return lhs % p, rhs % p
