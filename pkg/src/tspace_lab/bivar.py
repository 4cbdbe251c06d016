"""Commutative two-variable computations in k[x, y]_0.

These reproduce the steps that turn a class-r element f of Y_1 into a smaller
witness: expand ``f(x + y)``, keep one bidegree class, move q-th powers from
y onto x (``u v^q = -u^q v`` modulo W_1), and send ``y -> x^(q^2-1)``, which
acts as the identity modulo U_1.

Degree classes of a bidegree use label 0 for degree 0, so that a class such as
"x^(r-1) y" excludes terms that are pure powers of x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from .binom import binom_mod_p
from .constructions import b1r_ts, en_set
from .gf import FieldElement, FieldSpec, _check_same, field_of_order
from .poly import Poly, q_class
from .quotient import QuotCtx, QuotElt, project, quot_ctx
from .subspace import EchelonBasis, RowReducer, sp_contains
from .tclosure import ClosureError, ClosureStrategy, s_closure

Scalar = Union[int, FieldElement]


class BiPoly:
    """Sparse commutative polynomial in x, y without constant term."""

    __slots__ = ("field", "_terms")

    def __init__(self, field: FieldSpec, terms: Mapping[tuple[int, int], Scalar] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], FieldElement] = {}
        for (a, b), c in items:
            a, b = int(a), int(b)
            if a < 0 or b < 0 or a + b < 1:
                raise ValueError(f"bad bidegree ({a}, {b})")
            c = field.elem(c)
            acc[(a, b)] = acc[(a, b)] + c if (a, b) in acc else c
        self.field = field
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))

    @classmethod
    def from_x(cls, f: Poly) -> "BiPoly":
        return cls(f.field, [((m, 0), c) for m, c in f.items()])

    @classmethod
    def from_y(cls, f: Poly) -> "BiPoly":
        return cls(f.field, [((0, m), c) for m, c in f.items()])

    @property
    def terms(self) -> dict[tuple[int, int], FieldElement]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.field, self._terms))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        _check_same(self.field, other.field)
        return BiPoly(self.field, list(self._terms) + list(other._terms))

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, [(k, -c) for k, c in self._terms])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            _check_same(self.field, other.field)
            acc = []
            for (a, b), c in self._terms:
                for (a2, b2), c2 in other._terms:
                    acc.append(((a + a2, b + b2), c * c2))
            return BiPoly(self.field, acc)
        if isinstance(other, (int, FieldElement)):
            return BiPoly(self.field, [(k, c * other) for k, c in self._terms])
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"

        def mono(a, b):
            xs = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
            ys = "" if b == 0 else ("y" if b == 1 else f"y^{b}")
            return xs + ys

        one = self.field.one
        return " + ".join(mono(a, b) if c == one else f"{c}{mono(a, b)}" for (a, b), c in self._terms)

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def to_json(self) -> dict:
        return {"terms": {f"{a},{b}": list(c.coeffs) for (a, b), c in self._terms}}


def bi_expand_sum(f: Poly) -> BiPoly:
    """``f(x + y)`` expanded with binomial coefficients reduced mod p."""
    F = f.field
    p = F.p
    acc = []
    for m, c in f.items():
        for k in range(m + 1):
            b = binom_mod_p(m, k, p)
            if b:
                acc.append(((k, m - k), c * b))
    return BiPoly(F, acc)


def degree_label(d: int, q: int) -> int:
    return 0 if d == 0 else q_class(d, q)


def bi_component(G: BiPoly, rx: int, ry: int, q: Optional[int] = None) -> BiPoly:
    q = G.field.q if q is None else q
    return BiPoly(
        G.field,
        [((a, b), c) for (a, b), c in G.items() if degree_label(a, q) == rx and degree_label(b, q) == ry],
    )


def bi_components(G: BiPoly, q: Optional[int] = None) -> dict[tuple[int, int], BiPoly]:
    q = G.field.q if q is None else q
    keys = sorted({(degree_label(a, q), degree_label(b, q)) for (a, b), _ in G.items()})
    return {k: bi_component(G, k[0], k[1], q) for k in keys}


def collapse_y(G: BiPoly, ctx: QuotCtx) -> QuotElt:
    """Send ``y -> x^(q^2 - 1)`` and project into A_1."""
    if ctx.n != 1:
        raise ValueError("collapse_y is defined on A_1 only")
    _check_same(G.field, ctx.field)
    D = ctx.D
    return project(Poly(G.field, [(a + b * D, c) for (a, b), c in G.items()]), ctx)


def flip_q_powers(G: BiPoly) -> BiPoly:
    """Rewrite each ``x^a y^(bq)`` as ``-x^(aq) y^b`` (valid modulo W_1 when a >= 1)."""
    q = G.field.q
    acc = []
    for (a, b), c in G.items():
        if a >= 1 and b >= q and b % q == 0:
            acc.append(((a * q, b // q), -c))
        else:
            acc.append(((a, b), c))
    return BiPoly(G.field, acc)


# ---- the g element ----------------------------------------------------------

def class_element(F: FieldSpec, r: int, alphas: Mapping[int, Scalar]) -> Poly:
    """``sum alpha_t x^(r + t(q-1))`` over the B1[r] indices t."""
    allowed = set(b1r_ts(F.q, r))
    for t in alphas:
        if t not in allowed:
            raise ValueError(f"index t={t} outside the class-{r} range {sorted(allowed)}")
    return Poly(F, [(r + t * (F.q - 1), a) for t, a in alphas.items()])


def g_of(alphas: Mapping[int, Scalar], r: int, q: Union[int, FieldSpec]) -> BiPoly:
    """The bidegree-class component of ``f(x+y)`` used for class r, by direct expansion.

    For r = 1 this is the (1, q-1) component of ``f(x+y) - f(x)``; for r >= 2
    the (r-1, 1) component of ``f(x+y)``.
    """
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    f = class_element(F, r, alphas)
    if r == 1:
        return bi_component(bi_expand_sum(f) - BiPoly.from_x(f), 1, F.q - 1)
    return bi_component(bi_expand_sum(f), r - 1, 1)


def g_closed_form(alphas: Mapping[int, Scalar], r: int, q: Union[int, FieldSpec]) -> BiPoly:
    """The same component from its simplified digit-binomial formula."""
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    q = F.q
    p = F.p
    al = {t: F.elem(a) for t, a in alphas.items()}
    class_element(F, r, al)  # range check
    terms: list = []
    if r == 1:
        for t, a in al.items():
            if t >= 2:
                terms.append(((1, t * (q - 1)), a * (1 - t)))
                terms.append(((q, (t - 1) * (q - 1)), a * (t - 1)))
        return BiPoly(F, terms)
    high = [t for t in b1r_ts(q, r) if t >= r + 1]
    for t, a in al.items():
        if t == 0:
            terms.append(((r - 1, 1), a * r))
        elif 2 * t < r:
            terms.append(((r - 1 + (t - 1) * (q - 1), q), a * t))
            terms.append(((r - 1 + t * (q - 1), 1), a * (r - t)))
    for t in high:
        a = al.get(t)
        if a is None:
            continue
        for j in range(r):
            c = binom_mod_p(t - 1, j, p) * binom_mod_p(q + r - t, r - 1 - j, p)
            terms.append(((r - 1 + j * (q - 1), 1 + (t - j) * (q - 1)), a * c))
        terms.append(((r - 1 + (t - 1) * (q - 1), q), a * (t - 1)))
        terms.append(((r - 1 + t * (q - 1), 1), a * (r - t)))
    return BiPoly(F, terms)


def check_g_formula(q: Union[int, FieldSpec], r: int, alphas: Mapping[int, Scalar]) -> bool:
    return g_of(alphas, r, q) == g_closed_form(alphas, r, q)


def random_alphas(F: FieldSpec, r: int, rng: np.random.Generator) -> dict[int, FieldElement]:
    return {t: F.from_code(int(rng.integers(0, F.q))) for t in b1r_ts(F.q, r)}


# ---- the h element ------------------------------------------------------------

def binomial_f(F: FieldSpec, r: int) -> Poly:
    """``sum_{0 <= t <= (r-1)/2} (-1)^t C(r, t) x^(r + t(q-1))``."""
    p, q = F.p, F.q
    return Poly(
        F,
        [(r + t * (q - 1), (-1) ** t * binom_mod_p(r, t, p)) for t in range((r - 1) // 2 + 1)],
    )


def _check_h_args(F: FieldSpec, r: int) -> None:
    if r % 2 == 0 or not 3 <= r <= F.q - 2:
        raise ValueError(f"need odd r with 3 <= r <= q-2, got r={r} for q={F.q}")


def h_of_binomial_f(q: Union[int, FieldSpec], r: int, ctx: Optional[QuotCtx] = None) -> QuotElt:
    """h in A_1: expand, take the (r-1, 1) class, flip q-th powers off y, collapse y."""
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    _check_h_args(F, r)
    ctx = quot_ctx(F, 1) if ctx is None else ctx
    if ctx.n != 1 or ctx.field != F:
        raise ValueError("h lives in A_1 over the same field")
    f = binomial_f(F, r)
    g = bi_component(bi_expand_sum(f), r - 1, 1)
    return collapse_y(flip_q_powers(g), ctx)


def h_expanded_form(q: Union[int, FieldSpec], r: int, ctx: Optional[QuotCtx] = None) -> QuotElt:
    """``r x^(r-1) + sum_{1<=t<=(r-1)/2} (-1)^t C(r,t) (-t x^(q(r-t)+t-1) + (r-t) x^(r-1+t(q-1)))``."""
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    _check_h_args(F, r)
    ctx = quot_ctx(F, 1) if ctx is None else ctx
    qq, p = F.q, F.p
    terms = [(r - 1, r)]
    for t in range(1, (r - 1) // 2 + 1):
        c = (-1) ** t * binom_mod_p(r, t, p)
        terms.append((qq * (r - t) + t - 1, -c * t))
        terms.append((r - 1 + t * (qq - 1), c * (r - t)))
    return project(Poly(F, terms), ctx)


def h_closed_form(q: Union[int, FieldSpec], r: int, ctx: Optional[QuotCtx] = None) -> QuotElt:
    """``sum_{t<=(r-3)/2} (-1)^t C(r,t)(r-t) F(r-t-1, t) + c (x^(q+1))^((r-1)/2)``.

    Here ``c = (-1)^k C(r, k)(r - k)`` with ``k = (r-1)/2``, the coefficient
    the expanded form actually produces on ``x^(k(q+1))``; see :func:`beta`
    for the variant with factor ``k`` in place of ``r - k``.
    """
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    _check_h_args(F, r)
    ctx = quot_ctx(F, 1) if ctx is None else ctx
    qq, p = F.q, F.p
    terms = []
    for t in range((r - 3) // 2 + 1):
        c = (-1) ** t * binom_mod_p(r, t, p) * (r - t)
        terms.append((qq * (r - t - 1) + t, c))
        terms.append((qq * t + r - t - 1, c))
    terms.append(((qq + 1) * (r - 1) // 2, diagonal_coefficient(F, r)))
    return project(Poly(F, terms), ctx)


def beta(F: FieldSpec, r: int) -> int:
    """``(-1)^k C(r, k) k mod p`` with ``k = (r-1)/2``."""
    k = (r - 1) // 2
    return (-1) ** k * binom_mod_p(r, k, F.p) * k % F.p


def diagonal_coefficient(F: FieldSpec, r: int) -> int:
    """``(-1)^k C(r, k) (r - k) mod p`` with ``k = (r-1)/2``: the coefficient of ``x^(k(q+1))`` in h."""
    k = (r - 1) // 2
    return (-1) ** k * binom_mod_p(r, k, F.p) * (r - k) % F.p


def e1_span(F: FieldSpec) -> EchelonBasis:
    ctx = quot_ctx(F, 1)
    return EchelonBasis.span(ctx, [project(e, ctx) for e in en_set(F, 1)])


@dataclass
class HCheck:
    q: int
    r: int
    h: QuotElt
    nonzero: bool
    in_e1_span: bool
    matches_expanded_form: bool
    matches_closed_form: bool
    beta: int
    diagonal: int

    @property
    def ok(self) -> bool:
        return (
            self.nonzero
            and self.in_e1_span
            and self.matches_expanded_form
            and self.matches_closed_form
            and self.beta != 0
        )

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "h": [int(c) for c in self.h.coeffs],
            "nonzero": self.nonzero,
            "in_e1_span": self.in_e1_span,
            "matches_expanded_form": self.matches_expanded_form,
            "matches_closed_form": self.matches_closed_form,
            "beta": self.beta,
            "diagonal_coefficient": self.diagonal,
        }


def check_h(q: Union[int, FieldSpec], r: int) -> HCheck:
    F = q if isinstance(q, FieldSpec) else field_of_order(q)
    ctx = quot_ctx(F, 1)
    h = h_of_binomial_f(F, r, ctx)
    return HCheck(
        F.q,
        r,
        h,
        nonzero=not h.is_zero(),
        in_e1_span=sp_contains(e1_span(F), h),
        matches_expanded_form=h == h_expanded_form(F, r, ctx),
        matches_closed_form=h == h_closed_form(F, r, ctx),
        beta=beta(F, r),
        diagonal=diagonal_coefficient(F, r),
    )


def flip_instance(F: FieldSpec, a: int, b: int) -> QuotElt:
    """``x^a y^(bq) + x^(aq) y^b`` collapsed into A_1."""
    q = F.q
    return collapse_y(BiPoly(F, [((a, b * q), 1), ((a * q, b), 1)]), quot_ctx(F, 1))


# ---- bivariate quotient and the one/two-variable closure comparison --------

class BiQuot:
    """k[x, y]_0 modulo ``x^(q^2) = x`` and ``y^(q^2) = y``; dense, prime fields only.

    A monomial ``x^a y^b`` with 0 <= a, b <= q^2 - 1, (a, b) != (0, 0), sits
    at flat index ``a * q^2 + b - 1``.
    """

    def __init__(self, field: FieldSpec):
        if field.e != 1:
            raise ValueError("bivariate quotient implemented over prime fields only")
        self.field = field
        self.p = field.p
        self.side = field.q ** 2
        self.D1 = self.side - 1
        self.N = self.side * self.side - 1
        side = self.side

        def fold(a):
            return a if a <= self.D1 else (a - 1) % self.D1 + 1

        idx = np.arange(1, self.N + 1)
        ea, eb = idx // side, idx % side
        tgt = np.empty((self.N, self.N), dtype=np.int64)
        for i in range(self.N):
            a = np.array([fold(v) for v in ea[i] + ea])
            b = np.array([fold(v) for v in eb[i] + eb])
            tgt[i] = a * side + b - 1
        self._maps = [np.eye(self.N, dtype=np.int64)[tgt[i]] for i in range(self.N)]

    def index(self, a: int, b: int) -> int:
        return a * self.side + b - 1

    def embed_x(self, f: Poly) -> np.ndarray:
        v = np.zeros(self.N, dtype=np.int64)
        for m, c in f.items():
            a = m if m <= self.D1 else (m - 1) % self.D1 + 1
            v[self.index(a, 0)] = (v[self.index(a, 0)] + c.code) % self.p
        return v

    def mul_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        out = np.zeros(np.broadcast_shapes(A.shape, B.shape), dtype=np.int64)
        for i in np.flatnonzero(A.any(axis=0)):
            out += A[:, i : i + 1] * (B @ self._maps[i])
        return out % self.p

    def compose_rows(self, f: Poly, G: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(G)
        power, at = G, 1
        for m, c in f.items():
            m = m if m <= self.D1 else (m - 1) % self.D1 + 1
            while at < m:
                power = self.mul_rows(power, G)
                at += 1
            acc = (acc + c.code * power) % self.p
        return acc

    def all_elements(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        w = self.p ** np.arange(self.N - 1, -1, -1, dtype=np.int64)
        return (idx[:, None] // w[None, :]) % self.p


@dataclass
class SpotCheck:
    one_variable: bool
    two_variable: bool
    exact: bool

    @property
    def agree(self) -> bool:
        return self.one_variable == self.two_variable


def bivar_membership(
    U: list[Poly], f: Poly, strategy: ClosureStrategy = ClosureStrategy()
) -> bool:
    """Is ``f`` in the T-space of k[x, y]_0 generated by ``U``, modulo x^(q^2)=x, y^(q^2)=y?"""
    F = f.field
    bq = BiQuot(F)
    red = RowReducer(F, bq.N)
    if strategy.kind == "exhaustive":
        total = bq.p ** bq.N
        if total > strategy.bound:
            raise ClosureError(f"search space too large: {total} candidates exceed {strategy.bound}")
        blocks = (bq.all_elements(s, min(total, s + 4096)) for s in range(0, total, 4096))
    else:
        rng = np.random.Generator(np.random.PCG64(strategy.seed))
        stall = strategy.stall_threshold or 64 * bq.N

        def rand_blocks():
            yield np.eye(bq.N, dtype=np.int64)[[bq.index(1, 0)]]
            while True:
                yield rng.integers(0, bq.p, size=(256, bq.N), dtype=np.int64)

        blocks = rand_blocks()
    target = bq.embed_x(f)
    misses = 0
    for G in blocks:
        for u in U:
            rem = red.reduce(bq.compose_rows(u, G))
            live = rem.any(axis=1)
            misses += int((~live).sum())
            for row in rem[live]:
                row = red.reduce(row)[0]
                if row.any():
                    red.insert_reduced(row)
                    misses = 0
                else:
                    misses += 1
        if not red.reduce(target).any():
            return True
        if strategy.kind != "exhaustive" and misses >= stall:
            break
    return not red.reduce(target).any()


def bivar_closure_spotcheck(
    U: list[Poly], f: Poly, q: Optional[int] = None, strategy: ClosureStrategy = ClosureStrategy()
) -> SpotCheck:
    """Compare membership of ``f`` in U^S computed in one and in two variables."""
    F = f.field
    if q is not None and q != F.q:
        raise ValueError("q disagrees with the field of f")
    ctx = quot_ctx(F, 1)
    basis, _ = s_closure(U, ctx, strategy)
    one = sp_contains(basis, project(f, ctx))
    two = bivar_membership(U, f, strategy)
    return SpotCheck(one, two, strategy.exact)
