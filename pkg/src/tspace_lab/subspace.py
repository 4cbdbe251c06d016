"""Subspaces of A_n over GF(q) in reduced row-echelon form.

Pivots are the lowest exponent with a nonzero coefficient, rows are sorted by
pivot, each pivot coefficient is 1 and pivot columns are cleared in every
other row.  The form is canonical: equal subspaces have identical rows.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec, FieldTables, tables
from .quotient import ContextMismatch, QuotCtx, QuotElt


class RowReducer:
    """Mutable RREF accumulator over code vectors of a fixed width.

    The closure engine feeds it whole batches: :meth:`reduce` clears every
    known pivot column from a batch at once, and :meth:`absorb` walks a reduced
    batch in order, inserting each row that is still nonzero.
    """

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.tab: FieldTables = tables(field)
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "RowReducer":
        other = RowReducer(self.field, self.width)
        other.rows = [r.copy() for r in self.rows]
        other.pivots = list(self.pivots)
        return other

    # arithmetic on code arrays
    def _axpy(self, V: np.ndarray, coef: np.ndarray, row: np.ndarray) -> np.ndarray:
        """``V - coef[:, None] * row``."""
        if self.field.e == 1:
            return (V - coef[:, None] * row[None, :]) % self.field.p
        return self.tab.sub[V, self.tab.mul[coef[:, None], row[None, :]]]

    def _eliminate(self, V: np.ndarray, row: np.ndarray, piv: int) -> np.ndarray:
        coef = V[:, piv]
        if not coef.any():
            return V
        return self._axpy(V, coef, row)

    def reduce(self, V: np.ndarray) -> np.ndarray:
        V = np.array(V, dtype=np.int64, ndmin=2)
        for row, piv in zip(self.rows, self.pivots):
            V = self._eliminate(V, row, piv)
        return V

    def insert_reduced(self, r: np.ndarray) -> int:
        """Insert a nonzero row already reduced against the basis; return its pivot."""
        nz = np.flatnonzero(r)
        piv = int(nz[0])
        lead = int(r[piv])
        if lead != 1:
            inv = int(self.tab.inv[lead])
            r = (r * inv) % self.field.p if self.field.e == 1 else self.tab.mul[inv, r]
        r = np.array(r, dtype=np.int64)
        if self.rows:
            M = np.stack(self.rows)
            M = self._eliminate(M, r, piv)
            self.rows = list(M)
        pos = int(np.searchsorted(self.pivots, piv))
        self.rows.insert(pos, r)
        self.pivots.insert(pos, piv)
        return piv

    def insert(self, v: np.ndarray) -> bool:
        """Insert ``v``; return True if it was absorbed (already in the span)."""
        r = self.reduce(v)[0]
        if not r.any():
            return True
        self.insert_reduced(r)
        return False

    def absorb(self, V: np.ndarray, *, reduced: bool = False, stop_at_full: bool = True):
        """Insert the rows of ``V`` in order.

        Yields ``(index, absorbed_before)`` for each row that enlarged the span,
        where ``absorbed_before`` counts the rows absorbed since the previous
        growth within this batch.  The remaining rows are kept reduced against
        each new pivot row only, which is enough because the basis is reduced.
        """
        rem = V if reduced else self.reduce(V)
        offset = 0
        while rem.shape[0]:
            nz = np.flatnonzero(rem.any(axis=1))
            if nz.size == 0:
                return
            k = int(nz[0])
            piv = self.insert_reduced(rem[k])
            yield offset + k, k
            if stop_at_full and self.dim == self.width:
                return
            row = self.rows[self.pivots.index(piv)]
            rem = self._eliminate(rem[k + 1 :], row, piv)
            offset += k + 1

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.stack(self.rows)


class EchelonBasis:
    """Immutable RREF basis of a subspace of A_n."""

    __slots__ = ("ctx", "_M", "pivots")

    def __init__(self, ctx: QuotCtx, matrix: np.ndarray | None = None, pivots: Sequence[int] = ()):
        M = np.zeros((0, ctx.D), dtype=np.int64) if matrix is None else np.array(matrix, dtype=np.int64)
        M = M.reshape(-1, ctx.D)
        M.setflags(write=False)
        self.ctx = ctx
        self._M = M
        self.pivots = tuple(int(p) for p in pivots)

    @classmethod
    def empty(cls, ctx: QuotCtx) -> "EchelonBasis":
        return cls(ctx)

    @classmethod
    def from_reducer(cls, ctx: QuotCtx, red: RowReducer) -> "EchelonBasis":
        return cls(ctx, red.matrix(), red.pivots)

    @classmethod
    def span(cls, ctx: QuotCtx, elts: Iterable[QuotElt]) -> "EchelonBasis":
        red = RowReducer(ctx.field, ctx.D)
        for v in elts:
            _check_ctx(ctx, v)
            red.insert(v.coeffs)
        return cls.from_reducer(ctx, red)

    def reducer(self) -> RowReducer:
        red = RowReducer(self.ctx.field, self.ctx.D)
        red.rows = [r.copy() for r in self._M]
        red.pivots = list(self.pivots)
        return red

    @property
    def matrix(self) -> np.ndarray:
        return self._M

    @property
    def rows(self) -> list[QuotElt]:
        return [QuotElt(self.ctx, r) for r in self._M]

    @property
    def pivot_exponents(self) -> list[int]:
        return [p + 1 for p in self.pivots]

    def dim(self) -> int:
        return self._M.shape[0]

    def __len__(self) -> int:
        return self.dim()

    def __eq__(self, other) -> bool:
        if not isinstance(other, EchelonBasis):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self._M, other._M)

    def __hash__(self) -> int:
        return hash((self.ctx, self._M.tobytes()))

    def __contains__(self, v: QuotElt) -> bool:
        return sp_contains(self, v)

    def __repr__(self) -> str:
        return f"EchelonBasis({self.ctx!r}, dim={self.dim()})"

    def contains_rows(self, V: np.ndarray) -> np.ndarray:
        """Membership mask for a batch of code vectors."""
        return ~self.reducer().reduce(V).any(axis=1)

    def to_json(self) -> list[list[int]]:
        return [[int(c) for c in r] for r in self._M]


def _check_ctx(ctx: QuotCtx, v) -> None:
    if v.ctx != ctx:
        raise ContextMismatch(f"context mismatch: {v.ctx!r} vs {ctx!r}")


def sp_insert(B: EchelonBasis, v: QuotElt) -> tuple[EchelonBasis, bool]:
    _check_ctx(B.ctx, v)
    red = B.reducer()
    absorbed = red.insert(v.coeffs)
    if absorbed:
        return B, True
    return EchelonBasis.from_reducer(B.ctx, red), False


def sp_contains(B: EchelonBasis, v: QuotElt) -> bool:
    _check_ctx(B.ctx, v)
    return bool(B.contains_rows(v.coeffs[None, :])[0])


def sp_sum(B1: EchelonBasis, B2: EchelonBasis) -> EchelonBasis:
    _check_ctx(B1.ctx, B2)
    red = B1.reducer()
    for r in B2.matrix:
        red.insert(r)
    return EchelonBasis.from_reducer(B1.ctx, red)


def sp_is_full(B: EchelonBasis) -> bool:
    return B.dim() == B.ctx.D


def sp_intersection(B1: EchelonBasis, B2: EchelonBasis) -> EchelonBasis:
    """Intersection by the Zassenhaus algorithm on rows ``[v | v]`` and ``[w | 0]``."""
    _check_ctx(B1.ctx, B2)
    ctx = B1.ctx
    D = ctx.D
    red = RowReducer(ctx.field, 2 * D)
    for v in B1.matrix:
        red.insert(np.concatenate([v, v]))
    for w in B2.matrix:
        red.insert(np.concatenate([w, np.zeros(D, dtype=np.int64)]))
    # rows whose left half vanished carry the intersection in their right half
    right = [r[D:] for r, piv in zip(red.rows, red.pivots) if piv >= D]
    return EchelonBasis.span(ctx, [QuotElt(ctx, r) for r in right])
