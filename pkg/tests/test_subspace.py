from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tspace_lab.constructions import en_set
from tspace_lab.gf import field_of_order
from tspace_lab.poly import parse_poly
from tspace_lab.quotient import ContextMismatch, QuotElt, project, quot_ctx
from tspace_lab.subspace import EchelonBasis, sp_contains, sp_insert, sp_intersection, sp_is_full, sp_sum

import oracles


def ctx_of(q, n=1):
    return quot_ctx(field_of_order(q), n)


def span(ctx, *texts):
    return EchelonBasis.span(ctx, [project(parse_poly(ctx.field, t), ctx) for t in texts])


def test_insert_examples():
    c = ctx_of(2)
    B, absorbed = sp_insert(EchelonBasis.empty(c), c.zero())
    assert absorbed and B.dim() == 0
    B, absorbed = sp_insert(B, c.x())
    assert not absorbed and B.dim() == 1
    B, absorbed = sp_insert(span(c, "x + x^2"), c.monomial(2))
    assert not absorbed
    assert [str(r) for r in B.rows] == ["x", "x^2"]


def test_contains_examples():
    c = ctx_of(2)
    B = span(c, "x + x^2", "x^3")
    assert sp_contains(B, c.zero())
    assert sp_contains(B, c.monomial(3))
    assert not sp_contains(B, c.x())


def test_sum_examples():
    c = ctx_of(2)
    B = span(c, "x + x^2", "x^3")
    assert sp_sum(B, EchelonBasis.empty(c)) == B
    assert sp_sum(B, B) == B
    assert sp_is_full(sp_sum(B, span(c, "x")))


def test_is_full_examples():
    c3 = ctx_of(3)
    assert not sp_is_full(EchelonBasis.empty(c3))
    assert sp_is_full(EchelonBasis.span(c3, c3.basis()))
    E1 = EchelonBasis.span(c3, [project(f, c3) for f in en_set(c3.field, 1)])
    assert E1.dim() == 5 and not sp_is_full(E1)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        sp_contains(EchelonBasis.empty(ctx_of(2)), ctx_of(3).x())


def _random_rows(ctx, rng, k):
    return [QuotElt(ctx, rng.integers(0, ctx.q, ctx.D)) for _ in range(k)]


@pytest.mark.parametrize("q", [2, 3, 4])
@settings(max_examples=100)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_echelon_form_is_canonical(q, seed):
    c = ctx_of(q)
    rng = np.random.default_rng(seed)
    vs = _random_rows(c, rng, int(rng.integers(0, 9)))
    vs += [vs[0] + vs[-1]] if vs else []
    order = rng.permutation(len(vs))
    A = EchelonBasis.span(c, vs)
    B = EchelonBasis.span(c, [vs[i] for i in order])
    assert A == B and A.matrix.tobytes() == B.matrix.tobytes()


@pytest.mark.parametrize("q", [2, 3])
@settings(max_examples=200)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_rank_identity(q, seed):
    c = ctx_of(q)
    rng = np.random.default_rng(seed)
    common = _random_rows(c, rng, int(rng.integers(0, 3)))
    B1 = EchelonBasis.span(c, common + _random_rows(c, rng, int(rng.integers(0, 5))))
    B2 = EchelonBasis.span(c, common + _random_rows(c, rng, int(rng.integers(0, 5))))
    S, I = sp_sum(B1, B2), sp_intersection(B1, B2)
    assert S.dim() + I.dim() == B1.dim() + B2.dim()
    assert all(sp_contains(B1, v) and sp_contains(B2, v) for v in I.rows)


@pytest.mark.parametrize("q", [2, 3, 5])
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_dim_matches_oracle_rank(q, seed):
    c = ctx_of(q)
    rng = np.random.default_rng(seed)
    rows = [rng.integers(0, q, c.D).tolist() for _ in range(int(rng.integers(1, 10)))]
    B = EchelonBasis.span(c, [QuotElt(c, r) for r in rows])
    assert B.dim() == oracles.rank_mod_p(rows, q)
