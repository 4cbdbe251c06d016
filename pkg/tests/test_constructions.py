from __future__ import annotations

import pytest

from tspace_lab.constructions import (
    FPair,
    b1r_set,
    b1r_ts,
    en_pairs,
    en_set,
    en_size,
    f_reduce,
    un_basis,
    wn_generators,
    yn_exponents,
    yn_set,
)
from tspace_lab.gf import field_of_order
from tspace_lab.poly import parse_poly
from tspace_lab.quotient import project, quot_ctx
from tspace_lab.subspace import EchelonBasis, sp_is_full, sp_sum

import oracles


def strs(polys):
    return [str(f) for f in polys]


def test_wn_generators():
    assert strs(wn_generators(2, 1)) == ["x + x^2", "x^3"]
    assert strs(wn_generators(3, 1)) == ["x + x^3", "x^4"]
    assert strs(wn_generators(2, 2)) == ["x + x^4", "x^5"]


def test_wn_overflow_guard():
    with pytest.raises(OverflowError):
        wn_generators(9, 6)


def test_un_basis():
    assert strs(un_basis(2, 1, 1)) == ["x + x^4"]
    F = field_of_order(3)
    assert un_basis(3, 1, 2) == [parse_poly(F, "x^9 - x"), parse_poly(F, "x^10 - x^2")]
    ctx = quot_ctx(F, 1)
    assert all(project(u, ctx).is_zero() for u in un_basis(F, 1, 20))


def test_en_set():
    assert strs(en_set(2, 1)) == ["x + x^2", "x^3"]
    assert sorted(strs(en_set(3, 1))) == sorted(["x + x^3", "x^2 + x^6", "x^5 + x^7", "x^4", "x^8"])
    assert len(en_set(4, 1)) == en_size(4, 1) == 9


def test_yn_set():
    assert strs(yn_set(2, 1)) == ["x"]
    assert strs(yn_set(3, 1)) == ["x", "x^2", "x^5"]
    assert len(yn_set(4, 1)) == 6


def test_b1r_set():
    assert strs(b1r_set(3, 1)) == ["x", "x^5"]
    assert strs(b1r_set(3, 2)) == ["x^2"]
    assert strs(b1r_set(5, 2)) == ["x^2", "x^14"]
    with pytest.raises(ValueError):
        b1r_set(3, 3)


def test_f_reduce_examples():
    ctx = quot_ctx(field_of_order(2), 1)
    assert f_reduce(FPair(2, 2), 2, 1) == (FPair(1, 1), 1)
    assert f_reduce(FPair(2, 0), 2, 1) == (FPair(1, 0), 1)
    assert f_reduce(FPair(2, 1), 2, 1) == (FPair(1, 0), 1)
    assert project(FPair(2, 2).poly(2, 1), ctx) == project(parse_poly(ctx.field, "x^3"), ctx)
    assert project(FPair(2, 1).poly(2, 1), ctx) == project(parse_poly(ctx.field, "x + x^2"), ctx)


def test_invalid_pair():
    with pytest.raises(ValueError):
        FPair(1, 2)
    with pytest.raises(ValueError):
        FPair(0, 0)


@pytest.mark.parametrize("q,n", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_f_reduce_matches_exponent_oracle(q, n):
    Q, D = q ** n, q ** (2 * n) - 1
    F = field_of_order(q)
    ctx = quot_ctx(F, n)
    for i in range(3 * Q + 1):
        for j in range(i + 1):
            if i + j == 0:
                continue
            pair = FPair(i, j)
            red, scale = f_reduce(pair, q, n)
            assert red.in_range(Q)
            lhs = oracles.reduce_mod_u({m: 1 for m in pair.exponents(Q)}, D, q)
            rhs = oracles.reduce_mod_u({m: scale for m in red.exponents(Q)}, D, q)
            assert lhs == rhs, (pair, red, scale)
            assert project(pair.poly(F, n), ctx) == project(red.poly(F, n), ctx) * scale


@pytest.mark.parametrize("q,n", [(2, 1), (3, 1), (4, 1), (2, 2), (5, 1)])
def test_degrees_are_distinct(q, n):
    D = q ** (2 * n) - 1
    degrees = [f.degree for f in en_set(q, n)] + [f.degree for f in un_basis(q, n, D)]
    assert len(degrees) == len(set(degrees))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_yn_complements_en(q):
    F = field_of_order(q)
    ctx = quot_ctx(F, 1)
    E = EchelonBasis.span(ctx, [project(f, ctx) for f in en_set(F, 1)])
    Y = EchelonBasis.span(ctx, [project(f, ctx) for f in yn_set(F, 1)])
    assert sp_is_full(sp_sum(E, Y)) and E.dim() + Y.dim() == ctx.D


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_b_sets_partition_y1(q):
    parts = [set(f.degree for f in b1r_set(q, r)) for r in range(1, q)]
    assert sum(len(p) for p in parts) == len(set().union(*parts))
    assert set().union(*parts) == set(yn_exponents(q, 1))
    for r, part in enumerate(parts, start=1):
        assert all((d - r) % (q - 1) == 0 for d in part)
    assert all(len(b1r_ts(q, r)) == len(parts[r - 1]) for r in range(1, q))


def test_en_pairs_order():
    assert en_pairs(3, 1) == [FPair(1, 0), FPair(2, 0), FPair(2, 1), FPair(1, 1), FPair(2, 2)]
