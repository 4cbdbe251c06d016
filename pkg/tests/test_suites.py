from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from tspace_lab.gf import field_of_order
from tspace_lab.poly import Poly, parse_poly
from tspace_lab.suites import (
    ANCHORS,
    SCHEMA,
    SuiteReport,
    frobenius_sum_contains,
    suite_bases,
    suite_containment,
    suite_maximality_w1,
    suite_sum,
    suite_summary,
    suite_wn_props,
)


def by_claim(rep):
    return {r.claim: r for r in rep.records}


def test_report_shape():
    rep = suite_bases(2, 1)
    data = json.loads(rep.dumps())
    assert data["schema"] == SCHEMA
    assert set(data) == {"schema", "suite", "params", "field", "checks", "summary", "toolchain"}
    assert all("wall_time" not in c for c in data["checks"])
    assert all("wall_time" in c for c in json.loads(rep.dumps(timings=True))["checks"])


@pytest.mark.parametrize("q,n,codim,dim", [(2, 1, 1, 2), (3, 1, 3, 5), (2, 2, 6, 9)])
def test_bases(q, n, codim, dim):
    rep = suite_bases(q, n)
    assert rep.exit_code() == 0
    recs = by_claim(rep)
    assert recs["codimension"].detail["codimension"] == codim
    assert recs["wn-decomposition"].detail["closure_dim"] == dim


def test_bases_inadmissible_is_skipped():
    rep = suite_bases(7, 1, strategy="exhaustive")
    assert rep.counts()["skipped"] == 2 and rep.exit_code() == 2
    assert all("too large" in r.detail["reason"] for r in rep.records if r.status == "skipped")


def test_wn_props_small():
    rep = suite_wn_props(3, 2, trials=200, seed=42)
    assert rep.exit_code() == 0
    assert by_claim(rep)["un-in-wn"].detail["vanishes_in_quotient"]


@pytest.mark.parametrize("q,r,m", [(2, 0, 3), (2, 0, 1), (3, 0, 3), (2, 1, 3)])
def test_containment(q, r, m):
    assert suite_containment(q, r, m).exit_code() == 0


def test_containment_rejects_even_m():
    with pytest.raises(ValueError):
        suite_containment(2, 0, 2)


def test_sum_preconditions():
    with pytest.raises(ValueError):
        suite_sum(2, 0, 0)


def test_sum_q2():
    rep = suite_sum(2, 0, 1)
    assert rep.exit_code() == 0
    assert rep.certificates["q2-r0-s1"].claim == "full"


def test_maximality_q2():
    rep = suite_maximality_w1(2)
    assert rep.exit_code() == 0
    assert by_claim(rep)["maximality-class-1"].detail["elements"] == 1


def test_maximality_exploration_is_info():
    rep = suite_maximality_w1(2, n=2, strategy="random", seed=1, stall=200)
    assert [r.status for r in rep.records] == ["info"]


def test_summary_p2():
    rep = suite_summary(2)
    assert rep.exit_code() == 0
    recs = by_claim(rep)
    assert recs["nonmember-power-N1"].detail["closure_dim"] == 1
    assert recs["nonmember-p2"].detail["substitutions"] == 2 ** 15


def test_summary_odd_p_quotient_is_inconclusive():
    # x^4 + x^12 = 2x^4 modulo U_1, so the quotient image cannot separate x^4
    recs = by_claim(suite_summary(3))
    assert recs["nonmember-power-N1"].status == "inconclusive"
    assert recs["nonmember-power-N1"].detail["quotient_member"]
    assert recs["nonmember-power-exact-N1"].status == "pass"


def test_frobenius_sum_contains():
    F = field_of_order(3)
    assert frobenius_sum_contains(parse_poly(F, "x + x^3"), 3)[0]
    assert frobenius_sum_contains(parse_poly(F, "2x^2 + 2x^6 + x^5 + x^15"), 3)[0]
    assert not frobenius_sum_contains(parse_poly(F, "x^4"), 3)[0]
    assert not frobenius_sum_contains(parse_poly(F, "x"), 3)[0]
    with pytest.raises(ValueError):
        frobenius_sum_contains(parse_poly(F, "x"), 6)


@settings(max_examples=100)
@given(q=st.sampled_from([2, 3, 4, 5]), data=st.data())
def test_frobenius_sum_image_members(q, data):
    F = field_of_order(q)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=6))
    s = Poly(F, [(k + 1, F.from_code(c)) for k, c in enumerate(coeffs)])
    Q = q ** data.draw(st.integers(1, 2))
    image = s + Poly(F, [(m * Q, c) for m, c in s.items()])
    assert frobenius_sum_contains(image, Q)[0]


def test_anchors_are_registered():
    seen = set()
    reps = [suite_bases(2, 1), suite_wn_props(2, 1, trials=20), suite_containment(2, 0, 3), suite_sum(2, 0, 1),
            suite_maximality_w1(2), suite_maximality_w1(2, n=2, strategy="random", stall=50), suite_summary(2)]
    for rep in reps:
        for rec in json.loads(rep.dumps())["checks"]:
            assert rec["anchor"] in ANCHORS.values()
            seen.add(rec["anchor"])
    assert seen == set(ANCHORS.values())


def test_unknown_anchor_fails_loudly():
    rep = SuiteReport("x", {})
    with pytest.raises(KeyError):
        rep.add("no-such-claim", lambda: ("pass", {}))


def test_fail_carries_counterexample():
    rep = SuiteReport("x", {})
    rep.add("sum", lambda: ("fail", {}, {"f": "x"}))
    assert json.loads(rep.dumps())["checks"][0]["counterexample"] == {"f": "x"}
    assert rep.exit_code() == 1


@pytest.mark.parametrize("make", [
    lambda t: suite_bases(3, 1, threads=t),
    lambda t: suite_sum(3, 0, 1, seed=5, threads=t),
    lambda t: suite_maximality_w1(2, threads=t),
])
def test_reports_byte_identical(make):
    assert make(1).dumps() == make(1).dumps() == make(3).dumps()
