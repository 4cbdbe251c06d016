"""One test per acceptance criterion, each printing a single pass/fail line."""

from __future__ import annotations

import time
from math import comb

import numpy as np

from tspace_lab.binom import binom_mod_p, special_binomial, special_case, special_domain
from tspace_lab.bivar import check_g_formula, e1_span, h_of_binomial_f, random_alphas
from tspace_lab.constructions import b1r_set
from tspace_lab.gf import field_of_order
from tspace_lab.poly import Poly
from tspace_lab.quotient import project, quot_ctx
from tspace_lab.subspace import sp_contains
from tspace_lab.suites import (
    suite_bases,
    suite_containment,
    suite_maximality_w1,
    suite_sum,
    suite_summary,
    suite_wn_props,
)
from tspace_lab.tclosure import Certificate, ClosureStrategy, s_closure, verify_certificate

import oracles

BASE_CASES = [(2, 1), (3, 1), (2, 2)]


def statuses(rep):
    return {r.claim: r.status for r in rep.records}


def test_criterion_01_codimension(acceptance):
    t0 = time.perf_counter()
    got = []
    for q, n in BASE_CASES:
        rec = {r.claim: r for r in suite_bases(q, n, strategy="exhaustive").records}["codimension"]
        got.append(rec.detail["codimension"] if rec.status == "pass" else None)
    elapsed = time.perf_counter() - t0
    ok = got == [comb(q ** n, 2) for q, n in BASE_CASES] == [1, 3, 6] and elapsed < 10
    acceptance(1, ok, f"codimensions {got} (expected [1, 3, 6]) in {elapsed:.1f}s")
    assert ok


def test_criterion_02_decomposition(acceptance):
    bad = []
    for q, n in BASE_CASES:
        st = statuses(suite_bases(q, n, strategy="exhaustive"))
        if not (st["wn-decomposition"] == st["yn-complement"] == st["en-independent"] == "pass"):
            bad.append((q, n, st))
    acceptance(2, not bad, "closure(W_n) = span(E_n) and Y_n complements it for (2,1), (3,1), (2,2)"
               + (f"; failures {bad}" if bad else ""))
    assert not bad


def test_criterion_03_maximality(acceptance):
    t0 = time.perf_counter()
    small = {q: suite_maximality_w1(q, strategy="exhaustive") for q in (2, 3)}
    elapsed = time.perf_counter() - t0
    exhaustive_ok = all(rep.exit_code() == 0 for rep in small.values())
    counts = {q: sum(r.detail["elements"] for r in rep.records if r.claim == "maximality-all")
              for q, rep in small.items()}
    exhaustive_ok = exhaustive_ok and counts == {2: 1, 3: 26} and elapsed < 60

    F4 = field_of_order(4)
    ctx4 = quot_ctx(F4, 1)
    rep4 = suite_maximality_w1(4, strategy="random", seed=0)
    certs = {k: v for k, v in rep4.certificates.items() if k.startswith("q4-r")}
    homogeneous = sum(4 ** len(b1r_set(F4, r)) - 1 for r in range(1, 4))
    replayed = all(
        verify_certificate(Certificate.from_json(c.to_json())) and c.claim == "full" and c.dim == ctx4.D == 15
        for c in certs.values()
    )
    cert_ok = rep4.exit_code() == 0 and len(certs) == homogeneous and replayed
    ok = exhaustive_ok and cert_ok
    acceptance(3, ok, f"W_1 maximal: q=2 ({counts[2]} f), q=3 ({counts[3]} f) exhaustive in {elapsed:.1f}s; "
               f"q=4 {len(certs)}/{homogeneous} certificates replay to dim 15")
    assert ok


def test_criterion_04_sum(acceptance):
    t0 = time.perf_counter()
    r2 = suite_sum(2, 0, 1, strategy="exhaustive")
    r3 = suite_sum(3, 0, 1, seed=0)
    elapsed = time.perf_counter() - t0
    c3 = r3.certificates["q3-r0-s1"]
    ok = (
        r2.exit_code() == 0
        and r2.records[0].detail["strategy"]["kind"] == "exhaustive"
        and r3.exit_code() == 0
        and verify_certificate(Certificate.from_json(c3.to_json()))
        and c3.dim == 80
        and elapsed < 300
    )
    acceptance(4, ok, f"W_1 + W_2 full: q=2 exhaustive (D=15), q=3 certificate dim {c3.dim}/80 in {elapsed:.1f}s")
    assert ok


def test_criterion_05_containment(acceptance):
    cases = [(2, 0, 3), (2, 0, 5), (3, 0, 3)]
    got = {c: statuses(suite_containment(*c, strategy="exhaustive"))["containment"] for c in cases}
    ok = all(s == "pass" for s in got.values())
    acceptance(5, ok, f"W_(2^r m) in W_(2^r) for (q,r,m) in {cases}: {sorted(set(got.values()))}")
    assert ok


def test_criterion_06_lucas(acceptance):
    t0 = time.perf_counter()
    cases = mismatches = 0
    for p in (2, 3, 5, 7, 11):
        for M in range(301):
            for N in range(M + 1):
                cases += 1
                mismatches += binom_mod_p(M, N, p) != oracles.binom_oracle(M, N, p)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and cases > 226_000 and elapsed < 5
    acceptance(6, ok, f"{cases} digit-product binomials, {mismatches} mismatches, {elapsed:.2f}s")
    assert ok


def test_criterion_07_special_cases(acceptance):
    cases = mismatches = 0
    for q in (3, 4, 5, 7, 8, 9):
        p = {4: 2, 8: 2, 9: 3}.get(q, q)
        for case in ("I", "II", "III", "IV"):
            for r, t, j in special_domain(case, q):
                M, N = special_binomial(case, r, t, j, q)
                cases += 1
                mismatches += special_case(case, r, t, j, q) != oracles.binom_oracle(M, N, p)
    ok = mismatches == 0 and cases > 0
    acceptance(7, ok, f"{cases} special-case binomials over q in (3,4,5,7,8,9), {mismatches} mismatches")
    assert ok


def test_criterion_08_identity_pipeline(acceptance):
    g_bad = []
    for q in (3, 5):
        F = field_of_order(q)
        rng = np.random.default_rng(20 + q)
        for r in range(1, q):
            for _ in range(20):
                alphas = random_alphas(F, r, rng)
                if not check_g_formula(F, r, alphas):
                    g_bad.append((q, r, alphas))
    h_bad = []
    for q, r in [(5, 3), (7, 3), (7, 5)]:
        F = field_of_order(q)
        h = h_of_binomial_f(F, r)
        if h.is_zero() or not sp_contains(e1_span(F), h):
            h_bad.append((q, r))
    ok = not g_bad and not h_bad
    acceptance(8, ok, f"g closed form: {len(g_bad)} failures over q in (3,5); "
               f"h nonzero in span(E_1) for (5,3), (7,3), (7,5): {len(h_bad)} failures")
    assert ok


def test_criterion_09_property_suites(acceptance):
    bad = []
    for q, n in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        rep = suite_wn_props(q, n, trials=1000, seed=42)
        bad += [(q, n, r.claim) for r in rep.records if r.status != "pass"]
    ok = not bad
    acceptance(9, ok, "1000 trials of each W_n property at (2,1), (3,1), (2,2), (3,2)"
               + (f"; failures {bad}" if bad else ""))
    assert ok


def test_criterion_10_nonmembership(acceptance):
    # the criterion asks for exhaustive closures in A_N; for odd p the image of
    # {x + x^q}^S there contains x^(q+1), because U_N is not inside that T-space
    exact = ClosureStrategy.exhaustive()
    results = {}
    for q in (2, 3):
        F = field_of_order(q)
        ctx = quot_ctx(F, 1)
        B, _ = s_closure([Poly(F, [(1, 1), (q, 1)])], ctx, exact)
        results[f"x^{q + 1} vs {{x+x^{q}}}^S in A_1"] = not sp_contains(B, project(Poly.monomial(F, q + 1), ctx))
    F2 = field_of_order(2)
    ctx2 = quot_ctx(F2, 2)
    B, _ = s_closure([Poly(F2, [(1, 1), (4, 1)]), Poly.monomial(F2, 5)], ctx2, exact)
    results["x+x^2 vs W_2 in A_2"] = not sp_contains(B, project(Poly(F2, [(1, 1), (2, 1)]), ctx2))
    exact_route = {q: statuses(suite_summary(q))["nonmember-power-exact-N1"] for q in (2, 3)}
    ok = all(results.values())
    failed = [k for k, v in results.items() if not v]
    acceptance(10, ok, "exhaustive non-membership: "
               + ", ".join(f"{k}: {'absent' if v else 'PRESENT'}" for k, v in results.items())
               + f"; exact free-algebra check {exact_route}"
               + (f" (quotient cannot separate {failed})" if failed else ""))
    assert ok, f"exhaustive closure contains the target: {failed}"


def test_criterion_11_determinism(acceptance):
    runs = [
        ("bases", lambda t: suite_bases(3, 1, threads=t)),
        ("wn-props", lambda t: suite_wn_props(2, 2, trials=200, seed=42)),
        ("containment", lambda t: suite_containment(3, 0, 3, threads=t)),
        ("sum", lambda t: suite_sum(3, 0, 1, seed=7, threads=t)),
        ("maximality", lambda t: suite_maximality_w1(3, threads=t)),
        ("summary", lambda t: suite_summary(2, threads=t)),
    ]
    differing = []
    for name, make in runs:
        a, b, c = make(1).dumps(), make(1).dumps(), make(4).dumps()
        if not a == b == c:
            differing.append(name)
    ok = not differing
    acceptance(11, ok, f"{len(runs)} suites rerun with 1 and 4 workers give byte-identical JSON"
               + (f"; differing {differing}" if differing else ""))
    assert ok
