"""Named verification suites producing deterministic JSON reports.

Every check record carries an ``anchor``: the mathematical statement it
verifies, drawn from :data:`ANCHORS`.  Statuses are ``pass``, ``fail``,
``skipped`` (the required exhaustive search is too large), ``inconclusive``
(a randomized search stalled below the target) and ``info`` (exploratory
output that is not a claim).  Non-membership is only ever concluded from an
exhaustive closure.

Wall times are kept on the records but left out of the JSON unless asked for,
so that reruns with the same parameters give byte-identical reports.
"""

from __future__ import annotations

import itertools
import json
import platform
import time
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Callable, Optional

import numpy as np

from .constructions import b1r_set, en_set, en_size, un_basis, wn_generators, yn_set
from .gf import FieldSpec, field_of_order
from .poly import MAX_EXPONENT, Poly, p_compose
from .quotient import QuotCtx, nf_exp, project, quot_ctx
from .subspace import EchelonBasis, RowReducer, sp_contains, sp_intersection, sp_sum
from .tclosure import (
    Certificate,
    ClosureError,
    ClosureStrategy,
    merge_certificates,
    prune_certificate,
    s_closure,
    verify_certificate,
)

SCHEMA = "tspace-report/1"
STATUSES = ("pass", "fail", "skipped", "inconclusive", "info")

ANCHORS = {
    "un-basis": "(x^(q^(2n)) - x) x^i, i >= 0, is a linear basis of U_n",
    "en-independent": "E_n is linearly independent, |E_n| = C(q^n,2) + q^n - 1",
    "wn-decomposition": "W_n = V_n (+) U_n",
    "codimension": "dim(k<x>_0 / W_n) = C(q^n,2); W_n is proper",
    "yn-complement": "span(Y_n) is a complement of W_n in k<x>_0",
    "fundamental-wn": "u v^(q^n) + u^(q^n) v lies in W_n",
    "un-in-wn": "U_n is contained in W_n",
    "subalgebra": "W_n is a subalgebra",
    "product-closure": "(u + u^(q^n)) v^(q^n+1) lies in W_n",
    "containment-i": "x^(q^(2^r m)) = x^(q^(2^r (m-2))) mod U_(2^r) for m >= 3",
    "containment-ii": "x + (-1)^(m+1) x^(q^(2^r m)) lies in {x + x^(q^(2^r))}^S",
    "containment": "W_(2^r m) is contained in W_(2^r) for odd m",
    "sum": "W_(2^r) + W_(2^s) = k<x>_0 for s > r >= 0",
    "sum-certificate": "the fullness certificate for W_(2^r) + W_(2^s) replays",
    "maximality-class": "W_1 + {f}^S = k<x>_0 for every nonzero f in span(B1[r])",
    "maximality-all": "W_1 + {f}^S = k<x>_0 for every nonzero f in span(Y_1)",
    "maximality-explore": "exploratory: dim of W_n + {f}^S for monomials f of Y_n",
    "nonmember-power": "x^(q^N + 1) is not in {x + x^(q^N)}^S",
    "nonmember-p2": "for p = 2, x + x^q is not in W_(2^n), n > 0",
    "p2-coincide": "for p = 2, the families W_(2^n) and {x + x^q, x^(q^(2^n)+1)}^S agree at n = 0",
    "p2-inclusion": "for p = 2, W_(2^n) is contained in {x + x^q, x^(q^(2^n)+1)}^S",
}


@dataclass
class CheckRecord:
    claim: str
    status: str
    detail: dict = dc_field(default_factory=dict)
    counterexample: Optional[dict] = None
    wall_time: float = 0.0
    key: str = ""

    @property
    def anchor(self) -> str:
        return ANCHORS[self.key or self.claim]

    def to_json(self, timings: bool = False) -> dict:
        out = {"claim": self.claim, "anchor": self.anchor, "status": self.status, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def toolchain() -> dict:
    from . import __version__

    return {"python": platform.python_version(), "numpy": np.__version__, "tspace_lab": __version__}


@dataclass
class SuiteReport:
    suite: str
    params: dict
    field: Optional[dict] = None
    records: list[CheckRecord] = dc_field(default_factory=list)
    certificates: dict[str, Certificate] = dc_field(default_factory=dict)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for r in self.records:
            out[r.status] += 1
        return out

    def exit_code(self) -> int:
        c = self.counts()
        if c["fail"]:
            return 1
        if c["skipped"] or c["inconclusive"]:
            return 2
        return 0

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": self.params,
            "field": self.field,
            "checks": [r.to_json(timings) for r in self.records],
            "summary": self.counts(),
            "toolchain": toolchain(),
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True, indent=2) + "\n"

    def add(self, claim: str, fn: Callable[[], tuple], key: str = "") -> CheckRecord:
        """Run ``fn() -> (status, detail[, counterexample])`` and record it."""
        t0 = time.perf_counter()
        try:
            out = fn()
        except ClosureError as exc:
            out = ("skipped", {"reason": str(exc)})
        status, detail = out[0], out[1]
        cex = out[2] if len(out) > 2 else None
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        rec = CheckRecord(claim, status, detail, cex, time.perf_counter() - t0, key)
        rec.anchor  # unknown anchors fail loudly here
        self.records.append(rec)
        return rec


# ---- strategy selection --------------------------------------------------------

def pick_strategy(
    name: Optional[str],
    ctx: QuotCtx,
    seed: int = 0,
    stall: Optional[int] = None,
    fallback: bool = True,
) -> ClosureStrategy:
    """``exhaustive`` / ``random`` / ``None`` (exhaustive when admissible, else random).

    An explicit ``exhaustive`` that is not admissible raises unless ``fallback``.
    """
    exact = ClosureStrategy.exhaustive()
    rand = ClosureStrategy.randomized(seed, stall)
    if name in (None, "auto"):
        return exact if exact.admissible(ctx) else rand
    if name == "exhaustive":
        if exact.admissible(ctx) or not fallback:
            return exact
        return rand
    if name in ("random", "randomized"):
        return rand
    raise ValueError(f"unknown strategy {name!r}")


def _closure(gens, ctx, strategy, threads=None):
    if not strategy.admissible(ctx):
        raise ClosureError(
            f"search space too large: {strategy.candidate_count(ctx)} candidates exceed {strategy.bound}"
        )
    return s_closure(gens, ctx, strategy, threads)


def _codes(v) -> list[int]:
    return [int(c) for c in v]


def _span(ctx: QuotCtx, polys) -> EchelonBasis:
    return EchelonBasis.span(ctx, [project(f, ctx) for f in polys])


# ---- exact membership in {x + x^Q}^S -------------------------------------------

def frobenius_sum_contains(target: Poly, Q: int, probe_degree: int = 3) -> tuple[bool, dict]:
    """Decide ``target in {x + x^Q}^S`` exactly in k<x>_0, with Q a power of q.

    ``s -> s + s^Q`` is k-linear, so the T-space is the image
    ``span(x^i + x^(iQ))``.  Those spanning vectors have distinct leading
    degrees iQ, so an element of degree d only involves i <= d / Q and the
    question is a finite echelon test.  As a guard, the image of every
    substitution of degree <= ``probe_degree`` is compared with the span of
    the corresponding basis vectors.
    """
    F = target.field
    k = F.q
    while k < Q:
        k *= F.q
    if k != Q:
        raise ValueError(f"Q={Q} is not a power of q={F.q}")
    d = max(target.degree, probe_degree * Q, 1)

    def vec(f: Poly) -> np.ndarray:
        v = np.zeros(d, dtype=np.int64)
        for m, c in f.items():
            v[m - 1] = c.code
        return v

    def image(s: Poly) -> Poly:
        return s + p_compose(Poly.monomial(F, Q), s)

    basis = RowReducer(F, d)
    for i in range(1, d // Q + 1):
        basis.insert(vec(image(Poly.monomial(F, i))))
    probe = RowReducer(F, d)
    for coeffs in itertools.product(range(F.q), repeat=probe_degree):
        s = Poly(F, [(k + 1, F.from_code(c)) for k, c in enumerate(coeffs)])
        if s:
            probe.insert(vec(image(s)))
    low = RowReducer(F, d)
    for i in range(1, probe_degree + 1):
        low.insert(vec(image(Poly.monomial(F, i))))
    probe_agrees = probe.dim == low.dim and all(not low.reduce(r[None, :]).any() for r in probe.rows)
    if not probe_agrees:
        raise AssertionError("substitution images disagree with the additive spanning set")
    inside = not basis.reduce(vec(target)[None, :]).any()
    detail = {"target": str(target), "generator": f"x + x^{Q}", "degree_bound": d,
              "spanning_vectors": basis.dim, "probe_degree": probe_degree,
              "probe_substitutions": F.q ** probe_degree - 1, "member": inside}
    return inside, detail


# ---- bases ------------------------------------------------------------------------

def suite_bases(
    q: int, n: int = 1, strategy: Optional[str] = None, seed: int = 0, stall: Optional[int] = None, threads=None
) -> SuiteReport:
    F = field_of_order(q)
    ctx = quot_ctx(F, n)
    Q, D = q ** n, ctx.D
    rep = SuiteReport(
        "bases", {"q": q, "n": n, "strategy": strategy or "auto", "seed": seed, "stall": stall}, F.to_json()
    )
    E = en_set(F, n)
    U = un_basis(F, n, D)

    def un_check():
        nonzero = [i for i, u in enumerate(U) if not project(u, ctx).is_zero()]
        degrees = [u.degree for u in U]
        distinct = len(set(degrees)) == len(degrees)
        ok = not nonzero and distinct
        return ("pass" if ok else "fail", {"elements": len(U), "distinct_degrees": distinct},
                None if ok else {"nonvanishing_indices": nonzero})

    rep.add("un-basis", un_check)

    spanE = _span(ctx, E)

    def en_check():
        degrees = [e.degree for e in E] + [u.degree for u in U]
        distinct = len(set(degrees)) == len(degrees)
        ok = spanE.dim() == len(E) == en_size(q, n) and distinct
        detail = {"size": len(E), "expected": en_size(q, n), "rank_in_quotient": spanE.dim(),
                  "distinct_degrees_with_un": distinct}
        return ("pass" if ok else "fail", detail)

    rep.add("en-independent", en_check)

    strat = pick_strategy(strategy, ctx, seed, stall, fallback=False)
    closure_box: dict = {}

    def decomposition():
        B, cert = _closure(wn_generators(F, n), ctx, strat, threads)
        closure_box["B"] = B
        rep.certificates[f"q{q}-n{n}"] = cert
        inside = bool(spanE.contains_rows(B.matrix).all())
        detail = {"closure_dim": B.dim(), "en_span_dim": spanE.dim(), "strategy": strat.to_json()}
        if B == spanE:
            return ("pass", detail)
        if not inside:
            return ("fail", detail, {"closure_rows_outside_en_span": B.to_json()})
        return ("fail" if strat.exact else "inconclusive", detail)

    rep.add("wn-decomposition", decomposition)

    def codim():
        if "B" not in closure_box:
            raise ClosureError("closure unavailable: search space too large")
        B = closure_box["B"]
        got, want = D - B.dim(), comb(Q, 2)
        detail = {"D": D, "closure_dim": B.dim(), "codimension": got, "expected": want}
        if got == want:
            return ("pass", detail)
        return ("fail" if strat.exact else "inconclusive", detail)

    rep.add("codimension", codim)

    def complement():
        spanY = _span(ctx, yn_set(F, n))
        total = sp_sum(spanY, spanE)
        meet = sp_intersection(spanY, spanE)
        ok = total.dim() == D and meet.dim() == 0 and spanY.dim() == comb(Q, 2)
        return ("pass" if ok else "fail",
                {"yn_dim": spanY.dim(), "sum_dim": total.dim(), "intersection_dim": meet.dim(), "D": D})

    rep.add("yn-complement", complement)
    return rep


# ---- random-element properties of W_n --------------------------------------------

def _first_bad(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(~mask)
    return int(bad[0]) if bad.size else None


def _random_pairs(ctx: QuotCtx, trials: int, rng: np.random.Generator):
    return (rng.integers(0, ctx.q, size=(trials, ctx.D), dtype=np.int64),
            rng.integers(0, ctx.q, size=(trials, ctx.D), dtype=np.int64))


def _frob(ctx: QuotCtx, A: np.ndarray, k: int) -> np.ndarray:
    """Rows of A raised to the power q^k (coefficients are fixed by Frobenius)."""
    out = np.zeros_like(A)
    out[:, ctx.frobenius_perm(k)] = A
    return out


def _mul(ctx: QuotCtx, A: np.ndarray, B: np.ndarray, chunk: int = 256) -> np.ndarray:
    return np.concatenate([ctx.mul_rows(A[i : i + chunk], B[i : i + chunk]) for i in range(0, len(A), chunk)])


LIFT_LIMIT = 255


def suite_wn_props(q: int, n: int = 1, trials: int = 1000, seed: int = 42) -> SuiteReport:
    F = field_of_order(q)
    ctx = quot_ctx(F, n)
    rep = SuiteReport("wn-props", {"q": q, "n": n, "trials": trials, "seed": seed}, F.to_json())
    W = _span(ctx, en_set(F, n))
    rng = np.random.Generator(np.random.PCG64(seed))
    Uc, Vc = _random_pairs(ctx, trials, rng)
    Uq, Vq = _frob(ctx, Uc, n), _frob(ctx, Vc, n)

    def verdict(vals: np.ndarray, **named):
        mask = W.contains_rows(vals)
        k = _first_bad(mask)
        detail = {"trials": trials, "members": int(mask.sum())}
        if k is None:
            return ("pass", detail)
        return ("fail", detail, {name: _codes(arr[k]) for name, arr in named.items()})

    rep.add("fundamental-wn", lambda: verdict(
        ctx.add_rows(_mul(ctx, Uc, Vq), _mul(ctx, Uq, Vc)), u=Uc, v=Vc))

    def un_in_wn():
        Uqq = _frob(ctx, Uc, 2 * n)
        vals = _mul(ctx, ctx.sub_rows(Uc, Uqq), Vc)
        status, detail, *cex = verdict(vals, u=Uc, v=Vc)
        detail["vanishes_in_quotient"] = not vals.any()
        # lift to A_(2n), where U_n has a nonzero image, when that stays small
        ctx2 = None
        try:
            ctx2 = quot_ctx(F, 2 * n)
        except OverflowError:
            pass
        if ctx2 is None or ctx2.D > LIFT_LIMIT:
            detail["lifted"] = None
            return (status, detail, *cex)
        Qsq = q ** (2 * n)
        W2 = EchelonBasis.span(
            ctx2,
            [project(e, ctx2) for e in en_set(F, n)] + [project(u, ctx2) for u in un_basis(F, n, ctx2.D)],
        )
        U2, V2 = _random_pairs(ctx2, trials, rng)
        vals2 = _mul(ctx2, ctx2.sub_rows(U2, _frob(ctx2, U2, 2 * n)), V2)
        mask2 = W2.contains_rows(vals2)
        detail["lifted"] = {"level": 2 * n, "D": ctx2.D, "image_dim": W2.dim(), "members": int(mask2.sum()),
                            "exponent": Qsq}
        k = _first_bad(mask2)
        if status == "pass" and k is not None:
            return ("fail", detail, {"lifted_u": _codes(U2[k]), "lifted_v": _codes(V2[k])})
        return (status, detail, *cex)

    rep.add("un-in-wn", un_in_wn)

    def subalgebra():
        rows = W.matrix
        A = np.zeros((trials, ctx.D), dtype=np.int64)
        B = np.zeros((trials, ctx.D), dtype=np.int64)
        CA = rng.integers(0, q, size=(trials, len(rows)), dtype=np.int64)
        CB = rng.integers(0, q, size=(trials, len(rows)), dtype=np.int64)
        for i, row in enumerate(rows):
            A = ctx.add_rows(A, ctx.scale_rows(CA[:, i : i + 1], row[None, :]))
            B = ctx.add_rows(B, ctx.scale_rows(CB[:, i : i + 1], row[None, :]))
        return verdict(_mul(ctx, A, B), w1=A, w2=B)

    rep.add("subalgebra", subalgebra)

    def product_closure():
        left = ctx.add_rows(Uc, Uq)
        vpow = _mul(ctx, Vq, Vc)
        return verdict(_mul(ctx, left, vpow), u=Uc, v=Vc)

    rep.add("product-closure", product_closure)
    return rep


# ---- containment W_(2^r m) in W_(2^r) ----------------------------------------------

def _membership(gens, target, ctx: QuotCtx, strategy: ClosureStrategy, threads=None) -> tuple[str, dict]:
    B, cert = _closure(gens, ctx, strategy, threads)
    inside = sp_contains(B, project(target, ctx) if isinstance(target, Poly) else target)
    detail = {"closure_dim": B.dim(), "strategy": strategy.to_json()}
    if inside:
        return "pass", detail
    return ("fail" if strategy.exact else "inconclusive"), detail


def suite_containment(
    q: int, r: int = 0, m: int = 3, strategy: Optional[str] = None, seed: int = 0, stall: Optional[int] = None,
    threads=None,
) -> SuiteReport:
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 1, got {m}")
    if r < 0:
        raise ValueError("r must be >= 0")
    F = field_of_order(q)
    N = 2 ** r
    ctx = quot_ctx(F, N)
    big = q ** (N * m)
    if big + 1 > MAX_EXPONENT:
        raise OverflowError(f"q^(2^r m) = {q}^{N * m} exceeds the exponent range")
    rep = SuiteReport("containment", {"q": q, "r": r, "m": m, "strategy": strategy or "auto", "seed": seed,
                                      "stall": stall}, F.to_json())
    strat = pick_strategy(strategy, ctx, seed, stall)

    def part_i():
        rows = []
        ok = True
        for k in range(3, m + 1):
            a, b = nf_exp(q ** (N * k), ctx), nf_exp(q ** (N * (k - 2)), ctx)
            rows.append({"m": k, "nf": a, "nf_m_minus_2": b})
            ok &= a == b
        odd_ok = nf_exp(big, ctx) == nf_exp(q ** N, ctx)
        detail = {"levels": rows, "odd_m_collapses_to_q^(2^r)": odd_ok}
        return ("pass" if ok and odd_ok else "fail", detail)

    rep.add("containment-i", part_i)

    def part_ii():
        gen = Poly(F, [(1, 1), (q ** N, 1)])
        target = Poly(F, [(1, 1), (big, (-1) ** (m + 1))])
        telescoped = Poly.zero(F)
        for k in range(m):
            telescoped = telescoped + p_compose(gen, Poly.monomial(F, q ** (N * k))) * ((-1) ** k)
        exact = telescoped == target
        status, detail = _membership([gen], target, ctx, strat, threads)
        detail["telescoping_identity"] = exact
        if not exact:
            return ("fail", detail, {"telescoped": str(telescoped), "target": str(target)})
        return (status, detail)

    rep.add("containment-ii", part_ii)

    def containment():
        gens = [Poly(F, [(1, 1), (big, 1)]), Poly.monomial(F, big + 1)]
        B, _ = _closure(wn_generators(F, N), ctx, strat, threads)
        flags = [sp_contains(B, project(g, ctx)) for g in gens]
        detail = {"closure_dim": B.dim(), "generators_inside": flags, "strategy": strat.to_json(),
                  "projected": [str(project(g, ctx)) for g in gens]}
        if all(flags):
            return ("pass", detail)
        return ("fail" if strat.exact else "inconclusive", detail)

    rep.add("containment", containment)
    return rep


# ---- W_(2^r) + W_(2^s) ------------------------------------------------------------------

def suite_sum(
    q: int, r: int = 0, s: int = 1, strategy: Optional[str] = None, seed: int = 0, stall: Optional[int] = None,
    threads=None,
) -> SuiteReport:
    if not s > r >= 0:
        raise ValueError(f"need s > r >= 0, got r={r}, s={s}")
    F = field_of_order(q)
    ctx = quot_ctx(F, 2 ** s)
    strat = pick_strategy(strategy, ctx, seed, stall, fallback=True)
    rep = SuiteReport("sum", {"q": q, "r": r, "s": s, "strategy": strategy or "auto", "seed": seed,
                              "stall": stall}, F.to_json())
    box: dict = {}

    def full():
        B1, c1 = _closure(wn_generators(F, 2 ** r), ctx, strat, threads)
        B2, c2 = _closure(wn_generators(F, 2 ** s), ctx, strat, threads)
        total = sp_sum(B1, B2)
        cert = merge_certificates(c1, c2)
        box["cert"] = cert
        rep.certificates[f"q{q}-r{r}-s{s}"] = cert
        detail = {"D": ctx.D, "dim_small_level": B1.dim(), "dim_large_level": B2.dim(), "sum_dim": total.dim(),
                  "strategy": strat.to_json()}
        if total.dim() == ctx.D:
            return ("pass", detail)
        return ("fail" if strat.exact else "inconclusive", detail)

    rep.add("sum", full)

    def certificate():
        if "cert" not in box:
            raise ClosureError("no certificate: closure was not computed")
        cert = box["cert"]
        ok = cert.claim == "full" and verify_certificate(Certificate.from_json(cert.to_json()))
        detail = {"claim": cert.claim, "dim": cert.dim, "witnesses": len(cert.witnesses)}
        if ok:
            return ("pass", detail)
        return ("fail" if cert.claim == "full" or strat.exact else "inconclusive", detail)

    rep.add("sum-certificate", certificate)
    return rep


# ---- maximality of W_1 ----------------------------------------------------------------

def _nonzero_combinations(F: FieldSpec, basis: list[Poly]):
    for codes in itertools.product(range(F.q), repeat=len(basis)):
        if not any(codes):
            continue
        f = Poly.zero(F)
        for c, b in zip(codes, basis):
            if c:
                f = f + b * F.from_code(c)
        yield codes, f


def _augmented(F, n, f, ctx, strat, threads):
    B, cert = _closure(wn_generators(F, n) + [f], ctx, strat, threads)
    return B, prune_certificate(cert)


def suite_maximality_w1(
    q: int, strategy: Optional[str] = None, seed: int = 0, stall: Optional[int] = None, n: int = 1, threads=None
) -> SuiteReport:
    F = field_of_order(q)
    ctx = quot_ctx(F, n)
    rep = SuiteReport("maximality", {"q": q, "n": n, "strategy": strategy or "auto", "seed": seed,
                                     "stall": stall}, F.to_json())
    strat = pick_strategy(strategy, ctx, seed, stall, fallback=False)
    if n != 1:
        _explore(rep, F, n, ctx, strat, threads)
        return rep

    def run_family(label: str, basis: list[Poly]):
        def fn():
            count = full = 0
            bad, stalled, unverified = None, [], []
            for k, (codes, f) in enumerate(_nonzero_combinations(F, basis)):
                B, cert = _augmented(F, 1, f, ctx, strat, threads)
                rep.certificates[f"q{q}-{label}-{k:04d}"] = cert
                count += 1
                if B.dim() == ctx.D:
                    if verify_certificate(Certificate.from_json(cert.to_json())):
                        full += 1
                    else:
                        unverified.append(codes)
                elif strat.exact and bad is None:
                    bad = {"f": str(f), "coefficients": list(codes), "dim": B.dim()}
                else:
                    stalled.append({"coefficients": list(codes), "dim": B.dim()})
            detail = {"elements": count, "full": full, "D": ctx.D, "basis": [str(b) for b in basis],
                      "strategy": strat.to_json()}
            if bad is not None or unverified:
                return ("fail", detail, bad or {"unverified_certificates": unverified})
            if stalled:
                detail["stalled"] = stalled
                return ("inconclusive", detail)
            return ("pass", detail)

        return fn

    for r in range(1, q):
        rep.add(f"maximality-class-{r}", run_family(f"r{r}", b1r_set(F, r)), key="maximality-class")
    if q <= 3:
        rep.add("maximality-all", run_family("all", yn_set(F, 1)))
    return rep


def _explore(rep: SuiteReport, F, n, ctx, strat, threads) -> None:
    def fn():
        dims = {}
        for f in yn_set(F, n):
            B, _ = _augmented(F, n, f, ctx, strat, threads)
            dims[str(f)] = B.dim()
        return ("info", {"D": ctx.D, "dims": dims, "strategy": strat.to_json(),
                         "note": "exploratory; not a verified claim"})

    rep.add("maximality-explore", fn)


# ---- non-membership claims ------------------------------------------------------------

def suite_summary(q: int, threads=None) -> SuiteReport:
    F = field_of_order(q)
    rep = SuiteReport("summary", {"q": q, "strategy": "exhaustive"}, F.to_json())
    exact = ClosureStrategy.exhaustive()

    def nonmember(gens, target, ctx):
        def fn():
            B, _ = _closure(gens, ctx, exact, threads)
            inside = sp_contains(B, project(target, ctx))
            detail = {"D": ctx.D, "closure_dim": B.dim(), "target": str(target),
                      "generators": [str(g) for g in gens], "substitutions": ctx.q ** ctx.D}
            if inside:
                return ("fail", detail, {"member": str(target), "closure": B.to_json()})
            return ("pass", detail)

        return fn

    def power_in_quotient(level, ctx):
        # U_N is not inside {x + x^Q}^S, so membership in the quotient image
        # does not refute the claim; only non-membership carries over.
        Q = q ** level
        gen, target = Poly(F, [(1, 1), (Q, 1)]), Poly.monomial(F, Q + 1)

        def fn():
            B, _ = _closure([gen], ctx, exact, threads)
            inside = sp_contains(B, project(target, ctx))
            detail = {"D": ctx.D, "closure_dim": B.dim(), "target": str(target), "generators": [str(gen)],
                      "substitutions": ctx.q ** ctx.D, "quotient_member": inside}
            if inside:
                detail["reason"] = "target lies in the image modulo U_N, which is not contained in the T-space"
                return ("inconclusive", detail)
            return ("pass", detail)

        return fn

    def power_exact(level):
        Q = q ** level

        def fn():
            inside, detail = frobenius_sum_contains(Poly.monomial(F, Q + 1), Q)
            return ("fail" if inside else "pass", detail)

        return fn

    for level in (1, 2):
        try:
            ctx = quot_ctx(F, level)
        except OverflowError:
            ctx = None
        if ctx is not None and (level == 1 or exact.admissible(ctx)):
            rep.add(f"nonmember-power-N{level}", power_in_quotient(level, ctx), key="nonmember-power")
        rep.add(f"nonmember-power-exact-N{level}", power_exact(level), key="nonmember-power")

    if F.p == 2:
        ctx2 = quot_ctx(F, 2)
        rep.add("nonmember-p2", nonmember(wn_generators(F, 2), Poly(F, [(1, 1), (q, 1)]), ctx2))

        def coincide():
            other = [Poly(F, [(1, 1), (q, 1)]), Poly.monomial(F, q + 1)]
            same = other == wn_generators(F, 1)
            return ("pass" if same else "fail", {"generators": [str(g) for g in other]})

        rep.add("p2-coincide", coincide)

        def inclusion():
            bigger = [Poly(F, [(1, 1), (q, 1)]), Poly.monomial(F, q ** 2 + 1)]
            B, _ = _closure(bigger, ctx2, exact, threads)
            flags = [sp_contains(B, project(g, ctx2)) for g in wn_generators(F, 2)]
            return ("pass" if all(flags) else "fail", {"closure_dim": B.dim(), "generators_inside": flags})

        rep.add("p2-inclusion", inclusion)
    return rep


SUITES = {
    "bases": suite_bases,
    "wn-props": suite_wn_props,
    "containment": suite_containment,
    "sum": suite_sum,
    "maximality": suite_maximality_w1,
    "summary": suite_summary,
}
