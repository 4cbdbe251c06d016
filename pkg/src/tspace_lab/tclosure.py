"""T-space and T-ideal closures inside A_n, with replayable certificates.

The T-space generated by ``gens`` (together with U_n) has image in A_n equal
to the span of ``g(s)`` over generators ``g`` and all substitutions ``s`` in
A_n.  Strategies differ only in which substitutions are tried:

* exhaustive: all q^D vectors in lexicographic order, zero vector first.
  Exact, and the only strategy whose negative answers mean anything.
* randomized: the identity first, then seeded uniform samples; stops after a
  run of ``stall_threshold`` consecutive absorbed images.  A lower bound.
* degree_capped: every substitution with at most ``max_terms`` nonzero
  coefficients.  Also a lower bound.

Candidate images may be computed on worker threads, but they are always
inserted in the fixed enumeration order, so results do not depend on the
thread count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .gf import FieldSpec
from .poly import Poly
from .quotient import QuotCtx, QuotElt, as_quot, project, q_compose, q_mul, quot_ctx
from .subspace import EchelonBasis, RowReducer

DEFAULT_BOUND = 2 ** 25
RANDOM_BATCH = 256
THREADS_ENV = "TSPACE_LAB_THREADS"


class ClosureError(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class ClosureStrategy:
    kind: str = "exhaustive"
    seed: int = 0
    stall_threshold: Optional[int] = None
    max_terms: Optional[int] = None
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.kind not in ("exhaustive", "randomized", "degree_capped"):
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.kind == "degree_capped" and not self.max_terms:
            raise ValueError("degree_capped needs max_terms >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @classmethod
    def exhaustive(cls, bound: int = DEFAULT_BOUND) -> "ClosureStrategy":
        return cls("exhaustive", bound=bound)

    @classmethod
    def randomized(cls, seed: int = 0, stall_threshold: Optional[int] = None) -> "ClosureStrategy":
        return cls("randomized", seed=seed, stall_threshold=stall_threshold)

    @classmethod
    def degree_capped(cls, max_terms: int, bound: int = DEFAULT_BOUND) -> "ClosureStrategy":
        return cls("degree_capped", max_terms=max_terms, bound=bound)

    @property
    def exact(self) -> bool:
        return self.kind == "exhaustive"

    def candidate_count(self, ctx: QuotCtx) -> int:
        if self.kind == "exhaustive":
            return ctx.q ** ctx.D
        if self.kind == "degree_capped":
            k = min(self.max_terms, ctx.D)
            return sum(math.comb(ctx.D, t) * (ctx.q - 1) ** t for t in range(1, k + 1))
        return 0

    def admissible(self, ctx: QuotCtx) -> bool:
        return self.kind == "randomized" or self.candidate_count(ctx) <= self.bound

    def stall_for(self, ctx: QuotCtx) -> int:
        return self.stall_threshold if self.stall_threshold is not None else 64 * ctx.D

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "randomized":
            out["seed"] = self.seed
            out["stall_threshold"] = self.stall_threshold
        if self.kind == "degree_capped":
            out["max_terms"] = self.max_terms
        return out


@dataclass(frozen=True)
class Witness:
    """The image ``gen(sub)``, times ``mul`` when present (T-ideal closures)."""

    gen: int
    sub: QuotElt
    mul: Optional[QuotElt] = None

    def to_json(self) -> dict:
        out = {"gen": self.gen, "sub": [int(c) for c in self.sub.coeffs]}
        if self.mul is not None:
            out["mul"] = [int(c) for c in self.mul.coeffs]
        return out


@dataclass
class Certificate:
    field: FieldSpec
    n: int
    generators: list[Poly]
    witnesses: list[Witness]
    dim: int
    claim: str = "spans"

    @property
    def ctx(self) -> QuotCtx:
        return quot_ctx(self.field, self.n)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "dim": self.dim,
            "claim": self.claim,
            "generators": [g.to_json() for g in self.generators],
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            F = FieldSpec.from_json(data["field"])
            n = int(data["n"])
            ctx = quot_ctx(F, n)
            gens = [Poly.from_json(F, g) for g in data["generators"]]
            wits = []
            for w in data["witnesses"]:
                gi = w["gen"]
                if not isinstance(gi, int) or isinstance(gi, bool) or not 0 <= gi < len(gens):
                    raise CertificateError(f"witness generator index {gi!r} out of range")
                mul = QuotElt(ctx, w["mul"]) if w.get("mul") is not None else None
                wits.append(Witness(gi, QuotElt(ctx, w["sub"]), mul))
            claim = data.get("claim", "spans")
            if claim not in ("full", "spans"):
                raise CertificateError(f"unknown claim {claim!r}")
            return cls(F, n, gens, wits, int(data["dim"]), claim)
        except CertificateError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from exc


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1").strip() or "1"
    n = int(raw)
    return (os.cpu_count() or 1) if n <= 0 else n


# ---- substitution sources ---------------------------------------------------

def _lex_block(ctx: QuotCtx, start: int, stop: int) -> np.ndarray:
    """Substitutions number start..stop-1 in lexicographic order (x-coefficient most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    weights = ctx.q ** np.arange(ctx.D - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % ctx.q


def _chunk_size(ctx: QuotCtx) -> int:
    return int(min(4096, max(1, 2 ** 18 // ctx.D)))


def _exhaustive_blocks(ctx: QuotCtx) -> Iterator[np.ndarray]:
    total = ctx.q ** ctx.D
    step = _chunk_size(ctx)
    for start in range(0, total, step):
        yield _lex_block(ctx, start, min(total, start + step))


def _capped_blocks(ctx: QuotCtx, max_terms: int) -> Iterator[np.ndarray]:
    step = _chunk_size(ctx)
    buf: list[np.ndarray] = []
    for t in range(1, min(max_terms, ctx.D) + 1):
        for pos in itertools.combinations(range(ctx.D), t):
            for vals in itertools.product(range(1, ctx.q), repeat=t):
                v = np.zeros(ctx.D, dtype=np.int64)
                v[list(pos)] = vals
                buf.append(v)
                if len(buf) == step:
                    yield np.stack(buf)
                    buf = []
    if buf:
        yield np.stack(buf)


def _random_blocks(ctx: QuotCtx, seed: int) -> Iterator[np.ndarray]:
    yield ctx.x().coeffs[None, :].copy()
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        yield rng.integers(0, ctx.q, size=(RANDOM_BATCH, ctx.D), dtype=np.int64)


def _blocks(ctx: QuotCtx, strategy: ClosureStrategy) -> Iterator[np.ndarray]:
    if strategy.kind == "exhaustive":
        return _exhaustive_blocks(ctx)
    if strategy.kind == "degree_capped":
        return _capped_blocks(ctx, strategy.max_terms)
    return _random_blocks(ctx, strategy.seed)


def _ordered_map(fn: Callable, items: Iterator, threads: int) -> Iterator:
    """``map(fn, items)`` evaluated ``threads`` at a time, results in input order."""
    if threads <= 1:
        for it in items:
            yield fn(it)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            window = list(itertools.islice(items, threads))
            if not window:
                return
            yield from pool.map(fn, window)


# ---- the saturation loop ----------------------------------------------------

@dataclass
class _State:
    ctx: QuotCtx
    red: RowReducer
    witnesses: list[Witness] = dc_field(default_factory=list)
    images: list[np.ndarray] = dc_field(default_factory=list)
    stall: int = 0
    stopped: bool = False

    @property
    def full(self) -> bool:
        return self.red.dim == self.ctx.D


def _feed(state: _State, V: np.ndarray, describe: Callable[[int], Witness], stall_limit: Optional[int]) -> None:
    """Insert rows of ``V`` in order, recording a witness for every growth."""
    red = state.red
    rem = red.reduce(V)
    offset = 0
    while rem.shape[0]:
        nz = np.flatnonzero(rem.any(axis=1))
        if nz.size == 0:
            state.stall += rem.shape[0]
            break
        k = int(nz[0])
        if stall_limit is not None and state.stall + k >= stall_limit:
            state.stopped = True
            return
        state.stall = 0
        piv = red.insert_reduced(rem[k])
        state.witnesses.append(describe(offset + k))
        state.images.append(V[offset + k].copy())
        if state.full:
            state.stopped = True
            return
        rem = red._eliminate(rem[k + 1 :], red.rows[red.pivots.index(piv)], piv)
        offset += k + 1
    if stall_limit is not None and state.stall >= stall_limit:
        state.stopped = True


def _substitution_pass(
    state: _State,
    gen_vecs: Sequence[np.ndarray],
    describe: Callable[[int, QuotElt], Witness],
    strategy: ClosureStrategy,
    threads: int,
) -> None:
    ctx = state.ctx
    G = len(gen_vecs)
    stall_limit = strategy.stall_for(ctx) if strategy.kind == "randomized" else None
    state.stall = 0
    state.stopped = state.full

    def images(S: np.ndarray):
        out = np.stack([ctx.compose_rows(f, S) for f in gen_vecs], axis=1)
        return S, out.reshape(-1, ctx.D)

    for S, V in _ordered_map(images, _blocks(ctx, strategy), threads):
        if state.stopped:
            break
        _feed(
            state,
            V,
            lambda k, S=S: describe(k % G, QuotElt(ctx, S[k // G])),
            stall_limit,
        )


def _check_gens(gens, ctx: QuotCtx, strategy: ClosureStrategy) -> list[QuotElt]:
    if not gens:
        raise ClosureError("empty generator list")
    if not strategy.admissible(ctx):
        raise ClosureError(
            f"search space too large: {strategy.candidate_count(ctx)} candidates exceed {strategy.bound}"
        )
    return [as_quot(g, ctx) for g in gens]


def _certificate(ctx: QuotCtx, gens, state: _State) -> Certificate:
    polys = [g if isinstance(g, Poly) else g.to_poly() for g in gens]
    dim = state.red.dim
    claim = "full" if dim == ctx.D else "spans"
    return Certificate(ctx.field, ctx.n, polys, list(state.witnesses), dim, claim)


def s_closure(
    gens: Sequence[Union[Poly, QuotElt]],
    ctx: QuotCtx,
    strategy: ClosureStrategy = ClosureStrategy(),
    threads: Optional[int] = None,
) -> tuple[EchelonBasis, Certificate]:
    """Image in A_n of the T-space generated by ``gens`` (plus U_n)."""
    qgens = _check_gens(gens, ctx, strategy)
    threads = worker_count() if threads is None else threads
    state = _State(ctx, RowReducer(ctx.field, ctx.D))
    _substitution_pass(
        state,
        [g.coeffs for g in qgens],
        lambda gi, s: Witness(gi, s),
        strategy,
        threads,
    )
    return EchelonBasis.from_reducer(ctx, state.red), _certificate(ctx, gens, state)


def t_closure(
    gens: Sequence[Union[Poly, QuotElt]],
    ctx: QuotCtx,
    strategy: ClosureStrategy = ClosureStrategy(),
    threads: Optional[int] = None,
) -> tuple[EchelonBasis, Certificate]:
    """Image in A_n of the T-ideal generated by ``gens`` (plus U_n).

    Alternates a substitution pass with a pass multiplying by the monomials
    x..x^(D-1) until neither grows the span.  Every witness stays of the form
    ``gen(sub) * mul``: substituting ``s`` into it gives
    ``gen(sub(s)) * mul(s)`` and multiplying by ``x^a`` gives ``mul * x^a``.
    """
    qgens = _check_gens(gens, ctx, strategy)
    threads = worker_count() if threads is None else threads
    state = _State(ctx, RowReducer(ctx.field, ctx.D))
    D = ctx.D
    _substitution_pass(state, [g.coeffs for g in qgens], lambda gi, s: Witness(gi, s), strategy, threads)
    done_mul = 0
    while state.witnesses and not state.full:
        before = state.red.dim
        # multiplication pass: x^a * v is a cyclic shift of v by a places
        while done_mul < len(state.witnesses) and not state.full:
            w, img = state.witnesses[done_mul], state.images[done_mul]
            done_mul += 1
            V = np.stack([np.roll(img, a) for a in range(1, D)]) if D > 1 else np.zeros((0, D), dtype=np.int64)

            def describe(k, w=w):
                xa = ctx.monomial(k + 1)
                return Witness(w.gen, w.sub, xa if w.mul is None else q_mul(w.mul, xa))

            state.stall = 0
            _feed(state, V, describe, None)
        if state.full:
            break
        # substitution pass over the current witnesses as generators
        snapshot = list(state.witnesses)

        def describe_sub(wi, s, snapshot=snapshot):
            w = snapshot[wi]
            mul = None if w.mul is None else q_compose(w.mul, s)
            return Witness(w.gen, q_compose(w.sub, s), mul)

        _substitution_pass(state, [v for v in state.images[: len(snapshot)]], describe_sub, strategy, threads)
        if state.red.dim == before:
            break
    return EchelonBasis.from_reducer(ctx, state.red), _certificate(ctx, gens, state)


def witness_image(cert: Certificate, w: Witness) -> QuotElt:
    ctx = cert.ctx
    img = q_compose(project(cert.generators[w.gen], ctx), w.sub)
    if w.mul is not None:
        img = q_mul(img, w.mul)
    return img


def replay(cert: Certificate) -> EchelonBasis:
    """Span of the witness images, computed without any search."""
    ctx = cert.ctx
    red = RowReducer(ctx.field, ctx.D)
    for w in cert.witnesses:
        if not 0 <= w.gen < len(cert.generators):
            raise CertificateError(f"witness generator index {w.gen} out of range")
        red.insert(witness_image(cert, w).coeffs)
    return EchelonBasis.from_reducer(ctx, red)


def verify_certificate(cert: Union[Certificate, dict]) -> bool:
    """Replay the witnesses and confirm the claimed dimension (and fullness)."""
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    basis = replay(cert)
    if basis.dim() < cert.dim:
        return False
    if cert.claim == "full":
        return basis.dim() == cert.ctx.D
    return True


def prune_certificate(cert: Certificate) -> Certificate:
    """Keep only the witnesses that enlarge the span when replayed in order."""
    ctx = cert.ctx
    red = RowReducer(ctx.field, ctx.D)
    kept = []
    for w in cert.witnesses:
        if not red.insert(witness_image(cert, w).coeffs):
            kept.append(w)
    dim = red.dim
    return Certificate(cert.field, cert.n, cert.generators, kept, dim, "full" if dim == ctx.D else "spans")


def merge_certificates(a: Certificate, b: Certificate) -> Certificate:
    """One certificate for the sum of two closures over the same A_n."""
    if (a.field, a.n) != (b.field, b.n):
        raise CertificateError("certificates over different quotients")
    off = len(a.generators)
    wits = list(a.witnesses) + [Witness(w.gen + off, w.sub, w.mul) for w in b.witnesses]
    merged = Certificate(a.field, a.n, a.generators + b.generators, wits, 0)
    return prune_certificate(merged)
