"""Top-level partitioner.

Pipeline: split vertices into a high-degree core X and the rest Y, solve the
minimum-gap partition of X, derive the structured candidate partitions keyed
by the huge-vertex layout, extend each candidate over Y by independent random
assignment (side 1 with probability p) across repeated trials, polish the best
trial with single-vertex flips, and keep the overall best by min{e12, e21}.

Dense or degree-flat instances skip the split entirely: when m >= 8n/eps^2 or
max degree <= eps^2 m / 4, a plain p = 1/2 random bipartition already
concentrates, so the engine runs the empty-X candidate alone. The same
shortcut triggers unconditionally once m >= 6272 n (the eps = 1/28 instance of
the first branch).

Randomness contract: trial t of candidate labeled L draws its stream from
(seed, crc32(L), t), so results are reproducible and independent of execution
order; --threads only changes wall time.

Candidate labels and their p:

- MINGAP: the gap solver's own (x1, x2), p = 1/2
- X1FWD: top-k huge and all non-huge forward, bottom k+1 huge backward, 1/2
- X2SIGN: k same-sign huge among the top 2k-1 forward plus non-huge forward,
  rest backward, p = (d-1)/(2d)
- X3SIGN: the same selected set plus non-huge literally on side 1, rest
  backward, p = (d-1)/(2d)
- X4, X5 (d = 4, k = 1 only): p = 5/14 shapes; X5 sides with the huge vertex
  carrying the most balanced arc mass toward Y
- SINGLE-HUGE (|huge| = 1): the lone huge vertex forward, the rest of X
  backward, p = 1/2

"Forward" placement sends a vertex to side 1 when splus > 0 and side 2
otherwise; "backward" mirrors it. Vertices with splus = 0 always sit on
side 2.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from zlib import crc32

import numpy as np

from . import certify as certify_mod
from .certify import Certificate
from .digraph import (
    Bipartition,
    CutValue,
    Digraph,
    cut_counts,
    max_degree,
    min_outdegree,
)
from .errors import (
    EmptyGraphError,
    HugeSetEvenError,
    InputError,
    MinOutdegreeWarning,
    PartitionError,
)
from .gap import GapResult, min_gap_partition
from .tight import essential_tight_components

CANDIDATE_ORDER = ("MINGAP", "X1FWD", "X2SIGN", "X3SIGN", "X4", "X5", "SINGLE-HUGE")


@dataclass(frozen=True)
class EngineConfig:
    d: int
    epsilon: float = 0.01
    threshold_exponent: float = 0.75
    trials: int = 64
    seed: int = 0
    exhaustive_x_limit: int = 24
    state_limit: int = 10 ** 8
    local_improve_rounds: int = 10
    p_sweep: tuple[float, ...] = ()
    threads: int = 1

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InputError(f"d must be >= 1, got {self.d}")
        if not 0 < self.epsilon < 1:
            raise InputError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.threshold_exponent < 2:
            raise InputError(
                f"threshold_exponent must lie in (0, 2), got {self.threshold_exponent}"
            )
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise InputError(f"seed must be >= 0, got {self.seed}")
        if self.exhaustive_x_limit < 0 or self.state_limit < 0:
            raise InputError("limits must be >= 0")
        if self.local_improve_rounds < 0:
            raise InputError("local_improve_rounds must be >= 0")
        if self.threads < 1:
            raise InputError(f"threads must be >= 1, got {self.threads}")
        for p in self.p_sweep:
            if not 0 <= p <= 0.5:
                raise InputError(f"p_sweep values must lie in [0, 1/2], got {p}")


@dataclass(frozen=True)
class DegreeSplit:
    x: tuple[int, ...]
    y: tuple[int, ...]
    threshold: float


@dataclass(frozen=True)
class CandidateXPartition:
    label: str
    x1: tuple[int, ...]
    x2: tuple[int, ...]
    p: Fraction


@dataclass(frozen=True)
class CandidateRun:
    label: str
    p: Fraction
    cut: CutValue


@dataclass(frozen=True)
class PartitionOutcome:
    bipartition: Bipartition
    cut: CutValue
    ratio: float
    candidate_used: str
    certificate: Certificate
    guarantee_target: float
    d_configured: int
    d_actual: int
    shortcut: bool
    huge_even: bool
    x: tuple[int, ...]
    threshold: float | None
    per_candidate: tuple[CandidateRun, ...]
    warnings: tuple[str, ...] = field(default=())

    def to_jsonable(self) -> dict:
        return {
            "n": self.bipartition.n,
            "cut": {"e12": self.cut.e12, "e21": self.cut.e21, "min": self.cut.minval},
            "ratio": self.ratio,
            "candidate_used": self.candidate_used,
            "guarantee_target": self.guarantee_target,
            "d_configured": self.d_configured,
            "d_actual": self.d_actual,
            "shortcut": self.shortcut,
            "huge_even": self.huge_even,
            "x": list(self.x),
            "threshold": self.threshold,
            "per_candidate": [
                {
                    "label": r.label,
                    "p": str(r.p),
                    "e12": r.cut.e12,
                    "e21": r.cut.e21,
                    "min": r.cut.minval,
                }
                for r in self.per_candidate
            ],
            "side1": list(self.bipartition.side1()),
            "certificate": self.certificate.to_jsonable(),
            "warnings": list(self.warnings),
        }


def uniform_split_bound(n: int, m: int, max_deg: int, eps: float) -> bool:
    """True when a p = 1/2 uniform split already concentrates: m >= 8n/eps^2
    or max_deg <= eps^2 m / 4. Exact rational comparison on the float eps."""
    e = Fraction(eps)
    return m >= Fraction(8 * n) / (e * e) or max_deg <= e * e * m / 4


def uniform_split_applicable(D: Digraph, cfg: EngineConfig) -> bool:
    md = max_degree(D) if D.n else 0
    return uniform_split_bound(D.n, D.m, md, cfg.epsilon)


def split_by_degree(D: Digraph, cfg: EngineConfig) -> DegreeSplit:
    """X = vertices of total degree >= n^threshold_exponent, exact arithmetic."""
    if D.n == 0:
        raise EmptyGraphError("cannot split an empty graph")
    frac = Fraction(cfg.threshold_exponent).limit_denominator(64)
    p, q = frac.numerator, frac.denominator
    target = D.n ** p
    lo, hi = 0, 2 * D.n + 2  # degrees cannot exceed 2(n-1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** q >= target:
            hi = mid
        else:
            lo = mid + 1
    degs = D.degrees()
    xs = tuple(int(v) for v in np.flatnonzero(degs >= lo))
    ys = tuple(int(v) for v in np.flatnonzero(degs < lo))
    return DegreeSplit(x=xs, y=ys, threshold=float(D.n) ** cfg.threshold_exponent)


def mingap_candidate(gr: GapResult) -> CandidateXPartition:
    return CandidateXPartition("MINGAP", gr.x1, gr.x2, Fraction(1, 2))


def _splus(D: Digraph, v: int) -> int:
    return int(D.out_degrees[v] - D.in_degrees[v])


def _place(D: Digraph, forward, backward, literal_x1=()) -> tuple[tuple, tuple]:
    x1, x2 = set(literal_x1), set()
    for v in forward:
        (x1 if _splus(D, v) > 0 else x2).add(v)
    for v in backward:
        (x1 if _splus(D, v) < 0 else x2).add(v)
    return tuple(sorted(x1)), tuple(sorted(x2))


def candidate_x_partitions(
    D: Digraph, x, y, gr: GapResult, cfg: EngineConfig
) -> list[CandidateXPartition]:
    """Structured candidates for the given gap result; huge count must be odd."""
    huge = gr.huge
    if len(huge) % 2 == 0:
        raise HugeSetEvenError(
            f"|huge| = {len(huge)} is even; only the MINGAP candidate applies"
        )
    k = gr.k
    assert k is not None
    nonhuge = tuple(sorted(set(gr.x) - set(huge)))
    out = [mingap_candidate(gr)]
    d = cfg.d
    p_sign = Fraction(d - 1, 2 * d)

    fw = huge[:k] + nonhuge
    bw = huge[k:]
    out.append(CandidateXPartition("X1FWD", *_place(D, fw, bw), Fraction(1, 2)))

    if k >= 1:
        window = huge[: 2 * k - 1]
        nonneg = [v for v in window if _splus(D, v) >= 0]
        negs = [v for v in window if _splus(D, v) < 0]
        sel = tuple((nonneg if len(nonneg) >= k else negs)[:k])
        rest = tuple(v for v in huge if v not in set(sel))
        out.append(
            CandidateXPartition("X2SIGN", *_place(D, sel + nonhuge, rest), p_sign)
        )
        x1, x2 = _place(D, (), rest, literal_x1=sel + nonhuge)
        out.append(CandidateXPartition("X3SIGN", x1, x2, p_sign))

    if d == 4 and k == 1:
        p4 = Fraction(5, 14)
        out.append(
            CandidateXPartition("X4", *_place(D, (huge[0],) + nonhuge, huge[1:]), p4)
        )
        from .digraph import e_between

        balanced = [
            min(e_between(D, [v], y), e_between(D, list(y), [v])) for v in huge
        ]
        vi = huge[max(range(len(huge)), key=lambda i: (balanced[i], -i))]
        restv = tuple(v for v in huge if v != vi)
        x1, x2 = _place(D, (), restv, literal_x1=(vi,) + nonhuge)
        out.append(CandidateXPartition("X5", x1, x2, p4))

    if len(huge) == 1:
        x1, x2 = _place(D, (huge[0],), nonhuge)
        out.append(CandidateXPartition("SINGLE-HUGE", x1, x2, Fraction(1, 2)))

    seen: set = set()
    uniq = []
    for c in out:
        key = (c.x1, c.p)
        if key not in seen:
            seen.add(key)
            uniq.append(c)
    return uniq


def _trial_matrix(label: str, p: float, ysize: int, cfg: EngineConfig) -> np.ndarray:
    A = np.empty((cfg.trials, ysize), dtype=bool)
    tag = crc32(label.encode("utf-8"))
    for t in range(cfg.trials):
        rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, tag, t)))
        A[t] = rng.random(ysize) < p
    return A


_PAIR_LIMIT = 128  # two-flip escape scans vertex pairs; keep it off large graphs


def _refine(D: Digraph, bip: Bipartition, cfg: EngineConfig) -> Bipartition:
    out = local_improve(D, bip, cfg)
    if D.n <= _PAIR_LIMIT:
        out = _pair_escape(D, out, cfg)
    return out


def _pair_escape(D: Digraph, P: Bipartition, cfg: EngineConfig) -> Bipartition:
    """Flip two vertices at once to hop out of single-flip local optima.

    Quadratic scan, so callers gate it to small n. Every accepted move
    strictly raises (min cut, total cut), hence termination."""
    best = P
    c = cut_counts(D, best)
    key = (c.minval, c.e12 + c.e21)
    improved = True
    while improved:
        improved = False
        base = np.asarray(best.sides, dtype=np.uint8)
        for u in range(D.n - 1):
            for v in range(u + 1, D.n):
                trial = base.copy()
                trial[u] = 3 - trial[u]
                trial[v] = 3 - trial[v]
                q = Bipartition(trial)
                cq = cut_counts(D, q)
                if (cq.minval, cq.e12 + cq.e21) > key:
                    best = local_improve(D, q, cfg)
                    c = cut_counts(D, best)
                    key = (c.minval, c.e12 + c.e21)
                    improved = True
                    break
            if improved:
                break
    return best


def _check_extension_cover(D: Digraph, cand: CandidateXPartition, ys: list) -> None:
    xset = set(cand.x1) | set(cand.x2)
    if len(cand.x1) + len(cand.x2) != len(xset):
        raise PartitionError("candidate x1 and x2 overlap")
    if xset & set(ys) or len(xset) + len(ys) != D.n:
        raise PartitionError("x1, x2, Y must partition the vertex set")


def extension_trial_cuts(
    D: Digraph,
    cand: CandidateXPartition,
    y,
    cfg: EngineConfig,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-trial (e12, e21) for cfg.trials independent Y-assignments, plus the
    trial matrix itself (trials x |Y| booleans, True = side 1)."""
    ys = sorted(set(y))
    _check_extension_cover(D, cand, ys)
    side1x = np.zeros(D.n, dtype=bool)
    if cand.x1:
        side1x[list(cand.x1)] = True
    if not ys:
        P = Bipartition(np.where(side1x, 1, 2).astype(np.uint8))
        c = cut_counts(D, P)
        e12s = np.full(cfg.trials, c.e12, dtype=np.int64)
        e21s = np.full(cfg.trials, c.e21, dtype=np.int64)
        return e12s, e21s, np.empty((cfg.trials, 0), dtype=bool)

    yindex = np.full(D.n, -1, dtype=np.int64)
    yindex[ys] = np.arange(len(ys))
    in_y = yindex >= 0
    t, h = D.tails, D.heads
    ty, hy = in_y[t], in_y[h]
    t1 = side1x[t]
    h1 = side1x[h]
    cat_xx = ~ty & ~hy
    const12 = int(np.count_nonzero(cat_xx & t1 & ~h1))
    const21 = int(np.count_nonzero(cat_xx & ~t1 & h1))
    cols12_xy = yindex[h[~ty & hy & t1]]    # x1 -> y, cut when y on side 2
    cols21_xy = yindex[h[~ty & hy & ~t1]]   # x2 -> y, cut when y on side 1
    cols12_yx = yindex[t[ty & ~hy & ~h1]]   # y -> x2, cut when y on side 1
    cols21_yx = yindex[t[ty & ~hy & h1]]    # y -> x1, cut when y on side 2
    yy = ty & hy
    yy_t, yy_h = yindex[t[yy]], yindex[h[yy]]

    A = _trial_matrix(cand.label, float(cand.p), len(ys), cfg)
    e12s = (
        const12
        + (~A[:, cols12_xy]).sum(axis=1)
        + A[:, cols12_yx].sum(axis=1)
        + (A[:, yy_t] & ~A[:, yy_h]).sum(axis=1)
    )
    e21s = (
        const21
        + A[:, cols21_xy].sum(axis=1)
        + (~A[:, cols21_yx]).sum(axis=1)
        + (~A[:, yy_t] & A[:, yy_h]).sum(axis=1)
    )
    return e12s.astype(np.int64), e21s.astype(np.int64), A


def extend_partition_randomized(
    D: Digraph,
    cand: CandidateXPartition,
    y,
    cfg: EngineConfig,
    improve: bool = True,
) -> Bipartition:
    """Best-of-trials random extension of (x1, x2) over Y with P(side 1) = p."""
    ys = sorted(set(y))
    _check_extension_cover(D, cand, ys)
    sides = np.full(D.n, 2, dtype=np.uint8)
    if cand.x1:
        sides[list(cand.x1)] = 1
    if not ys:
        bip = Bipartition(sides)
        return _refine(D, bip, cfg) if improve else bip

    e12s, e21s, A = extension_trial_cuts(D, cand, ys, cfg)
    minvals = np.minimum(e12s, e21s)
    totals = e12s + e21s
    best = 0
    for tix in range(1, cfg.trials):
        if (minvals[tix], totals[tix]) > (minvals[best], totals[best]):
            best = tix
    sides[ys] = np.where(A[best], 1, 2)
    bip = Bipartition(sides)
    return _refine(D, bip, cfg) if improve else bip


def local_improve(D: Digraph, P: Bipartition, cfg: EngineConfig) -> Bipartition:
    """Single-vertex flips; accept when min cut rises, or holds with a larger
    total. Each accepted flip strictly raises (min, total), so this terminates
    regardless of the round cap."""
    if P.n != D.n:
        raise PartitionError("bipartition size mismatch")
    sides = P.sides.copy()
    if D.m == 0 or D.n == 0:
        return Bipartition(sides)
    t, h = D.tails, D.heads
    outdeg, indeg = D.out_degrees, D.in_degrees
    side1 = sides == 1
    cut = cut_counts(D, P)
    e12, e21 = cut.e12, cut.e21
    n = D.n
    for _ in range(cfg.local_improve_rounds):
        out1 = np.bincount(t[side1[h]], minlength=n)
        in1 = np.bincount(h[side1[t]], minlength=n)
        out2 = outdeg - out1
        in2 = indeg - in1
        d12 = np.where(side1, in1 - out2, out2 - in1)
        d21 = np.where(side1, out1 - in2, in2 - out1)
        ne12 = e12 + d12
        ne21 = e21 + d21
        nmin = np.minimum(ne12, ne21)
        ntot = ne12 + ne21
        cur_min, cur_tot = min(e12, e21), e12 + e21
        screened = np.flatnonzero(
            (nmin > cur_min) | ((nmin == cur_min) & (ntot > cur_tot))
        )
        accepted = 0
        for v in screened.tolist():
            o1 = int(side1[D.out_neighbors(v)].sum())
            i1 = int(side1[D.in_neighbors(v)].sum())
            o2 = int(outdeg[v]) - o1
            i2 = int(indeg[v]) - i1
            if side1[v]:
                f12, f21 = e12 + i1 - o2, e21 + o1 - i2
            else:
                f12, f21 = e12 + o2 - i1, e21 + i2 - o1
            cm, ct = min(e12, e21), e12 + e21
            if min(f12, f21) > cm or (min(f12, f21) == cm and f12 + f21 > ct):
                side1[v] = not side1[v]
                sides[v] = 1 if side1[v] else 2
                e12, e21 = f12, f21
                accepted += 1
        if accepted == 0:
            break
    return Bipartition(sides)


def partition(D: Digraph, cfg: EngineConfig) -> PartitionOutcome:
    """Full pipeline; always returns the best bipartition found."""
    if D.n == 0:
        raise EmptyGraphError("cannot partition an empty graph")
    d_actual = min_outdegree(D)
    warns: list[str] = []
    if d_actual < cfg.d:
        msg = (
            f"configured d={cfg.d} exceeds the actual minimum outdegree "
            f"{d_actual}; proceeding, with both recorded"
        )
        warnings.warn(msg, MinOutdegreeWarning, stacklevel=2)
        warns.append(msg)

    shortcut = uniform_split_applicable(D, cfg) or D.m >= 6272 * D.n
    huge_even = False
    threshold: float | None = None
    if shortcut:
        xs: tuple[int, ...] = ()
        ys: tuple[int, ...] = tuple(range(D.n))
        gr = GapResult(
            x=(), x1=(), x2=(), theta=0, theta_abs_min=0,
            huge=(), k=None, g=0, b=0, forward=(), backward=(),
        )
        cands = [mingap_candidate(gr)]
    else:
        sp = split_by_degree(D, cfg)
        xs, ys, threshold = sp.x, sp.y, sp.threshold
        gr = min_gap_partition(
            D, xs, ys,
            exhaustive_limit=cfg.exhaustive_x_limit,
            state_limit=cfg.state_limit,
        )
        try:
            cands = candidate_x_partitions(D, xs, ys, gr, cfg)
        except HugeSetEvenError:
            huge_even = True
            cands = [mingap_candidate(gr)]

    if cfg.p_sweep:
        sweep = []
        for c in cands:
            for pv in cfg.p_sweep:
                sweep.append(replace(c, p=Fraction(pv).limit_denominator(10 ** 6)))
        seen: set = set()
        uniq = []
        for c in cands + sweep:
            key = (c.x1, c.p)
            if key not in seen:
                seen.add(key)
                uniq.append(c)
        cands = uniq

    def run(c: CandidateXPartition) -> tuple[CandidateXPartition, Bipartition, CutValue]:
        bip = extend_partition_randomized(D, c, ys, cfg, improve=True)
        return c, bip, cut_counts(D, bip)

    if cfg.threads > 1 and len(cands) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(run, cands))
    else:
        results = [run(c) for c in cands]

    best = results[0]
    for r in results[1:]:
        if (r[2].minval, r[2].e12 + r[2].e21) > (best[2].minval, best[2].e12 + best[2].e21):
            best = r
    cand, bip, cut = best

    tr = essential_tight_components(D, ys)
    cert = certify_mod.build_certificate(
        D, xs, ys, gr, tr, cfg,
        candidates=[c for c, _, _ in results],
        flags={"shortcut": shortcut, "huge_even": huge_even},
    )
    ratio = cut.minval / D.m if D.m else 0.0
    target = float(Fraction(cfg.d - 1, 2 * (2 * cfg.d - 1)))
    return PartitionOutcome(
        bipartition=bip,
        cut=cut,
        ratio=ratio,
        candidate_used=cand.label,
        certificate=cert,
        guarantee_target=target,
        d_configured=cfg.d,
        d_actual=d_actual,
        shortcut=shortcut,
        huge_even=huge_even,
        x=xs,
        threshold=threshold,
        per_candidate=tuple(CandidateRun(c.label, c.p, cv) for c, _, cv in results),
        warnings=tuple(warns),
    )
