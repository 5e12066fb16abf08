"""Exact-arithmetic certificates for partition runs.

Every inequality the bounding argument asserts is evaluated on the measured
instance quantities with Fraction arithmetic; no floats enter any verdict.
Each check record is self-verifying: holds == (lhs <comparison> rhs), with
lhs/rhs stored as exact rational strings, so a consumer can re-derive the
verdict from the record alone.

Decimal coefficients in the d=4 contradiction chain are the source's printed
decimals taken as exact rationals (2.31 = 231/100 and so on); the fractional
coefficients (79/8, 9/88, ...) are used as written. Inequalities that carry an
o(n) allowance in their asymptotic form are evaluated with the allowance
dropped and flagged in metadata; the one bound that leans on o(n) in an
essential way also ships a slack variant with a configurable additive n
fraction.

The checks are diagnostic, not a proof: on instances that do admit a good
partition, the contradiction chain must break somewhere, and the certificate
shows where.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction

from .digraph import Digraph, e_between
from .errors import IdentityViolationError, NotApplicableError
from .gap import GapResult, MfMb, mf_mb
from .tight import TightReport

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}


@dataclass(frozen=True)
class QuantityBundle:
    n: int
    m: int
    m1: int
    m2: int
    e_x: int
    theta: int
    deltas: tuple[int, ...]
    k: int | None
    g: int
    b: int
    tau: int
    d: int
    eps: float

    def to_jsonable(self) -> dict:
        return {
            "n": self.n, "m": self.m, "m1": self.m1, "m2": self.m2,
            "e_x": self.e_x, "theta": self.theta, "deltas": list(self.deltas),
            "k": self.k, "g": self.g, "b": self.b, "tau": self.tau,
            "d": self.d, "eps": self.eps,
        }


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    statement: str
    lhs: str
    rhs: str
    comparison: str
    holds: bool
    meta: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "id": self.check_id, "statement": self.statement,
            "lhs": self.lhs, "rhs": self.rhs, "comparison": self.comparison,
            "holds": self.holds, "meta": dict(self.meta),
        }


@dataclass(frozen=True)
class CandidateScore:
    label: str
    p: Fraction
    f: Fraction
    h: Fraction
    f_margin: Fraction  # f / (2(2d-1)): expected e12 headroom over target*m
    h_margin: Fraction

    def to_jsonable(self) -> dict:
        return {
            "label": self.label, "p": str(self.p),
            "f": str(self.f), "h": str(self.h),
            "f_margin": str(self.f_margin), "h_margin": str(self.h_margin),
        }


@dataclass(frozen=True)
class Certificate:
    bundle: QuantityBundle
    checks: tuple[CheckRecord, ...]
    fh_values: tuple[CandidateScore, ...]
    meta: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "bundle": self.bundle.to_jsonable(),
            "checks": [c.to_jsonable() for c in self.checks],
            "fh": [s.to_jsonable() for s in self.fh_values],
            "meta": dict(self.meta),
        }


def _rec(check_id: str, statement: str, lhs, comparison: str, rhs, **meta) -> CheckRecord:
    lf, rf = Fraction(lhs), Fraction(rhs)
    return CheckRecord(
        check_id=check_id,
        statement=statement,
        lhs=str(lf),
        rhs=str(rf),
        comparison=comparison,
        holds=bool(_OPS[comparison](lf, rf)),
        meta={k: str(v) for k, v in meta.items()},
    )


def verify_record(rec: CheckRecord) -> bool:
    """Recompute holds from the stored strings; True when consistent."""
    return _OPS[rec.comparison](Fraction(rec.lhs), Fraction(rec.rhs)) == rec.holds


def compute_bundle(
    D: Digraph, x, y, gr: GapResult, tr: TightReport, cfg
) -> QuantityBundle:
    xs = tuple(sorted(set(x)))
    ys = tuple(sorted(set(y)))
    m1 = e_between(D, xs, ys) + e_between(D, ys, xs)
    m2 = e_between(D, ys, ys)
    e_x = e_between(D, xs, xs)
    if m1 + m2 + e_x != D.m:
        raise IdentityViolationError(
            f"m1 + m2 + e(X) = {m1 + m2 + e_x} != m = {D.m}"
        )
    deltas = tuple(
        abs(int(D.out_degrees[v] - D.in_degrees[v])) for v in gr.huge
    )
    if e_x == 0 and sum(deltas) + gr.g + 2 * gr.b + m2 != D.m:
        raise IdentityViolationError(
            "arc-mass identity m = sum(deltas) + g + 2b + m2 failed with e(X) = 0"
        )
    return QuantityBundle(
        n=D.n, m=D.m, m1=m1, m2=m2, e_x=e_x,
        theta=gr.theta_abs_min, deltas=deltas, k=gr.k,
        g=gr.g, b=gr.b, tau=tr.tau, d=cfg.d, eps=cfg.epsilon,
    )


def eval_f_h(bundle: QuantityBundle, cand, mfmb: MfMb) -> tuple[Fraction, Fraction]:
    """f and h for one candidate at its p, exactly.

    ell(p) = (d-1)*sum(deltas) + (d-1)g + (2d-2)b - (2(2d-1)p(1-p) - (d-1))m2;
    f = 2(1-p)(2d-1)z + 2p(2d-1)z' - ell;
    h = 2p(2d-1)(m1 - z - z') - ell,
    with z = e(x1, Y) and z' = e(Y, x2). Positive f certifies expected e12
    above the target ratio by f/(2(2d-1)) arcs; likewise h for e21.
    """
    p = Fraction(cand.p)
    d = bundle.d
    two = 2 * (2 * d - 1)
    ell = (
        (d - 1) * sum(bundle.deltas)
        + (d - 1) * bundle.g
        + (2 * d - 2) * bundle.b
        - (two * p * (1 - p) - (d - 1)) * bundle.m2
    )
    f = 2 * (1 - p) * (2 * d - 1) * mfmb.z + 2 * p * (2 * d - 1) * mfmb.zprime - ell
    h = 2 * p * (2 * d - 1) * (bundle.m1 - mfmb.z - mfmb.zprime) - ell
    return f, h


def check_min_gap_bounds(bundle: QuantityBundle, ysize: int) -> list[CheckRecord]:
    """theta and the residual g are both capped by |Y| when e(X) = 0."""
    if bundle.e_x != 0:
        raise NotApplicableError(
            f"min-gap bounds need e(X) = 0, got e(X) = {bundle.e_x}"
        )
    return [
        _rec("gap-le-ysize", "theta <= |Y|", bundle.theta, "<=", ysize),
        _rec("residual-le-slack", "g <= |Y| - theta",
             bundle.g, "<=", ysize - bundle.theta),
    ]


def check_gap_dichotomy(bundle: QuantityBundle) -> list[CheckRecord]:
    """Either the gap is small (p = 1/2 route succeeds) or the huge set is
    odd with a dominated head; three labeled checks."""
    out = [
        _rec("gap-above-ratio", "theta > m/(2d-1)",
             bundle.theta, ">", Fraction(bundle.m, 2 * bundle.d - 1)),
        _rec("huge-odd", "|huge| is odd", len(bundle.deltas) % 2, "==", 1),
    ]
    if len(bundle.deltas) % 2 == 1:
        k = (len(bundle.deltas) - 1) // 2
        lead = sum(bundle.deltas[:k])
        tail = sum(bundle.deltas[k:])
        out.append(
            _rec("tail-dominance",
                 "sum_{j>k} delta_j - sum_{j<=k} delta_j >= g + theta",
                 tail - lead, ">=", bundle.g + bundle.theta)
        )
    return out


def _delta1(bundle: QuantityBundle, j: int) -> tuple[Fraction, bool]:
    """1-based delta_j; out-of-range terms contribute 0 and are reported."""
    if 1 <= j <= len(bundle.deltas):
        return Fraction(bundle.deltas[j - 1]), False
    return Fraction(0), True


def check_candidate_forms(bundle: QuantityBundle) -> list[CheckRecord]:
    """The three general-d inequalities of the candidate analysis, plus the
    d=4, k=1 disjunction and its tau-refined bound."""
    if len(bundle.deltas) % 2 == 0:
        raise NotApplicableError(
            f"candidate forms need an odd huge count, got {len(bundle.deltas)}"
        )
    d = bundle.d
    k = (len(bundle.deltas) - 1) // 2
    g, b, m2, n = bundle.g, bundle.b, bundle.m2, bundle.n
    lead = sum(bundle.deltas[:k])
    tail = sum(bundle.deltas[k:])
    out = [
        _rec("form1-neg",
             "d*(sum_{j<=k} delta_j + g) - (d-1)*sum_{j>k} delta_j + b + m2/2 < 0",
             d * (lead + g) - (d - 1) * tail + b + Fraction(m2, 2), "<", 0,
             k=k),
    ]
    # mid window j = k..2k-1 and outer terms j < k plus j = 2k, 2k+1 (1-based)
    s_mid = sum(bundle.deltas[k - 1: 2 * k - 1]) if k >= 1 else 0
    d2k, drop1 = _delta1(bundle, 2 * k)
    d2k1, drop2 = _delta1(bundle, 2 * k + 1)
    s_out = sum(bundle.deltas[: max(k - 1, 0)]) + d2k + d2k1
    dropped = [j for j, dr in ((2 * k, drop1), (2 * k + 1, drop2)) if dr]
    meta = {"k": k}
    if dropped:
        meta["dropped_terms"] = ",".join(f"delta_{j}" for j in dropped)
    if d >= 2:  # the S_mid coefficient divides by d - 1
        out.append(
            _rec("form2-lower",
                 "b > ((d^2+2d-1)/(d-1))*S_mid - d*S_out + (d-1)*g + ((d-1)/(2d))*m2",
                 b, ">",
                 Fraction(d * d + 2 * d - 1, d - 1) * s_mid - d * s_out
                 + (d - 1) * g + Fraction(d - 1, 2 * d) * m2,
                 **meta)
        )
    out.append(
        _rec("form3-upper",
             "b < (2(2d-1)(k+1)/(3d-1))*n + ((d^2-5d+2)/(3d-1))*S_out"
             " - ((d^2+2d-1)/(3d-1))*S_mid + (d(d-1)/(3d-1))*g"
             " - ((d-1)^2/(2d(3d-1)))*m2",
             b, "<",
             Fraction(2 * (2 * d - 1) * (k + 1), 3 * d - 1) * n
             + Fraction(d * d - 5 * d + 2, 3 * d - 1) * s_out
             - Fraction(d * d + 2 * d - 1, 3 * d - 1) * s_mid
             + Fraction(d * (d - 1), 3 * d - 1) * g
             - Fraction((d - 1) ** 2, 2 * d * (3 * d - 1)) * m2,
             **meta)
    )
    if d == 4 and k == 1:
        d1, d2, d3 = (Fraction(x) for x in bundle.deltas[:3])
        a_val = 2 * d2 + 2 * d3 - 3 * d1 - 3 * g - b + Fraction(3 * m2, 14)
        b1_val = 6 * d1 - 3 * d2 - 3 * d3 + 2 * g - b + Fraction(3 * m2, 14)
        b2_val = (6 * d3 - 3 * d1 - 3 * d2 - 3 * g + Fraction(b, 3)
                  + Fraction(3 * m2, 14))
        ra = _rec("d4k1-alt-a",
                  "2*delta_2 + 2*delta_3 - 3*delta_1 - 3g - b + 3*m2/14 < 0",
                  a_val, "<", 0)
        rb1 = _rec("d4k1-alt-b1",
                   "6*delta_1 - 3*delta_2 - 3*delta_3 + 2g - b + 3*m2/14 < 0",
                   b1_val, "<", 0)
        rb2 = _rec("d4k1-alt-b2",
                   "6*delta_3 - 3*delta_1 - 3*delta_2 - 3g + b/3 + 3*m2/14 < 0",
                   b2_val, "<", 0)
        disj = ra.holds or (rb1.holds and rb2.holds)
        out.extend([ra, rb1, rb2])
        out.append(CheckRecord(
            check_id="d4k1-disjunction",
            statement="d4k1-alt-a holds, or both d4k1-alt-b1 and d4k1-alt-b2 hold",
            lhs="1" if disj else "0",
            rhs="1",
            comparison="==",
            holds=disj,
            meta={"a": str(ra.holds), "b1": str(rb1.holds), "b2": str(rb2.holds)},
        ))
        out.append(
            _rec("d4k1-tau-bound",
                 "b < 3*delta_2 + 3*delta_3 - 4*delta_1 - 4g - m2/2 - 7(n-tau)/4",
                 b, "<",
                 3 * d2 + 3 * d3 - 4 * d1 - 4 * g - Fraction(m2, 2)
                 - Fraction(7 * (n - bundle.tau), 4))
        )
    return out


def check_huge_regimes(bundle: QuantityBundle) -> list[CheckRecord]:
    """Which huge-count regime the instance falls into, plus the tau cap."""
    hc = len(bundle.deltas)
    out = [
        _rec("huge-ge-d", "|huge| >= d", hc, ">=", bundle.d),
        _rec("huge-single", "|huge| == 1", hc, "==", 1),
    ]
    denom = 2 * bundle.d - 2 * hc + 1
    if denom > 0:
        out.append(
            _rec("tau-bound", "tau <= (n + 2g + 2b) / (2d - 2|huge| + 1)",
                 bundle.tau, "<=",
                 Fraction(bundle.n + 2 * bundle.g + 2 * bundle.b, denom),
                 denominator=denom)
        )
    return out


def check_d4_chain(
    bundle: QuantityBundle,
    slack: Fraction = Fraction(1, 1000),
    force: bool = False,
) -> list[CheckRecord]:
    """The seventeen-step d=4, |huge|=3 contradiction chain, exactly.

    On instances admitting a good partition at least one step must fail;
    the chain pinpoints which. o(n)-carrying steps are flagged, and the one
    load-bearing such step also gets a slack variant allowing slack*n.
    """
    if len(bundle.deltas) < 3:
        raise NotApplicableError(
            f"chain needs three huge vertices, got {len(bundle.deltas)}"
        )
    if not force and (bundle.d != 4 or len(bundle.deltas) != 3):
        raise NotApplicableError(
            f"chain regime is d = 4 with |huge| = 3, got d = {bundle.d}, "
            f"|huge| = {len(bundle.deltas)} (use force to evaluate anyway)"
        )
    F = Fraction
    d1, d2, d3 = (F(x) for x in bundle.deltas[:3])
    n, g, b, m2, tau = bundle.n, bundle.g, bundle.b, bundle.m2, bundle.tau
    t = 2 * d1 - d2 - d3
    base_meta = {"t": t}
    if bundle.d != 4 or len(bundle.deltas) != 3:
        base_meta["regime_mismatch"] = (
            f"d={bundle.d},huge={len(bundle.deltas)}"
        )

    def rec(cid, stmt, lhs, cmp_, rhs, **extra):
        return _rec(cid, stmt, lhs, cmp_, rhs, **base_meta, **extra)

    out = [
        rec("chain-01", "b >= 4n - 3*delta_1 - g - m2 + t",
            b, ">=", 4 * n - 3 * d1 - g - m2 + t, o_n="dropped"),
        rec("chain-02", "b > 7n + 3*m2 + 17g - 12*delta_1 + 18t",
            b, ">", 7 * n + 3 * m2 + 17 * g - 12 * d1 + 18 * t),
        rec("chain-03", "b > 3g + 3*m2/8 - delta_1/3 + 4t",
            b, ">", 3 * g + F(3, 8) * m2 - F(1, 3) * d1 + 4 * t),
        rec("chain-04",
            "b < 28n/11 - 27*delta_1/11 + 12g/11 - 9*m2/88 + 2t/11",
            b, "<",
            F(28, 11) * n - F(27, 11) * d1 + F(12, 11) * g
            - F(9, 88) * m2 + F(2, 11) * t),
        rec("chain-05", "79*m2/8 + 23g > 16n - 6*delta_1 + 9t",
            F(79, 8) * m2 + 23 * g, ">", 16 * n - 6 * d1 + 9 * t,
            o_n="dropped"),
        rec("chain-05-slack",
            "79*m2/8 + 23g > 16n - 6*delta_1 + 9t - slack*n",
            F(79, 8) * m2 + 23 * g, ">",
            16 * n - 6 * d1 + 9 * t - slack * n,
            o_n="slack-variant", slack=slack),
        rec("chain-06", "273*m2/8 + 175g < 105*delta_1 - 49n - 196t",
            F(273, 8) * m2 + 175 * g, "<", 105 * d1 - 49 * n - 196 * t),
        rec("chain-07", "63*m2/4 + 63g < 84n - 70*delta_1 - 126t",
            F(63, 4) * m2 + 63 * g, "<", 84 * n - 70 * d1 - 126 * t),
        rec("chain-08", "m2 + 2.31g > n",
            m2 + F("2.31") * g, ">", n),
        rec("chain-09", "1.806t + 0.759g < delta_1 - 0.829n",
            F("1.806") * t + F("0.759") * g, "<", d1 - F("0.829") * n),
        rec("chain-10", "2.322t + 0.435g < 0.968n - delta_1",
            F("2.322") * t + F("0.435") * g, "<", F("0.968") * n - d1),
        rec("chain-11", "delta_1 > 0.829n",
            d1, ">", F("0.829") * n),
        rec("chain-12", "3t + g < 0.117n",
            3 * t + g, "<", F("0.117") * n),
        rec("chain-13", "b < 0.564n",
            b, "<", F("0.564") * n),
        rec("chain-14", "b > 3*m2/14 + 2g + 3t",
            b, ">", F(3, 14) * m2 + 2 * g + 3 * t),
        rec("chain-15", "1.373t + 0.075g < 0.899n - delta_1",
            F("1.373") * t + F("0.075") * g, "<", F("0.899") * n - d1),
        rec("chain-16", "g + b + m2 > 1.3n",
            g + b + m2, ">", F("1.3") * n, o_n="dropped"),
        rec("chain-17", "3t + g < 0.084n",
            3 * t + g, "<", F("0.084") * n),
    ]
    return out


def build_certificate(
    D: Digraph, x, y, gr: GapResult, tr: TightReport, cfg,
    candidates=(), flags=None,
) -> Certificate:
    """Bundle plus every in-regime check plus per-candidate f/h scores."""
    ys = tuple(sorted(set(y)))
    bundle = compute_bundle(D, x, y, gr, tr, cfg)
    checks: list[CheckRecord] = []
    if bundle.e_x == 0:
        checks.extend(check_min_gap_bounds(bundle, len(ys)))
    checks.extend(check_gap_dichotomy(bundle))
    if len(bundle.deltas) % 2 == 1:
        checks.extend(check_candidate_forms(bundle))
    checks.extend(check_huge_regimes(bundle))
    if bundle.d == 4 and len(bundle.deltas) == 3:
        checks.extend(check_d4_chain(bundle))
    scores = []
    two = 2 * (2 * bundle.d - 1)
    for cand in candidates:
        mm = mf_mb(D, cand.x1, cand.x2, ys)
        f, h = eval_f_h(bundle, cand, mm)
        scores.append(CandidateScore(
            label=cand.label, p=Fraction(cand.p), f=f, h=h,
            f_margin=f / two, h_margin=h / two,
        ))
    return Certificate(
        bundle=bundle,
        checks=tuple(checks),
        fh_values=tuple(scores),
        meta={k: v for k, v in (flags or {}).items()},
    )


def render_text(cert: Certificate) -> str:
    """One line per check, then the f/h table."""
    lines = []
    bd = cert.bundle
    lines.append(
        f"bundle: n={bd.n} m={bd.m} m1={bd.m1} m2={bd.m2} e(X)={bd.e_x} "
        f"theta={bd.theta} |huge|={len(bd.deltas)} k={bd.k} g={bd.g} "
        f"b={bd.b} tau={bd.tau} d={bd.d}"
    )
    for c in cert.checks:
        mark = "PASS" if c.holds else "FAIL"
        lines.append(
            f"[{mark}] {c.check_id}: {c.statement}  "
            f"[{c.lhs} {c.comparison} {c.rhs}]"
        )
    for s in cert.fh_values:
        lines.append(
            f"f/h {s.label} (p={s.p}): f={s.f} h={s.h} "
            f"f_margin={s.f_margin} h_margin={s.h_margin}"
        )
    if cert.meta:
        lines.append("meta: " + ", ".join(f"{k}={v}" for k, v in sorted(cert.meta.items())))
    return "\n".join(lines)
