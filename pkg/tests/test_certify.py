"""Certificates: exact check records, regime gating, golden vector."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from judipart import (
    CandidateXPartition,
    EngineConfig,
    NotApplicableError,
    build_certificate,
    compute_bundle,
    essential_tight_components,
    eval_f_h,
    from_arc_list,
    gen_skew_d4,
    gen_skew_d6,
    mf_mb,
    min_gap_partition,
    partition,
    render_text,
    split_by_degree,
    verify_record,
)
from judipart.certify import (
    CheckRecord,
    check_candidate_forms,
    check_d4_chain,
    check_gap_dichotomy,
    check_huge_regimes,
    check_min_gap_bounds,
)

GOLDEN = Path(__file__).parent / "golden" / "skew_d4_n20_checks.json"


def bundle_for(D, d, x=None):
    cfg = EngineConfig(d=d)
    if x is None:
        sp = split_by_degree(D, cfg)
        xs, ys = sp.x, sp.y
    else:
        xs = tuple(sorted(x))
        ys = tuple(sorted(set(range(D.n)) - set(xs)))
    gr = min_gap_partition(D, xs, ys)
    tr = essential_tight_components(D, ys)
    return compute_bundle(D, xs, ys, gr, tr, cfg), xs, ys, gr, tr, cfg


def test_golden_vector_still_reproduces():
    want = json.loads(GOLDEN.read_text())
    D = gen_skew_d4(20)
    cfg = EngineConfig(d=4, trials=16, seed=0)
    out = partition(D, cfg)

    def rec(c):
        return {"check_id": c.check_id, "lhs": c.lhs, "rhs": c.rhs,
                "comparison": c.comparison, "holds": c.holds, "meta": c.meta}

    assert [rec(c) for c in out.certificate.checks] == want["engine_checks"]
    bundle, *_ = bundle_for(D, 4)
    assert [rec(c) for c in check_d4_chain(bundle, force=True)] == want["forced_chain"]
    got_fh = [
        {"label": s.label, "p": str(s.p), "f": str(s.f), "h": str(s.h)}
        for s in out.certificate.fh_values
    ]
    assert got_fh == want["fh_values"]


def test_every_check_recomputes_from_stored_strings():
    D = gen_skew_d6(60, seed=2)
    bundle, xs, ys, gr, tr, cfg = bundle_for(D, 6)
    cert = build_certificate(D, xs, ys, gr, tr, cfg)
    assert cert.checks
    for c in cert.checks:
        assert verify_record(c)
    bad = CheckRecord(
        check_id=cert.checks[0].check_id,
        statement=cert.checks[0].statement,
        lhs=cert.checks[0].lhs,
        rhs=cert.checks[0].rhs,
        comparison=cert.checks[0].comparison,
        holds=not cert.checks[0].holds,
        meta=cert.checks[0].meta,
    )
    assert not verify_record(bad)


def test_min_gap_bounds_regimes():
    D = gen_skew_d6(30, seed=1)
    bundle, *_ = bundle_for(D, 6, x=(0, 1, 2))
    recs = {r.check_id: r for r in check_min_gap_bounds(bundle, ysize=27)}
    assert recs["gap-le-ysize"].holds
    assert recs["residual-le-slack"].holds
    skew = gen_skew_d4(20)
    pos_bundle, *_ = bundle_for(skew, 4)
    assert pos_bundle.e_x > 0
    with pytest.raises(NotApplicableError):
        check_min_gap_bounds(pos_bundle, ysize=15)


def test_gap_dichotomy_on_heavy_imbalance():
    D = gen_skew_d6(120, seed=5)
    bundle, *_ = bundle_for(D, 6)
    recs = {r.check_id: r for r in check_gap_dichotomy(bundle)}
    assert recs["gap-above-ratio"].holds   # 111 > 720/11
    assert recs["huge-odd"].holds
    assert "tail-dominance" in recs


def k1_bundle():
    arcs = [(0, y) for y in range(3, 10)]
    arcs += [(1, y) for y in range(3, 9)]
    arcs += [(2, y) for y in range(3, 8)]
    arcs += [(10, 1), (11, 1), (12, 1)]
    D = from_arc_list(13, arcs)
    return D, bundle_for(D, 4, x=(0, 1, 2))


def test_candidate_forms_and_d4k1_disjunction():
    D, (bundle, xs, ys, gr, tr, cfg) = k1_bundle()
    recs = {r.check_id: r for r in check_candidate_forms(bundle)}
    for rid in ("form1-neg", "form2-lower", "form3-upper",
                "d4k1-alt-a", "d4k1-alt-b1", "d4k1-alt-b2",
                "d4k1-disjunction", "d4k1-tau-bound"):
        assert rid in recs, rid
    dis = recs["d4k1-disjunction"]
    a = recs["d4k1-alt-a"].holds
    b = recs["d4k1-alt-b1"].holds and recs["d4k1-alt-b2"].holds
    assert dis.holds == (a or b)
    assert dis.lhs in ("0", "1") and dis.rhs == "1"

    even = from_arc_list(6, [(0, 2), (0, 3), (0, 4), (0, 5),
                             (1, 2), (1, 3), (1, 4), (1, 5)])
    ebundle, *_ = bundle_for(even, 4, x=(0, 1))
    with pytest.raises(NotApplicableError):
        check_candidate_forms(ebundle)


def test_chain_gating_and_force():
    D = gen_skew_d4(20)
    bundle, *_ = bundle_for(D, 4)
    with pytest.raises(NotApplicableError):
        check_d4_chain(bundle)  # five huge vertices, not the strict regime
    forced = check_d4_chain(bundle, force=True)
    ids = [r.check_id for r in forced]
    assert ids[0] == "chain-01" and "chain-05-slack" in ids
    assert any(not r.holds for r in forced)
    assert all(r.meta.get("regime_mismatch") for r in forced)
    assert all(verify_record(r) for r in forced)

    _, (kb, *_rest) = k1_bundle()
    in_regime = check_d4_chain(kb)
    assert all("regime_mismatch" not in r.meta for r in in_regime)


def test_huge_regimes_tau_bound_gating():
    D, (bundle, *_ ) = k1_bundle()
    recs = {r.check_id: r for r in check_huge_regimes(bundle)}
    # |huge| = 3, d = 4: denominator 2d - 2|X'| + 1 = 3 > 0, bound applies
    assert "tau-bound" in recs and verify_record(recs["tau-bound"])
    skew, *_ = bundle_for(gen_skew_d4(20), 4)
    recs2 = {r.check_id: r for r in check_huge_regimes(skew)}
    assert "tau-bound" not in recs2  # denominator -1 would flip the inequality


def test_f_plus_h_equals_m_at_half_when_x_arc_free():
    D = gen_skew_d6(60, seed=3)
    bundle, xs, ys, gr, tr, cfg = bundle_for(D, 6)
    assert bundle.e_x == 0
    for mask in range(4):
        x1 = tuple(v for v in xs if mask >> v & 1)
        x2 = tuple(v for v in xs if not mask >> v & 1)
        mm = mf_mb(D, x1, x2, ys)
        f, h = eval_f_h(bundle, CandidateXPartition("T", x1, x2, Fraction(1, 2)), mm)
        assert f + h == bundle.m


def test_certificate_scores_and_render():
    D = gen_skew_d4(25)
    out = partition(D, EngineConfig(d=4, trials=8, seed=1))
    cert = out.certificate
    for s in cert.fh_values:
        assert s.f_margin * (2 * (2 * 4 - 1)) == s.f
        assert s.h_margin * (2 * (2 * 4 - 1)) == s.h
    text = render_text(cert)
    assert "[PASS]" in text or "[FAIL]" in text
    for c in cert.checks:
        assert c.check_id in text
    j = cert.to_jsonable()
    assert json.loads(json.dumps(j)) == j
    assert j["meta"]["shortcut"] is False


def test_bundle_quantities_are_definitional():
    D = gen_skew_d6(30, seed=9)
    bundle, xs, ys, gr, tr, cfg = bundle_for(D, 6, x=(0, 1, 2))
    assert bundle.n == D.n and bundle.m == D.m
    assert bundle.m1 + bundle.m2 + bundle.e_x == D.m
    assert bundle.theta == gr.theta_abs_min
    assert bundle.deltas == tuple(D.degree(v) - 2 * min(int(D.out_degrees[v]),
                                                        int(D.in_degrees[v]))
                                  for v in gr.huge)
    assert bundle.g == gr.g and bundle.b == gr.b
    assert bundle.tau == tr.tau
    assert sum(bundle.deltas) + bundle.g + 2 * bundle.b + bundle.m2 == D.m
