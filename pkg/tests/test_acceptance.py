"""Acceptance criteria 1-12.  Each test records a verdict line that conftest prints at the end.

Criteria 2, 4 and 11 run real enumerations (quartic and quintic fields up to 10^5) and
take several minutes on one core.
"""

import io
import math
import time
from collections import Counter, defaultdict
from decimal import Decimal

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ACCEPTANCE
from fieldcensus import census, cli, heuristics as H
from fieldcensus.canon import canonical_polynomial, fields_isomorphic
from fieldcensus.galois import PROVEN, STATISTICAL, quintic_group
from test_heuristics import _synthetic_classgroup_store, brute_aut

TABLE2 = {4: "0.07604314", 5: "0.08635053", 6: "0.01702530", 7: "0.01822185",
          8: "0.00246880", 9: "0.00257368", 10: "0.00026840", 11: "0.00027478"}
TABLE3_P = {5: 3377, 6: 44163, 7: 525012, 8: 5892769, 9: 63748073}
FIT = (-0.50856, 0.0106, 0.4533)

# (group, mantissa as printed, power of ten); the mantissa digits fix the printed precision
TABLE6_CM = [("1", ".7545", 0), ("3", ".126", 0), ("5", ".377", -1), ("7", ".180", -1),
             ("9", ".140", -1), ("3^2", ".175", -2), ("11", ".686", -2), ("13", ".484", -2),
             ("15", ".629", -2)]
TABLE9_CM = [("1", ".724", 0), ("2", ".181", 0), ("3", ".402", -1), ("4", ".227", -1),
             ("2^2", ".75", -2), ("6", ".10", -1), ("7", ".25", -2), ("8", ".28", -2),
             ("4x2", ".14", -2)]
TABLE9_MALLE = [("1", ".739", 0), ("2", ".162", 0), ("3", ".411", -1), ("4", ".197", -1),
                ("2^2", ".13", -1), ("6", ".90", -2), ("7", ".25", -2), ("8", ".25", -2),
                ("4x2", ".23", -2), ("2^3", ".43", -3), ("9", ".15", -2), ("3^2", ".19", -3)]


def report(n, ok, detail):
    ACCEPTANCE[n] = ("PASS" if ok else "FAIL", detail)
    assert ok, detail


def enumerate_job(tmp, name, degree, bound, signature, *extra):
    d = str(tmp / name)
    out = io.StringIO()
    t0 = time.monotonic()
    code = cli.run(["enumerate", "--degree", str(degree), "--bound", str(bound),
                    "--signature", signature, "--out", d, *extra], out)
    return code, census.read_store(f"{d}/fields.tsv"), time.monotonic() - t0


@pytest.fixture(scope="module")
def quartic_1e5(tmp_path_factory):
    return enumerate_job(tmp_path_factory.mktemp("acc4"), "q", 4, 100000, "tc")


@pytest.fixture(scope="module")
def quintic_1e5(tmp_path_factory):
    return enumerate_job(tmp_path_factory.mktemp("acc5"), "q", 5, 100000, "1,2")


def at_printed_precision(value, mantissa, exp):
    """Round ``value`` to as many significant digits as the printed mantissa and compare."""
    printed = Decimal(mantissa).scaleb(exp)
    digits = len(mantissa) - 1
    computed = Decimal(f"{value:.{digits - 1}e}")
    return computed == printed, computed


def row_check(prob, row):
    bad = []
    for label, mantissa, exp in row:
        ok, computed = at_printed_precision(prob(H.parse_group_label(label)), mantissa, exp)
        if not ok:
            bad.append(f"{label}: computed {computed} printed {Decimal(mantissa).scaleb(exp)}")
    return bad


def test_criterion_01_bhargava_constants():
    t0 = time.monotonic()
    out_pz, out_d = io.StringIO(), io.StringIO()
    code_pz = cli.run(["bhargava", "--degree", "4..11", "--digits", "10", "--show-error"], out_pz)
    code_d = cli.run(["bhargava", "--degree", "4..11", "--digits", "10", "--show-error",
                      "--method", "direct", "--p-max", str(10 ** 6)], out_d)
    elapsed = time.monotonic() - t0
    worst, disagree = 0.0, []
    for a, b in zip(out_pz.getvalue().splitlines(), out_d.getvalue().splitlines()):
        n, v, err = a.split("\t")
        _, vd, errd = b.split("\t")
        worst = max(worst, abs(float(v) - float(TABLE2[int(n)])))
        if abs(float(v) - float(vd)) > float(err) + float(errd):
            disagree.append(n)
    ok = code_pz == code_d == 0 and worst < 5e-9 and not disagree and elapsed < 60
    report(1, ok, f"max |B_n - printed| = {worst:.1e}, methods agree within bounds: "
                  f"{not disagree}, {elapsed:.1f} s")


def test_criterion_02_quartic_census(quartic_1e5, tmp_path):
    code, store, elapsed = quartic_1e5
    got = {X: census.count_up_to(store, "S4", X) for X in (1000, 10000, 100000)}
    # the optional power-sum pruning must not change the result
    _, on, _ = enumerate_job(tmp_path, "on", 4, 10000, "tc")
    _, off, _ = enumerate_job(tmp_path, "off", 4, 10000, "tc", "--no-deep")
    ok = code == 0 and got == {1000: 8, 10000: 206, 100000: 3374} and on.records == off.records
    report(2, ok, f"N(S4) = {got[1000]}, {got[10000]}, {got[100000]} ({elapsed:.0f} s at 10^5); "
                  f"pruning on/off identical at 10^4: {on.records == off.records}; "
                  "10^6 extension not run")


def test_criterion_03_error_diagnostics(quartic_1e5):
    _, store, _ = quartic_1e5
    B4 = H.bhargava_constant(H.EulerProductJob(4, ((0, 2),), 12)).value
    row = census.table_row(B4, census.counting_curve(store, "S4"), 1e5)
    got = (row["E"], row["alpha1"], row["alpha2"])
    report(3, got == (4230, ".725", ".887"), f"E, alpha1, alpha2 = {got}")


def test_criterion_04_quintic_census(quintic_1e5):
    code, store, elapsed = quintic_1e5
    want_4 = {"S5": 69, "D5": 2}
    want_5 = {"S5": 1714, "A5": 4, "F20": 4, "D5": 13}
    c4 = {g: census.count_up_to(store, g, 10 ** 4) for g in want_4}
    c5 = {g: census.count_up_to(store, g, 10 ** 5) for g in want_5}
    others = Counter(r.label for r in store.records if r.label not in want_5)
    weak = []
    for r in store.records:
        if r.label in ("A5", "F20", "D5"):
            lab = quintic_group(list(r.poly), r.d_K, (1, 2))
            if lab.name != r.label or not (lab.certainty == PROVEN or
                                           (lab.certainty == STATISTICAL and lab.witness)):
                weak.append(r.d_K)
    ok = code == 0 and c4 == want_4 and c5 == want_5 and not weak
    report(4, ok, f"10^4 {c4}; 10^5 {c5}; other labels {dict(others)}; "
                  f"labels without witness: {len(weak)}; {elapsed:.0f} s")


def test_criterion_05_sextic_optional():
    ACCEPTANCE[5] = ("SKIPPED", "optional sextic census at 10^5 not part of the default run")
    pytest.skip("optional slow criterion")


def test_criterion_06_prediction_formula():
    B4 = H.bhargava_constant(H.EulerProductJob(4, ((0, 2),), 12)).value
    rel = {e: abs(census.predict_P(B4, *FIT, 10.0 ** e) - P) / P for e, P in TABLE3_P.items()}
    delta = census.format_delta(census.delta_diag(63748067, TABLE3_P[9], 1e9))
    ok = max(rel.values()) < 1e-3 and delta == ".09"
    report(6, ok, f"max relative |P - printed P| = {max(rel.values()):.1e}; "
                  f"Delta at 10^9 (tabulated P) = {delta}")


def test_criterion_07_fit_machinery():
    failures = []

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(0.01, 1))
    def recover(c1, c2, c3, B):
        pts = [(i, census.predict_P(B, c1, c2, c3, census.checkpoint_X(i))) for i in range(20, 70)]
        fit = census.fit_secondary_terms(census.curve_from_points("S", pts), B, 20)
        err = max(abs(fit.c1 - c1), abs(fit.c2 - c2), abs(fit.c3 - c3))
        if err > 1e-9:
            failures.append(err)
        assert err <= 1e-9

    try:
        recover()
    except AssertionError:
        pass
    report(7, not failures, f"synthetic four-term curves recovered to 1e-9: {not failures}")


def test_criterion_08_heuristic_constants():
    c5 = float(H.cm_constant(2, (5,)))
    c23 = float(H.cm_constant(2, (2, 3)))
    c1 = float(H.cm_constant(1, (2,)))
    checks = {"c(2,{5})": abs(c5 - 0.7240198) < 5e-8,
              "c(2,{2,3})": abs(c23 - 0.984725) < 5e-7}
    bad6 = row_check(lambda G: H.cm_probability(G, 1, (2,), c1), TABLE6_CM)
    bad9 = row_check(lambda G: H.cm_probability(G, 2, (5,), c5), TABLE9_CM)
    ok = all(checks.values()) and not bad6 and not bad9
    report(8, ok, f"c(2,{{5}}) = {c5:.9f}; c(2,{{2,3}}) = {c23:.9f} "
                  f"(|diff| {abs(c23 - 0.984725):.1e}); Table 6 mismatches {bad6}; "
                  f"Table 9 mismatches {bad9}")


def test_criterion_09_malle():
    bad = row_check(H.malle_combined_probability, TABLE9_MALLE)
    total = H.malle_normalization_sum(12)
    ok = not bad and 0.999 < total < 1.0001
    report(9, ok, f"normalization sum to 2^12 = {total:.11f}; mismatches {bad}")


def test_criterion_10_automorphism_counts():
    groups = [G for m in range(1, 65) for G in H.abelian_groups_of_order(m)]
    bad = [G.label() for G in groups if H.aut_order(G) != brute_aut(G.invariants())]
    report(10, not bad, f"{len(groups)} groups of order <= 64 checked; mismatches {bad}")


def test_criterion_11_dedup_soundness(quartic_1e5, quintic_1e5):
    records = quartic_1e5[1].records + quintic_1e5[1].records
    moved = [r.d_K for r in records if canonical_polynomial(list(r.poly)).poly != r.poly]
    by_disc = defaultdict(list)
    for r in records:
        by_disc[(r.degree, r.d_K)].append(r)
    pairs = clashes = 0
    for rs in by_disc.values():
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                pairs += 1
                clashes += fields_isomorphic(list(rs[i].poly), list(rs[j].poly))
    ok = not moved and clashes == 0
    report(11, ok, f"{len(records)} records re-canonicalized, {len(moved)} changed; "
                   f"{pairs} equal-discriminant pairs, {clashes} isomorphic")


def test_criterion_12_declared(tmp_path):
    # the full-scale tables are out of reach; the class-group path is exercised on synthetic data
    path = tmp_path / "cg.tsv"
    census.write_store(path, _synthetic_classgroup_store(10 ** 4))
    out = io.StringIO()
    code = cli.run(["ingest-classgroups", str(path), "--block", "5000"], out)
    rows = out.getvalue().splitlines()
    ok = code == 0 and len(rows) == 3
    ACCEPTANCE[12] = ("DECLARED" if ok else "FAIL",
                      "not desk-reproducible; synthetic ingest round trip "
                      + ("ok" if ok else "failed"))
    assert ok
