import itertools

import pytest

from hilbchow import (GF, QQ, AlgebraPresentation, BudgetExceededError,
                      EnumerationReport, Matrix, PreconditionError, det,
                      enumerate_points, gl_order, parse_nc_poly)


def curve_pres(q):
    "F_q[x]: free on one generator, commutative for free."
    return AlgebraPresentation(GF(q), 1)


def commuting_pres(q):
    rel = parse_nc_poly("x1*x2 - x2*x1", GF(q), 2)
    return AlgebraPresentation(GF(q), 2, (rel,))


def test_gl_order_small_values():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert gl_order(3, 2) == 168


def test_gl_order_exhaustive_crosscheck_n2_q2():
    F = GF(2)
    elems = list(F.elements())
    count = 0
    for entries in itertools.product(elems, repeat=4):
        M = Matrix(((entries[0], entries[1]), (entries[2], entries[3])))
        if det(M):
            count += 1
    assert count == gl_order(2, 2)


def test_gl_order_rejects_non_prime():
    with pytest.raises(PreconditionError):
        gl_order(2, 4)
    with pytest.raises(BudgetExceededError):
        gl_order(2, 7, budget=5)


def test_curve_orbit_counts_are_qn():
    for n, q in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        report = enumerate_points(curve_pres(q), n)
        assert report.orbit_count == q ** n
        assert report.total_rep_points == q ** (n * n)
        assert report.total_cyclic_pairs % report.gl_order == 0


def test_curve_frozen_regression_n2_q2():
    report = enumerate_points(curve_pres(2), 2)
    assert report.total_rep_points == 16
    assert report.total_cyclic_pairs == 24
    assert report.gl_order == 6
    assert report.orbit_count == 4


def test_free_algebra_regression_m2_n2_q2():
    # self-consistent regression values, first computed by this harness
    report = enumerate_points(AlgebraPresentation(GF(2), 2), 2)
    assert report.total_rep_points == 256
    assert report.total_cyclic_pairs == 576
    assert report.gl_order == 6
    assert report.orbit_count == 96


def test_commuting_regression_n2_q2():
    # Hilbert scheme of 2 points on the affine plane over F_2
    report = enumerate_points(commuting_pres(2), 2)
    assert report.total_rep_points == 88
    assert report.orbit_count == 24  # q^4 + q^3 at q = 2


def test_budget_checks():
    with pytest.raises(BudgetExceededError):
        enumerate_points(curve_pres(2), 2, budget=15)
    with pytest.raises(PreconditionError):
        enumerate_points(AlgebraPresentation(QQ, 1), 1)


def test_worker_count_independence():
    pres = curve_pres(2)
    solo = enumerate_points(pres, 2, workers=1)
    multi = enumerate_points(pres, 2, workers=3)
    assert solo == multi
    assert solo.to_text(include_elapsed=False) == \
        multi.to_text(include_elapsed=False)


def test_report_text_roundtrip():
    report = enumerate_points(curve_pres(3), 1)
    parsed = EnumerationReport.from_text(report.to_text())
    assert parsed == report
    assert parsed.elapsed_ms == report.elapsed_ms
    bare = EnumerationReport.from_text(report.to_text(include_elapsed=False))
    assert bare == report


def test_budget_env_override(monkeypatch):
    from hilbchow.counting import BUDGET_ENV, configured_budget
    monkeypatch.setenv(BUDGET_ENV, "123")
    assert configured_budget() == 123
    monkeypatch.delenv(BUDGET_ENV)
    assert configured_budget() == 2 ** 30


def naive_count(pres, n):
    "Reference sweep using the generic (object-level) operations."
    from hilbchow import PointedRep, RepPoint, is_cyclic, is_representation
    field = pres.field
    elems = list(field.elements())
    reps = pairs = 0
    for entries in itertools.product(elems, repeat=pres.m * n * n):
        mats = tuple(
            Matrix(tuple(tuple(entries[k * n * n + i * n + j]
                               for j in range(n)) for i in range(n)))
            for k in range(pres.m))
        if not is_representation(pres, mats):
            continue
        reps += 1
        point = RepPoint(field, mats)
        for v in itertools.product(elems, repeat=n):
            if any(v) and is_cyclic(PointedRep(point, v)):
                pairs += 1
    return reps, pairs


def test_fast_sweep_agrees_with_generic_operations():
    # the integer inner loop must match the object-level route exactly
    cases = [(curve_pres(2), 2), (curve_pres(3), 2), (curve_pres(2), 3),
             (commuting_pres(2), 2), (AlgebraPresentation(GF(2), 2), 2),
             (AlgebraPresentation(GF(3), 1,
                                  (parse_nc_poly("x1^2 - 1", GF(3), 1),)), 2)]
    for pres, n in cases:
        report = enumerate_points(pres, n)
        reps, pairs = naive_count(pres, n)
        assert (report.total_rep_points, report.total_cyclic_pairs) == \
            (reps, pairs)


def test_curve_cross_check_all_small_cases():
    # n <= 3 and q in {2, 3}
    for q in (2, 3):
        for n in (1, 2, 3):
            report = enumerate_points(curve_pres(q), n, workers=2)
            assert report.orbit_count == q ** n
