from fractions import Fraction

import pytest

from hilbchow import (GF, QQ, AlgebraPresentation, CommPoly, Matrix,
                      ParseError, RepPoint, SingularMatrixError,
                      build_generic, conjugate, invariant_table,
                      is_representation, parse_nc_poly, rep_ideal)
from hilbchow.repvariety import generic_assignment, generic_var

from oracles import FIELDS, rand_invertible, rand_matrix, seeded


def free_pres(m=2, field=QQ):
    return AlgebraPresentation(field, m)


def commuting_pres(field=QQ):
    rel = parse_nc_poly("x1*x2 - x2*x1", field, 2)
    return AlgebraPresentation(field, 2, (rel,))


def poly_pres(text, m, field=QQ):
    return AlgebraPresentation(field, m, tuple(
        parse_nc_poly(t, field, m) for t in text))


def M(*rows):
    return Matrix(tuple(tuple(Fraction(a) for a in r) for r in rows))


def test_presentation_text_roundtrip():
    for pres in (free_pres(), commuting_pres(),
                 poly_pres(["x1^2"], 1, GF(3)),
                 poly_pres(["x1*x2 - x2*x1", "x1^2 - 1"], 2, GF(2))):
        assert AlgebraPresentation.from_text(pres.to_text()) == pres


def test_presentation_grammar_errors():
    with pytest.raises(ParseError):
        AlgebraPresentation.from_text("gens x1\nrel x1")
    with pytest.raises(ParseError):
        AlgebraPresentation.from_text("field Q\ngens x2 x1")
    with pytest.raises(ParseError):
        AlgebraPresentation.from_text("field Q\ngens x1\nrel x2")


def test_commutativity_flag():
    assert free_pres(1).is_commutative
    assert not free_pres(2).is_commutative
    assert commuting_pres().is_commutative
    # scaled commutator still spans the commutator
    scaled = poly_pres(["2*x1*x2 - 2*x2*x1"], 2)
    assert scaled.is_commutative
    # x1^2 relation alone does not make two generators commute
    assert not poly_pres(["x1^2"], 2).is_commutative
    three = poly_pres(["x1*x2 - x2*x1", "x1*x3 - x3*x1", "x2*x3 - x3*x2"], 3)
    assert three.is_commutative
    assert not poly_pres(["x1*x2 - x2*x1", "x1*x3 - x3*x1"], 3).is_commutative


def test_build_generic_counts():
    assert build_generic(free_pres(1), 1).mats[0].rows[0][0] == \
        CommPoly.variable(QQ, generic_var(1, 1, 1))
    system = build_generic(free_pres(2), 2)
    names = {v for Mk in system.mats for row in Mk.rows
             for entry in row for v in entry.variables()}
    assert len(names) == 8
    system3 = build_generic(free_pres(3), 2)
    names3 = {v for Mk in system3.mats for row in Mk.rows
              for entry in row for v in entry.variables()}
    assert len(names3) == 12


def test_rep_ideal_free_is_empty():
    assert rep_ideal(free_pres(2), 2).gens == ()


def test_rep_ideal_commuting_matches_hand_expansion():
    # oracle: multiply the generic 2x2 matrices explicitly
    field = QQ
    xi = {(k, i, j): CommPoly.variable(field, generic_var(k, i, j))
          for k in (1, 2) for i in (1, 2) for j in (1, 2)}

    def prod_entry(a, b, i, j):
        return sum((xi[(a, i, l)] * xi[(b, l, j)] for l in (1, 2)),
                   CommPoly.zero(field))

    expected = set()
    for i in (1, 2):
        for j in (1, 2):
            expected.add(prod_entry(1, 2, i, j) - prod_entry(2, 1, i, j))
    ideal = rep_ideal(commuting_pres(), 2)
    assert len(ideal.gens) == 4
    assert set(ideal.gens) == expected


def test_rep_ideal_square_zero():
    ideal = rep_ideal(poly_pres(["x1^2"], 1), 1)
    assert len(ideal.gens) == 1
    assert str(ideal.gens[0]) == "xi_1_1_1^2"


def test_is_representation_examples():
    pres = commuting_pres()
    assert is_representation(pres, (M((1, 0), (0, 2)), M((3, 0), (0, 4))))
    assert not is_representation(pres, (M((0, 1), (0, 0)), M((0, 0), (1, 0))))
    assert is_representation(free_pres(2), (M((0, 1), (0, 0)), M((0, 0), (1, 0))))


def test_ideal_point_consistency():
    # generator vanishing under substitution == relation vanishing
    rng = seeded("ideal-consistency")
    pres_by_field = {f: commuting_pres(f) for f in FIELDS}
    for field in FIELDS:
        pres = pres_by_field[field]
        ideal = rep_ideal(pres, 2)
        for _ in range(25):
            mats = (rand_matrix(field, 2, rng), rand_matrix(field, 2, rng))
            values = generic_assignment(mats)
            vanish = all(not g.evaluate(values) for g in ideal.gens)
            assert vanish == is_representation(pres, mats)


def test_conjugate_examples():
    pt = RepPoint(QQ, (M((0, 1), (0, 0)),))
    g = M((1, 0), (0, 2))
    moved = conjugate(g, pt)
    assert moved.mats[0] == Matrix(((Fraction(0), Fraction(1, 2)),
                                    (Fraction(0), Fraction(0))))
    ident = Matrix.identity(2, Fraction(1))
    assert conjugate(ident, pt) == pt
    with pytest.raises(SingularMatrixError):
        conjugate(M((1, 1), (1, 1)), pt)


def test_conjugate_is_group_action():
    rng = seeded("conjugate-action")
    for field in FIELDS:
        for _ in range(10):
            pt = RepPoint(field, (rand_matrix(field, 2, rng),
                                  rand_matrix(field, 2, rng)))
            g = rand_invertible(field, 2, rng)
            h = rand_invertible(field, 2, rng)
            assert conjugate(g, conjugate(h, pt)) == conjugate(g * h, pt)


def test_conjugate_preserves_relations():
    rng = seeded("conjugate-relations")
    pres = commuting_pres()
    mats = (M((1, 1), (0, 1)), M((2, 3), (0, 2)))
    assert is_representation(pres, mats)
    pt = RepPoint(QQ, mats)
    for _ in range(10):
        g = rand_invertible(QQ, 2, rng)
        assert is_representation(pres, conjugate(g, pt).mats)


def test_invariant_table_examples():
    ident = RepPoint(QQ, (Matrix.identity(2, Fraction(1)),))
    table = invariant_table(ident, 2)
    assert table.traces[(0,)] == 2
    assert table.traces[(0, 0)] == 2
    assert table.gen_dets == (Fraction(1),)

    jordan = RepPoint(QQ, (M((1, 1), (0, 1)),))
    tj = invariant_table(jordan, 2)
    # same table as the identity though not conjugate to it
    assert tj == table


def test_invariant_table_default_bound():
    pt = RepPoint(QQ, (M((1, 0), (0, 2)),))
    table = invariant_table(pt)
    assert table.max_len == 3  # 2n - 1
    assert set(table.traces) == {(0,), (0, 0), (0, 0, 0)}
    assert table.traces[(0, 0, 0)] == 9


def test_invariant_table_conjugation_invariant():
    rng = seeded("invariant-conj")
    for field in FIELDS:
        for n in (2, 3):
            for _ in range(10):
                pt = RepPoint(field, (rand_matrix(field, n, rng),
                                      rand_matrix(field, n, rng)))
                g = rand_invertible(field, n, rng)
                assert invariant_table(conjugate(g, pt)) == invariant_table(pt)


def test_invariant_table_text_roundtrip():
    from hilbchow import InvariantTable
    pt = RepPoint(GF(3), (rand_matrix(GF(3), 2, seeded("it-io")),
                          rand_matrix(GF(3), 2, seeded("it-io", 1))))
    table = invariant_table(pt, 2)
    assert InvariantTable.from_text(table.to_text()) == table


def test_rep_ideal_text_roundtrip():
    from hilbchow import RepIdeal
    ideal = rep_ideal(commuting_pres(GF(5)), 2)
    assert RepIdeal.from_text(ideal.to_text()) == ideal
