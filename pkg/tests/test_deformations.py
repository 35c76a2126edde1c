"""Truncated formal deformations, equivalences, composition families."""
import pytest

from colorhomlie import linalg
from colorhomlie.algebra_core import BracketTable
from colorhomlie.deformations import (DeformationError, FormalAutomorphism,
                                      TruncatedBracket, check_deformation,
                                      check_equivalence, composition_deformation,
                                      first_order_class, transport_bracket)
from conftest import sc, sl2c_z2z2, sl2c_z2z3


def _alpha1(A):
    return [[sc(-1, A.m), sc(0, A.m), sc(0, A.m)],
            [sc(0, A.m), sc(-1, A.m), sc(0, A.m)],
            [sc(0, A.m), sc(0, A.m), sc(1, A.m)]]


def _zero_term(A):
    return BracketTable(A.basis, A.eps, {}, A.m)


def test_order_zero_is_the_base_jacobi_check():
    A = sl2c_z2z2()
    B = TruncatedBracket(A, 0, [A.bracket])
    per = check_deformation(A, B)
    assert set(per) == {0}
    assert per[0].ok


def test_term_zero_must_match_base():
    A = sl2c_z2z2()
    with pytest.raises(DeformationError):
        TruncatedBracket(A, 0, [_zero_term(A)])


def test_arbitrary_skew_term_fails_at_order_one():
    # a term that is not a two-cocycle breaks the order-1 equation
    A = sl2c_z2z2()
    term = BracketTable(A.basis, A.eps, {(0, 1): [sc(0), sc(1), sc(0)]}, A.m)
    B = TruncatedBracket(A, 1, [A.bracket, term])
    per = check_deformation(A, B)
    assert per[0].ok
    assert not per[1].ok
    res = first_order_class(A, B)
    assert not res["is_cocycle"]


def test_worked_example_representative_is_an_integrable_start():
    A = sl2c_z2z2()
    term = BracketTable(A.basis, A.eps, {
        (0, 1): [sc(0), sc(1), sc(0)],
        (0, 2): [sc(0), sc(0), sc(1)],
    }, A.m)
    B = TruncatedBracket(A, 1, [A.bracket, term])
    assert all(r.ok for r in check_deformation(A, B).values())
    res = first_order_class(A, B)
    assert res["is_cocycle"]
    assert res["class_is_zero"] is False


def test_trivial_deformation_first_order():
    A = sl2c_z2z2()
    B = TruncatedBracket(A, 2, [A.bracket, _zero_term(A), _zero_term(A)])
    res = first_order_class(A, B)
    assert res["is_cocycle"] and res["class_is_zero"]


def test_composition_deformation_identity_series():
    L = sl2c_z2z3()
    B = composition_deformation(L, [linalg.identity(3, L.m)])
    assert B.order == 0
    assert B.terms[0].equals(L.bracket)
    assert B.endomorphism_failing_orders == []


def test_composition_deformation_no_endomorphism_orders_recorded():
    L = sl2c_z2z3()
    B = composition_deformation(L, [linalg.identity(3, L.m), _alpha1(L)], order=3)
    # Id + t a1 never satisfies the coefficient-wise endomorphism law:
    # order 1 wants a derivation, order 2 wants vanishing pairwise brackets
    assert B.endomorphism_failing_orders == [1, 2]
    with pytest.raises(DeformationError):
        composition_deformation(L, [linalg.identity(3, L.m), _alpha1(L)],
                                order=3, require_endomorphism=True)


def test_composition_deformation_closes_orderwise():
    L = sl2c_z2z3()
    for rows in ([[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
                 [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
                 [[-1, 0, 0], [0, 0, 1], [0, -1, 0]]):
        a1 = [[sc(v, L.m) for v in row] for row in rows]
        B = composition_deformation(L, [linalg.identity(3, L.m), a1], order=3)
        per = check_deformation(B.algebra, B)
        assert all(res.ok for res in per.values()), rows
        assert first_order_class(B.algebra, B)["is_cocycle"]


def test_composition_requires_untwisted_start():
    A = sl2c_z2z2()  # alpha != Id
    with pytest.raises(DeformationError):
        composition_deformation(A, [linalg.identity(3, A.m)])


def test_derived_composition_series_expansion():
    # level 1: bracket (Id + t a)^2 o [.,.] = [.,.] + 2t a[.,.] + t^2 a^2 [.,.]
    L = sl2c_z2z3()
    a1 = _alpha1(L)
    B = composition_deformation(L, [linalg.identity(3, L.m), a1],
                                order=2, derived=1)
    two_a = linalg.mat_scale(sc(2, L.m), a1)
    want1 = L.bracket.compose_with(two_a)
    assert B.terms[1].equals(want1)
    want2 = L.bracket.compose_with(linalg.mat_mul(a1, a1))
    assert B.terms[2].equals(want2)
    # twist series Id + 2t a + t^2 a^2
    assert linalg.mat_eq(B.alpha_terms[1], two_a)
    assert linalg.mat_eq(B.alpha_terms[2], linalg.mat_mul(a1, a1))
    per = check_deformation(B.algebra, B)
    assert all(res.ok for res in per.values())


def test_skew_and_grading_reports():
    A = sl2c_z2z2()
    term = BracketTable(A.basis, A.eps, {(0, 1): [sc(1), sc(0), sc(0)]}, A.m)
    B = TruncatedBracket(A, 1, [A.bracket, term])
    assert B.skew_report().ok
    grading = B.grading_report()
    assert not grading.ok  # e1 is not in the degree of [e1, e2]


def test_equivalence_reflexive():
    A = sl2c_z2z2()
    B = TruncatedBracket(A, 1, [A.bracket, _zero_term(A)])
    phi = FormalAutomorphism([linalg.identity(3, A.m)])
    rep = check_equivalence(A, B, B, phi)
    assert rep["bracket"].ok and rep["twist"].ok and rep["automorphism"].ok


def test_transport_round_trip():
    A = sl2c_z2z2()
    term = BracketTable(A.basis, A.eps, {
        (0, 1): [sc(0), sc(1), sc(0)],
        (0, 2): [sc(0), sc(0), sc(1)],
    }, A.m)
    B1 = TruncatedBracket(A, 2, [A.bracket, term, _zero_term(A)])
    # phi_1 even: diagonal works (all components are one-dimensional)
    phi1 = [[sc(2), sc(0), sc(0)], [sc(0), sc(-1), sc(0)], [sc(0), sc(0), sc(3)]]
    phi = FormalAutomorphism([linalg.identity(3, A.m), phi1,
                              linalg.zeros(3, 3, A.m)])
    B2 = transport_bracket(A, B1, phi)
    rep = check_equivalence(A, B1, B2, phi)
    assert rep["bracket"].ok
    assert rep["twist"].ok


def test_equivalence_twist_mismatch_detected():
    A = sl2c_z2z2()
    B1 = TruncatedBracket(A, 1, [A.bracket, _zero_term(A)])
    other_alpha = [linalg.identity(3, A.m), linalg.zeros(3, 3, A.m)]
    B2 = TruncatedBracket(A, 1, [A.bracket, _zero_term(A)],
                          alpha_terms=other_alpha)
    phi = FormalAutomorphism([linalg.identity(3, A.m)])
    rep = check_equivalence(A, B1, B2, phi)
    assert not rep["twist"].ok
    assert rep["twist"].failures[0]["order"] == 0


def test_formal_automorphism_validation():
    A = sl2c_z2z2()
    bad = FormalAutomorphism([linalg.zeros(3, 3, A.m)])
    assert not bad.validate(A).ok
    odd = linalg.zeros(3, 3, A.m)
    odd[0][1] = sc(1, A.m)  # moves e2 into the e1 component
    phi = FormalAutomorphism([linalg.identity(3, A.m), odd])
    assert not phi.validate(A).ok
    with pytest.raises(DeformationError):
        transport_bracket(A, TruncatedBracket(A, 1, [A.bracket, _zero_term(A)]),
                          phi)


def test_inverse_series_is_exact():
    A = sl2c_z2z2()
    phi1 = [[sc(1), sc(0), sc(0)], [sc(0), sc(2), sc(0)], [sc(0), sc(0), sc(-1)]]
    phi = FormalAutomorphism([linalg.identity(3, A.m), phi1])
    psis = phi.inverse_series(A, 3)
    # convolution phi * psi must be the identity series
    for s in range(4):
        acc = linalg.zeros(3, 3, A.m)
        for i in range(s + 1):
            pi = phi.coefficient(i, A)
            if pi is None:
                continue
            acc = linalg.mat_add(acc, linalg.mat_mul(pi, psis[s - i]))
        want = linalg.identity(3, A.m) if s == 0 else linalg.zeros(3, 3, A.m)
        assert linalg.mat_eq(acc, want)
