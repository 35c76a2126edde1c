"""Cyclotomic scalars, groups, bi-characters, reorder signs."""
import random
from fractions import Fraction

import pytest

from colorhomlie.scalars_grading import (BiCharacter, BiCharacterError,
                                         CycloScalar, FiniteAbelianGroup,
                                         cyclo_reduce, cyclotomic_polynomial,
                                         epsilon_eval, euler_phi, format_scalar,
                                         parse_scalar, reorder_sign,
                                         scalar_inverse, sort_with_sign)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_polynomial(2) == (Fraction(1), Fraction(1))
    assert cyclotomic_polynomial(3) == (Fraction(1), Fraction(1), Fraction(1))
    assert cyclotomic_polynomial(4) == (Fraction(1), Fraction(0), Fraction(1))
    assert cyclotomic_polynomial(12) == (Fraction(1), Fraction(0), Fraction(-1),
                                         Fraction(0), Fraction(1))


def test_reduce_zeta4_squared_is_minus_one():
    s = cyclo_reduce([0, 0, 1], 4)
    assert s.coeffs == (Fraction(-1), Fraction(0))


def test_reduce_m1_identity():
    s = cyclo_reduce([Fraction(2, 3)], 1)
    assert s.coeffs == (Fraction(2, 3),)


def test_reduce_phi3_kills_its_own_polynomial():
    # independent oracle: polynomial division of x^2+x+1 by Phi_3 leaves zero
    s = cyclo_reduce([1, 1, 1], 3)
    assert s.is_zero()


def test_inverse_rational():
    s = CycloScalar.from_rational(Fraction(2, 3))
    assert scalar_inverse(s).coeffs == (Fraction(3, 2),)


def test_inverse_one_plus_zeta4():
    s = CycloScalar.from_rational(1, 4) + CycloScalar.root_of_unity(4)
    inv = scalar_inverse(s)
    assert (s * inv - CycloScalar.one(4)).is_zero()
    # (1 - zeta4)/2
    assert inv.coeffs == (Fraction(1, 2), Fraction(-1, 2))


def test_minus_one_self_inverse():
    s = CycloScalar.from_rational(-1, 2)
    assert scalar_inverse(s).coeffs == s.coeffs


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_inverse(CycloScalar.zero(4))


def test_field_axioms_randomized():
    rng = random.Random(7)
    for m in (1, 2, 3, 4, 5, 8):
        phi = euler_phi(m)
        def rand():
            return CycloScalar(tuple(Fraction(rng.randint(-4, 4),
                                              rng.randint(1, 3)) for _ in range(phi)), m)
        for _ in range(20):
            a, b, c = rand(), rand(), rand()
            assert ((a * b) * c - a * (b * c)).is_zero()
            assert (a * (b + c) - (a * b + a * c)).is_zero()
            if not a.is_zero():
                assert (a * scalar_inverse(a) - CycloScalar.one(m)).is_zero()


def test_powers():
    z8 = CycloScalar.root_of_unity(8)
    assert (z8 ** 8 - CycloScalar.one(8)).is_zero()
    assert (z8 ** -1 * z8 - CycloScalar.one(8)).is_zero()


def test_literals_round_trip():
    for text, m in (("2/3", 1), ("-5", 2), ("[1;-1/2]", 4), ("[0;0;1;0]", 5)):
        s = parse_scalar(text, m)
        assert format_scalar(s) == text or parse_scalar(format_scalar(s), m) == s


def test_bad_literal_rejected():
    from colorhomlie.scalars_grading import ScalarError
    for bad in ("1//2", "x", "[1;2]", "1/0"):
        with pytest.raises(ScalarError):
            parse_scalar(bad, 2)


# -- groups and bi-characters -------------------------------------------------

def test_group_arithmetic():
    G = FiniteAbelianGroup((2, 3))
    a = G.element((1, 2))
    b = G.element((1, 2))
    assert (a + b).components == (0, 1)
    assert (-a).components == (1, 1)
    assert G.exponent == 6
    assert len(list(G.elements())) == 6


def test_bicharacter_dot_form_z2_cubed():
    G = FiniteAbelianGroup((2, 2, 2))
    eps = BiCharacter(G, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
    a = G.element((1, 1, 0))
    b = G.element((1, 0, 1))
    assert epsilon_eval(eps, a, b).as_rational() == -1
    assert epsilon_eval(eps, a, G.zero()).as_rational() == 1
    # exhaustive defining identities
    for x in G.elements():
        for y in G.elements():
            assert (eps(x, y) * eps(y, x) - CycloScalar.one(2)).is_zero()
            v = eps(x, x).as_rational()
            assert v in (1, -1)
            for z in G.elements():
                assert (eps(x, y + z) - eps(x, y) * eps(x, z)).is_zero()
                assert (eps(x + y, z) - eps(x, z) * eps(y, z)).is_zero()


def test_bicharacter_symplectic_z2_squared():
    G = FiniteAbelianGroup((2, 2))
    eps = BiCharacter(G, [[0, 1], [1, 0]], 2)
    a = G.element((1, 0))
    assert eps(a, a).as_rational() == 1
    assert eps(a, G.element((0, 1))).as_rational() == -1


def test_bicharacter_rejects_non_skew():
    G = FiniteAbelianGroup((4,))
    with pytest.raises(BiCharacterError):
        BiCharacter(G, [[1]], 4)  # eps(a,b)eps(b,a) = zeta4^2 != 1 at a=b=1


def test_bicharacter_rejects_order_mismatch():
    G = FiniteAbelianGroup((2,))
    with pytest.raises(BiCharacterError):
        BiCharacter(G, [[1]], 4)  # 2 * 1 != 0 mod 4


def test_z3_has_only_trivial_bicharacter():
    G = FiniteAbelianGroup((3,))
    eps = BiCharacter(G, [[0]], 3)
    for x in G.elements():
        for y in G.elements():
            assert eps(x, y).as_rational() == 1
    with pytest.raises(BiCharacterError):
        BiCharacter(G, [[1]], 3)


# -- reorder signs -------------------------------------------------------------

def _z23_setup():
    G = FiniteAbelianGroup((2, 2, 2))
    eps = BiCharacter(G, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
    degs = [G.element((1, 1, 0)), G.element((1, 0, 1)), G.element((0, 1, 1))]
    return G, eps, degs


def test_reorder_sign_identity():
    _, eps, degs = _z23_setup()
    assert reorder_sign(degs, (0, 1, 2), eps).as_rational() == 1


def test_reorder_sign_single_swap():
    _, eps, degs = _z23_setup()
    # eps(a,b) = -1 here, so a single adjacent swap contributes -eps = +1
    assert reorder_sign(degs[:2], (1, 0), eps).as_rational() == 1


def test_reorder_sign_three_cycle():
    _, eps, degs = _z23_setup()
    assert reorder_sign(degs, (1, 2, 0), eps).as_rational() == 1


def test_reorder_sign_composition_property():
    rng = random.Random(3)
    G, eps, degs = _z23_setup()
    all_degs = list(G.elements())
    for _ in range(40):
        ds = [rng.choice(all_degs) for _ in range(4)]
        p = list(range(4))
        q = list(range(4))
        rng.shuffle(p)
        rng.shuffle(q)
        # composing reorders multiplies the signs
        pq = [p[q[i]] for i in range(4)]
        s_pq = reorder_sign(ds, pq, eps)
        s_p = reorder_sign(ds, p, eps)
        s_q = reorder_sign([ds[p[i]] for i in range(4)], q, eps)
        assert (s_pq - s_p * s_q).is_zero()


def test_sort_with_sign_decomposition_independent():
    rng = random.Random(11)
    G, eps, degs = _z23_setup()
    for _ in range(30):
        tup = tuple(rng.randint(0, 2) for _ in range(4))
        sorted_tup, sign = sort_with_sign(tup, degs, eps)
        assert sorted_tup == tuple(sorted(tup))
        # re-derive the sign through reorder_sign on an explicit permutation
        order = sorted(range(4), key=lambda i: (tup[i], i))
        perm_sign = reorder_sign([degs[i] for i in tup], order, eps)
        assert (sign - perm_sign).is_zero()
