"""Shared algebra constructions for the test suite."""
import random
from fractions import Fraction

import pytest

from colorhomlie import linalg
from colorhomlie.algebra_core import (BracketTable, ColorHomAlgebra, GradedBasis,
                                      check_color_hom_lie)
from colorhomlie.morphisms_twists import twist
from colorhomlie.scalars_grading import (BiCharacter, CycloScalar,
                                         FiniteAbelianGroup)

import importlib.resources as resources

DATA = resources.files("colorhomlie") / "data"


def data_path(name: str) -> str:
    return str(DATA / name)


def sc(value, m=2):
    return CycloScalar.from_rational(Fraction(value), m)


def build_algebra(orders, eps_exponents, m, names, degrees, bracket_entries, alpha,
                  name=""):
    group = FiniteAbelianGroup(tuple(orders))
    eps = BiCharacter(group, eps_exponents, m)
    degs = tuple(group.element(tuple(d)) for d in degrees)
    basis = GradedBasis(tuple(names), degs, group)
    entries = {}
    for (i, j), vec in bracket_entries.items():
        entries[(i, j)] = [sc(v, m) for v in vec]
    table = BracketTable(basis, eps, entries, m)
    alpha_m = [[sc(v, m) for v in row] for row in alpha]
    return ColorHomAlgebra(basis, eps, table, alpha_m, m, name=name)


def sl2c_z2z2():
    return build_algebra(
        [2, 2], [[0, 1], [1, 0]], 2, ["e1", "e2", "e3"],
        [(1, 0), (0, 1), (1, 1)],
        {(0, 1): [0, 0, 1], (0, 2): [0, -1, 0], (1, 2): [-1, 0, 0]},
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]], name="sl2c_z2z2")


def sl2c_z2z2_untwisted():
    """The same bracket with the identity twist (a color Lie algebra)."""
    return build_algebra(
        [2, 2], [[0, 1], [1, 0]], 2, ["e1", "e2", "e3"],
        [(1, 0), (0, 1), (1, 1)],
        {(0, 1): [0, 0, 1], (0, 2): [0, 1, 0], (1, 2): [1, 0, 0]},
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="sl2c_z2z2_lie")


def sl2c_z2z3():
    return build_algebra(
        [2, 2, 2], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2, ["e1", "e2", "e3"],
        [(1, 1, 0), (1, 0, 1), (0, 1, 1)],
        {(0, 1): [0, 0, 1], (0, 2): [0, 1, 0], (1, 2): [1, 0, 0]},
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="sl2c_z2z3")


def motion_z2z3():
    return build_algebra(
        [2, 2, 2], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2, ["e1", "e2", "e3"],
        [(1, 1, 0), (1, 0, 1), (0, 1, 1)],
        {(0, 1): [0, 0, 1], (0, 2): [0, 1, 0]},
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="motion_z2z3")


def zero_algebra(orders, eps_exponents, m, degrees, alpha=None):
    dim = len(degrees)
    names = [f"e{i + 1}" for i in range(dim)]
    alpha = alpha if alpha is not None else linalg_identity_rows(dim)
    return build_algebra(orders, eps_exponents, m, names, degrees, {}, alpha)


def linalg_identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# -- randomized valid multiplicative algebras --------------------------------

_Z3_GROUPS = {
    "z2xz2": ([2, 2], [[0, 1], [1, 0]], 2),
    "z2^3": ([2, 2, 2], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2),
    "z3": ([3], [[0]], 3),
}


def _rescale(A: ColorHomAlgebra, scales):
    """Conjugate by an invertible diagonal map e_i -> c_i e_i."""
    m = A.m
    cs = [sc(c, m) for c in scales]
    entries = {}
    for (i, j), vec in A.bracket.pairs.items():
        coeff = cs[i] * cs[j]
        entries[(i, j)] = [coeff * v / cs[k] for k, v in enumerate(vec)]
    table = BracketTable(A.basis, A.eps, entries, m)
    # diagonal conjugation leaves a diagonal alpha alone and conjugates others
    D = [[cs[i] if i == j else CycloScalar.zero(m) for j in range(A.dim)]
         for i in range(A.dim)]
    Dinv = [[cs[i].inverse() if i == j else CycloScalar.zero(m)
             for j in range(A.dim)] for i in range(A.dim)]
    alpha = linalg.mat_mul(D, linalg.mat_mul(A.alpha, Dinv))
    return ColorHomAlgebra(A.basis, A.eps, table, alpha, m, name=A.name + "_rescaled")


def random_multiplicative_algebra(rng: random.Random) -> ColorHomAlgebra:
    """A random valid multiplicative color Hom-Lie algebra of dim <= 4.

    Built from seed families whose axioms are known, then rescaled by a
    random invertible diagonal change of basis; the result is re-validated.
    """
    kind = rng.choice(["zero_z2z2", "zero_z3", "sl2_twisted", "heis_z3",
                       "sl2_z2z2", "solvable_z2z2", "super_z2"])
    if kind == "zero_z2z2":
        degs = [rng.choice([(0, 0), (1, 0), (0, 1), (1, 1)])
                for _ in range(rng.randint(1, 4))]
        diag = [rng.choice([1, -1, 2]) for _ in degs]
        A = zero_algebra([2, 2], [[0, 1], [1, 0]], 2, degs,
                         [[diag[i] if i == j else 0 for j in range(len(degs))]
                          for i in range(len(degs))])
    elif kind == "zero_z3":
        degs = [rng.choice([(0,), (1,), (2,)]) for _ in range(rng.randint(1, 4))]
        A = zero_algebra([3], [[0]], 3, degs)
    elif kind == "sl2_twisted":
        base = sl2c_z2z3()
        diag_choices = [(1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)]
        d = rng.choice(diag_choices)
        beta = [[sc(d[i] if i == j else 0, 2) for j in range(3)] for i in range(3)]
        A = twist(base, beta, name="sl2_twisted")
    elif kind == "heis_z3":
        a, b = rng.choice([1, 2, -1]), rng.choice([1, 3, -2])
        A = build_algebra([3], [[0]], 3, ["e1", "e2", "e3"],
                          [(1,), (1,), (2,)], {(0, 1): [0, 0, 1]},
                          [[a, 0, 0], [0, b, 0], [0, 0, a * b]], name="heis_z3")
    elif kind == "solvable_z2z2":
        t = rng.choice([1, 2, 5, -1])
        A = build_algebra([2, 2], [[0, 1], [1, 0]], 2, ["e1", "e2"],
                          [(0, 0), (1, 0)], {(0, 1): [0, 1]},
                          [[1, 0], [0, t]], name="solvable")
    elif kind == "super_z2":
        # eps(1,1) = -1: the odd generator has a nonzero self-bracket
        s = rng.choice([1, -1])
        A = build_algebra([2], [[1]], 2, ["e", "x"], [(0,), (1,)],
                          {(1, 1): [2, 0]}, [[1, 0], [0, s]], name="super_z2")
    else:
        A = sl2c_z2z2()
    scales = [rng.choice([1, 2, 3, Fraction(1, 2)]) for _ in range(A.dim)]
    A = _rescale(A, scales)
    report = check_color_hom_lie(A)
    assert report.is_color_hom_lie and report.grading.ok, "generator invariant"
    assert report.multiplicative.ok, "generator invariant"
    return A


@pytest.fixture
def rng():
    return random.Random(20240817)
