"""Graded algebras by structure constants and the color Hom-Lie axiom checks.

A ``ColorHomAlgebra`` carries a homogeneous basis, a bi-character, a sparse
bracket table and a twist matrix.  Validation is reported, never enforced at
construction: non-multiplicative algebras (and twisted algebras whose bracket
leaves the original grading) are legal values everywhere except the few
operations whose mathematics genuinely needs more.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .scalars_grading import (BiCharacter, CycloScalar, FiniteAbelianGroup,
                              GroupElement)


class AlgebraStructureError(ValueError):
    pass


class NotHomAssociativeError(AlgebraStructureError):
    pass


class NotMultiplicativeError(AlgebraStructureError):
    pass


@dataclass(frozen=True)
class GradedBasis:
    names: tuple
    degrees: tuple  # GroupElement per basis vector
    group: FiniteAbelianGroup

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise AlgebraStructureError(f"duplicate basis names in {self.names}")
        for d in self.degrees:
            if d.group != self.group:
                raise AlgebraStructureError(
                    f"degree {d} does not live in the declared grading group")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


class BracketTable:
    """Sparse bilinear structure constants with the skew rule built in.

    Entries are stored for pairs (i, j) with i <= j; values for (j, i) are
    derived via c_ji = -eps(d_j, d_i) c_ij.  Redundant input is validated.
    """

    def __init__(self, basis: GradedBasis, eps: BiCharacter, entries, m: int):
        self.basis = basis
        self.eps = eps
        self.m = m
        self.pairs = {}
        zero = [CycloScalar.zero(m)] * basis.dim
        for (i, j), vec in entries.items():
            vec = list(vec)
            if len(vec) != basis.dim:
                raise AlgebraStructureError(
                    f"bracket entry ({i},{j}) has length {len(vec)}, expected {basis.dim}")
            if i <= j:
                key, canon = (i, j), vec
            else:
                s = -eps(basis.degrees[i], basis.degrees[j])
                key, canon = (j, i), [s * c for c in vec]
            if key in self.pairs:
                if any(not (a - b).is_zero() for a, b in zip(self.pairs[key], canon)):
                    raise AlgebraStructureError(
                        f"redundant bracket input at pair {key} violates skew-symmetry")
            else:
                self.pairs[key] = canon
        self._zero = zero

    def of_basis(self, i: int, j: int):
        """[e_i, e_j] as a coordinate vector."""
        if i <= j:
            return self.pairs.get((i, j), self._zero)
        stored = self.pairs.get((j, i))
        if stored is None:
            return self._zero
        s = -self.eps(self.basis.degrees[i], self.basis.degrees[j])
        return [s * c for c in stored]

    def bilinear(self, u, v):
        out = [CycloScalar.zero(self.m)] * self.basis.dim
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                w = self.of_basis(i, j)
                coeff = a * b
                out = [o + coeff * c for o, c in zip(out, w)]
        return out

    def compose_with(self, matrix) -> "BracketTable":
        """Structure constants of matrix o [.,.]."""
        new = {}
        for key, vec in self.pairs.items():
            new[key] = linalg.mat_vec(matrix, vec)
        return BracketTable(self.basis, self.eps, new, self.m)

    def is_zero(self) -> bool:
        return all(all(c.is_zero() for c in vec) for vec in self.pairs.values())

    def equals(self, other: "BracketTable") -> bool:
        d = self.basis.dim
        for i in range(d):
            for j in range(d):
                a, b = self.of_basis(i, j), other.of_basis(i, j)
                if any(not (x - y).is_zero() for x, y in zip(a, b)):
                    return False
        return True


@dataclass
class CheckResult:
    ok: bool
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {"ok": self.ok, "failures": self.failures}


@dataclass
class AxiomReport:
    grading: CheckResult
    skew: CheckResult
    jacobi: CheckResult
    multiplicative: CheckResult

    @property
    def is_color_hom_lie(self) -> bool:
        """The two defining identities: skew-symmetry and the Hom-Jacobi sum."""
        return self.skew.ok and self.jacobi.ok

    @property
    def all_ok(self) -> bool:
        return self.grading.ok and self.skew.ok and self.jacobi.ok and self.multiplicative.ok

    def to_dict(self):
        return {
            "grading": self.grading.to_dict(),
            "skew": self.skew.to_dict(),
            "jacobi": self.jacobi.to_dict(),
            "multiplicative": self.multiplicative.to_dict(),
            "is_color_hom_lie": self.is_color_hom_lie,
        }


class ColorHomAlgebra:
    """Quadruple (basis/grading, bracket, bi-character, twist matrix)."""

    def __init__(self, basis: GradedBasis, eps: BiCharacter, bracket: BracketTable,
                 alpha, m: int, name: str = ""):
        self.basis = basis
        self.eps = eps
        self.bracket = bracket
        self.alpha = alpha
        self.m = m
        self.name = name
        self._alpha_pows = {0: linalg.identity(basis.dim, m), 1: alpha}
        self._alpha_inv = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    def degree(self, i: int) -> GroupElement:
        return self.basis.degrees[i]

    def basis_vector(self, i: int):
        return [CycloScalar.one(self.m) if j == i else CycloScalar.zero(self.m)
                for j in range(self.dim)]

    def alpha_power(self, k: int):
        """alpha^k; negative k needs an invertible twist."""
        if k < 0:
            if self._alpha_inv is None:
                try:
                    self._alpha_inv = linalg.inverse(self.alpha)
                except ValueError:
                    raise AlgebraStructureError(
                        "negative twist power requested but alpha is singular")
            return linalg.mat_pow(self._alpha_inv, -k, self.m)
        if k not in self._alpha_pows:
            self._alpha_pows[k] = linalg.mat_mul(self.alpha, self.alpha_power(k - 1))
        return self._alpha_pows[k]

    def apply_alpha(self, v, k: int = 1):
        return linalg.mat_vec(self.alpha_power(k), v)

    # -- exhaustive axiom checks --------------------------------------------

    def check_grading(self) -> CheckResult:
        failures = []
        for (i, j), vec in sorted(self.bracket.pairs.items()):
            target = self.degree(i) + self.degree(j)
            for k, c in enumerate(vec):
                if not c.is_zero() and self.degree(k) != target:
                    failures.append({
                        "pair": [self.basis.names[i], self.basis.names[j]],
                        "component": self.basis.names[k],
                        "expected_degree": list(target.components),
                        "found_degree": list(self.degree(k).components),
                    })
        return CheckResult(not failures, failures)

    def check_skew(self) -> CheckResult:
        # the off-diagonal rule holds by construction; diagonal entries are
        # constrained only when eps(a,a) = +1
        failures = []
        for (i, j), vec in sorted(self.bracket.pairs.items()):
            if i == j and not self.eps.sign_is_minus_one(self.degree(i), self.degree(i)):
                if any(not c.is_zero() for c in vec):
                    failures.append({
                        "pair": [self.basis.names[i], self.basis.names[i]],
                        "reason": "diagonal bracket must vanish when eps(a,a) = +1",
                    })
        return CheckResult(not failures, failures)

    def jacobi_residual(self, x: int, y: int, z: int):
        """Cyclic sum eps(z,x) [alpha(x), [y, z]] on one basis triple."""
        acc = [CycloScalar.zero(self.m)] * self.dim
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            e = self.eps(self.degree(c), self.degree(a))
            inner = self.bracket.of_basis(b, c)
            outer = self.bracket.bilinear(self.apply_alpha(self.basis_vector(a)), inner)
            acc = [t + e * o for t, o in zip(acc, outer)]
        return acc

    def check_jacobi(self) -> CheckResult:
        failures = []
        for x in range(self.dim):
            for y in range(self.dim):
                for z in range(self.dim):
                    res = self.jacobi_residual(x, y, z)
                    if any(not c.is_zero() for c in res):
                        failures.append({
                            "triple": [self.basis.names[x], self.basis.names[y],
                                       self.basis.names[z]],
                            "residual": [str(c) for c in res],
                        })
        return CheckResult(not failures, failures)

    def check_multiplicative(self) -> CheckResult:
        failures = []
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.apply_alpha(self.bracket.of_basis(i, j))
                rhs = self.bracket.bilinear(self.apply_alpha(self.basis_vector(i)),
                                            self.apply_alpha(self.basis_vector(j)))
                if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                    failures.append({
                        "pair": [self.basis.names[i], self.basis.names[j]],
                        "alpha_of_bracket": [str(c) for c in lhs],
                        "bracket_of_alphas": [str(c) for c in rhs],
                    })
        return CheckResult(not failures, failures)

    def is_multiplicative(self) -> bool:
        return self.check_multiplicative().ok


def check_color_hom_lie(A: ColorHomAlgebra) -> AxiomReport:
    return AxiomReport(
        grading=A.check_grading(),
        skew=A.check_skew(),
        jacobi=A.check_jacobi(),
        multiplicative=A.check_multiplicative(),
    )


class HomAssociativeColorAlgebra:
    """Graded algebra (mu, alpha) with the twisted associativity law."""

    def __init__(self, basis: GradedBasis, eps: BiCharacter, mu, alpha, m: int):
        self.basis = basis
        self.eps = eps
        self.mu = mu  # dense: mu[i][j] -> coordinate vector of mu(e_i, e_j)
        self.alpha = alpha
        self.m = m

    @property
    def dim(self):
        return self.basis.dim

    def mu_vec(self, u, v):
        out = [CycloScalar.zero(self.m)] * self.dim
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                coeff = a * b
                out = [o + coeff * c for o, c in zip(out, self.mu[i][j])]
        return out

    def check_hom_associative(self) -> CheckResult:
        failures = []
        E = linalg.identity(self.dim, self.m)
        for x in range(self.dim):
            ax = linalg.mat_vec(self.alpha, E[x])
            for y in range(self.dim):
                for z in range(self.dim):
                    az = linalg.mat_vec(self.alpha, E[z])
                    lhs = self.mu_vec(ax, self.mu[y][z])
                    rhs = self.mu_vec(self.mu[x][y], az)
                    if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                        failures.append({"triple": [self.basis.names[x],
                                                    self.basis.names[y],
                                                    self.basis.names[z]]})
        return CheckResult(not failures, failures)

    def is_eps_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                e = self.eps(self.basis.degrees[i], self.basis.degrees[j])
                lhs = self.mu[i][j]
                rhs = [e * c for c in self.mu[j][i]]
                if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                    return False
        return True


def commutator_algebra(H: HomAssociativeColorAlgebra) -> ColorHomAlgebra:
    """Color Hom-Lie bracket [x,y] = mu(x,y) - eps(x,y) mu(y,x) of a
    Hom-associative color algebra, with the same twist."""
    assoc = H.check_hom_associative()
    if not assoc.ok:
        raise NotHomAssociativeError(
            f"input is not Hom-associative; first failing triple: {assoc.failures[0]}")
    entries = {}
    for i in range(H.dim):
        for j in range(i, H.dim):
            e = H.eps(H.basis.degrees[i], H.basis.degrees[j])
            vec = [a - e * b for a, b in zip(H.mu[i][j], H.mu[j][i])]
            if any(not c.is_zero() for c in vec):
                entries[(i, j)] = vec
    bracket = BracketTable(H.basis, H.eps, entries, H.m)
    return ColorHomAlgebra(H.basis, H.eps, bracket, H.alpha, H.m)


def derived_algebra(A: ColorHomAlgebra, n: int) -> ColorHomAlgebra:
    """n-th derived Hom-algebra: bracket alpha^(2^n - 1) o [.,.], twist alpha^(2^n)."""
    if n < 0:
        raise ValueError("derived level must be non-negative")
    if n == 0:
        return A
    mult = A.check_multiplicative()
    if not mult.ok:
        raise NotMultiplicativeError(
            f"derived Hom-algebra needs a multiplicative twist; witness: {mult.failures[0]}")
    power = (1 << n) - 1
    bracket = A.bracket.compose_with(A.alpha_power(power))
    return ColorHomAlgebra(A.basis, A.eps, bracket, A.alpha_power(1 << n), A.m,
                           name=f"{A.name}^({n})" if A.name else "")
