"""Cochain spaces, the coboundary family delta_r^n, and cohomology groups.

Cochains are skew multilinear maps into a representation carrier, stored by
coordinates on canonical tuples: non-decreasing basis-index tuples, where a
repeated index is admitted only when its degree a has eps(a,a) = -1 (on all
other repeats a skew map vanishes identically).

The coboundary follows the convention in which the omitted-argument sign in
front of f([x_s,x_t], ...) carries eps(x_{s+1}+...+x_{t-1}, x_t); with this
convention delta_r^(n) o delta_r^(n-1) = 0 holds exactly on the subspace of
twist-compatible cochains {f : f o alpha^(x)n = beta o f}, for every r, and
the arity-1 and arity-2 instances reduce to the familiar operator forms.

``cohomology_group`` exposes two kernel modes.  In "compatible" mode (the
default) cocycles are computed inside the compatible subspace, which is the
setting where the square-zero theorem is valid.  In "free" mode the kernel is
taken on the full skew cochain space; coboundaries always come from the
compatible subspace, so the inclusion B <= Z holds in both modes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import linalg
from .algebra_core import AlgebraStructureError, ColorHomAlgebra
from .representations import Representation
from .scalars_grading import CycloScalar, GroupElement, sort_with_sign


class CochainError(AlgebraStructureError):
    pass


def canonical_tuples(A: ColorHomAlgebra, n: int):
    """Non-decreasing index tuples; repeats only at eps(a,a) = -1 degrees."""
    if n == 0:
        return [()]
    out = []
    def extend(prefix, start):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for i in range(start, A.dim):
            if prefix and prefix[-1] == i:
                if not A.eps.sign_is_minus_one(A.degree(i), A.degree(i)):
                    continue
            extend(prefix + [i], i)
    extend([], 0)
    return out


@dataclass
class CochainSpace:
    algebra: ColorHomAlgebra
    module: Representation
    n: int
    gamma: GroupElement
    tuples: list
    compat_basis: list  # vectors in free canonical coordinates

    @property
    def free_dim(self) -> int:
        return len(self.tuples) * self.module.dim

    @property
    def compat_dim(self) -> int:
        return len(self.compat_basis)

    def coord_index(self, tup, k: int) -> int:
        return self.tuples.index(tup) * self.module.dim + k

    def zero_coords(self):
        return [CycloScalar.zero(self.algebra.m)] * self.free_dim

    def evaluate_basis(self, coords, indices):
        """Value on a tuple of basis indices, via the sorting sign."""
        mdim = self.module.dim
        m = self.algebra.m
        if self.n == 0:
            return list(coords)
        sorted_tup, sign = sort_with_sign(indices, self.algebra.basis.degrees,
                                          self.algebra.eps)
        for a, b in zip(sorted_tup, sorted_tup[1:]):
            if a == b and not self.algebra.eps.sign_is_minus_one(
                    self.algebra.degree(a), self.algebra.degree(a)):
                return [CycloScalar.zero(m)] * mdim
        base = self.tuples.index(sorted_tup) * mdim
        return [sign * coords[base + k] for k in range(mdim)]

    def evaluate(self, coords, vectors):
        """Multilinear extension to arbitrary coordinate-vector arguments."""
        m = self.algebra.m
        mdim = self.module.dim
        out = [CycloScalar.zero(m)] * mdim
        for combo in product(*(range(self.algebra.dim) for _ in range(self.n))):
            coeff = CycloScalar.one(m)
            vanished = False
            for vec, i in zip(vectors, combo):
                c = vec[i]
                if c.is_zero():
                    vanished = True
                    break
                coeff = coeff * c
            if vanished:
                continue
            val = self.evaluate_basis(coords, combo)
            out = [o + coeff * v for o, v in zip(out, val)]
        return out


@dataclass
class Cochain:
    space: CochainSpace
    coords: list  # free canonical coordinates

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def as_map(self):
        return {self.space.tuples[t]: self.coords[t * self.space.module.dim:
                                                  (t + 1) * self.space.module.dim]
                for t in range(len(self.space.tuples))}


def _compat_rows(A: ColorHomAlgebra, R: Representation, n: int, tuples):
    """Equation rows of f o alpha^(x)n - beta o f over all basis n-tuples."""
    mdim = R.dim
    free_dim = len(tuples) * mdim
    space = CochainSpace(A, R, n, A.basis.group.zero(), tuples, [])
    one = CycloScalar.one(A.m)
    if n == 0:
        # constraint (I - beta) m = 0
        rows = []
        for r in range(mdim):
            rows.append([(one if r == c else CycloScalar.zero(A.m)) - R.beta[r][c]
                         for c in range(mdim)])
        return rows
    if free_dim == 0:
        return []
    alpha_images = [A.apply_alpha(A.basis_vector(i)) for i in range(A.dim)]
    # one constraint column per free coordinate, then transpose into rows
    cols = []
    for ci in range(free_dim):
        unit = space.zero_coords()
        unit[ci] = one
        col = []
        for combo in product(range(A.dim), repeat=n):
            lhs = space.evaluate(unit, [alpha_images[i] for i in combo])
            rhs = linalg.mat_vec(R.beta, space.evaluate_basis(unit, combo))
            col.extend(a - b for a, b in zip(lhs, rhs))
        cols.append(col)
    return [[cols[ci][ri] for ci in range(free_dim)] for ri in range(len(cols[0]))]


def cochain_basis(A: ColorHomAlgebra, R: Representation, n: int,
                  gamma: GroupElement) -> CochainSpace:
    """Free skew tuple space plus the basis of the twist-compatible subspace."""
    if n < 0:
        raise CochainError("cochain arity must be non-negative")
    tuples = canonical_tuples(A, n)
    space = CochainSpace(A, R, n, gamma, tuples, [])
    rows = _compat_rows(A, R, n, tuples)
    space.compat_basis = linalg.kernel_basis(rows, space.free_dim, A.m)
    return space


def coboundary_of_coords(A: ColorHomAlgebra, R: Representation, space: CochainSpace,
                         coords, r: int):
    """delta_r^n applied to free coordinates; returns target-space coordinates.

    Raises when r + n - 1 < 0 and the twist is singular (negative power).
    """
    n = space.n
    gamma = space.gamma
    m = A.m
    mdim = R.dim
    rho_power = r + n - 1
    target_tuples = canonical_tuples(A, n + 1)
    target = CochainSpace(A, R, n + 1, gamma, target_tuples, [])
    out = target.zero_coords()
    alpha_img = [A.apply_alpha(A.basis_vector(i)) for i in range(A.dim)]
    rho_arg = [A.apply_alpha(A.basis_vector(i), rho_power) for i in range(A.dim)]
    for t_index, tup in enumerate(target_tuples):
        acc = [CycloScalar.zero(m)] * mdim
        degs = [A.degree(i) for i in tup]
        # insertion terms f(alpha x_0, ..., [x_s, x_t], ..., ^x_t, ..., alpha x_n)
        for t in range(1, n + 1):
            for s in range(t):
                between = A.basis.group.zero()
                for u in range(s + 1, t):
                    between = between + degs[u]
                sign = A.eps(between, degs[t])
                factor = sign if t % 2 == 0 else -sign  # (-1)^t
                args = []
                for pos in range(n + 1):
                    if pos == t:
                        continue
                    if pos == s:
                        args.append(A.bracket.of_basis(tup[s], tup[t]))
                    else:
                        args.append(alpha_img[tup[pos]])
                val = space.evaluate(coords, args)
                acc = [a + factor * v for a, v in zip(acc, val)]
        # action terms (-1)^s eps(gamma + x_0 + ... + x_{s-1}, x_s) rho(...) f(...)
        for s in range(n + 1):
            prefix = gamma
            for u in range(s):
                prefix = prefix + degs[u]
            sign = A.eps(prefix, degs[s])
            factor = sign if s % 2 == 0 else -sign
            rest = [A.basis_vector(tup[pos]) for pos in range(n + 1) if pos != s]
            fval = space.evaluate(coords, rest)
            acted = R.act(rho_arg[tup[s]], fval)
            acc = [a + factor * v for a, v in zip(acc, acted)]
        base = t_index * mdim
        for k in range(mdim):
            out[base + k] = acc[k]
    return out, target


def coboundary(A: ColorHomAlgebra, R: Representation, f: Cochain, r: int) -> Cochain:
    coords, target = coboundary_of_coords(A, R, f.space, f.coords, r)
    return Cochain(target, coords)


def delta_matrix(A: ColorHomAlgebra, R: Representation, n: int, r: int,
                 gamma: GroupElement, domain: str = "free"):
    """Matrix of delta_r^n as columns over the chosen domain basis.

    Returns (columns, space) where each column lives in the free canonical
    coordinates of the arity-(n+1) space.
    """
    space = cochain_basis(A, R, n, gamma)
    if domain == "free":
        basis_vectors = []
        for ci in range(space.free_dim):
            v = space.zero_coords()
            v[ci] = CycloScalar.one(A.m)
            basis_vectors.append(v)
    elif domain == "compatible":
        basis_vectors = space.compat_basis
    else:
        raise ValueError(f"unknown domain {domain!r}")
    columns = []
    for v in basis_vectors:
        img, _ = coboundary_of_coords(A, R, space, v, r)
        columns.append(img)
    return columns, space


@dataclass
class CohomologyResult:
    n: int
    r: int
    gamma: GroupElement
    restrict: str
    dim_Z: int
    dim_B: int
    dim_H: int
    cocycle_basis: list
    coboundary_basis: list
    representatives: list
    space: CochainSpace

    def to_dict(self):
        def cochain_dicts(vectors):
            out = []
            mdim = self.space.module.dim
            names = self.space.algebra.basis.names
            for v in vectors:
                entry = {}
                for t, tup in enumerate(self.space.tuples):
                    vals = v[t * mdim:(t + 1) * mdim]
                    if any(not c.is_zero() for c in vals):
                        key = ",".join(names[i] for i in tup)
                        entry[key] = {self.space.module.carrier.names[k]: str(c)
                                      for k, c in enumerate(vals) if not c.is_zero()}
                out.append(entry)
            return out
        return {
            "n": self.n,
            "r": self.r,
            "degree": list(self.gamma.components),
            "restrict": self.restrict,
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H": self.dim_H,
            "representatives": cochain_dicts(self.representatives),
        }


def cohomology_group(A: ColorHomAlgebra, R: Representation, n: int, r: int,
                     gamma: GroupElement, restrict: str = "compatible") -> CohomologyResult:
    """Z/B at arity n: kernel of delta_r^n over the chosen cochain space,
    modulo the image of delta_r^(n-1) over the compatible subspace."""
    if n < 1:
        raise CochainError("cohomology needs arity >= 1 here")
    space = cochain_basis(A, R, n, gamma)
    columns, _ = delta_matrix(A, R, n, r, gamma, domain="free")
    # kernel: rows are equations indexed by target coordinates
    nrows = len(columns[0]) if columns else 0
    eq_rows = [[columns[c][ri] for c in range(len(columns))] for ri in range(nrows)]
    if restrict == "free":
        Z = linalg.kernel_basis(eq_rows, space.free_dim, A.m)
    elif restrict == "compatible":
        if space.compat_basis:
            comp_cols = [[space.compat_basis[c][i] for c in range(space.compat_dim)]
                         for i in range(space.free_dim)]
            restricted = [[None] * space.compat_dim for _ in range(nrows)]
            for ri in range(nrows):
                for c in range(space.compat_dim):
                    acc = None
                    for i in range(space.free_dim):
                        term = eq_rows[ri][i] * comp_cols[i][c]
                        acc = term if acc is None else acc + term
                    restricted[ri][c] = acc
            combo = linalg.kernel_basis(restricted, space.compat_dim, A.m)
            Z = []
            for kv in combo:
                vec = space.zero_coords()
                for coeff, basis_vec in zip(kv, space.compat_basis):
                    vec = [a + coeff * b for a, b in zip(vec, basis_vec)]
                Z.append(vec)
        else:
            Z = []
    else:
        raise ValueError(f"unknown restrict mode {restrict!r}")
    Z = linalg.row_space_basis(Z) if Z else []
    # coboundaries from the compatible lower space
    lower_cols, _ = delta_matrix(A, R, n - 1, r, gamma, domain="compatible")
    B = linalg.row_space_basis(lower_cols) if lower_cols else []
    for b in B:
        if not linalg.in_span(Z, b):
            raise CochainError(
                "coboundary escaped the cocycle space; the complex is inconsistent here")
    reps = linalg.quotient_representatives(Z, B)
    return CohomologyResult(n, r, gamma, restrict, len(Z), len(B), len(Z) - len(B),
                            Z, B, reps, space)
