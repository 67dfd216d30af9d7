"""Finite-dimensional Q-algebras presented by structure constants.

An algebra is not assumed unital (a unit, when present, is a derived
property).  Ideals carry a chosen linear complement so that relative
constructions downstream reduce to coordinate bookkeeping in the adapted
basis [ideal basis | complement basis].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import (
    LinMap,
    Matrix,
    column_space_basis,
    frac,
    rank,
    rat_str,
    rref,
    solve,
    solve_matrix,
)


class AlgebraError(ValueError):
    pass


class NotAssociativeError(AlgebraError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"structure constants are not associative at basis triple {triple}")


class NotIdealError(AlgebraError):
    pass


class Algebra:
    """Structure constants c[i][j][k]: coefficient of e_k in e_i * e_j."""

    def __init__(self, dim: int, mult, name: str = "", check: bool = True):
        self.dim = dim
        self.name = name
        self.mult = [[[frac(mult[i][j][k]) for k in range(dim)]
                      for j in range(dim)] for i in range(dim)]
        # sparse product table for the hot paths
        self.table = [[{k: v for k, v in enumerate(self.mult[i][j]) if v != 0}
                       for j in range(dim)] for i in range(dim)]
        if check:
            self.verify_associativity()

    # -- core operations ---------------------------------------------------

    def verify_associativity(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                vij = self.table[i][j]
                for k in range(d):
                    lhs = {}
                    for m, c in vij.items():
                        for t, w in self.table[m][k].items():
                            lhs[t] = lhs.get(t, Fraction(0)) + c * w
                    rhs = {}
                    for m, c in self.table[j][k].items():
                        for t, w in self.table[i][m].items():
                            rhs[t] = rhs.get(t, Fraction(0)) + c * w
                    for t in set(lhs) | set(rhs):
                        if lhs.get(t, 0) != rhs.get(t, 0):
                            raise NotAssociativeError((i, j, k))

    def multiply(self, x: Sequence, y: Sequence) -> list:
        """Bilinear extension of the structure constants to vectors."""
        d = self.dim
        out = [Fraction(0)] * d
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                for k, c in self.table[i][j].items():
                    out[k] += xi * yj * c
        return out

    def left_mult_matrix(self, x: Sequence) -> Matrix:
        cols = []
        d = self.dim
        for j in range(d):
            col = [Fraction(0)] * d
            for i, xi in enumerate(x):
                if xi == 0:
                    continue
                for k, c in self.table[i][j].items():
                    col[k] += xi * c
            cols.append(col)
        return Matrix.from_cols(cols, rows=d)

    def right_mult_matrix(self, x: Sequence) -> Matrix:
        cols = []
        d = self.dim
        for i in range(d):
            col = [Fraction(0)] * d
            for j, xj in enumerate(x):
                if xj == 0:
                    continue
                for k, c in self.table[i][j].items():
                    col[k] += xj * c
            cols.append(col)
        return Matrix.from_cols(cols, rows=d)

    def multiplication_map(self) -> LinMap:
        """mu: A tensor A -> A on the monomial basis e_i tensor e_j."""
        d = self.dim
        cols = []
        for i in range(d):
            for j in range(d):
                cols.append({k: v for k, v in self.table[i][j].items()})
        return LinMap(d * d, d, Matrix.from_sparse_cols(cols, rows=d))

    def unit(self) -> list | None:
        """The two-sided unit, or None; solves the unit equations exactly."""
        d = self.dim
        if d == 0:
            return None
        rows = []
        rhs = []
        for j in range(d):
            for k in range(d):
                rows.append([self.mult[i][j][k] for i in range(d)])
                rhs.append(Fraction(1) if j == k else Fraction(0))
                rows.append([self.mult[j][i][k] for i in range(d)])
                rhs.append(Fraction(1) if j == k else Fraction(0))
        return solve(Matrix.from_rows(rows), rhs)

    def is_unital(self) -> bool:
        return self.unit() is not None

    def rebase(self, t: Matrix, name: str | None = None) -> "Algebra":
        """Structure constants in the basis given by the columns of t."""
        d = self.dim
        assert t.rows == d and t.cols == d
        tinv = solve_matrix(t, Matrix.identity(d))
        if tinv is None:
            raise AlgebraError("basis change matrix is singular")
        mult = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                prod = self.multiply(t.column(i), t.column(j))
                mult[i][j] = tinv.apply(prod)
        return Algebra(d, mult, name=name if name is not None else self.name, check=False)

    def direct_sum(self, other: "Algebra", name: str = "") -> "Algebra":
        d1, d2 = self.dim, other.dim
        d = d1 + d2
        mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        for i in range(d1):
            for j in range(d1):
                for k, v in self.table[i][j].items():
                    mult[i][j][k] = v
        for i in range(d2):
            for j in range(d2):
                for k, v in other.table[i][j].items():
                    mult[d1 + i][d1 + j][d1 + k] = v
        return Algebra(d, mult, name=name or f"{self.name}x{other.name}", check=False)

    # -- serialization -------------------------------------------------------

    def to_json(self, ideals: dict | None = None) -> dict:
        out = {
            "name": self.name,
            "dim": self.dim,
            "mult": [[[rat_str(self.mult[i][j][k]) for k in range(self.dim)]
                      for j in range(self.dim)] for i in range(self.dim)],
        }
        if ideals:
            out["ideals"] = {
                nm: [[rat_str(x) for x in inc.basis.column(c)] for c in range(inc.basis.cols)]
                for nm, inc in ideals.items()
            }
        return out

    @staticmethod
    def from_json(obj, check: bool = True) -> "Algebra":
        dim = int(obj["dim"])
        return Algebra(dim, obj["mult"], name=str(obj.get("name", "")), check=check)


def load_algebra(obj, check: bool = True):
    """Parse the CLI input schema: an algebra plus named ideals."""
    alg = Algebra.from_json(obj, check=check)
    ideals = {}
    for nm, vecs in (obj.get("ideals") or {}).items():
        basis = Matrix.from_cols([[frac(x) for x in v] for v in vecs], rows=alg.dim)
        ideals[nm] = IdealInclusion(alg, basis, name=nm)
    return alg, ideals


# ---------------------------------------------------------------------------


def unitalize(a: Algebra) -> Algebra:
    """A + Q with the adjoined unit as the last basis vector."""
    d = a.dim
    mult = [[[Fraction(0)] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d):
        for j in range(d):
            for k, v in a.table[i][j].items():
                mult[i][j][k] = v
    for i in range(d):
        mult[i][d][i] = Fraction(1)
        mult[d][i][i] = Fraction(1)
    mult[d][d][d] = Fraction(1)
    return Algebra(d + 1, mult, name=f"{a.name}~" if a.name else "~", check=False)


def tensor_swap(dim_v: int, dim_w: int) -> LinMap:
    """The flip V tensor W -> W tensor V as a basis permutation matrix."""
    m = Matrix.zeros(dim_w * dim_v, dim_v * dim_w)
    for i in range(dim_v):
        for j in range(dim_w):
            m.data[j * dim_v + i][i * dim_w + j] = Fraction(1)
    return LinMap(dim_v * dim_w, dim_w * dim_v, m)


def kronecker(f: LinMap, g: LinMap) -> LinMap:
    """Tensor product of linear maps on the monomial bases."""
    return LinMap(
        f.domain_dim * g.domain_dim,
        f.codomain_dim * g.codomain_dim,
        f.matrix.kron(g.matrix),
    )


class IdealInclusion:
    """A two-sided ideal K of A given by a basis, with a chosen complement.

    The closure conditions A.K and K.A inside span(K) are verified by
    membership solves.  The complement defaults to the standard coordinates
    away from the rref pivots of the basis, so the adapted basis
    [K | complement] is reproducible.
    """

    def __init__(self, ambient: Algebra, basis: Matrix,
                 complement: Matrix | None = None, check: bool = True, name: str = ""):
        self.ambient = ambient
        self.basis = basis
        self.name = name
        d = ambient.dim
        assert basis.rows == d
        self.dim = basis.cols
        if rank(basis) != basis.cols:
            raise NotIdealError("ideal basis columns are dependent")
        if check:
            self._verify_closure()
        if complement is None:
            res = rref(basis.transpose())
            pivs = set(res.pivot_cols)
            complement = Matrix.from_cols(
                [[Fraction(1) if r == c else Fraction(0) for r in range(d)]
                 for c in range(d) if c not in pivs],
                rows=d,
            )
        self.complement = complement
        self.codim = complement.cols
        trans = basis.hstack(complement)
        if self.dim + self.codim != d or rank(trans) != d:
            raise NotIdealError("complement does not complete the ideal basis")
        self.transition = trans
        self.transition_inv = solve_matrix(trans, Matrix.identity(d))
        self._adapted = None

    def _verify_closure(self):
        a = self.ambient
        for i in range(a.dim):
            ei = [Fraction(1) if t == i else Fraction(0) for t in range(a.dim)]
            for c in range(self.basis.cols):
                v = self.basis.column(c)
                for prod in (a.multiply(ei, v), a.multiply(v, ei)):
                    if solve(self.basis, prod) is None:
                        raise NotIdealError(
                            f"product of basis vector e_{i} with ideal column {c} leaves the span"
                        )

    def adapted_algebra(self) -> Algebra:
        """The ambient algebra rewritten in the [K | complement] basis."""
        if self._adapted is None:
            self._adapted = self.ambient.rebase(self.transition,
                                                name=f"{self.ambient.name}@adapted")
        return self._adapted

    def sub_algebra(self) -> Algebra:
        """K with its restricted multiplication, in the ideal basis."""
        ad = self.adapted_algebra()
        k = self.dim
        mult = [[[ad.mult[i][j][t] for t in range(k)] for j in range(k)] for i in range(k)]
        # closure guarantees no component in the complement block
        for i in range(k):
            for j in range(k):
                for t in range(k, ad.dim):
                    assert ad.mult[i][j][t] == 0
        return Algebra(k, mult, name=self.name or f"{self.ambient.name}-ideal", check=False)

    def projection(self) -> LinMap:
        """A -> A/K in original coordinates (complement coordinates of v)."""
        q = self.codim
        rows = [self.transition_inv.data[self.dim + r] for r in range(q)]
        return LinMap(self.ambient.dim, q, Matrix(q, self.ambient.dim, [r[:] for r in rows]))

    def contains(self, v: Sequence) -> bool:
        return solve(self.basis, list(v)) is not None


def power(k: IdealInclusion, n: int) -> IdealInclusion:
    """K^n: span of n-fold products of ideal basis elements, as an ideal."""
    assert n >= 1
    a = k.ambient
    cur = k.basis
    for _ in range(n - 1):
        cols = []
        for c1 in range(cur.cols):
            v = cur.column(c1)
            for c2 in range(k.basis.cols):
                cols.append(a.multiply(v, k.basis.column(c2)))
        cur = column_space_basis(Matrix.from_cols(cols, rows=a.dim)) if cols else Matrix.zeros(a.dim, 0)
    return IdealInclusion(a, cur, check=True, name=f"{k.name}^{n}" if k.name else "")


def quotient_algebra(k: IdealInclusion):
    """(A/K, projection); structure constants on the chosen complement."""
    ad = k.adapted_algebra()
    k0, q = k.dim, k.codim
    mult = [[[ad.mult[k0 + i][k0 + j][k0 + t] for t in range(q)]
             for j in range(q)] for i in range(q)]
    quot = Algebra(q, mult, name=f"{k.ambient.name}/{k.name}" if k.name else f"{k.ambient.name}/K",
                   check=False)
    proj = k.projection()
    # multiplicativity of the projection on all basis pairs
    d = k.ambient.dim
    for i in range(d):
        ei = [Fraction(1) if t == i else Fraction(0) for t in range(d)]
        pi = proj.matrix.apply(ei)
        for j in range(d):
            ej = [Fraction(1) if t == j else Fraction(0) for t in range(d)]
            lhs = proj.matrix.apply(k.ambient.multiply(ei, ej))
            rhs = quot.multiply(pi, proj.matrix.apply(ej))
            if lhs != rhs:
                raise NotIdealError("projection is not multiplicative; ideal data corrupt")
    return quot, proj
