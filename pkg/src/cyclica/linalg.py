"""Exact dense linear algebra over the rationals.

Everything downstream (complexes, towers, homology checkers) reduces to the
handful of primitives here: reduced row echelon form with a deterministic
pivot rule, kernels, column spaces, cokernel projections and homology data.

Conventions that the rest of the package relies on:

* Scalars are ``fractions.Fraction`` (always lowest terms, denominator > 0).
* A Matrix is dense row-major; a LinMap wraps a matrix together with its
  domain/codomain dimensions (matrix shape is codomain_dim x domain_dim,
  i.e. matrices act on column vectors from the left).
* rref pivots are chosen deterministically: columns are scanned left to
  right and the first row (in the current order, top to bottom) with a
  nonzero entry becomes the pivot.  All derived bases (kernels, quotient
  complements, homology representatives) inherit this determinism, which is
  what makes repeated runs produce byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class LinalgError(ValueError):
    pass


class CompositionError(LinalgError):
    """Raised when two maps that must compose to zero do not."""


class NotChainMapError(LinalgError):
    """Raised when map data fails to commute with the given boundaries."""


def frac(x) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction. Strings use 'p/q' or 'p'."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise LinalgError(f"not an exact rational: {x!r}")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as 'p/q', or just 'p' when q = 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Exact rational matrix, dense row-major storage.

    Sparse row/column views are cached on first use (or seeded by the
    sparse constructors); products route through them, so boundary-style
    matrices multiply in time proportional to their support.
    """

    __slots__ = ("rows", "cols", "data", "_srows", "_scols")

    def __init__(self, rows: int, cols: int, data):
        assert rows >= 0 and cols >= 0
        assert len(data) == rows
        self.rows = rows
        self.cols = cols
        self.data = data  # list of rows, each a list of Fraction
        self._srows = None
        self._scols = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        m = Matrix.zeros(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        data = [[frac(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        for row in data:
            assert len(row) == ncols, "ragged rows"
        return Matrix(len(data), ncols, data)

    @staticmethod
    def from_cols(cols: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not cols:
            assert rows is not None, "need row count for an empty column list"
            return Matrix.zeros(rows, 0)
        n = len(cols[0])
        m = Matrix.zeros(n, len(cols))
        for j, col in enumerate(cols):
            assert len(col) == n
            for i, x in enumerate(col):
                m.data[i][j] = frac(x)
        return m

    @staticmethod
    def from_sparse_cols(sparse_cols: Sequence[dict], rows: int) -> "Matrix":
        """Columns given as {row_index: value} dicts."""
        m = Matrix.zeros(rows, len(sparse_cols))
        scols = []
        for j, col in enumerate(sparse_cols):
            clean = {}
            for i, x in col.items():
                v = frac(x)
                if v != 0:
                    m.data[i][j] = v
                    clean[i] = v
            scols.append(clean)
        m._scols = scols
        return m

    def sparse_columns(self) -> list:
        """Columns as {row: value} dicts; computed once and cached."""
        if self._scols is None:
            if self._srows is not None:
                cols = [{} for _ in range(self.cols)]
                for i, row in enumerate(self._srows):
                    for j, v in row.items():
                        cols[j][i] = v
                self._scols = cols
            else:
                cols = [{} for _ in range(self.cols)]
                for i, row in enumerate(self.data):
                    for j, v in enumerate(row):
                        if v != 0:
                            cols[j][i] = v
                self._scols = cols
        return self._scols

    def sparse_rows(self) -> list:
        """Rows as {col: value} dicts; computed once and cached."""
        if self._srows is None:
            if self._scols is not None:
                rows = [{} for _ in range(self.rows)]
                for j, col in enumerate(self._scols):
                    for i, v in col.items():
                        rows[i][j] = v
                self._srows = rows
            else:
                self._srows = [
                    {j: v for j, v in enumerate(row) if v != 0} for row in self.data
                ]
        return self._srows

    # -- structure -------------------------------------------------------

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [row[:] for row in self.data])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols, self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(
            self.rows, self.cols,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, [[c * a for a in row] for row in self.data])

    def product_columns(self, other: "Matrix") -> list:
        """Columns of self*other as sparse dicts (no dense materialization)."""
        assert self.cols == other.rows, f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}"
        acols = self.sparse_columns()
        out = []
        for bcol in other.sparse_columns():
            acc = {}
            for k, b in bcol.items():
                for i, a in acols[k].items():
                    v = acc.get(i)
                    v = a * b if v is None else v + a * b
                    if v:
                        acc[i] = v
                    elif i in acc:
                        del acc[i]
            out.append(acc)
        return out

    def __mul__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_sparse_cols(self.product_columns(other), rows=self.rows)

    def mul_is_zero(self, other: "Matrix") -> bool:
        return all(not col for col in self.product_columns(other))

    def apply(self, vec: Sequence) -> list:
        assert len(vec) == self.cols
        out = [ZERO] * self.rows
        for j, x in enumerate(vec):
            if x == 0:
                continue
            for i in range(self.rows):
                a = self.data[i][j]
                if a != 0:
                    out[i] += a * x
        return out

    def hstack(self, other: "Matrix") -> "Matrix":
        assert self.rows == other.rows
        return Matrix(
            self.rows, self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.data, other.data)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        assert self.cols == other.cols
        return Matrix(self.rows + other.rows, self.cols,
                      [row[:] for row in self.data] + [row[:] for row in other.data])

    @staticmethod
    def block(grid, row_dims: Sequence[int], col_dims: Sequence[int]) -> "Matrix":
        """Assemble a block matrix; None entries mean zero blocks."""
        out = Matrix.zeros(sum(row_dims), sum(col_dims))
        roff = 0
        for bi, rdim in enumerate(row_dims):
            coff = 0
            for bj, cdim in enumerate(col_dims):
                blk = grid[bi][bj]
                if blk is not None:
                    assert blk.rows == rdim and blk.cols == cdim, "block shape mismatch"
                    for i in range(rdim):
                        brow = blk.data[i]
                        orow = out.data[roff + i]
                        for j in range(cdim):
                            if brow[j] != 0:
                                orow[coff + j] = brow[j]
                coff += cdim
            roff += rdim
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; index convention (i, k) -> i*other.rows + k."""
        out = Matrix.zeros(self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        b = other.data[k][l]
                        if b != 0:
                            out.data[i * other.rows + k][j * other.cols + l] = a * b
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [[rat_str(x) for x in row] for row in self.data]

    @staticmethod
    def from_json(obj, rows: int | None = None, cols: int | None = None) -> "Matrix":
        m = Matrix.from_rows(obj) if obj else Matrix.zeros(rows or 0, cols or 0)
        if rows is not None:
            assert m.rows == rows
        if cols is not None and m.rows > 0:
            assert m.cols == cols
        return m


@dataclass(frozen=True)
class LinMap:
    """A linear map Q^domain_dim -> Q^codomain_dim."""

    domain_dim: int
    codomain_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.codomain_dim or self.matrix.cols != self.domain_dim:
            raise LinalgError(
                f"matrix shape {self.matrix.rows}x{self.matrix.cols} does not match "
                f"map {self.domain_dim} -> {self.codomain_dim}"
            )

    @staticmethod
    def from_matrix(m: Matrix) -> "LinMap":
        return LinMap(m.cols, m.rows, m)

    @staticmethod
    def zero(domain_dim: int, codomain_dim: int) -> "LinMap":
        return LinMap(domain_dim, codomain_dim, Matrix.zeros(codomain_dim, domain_dim))

    @staticmethod
    def identity(n: int) -> "LinMap":
        return LinMap(n, n, Matrix.identity(n))

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        assert other.codomain_dim == self.domain_dim
        return LinMap(other.domain_dim, self.codomain_dim, self.matrix * other.matrix)

    def __add__(self, other: "LinMap") -> "LinMap":
        assert (self.domain_dim, self.codomain_dim) == (other.domain_dim, other.codomain_dim)
        return LinMap(self.domain_dim, self.codomain_dim, self.matrix + other.matrix)

    def __neg__(self) -> "LinMap":
        return LinMap(self.domain_dim, self.codomain_dim, -self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


# ---------------------------------------------------------------------------
# rref


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    rank: int
    pivot_cols: tuple


def _int_rows_from_sparse(sparse_rows):
    """Scale each sparse row to integers (RREF is row-scaling invariant)."""
    out = []
    for row in sparse_rows:
        den = 1
        for x in row.values():
            if x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        out.append({j: x.numerator * (den // x.denominator) for j, x in row.items()})
    return out


def _int_rows(m: Matrix):
    return _int_rows_from_sparse(m.sparse_rows())


def _normalize_row(row: dict):
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
        if g == 1:
            return row
    if g > 1:
        for k in row:
            row[k] //= g
    return row


def _components(rows, ncols):
    """Union-find over columns; rows join the columns they touch."""
    parent = list(range(ncols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in rows:
        it = iter(row)
        try:
            first = find(next(it))
        except StopIteration:
            continue
        for c in it:
            rc = find(c)
            if rc != first:
                parent[rc] = first
    groups = {}
    for c in range(ncols):
        groups.setdefault(find(c), []).append(c)
    return groups


def _eliminate(rows, col_order):
    """Integer full elimination over the given columns, deterministic pivots.

    rows: list of (original_index, {col: int}); the pivot for a column is the
    first not-yet-pivotal row, in original order, with a nonzero entry there.
    Returns [(pivot_col, row_dict)] with each pivot column eliminated from
    every other row; rows stay gcd-normalized integers.  A column index is
    maintained so only rows actually containing the pivot column are touched.
    """
    store = {}
    col_index = {}
    for rid, (_, row) in enumerate(rows):
        store[rid] = row
        for c in row:
            col_index.setdefault(c, set()).add(rid)
    pivotal = set()
    pivots = []
    for col in col_order:
        rids = col_index.get(col)
        if not rids:
            continue
        cand = [rid for rid in rids if rid not in pivotal]
        if not cand:
            continue
        prid = min(cand)
        pivotal.add(prid)
        prow = store[prid]
        a = prow[col]
        for rid in sorted(rids):
            if rid == prid:
                continue
            row = store[rid]
            b = row.get(col)
            if b is None:
                continue
            # row := a*row - b*prow, kept sparse and gcd-normalized
            for c in row:
                if c not in prow:
                    row[c] = a * row[c]
            for c, v in prow.items():
                nv = a * row.get(c, 0) - b * v
                if nv:
                    if c not in row:
                        col_index.setdefault(c, set()).add(rid)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        col_index[c].discard(rid)
            _normalize_row(row)
        pivots.append((col, prow))
    return pivots


def _rref_core(int_rows, ncols):
    """pivot_col -> normalized pivot row ({col: Fraction}, pivot entry 1).

    Rows are split by connected components of the column-support graph;
    output equals plain Gauss-Jordan with first-nonzero pivoting because
    the RREF is unique and components never interact.
    """
    indexed = [(i, r) for i, r in enumerate(int_rows) if r]
    groups = _components((r for _, r in indexed), ncols)
    col_group = {}
    for root, cols in groups.items():
        for c in cols:
            col_group[c] = root
    by_group = {}
    for i, r in indexed:
        root = col_group[next(iter(r))]
        by_group.setdefault(root, []).append((i, r))
    pivot_rows = {}
    for root, grows in by_group.items():
        for col, prow in _eliminate(grows, groups[root]):
            a = Fraction(prow[col])
            pivot_rows[col] = {c: Fraction(v) / a for c, v in prow.items()}
    return pivot_rows


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form, rank and pivot columns."""
    pivot_rows = _rref_core(_int_rows(m), m.cols)
    pivot_cols = tuple(sorted(pivot_rows))
    out = Matrix.zeros(m.rows, m.cols)
    for r, col in enumerate(pivot_cols):
        for c, v in pivot_rows[col].items():
            out.data[r][c] = v
    return RrefResult(out, len(pivot_cols), pivot_cols)


def rref_naive(m: Matrix) -> RrefResult:
    """Reference Gauss-Jordan over Fractions; used as a test oracle."""
    a = [row[:] for row in m.data]
    pivot_cols = []
    r = 0
    for c in range(m.cols):
        pr = None
        for i in range(r, m.rows):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
        if r == m.rows:
            break
    return RrefResult(Matrix(m.rows, m.cols, a), len(pivot_cols), tuple(pivot_cols))


def rank(m: Matrix) -> int:
    return len(_rref_core(_int_rows(m), m.cols))


# ---------------------------------------------------------------------------
# kernels, images, solving


def kernel(f) -> Matrix:
    """Basis of ker f as columns (free-variable back substitution)."""
    m = f.matrix if isinstance(f, LinMap) else f
    pivot_rows = _rref_core(_int_rows(m), m.cols)
    pivot_cols = sorted(pivot_rows)
    pivs = set(pivot_cols)
    cols = []
    for fc in range(m.cols):
        if fc in pivs:
            continue
        col = {fc: ONE}
        for pc in pivot_cols:
            v = pivot_rows[pc].get(fc)
            if v:
                col[pc] = -v
        cols.append(col)
    return Matrix.from_sparse_cols(cols, rows=m.cols)


def column_space_basis(m: Matrix) -> Matrix:
    """Deterministic basis of the column space: the pivot columns of m."""
    pivot_rows = _rref_core(_int_rows(m), m.cols)
    scols = m.sparse_columns()
    return Matrix.from_sparse_cols([scols[c] for c in sorted(pivot_rows)], rows=m.rows)


def _solve_cols(a: Matrix, rhs_cols, rhs_count: int):
    """Sparse core for a X = rhs; returns solution columns or None."""
    rows = [dict(r) for r in a.sparse_rows()]
    for j, col in enumerate(rhs_cols):
        for i, v in col.items():
            if v != 0:
                rows[i][a.cols + j] = v
    pivot_rows = _rref_core(_int_rows_from_sparse(rows), a.cols + rhs_count)
    if any(pc >= a.cols for pc in pivot_rows):
        return None
    out = [{} for _ in range(rhs_count)]
    for pc, prow in pivot_rows.items():
        for c, v in prow.items():
            if c >= a.cols and v != 0:
                out[c - a.cols][pc] = v
    return out


def solve(a: Matrix, b: Sequence) -> list | None:
    """One solution x of a x = b, or None if inconsistent."""
    col = {i: frac(v) for i, v in enumerate(b) if v != 0}
    sol = _solve_cols(a, [col], 1)
    if sol is None:
        return None
    x = [ZERO] * a.cols
    for i, v in sol[0].items():
        x[i] = v
    return x


def solve_matrix(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution X of a X = b, or None if any column is inconsistent."""
    sol = _solve_cols(a, b.sparse_columns(), b.cols)
    if sol is None:
        return None
    return Matrix.from_sparse_cols(sol, rows=a.cols)


def left_inverse(m: Matrix) -> Matrix:
    """Left inverse of a full-column-rank matrix via exact normal equations."""
    mt = m.transpose()
    gram = mt * m
    inv = solve_matrix(gram, Matrix.identity(gram.rows))
    if inv is None:
        raise LinalgError("matrix does not have full column rank")
    return inv * mt


def membership(basis: Matrix, v: Sequence) -> bool:
    """Is v in the column span of basis?"""
    return solve(basis, v) is not None


def cokernel_projection(m: Matrix):
    """Projection of Q^rows onto a complement of im(m), with a section.

    Returns (proj, section): proj is q x rows, section is rows x q, where q =
    rows - rank(m); the complement basis is the set of standard coordinates
    that are not pivots of rref(m^T), so proj . section = id and proj . m = 0.
    """
    # rows of m^T are the columns of m; no dense transpose needed
    pivot_rows = _rref_core(_int_rows_from_sparse(m.sparse_columns()), m.rows)
    pivs = sorted(pivot_rows)
    pivset = set(pivs)
    nonpivs = [c for c in range(m.rows) if c not in pivset]
    q = len(nonpivs)
    proj_rows = []
    for c in nonpivs:
        row = {c: ONE}
        for p in pivs:
            v = pivot_rows[p].get(c)
            if v:
                row[p] = -v
        proj_rows.append(row)
    proj = Matrix.zeros(q, m.rows)
    for i, row in enumerate(proj_rows):
        for j, v in row.items():
            proj.data[i][j] = v
    proj._srows = proj_rows
    section = Matrix.from_sparse_cols([{c: ONE} for c in nonpivs], rows=m.rows)
    return proj, section


# ---------------------------------------------------------------------------
# homology


def homology_dim(d_in: LinMap, d_out: LinMap) -> int:
    """dim ker(d_out) - rank(d_in) for consecutive boundaries d_in, d_out."""
    if d_in.codomain_dim != d_out.domain_dim:
        raise LinalgError("d_in codomain must equal d_out domain")
    if not d_out.matrix.mul_is_zero(d_in.matrix):
        raise CompositionError("d_out . d_in != 0")
    return (d_out.domain_dim - rank(d_out.matrix)) - rank(d_in.matrix)


@dataclass(frozen=True)
class HomologyBasis:
    """Representative cycles for H = ker(d_out)/im(d_in) at one spot.

    reps: n x h matrix of representative cycles (columns), chosen as the
    kernel-basis columns that complete a basis of the boundary space
    (rref pivot order, so the choice is reproducible).
    bnd: n x b basis of the boundary space im(d_in).
    """

    dim: int
    reps: Matrix
    bnd: Matrix


def homology_basis(d_in: LinMap, d_out: LinMap) -> HomologyBasis:
    if d_in.codomain_dim != d_out.domain_dim:
        raise LinalgError("d_in codomain must equal d_out domain")
    if not d_out.matrix.mul_is_zero(d_in.matrix):
        raise CompositionError("d_out . d_in != 0")
    n = d_out.domain_dim
    kert = kernel(d_out)
    bnd = column_space_basis(d_in.matrix)
    stacked = bnd.hstack(kert)
    res = rref(stacked)
    rep_cols = [c - bnd.cols for c in res.pivot_cols if c >= bnd.cols]
    reps = Matrix.from_cols([kert.column(c) for c in rep_cols], rows=n)
    return HomologyBasis(reps.cols, reps, bnd)


@dataclass(frozen=True)
class HomologyData:
    """HomologyBasis plus a coordinate projection.

    proj: h x n matrix with proj . reps = id and proj . bnd = 0; applying it
    to any cycle yields homology coordinates in the chosen basis.
    """

    dim: int
    reps: Matrix
    bnd: Matrix
    proj: Matrix


def homology_data(d_in: LinMap, d_out: LinMap) -> HomologyData:
    hb = homology_basis(d_in, d_out)
    n = d_out.domain_dim
    if hb.dim == 0:
        return HomologyData(0, hb.reps, hb.bnd, Matrix.zeros(0, n))
    # phi . [bnd | reps] = [0 | id]; transpose and solve, free vars set to 0.
    lhs = hb.bnd.hstack(hb.reps).transpose()
    rhs = Matrix.zeros(hb.bnd.cols, hb.dim).vstack(Matrix.identity(hb.dim))
    sol = solve_matrix(lhs, rhs)
    assert sol is not None, "independent columns must admit a dual family"
    return HomologyData(hb.dim, hb.reps, hb.bnd, sol.transpose())


def rank_on_homology(f_matrix: Matrix, hx: HomologyBasis, hy: HomologyBasis) -> int:
    """Rank of the induced map H_x -> H_y without building a projection.

    rank H(f) = rank([bnd_y | f.reps_x]) - rank(bnd_y).
    """
    if hx.dim == 0 or hy.dim == 0:
        return 0
    img = f_matrix * hx.reps
    return rank(hy.bnd.hstack(img)) - hy.bnd.cols


def is_zero_on_homology(f_matrix: Matrix, hx: HomologyBasis, hy: HomologyBasis) -> bool:
    if hx.dim == 0 or hy.dim == 0:
        return True
    return rank_on_homology(f_matrix, hx, hy) == 0


def induced_map_on_homology(
    f: LinMap,
    x_in: LinMap, x_out: LinMap,
    y_in: LinMap, y_out: LinMap,
    check_chain: bool = True,
) -> LinMap:
    """H(f) for a chain map f at one degree, in the pivot-based bases.

    x_in, x_out are the boundaries around the source degree; y_in, y_out
    around the target degree.  Verifies what is checkable from single-degree
    data: f sends cycles to cycles and boundaries to boundaries.
    """
    hx = homology_data(x_in, x_out)
    hy = homology_data(y_in, y_out)
    if check_chain:
        img = f.matrix * hx.reps
        if not (y_out.matrix * img).is_zero():
            raise NotChainMapError("f does not send cycles to cycles")
        fb = f.matrix * hx.bnd
        if fb.cols and solve_matrix(y_in.matrix, fb) is None:
            raise NotChainMapError("f does not send boundaries to boundaries")
    mat = hy.proj * (f.matrix * hx.reps)
    return LinMap(hx.dim, hy.dim, mat)
