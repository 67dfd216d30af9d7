"""Chain complexes, supercomplexes, mixed complexes and their Hom gadgets.

Degree conventions used throughout the package:

* ChainComplex stores degrees 0..max_degree; an optional ``offset`` shifts
  the meaning of the stored index (stored i means true degree i + offset).
  Hom complexes use this to carry their negative degrees.
* Truncation is honest: identities and homology verdicts are only asserted
  in degrees where every constituent map exists.  ``is_quasi_iso`` checks
  the stored interior degrees 1..N-1 of the mapping cone and reports the
  boundary degrees as edge-inconclusive instead of folding them into the
  boolean.
* A supercomplex is Z/2-graded with an odd square-zero differential;
  homogeneous maps between supercomplexes are stored as (even, odd) block
  pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import (
    CompositionError,
    HomologyBasis,
    HomologyData,
    LinMap,
    Matrix,
    NotChainMapError,
    homology_basis,
    homology_data,
    homology_dim,
    kernel,
    rank,
    rat_str,
    solve_matrix,
)


class TruncationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Bounded complex ... -> C_1 -> C_0 with d_n: C_n -> C_{n-1}."""

    def __init__(self, dims: Sequence[int], diffs: Sequence[LinMap], offset: int = 0,
                 check: bool = True):
        self.dims = list(dims)
        self.max_degree = len(self.dims) - 1
        self.offset = offset
        # diffs[k] is d_{k+1}: C_{k+1} -> C_k
        self.diffs = list(diffs)
        assert len(self.diffs) == self.max_degree, "need one differential per adjacent pair"
        for k, dmap in enumerate(self.diffs):
            if (dmap.domain_dim, dmap.codomain_dim) != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"differential {k + 1} has wrong shape")
        if check:
            for n in range(2, self.max_degree + 1):
                if not self.d(n - 1).compose(self.d(n)).is_zero():
                    raise CompositionError(f"d_{n-1} . d_{n} != 0")

    def d(self, n: int) -> LinMap:
        """Boundary C_n -> C_{n-1}; the zero map at the bottom."""
        if n <= 0 or n > self.max_degree:
            return LinMap.zero(self.dim(n), self.dim(n - 1))
        return self.diffs[n - 1]

    def dim(self, n: int) -> int:
        if 0 <= n <= self.max_degree:
            return self.dims[n]
        return 0

    def true_degree(self, n: int) -> int:
        return n + self.offset

    def homology_dim(self, n: int) -> int:
        """Fully defined only for 1 <= n <= max_degree - 1 (and 0 if offset-free)."""
        return homology_dim(self.d(n + 1), self.d(n))

    def homology_dims_interior(self) -> dict:
        return {n: self.homology_dim(n) for n in range(1, self.max_degree)}

    def to_json(self) -> dict:
        out = {
            "dims": self.dims,
            "d": [m.matrix.to_json() for m in self.diffs],
        }
        if self.offset:
            out["offset"] = self.offset
        return out

    @staticmethod
    def from_json(obj) -> "ChainComplex":
        dims = [int(x) for x in obj["dims"]]
        diffs = []
        for k, mat in enumerate(obj["d"]):
            m = Matrix.from_json(mat, rows=dims[k], cols=dims[k + 1])
            diffs.append(LinMap(dims[k + 1], dims[k], m))
        return ChainComplex(dims, diffs, offset=int(obj.get("offset", 0)))

    @staticmethod
    def concentrated(dim: int, degree: int = 0, top: int | None = None) -> "ChainComplex":
        n = max(degree, top if top is not None else degree)
        dims = [dim if i == degree else 0 for i in range(n + 1)]
        diffs = [LinMap.zero(dims[k + 1], dims[k]) for k in range(n)]
        return ChainComplex(dims, diffs)


class ChainMap:
    """Degree-zero chain map between complexes with the same offset."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 maps: Sequence[LinMap], check: bool = True):
        self.source = source
        self.target = target
        self.maps = list(maps)
        n = min(source.max_degree, target.max_degree)
        assert len(self.maps) == n + 1
        assert source.offset == target.offset
        for k, f in enumerate(self.maps):
            if (f.domain_dim, f.codomain_dim) != (source.dim(k), target.dim(k)):
                raise ValueError(f"component {k} has wrong shape")
        if check:
            for k in range(1, n + 1):
                lhs = self.maps[k - 1].compose(source.d(k))
                rhs = target.d(k).compose(self.maps[k])
                if lhs.matrix != rhs.matrix:
                    raise NotChainMapError(f"square at degree {k} does not commute")

    def f(self, n: int) -> LinMap:
        if 0 <= n < len(self.maps):
            return self.maps[n]
        return LinMap.zero(self.source.dim(n), self.target.dim(n))

    @staticmethod
    def identity(c: ChainComplex) -> "ChainMap":
        return ChainMap(c, c, [LinMap.identity(c.dim(k)) for k in range(c.max_degree + 1)],
                        check=False)

    @staticmethod
    def zero(source: ChainComplex, target: ChainComplex) -> "ChainMap":
        n = min(source.max_degree, target.max_degree)
        return ChainMap(source, target,
                        [LinMap.zero(source.dim(k), target.dim(k)) for k in range(n + 1)],
                        check=False)


@dataclass
class ConeData:
    cone: ChainComplex
    include_target: ChainMap  # B -> cone, a degreewise split injection
    project_source: list      # cone_n -> A_{n-1} component matrices.


def cone(f: ChainMap) -> ConeData:
    """Mapping cone C_n = B_n + A_{n-1}, d(b, a) = (db + fa, -da).

    With both inputs truncated at N the cone is stored in degrees 0..N+1;
    the top degree only carries the shifted copy of A_N, so homology there
    (and at degree N) is a truncation edge, not a verdict.
    """
    a, b = f.source, f.target
    n = min(a.max_degree, b.max_degree)
    dims = [b.dim(k) + a.dim(k - 1) for k in range(n + 2)]
    diffs = []
    for k in range(1, n + 2):
        blk = Matrix.block(
            [[b.d(k).matrix, f.f(k - 1).matrix],
             [None, (-a.d(k - 1)).matrix]],
            row_dims=[b.dim(k - 1), a.dim(k - 2)],
            col_dims=[b.dim(k), a.dim(k - 1)],
        )
        diffs.append(LinMap(dims[k], dims[k - 1], blk))
    c = ChainComplex(dims, diffs, offset=a.offset)
    incl = []
    proj = []
    for k in range(n + 1):
        im = Matrix.block([[Matrix.identity(b.dim(k))], [None]],
                          row_dims=[b.dim(k), a.dim(k - 1)], col_dims=[b.dim(k)])
        incl.append(LinMap(b.dim(k), dims[k], im))
        pm = Matrix.block([[None, Matrix.identity(a.dim(k - 1))]],
                          row_dims=[a.dim(k - 1)], col_dims=[b.dim(k), a.dim(k - 1)])
        proj.append(pm)
    return ConeData(c, ChainMap(b, c, incl, check=False), proj)


@dataclass
class QuasiIsoReport:
    verdict: bool
    interior_homology: dict      # stored degree -> dim H of the cone
    edge_degrees: tuple          # degrees where truncation forbids a verdict

    def __bool__(self):
        return self.verdict


def is_quasi_iso(f: ChainMap) -> QuasiIsoReport:
    """True iff the cone is acyclic in all fully defined (interior) degrees.

    With inputs truncated at N the interior is 1..N-1; degrees 0, N and N+1
    of the cone are reported as edges.
    """
    c = cone(f).cone
    top = c.max_degree  # = N + 1
    interior = {}
    for n in range(1, top - 1):
        interior[n] = homology_dim(c.d(n + 1), c.d(n))
    edges = tuple(sorted({0, max(top - 1, 0), top}))
    return QuasiIsoReport(all(v == 0 for v in interior.values()), interior, edges)


def hom_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Complex of homogeneous maps, degree n part = sum_r Hom(A_r, B_{r+n}).

    Boundary is the graded commutator f |-> d^B f - (-1)^|f| f d^A, where |f|
    is the true degree.  Maps are vectorized row-major (matrix of the
    component A_r -> B_{r+n}); summands ordered by r ascending.  The result
    carries offset -(a.max_degree) so all degrees -a-top..b-top are stored.
    """
    assert a.offset == 0 and b.offset == 0, "hom_complex expects offset-free inputs"
    offset = -a.max_degree
    top = b.max_degree  # true top degree of Hom
    length = top - offset
    dims = []
    for i in range(length + 1):
        nn = i + offset
        dims.append(sum(a.dim(r) * b.dim(r + nn) for r in range(a.max_degree + 1)))
    diffs = []
    for i in range(1, length + 1):
        nn = i + offset  # true degree of the source
        sgn = -1 if nn % 2 else 1
        rows = [a.dim(r) * b.dim(r + nn - 1) for r in range(a.max_degree + 1)]
        cols = [a.dim(r) * b.dim(r + nn) for r in range(a.max_degree + 1)]
        grid = [[None] * (a.max_degree + 1) for _ in range(a.max_degree + 1)]
        for r in range(a.max_degree + 1):
            if cols[r] and rows[r]:
                grid[r][r] = b.d(r + nn).matrix.kron(Matrix.identity(a.dim(r)))
            if r >= 1 and cols[r - 1] and rows[r]:
                pre = Matrix.identity(b.dim(r + nn - 1)).kron(a.d(r).matrix.transpose())
                grid[r][r - 1] = pre.scale(-sgn)
        blk = Matrix.block(grid, rows, cols)
        diffs.append(LinMap(dims[i], dims[i - 1], blk))
    return ChainComplex(dims, diffs, offset=offset)


# ---------------------------------------------------------------------------
# mixed complexes


class MixedComplex:
    """Nonnegatively graded object with b (degree -1) and B (degree +1).

    b2 = 0, B2 = 0 and bB + Bb = 0 are verified on construction in every
    degree where all constituent maps lie inside the truncation 0..N.
    """

    def __init__(self, dims: Sequence[int], b: Sequence[LinMap], B: Sequence[LinMap],
                 check: bool = True):
        self.dims = list(dims)
        self.max_degree = len(self.dims) - 1
        self.b_maps = list(b)   # b_maps[k] = b_{k+1}: M_{k+1} -> M_k
        self.B_maps = list(B)   # B_maps[k] = B_k: M_k -> M_{k+1}
        assert len(self.b_maps) == self.max_degree
        assert len(self.B_maps) == self.max_degree
        for k, m in enumerate(self.b_maps):
            assert (m.domain_dim, m.codomain_dim) == (self.dims[k + 1], self.dims[k])
        for k, m in enumerate(self.B_maps):
            assert (m.domain_dim, m.codomain_dim) == (self.dims[k], self.dims[k + 1])
        if check:
            self.verify_identities()

    def b(self, n: int) -> LinMap:
        if n <= 0 or n > self.max_degree:
            return LinMap.zero(self.dim(n), self.dim(n - 1))
        return self.b_maps[n - 1]

    def B(self, n: int) -> LinMap:
        if n < 0 or n >= self.max_degree:
            return LinMap.zero(self.dim(n), self.dim(n + 1))
        return self.B_maps[n]

    def dim(self, n: int) -> int:
        if 0 <= n <= self.max_degree:
            return self.dims[n]
        return 0

    def verify_identities(self):
        n = self.max_degree
        for k in range(2, n + 1):
            if not self.b(k - 1).compose(self.b(k)).is_zero():
                raise CompositionError(f"b^2 != 0 at degree {k}")
        for k in range(0, n - 1):
            if not self.B(k + 1).compose(self.B(k)).is_zero():
                raise CompositionError(f"B^2 != 0 at degree {k}")
        for k in range(0, n):
            # at k = 0 the Bb term has no constituents, so the identity is bB = 0
            acc = self.b(k + 1).compose(self.B(k)).matrix
            if k >= 1:
                acc = acc + self.B(k - 1).compose(self.b(k)).matrix
            if not acc.is_zero():
                raise CompositionError(f"bB + Bb != 0 at degree {k}")

    def underlying_chain(self) -> ChainComplex:
        return ChainComplex(self.dims, self.b_maps, check=False)

    def to_json(self) -> dict:
        return {
            "dims": self.dims,
            "b": [m.matrix.to_json() for m in self.b_maps],
            "B": [m.matrix.to_json() for m in self.B_maps],
        }


class MixedMap:
    """Degree-zero map of mixed complexes (commutes with b and with B)."""

    def __init__(self, source: MixedComplex, target: MixedComplex,
                 maps: Sequence[LinMap], check: bool = True):
        self.source = source
        self.target = target
        self.maps = list(maps)
        n = min(source.max_degree, target.max_degree)
        assert len(self.maps) == n + 1
        if check:
            for k in range(1, n + 1):
                if self.maps[k - 1].compose(source.b(k)).matrix != \
                        target.b(k).compose(self.maps[k]).matrix:
                    raise NotChainMapError(f"does not commute with b at degree {k}")
            for k in range(0, n):
                if self.maps[k + 1].compose(source.B(k)).matrix != \
                        target.B(k).compose(self.maps[k]).matrix:
                    raise NotChainMapError(f"does not commute with B at degree {k}")

    def f(self, n: int) -> LinMap:
        return self.maps[n]


# ---------------------------------------------------------------------------
# S-complexes and the bar construction


class SComplexLevelData:
    """A chain complex with a periodicity operator S: P -> P[-2]."""

    def __init__(self, chain: ChainComplex, S: Sequence[LinMap], check: bool = True):
        self.chain = chain
        # S[k] = S_{k}: P_k -> P_{k-2}, defined for k >= 2 (stored from k = 2)
        self.S_maps = list(S)
        n = chain.max_degree
        assert len(self.S_maps) == max(0, n - 1)
        for k, m in enumerate(self.S_maps):
            deg = k + 2
            assert (m.domain_dim, m.codomain_dim) == (chain.dim(deg), chain.dim(deg - 2))
        if check:
            for deg in range(3, n + 1):
                lhs = self.S(deg - 1).compose(chain.d(deg))
                rhs = chain.d(deg - 2).compose(self.S(deg))
                if lhs.matrix != rhs.matrix:
                    raise NotChainMapError(f"S does not commute with d at degree {deg}")

    def S(self, n: int) -> LinMap:
        if n < 2 or n > self.chain.max_degree:
            return LinMap.zero(self.chain.dim(n), self.chain.dim(n - 2))
        return self.S_maps[n - 2]


def bar_S(m: MixedComplex, top: int | None = None) -> SComplexLevelData:
    """Bar construction: degree n part = sum over p >= 0 of M_{n-2p}.

    Slices are ordered by p ascending (so the top slice M_n comes first);
    the differential is b on each slice plus B from slice p into slice p-1,
    and S is the shift killing the top slice.

    ``top`` extends the output beyond m.max_degree, treating M as zero
    above its stored top; only do this when M is genuinely bounded (for a
    truncated M the default keeps every stored degree honest).
    """
    n = top if top is not None else m.max_degree
    slices = [list(range(k, -1, -2)) for k in range(n + 1)]  # degrees per slice p asc
    dims = [sum(m.dim(d) for d in degs) for degs, k in zip(slices, range(n + 1))]
    diffs = []
    for k in range(1, n + 1):
        src, tgt = slices[k], slices[k - 1]
        rows = [m.dim(d) for d in tgt]
        cols = [m.dim(d) for d in src]
        grid = [[None] * len(src) for _ in range(len(tgt))]
        for p, d_src in enumerate(src):
            # b: slice p of degree k lands in slice p of degree k-1
            if p < len(tgt):
                grid[p][p] = m.b(d_src).matrix
            # B: slice p lands in slice p-1
            if p >= 1:
                grid[p - 1][p] = m.B(d_src).matrix
        diffs.append(LinMap(dims[k], dims[k - 1], Matrix.block(grid, rows, cols)))
    chain = ChainComplex(dims, diffs)
    s_maps = []
    for k in range(2, n + 1):
        src, tgt = slices[k], slices[k - 2]
        rows = [m.dim(d) for d in tgt]
        cols = [m.dim(d) for d in src]
        grid = [[None] * len(src) for _ in range(len(tgt))]
        for p in range(1, len(src)):
            grid[p - 1][p] = Matrix.identity(m.dim(src[p]))
        s_maps.append(LinMap(dims[k], dims[k - 2], Matrix.block(grid, rows, cols)))
    return SComplexLevelData(chain, s_maps)


def hom_S(p: SComplexLevelData, q: SComplexLevelData) -> ChainComplex:
    """Degreewise kernel of f |-> S^Q f - f S^P inside Hom(P, Q).

    The induced differential is the restriction of the Hom boundary; the
    returned complex is expressed in the kernel bases (deterministic, from
    rref free columns).
    """
    pc, qc = p.chain, q.chain
    h = hom_complex(pc, qc)
    # [S, -]: Hom_n -> Hom_{n-2}; build it per stored degree and take kernels
    kers = []
    for i in range(h.max_degree + 1):
        nn = i + h.offset
        rows_dims = [pc.dim(r) * qc.dim(r + nn - 2) for r in range(pc.max_degree + 1)]
        cols_dims = [pc.dim(r) * qc.dim(r + nn) for r in range(pc.max_degree + 1)]
        grid = [[None] * (pc.max_degree + 1) for _ in range(pc.max_degree + 1)]
        for r in range(pc.max_degree + 1):
            if cols_dims[r] and rows_dims[r]:
                grid[r][r] = q.S(r + nn).matrix.kron(Matrix.identity(pc.dim(r)))
            if r >= 2 and cols_dims[r - 2] and rows_dims[r]:
                pre = Matrix.identity(qc.dim(r + nn - 2)).kron(p.S(r).matrix.transpose())
                grid[r][r - 2] = (grid[r][r - 2] + pre.scale(-1)) if grid[r][r - 2] else pre.scale(-1)
        smat = Matrix.block(grid, rows_dims, cols_dims)
        kers.append(kernel(LinMap(h.dim(i), sum(rows_dims), smat)))
    dims = [k.cols for k in kers]
    diffs = []
    for i in range(1, h.max_degree + 1):
        img = h.d(i).matrix * kers[i]
        sol = solve_matrix(kers[i - 1], img)
        if sol is None:
            raise NotChainMapError("Hom boundary does not preserve the S-kernel")
        diffs.append(LinMap(dims[i], dims[i - 1], sol))
    return ChainComplex(dims, diffs, offset=h.offset)


# ---------------------------------------------------------------------------
# supercomplexes


class SuperComplex:
    """Z/2-graded object with an odd square-zero differential."""

    def __init__(self, d_even: LinMap, d_odd: LinMap, check: bool = True):
        self.d_even = d_even   # even -> odd
        self.d_odd = d_odd     # odd -> even
        self.dim_even = d_even.domain_dim
        self.dim_odd = d_odd.domain_dim
        assert d_even.codomain_dim == self.dim_odd
        assert d_odd.codomain_dim == self.dim_even
        if check:
            if not d_odd.compose(d_even).is_zero() or not d_even.compose(d_odd).is_zero():
                raise CompositionError("supercomplex differential does not square to zero")

    @staticmethod
    def from_dims(dim_even: int, dim_odd: int, d_even: Matrix | None = None,
                  d_odd: Matrix | None = None) -> "SuperComplex":
        de = LinMap(dim_even, dim_odd, d_even) if d_even is not None else LinMap.zero(dim_even, dim_odd)
        do = LinMap(dim_odd, dim_even, d_odd) if d_odd is not None else LinMap.zero(dim_odd, dim_even)
        return SuperComplex(de, do)

    def d(self, parity: int) -> LinMap:
        return self.d_even if parity == 0 else self.d_odd

    def dim(self, parity: int) -> int:
        return self.dim_even if parity == 0 else self.dim_odd

    def total_dim(self) -> int:
        return self.dim_even + self.dim_odd

    def parity_shift(self) -> "SuperComplex":
        """Swap parities; differentials are negated (suspension convention)."""
        return SuperComplex(-self.d_odd, -self.d_even)

    def homology_basis(self, parity: int) -> HomologyBasis:
        return homology_basis(self.d(1 - parity), self.d(parity))

    def homology_data(self, parity: int) -> HomologyData:
        return homology_data(self.d(1 - parity), self.d(parity))

    def homology_dims(self) -> tuple:
        return (
            homology_dim(self.d_odd, self.d_even),
            homology_dim(self.d_even, self.d_odd),
        )

    def is_acyclic(self) -> bool:
        return self.homology_dims() == (0, 0)

    def to_json(self) -> dict:
        return {
            "dim_even": self.dim_even,
            "dim_odd": self.dim_odd,
            "d_even": self.d_even.matrix.to_json(),
            "d_odd": self.d_odd.matrix.to_json(),
        }

    @staticmethod
    def from_json(obj) -> "SuperComplex":
        de = Matrix.from_json(obj["d_even"], rows=int(obj["dim_odd"]), cols=int(obj["dim_even"]))
        do = Matrix.from_json(obj["d_odd"], rows=int(obj["dim_even"]), cols=int(obj["dim_odd"]))
        return SuperComplex(LinMap(int(obj["dim_even"]), int(obj["dim_odd"]), de),
                            LinMap(int(obj["dim_odd"]), int(obj["dim_even"]), do))

    @staticmethod
    def zero() -> "SuperComplex":
        return SuperComplex.from_dims(0, 0)

    @staticmethod
    def point(even: int = 1, odd: int = 0) -> "SuperComplex":
        return SuperComplex.from_dims(even, odd)


class SuperMap:
    """Parity-preserving chain map of supercomplexes."""

    def __init__(self, source: SuperComplex, target: SuperComplex,
                 even: LinMap, odd: LinMap, check: bool = True):
        self.source = source
        self.target = target
        self.even = even
        self.odd = odd
        assert (even.domain_dim, even.codomain_dim) == (source.dim_even, target.dim_even)
        assert (odd.domain_dim, odd.codomain_dim) == (source.dim_odd, target.dim_odd)
        if check:
            if target.d_even.compose(even).matrix != odd.compose(source.d_even).matrix:
                raise NotChainMapError("even square does not commute")
            if target.d_odd.compose(odd).matrix != even.compose(source.d_odd).matrix:
                raise NotChainMapError("odd square does not commute")

    def f(self, parity: int) -> LinMap:
        return self.even if parity == 0 else self.odd

    def compose(self, other: "SuperMap") -> "SuperMap":
        assert other.target is self.source or (
            other.target.dim_even == self.source.dim_even
            and other.target.dim_odd == self.source.dim_odd
        )
        return SuperMap(other.source, self.target,
                        self.even.compose(other.even), self.odd.compose(other.odd),
                        check=False)

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    @staticmethod
    def identity(x: SuperComplex) -> "SuperMap":
        return SuperMap(x, x, LinMap.identity(x.dim_even), LinMap.identity(x.dim_odd),
                        check=False)

    @staticmethod
    def zero(source: SuperComplex, target: SuperComplex) -> "SuperMap":
        return SuperMap(source, target,
                        LinMap.zero(source.dim_even, target.dim_even),
                        LinMap.zero(source.dim_odd, target.dim_odd), check=False)


def direct_sum_super(parts: Sequence[SuperComplex]) -> SuperComplex:
    de = Matrix.block(
        [[p.d_even.matrix if i == j else None for j, p in enumerate(parts)]
         for i, _ in enumerate(parts)],
        row_dims=[p.dim_odd for p in parts], col_dims=[p.dim_even for p in parts],
    ) if parts else Matrix.zeros(0, 0)
    do = Matrix.block(
        [[p.d_odd.matrix if i == j else None for j, p in enumerate(parts)]
         for i, _ in enumerate(parts)],
        row_dims=[p.dim_even for p in parts], col_dims=[p.dim_odd for p in parts],
    ) if parts else Matrix.zeros(0, 0)
    ev = sum(p.dim_even for p in parts)
    od = sum(p.dim_odd for p in parts)
    return SuperComplex(LinMap(ev, od, de), LinMap(od, ev, do), check=False)


@dataclass
class SuperConeData:
    cone: SuperComplex
    include_target: SuperMap
    project_source_even: Matrix  # cone_even -> source_odd (the shifted copy)
    project_source_odd: Matrix   # cone_odd -> source_even


def cone_super(f: SuperMap) -> SuperConeData:
    """Cone of a supercomplex map: target + parity-shifted source."""
    x, y = f.source, f.target
    ce, co = y.dim_even + x.dim_odd, y.dim_odd + x.dim_even
    de = Matrix.block(
        [[y.d_even.matrix, f.odd.matrix],
         [None, (-x.d_odd).matrix]],
        row_dims=[y.dim_odd, x.dim_even], col_dims=[y.dim_even, x.dim_odd],
    )
    do = Matrix.block(
        [[y.d_odd.matrix, f.even.matrix],
         [None, (-x.d_even).matrix]],
        row_dims=[y.dim_even, x.dim_odd], col_dims=[y.dim_odd, x.dim_even],
    )
    c = SuperComplex(LinMap(ce, co, de), LinMap(co, ce, do))
    ie = Matrix.block([[Matrix.identity(y.dim_even)], [None]],
                      row_dims=[y.dim_even, x.dim_odd], col_dims=[y.dim_even])
    io = Matrix.block([[Matrix.identity(y.dim_odd)], [None]],
                      row_dims=[y.dim_odd, x.dim_even], col_dims=[y.dim_odd])
    incl = SuperMap(y, c, LinMap(y.dim_even, ce, ie), LinMap(y.dim_odd, co, io), check=False)
    pe = Matrix.block([[None, Matrix.identity(x.dim_odd)]],
                      row_dims=[x.dim_odd], col_dims=[y.dim_even, x.dim_odd])
    po = Matrix.block([[None, Matrix.identity(x.dim_even)]],
                      row_dims=[x.dim_even], col_dims=[y.dim_odd, x.dim_even])
    return SuperConeData(c, incl, pe, po)


def is_quasi_iso_super(f: SuperMap) -> bool:
    """No truncation in the Z/2 world: the cone must be acyclic outright."""
    return cone_super(f).cone.is_acyclic()


def super_of_chain(c: ChainComplex) -> SuperComplex:
    """Fold a bounded complex by parity of the true degree."""
    even_degs = [n for n in range(c.max_degree + 1) if (n + c.offset) % 2 == 0]
    odd_degs = [n for n in range(c.max_degree + 1) if (n + c.offset) % 2 == 1]
    ev_dims = [c.dim(n) for n in even_degs]
    od_dims = [c.dim(n) for n in odd_degs]
    pos_e = {n: i for i, n in enumerate(even_degs)}
    pos_o = {n: i for i, n in enumerate(odd_degs)}
    de_grid = [[None] * len(even_degs) for _ in range(len(odd_degs))]
    for n in even_degs:
        if n - 1 in pos_o:
            de_grid[pos_o[n - 1]][pos_e[n]] = c.d(n).matrix
    do_grid = [[None] * len(odd_degs) for _ in range(len(even_degs))]
    for n in odd_degs:
        if n - 1 in pos_e:
            do_grid[pos_e[n - 1]][pos_o[n]] = c.d(n).matrix
    de = Matrix.block(de_grid, od_dims, ev_dims)
    do = Matrix.block(do_grid, ev_dims, od_dims)
    return SuperComplex(LinMap(sum(ev_dims), sum(od_dims), de),
                        LinMap(sum(od_dims), sum(ev_dims), do))


def hom_super(x: SuperComplex, y: SuperComplex) -> SuperComplex:
    """Mapping supercomplex of Z/2-homogeneous maps.

    Even part = Hom(X_e, Y_e) + Hom(X_o, Y_o), odd part = Hom(X_e, Y_o) +
    Hom(X_o, Y_e); differential D f = d_Y f - (-1)^|f| f d_X; components are
    vectorized row-major.
    """
    he_dims = [x.dim_even * y.dim_even, x.dim_odd * y.dim_odd]
    ho_dims = [x.dim_even * y.dim_odd, x.dim_odd * y.dim_even]

    def post(m: Matrix, src_dim: int) -> Matrix:
        return m.kron(Matrix.identity(src_dim))

    def pre(m: Matrix, tgt_dim: int) -> Matrix:
        return Matrix.identity(tgt_dim).kron(m.transpose())

    # D on even maps (f_ee, f_oo) -> (X_e -> Y_o, X_o -> Y_e)
    de = Matrix.block(
        [[post(y.d_even.matrix, x.dim_even), pre(x.d_even.matrix, y.dim_odd).scale(-1)],
         [pre(x.d_odd.matrix, y.dim_even).scale(-1), post(y.d_odd.matrix, x.dim_odd)]],
        row_dims=ho_dims, col_dims=he_dims,
    )
    # D on odd maps (g_eo: X_e -> Y_o, g_oe: X_o -> Y_e) -> even components
    do = Matrix.block(
        [[post(y.d_odd.matrix, x.dim_even), pre(x.d_even.matrix, y.dim_even)],
         [pre(x.d_odd.matrix, y.dim_odd), post(y.d_even.matrix, x.dim_odd)]],
        row_dims=he_dims, col_dims=ho_dims,
    )
    return SuperComplex(LinMap(sum(he_dims), sum(ho_dims), de),
                        LinMap(sum(ho_dims), sum(he_dims), do))
