"""Truncated towers of supercomplexes and the pro-level checkers.

A tower is an inverse system X_N -> ... -> X_2 -> X_1 of supercomplexes
(levels indexed from 1).  Maps of towers are stored as representatives: a
nondecreasing shift function f together with levelwise maps X_{f(n)} -> Y_n
commuting with the structure maps.

Pro-contractibility is checked by the operational criterion: every homology
class at level n must die under H(X_{n'}) -> H(X_n) for some witness level
n' within the truncation.  Verdicts are only claimed for levels n <= N - w
(window w); a missing witness is reported as not-found-within-truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import (
    SuperComplex,
    SuperMap,
    cone_super,
    direct_sum_super,
)
from .linalg import (
    LinMap,
    Matrix,
    homology_basis,
    is_zero_on_homology,
    kernel,
    rank,
    rank_on_homology,
    solve,
)


class Tower:
    """Levels 1..N with structure maps sigma_n: X_n -> X_{n-1}."""

    def __init__(self, levels: Sequence[SuperComplex], sigma: Sequence[SuperMap],
                 check: bool = True):
        self.levels = list(levels)
        self.sigma = list(sigma)
        assert len(self.sigma) == max(0, len(self.levels) - 1)
        if check:
            for i, s in enumerate(self.sigma):
                # SuperMap construction already verified the chain condition;
                # here we pin the endpoints
                assert s.source is self.levels[i + 1] or (
                    s.source.dim_even == self.levels[i + 1].dim_even
                    and s.source.dim_odd == self.levels[i + 1].dim_odd)
                assert s.target is self.levels[i] or (
                    s.target.dim_even == self.levels[i].dim_even
                    and s.target.dim_odd == self.levels[i].dim_odd)

    @property
    def top(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> SuperComplex:
        assert 1 <= n <= self.top
        return self.levels[n - 1]

    def sigma_map(self, n: int) -> SuperMap:
        """sigma_n: X_n -> X_{n-1} (2 <= n <= top)."""
        assert 2 <= n <= self.top
        return self.sigma[n - 2]

    def sigma_composite(self, n_from: int, n_to: int) -> SuperMap:
        """The composite X_{n_from} -> X_{n_to} (identity when equal)."""
        assert 1 <= n_to <= n_from <= self.top
        out = SuperMap.identity(self.level(n_from))
        for n in range(n_from, n_to, -1):
            out = self.sigma_map(n).compose(out)
        return out

    @staticmethod
    def constant(x: SuperComplex, n: int) -> "Tower":
        return Tower([x] * n, [SuperMap.identity(x) for _ in range(n - 1)], check=False)

    def to_json(self) -> dict:
        return {
            "levels": [x.to_json() for x in self.levels],
            "sigma": [{"even": s.even.matrix.to_json(), "odd": s.odd.matrix.to_json()}
                      for s in self.sigma],
        }


class TowerMap:
    """Representative of a pro-map: shift f and maps g_n: X_{f(n)} -> Y_n."""

    def __init__(self, source: Tower, target: Tower, shift: Sequence[int],
                 maps: Sequence[SuperMap], check: bool = True):
        self.source = source
        self.target = target
        self.shift = list(shift)
        self.maps = list(maps)
        assert len(self.shift) == len(self.maps)
        assert all(self.shift[i] <= self.shift[i + 1] for i in range(len(self.shift) - 1))
        assert all(1 <= s <= source.top for s in self.shift)
        if check:
            for n in range(2, len(self.maps) + 1):
                lhs = self.maps[n - 2].compose(
                    source.sigma_composite(self.shift[n - 1], self.shift[n - 2]))
                rhs = target.sigma_map(n).compose(self.maps[n - 1])
                if lhs.even.matrix != rhs.even.matrix or lhs.odd.matrix != rhs.odd.matrix:
                    raise ValueError(f"representative not compatible with sigma at level {n}")

    @property
    def levels(self) -> int:
        return len(self.maps)

    def g(self, n: int) -> SuperMap:
        return self.maps[n - 1]

    def f(self, n: int) -> int:
        return self.shift[n - 1]

    def compose(self, other: "TowerMap") -> "TowerMap":
        """self . other; shifts compose as f_other(f_self(n))."""
        n_levels = 0
        shift = []
        maps = []
        for n in range(1, self.levels + 1):
            m = self.f(n)
            if m > other.levels:
                break
            shift.append(other.f(m))
            maps.append(self.g(n).compose(other.g(m)))
            n_levels += 1
        return TowerMap(other.source, self.target, shift, maps, check=False)

    @staticmethod
    def identity(t: Tower) -> "TowerMap":
        return TowerMap(t, t, list(range(1, t.top + 1)),
                        [SuperMap.identity(x) for x in t.levels], check=False)

    @staticmethod
    def levelwise(source: Tower, target: Tower, maps: Sequence[SuperMap],
                  check: bool = True) -> "TowerMap":
        return TowerMap(source, target, list(range(1, len(maps) + 1)), maps, check=check)


# -- fake products ------------------------------------------------------------


def fake_product(seq: Sequence[SuperComplex], top: int | None = None) -> Tower:
    """Level n = direct sum of the first n entries, projections as sigma."""
    n = top if top is not None else len(seq)
    assert n <= len(seq)
    levels = [direct_sum_super(list(seq[:m])) for m in range(1, n + 1)]
    sigmas = []
    for m in range(2, n + 1):
        src, tgt = levels[m - 1], levels[m - 2]
        ev = Matrix.block(
            [[Matrix.identity(tgt.dim_even), None]],
            row_dims=[tgt.dim_even], col_dims=[tgt.dim_even, seq[m - 1].dim_even],
        )
        od = Matrix.block(
            [[Matrix.identity(tgt.dim_odd), None]],
            row_dims=[tgt.dim_odd], col_dims=[tgt.dim_odd, seq[m - 1].dim_odd],
        )
        sigmas.append(SuperMap(src, tgt, LinMap(src.dim_even, tgt.dim_even, ev),
                               LinMap(src.dim_odd, tgt.dim_odd, od)))
    return Tower(levels, sigmas, check=False)


def iota(a: Tower) -> TowerMap:
    """The canonical map A -> fake_product(levels of A), levelwise.

    Component into the p-th factor at level n is the composite sigma^{n-p},
    so iota_n = (sigma^{n-1}, ..., sigma, id) stacked.
    """
    prod = fake_product(a.levels)
    maps = []
    for n in range(1, a.top + 1):
        comps = [a.sigma_composite(n, p) for p in range(1, n + 1)]
        ev = Matrix.block([[c.even.matrix] for c in comps],
                          row_dims=[a.level(p).dim_even for p in range(1, n + 1)],
                          col_dims=[a.level(n).dim_even])
        od = Matrix.block([[c.odd.matrix] for c in comps],
                          row_dims=[a.level(p).dim_odd for p in range(1, n + 1)],
                          col_dims=[a.level(n).dim_odd])
        tgt = prod.level(n)
        maps.append(SuperMap(a.level(n), tgt,
                             LinMap(a.level(n).dim_even, tgt.dim_even, ev),
                             LinMap(a.level(n).dim_odd, tgt.dim_odd, od)))
    return TowerMap.levelwise(a, prod, maps)


# -- property (P) --------------------------------------------------------------


def solve_super_map(source: SuperComplex, target: SuperComplex,
                    left: list, right: list) -> SuperMap | None:
    """Solve for a chain map s: source -> target with extra linear conditions.

    Each (l, r) pair in zip(left, right) imposes l_e . s_e = r_e and
    l_o . s_o = r_o (post-composition conditions, given per parity as
    matrices).  The chain condition is always imposed.  Unknowns are the
    entries of s_e and s_o; solved deterministically, free entries zero.
    """
    se_dim = target.dim_even * source.dim_even
    so_dim = target.dim_odd * source.dim_odd
    rows = []
    rhs = []

    def emit(block_e: Matrix | None, block_o: Matrix | None, rvec):
        row_len = se_dim + so_dim
        m_rows = block_e.rows if block_e is not None else block_o.rows
        for i in range(m_rows):
            row = [Fraction(0)] * row_len
            if block_e is not None:
                for j, v in enumerate(block_e.data[i]):
                    if v != 0:
                        row[j] = v
            if block_o is not None:
                for j, v in enumerate(block_o.data[i]):
                    if v != 0:
                        row[se_dim + j] = v
            rows.append(row)
            rhs.append(rvec[i])

    # chain condition: d_e^T s_e - s_o d_e^S = 0 and d_o^T s_o - s_e d_o^S = 0
    pe = target.d_even.matrix.kron(Matrix.identity(source.dim_even))
    qe = Matrix.identity(target.dim_odd).kron(source.d_even.matrix.transpose())
    emit(pe, qe.scale(-1), [Fraction(0)] * pe.rows)
    po = target.d_odd.matrix.kron(Matrix.identity(source.dim_odd))
    qo = Matrix.identity(target.dim_even).kron(source.d_odd.matrix.transpose())
    emit(qo.scale(-1), po, [Fraction(0)] * po.rows)
    for l, r in zip(left, right):
        le, lo = l
        re, ro = r
        if le is not None:
            emit(le.kron(Matrix.identity(source.dim_even)), None,
                 [x for row in re.data for x in row])
        if lo is not None:
            emit(None, lo.kron(Matrix.identity(source.dim_odd)),
                 [x for row in ro.data for x in row])
    if rows:
        sol = solve(Matrix.from_rows(rows) if rows else Matrix.zeros(0, se_dim + so_dim), rhs)
        if sol is None:
            return None
    else:
        sol = [Fraction(0)] * (se_dim + so_dim)
    se = Matrix(target.dim_even, source.dim_even,
                [sol[i * source.dim_even:(i + 1) * source.dim_even]
                 for i in range(target.dim_even)])
    so = Matrix(target.dim_odd, source.dim_odd,
                [sol[se_dim + i * source.dim_odd: se_dim + (i + 1) * source.dim_odd]
                 for i in range(target.dim_odd)])
    return SuperMap(source, target,
                    LinMap(source.dim_even, target.dim_even, se),
                    LinMap(source.dim_odd, target.dim_odd, so))


@dataclass
class PropertyPResult:
    """Witnesses s_k: A_{k+1} -> A_{k+2} with sigma^2 s_k = sigma.

    verdict True means every witness within truncation was found; None means
    some witness search failed, which at a finite truncation is inconclusive
    rather than a refutation.
    """

    witnesses: dict
    failed_at: tuple
    verdict: bool | None

    def __bool__(self):
        return self.verdict is True


def has_property_P(a: Tower) -> PropertyPResult:
    witnesses = {}
    failed = []
    for k in range(1, a.top - 1):
        src = a.level(k + 1)
        tgt = a.level(k + 2)
        sig2 = a.sigma_composite(k + 2, k)
        sig1 = a.sigma_composite(k + 1, k)
        s = solve_super_map(src, tgt,
                            left=[((sig2.even.matrix), (sig2.odd.matrix))],
                            right=[((sig1.even.matrix), (sig1.odd.matrix))])
        if s is None:
            failed.append(k)
        else:
            witnesses[k] = s
    verdict = True if not failed else None
    return PropertyPResult(witnesses, tuple(failed), verdict)


# -- fibrant replacement ---------------------------------------------------------


def _partial_sum(x: Tower, m: int) -> SuperComplex:
    return direct_sum_super([x.level(p) for p in range(1, m + 1)])


def _tau(x: Tower, m: int, parity: int) -> Matrix:
    """[1 -sigma] bidiagonal: sum of levels 1..m+1 -> sum of levels 1..m."""
    rows = [x.level(p).dim(parity) for p in range(1, m + 1)]
    cols = [x.level(p).dim(parity) for p in range(1, m + 2)]
    grid = [[None] * (m + 1) for _ in range(m)]
    for p in range(m):
        grid[p][p] = Matrix.identity(rows[p])
        grid[p][p + 1] = (-x.sigma_map(p + 2).f(parity).matrix)
    return Matrix.block(grid, rows, cols)


def r_fibrant(x: Tower):
    """Fibrant replacement tower RX and the comparison map r: X -> RX.

    RX_m is the fiber-oriented cone of [1 -sigma]: sum_{p<=m+1} X_p plus the
    parity shift of sum_{p<=m} X_p, with differential (a, b) |->
    (da, -tau a - db).  Since tau is always onto with kernel isomorphic to
    X_{m+1}, the composite r_m = (iota_{m+1}, 0): X_{m+1} -> RX_m (shift
    f(m) = m+1) is a levelwise quasi-isomorphism, hence a pro-weak
    equivalence, and is levelwise split injective.
    """
    assert x.top >= 2, "need at least two levels"
    n_out = x.top - 1
    levels = []
    taus = []
    for m in range(1, n_out + 1):
        a = _partial_sum(x, m + 1)
        b = _partial_sum(x, m)
        te = _tau(x, m, 0)
        to = _tau(x, m, 1)
        ev_dim = a.dim_even + b.dim_odd
        od_dim = a.dim_odd + b.dim_even
        de = Matrix.block(
            [[a.d_even.matrix, None],
             [te.scale(-1), -b.d_odd.matrix]],
            row_dims=[a.dim_odd, b.dim_even], col_dims=[a.dim_even, b.dim_odd],
        )
        do = Matrix.block(
            [[a.d_odd.matrix, None],
             [to.scale(-1), -b.d_even.matrix]],
            row_dims=[a.dim_even, b.dim_odd], col_dims=[a.dim_odd, b.dim_even],
        )
        levels.append(SuperComplex(LinMap(ev_dim, od_dim, de), LinMap(od_dim, ev_dim, do)))
        taus.append((te, to))
    sigmas = []
    for m in range(2, n_out + 1):
        src, tgt = levels[m - 1], levels[m - 2]
        a_src = [x.level(p) for p in range(1, m + 2)]
        b_src = [x.level(p) for p in range(1, m + 1)]

        def proj(parts_src, parity):
            dims_src = [p.dim(parity) for p in parts_src]
            dims_tgt = dims_src[:-1]
            grid = [[Matrix.identity(dims_tgt[i]) if i == j else None
                     for j in range(len(dims_src))] for i in range(len(dims_tgt))]
            return Matrix.block(grid, dims_tgt, dims_src)

        ev = Matrix.block(
            [[proj(a_src, 0), None], [None, proj(b_src, 1)]],
            row_dims=[sum(p.dim(0) for p in a_src[:-1]), sum(p.dim(1) for p in b_src[:-1])],
            col_dims=[sum(p.dim(0) for p in a_src), sum(p.dim(1) for p in b_src)],
        )
        od = Matrix.block(
            [[proj(a_src, 1), None], [None, proj(b_src, 0)]],
            row_dims=[sum(p.dim(1) for p in a_src[:-1]), sum(p.dim(0) for p in b_src[:-1])],
            col_dims=[sum(p.dim(1) for p in a_src), sum(p.dim(0) for p in b_src)],
        )
        sigmas.append(SuperMap(src, tgt,
                               LinMap(src.dim_even, tgt.dim_even, ev),
                               LinMap(src.dim_odd, tgt.dim_odd, od)))
    rx = Tower(levels, sigmas, check=False)

    it = iota(x)
    maps = []
    for m in range(1, n_out + 1):
        src = x.level(m + 1)
        tgt = rx.level(m)
        base = it.g(m + 1)  # X_{m+1} -> sum_{p<=m+1}
        ev = Matrix.block([[base.even.matrix], [None]],
                          row_dims=[base.even.codomain_dim, tgt.dim_even - base.even.codomain_dim],
                          col_dims=[src.dim_even])
        od = Matrix.block([[base.odd.matrix], [None]],
                          row_dims=[base.odd.codomain_dim, tgt.dim_odd - base.odd.codomain_dim],
                          col_dims=[src.dim_odd])
        maps.append(SuperMap(src, tgt, LinMap(src.dim_even, tgt.dim_even, ev),
                             LinMap(src.dim_odd, tgt.dim_odd, od)))
    r = TowerMap(x, rx, [m + 1 for m in range(1, n_out + 1)], maps)
    return rx, r


# -- pro-level checkers -----------------------------------------------------------


@dataclass
class ProTrivialityReport:
    """Per level n: the least witness n' with H(X_{n'}) -> H(X_n) zero."""

    window: int
    checked_levels: tuple
    witnesses: dict        # n -> n' (only for witnessed levels)
    not_found: tuple       # levels with no witness within truncation
    verdict: bool

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "checked_levels": list(self.checked_levels),
            "witnesses": {str(n): w for n, w in sorted(self.witnesses.items())},
            "not_found_within_truncation": list(self.not_found),
            "verdict": self.verdict,
        }


def is_pro_contractible(c: Tower, window: int = 2) -> ProTrivialityReport:
    assert window >= 1
    tops = {}
    for n in range(1, c.top + 1):
        x = c.level(n)
        tops[n] = (x.homology_basis(0), x.homology_basis(1))
    witnesses = {}
    missing = []
    checked = tuple(range(1, c.top - window + 1))
    for n in checked:
        found = None
        for np in range(n, c.top + 1):
            comp = c.sigma_composite(np, n)
            he_src, ho_src = tops[np]
            he_tgt, ho_tgt = tops[n]
            if is_zero_on_homology(comp.even.matrix, he_src, he_tgt) and \
               is_zero_on_homology(comp.odd.matrix, ho_src, ho_tgt):
                found = np
                break
        if found is None:
            missing.append(n)
        else:
            witnesses[n] = found
    return ProTrivialityReport(window, checked, witnesses, tuple(missing),
                               verdict=not missing)


def cone_tower(f: TowerMap) -> Tower:
    """Levelwise mapping cone of a tower map, with the induced sigmas."""
    cones = []
    incls = []
    for n in range(1, f.levels + 1):
        data = cone_super(f.g(n))
        cones.append(data.cone)
    sigmas = []
    for n in range(2, f.levels + 1):
        y_sig = f.target.sigma_map(n)
        x_sig = f.source.sigma_composite(f.f(n), f.f(n - 1))
        src, tgt = cones[n - 1], cones[n - 2]
        gx, gy = f.source.level(f.f(n)), f.target.level(n)
        hx, hy = f.source.level(f.f(n - 1)), f.target.level(n - 1)
        ev = Matrix.block(
            [[y_sig.even.matrix, None], [None, x_sig.odd.matrix]],
            row_dims=[hy.dim_even, hx.dim_odd], col_dims=[gy.dim_even, gx.dim_odd],
        )
        od = Matrix.block(
            [[y_sig.odd.matrix, None], [None, x_sig.even.matrix]],
            row_dims=[hy.dim_odd, hx.dim_even], col_dims=[gy.dim_odd, gx.dim_even],
        )
        sigmas.append(SuperMap(src, tgt, LinMap(src.dim_even, tgt.dim_even, ev),
                               LinMap(src.dim_odd, tgt.dim_odd, od)))
    return Tower(cones, sigmas, check=False)


def is_pro_weq(f: TowerMap, window: int = 2) -> ProTrivialityReport:
    """Pro-weak equivalence via pro-contractibility of the levelwise cone."""
    return is_pro_contractible(cone_tower(f), window=window)


def extend_along_split_injection(j: SuperMap, phi: SuperMap) -> SuperMap | None:
    """Chain map psi: Y -> I with psi . j = phi, when one exists.

    Realizes the extension property defining relative injectivity in the
    instantiated setting; pre-composition conditions, so assembled directly
    rather than through solve_super_map.
    """
    y, i = j.target, phi.target
    se_dim = i.dim_even * y.dim_even
    so_dim = i.dim_odd * y.dim_odd
    rows = []
    rhs = []

    def emit_block(mat: Matrix, col_offset: int, rvec, width: int):
        for r in range(mat.rows):
            row = [Fraction(0)] * width
            for cidx, v in enumerate(mat.data[r]):
                if v != 0:
                    row[col_offset + cidx] = v
            rows.append(row)
            rhs.append(rvec[r])

    width = se_dim + so_dim
    # chain: d_I psi_e - psi_o d_Y^e = 0 ; d_I^o psi_o - psi_e d_Y^o = 0
    a = i.d_even.matrix.kron(Matrix.identity(y.dim_even))
    b = Matrix.identity(i.dim_odd).kron(y.d_even.matrix.transpose())
    combined = a.hstack(b.scale(-1))
    emit_block(combined, 0, [Fraction(0)] * combined.rows, width)
    a2 = Matrix.identity(i.dim_even).kron(y.d_odd.matrix.transpose()).scale(-1)
    b2 = i.d_odd.matrix.kron(Matrix.identity(y.dim_odd))
    combined2 = a2.hstack(b2)
    emit_block(combined2, 0, [Fraction(0)] * combined2.rows, width)
    # psi_e j_e = phi_e
    pe = Matrix.identity(i.dim_even).kron(j.even.matrix.transpose())
    emit_block(pe.hstack(Matrix.zeros(pe.rows, so_dim)), 0,
               [x for row in phi.even.matrix.data for x in row], width)
    po = Matrix.identity(i.dim_odd).kron(j.odd.matrix.transpose())
    emit_block(Matrix.zeros(po.rows, se_dim).hstack(po), 0,
               [x for row in phi.odd.matrix.data for x in row], width)
    sol = solve(Matrix.from_rows(rows) if rows else Matrix.zeros(0, width), rhs)
    if sol is None:
        return None
    pe_m = Matrix(i.dim_even, y.dim_even,
                  [sol[t * y.dim_even:(t + 1) * y.dim_even] for t in range(i.dim_even)])
    po_m = Matrix(i.dim_odd, y.dim_odd,
                  [sol[se_dim + t * y.dim_odd: se_dim + (t + 1) * y.dim_odd]
                   for t in range(i.dim_odd)])
    return SuperMap(y, i, LinMap(y.dim_even, i.dim_even, pe_m),
                    LinMap(y.dim_odd, i.dim_odd, po_m))
