"""The mixed complex of noncommutative differential forms of an algebra.

Spaces: degree 0 is A itself; degree n >= 1 is A~ tensor A^{tensor n}, where
A~ = A + Q is the unitalization with the adjoined unit as LAST coordinate.
A basis monomial is (lead, j_1, ..., j_n) with lead in 0..d (d = the unit)
and j_t in 0..d-1, flattened most-significant-first.

Differentials (the conventions that make b^2 = B^2 = bB + Bb = 0 exact):

* b = sum_{i=0}^{n-1} (-1)^i mu_i + (-1)^n mu_n, where mu_i multiplies
  adjacent tensor factors in the unitalization and the wrap term mu_n
  multiplies the last factor into the full leading factor (unit included).
* B vanishes on the unit summand (lead = d) and on the A-summand is
  sum_{i=0}^{n} (-1)^{n i} (prepend-unit . cyc^i), with cyc moving the last
  factor to the front.
* The de Rham differential delta sends (lead, j...) to (unit, p(lead), j...)
  and kills the unit summand.

The A-summand C_n(A) = A^{tensor n+1} is a b-stable subcomplex; the quotient
bar complex is indexed WITHOUT a shift here: Cbar_n(A) = A^{tensor n} for
n >= 1 and Cbar_0 = 0, carrying the induced bar differential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, IdealInclusion, unitalize
from .complexes import ChainComplex, ChainMap, MixedComplex, MixedMap
from .linalg import LinMap, Matrix, rank


# -- basis bookkeeping ---------------------------------------------------------


def omega_dim(d: int, n: int) -> int:
    return d if n == 0 else (d + 1) * d**n


def omega_decode(d: int, n: int, idx: int):
    """Index -> (lead, factors); degree 0 decodes to (idx, ())."""
    if n == 0:
        return idx, ()
    lead, rest = divmod(idx, d**n)
    factors = []
    for t in range(n - 1, -1, -1):
        q, rest = divmod(rest, d**t)
        factors.append(q)
    return lead, tuple(factors)


def omega_encode(d: int, n: int, lead: int, factors) -> int:
    if n == 0:
        assert not factors
        return lead
    idx = lead
    for j in factors:
        idx = idx * d + j
    return idx


def _mono_add(acc: dict, idx: int, coeff):
    v = acc.get(idx)
    v = coeff if v is None else v + coeff
    if v:
        acc[idx] = v
    elif idx in acc:
        del acc[idx]


def b_column(a: Algebra, n: int, idx: int) -> dict:
    """Sparse image of the basis monomial under b: Omega^n -> Omega^{n-1}."""
    d = a.dim
    lead, js = omega_decode(d, n, idx)
    out: dict = {}
    if n == 0:
        return out
    m = n - 1
    # i = 0: multiply lead into the first factor (unit acts as identity)
    if lead == d:
        _mono_add(out, omega_encode(d, m, js[0], js[1:]), Fraction(1))
    else:
        for k, c in a.table[lead][js[0]].items():
            _mono_add(out, omega_encode(d, m, k, js[1:]), c)
    # middle terms
    for i in range(1, n):
        sgn = -1 if i % 2 else 1
        for k, c in a.table[js[i - 1]][js[i]].items():
            tup = js[: i - 1] + (k,) + js[i + 1:]
            _mono_add(out, omega_encode(d, m, lead, tup), sgn * c)
    # wrap term: last factor times the full leading factor
    sgn = -1 if n % 2 else 1
    if lead == d:
        _mono_add(out, omega_encode(d, m, js[-1], js[:-1]), Fraction(sgn))
    else:
        for k, c in a.table[js[-1]][lead].items():
            _mono_add(out, omega_encode(d, m, k, js[:-1]), sgn * c)
    return out


def bprime_column(a: Algebra, n: int, idx: int) -> dict:
    """The bar differential b' (b without the wrap term)."""
    d = a.dim
    lead, js = omega_decode(d, n, idx)
    out: dict = {}
    if n == 0:
        return out
    m = n - 1
    if lead == d:
        _mono_add(out, omega_encode(d, m, js[0], js[1:]), Fraction(1))
    else:
        for k, c in a.table[lead][js[0]].items():
            _mono_add(out, omega_encode(d, m, k, js[1:]), c)
    for i in range(1, n):
        sgn = -1 if i % 2 else 1
        for k, c in a.table[js[i - 1]][js[i]].items():
            tup = js[: i - 1] + (k,) + js[i + 1:]
            _mono_add(out, omega_encode(d, m, lead, tup), sgn * c)
    return out


def B_column(a: Algebra, n: int, idx: int) -> dict:
    """Sparse image under the Connes operator B: Omega^n -> Omega^{n+1}."""
    d = a.dim
    lead, js = omega_decode(d, n, idx)
    out: dict = {}
    if lead == d:
        return out
    tup = (lead,) + js  # n+1 factors in A
    for i in range(n + 1):
        sgn = -1 if (n * i) % 2 else 1
        cyc = tup[n + 1 - i:] + tup[: n + 1 - i]
        _mono_add(out, omega_encode(d, n + 1, d, cyc), Fraction(sgn))
    return out


def delta_column(a: Algebra, n: int, idx: int) -> dict:
    """De Rham differential: kills the unit summand, prepends d(lead)."""
    d = a.dim
    lead, js = omega_decode(d, n, idx)
    if lead == d:
        return {}
    return {omega_encode(d, n + 1, d, (lead,) + js): Fraction(1)}


# -- the forms complex -----------------------------------------------------------


class FormsComplex:
    """Mixed complex Omega(A) truncated at max_degree, plus bookkeeping."""

    def __init__(self, algebra: Algebra, mixed: MixedComplex):
        self.algebra = algebra
        self.mixed = mixed
        self.max_degree = mixed.max_degree

    def dim(self, n: int) -> int:
        return self.mixed.dim(n)

    def cyclic_indices(self, n: int) -> list:
        """Indices of the A-summand C_n = A^{tensor n+1} inside Omega^n."""
        d = self.algebra.dim
        if n == 0:
            return list(range(d))
        return list(range(d ** (n + 1)))  # lead < d comes first in the flattening

    def unit_indices(self, n: int) -> list:
        d = self.algebra.dim
        if n == 0:
            return []
        return list(range(d ** (n + 1), (d + 1) * d**n))


def omega(a: Algebra, max_degree: int, check: bool = True) -> FormsComplex:
    """Build Omega(A) up to the given degree; identities verified exactly."""
    assert max_degree >= 1
    d = a.dim
    dims = [omega_dim(d, n) for n in range(max_degree + 1)]
    b_maps = []
    B_maps = []
    for n in range(1, max_degree + 1):
        cols = [b_column(a, n, i) for i in range(dims[n])]
        b_maps.append(LinMap(dims[n], dims[n - 1], Matrix.from_sparse_cols(cols, rows=dims[n - 1])))
    for n in range(0, max_degree):
        cols = [B_column(a, n, i) for i in range(dims[n])]
        B_maps.append(LinMap(dims[n], dims[n + 1], Matrix.from_sparse_cols(cols, rows=dims[n + 1])))
    mixed = MixedComplex(dims, b_maps, B_maps, check=check)
    return FormsComplex(a, mixed)


def _submatrix(m: Matrix, row_idx: Sequence[int], col_idx: Sequence[int],
               require_closed: bool = False) -> Matrix:
    rpos = {r: i for i, r in enumerate(row_idx)}
    scols = m.sparse_columns()
    out_cols = []
    for c in col_idx:
        col = {}
        for r, v in scols[c].items():
            if r in rpos:
                col[rpos[r]] = v
            elif require_closed:
                raise ValueError("subspace is not closed under the map")
        out_cols.append(col)
    return Matrix.from_sparse_cols(out_cols, rows=len(row_idx))


def cyclic_sub(f: FormsComplex) -> ChainComplex:
    """C(A): the A-summand with b restricted (closure verified)."""
    dims = [len(f.cyclic_indices(n)) for n in range(f.max_degree + 1)]
    diffs = []
    for n in range(1, f.max_degree + 1):
        sub = _submatrix(f.mixed.b(n).matrix, f.cyclic_indices(n - 1),
                         f.cyclic_indices(n), require_closed=True)
        diffs.append(LinMap(dims[n], dims[n - 1], sub))
    return ChainComplex(dims, diffs, check=False)


def bar_quotient(f: FormsComplex) -> ChainComplex:
    """Cbar(A): the unit summand with the induced bar differential.

    Degree n is A^{tensor n} for n >= 1 and 0 in degree 0 (unshifted
    indexing; the cokernel of the inclusion C -> Omega placed degreewise).
    """
    dims = [len(f.unit_indices(n)) for n in range(f.max_degree + 1)]
    diffs = []
    for n in range(1, f.max_degree + 1):
        sub = _submatrix(f.mixed.b(n).matrix, f.unit_indices(n - 1), f.unit_indices(n))
        diffs.append(LinMap(dims[n], dims[n - 1], sub))
    return ChainComplex(dims, diffs, check=False)


def bar_contracting_homotopy(f: FormsComplex) -> list:
    """For unital A: maps h_n: Cbar_n -> Cbar_{n+1} with b'h + hb' = id.

    h is minus the unit-insertion x |-> 1 tensor x.  Returns one map per
    degree 1..max_degree-1 (insertion at the top degree leaves truncation).
    """
    a = f.algebra
    unit = a.unit()
    if unit is None:
        raise ValueError("algebra has no unit")
    d = a.dim
    maps = []
    for n in range(1, f.max_degree):
        cols = []
        for src_pos, idx in enumerate(f.unit_indices(n)):
            _, js = omega_decode(d, n, idx)
            col = {}
            for k, uk in enumerate(unit):
                if uk != 0:
                    tgt = omega_encode(d, n + 1, d, (k,) + js)
                    col[tgt - d ** (n + 2)] = -uk  # position within the unit summand
            cols.append(col)
        maps.append(LinMap(len(f.unit_indices(n)), len(f.unit_indices(n + 1)),
                           Matrix.from_sparse_cols(cols, rows=len(f.unit_indices(n + 1)))))
    return maps


# -- relative forms ---------------------------------------------------------------


@dataclass
class RelativeFormsComplex:
    """Omega(K:A) for a cof-ideal K of A, in the adapted basis of A.

    Everything lives over ``ambient_adapted`` (the ambient algebra rebased
    to [K-basis | complement]); the relative spaces are spanned by the
    monomials with at least one tensor factor in the K-block, computed as
    the kernel of the induced surjection onto the forms of A/K.
    """

    ideal: IdealInclusion
    ambient_adapted: Algebra
    ambient_forms: FormsComplex
    quotient_algebra: Algebra
    quotient_forms: FormsComplex
    mixed: MixedComplex                 # Omega(K:A)
    omega_indices: list                 # per degree: positions inside Omega^n(A_ad)
    cyclic: ChainComplex                # C(K:A)
    cyclic_indices: list                # positions inside Omega^n(A_ad)
    bar: ChainComplex                   # Cbar(K:A), unshifted like bar_quotient
    bar_indices: list
    include_omega: MixedMap             # Omega(K:A) -> Omega(A_ad)
    quotient_map: MixedMap              # Omega(A_ad) -> Omega(A/K)

    @property
    def max_degree(self) -> int:
        return self.mixed.max_degree


def _relative_index_sets(d: int, k0: int, n: int):
    """(all relative Omega-indices, relative C-indices, relative unit-indices)."""
    omega_idx, c_idx, u_idx = [], [], []
    if n == 0:
        for i in range(k0):
            omega_idx.append(i)
            c_idx.append(i)
        return omega_idx, c_idx, u_idx
    for idx in range(omega_dim(d, n)):
        lead, js = omega_decode(d, n, idx)
        if lead == d:
            hit = any(j < k0 for j in js)
            if hit:
                omega_idx.append(idx)
                u_idx.append(idx)
        else:
            hit = lead < k0 or any(j < k0 for j in js)
            if hit:
                omega_idx.append(idx)
                c_idx.append(idx)
    return omega_idx, c_idx, u_idx


def relative_forms(k: IdealInclusion, max_degree: int, check: bool = True) -> RelativeFormsComplex:
    ad = k.adapted_algebra()
    d, k0 = ad.dim, k.dim
    fa = omega(ad, max_degree, check=check)
    quot_mult = [[[ad.mult[k0 + i][k0 + j][k0 + t] for t in range(d - k0)]
                  for j in range(d - k0)] for i in range(d - k0)]
    quot = Algebra(d - k0, quot_mult, name=f"{ad.name}/K", check=False)
    fq = omega(quot, max_degree, check=check)

    sets = [_relative_index_sets(d, k0, n) for n in range(max_degree + 1)]
    omega_idx = [s[0] for s in sets]
    c_idx = [s[1] for s in sets]
    u_idx = [s[2] for s in sets]

    dims = [len(ix) for ix in omega_idx]
    b_maps, B_maps = [], []
    for n in range(1, max_degree + 1):
        b_maps.append(LinMap(dims[n], dims[n - 1],
                             _submatrix(fa.mixed.b(n).matrix, omega_idx[n - 1], omega_idx[n],
                                        require_closed=True)))
    for n in range(0, max_degree):
        B_maps.append(LinMap(dims[n], dims[n + 1],
                             _submatrix(fa.mixed.B(n).matrix, omega_idx[n + 1], omega_idx[n],
                                        require_closed=True)))
    mixed = MixedComplex(dims, b_maps, B_maps, check=check)

    c_dims = [len(ix) for ix in c_idx]
    c_diffs = []
    for n in range(1, max_degree + 1):
        c_diffs.append(LinMap(c_dims[n], c_dims[n - 1],
                              _submatrix(fa.mixed.b(n).matrix, c_idx[n - 1], c_idx[n],
                                         require_closed=True)))
    cyclic = ChainComplex(c_dims, c_diffs, check=False)

    u_dims = [len(ix) for ix in u_idx]
    u_diffs = []
    for n in range(1, max_degree + 1):
        u_diffs.append(LinMap(u_dims[n], u_dims[n - 1],
                              _submatrix(fa.mixed.b(n).matrix, u_idx[n - 1], u_idx[n])))
    bar = ChainComplex(u_dims, u_diffs, check=False)

    incl_maps = []
    for n in range(max_degree + 1):
        cols = [{r: Fraction(1)} for r in omega_idx[n]]
        incl_maps.append(LinMap(dims[n], fa.dim(n),
                                Matrix.from_sparse_cols(cols, rows=fa.dim(n))))
    include_omega = MixedMap(mixed, fa.mixed, incl_maps, check=check)

    # quotient map Omega(A_ad) -> Omega(A/K): kill K-block factors, shift the rest
    qd = d - k0
    q_maps = []
    for n in range(max_degree + 1):
        cols = []
        for idx in range(fa.dim(n)):
            lead, js = omega_decode(d, n, idx)
            if any(j < k0 for j in js) or (n == 0 and lead < k0) or (n > 0 and lead < k0):
                cols.append({})
                continue
            qlead = qd if lead == d else lead - k0
            if n == 0:
                cols.append({qlead: Fraction(1)})
            else:
                cols.append({omega_encode(qd, n, qlead, tuple(j - k0 for j in js)): Fraction(1)})
        q_maps.append(LinMap(fa.dim(n), fq.dim(n),
                             Matrix.from_sparse_cols(cols, rows=fq.dim(n))))
    quotient_map = MixedMap(fa.mixed, fq.mixed, q_maps, check=check)

    return RelativeFormsComplex(
        ideal=k, ambient_adapted=ad, ambient_forms=fa,
        quotient_algebra=quot, quotient_forms=fq,
        mixed=mixed, omega_indices=omega_idx,
        cyclic=cyclic, cyclic_indices=c_idx,
        bar=bar, bar_indices=u_idx,
        include_omega=include_omega, quotient_map=quotient_map,
    )


def include_cyclic_from_sub(rel: RelativeFormsComplex) -> ChainMap:
    """C(K) -> C(K:A) for the ideal as an algebra in its own right."""
    ksub = rel.ideal.sub_algebra()
    fk = omega(ksub, rel.max_degree, check=False)
    ck = cyclic_sub(fk)
    d, k0 = rel.ambient_adapted.dim, rel.ideal.dim
    maps = []
    for n in range(rel.max_degree + 1):
        pos = {idx: i for i, idx in enumerate(rel.cyclic_indices[n])}
        cols = []
        for kidx in range(ck.dim(n)):
            lead, js = omega_decode(k0, n, kidx) if n else (kidx, ())
            tgt = omega_encode(d, n, lead, js) if n else lead
            cols.append({pos[tgt]: Fraction(1)})
        maps.append(LinMap(ck.dim(n), rel.cyclic.dim(n),
                           Matrix.from_sparse_cols(cols, rows=rel.cyclic.dim(n))))
    return ChainMap(ck, rel.cyclic, maps)


def include_bar_from_sub(rel: RelativeFormsComplex) -> ChainMap:
    """Cbar(K) -> Cbar(K:A) in the unshifted indexing."""
    ksub = rel.ideal.sub_algebra()
    fk = omega(ksub, rel.max_degree, check=False)
    bk = bar_quotient(fk)
    d, k0 = rel.ambient_adapted.dim, rel.ideal.dim
    maps = [LinMap.zero(0, 0)]
    for n in range(1, rel.max_degree + 1):
        pos = {idx: i for i, idx in enumerate(rel.bar_indices[n])}
        cols = []
        for p, kidx in enumerate(range(k0 ** (n + 1), (k0 + 1) * k0**n)):
            _, js = omega_decode(k0, n, kidx)
            tgt = omega_encode(d, n, d, js)
            cols.append({pos[tgt]: Fraction(1)})
        maps.append(LinMap(bk.dim(n), rel.bar.dim(n),
                           Matrix.from_sparse_cols(cols, rows=rel.bar.dim(n))))
    return ChainMap(bk, rel.bar, maps)


def include_omega_from_sub(rel: RelativeFormsComplex) -> MixedMap:
    """Omega(K) -> Omega(K:A): the comparison map excision is about."""
    ksub = rel.ideal.sub_algebra()
    fk = omega(ksub, rel.max_degree, check=False)
    d, k0 = rel.ambient_adapted.dim, rel.ideal.dim
    maps = []
    for n in range(rel.max_degree + 1):
        pos = {idx: i for i, idx in enumerate(rel.omega_indices[n])}
        cols = []
        for kidx in range(fk.dim(n)):
            lead, js = omega_decode(k0, n, kidx)
            tlead = d if (n > 0 and lead == k0) else lead
            tgt = omega_encode(d, n, tlead, js)
            cols.append({pos[tgt]: Fraction(1)})
        maps.append(LinMap(fk.dim(n), rel.mixed.dim(n),
                           Matrix.from_sparse_cols(cols, rows=rel.mixed.dim(n))))
    return MixedMap(fk.mixed, rel.mixed, maps)
