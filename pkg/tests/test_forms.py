import random
from fractions import Fraction

import pytest

from cyclica.algebra import IdealInclusion
from cyclica.forms import (
    bar_contracting_homotopy,
    bar_quotient,
    cyclic_sub,
    include_bar_from_sub,
    include_cyclic_from_sub,
    include_omega_from_sub,
    omega,
    omega_decode,
    omega_dim,
    omega_encode,
    relative_forms,
)
from cyclica.linalg import LinMap, Matrix, homology_dim, rank
from cyclica.samples import (
    dual_numbers,
    ground_field,
    ideal_x,
    poly_quotient,
    q_times_q,
    random_associative_algebra,
    upper_triangular_2x2,
    zero_algebra,
)


def test_encode_decode_roundtrip():
    d, n = 3, 4
    for idx in range(omega_dim(d, n)):
        lead, js = omega_decode(d, n, idx)
        assert omega_encode(d, n, lead, js) == idx
        assert 0 <= lead <= d and all(0 <= j < d for j in js)


def test_omega_ground_field_dims_and_b1():
    f = omega(ground_field(), 4)
    assert f.mixed.dims == [1, 2, 2, 2, 2]
    # Q is commutative and the mixed identities force b(u tensor a) = 0, so
    # b: Omega^1 -> Omega^0 has rank 0
    assert rank(f.mixed.b(1).matrix) == 0
    # and b: Omega^2 -> Omega^1 has rank 2 (computed by hand)
    assert rank(f.mixed.b(2).matrix) == 2
    # B_0: a |-> u tensor a
    assert f.mixed.B(0).matrix == Matrix.from_cols([[0, 1]], rows=2)


def test_omega_zero_mult_cyclic_and_bar_vanish():
    # with zero multiplication every product term dies, so b vanishes on the
    # cyclic subcomplex and the induced bar differential is zero; the unit
    # summand of the full b is nonzero (unit action), and B is nonzero
    f = omega(zero_algebra(1), 4)
    c = cyclic_sub(f)
    for n in range(1, 5):
        assert c.d(n).is_zero()
    cb = bar_quotient(f)
    for n in range(1, 5):
        assert cb.d(n).is_zero()
    assert not f.mixed.b(2).is_zero()
    assert not f.mixed.B(0).is_zero()


def test_omega_identities_random_2dim():
    rng = random.Random(424)
    seen = 0
    while seen < 3:
        a = random_associative_algebra(rng, max_dim=2)
        if a.dim != 2:
            continue
        omega(a, 4)  # construction verifies b^2 = B^2 = bB + Bb = 0 exactly
        seen += 1


def test_cyclic_and_bar_dims():
    a = dual_numbers()
    f = omega(a, 4)
    c = cyclic_sub(f)
    cb = bar_quotient(f)
    for n in range(5):
        assert c.dim(n) == 2 ** (n + 1)
        assert cb.dim(n) == (2**n if n >= 1 else 0)


def test_bar_acyclic_for_unital():
    for a in (ground_field(), dual_numbers(), q_times_q(), upper_triangular_2x2()):
        f = omega(a, 5)
        cb = bar_quotient(f)
        for n in range(1, 5):
            assert homology_dim(cb.d(n + 1), cb.d(n)) == 0, (a.name, n)


def test_bar_contracting_homotopy_identity():
    a = dual_numbers()
    f = omega(a, 5)
    cb = bar_quotient(f)
    hs = bar_contracting_homotopy(f)
    for n in range(1, 5):
        h_n = hs[n - 1]
        comp = cb.d(n + 1).matrix * h_n.matrix
        if n >= 2:
            comp = comp + hs[n - 2].matrix * cb.d(n).matrix
        assert comp == Matrix.identity(cb.dim(n)), n


def test_bar_homology_zero_mult():
    d = 2
    f = omega(zero_algebra(d), 4)
    cb = bar_quotient(f)
    for n in range(1, 4):
        assert homology_dim(cb.d(n + 1), cb.d(n)) == d**n


def test_relative_dims_formula():
    a = dual_numbers()
    k = ideal_x(a)
    rel = relative_forms(k, 4)
    d, q = 2, 1
    for n in range(5):
        assert rel.cyclic.dim(n) == d ** (n + 1) - q ** (n + 1)
        expected_omega = rel.cyclic.dim(n) + (rel.cyclic.dim(n - 1) if n >= 1 else 0)
        assert rel.mixed.dim(n) == expected_omega


def test_relative_full_ideal_is_whole_complex():
    a = dual_numbers()
    k = IdealInclusion(a, Matrix.identity(2))
    rel = relative_forms(k, 3)
    f = omega(k.adapted_algebra(), 3)
    assert rel.mixed.dims == f.mixed.dims
    assert rel.cyclic.dims == cyclic_sub(f).dims


def test_relative_zero_ideal_is_zero():
    a = dual_numbers()
    k = IdealInclusion(a, Matrix.zeros(2, 0))
    rel = relative_forms(k, 3)
    assert all(x == 0 for x in rel.mixed.dims)


def exactness_check(sub_dims, mid_dims, quot_dims, incl, proj, n):
    # degreewise short exactness by rank bookkeeping
    assert mid_dims[n] == sub_dims[n] + quot_dims[n]
    assert rank(incl.maps[n].matrix) == sub_dims[n]
    assert rank(proj.maps[n].matrix) == quot_dims[n]
    assert proj.maps[n].compose(incl.maps[n]).is_zero()


def test_three_sequences_short_exact():
    samples = [
        (dual_numbers(), ideal_x(dual_numbers())),
        (poly_quotient(3), ideal_x(poly_quotient(3))),
        (poly_quotient(3), ideal_x(poly_quotient(3), 2)),
        (q_times_q(), IdealInclusion(q_times_q(), Matrix.from_cols([[1, 0]], rows=2))),
        (upper_triangular_2x2(),
         IdealInclusion(upper_triangular_2x2(), Matrix.from_cols([[0, 1, 0]], rows=3))),
    ]
    for a, k in samples:
        n_top = 3
        rel = relative_forms(k, n_top)
        # (4.5): Omega(K:A) -> Omega(A) -> Omega(A/K)
        for n in range(n_top + 1):
            dims_mid = rel.ambient_forms.mixed.dims
            assert dims_mid[n] == rel.mixed.dim(n) + rel.quotient_forms.mixed.dim(n)
            assert rank(rel.include_omega.maps[n].matrix) == rel.mixed.dim(n)
            assert rank(rel.quotient_map.maps[n].matrix) == rel.quotient_forms.mixed.dim(n)
            assert rel.quotient_map.maps[n].compose(rel.include_omega.maps[n]).is_zero()


def test_sub_inclusions_are_chain_maps():
    a = dual_numbers()
    k = ideal_x(a)
    rel = relative_forms(k, 4)
    # construction runs the chain-map verification; spot-check shapes
    ic = include_cyclic_from_sub(rel)
    ib = include_bar_from_sub(rel)
    io = include_omega_from_sub(rel)
    assert ic.maps[2].domain_dim == 1  # K^{tensor 3}, K is 1-dim
    assert ib.maps[2].domain_dim == 1
    assert io.maps[0].domain_dim == 1


def test_relative_wrap_example_triangular():
    u = upper_triangular_2x2()
    k = IdealInclusion(u, Matrix.from_cols([[0, 1, 0]], rows=3))
    rel = relative_forms(k, 3)
    d, q = 3, 2
    for n in range(4):
        assert rel.cyclic.dim(n) == d ** (n + 1) - q ** (n + 1)


def test_omega_b1_is_commutator():
    a = upper_triangular_2x2()  # noncommutative, so b_1 != 0
    f = omega(a, 2)
    assert not f.mixed.b(1).is_zero()
    # b(x tensor y) = xy - yx for x in A
    d = a.dim
    for i in range(d):
        for j in range(d):
            col = f.mixed.b(1).matrix.column(i * d + j)
            ei = [Fraction(1) if t == i else Fraction(0) for t in range(d)]
            ej = [Fraction(1) if t == j else Fraction(0) for t in range(d)]
            expect = [x - y for x, y in zip(a.multiply(ei, ej), a.multiply(ej, ei))]
            assert col == expect
    # and b(u tensor y) = 0
    for j in range(d):
        assert all(x == 0 for x in f.mixed.b(1).matrix.column(d * d + j))
