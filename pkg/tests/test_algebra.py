import random
from fractions import Fraction

import pytest

from cyclica.algebra import (
    Algebra,
    IdealInclusion,
    NotAssociativeError,
    NotIdealError,
    kronecker,
    load_algebra,
    power,
    quotient_algebra,
    tensor_swap,
    unitalize,
)
from cyclica.linalg import LinMap, Matrix, rank, solve
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


def basis_vec(d, i):
    return [Fraction(1) if t == i else Fraction(0) for t in range(d)]


def test_associativity_rejection_with_counterexample():
    # e0*e0 = e1, e1*e0 = e0 is not associative: (e0 e0) e0 = e0, e0 (e0 e0) = e0*e1 = 0
    mult = [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]
    with pytest.raises(NotAssociativeError) as ei:
        Algebra(2, mult)
    assert ei.value.triple == (0, 0, 0)


def test_unitalize_zero_algebra_is_field():
    a = unitalize(zero_algebra(0))
    assert a.dim == 1
    assert a.mult[0][0][0] == 1


def test_unitalize_zero_mult_is_dual_numbers():
    # the 2x2x2 constants: basis (x, 1) with x*x = 0
    a = unitalize(zero_algebra(1))
    assert a.dim == 2
    # x*x = 0, x*1 = x, 1*x = x, 1*1 = 1  (unit is the LAST basis vector)
    assert a.mult[0][0] == [Fraction(0), Fraction(0)]
    assert a.mult[0][1] == [Fraction(1), Fraction(0)]
    assert a.mult[1][0] == [Fraction(1), Fraction(0)]
    assert a.mult[1][1] == [Fraction(0), Fraction(1)]
    # and it is isomorphic to the dual numbers via swapping basis order
    t = Matrix.from_cols([[0, 1], [1, 0]], rows=2)
    re = a.rebase(t)
    assert re.mult == dual_numbers().mult


def test_unitalize_unit_axiom_random():
    rng = random.Random(2024)
    for _ in range(8):
        a = random_associative_algebra(rng)
        au = unitalize(a)
        au.verify_associativity()
        u = basis_vec(au.dim, au.dim - 1)
        for i in range(au.dim):
            e = basis_vec(au.dim, i)
            assert au.multiply(u, e) == e
            assert au.multiply(e, u) == e
        assert au.unit() == u


def test_unit_detection():
    assert ground_field().is_unital()
    assert dual_numbers().is_unital()
    assert not zero_algebra(2).is_unital()
    assert upper_triangular_2x2().is_unital()


def test_power_poly_x3():
    a = poly_quotient(3)
    k = ideal_x(a)
    assert k.dim == 2
    assert power(k, 1).dim == 2
    assert power(k, 2).dim == 1
    assert power(k, 3).dim == 0


def test_power_unital_subalgebra_idempotent():
    a = q_times_q()
    k = IdealInclusion(a, Matrix.from_cols([[1, 0]], rows=2), name="e1")
    for n in (1, 2, 3):
        assert power(k, n).dim == 1


def test_power_zero_mult():
    z = zero_algebra(2)
    k = IdealInclusion(z, Matrix.identity(2))
    assert power(k, 2).dim == 0


def test_power_monotone():
    rng = random.Random(77)
    a = poly_quotient(4)
    k = ideal_x(a)
    prev = None
    for n in range(1, 5):
        pk = power(k, n)
        if prev is not None:
            # K^{n} subset of K^{n-1}: membership solve per column
            for c in range(pk.basis.cols):
                assert solve(prev.basis, pk.basis.column(c)) is not None
        prev = pk


def test_quotient_dual_numbers():
    a = dual_numbers()
    k = ideal_x(a)
    q, proj = quotient_algebra(k)
    assert q.dim == 1
    assert q.mult[0][0][0] == 1
    assert proj.matrix.apply(basis_vec(2, 0)) == [Fraction(1)]


def test_quotient_by_self_and_zero():
    a = dual_numbers()
    full = IdealInclusion(a, Matrix.identity(2))
    q, _ = quotient_algebra(full)
    assert q.dim == 0
    none = IdealInclusion(a, Matrix.zeros(2, 0))
    q2, proj2 = quotient_algebra(none)
    assert q2.dim == 2
    # A/0 has the same constants in the complement basis (identity here)
    assert q2.mult == a.mult


def test_ideal_closure_rejection():
    # span{1} inside dual numbers is a subalgebra but not an ideal
    a = dual_numbers()
    with pytest.raises(NotIdealError):
        IdealInclusion(a, Matrix.from_cols([[1, 0]], rows=2))


def test_tensor_swap_basics():
    t = tensor_swap(1, 1)
    assert t.matrix == Matrix.identity(1)
    for dv, dw in [(2, 3), (1, 4), (3, 3)]:
        t1 = tensor_swap(dv, dw)
        t2 = tensor_swap(dw, dv)
        comp = t2.compose(t1)
        assert comp.matrix == Matrix.identity(dv * dw)
        # permutation matrix: one 1 per row/column
        for row in t1.matrix.data:
            assert sum(1 for x in row if x != 0) == 1
            assert all(x in (0, 1) for x in row)


def test_kronecker_functorial():
    f = LinMap(2, 2, Matrix.from_rows([[1, 2], [0, 1]]))
    g = LinMap(1, 1, Matrix.from_rows([[3]]))
    k = kronecker(f, g)
    assert k.matrix == f.matrix.scale(3)


def test_sub_algebra_of_ideal():
    a = poly_quotient(3)
    k = ideal_x(a)
    sub = k.sub_algebra()
    # basis x, x^2: x*x = x^2, everything else 0
    assert sub.mult[0][0][1] == 1
    assert sub.multiply(basis_vec(2, 0), basis_vec(2, 1)) == [Fraction(0), Fraction(0)]


def test_upper_triangular_strict_ideal():
    u = upper_triangular_2x2()
    k = IdealInclusion(u, Matrix.from_cols([[0, 1, 0]], rows=3))
    assert k.dim == 1
    assert power(k, 2).dim == 0
    q, _ = quotient_algebra(k)
    assert q.dim == 2


def test_json_roundtrip():
    a = dual_numbers()
    ideals = {"x": ideal_x(a)}
    obj = a.to_json(ideals)
    a2, ideals2 = load_algebra(obj)
    assert a2.mult == a.mult
    assert "x" in ideals2 and ideals2["x"].dim == 1


def test_random_algebras_are_associative():
    rng = random.Random(5)
    for _ in range(10):
        random_associative_algebra(rng).verify_associativity()
