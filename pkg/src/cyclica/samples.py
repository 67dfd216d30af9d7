"""Small algebra corpus used by demos, the CLI data files and the tests.

Random "associative-looking" algebras are produced by conjugating known
associative families by random invertible basis changes; associativity is
preserved, coefficients get messy, which is exactly what the identity
checkers should be fed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Algebra, IdealInclusion
from .linalg import Matrix


def zero_algebra(dim: int = 1, name: str | None = None) -> Algebra:
    mult = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    return Algebra(dim, mult, name=name or f"zero{dim}", check=False)


def ground_field() -> Algebra:
    return Algebra(1, [[[Fraction(1)]]], name="Q", check=False)


def poly_quotient(k: int, name: str | None = None) -> Algebra:
    """Q[x]/(x^k) with basis 1, x, ..., x^{k-1}."""
    mult = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i + j < k:
                mult[i][j][i + j] = Fraction(1)
    return Algebra(k, mult, name=name or f"Q[x]/(x^{k})", check=False)


def dual_numbers() -> Algebra:
    return poly_quotient(2, name="dual_numbers")


def q_times_q() -> Algebra:
    """Q x Q with the idempotent basis e1 = (1,0), e2 = (0,1)."""
    mult = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    mult[0][0][0] = Fraction(1)
    mult[1][1][1] = Fraction(1)
    return Algebra(2, mult, name="QxQ", check=False)


def upper_triangular_2x2() -> Algebra:
    """2x2 upper triangular matrices, basis E11, E12, E22 (dim 3)."""
    d = 3
    pos = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    items = list(pos.items())
    for (r1, c1), i in items:
        for (r2, c2), j in items:
            if c1 == r2:
                k = pos.get((r1, c2))
                if k is not None:
                    mult[i][j][k] = Fraction(1)
    return Algebra(d, mult, name="upper_triangular_2x2", check=True)


def nilpotent_2dim() -> Algebra:
    """Span{x, y} with x*x = y and all other products zero (x^3 = 0)."""
    mult = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    mult[0][0][1] = Fraction(1)
    return Algebra(2, mult, name="nilpotent2", check=True)


def ideal_x(a: Algebra, degree_from: int = 1) -> IdealInclusion:
    """(x^degree_from) inside a poly_quotient-style algebra."""
    cols = []
    for i in range(degree_from, a.dim):
        cols.append([Fraction(1) if t == i else Fraction(0) for t in range(a.dim)])
    return IdealInclusion(a, Matrix.from_cols(cols, rows=a.dim), name=f"(x^{degree_from})")


def random_invertible(rng: random.Random, dim: int, scale: int = 2) -> Matrix:
    while True:
        m = Matrix.from_rows(
            [[Fraction(rng.randint(-scale, scale)) for _ in range(dim)] for _ in range(dim)]
        )
        from .linalg import rank
        if rank(m) == dim:
            return m


_FAMILIES = []


def _register(fn):
    _FAMILIES.append(fn)
    return fn


_register(lambda: zero_algebra(1))
_register(lambda: zero_algebra(2))
_register(lambda: zero_algebra(3))
_register(ground_field)
_register(dual_numbers)
_register(lambda: poly_quotient(3))
_register(q_times_q)
_register(upper_triangular_2x2)
_register(nilpotent_2dim)
_register(lambda: ground_field().direct_sum(dual_numbers(), name="QxDual"))
_register(lambda: zero_algebra(1).direct_sum(dual_numbers(), name="zero+dual"))


def random_associative_algebra(rng: random.Random, max_dim: int = 3) -> Algebra:
    """A random-basis conjugate of a known associative algebra of dim <= max_dim."""
    candidates = [f for f in _FAMILIES if f().dim <= max_dim]
    base = rng.choice(candidates)()
    t = random_invertible(rng, base.dim)
    out = base.rebase(t, name=f"{base.name}@rnd")
    out.verify_associativity()
    return out


def bundled_corpus() -> dict:
    """Name -> (algebra, ideals) for the shipped JSON data files."""
    out = {}
    out["ground_field"] = (ground_field(), {})
    a = dual_numbers()
    out["dual_numbers"] = (a, {"x": ideal_x(a)})
    b = poly_quotient(3)
    out["poly_x3"] = (b, {"x": ideal_x(b), "x2": ideal_x(b, 2)})
    z = zero_algebra(1, name="zero_mult")
    out["zero_mult"] = (z, {"all": IdealInclusion(z, Matrix.identity(1), name="all")})
    u = upper_triangular_2x2()
    strict = IdealInclusion(
        u, Matrix.from_cols([[0, 1, 0]], rows=3), name="strict_upper")
    out["upper_triangular"] = (u, {"strict_upper": strict})
    return out
