"""Scalar tower and matrix kernel.

The matrix checks compare against a naive fraction-only Gaussian elimination
oracle written here from scratch (no imports from the package under test
beyond the constructors), so a bug in Matrix cannot hide in its own mirror.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from altverify.exactnum import (
    ONE,
    ZERO,
    Matrix,
    PoleAtZero,
    Scalar,
    SingularMatrixError,
    sc,
)


def S(n, d=1):
    return Scalar.from_fraction(Fraction(n, d))


I = Scalar.imaginary_unit()
T = Scalar.t()


def A(name):
    return Scalar.param(name)


# ---------------------------------------------------------------------------
# oracle: plain Fraction elimination for rank / inverse / nullspace checks


def oracle_rank(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    nr, nc = len(rows), len(rows[0])
    rank = 0
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(nr):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def oracle_matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


# ---------------------------------------------------------------------------
# rationals and gaussian rationals


def test_rational_normalization():
    assert S(2, 4) == S(1, 2)
    assert S(0) == ZERO
    assert S(3) + S(-3) == ZERO
    assert (S(7, 3) * S(3, 7)).is_one()


def test_imaginary_unit_squares_to_minus_one():
    assert I * I == S(-1)
    assert I ** 4 == ONE
    assert (I + S(1)) * (I - S(1)) == S(-2)


def test_gaussian_demotes_to_rational():
    z = Scalar.gaussian(Fraction(1, 2), Fraction(3))
    w = Scalar.gaussian(Fraction(1, 2), Fraction(-3))
    assert (z + w) == ONE
    assert (z + w).level == "rational"
    assert z.level == "gaussian"


def test_gaussian_division():
    # (1+i)/(1-i) = i
    num = ONE + I
    den = ONE - I
    assert num / den == I


# ---------------------------------------------------------------------------
# polynomial quotients


def test_param_arithmetic_and_demotion():
    a = A("alpha")
    expr = (a + ONE) * (a - ONE) - a * a
    assert expr == S(-1)
    assert expr.level == "rational"


def test_quotient_reduction():
    a = A("alpha")
    # (1+alpha)^2 / (1+alpha) reduces to 1+alpha
    q = (ONE + a) ** 2 / (ONE + a)
    assert q == ONE + a
    assert q.level == "polynomial"


def test_denominator_is_monic():
    a = A("alpha")
    q = ONE / (a * S(2) + S(2))
    # canonical form has monic denominator: 1/(2a+2) = (1/2)/(a+1)
    num, den = q.a, q.b
    _, lead = den.leading()
    assert lead.re == 1 and lead.im == 0
    assert q * (a * S(2) + S(2)) == ONE


def test_gcd_cancellation_multivariate():
    a, b = A("a"), A("b")
    num = a * a - b * b
    den = a + b
    assert num / den == a - b


def test_substitute():
    a, b = A("alpha"), A("beta")
    expr = (a * a + b) / (a - ONE)
    got = expr.substitute({"alpha": S(2), "beta": S(3)})
    assert got == S(7)
    # partial substitution keeps the other parameter symbolic
    part = expr.substitute({"beta": ZERO})
    assert part == a * a / (a - ONE)


def test_substitute_with_t():
    a = A("alpha")
    expr = a * T + ONE
    assert expr.substitute({"alpha": T}) == T * T + ONE


# ---------------------------------------------------------------------------
# limits at t = 0


def test_limit_simple_cancellation():
    # (t^2 + t)/t -> 1
    q = (T * T + T) / T
    assert q.limit_at_zero() == ONE


def test_limit_zero_and_constant():
    assert (T * T / T).limit_at_zero() == ZERO
    assert S(5).limit_at_zero() == S(5)
    a = A("alpha")
    assert (a / (a + ONE)).limit_at_zero() == a / (a + ONE)


def test_limit_pole():
    with pytest.raises(PoleAtZero):
        (ONE / T).limit_at_zero()
    with pytest.raises(PoleAtZero):
        ((T + ONE) / (T * T)).limit_at_zero()


def test_limit_with_parameters():
    a = A("alpha")
    # (alpha*t + alpha^2 * t) / t  ->  alpha + alpha^2
    q = (a * T + a * a * T) / T
    assert q.limit_at_zero() == a + a * a


def test_limit_valuation_not_fooled_by_common_factor():
    # num and den share a factor of (t+1); valuation argument is still exact
    q = ((T + ONE) * T) / ((T + ONE) * (T + S(2)))
    assert q.limit_at_zero() == ZERO
    r = ((T + ONE) * T) / ((T + ONE) * T * S(4))
    assert r.limit_at_zero() == S(1, 4)


def test_pole_of_gauss_coefficient():
    q = (I + T) / (T * T)
    with pytest.raises(PoleAtZero):
        q.limit_at_zero()


# ---------------------------------------------------------------------------
# rendering round-trip sanity (full grammar round-trip lives in test_formats)


def test_render_stable_forms():
    assert S(-3, 2).render() == "-3/2"
    assert I.render() == "i"
    assert (S(2) * I).render() == "2*i"
    a = A("alpha")
    assert (a ** 2 - ONE).render() == "alpha^2 - 1"
    assert ((a + ONE) / (a - ONE)).render() == "(alpha + 1)/(alpha - 1)"


# ---------------------------------------------------------------------------
# matrices


def test_identity_and_mul():
    m = Matrix([[1, 2], [3, 4]])
    assert Matrix.identity(2) * m == m
    assert m * Matrix.identity(2) == m
    sq = m * m
    assert sq == Matrix([[7, 10], [15, 22]])


def test_det_and_rank_small():
    m = Matrix([[1, 2], [3, 4]])
    assert m.det() == S(-2)
    assert m.rank() == 2
    sing = Matrix([[1, 2], [2, 4]])
    assert sing.det() == ZERO
    assert sing.rank() == 1
    with pytest.raises(SingularMatrixError):
        sing.inverse()


def test_nullspace_matches_kernel():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    basis = m.nullspace()
    assert len(basis) == 1
    for v in basis:
        assert all(x.is_zero() for x in m.apply(v))


def test_parametric_inverse():
    a = A("alpha")
    m = Matrix([[a, ONE], [ZERO, a]])
    inv = m.inverse()
    assert m * inv == Matrix.identity(2)
    assert inv.entry(0, 1) == -(ONE / (a * a))


def test_parametric_rank_is_generic():
    a = A("alpha")
    # rows are dependent only when alpha = 1; generically rank 2
    m = Matrix([[ONE, a], [a, a * a]])
    assert m.rank() == 1  # second row = a * first row identically
    m2 = Matrix([[ONE, a], [a, ONE]])
    assert m2.rank() == 2  # det = 1 - a^2, nonzero as a polynomial


def test_random_inverses_against_oracle():
    rng = random.Random(12345)
    done = 0
    while done < 60:
        raw = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        if oracle_rank(raw) < 3:
            continue
        m = Matrix(raw)
        inv = m.inverse()
        assert m * inv == Matrix.identity(3)
        assert inv * m == Matrix.identity(3)
        done += 1


def test_random_ranks_against_oracle():
    rng = random.Random(999)
    for _ in range(60):
        nr = rng.randint(1, 4)
        nc = rng.randint(1, 4)
        raw = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        assert Matrix(raw).rank() == oracle_rank(raw)


def test_random_matmul_against_oracle():
    rng = random.Random(31)
    for _ in range(40):
        a = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(2)]
        b = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)] for _ in range(3)]
        got = Matrix(a) * Matrix(b)
        want = Matrix(oracle_matmul(a, b))
        assert got == want


# ---------------------------------------------------------------------------
# field laws by property


fractions_st = st.builds(
    Fraction, st.integers(-30, 30), st.integers(1, 6)
)
scalars_st = st.builds(
    Scalar.gaussian,
    fractions_st,
    st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3)),
)


@given(scalars_st, scalars_st, scalars_st)
@settings(max_examples=80, deadline=None)
def test_ring_laws_gaussian(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(scalars_st)
@settings(max_examples=60, deadline=None)
def test_multiplicative_inverse(x):
    if not x.is_zero():
        assert x * (ONE / x) == ONE


@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))
@settings(max_examples=60, deadline=None)
def test_polynomial_identity_random_points(p, q, r):
    # (p + q*alpha + r*alpha^2) evaluated two ways agrees
    a = A("alpha")
    expr = sc(p) + sc(q) * a + sc(r) * a * a
    for point in (S(0), S(1), S(-2), S(5, 3)):
        direct = sc(p) + sc(q) * point + sc(r) * point * point
        assert expr.substitute({"alpha": point}) == direct


@given(st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_t_valuation_limits(vn, vd):
    # limit of t^vn / t^vd is fully determined by the valuations
    q = T ** vn / T ** vd
    if vn < vd:
        with pytest.raises(PoleAtZero):
            q.limit_at_zero()
    elif vn > vd:
        assert q.limit_at_zero() == ZERO
    else:
        assert q.limit_at_zero() == ONE
