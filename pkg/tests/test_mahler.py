import math
import random

import pytest

from twistpoly.mahler import (
    QuadratureError,
    TorusReport,
    is_cyclotomic_product,
    linear_z_poly,
    mahler_linear_z,
    mahler_measure,
    mahler_torus_2var,
    roots,
)
from twistpoly.polyring import HalfLaurent1, HalfLaurentN, length, parse_poly1

LEHMER = parse_poly1("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1")
S = parse_poly1("t^{1/2} - t^{-1/2}")


def bisect_root(f, lo, hi, steps=200):
    """Plain bisection oracle for a sign change of f on [lo, hi]."""
    flo = f(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = f(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2


def eval_poly(p, x):
    return sum(c * x ** (d / 2) for d, c in p.terms.items())


def f_k(k):
    # 1 - x - x^2 - x^{2k+2}
    return HalfLaurent1({0: 1, 2: -1, 4: -1, 2 * (2 * k + 2): -1})


def ex51_pair(k):
    """The bivariate fixture written as A(x) + B(x) z, both times (x - 1)."""
    xm1 = parse_poly1("t - 1")
    a = xm1 * f_k(k)
    inner = HalfLaurent1({0: 1, -2: -1, -4: -1, -2 * (2 * k + 2): -1})
    b = xm1 * HalfLaurent1.monomial(2 * (2 * k + 4)) * inner
    return a, b


def test_roots_linear():
    rs = roots(parse_poly1("t - 2"))
    assert rs.degree == 1
    assert abs(rs.roots[0] - 2) < 1e-12


def test_roots_quadratic_golden_ratio():
    rs = roots(parse_poly1("t^2 - t - 1"))
    expected = sorted([(1 + math.sqrt(5)) / 2, (1 - math.sqrt(5)) / 2], key=abs)
    got = sorted(rs.roots, key=abs)
    for g, e in zip(got, expected):
        assert abs(g - e) < 1e-12


def test_lehmer_roots_single_outside():
    rs = roots(LEHMER)
    assert rs.degree == 10
    outside = [r for r in rs.roots if abs(r) > 1]
    assert len(outside) == 1
    assert abs(outside[0].imag) < 1e-12
    assert rs.residual < 1e-10


def test_lehmer_measure():
    rep = mahler_measure(LEHMER)
    assert abs(rep.mahler - 1.17628) < 1e-4
    assert abs(rep.euclidean_mahler - rep.mahler) < 1e-12  # monic


def test_measure_conventions():
    zero = mahler_measure(HalfLaurent1.zero())
    assert zero.mahler == 0.0 and zero.euclidean_mahler is None

    cyc = (parse_poly1("t + 1") ** 3) * HalfLaurent1.monomial(-2)
    assert abs(mahler_measure(cyc).mahler - 1.0) < 1e-9

    rep = mahler_measure(parse_poly1("2*t - 1"))
    assert abs(rep.mahler - 2.0) < 1e-12
    assert abs(rep.euclidean_mahler - 1.0) < 1e-12


def test_measure_unit_invariance():
    rng = random.Random(5)
    for _ in range(20):
        terms = {2 * rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(4)}
        p = HalfLaurent1(terms)
        if p.is_zero():
            continue
        m = mahler_measure(p).mahler
        u = HalfLaurent1.monomial(rng.randint(-5, 5), rng.choice([1, -1]))
        assert abs(mahler_measure(u * p).mahler - m) < 1e-9 * max(1, m)
        # euclidean measure ignores integer scalar factors
        c = rng.choice([2, 3, -5])
        assert abs((mahler_measure(c * p).euclidean_mahler or 0)
                   - (mahler_measure(p).euclidean_mahler or 0)) < 1e-9


def test_measure_multiplicative():
    rng = random.Random(9)
    for _ in range(15):
        p = HalfLaurent1({2 * rng.randint(0, 5): rng.randint(-4, 4) for _ in range(4)})
        q = HalfLaurent1({2 * rng.randint(0, 5): rng.randint(-4, 4) for _ in range(4)})
        if p.is_zero() or q.is_zero():
            continue
        mp, mq = mahler_measure(p), mahler_measure(q)
        mpq = mahler_measure(p * q)
        assert abs(mpq.mahler - mp.mahler * mq.mahler) <= 1e-8 * max(1.0, mpq.mahler)
        assert abs(mpq.euclidean_mahler - mp.euclidean_mahler * mq.euclidean_mahler) \
            <= 1e-8 * max(1.0, mpq.euclidean_mahler)


def test_measure_bounded_by_length():
    rng = random.Random(13)
    for _ in range(200):
        p = HalfLaurent1({2 * rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(5)})
        if p.is_zero():
            continue
        assert mahler_measure(p).mahler <= length(p) * (1 + 1e-9)


def test_cyclotomic_product_detection():
    assert is_cyclotomic_product(parse_poly1("t^2 + t + 1"))
    assert not is_cyclotomic_product(LEHMER)
    core = parse_poly1("t - 1 + t^-1")
    for n in (1, 2, 3):
        p = core ** (2 * n - 1) * HalfLaurent1.monomial(3, -1)
        assert is_cyclotomic_product(p)
    assert not is_cyclotomic_product(parse_poly1("2*t - 1"))
    assert not is_cyclotomic_product(parse_poly1("t^2 - t - 1"))


def test_linear_z_trivial_cases():
    assert abs(mahler_linear_z(HalfLaurent1.const(1), HalfLaurent1.zero()) - 1.0) < 1e-9
    assert abs(mahler_linear_z(HalfLaurent1.const(5), HalfLaurent1.const(3)) - 5.0) < 1e-6
    with pytest.raises(ValueError):
        mahler_linear_z(HalfLaurent1.zero(), HalfLaurent1.zero())


def test_linear_z_matches_bisection_oracle():
    for k in (1, 2, 3, 4):
        a, b = ex51_pair(k)
        got = mahler_linear_z(a, b)
        zeta = bisect_root(lambda x, k=k: 1 - x - x * x - x ** (2 * k + 2), 0.0, 1.0)
        if k == 1:
            assert 0.5 < zeta < 0.6
        assert abs(got - 1 / zeta) < 1e-3


def test_fk_unique_root_inside_disk_is_real():
    for k in (1, 2, 3, 4):
        rs = roots(f_k(k))
        inside = [r for r in rs.roots if abs(r) < 1]
        assert len(inside) == 1
        assert abs(inside[0].imag) < 1e-10
        m = mahler_measure(f_k(k)).mahler
        assert abs(m * abs(inside[0]) - 1.0) < 1e-8


def test_torus_constant_and_monomial():
    five = HalfLaurentN(("x", "y"), {(0, 0): 5})
    assert abs(mahler_torus_2var(five).value - 5.0) < 1e-9
    xy = HalfLaurentN(("x", "y"), {(2, 2): 1})
    assert abs(mahler_torus_2var(xy).value - 1.0) < 1e-9


def test_torus_agrees_with_linear_z():
    a, b = ex51_pair(1)
    direct = mahler_linear_z(a, b)
    report = mahler_torus_2var(linear_z_poly(a, b), tol=1e-3)
    assert isinstance(report, TorusReport)
    assert abs(report.value - direct) < 2e-3
