import itertools
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from cppforge import gf
from cppforge.errors import CharacteristicDividesN, DivisionByZero
from cppforge.poly import (
    Poly, cyclotomic, divides, gcd, irreducible_factors, is_irreducible,
    monic_polys, parse_poly,
)

F2 = gf.field_new(2)
F3 = gf.field_new(3)
F4 = gf.field_new(2, 2)
F5 = gf.field_new(5)
F7 = gf.field_new(7)
F8 = gf.field_new(2, 3)


def totient(n):
    return sum(1 for k in range(1, n + 1) if __import__("math").gcd(k, n) == 1)


def trial_division_factors(f):
    """Oracle: peel monic irreducible divisors by brute-force enumeration."""
    ctx = f.ctx
    out = []
    g = f.monic()
    deg = 1
    while g.degree and g.degree > 0:
        hit = False
        for cand in monic_polys(ctx, deg):
            if cand.degree > g.degree:
                break
            if is_irreducible(cand) and divides(cand, g):
                while divides(cand, g):
                    out.append(cand)
                    g = g // cand
                hit = True
                break
        if not hit:
            deg += 1
            if g.degree and deg > g.degree:
                out.append(g)
                break
    out.sort(key=Poly.sort_key)
    return out


def test_mul_example_q7_factorization():
    a = parse_poly("t^3+t^2+1", F2)
    b = parse_poly("t^3+t+1", F2)
    assert a * b == parse_poly("t^6+t^5+t^4+t^3+t^2+t+1", F2)
    assert a * b == cyclotomic(7, F2)


def test_gcd_examples():
    f = parse_poly("2*t^2+4", F5)
    assert gcd(f, Poly.zero(F5)) == f.monic()
    assert gcd(parse_poly("t^2+t+1", F2), parse_poly("t^3+t+1", F2)) == Poly.one(F2)
    # gcd divides both and is monic
    a, b = parse_poly("t^4+t^2+1", F2), parse_poly("t^3+1", F2)
    g = gcd(a, b)
    assert g.is_monic and divides(g, a) and divides(g, b)


def test_eval_examples():
    assert parse_poly("t^2+t+1", F2)(0).idx == 1
    assert parse_poly("t^2+t+1", F7)(F7.neg(1)).idx == 1  # 1 - 1 + 1
    assert Poly.zero(F5)(3).idx == 0


def test_divmod_property_seeded():
    rng = Random(11)
    for ctx in (F2, F3, F4, F5):
        for _ in range(60):
            a = Poly(ctx, [rng.randrange(ctx.q) for _ in range(rng.randrange(1, 8))])
            b = Poly(ctx, [rng.randrange(ctx.q) for _ in range(rng.randrange(1, 5))])
            if b.is_zero:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree
    with pytest.raises(DivisionByZero):
        divmod(Poly.one(F2), Poly.zero(F2))


@given(st.lists(st.integers(0, 4), max_size=9), st.lists(st.integers(0, 4), min_size=1, max_size=5))
@settings(max_examples=120, deadline=None)
def test_divmod_property_hypothesis(ac, bc):
    a, b = Poly(F5, ac), Poly(F5, bc)
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


def test_cyclotomic_examples():
    assert cyclotomic(3, F2) == parse_poly("t^2+t+1", F2)
    assert cyclotomic(3, F7) == parse_poly("t^2+t+1", F7)
    assert cyclotomic(6, F7) == parse_poly("t^2-t+1", F7)
    assert cyclotomic(6, F5) == parse_poly("t^2-t+1", F5)
    assert cyclotomic(1, F5) == parse_poly("t-1", F5)
    with pytest.raises(CharacteristicDividesN):
        cyclotomic(6, F2)
    with pytest.raises(CharacteristicDividesN):
        cyclotomic(9, F3)


@pytest.mark.parametrize("ctx", [F2, F3, F5, F4])
def test_cyclotomic_product_identity_and_degree(ctx):
    for n in range(1, 31):
        if n % ctx.p == 0:
            continue
        prod = Poly.one(ctx)
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic(d, ctx)
        assert prod == Poly.x_pow_n_minus_1(ctx, n)
        assert cyclotomic(n, ctx).degree == totient(n)


@pytest.mark.parametrize("ctx", [F2, F5])
def test_cyclotomic_divisibility_lemma(ctx):
    # Q_n | (x^n - 1)/(x^d - 1) for every proper divisor d of n
    for n in range(2, 31):
        if n % ctx.p == 0:
            continue
        qn = cyclotomic(n, ctx)
        for d in range(1, n):
            if n % d == 0:
                quot, rem = divmod(Poly.x_pow_n_minus_1(ctx, n),
                                   Poly.x_pow_n_minus_1(ctx, d))
                assert rem.is_zero
                assert divides(qn, quot)


def test_divides_examples():
    assert divides(parse_poly("t^2+t+1", F2), Poly.x_pow_n_minus_1(F2, 3))
    # (t+1)^3 - 1 over F_2 = t^3+t^2+t
    tp1_cubed = parse_poly("t+1", F2) ** 3 - Poly.one(F2)
    assert divides(parse_poly("t^2+t+1", F2), tp1_cubed)
    # char-2 regression trap: t-1 = t+1 and t^2+1 = (t+1)^2
    assert divides(parse_poly("t-1", F2), parse_poly("t^2+1", F2))
    with pytest.raises(DivisionByZero):
        divides(Poly.zero(F2), Poly.one(F2))


def test_irreducible_factors_examples():
    fs = irreducible_factors(cyclotomic(7, F2))
    assert fs == [parse_poly("t^3+t+1", F2), parse_poly("t^3+t^2+1", F2)]
    assert irreducible_factors(parse_poly("t^2+t+1", F2)) == [parse_poly("t^2+t+1", F2)]
    fs7 = irreducible_factors(parse_poly("t^2-1", F7))
    assert sorted(f.to_text() for f in fs7) == ["1+1*t", "6+1*t"]
    # repeated factor with multiplicity
    assert irreducible_factors(parse_poly("t^2+1", F2)) == [parse_poly("t+1", F2)] * 2


def test_irreducible_factors_reconstruction_seeded():
    rng = Random(5)
    for ctx in (F2, F3, F4, F5, F8):
        for _ in range(25):
            coeffs = [rng.randrange(ctx.q) for _ in range(rng.randrange(2, 8))]
            f = Poly(ctx, coeffs)
            if f.is_zero or f.degree == 0:
                continue
            fs = irreducible_factors(f)
            prod = Poly(ctx, [f.coeffs[-1]])
            for u in fs:
                assert u.is_monic and is_irreducible(u)
                prod = prod * u
            assert prod == f


def test_irreducible_factors_vs_trial_division_exhaustive():
    # every monic polynomial up to the stated desk-scale bounds
    for ctx, max_deg in ((F2, 6), (F3, 4)):
        for deg in range(1, max_deg + 1):
            for f in monic_polys(ctx, deg):
                assert irreducible_factors(f) == trial_division_factors(f)


def test_irreducible_factors_vs_trial_division_sampled():
    rng = Random(17)
    for ctx in (F4, F5, F7, F8):
        for _ in range(12):
            deg = rng.randrange(2, 6)
            f = Poly(ctx, [rng.randrange(ctx.q) for _ in range(deg)] + [1])
            assert irreducible_factors(f) == trial_division_factors(f)


def test_factor_zero_rejected():
    with pytest.raises(DivisionByZero):
        irreducible_factors(Poly.zero(F2))


def test_text_rendering_and_parsing():
    f = parse_poly("t^2-t+1", F7)
    assert f.coeffs == (1, 6, 1)
    assert f.to_text() == "1+6*t+1*t^2"
    assert parse_poly(f.to_text(), F7) == f
    assert parse_poly("1+1*t+1*t^2", F2) == parse_poly("t^2+t+1", F2)
    assert Poly.zero(F5).to_text() == "0"
    assert parse_poly("0", F5) == Poly.zero(F5)
    assert parse_poly("3*t^4", F5).coeffs == (0, 0, 0, 0, 3)


@given(st.lists(st.integers(0, 6), max_size=7))
@settings(max_examples=100, deadline=None)
def test_text_round_trip_hypothesis(coeffs):
    f = Poly(F7, coeffs)
    assert parse_poly(f.to_text(), F7) == f


def test_degree_marker():
    assert Poly.zero(F2).degree is None
    assert Poly.one(F2).degree == 0
    assert parse_poly("t^3", F2).degree == 3


def test_foreign_coefficients_rejected():
    from cppforge.errors import CtxMismatch

    with pytest.raises(CtxMismatch):
        Poly(F4, [F7.elem(3)])
    assert Poly(F4, [F4.elem(2), 1]).coeffs == (2, 1)


def test_monic_polys_order():
    first = list(itertools.islice(monic_polys(F2, 3), 8))
    texts = [f.to_text() for f in first]
    # integer-value order: t^3, 1+t^3, t+t^3, 1+t+t^3, ...
    assert texts[0] == "1*t^3"
    assert texts.index("1+1*t+1*t^3") < texts.index("1+1*t^2+1*t^3")
