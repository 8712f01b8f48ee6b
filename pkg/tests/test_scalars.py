import random
from fractions import Fraction

import pytest

from qreflect.scalars import (
    PoleError,
    Scalar,
    ScalarParseError,
    SessionParams,
    poly_gcd,
    poly_mul,
)


P2 = SessionParams(2)
P3 = SessionParams(3)


def brute_qint(params, k):
    # independent oracle: (q^k - q^-k)/(q - q^-1) evaluated as a raw fraction
    return (params.qpow(k) - params.qpow(-k)) / (params.qpow(1) - params.qpow(-1))


def test_session_params():
    assert P2.q_exponent == 4
    assert P3.q_exponent == 6
    with pytest.raises(ValueError):
        SessionParams(0)


def test_qint_small():
    assert P2.qint(1) == Scalar(1)
    assert P2.qint(2) == P2.q + P2.qpow(-1)
    # long-division oracle for qint(3): q^2 + 1 + q^-2
    assert P3.qint(3) == P3.qpow(2) + Scalar(1) + P3.qpow(-2)
    for params in (P2, P3):
        for k in range(-12, 13):
            assert params.qint(k) == brute_qint(params, k)
            assert params.qint(-k) == -params.qint(k)


def test_qint_times_omega():
    for params in (P2, P3):
        for k in range(0, 13):
            assert params.qint(k) * params.omega == params.qpow(k) - params.qpow(-k)


def test_qhat():
    assert P2.qhat(0) == Scalar(0)
    assert P2.qhat(1) == Scalar(1)
    assert P2.qhat(2) == Scalar(1) + P2.qpow(-2)
    for params in (P2, P3):
        for k in range(1, params.n + 1):
            assert params.qhat(k) - params.qhat(k - 1) == params.qpow(-2 * k + 2)
    with pytest.raises(ValueError):
        P2.qhat(3)
    with pytest.raises(ValueError):
        P2.qhat(-1)


def test_classical_limits():
    assert P3.qint(3).classical_limit() == 3
    assert P2.qhat(2).classical_limit() == 2
    assert P2.omega.classical_limit() == 0
    with pytest.raises(PoleError):
        (Scalar(1) / P2.omega).classical_limit()


def random_scalar(rng, params):
    num = [rng.randint(-4, 4) for _ in range(rng.randint(1, 5))]
    den = [rng.randint(-4, 4) for _ in range(rng.randint(1, 5))]
    if not any(den):
        den[0] = 1
    return Scalar(tuple(num), tuple(den))


def test_field_axioms_random():
    rng = random.Random(20240901)
    for _ in range(120):
        a = random_scalar(rng, P2)
        b = random_scalar(rng, P2)
        c = random_scalar(rng, P2)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == Scalar(1)
        assert a - a == Scalar(0)


def test_canonical_form():
    s = P2.parse("(q^2-1)/(q-1)")
    assert s == P2.q + 1
    # denominator leading coefficient always positive
    t = Scalar((1,), (0, -1))
    assert t.den[-1] > 0
    assert t == Scalar((-1,), (0, 1))
    # equality agrees with cross-multiplication on unreduced input
    assert Scalar((0, 2), (2,)) == Scalar((0, 1), (1,))


def test_parse_examples():
    assert P2.parse("q - q^-1") == P2.omega
    assert P2.parse("q^(1/2)*q^(1/2)") == P2.q
    assert P2.parse("q^(-1/2)") == P2.qpow(-1, 2)
    assert P3.parse("q^(1/2)") == P3.ppow(3)
    assert P2.parse("2^3") == Scalar(8)
    assert P2.parse("-p^2 + p^2") == Scalar(0)
    assert P2.parse(" ( q + 1 ) * ( q - 1 ) ") == P2.qpow(2) - 1


def test_parse_errors():
    with pytest.raises(ScalarParseError):
        P2.parse("q +")
    with pytest.raises(ScalarParseError):
        P2.parse("(q")
    with pytest.raises(ScalarParseError):
        P2.parse("q^(1/3)")  # 4/3 is not an integer power of p
    with pytest.raises(ScalarParseError):
        P2.parse("1/0")
    with pytest.raises(ScalarParseError):
        P2.parse("q q")
    err = None
    try:
        P2.parse("q + $")
    except ScalarParseError as e:
        err = e
    assert err is not None and err.position == 4


def test_roundtrip_corpus():
    rng = random.Random(7)
    for params in (P2, P3):
        for _ in range(500):
            s = random_scalar(rng, params)
            assert params.parse(params.to_text(s)) == s
            assert params.parse(s.to_p_text()) == s


def test_to_text_prefers_q():
    assert P2.to_text(P2.omega) == "q - q^-1"
    assert P2.to_text(P2.qhat(2)) == "1 + q^-2"
    assert P2.to_text(Scalar(0)) == "0"
    # odd p-powers cannot be written in q
    assert "p" in P2.to_text(P2.ppow(3))


def test_poly_gcd_contains_common_factor():
    from qreflect.scalars import poly_divmod, poly_neg, poly_primitive

    from qreflect.scalars import poly_trim

    rng = random.Random(99)
    for _ in range(60):
        a = poly_trim([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        b = poly_trim([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        g = poly_trim([rng.randint(-3, 3) for _ in range(rng.randint(1, 4))])
        if not a or not b or not g:
            continue
        d = poly_gcd(poly_mul(a, g), poly_mul(b, g))
        gp, _ = poly_primitive(g)
        if gp[-1] < 0:
            gp = poly_neg(gp)
        _, rem = poly_divmod(d, gp)
        assert rem == ()


def test_pow():
    assert (P2.q ** 3) == P2.qpow(3)
    assert (P2.q ** -2) == P2.qpow(-2)
    assert (P2.omega ** 0) == Scalar(1)


def test_hash_and_immutability():
    s = P2.q + 1
    t = P2.parse("q+1")
    assert hash(s) == hash(t)
    with pytest.raises(AttributeError):
        s.num = (1,)
