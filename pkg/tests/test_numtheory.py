import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithrand import gf2
from arithrand.exceptions import CapacityError
from arithrand.numtheory import (
    F2_LIOUVILLE,
    LIOUVILLE,
    ArithFn,
    carlitz_sum,
    f2_factor,
    f2_liouville,
    f2_liouville_sieve,
    generate_sequence,
    is_prime,
    least_qnr,
    legendre,
    legendre_symbol,
    liouville,
    liouville_sieve,
    nonresidue_table,
    parse_kind,
    patched_legendre_sequence,
    sieve_primes,
)

from oracles import legendre_by_squares, poly_irreducible_count_parity, primes_by_trial_division

SMALL_PRIMES = [p for p in primes_by_trial_division(1000) if p > 2]


def test_sieve_small():
    assert sieve_primes(10).tolist() == [2, 3, 5, 7]
    assert sieve_primes(2).tolist() == [2]


def test_sieve_count_matches_trial_division():
    primes = sieve_primes(10**4)
    assert len(primes) == 1229
    assert primes.tolist() == primes_by_trial_division(10**4)


def test_sieve_rejects_empty_domain():
    with pytest.raises(ValueError):
        sieve_primes(1)


@pytest.mark.parametrize("n, p, expected", [(1, 7, 1), (2, 7, 1), (3, 5, -1), (10, 5, 0), (-1, 7, -1)])
def test_legendre_examples(n, p, expected):
    assert legendre_symbol(n, p) == expected


@pytest.mark.parametrize("p", [1, 2, 4, 9, 15, -3])
def test_legendre_invalid_modulus(p):
    with pytest.raises(ValueError):
        legendre_symbol(1, p)


@pytest.mark.parametrize("p", SMALL_PRIMES[:40])
def test_legendre_matches_squares(p):
    assert all(legendre_symbol(n, p) == legendre_by_squares(n, p) for n in range(2 * p))


@settings(max_examples=300)
@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6), st.integers(1, 10**6))
def test_legendre_multiplicative(p, m, n):
    if (m * n) % p:
        assert legendre_symbol(m * n, p) == legendre_symbol(m, p) * legendre_symbol(n, p)


@pytest.mark.parametrize("p", [q for q in SMALL_PRIMES if q % 8 in (3, 5)][:30])
def test_two_is_nonresidue_for_pm3_mod8(p):
    assert all(legendre_symbol(2 * n, p) == -legendre_symbol(n, p) for n in range(1, p))


@pytest.mark.parametrize("p, expected", [(3, 2), (7, 3), (17, 3), (23, 5), (71, 7)])
def test_least_qnr_examples(p, expected):
    assert least_qnr(p) == expected


def test_least_qnr_is_prime_and_two_iff_pm3():
    for p in SMALL_PRIMES:
        q = least_qnr(p)
        assert is_prime(q)
        assert (q == 2) == (p % 8 in (3, 5))


def test_nonresidue_table():
    assert nonresidue_table(5).tolist() == [0, 0, 1, 1, 0]
    assert nonresidue_table(7).tolist() == [0, 0, 0, 1, 0, 1, 1]


def test_liouville_examples():
    lam = liouville_sieve(20)
    assert lam[0] == 1       # lambda(1)
    assert lam[7] == -1      # lambda(8) = (-1)^3
    assert lam[:4].tolist() == [1, -1, -1, 1]


def test_liouville_sieve_matches_trial_division():
    lam = liouville_sieve(20000)
    assert all(lam[n - 1] == liouville(n) for n in range(1, 20001))


def test_liouville_sieve_empty():
    assert liouville_sieve(0).size == 0


def test_liouville_doubling():
    lam = liouville_sieve(2 * 10**5)
    n = np.arange(1, 10**5 + 1)
    assert np.all(lam[2 * n - 1] == -lam[n - 1])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_liouville_completely_multiplicative(m, n):
    lam = liouville_sieve(9 * 10**6)
    assert lam[m * n - 1] == lam[m - 1] * lam[n - 1]


def test_f2_liouville_examples():
    lam = f2_liouville_sieve(16)
    assert lam[0] == 1    # F_1 = 1
    assert lam[1] == -1   # F_2 = X
    assert lam[6] == -1   # F_7 = X^2 + X + 1, irreducible
    assert lam[5] == 1    # F_6 = X(X + 1)


def test_f2_sieve_matches_trial_division():
    lam = f2_liouville_sieve(1 << 13)
    for k in range(1, 1 << 13):
        assert lam[k - 1] == (-1 if poly_irreducible_count_parity(k) else 1), k


def test_f2_factor_roundtrip():
    rng = random.Random(7)
    for _ in range(200):
        a = rng.randrange(1, 1 << 20)
        product = 1
        for f in f2_factor(a):
            product = gf2.mul(product, f)
            assert len(f2_factor(f)) == 1
        assert product == a
        assert f2_liouville(a) == f2_liouville_sieve(a)[a - 1]


def test_f2_doubling():
    lam = f2_liouville_sieve(1 << 18)
    n = np.arange(1, 1 << 17)
    assert np.all(lam[2 * n - 1] == -lam[n - 1])


def test_f2_capacity():
    with pytest.raises(CapacityError):
        f2_liouville_sieve(1 << 25)


def test_carlitz_brute_force_small():
    # direct enumeration, independent of the sieve
    for d in range(1, 9):
        direct = sum(-1 if poly_irreducible_count_parity(k) else 1 for k in range(1 << d, 1 << (d + 1)))
        assert carlitz_sum(d) == direct


def test_carlitz_sign_pattern():
    # odd d: the sum is -2^floor((d+1)/2); even d: +2^floor((d+1)/2)
    assert carlitz_sum(1) == -2   # lambda(X) + lambda(X + 1)
    assert carlitz_sum(2) == 2    # 1 + 1 + 1 - 1
    assert carlitz_sum(3) == -4
    assert carlitz_sum(4) == 4


def test_carlitz_capacity():
    with pytest.raises(CapacityError):
        carlitz_sum(25)


def test_generate_sequence_examples():
    assert generate_sequence(legendre(5), 5).to_ascii() == "01100"
    assert generate_sequence(LIOUVILLE, 4).to_ascii() == "0110"
    assert generate_sequence(legendre(5), 9).to_ascii() == "011000110"


def test_generate_sequence_zero_at_multiples_of_p():
    seq = generate_sequence(legendre(11), 100)
    assert all(seq.term(n) == 0 for n in range(11, 101, 11))


@pytest.mark.parametrize("kind", [LIOUVILLE, F2_LIOUVILLE, legendre(11), legendre(13)])
def test_generated_sequences_satisfy_halving(kind):
    seq = generate_sequence(kind, 4000)
    for n in range(1, 2001):
        if kind.kind == "legendre" and n % kind.p == 0:
            continue
        assert seq.term(2 * n) == 1 - seq.term(n)


def test_generate_sequence_rejects_empty():
    with pytest.raises(ValueError):
        generate_sequence(LIOUVILLE, 0)


def test_patched_sequence():
    seq = patched_legendre_sequence(5, 40)
    base = generate_sequence(legendre(5), 40)
    assert np.array_equal(seq.bits[:9], base.bits[:9])
    assert seq.term(10) == 1 - seq.term(5) == 1
    for n in range(1, 21):
        assert seq.term(2 * n) == 1 - seq.term(n)
    for n in range(1, 41):
        if n % 10:
            assert seq.term(n) == base.term(n)


def test_patched_sequence_wrong_class():
    with pytest.raises(ValueError):
        patched_legendre_sequence(7, 20)


def test_kind_validation():
    with pytest.raises(ValueError):
        ArithFn("legendre")
    with pytest.raises(ValueError):
        ArithFn("liouville", 5)
    with pytest.raises(ValueError):
        legendre(9)
    assert parse_kind("liouville-int") == LIOUVILLE
    assert str(legendre(7)) == "legendre-7"
