import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeavoid.numtheory import (
    Congruence,
    FactorWitness,
    crt_solve,
    is_prime,
    is_smooth,
    jacobi,
    kth_root_count,
    kth_roots_mod_p,
    largest_prime_factor,
    mertens_product,
    primes_upto,
)

EULER_GAMMA = 0.5772156649015329


# -- independent oracles -------------------------------------------------


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_division_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def stepping_crt(congs):
    """Brute-force residue search: step the partial solution by the
    partial modulus until the next congruence holds.  No inverses."""
    sol, mod = 0, 1
    for r, p in congs:
        while sol % p != r:
            sol += mod
        mod *= p
    return sol, mod


# -- primes_upto ----------------------------------------------------------


def test_primes_upto_examples():
    assert primes_upto(10) == [2, 3, 5, 7]
    assert primes_upto(1) == []
    assert len(primes_upto(100)) == 25


def test_primes_upto_matches_trial_division():
    expected = [n for n in range(2000) if trial_division_is_prime(n)]
    assert primes_upto(1999) == expected


def test_primes_upto_rejects_oversized():
    with pytest.raises(ValueError):
        primes_upto(10**8 + 1)


# -- is_prime -------------------------------------------------------------


def test_is_prime_examples():
    assert not is_prime(561)  # Carmichael
    assert is_prime(2)
    assert is_prime(1000000007)
    assert trial_division_is_prime(1000000007)


@pytest.mark.parametrize("carmichael", [561, 1105, 1729, 2465, 2821, 6601])
def test_carmichael_numbers_composite(carmichael):
    assert not is_prime(carmichael)
    assert not trial_division_is_prime(carmichael)


def test_is_prime_agrees_with_trial_division_small():
    for n in range(10_000):
        assert is_prime(n) == trial_division_is_prime(n), n


def test_is_prime_big_deterministic_band():
    # 2^89 - 1 is a Mersenne prime; its neighbors are composite
    m = 2**89 - 1
    assert is_prime(m)
    assert not is_prime(m - 2)
    assert not is_prime(m + 2)


def test_is_prime_seeded_band_reproducible():
    n = 10**30 + 57  # above the deterministic bound
    assert is_prime(n, seed=1) == is_prime(n, seed=1)
    # a known factorization: (10^30 + 57) has small factor? ensure consistency only
    assert is_prime(n, seed=7) == is_prime(n, seed=1)


# -- largest_prime_factor / is_smooth --------------------------------------


def test_largest_prime_factor_examples():
    assert largest_prime_factor(12) == 3
    assert largest_prime_factor(1) == 1
    assert largest_prime_factor(49) == 7


def test_largest_prime_factor_matches_factorization():
    for n in range(1, 3000):
        facs = trial_division_factors(n)
        assert largest_prime_factor(n) == (max(facs) if facs else 1)


def test_largest_prime_factor_bounds():
    with pytest.raises(ValueError):
        largest_prime_factor(0)
    with pytest.raises(ValueError, match="too large"):
        largest_prime_factor(10**13)


def test_is_smooth_examples():
    assert is_smooth(12, 3)
    assert not is_smooth(12, 2.9)
    assert is_smooth(1, 0)
    assert is_smooth(1, 100.0)


# -- jacobi ----------------------------------------------------------------


def test_jacobi_examples():
    assert jacobi(2, 7) == 1  # 3^2 == 2 (mod 7)
    assert jacobi(3, 7) == -1
    assert jacobi(0, 5) == 0


def test_jacobi_rejects_even_or_nonpositive():
    with pytest.raises(ValueError):
        jacobi(3, 8)
    with pytest.raises(ValueError):
        jacobi(3, 0)
    with pytest.raises(ValueError):
        jacobi(3, -5)


def test_jacobi_matches_squares_and_euler_criterion():
    for p in primes_upto(500):
        if p == 2:
            continue
        squares = {n * n % p for n in range(1, p)}
        for a in range(1, p):
            sym = jacobi(a, p)
            assert sym == (1 if a in squares else -1)
            assert sym % p == pow(a, (p - 1) // 2, p)


@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=0, max_value=167),
)
def test_jacobi_multiplicative_in_top_argument(a, idx):
    n = [x for x in range(3, 2001, 2)][idx]
    assert jacobi(a, n) == jacobi(a % n, n)
    assert jacobi(a * a, n) in (0, 1)


# -- kth roots ----------------------------------------------------------


def test_kth_roots_examples():
    assert kth_roots_mod_p(2, 2, 7) == {3, 4}
    assert kth_roots_mod_p(0, 3, 7) == {0}
    assert kth_roots_mod_p(3, 2, 7) == set()


def test_kth_roots_match_enumeration_and_total():
    for p in primes_upto(60):
        for k in range(1, 7):
            total = 0
            for a in range(p):
                expected = {n for n in range(p) if pow(n, k, p) == a}
                got = kth_roots_mod_p(a, k, p)
                assert got == expected, (a, k, p)
                assert kth_root_count(a, k, p) == len(expected)
                total += len(got)
            assert total == p


def test_kth_roots_validation():
    with pytest.raises(ValueError):
        kth_roots_mod_p(1, 0, 7)
    with pytest.raises(ValueError):
        kth_roots_mod_p(1, 2, 10**6 + 3)
    with pytest.raises(ValueError):
        kth_roots_mod_p(1, 2, 9)  # not prime


# -- crt -----------------------------------------------------------------


def test_crt_examples():
    assert crt_solve([(0, 2), (1, 3), (2, 5)]) == (22, 30)
    assert crt_solve([(1, 7)]) == (1, 7)
    assert crt_solve([(0, 2), (0, 3)]) == (0, 6)


def test_crt_duplicate_modulus():
    with pytest.raises(ValueError, match="duplicate modulus"):
        crt_solve([(0, 5), (1, 5)])


def test_crt_matches_stepping_oracle():
    congs = [(1, 2), (2, 3), (3, 5), (5, 7), (10, 11)]
    assert crt_solve(congs) == stepping_crt(congs)


@settings(max_examples=60)
@given(st.data())
def test_crt_solution_satisfies_all_and_is_minimal(data):
    ps = data.draw(
        st.lists(
            st.sampled_from(primes_upto(200)), min_size=1, max_size=6, unique=True
        )
    )
    congs = [(data.draw(st.integers(min_value=0, max_value=p - 1)), p) for p in ps]
    m0, n = crt_solve(congs)
    assert n == math.prod(ps)
    assert 0 <= m0 < n
    for r, p in congs:
        assert m0 % p == r
    # minimality: subtracting n once leaves the range
    assert m0 - n < 0


def test_congruence_validation():
    with pytest.raises(ValueError):
        Congruence(0, 9)
    with pytest.raises(ValueError):
        Congruence(5, 5)
    assert Congruence(3, 5).holds_for(13)


# -- mertens ----------------------------------------------------------------


def test_mertens_small_values():
    assert mertens_product(2) == 0.5
    assert mertens_product(10) == pytest.approx(48 / 210, rel=1e-12)


@pytest.mark.parametrize("w", [10**3, 10**4, 10**5])
def test_mertens_asymptotic_window(w):
    v = mertens_product(w)
    assert abs(v * math.log(w) * math.exp(EULER_GAMMA) - 1) <= 3 / math.log(w)


# -- FactorWitness -----------------------------------------------------------


def test_factor_witness():
    w = FactorWitness.checked(15, 3)
    assert w.cofactor_gt_one and w.verify() and w.certifies_composite()
    prime_as_own_witness = FactorWitness.checked(7, 7)
    assert not prime_as_own_witness.certifies_composite()
    with pytest.raises(ValueError):
        FactorWitness.checked(15, 4)
