"""Exact integer and modular arithmetic primitives.

Everything here is a pure function over Python ints (arbitrary precision,
no rounding); fixed-width inner loops are delegated to the selected
kernel backend.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import kernels

# The first thirteen primes decide primality for every n below this
# bound (Sorenson & Webster); above it we fall back to seeded rounds.
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_SEEDED_ROUNDS = 64

SIEVE_LIMIT = 10**8
TRIAL_FACTOR_LIMIT = 10**12
ROOT_ENUM_LIMIT = 10**6

_MERTENS_FRAC_BITS = 96


@dataclass(frozen=True)
class Congruence:
    """residue mod a prime modulus, validated on construction."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2 or not is_prime(self.modulus):
            raise ValueError(f"congruence modulus {self.modulus} is not prime")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} out of range for modulus {self.modulus}"
            )

    def holds_for(self, n: int) -> bool:
        return n % self.modulus == self.residue


@dataclass(frozen=True)
class FactorWitness:
    """A prime divisor p of n; p < n certifies n composite."""

    n: int
    p: int
    cofactor_gt_one: bool

    @classmethod
    def checked(cls, n: int, p: int) -> "FactorWitness":
        if p < 2 or n % p != 0:
            raise ValueError(f"{p} does not witness a factor of {n}")
        return cls(n=n, p=p, cofactor_gt_one=p < n)

    def verify(self) -> bool:
        if self.p < 2 or self.n % self.p != 0:
            return False
        return self.cofactor_gt_one == (self.p < self.n)

    def certifies_composite(self) -> bool:
        return self.verify() and self.cofactor_gt_one


def primes_upto(n: int) -> list[int]:
    """Ordered list of primes <= n (n <= 10**8)."""
    n = int(n)
    if n > SIEVE_LIMIT:
        raise ValueError(f"sieve limit {n} exceeds desk bound {SIEVE_LIMIT}")
    if n < 2:
        return []
    return kernels.sieve_primes(n)


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed: int = 0) -> bool:
    """Primality test.

    Exact (fixed witness bases) below 3.3e24; above that, 64 rounds of
    strong-probable-prime testing with bases drawn from a generator
    seeded by ``seed``, so results are reproducible for a given seed.
    """
    if n < 2:
        return False
    if n < 2**64:
        return kernels.is_prime_u64(n)
    for p in _MR_BASES:
        if n % p == 0:
            return False
    if n < MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    rng = random.Random(seed)
    return all(
        _strong_probable_prime(n, rng.randrange(2, n - 1))
        for _ in range(_MR_SEEDED_ROUNDS)
    )


def largest_prime_factor(n: int) -> int:
    """P+(n) by trial division, with the convention P+(1) = 1."""
    if n < 1:
        raise ValueError(f"largest_prime_factor needs n >= 1, got {n}")
    if n > TRIAL_FACTOR_LIMIT:
        raise ValueError(f"{n} is too large to factor (bound {TRIAL_FACTOR_LIMIT})")
    if n == 1:
        return 1
    return kernels.largest_prime_factor_u64(n)


def is_smooth(n: int, z: float) -> bool:
    """True iff every prime factor of n is <= z.

    n = 1 counts as smooth for any z >= 0.
    """
    if z < 0:
        raise ValueError(f"smoothness bound must be >= 0, got {z}")
    if n == 1:
        return True
    return largest_prime_factor(n) <= z


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n); equals the Legendre symbol for prime n."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    return kernels.jacobi_sym(a, n)


def kth_roots_mod_p(a: int, k: int, p: int) -> set[int]:
    """{n in [0,p) : n**k == a (mod p)}, by full residue enumeration.

    Every modulus used at desk scale is small, so O(p) enumeration is
    cheap and unconditionally correct.  An empty set means unsolvable.
    """
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    if p > ROOT_ENUM_LIMIT:
        raise ValueError(f"modulus {p} exceeds enumeration bound {ROOT_ENUM_LIMIT}")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return set(kernels.kth_roots(a % p, k, p))


def kth_root_count(a: int, k: int, p: int) -> int:
    """|{n in [0,p) : n**k == a (mod p)}| without materializing the set."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    if p > ROOT_ENUM_LIMIT:
        raise ValueError(f"modulus {p} exceeds enumeration bound {ROOT_ENUM_LIMIT}")
    return kernels.kth_root_count(a % p, k, p)


def crt_solve(congruences) -> tuple[int, int]:
    """Solve a system of congruences with pairwise distinct prime moduli.

    Returns (m0, N) with N the product of the moduli and m0 the unique
    solution in [0, N).
    """
    congs = [
        c if isinstance(c, Congruence) else Congruence(residue=c[0], modulus=c[1])
        for c in congruences
    ]
    seen = set()
    for c in congs:
        if c.modulus in seen:
            raise ValueError(f"duplicate modulus {c.modulus}")
        seen.add(c.modulus)
    m, prod = 0, 1
    for c in congs:
        t = ((c.residue - m) * pow(prod, -1, c.modulus)) % c.modulus
        m += prod * t
        prod *= c.modulus
    return m, prod


def mertens_product(w: int) -> float:
    """prod_{p <= w} (1 - 1/p), accumulated in 96-fractional-bit fixed point.

    Plain doubles would be fine at small w, but the fixed-point product
    keeps the full-range error below one part in 1e20 even at w = 1e8.
    """
    if w < 2:
        raise ValueError(f"mertens_product needs w >= 2, got {w}")
    acc = 1 << _MERTENS_FRAC_BITS
    for p in primes_upto(w):
        acc = acc * (p - 1) // p
    return acc / (1 << _MERTENS_FRAC_BITS)


def natural_log(n) -> float:
    """log of an int or float of any size (math.log handles big ints)."""
    return math.log(n)
