# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the hot inner loops behind primeavoid.numtheory and
primeavoid.sievebound.  Contract-identical to primeavoid._kernels_py."""

from libc.stdlib cimport calloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cdef inline u64 _mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * b) % m)


cdef inline u64 _powmod(u64 base, u64 exp, u64 m) nogil:
    cdef u64 result = 1 % m
    base %= m
    while exp:
        if exp & 1:
            result = _mulmod(result, base, m)
        base = _mulmod(base, base, m)
        exp >>= 1
    return result


def sieve_primes(long long limit):
    """All primes <= limit, ascending."""
    if limit < 2:
        return []
    cdef long long n = limit
    cdef char *flags = <char *>calloc(n + 1, 1)
    if flags == NULL:
        raise MemoryError()
    cdef long long i, j, p
    cdef list out = []
    try:
        for p in range(2, n + 1):
            if p * p > n:
                break
            if not flags[p]:
                j = p * p
                while j <= n:
                    flags[j] = 1
                    j += p
        for i in range(2, n + 1):
            if not flags[i]:
                out.append(i)
    finally:
        free(flags)
    return out


cdef u64[12] _WITNESSES
_WITNESSES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_prime_u64(n_obj):
    """Deterministic strong-pseudoprime test, n < 2**64."""
    cdef u64 n = n_obj
    if n < 2:
        return False
    cdef int i, r
    cdef u64 a, d, x
    for i in range(12):
        if n % _WITNESSES[i] == 0:
            return n == _WITNESSES[i]
    d = n - 1
    r = 0
    while d % 2 == 0:
        d >>= 1
        r += 1
    cdef int witnessed
    for i in range(12):
        a = _WITNESSES[i]
        x = _powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        witnessed = 0
        for _ in range(r - 1):
            x = _mulmod(x, x, n)
            if x == n - 1:
                witnessed = 1
                break
        if not witnessed:
            return False
    return True


def jacobi_sym(a_obj, n_obj):
    """Jacobi symbol (a/n) for odd n >= 1, 0 <= a < n."""
    cdef long long a = a_obj
    cdef long long n = n_obj
    cdef long long tmp
    cdef int result = 1
    if n == 1:
        return 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 == 3 or n % 8 == 5:
                result = -result
        tmp = a
        a = n
        n = tmp
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kth_roots(a_obj, k_obj, p_obj):
    """All n in [0, p) with n**k == a (mod p), by full enumeration."""
    cdef u64 a = a_obj
    cdef u64 k = k_obj
    cdef u64 p = p_obj
    cdef u64 n
    cdef list out = []
    for n in range(p):
        if _powmod(n, k, p) == a:
            out.append(n)
    return out


def kth_root_count(a_obj, k_obj, p_obj):
    cdef u64 a = a_obj
    cdef u64 k = k_obj
    cdef u64 p = p_obj
    cdef u64 n
    cdef long long count = 0
    with nogil:
        for n in range(p):
            if _powmod(n, k, p) == a:
                count += 1
    return count


def largest_prime_factor_u64(n_obj):
    """Largest prime factor of n >= 1 by trial division (n <= 10**12)."""
    cdef u64 n = n_obj
    cdef u64 largest = 1
    cdef u64 f
    while n % 2 == 0:
        largest = 2
        n //= 2
    while n % 3 == 0:
        largest = 3
        n //= 3
    f = 5
    while f * f <= n:
        if n % f == 0:
            largest = f
            n //= f
        elif n % (f + 2) == 0:
            largest = f + 2
            n //= f + 2
        else:
            f += 6
    return n if n > 1 else largest


def sifted_count(limit_obj, rules):
    """Count n in [1, limit] avoiding every forbidden residue class."""
    cdef long long limit = limit_obj
    cdef char *alive = <char *>calloc(limit + 1, 1)
    if alive == NULL:
        raise MemoryError()
    cdef long long p, r, j, count
    try:
        for p_obj, residues in rules:
            p = p_obj
            for r_obj in residues:
                r = r_obj
                j = r if r >= 1 else p
                while j <= limit:
                    alive[j] = 1
                    j += p
        count = 0
        for j in range(1, limit + 1):
            if not alive[j]:
                count += 1
    finally:
        free(alive)
    return count
