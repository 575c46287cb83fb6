"""primeavoid: desk-scale construction of prime-avoiding squarefree
numbers and prime powers, with machine-checkable certificates."""

from .kernels import BACKEND
from .numtheory import (
    Congruence,
    FactorWitness,
    crt_solve,
    is_prime,
    is_smooth,
    jacobi,
    kth_roots_mod_p,
    largest_prime_factor,
    mertens_product,
    primes_upto,
)
from .schedule import Schedule, capacity_check, iter_log, make_schedule

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Congruence",
    "FactorWitness",
    "Schedule",
    "__version__",
    "capacity_check",
    "crt_solve",
    "is_prime",
    "is_smooth",
    "iter_log",
    "jacobi",
    "kth_roots_mod_p",
    "largest_prime_factor",
    "make_schedule",
    "mertens_product",
    "primes_upto",
]
