"""Backend selection for the hot kernels.

Prefers the compiled extension when it has been built; otherwise the
pure-Python twin is used.  Set PRIME_AVOID_BACKEND=python to force the
fallback (e.g. for benchmarking) or PRIME_AVOID_BACKEND=compiled to fail
loudly when the extension is missing.
"""

import os

_requested = os.environ.get("PRIME_AVOID_BACKEND", "auto").strip().lower()

if _requested in ("auto", ""):
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"
elif _requested in ("compiled", "c"):
    from . import _kernels as _impl

    BACKEND = "compiled"
elif _requested in ("python", "py"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    raise RuntimeError(
        f"PRIME_AVOID_BACKEND={_requested!r} not understood "
        "(expected auto, compiled, or python)"
    )

sieve_primes = _impl.sieve_primes
is_prime_u64 = _impl.is_prime_u64
jacobi_sym = _impl.jacobi_sym
kth_roots = _impl.kth_roots
kth_root_count = _impl.kth_root_count
largest_prime_factor_u64 = _impl.largest_prime_factor_u64
sifted_count = _impl.sifted_count
