"""Construction of prime-avoiding k-th powers of primes.

Builds the offset classes for the window around m^k, screens offsets
whose congruence is unlikely to be solvable (quadratic-residue statistics,
k even), matches the remaining offsets to large primes under k-th-power
solvability, solves the congruence system, finds a prime m in the
progression, and certifies the window: every element m^k + (u - 1) either
carries a witness prime divisor or is listed as an exception with an
explicit primality status.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace

from .errors import CapacityError, SearchExhausted
from .numtheory import (
    Congruence,
    FactorWitness,
    crt_solve,
    is_prime,
    is_smooth,
    jacobi,
    kth_roots_mod_p,
    primes_upto,
)
from .parallel import pmap
from .schedule import Schedule, capacity_check

DEFAULT_PRIME_STEPS = 100_000
_SCREEN_PRIME_LIMIT = 10**4


@dataclass(frozen=True)
class KSetSystem:
    """Prime bands and offset classes for one k-th power run."""

    k: int
    p1: tuple[int, ...]  # p <= log x, plus the band (z, x/40k]
    p2: tuple[int, ...]  # mid band (log x, z]
    p3tilde: tuple[int, ...]  # matchable large primes (congruence-filtered)
    u1: tuple[int, ...]  # offsets divisible by some band-one prime
    u2: tuple[int, ...]  # window minus u1
    u3: tuple[int, ...]  # offsets with |u| prime
    u4: tuple[int, ...]  # offsets with |u| z-smooth
    u5: tuple[int, ...]  # u3 offsets no mid-band prime can cover
    u7: tuple[int, ...]  # u4 | u5: offsets needing matched primes
    p1_upper_empty: bool  # x/40k fell at or below z
    u6: tuple[int, ...] = ()  # screened exceptional offsets (k even)
    p3: tuple[int, ...] = ()  # matched image, filled after matching
    p4: tuple[int, ...] = ()  # leftover primes <= x, filled in full mode

    @property
    def u4_within_u2(self) -> int:
        """Smooth offsets that also avoid every band-one prime (the window
        classes overlap; both cardinalities are reported)."""
        u2 = set(self.u2)
        return sum(1 for u in self.u4 if u in u2)


def build_sets_k(sch: Schedule) -> KSetSystem:
    """Classify primes and window offsets for a k-th power run."""
    if sch.degenerate:
        raise ValueError(
            f"degenerate schedule: z={sch.z:.4f} <= log x; mid prime band empty"
        )
    x, k, z, y = sch.x, sch.k, sch.z, sch.y
    cut = x / (40 * k)
    if cut < 1:
        raise CapacityError(
            f"x={x:g} is too small for k={k}: the large-prime band starts at "
            f"x/(40k)={cut:g} < 1; need x >= {40 * k}",
            needed=1,
            available=0,
        )
    log_x = math.log(x)
    primes = primes_upto(math.floor(x))

    p1_upper_empty = cut <= z
    p1 = tuple(p for p in primes if p <= log_x or z < p <= cut)
    p2 = tuple(p for p in primes if log_x < p <= z)
    banned = set(p1) | set(p2)
    if k % 2 == 1:
        p3t = tuple(
            p for p in primes if cut < p <= x and p % 3 == 2 and p not in banned
        )
    else:
        p3t = tuple(
            p
            for p in primes
            if cut < p <= x / 2 and p % (2 * k) == 3 and p not in banned
        )
    if not p3t:
        raise CapacityError(
            f"no matchable large primes in the band above x/(40k)={cut:g}",
            needed=1,
            available=0,
        )

    in_u1 = bytearray(2 * y + 1)
    for p in p1:
        first = -((y // p) * p)
        for m in range(first, y + 1, p):
            in_u1[m + y] = 1
    in_u1[y] = 1  # u = 0

    window = range(-y, y + 1)
    u1 = tuple(u for u in window if in_u1[u + y])
    u2 = tuple(u for u in window if not in_u1[u + y])
    u3 = tuple(u for u in window if u != 0 and is_prime(abs(u)))
    u4 = tuple(u for u in window if u != 0 and is_smooth(abs(u), z))
    shift = (1 << k) - 1
    u5 = tuple(u for u in u3 if all((u + shift) % p for p in p2))
    u7 = tuple(sorted(set(u4) | set(u5)))
    return KSetSystem(
        k=k,
        p1=p1,
        p2=p2,
        p3tilde=p3t,
        u1=u1,
        u2=u2,
        u3=u3,
        u4=u4,
        u5=u5,
        u7=u7,
        p1_upper_empty=p1_upper_empty,
    )


def legendre_screen(sch: Schedule, p3tilde) -> tuple[int, ...]:
    """Offsets u whose -u is a quadratic residue for too few matchable
    primes (at most delta*x/log x of them).  Empty for odd k: every
    matchable prime was chosen so that k-th powers cover all residues."""
    if sch.k % 2 == 1:
        return ()
    threshold = sch.delta * sch.x / math.log(sch.x)

    def exceptional(u: int) -> bool:
        count = 0
        for p in p3tilde:
            if jacobi(-u, p) == 1:
                count += 1
                if count > threshold:
                    return False
        return True

    window = range(-sch.y, sch.y + 1)
    flags = pmap(exceptional, window)
    return tuple(u for u, flagged in zip(window, flags) if flagged)


@dataclass(frozen=True)
class KMatching:
    """Offset -> (prime, chosen root) assignment from the solvability graph."""

    matched: dict[int, tuple[int, int]]
    unmatched: tuple[int, ...]

    def witness_primes(self) -> set[int]:
        return {p for p, _ in self.matched.values()}


def _solvable(a: int, k: int, p: int) -> bool:
    """Is n**k == a (mod p) solvable for a != 0?  Euler-criterion test;
    agrees with full enumeration (property-tested)."""
    if p == 2:
        return True
    g = math.gcd(k, p - 1)
    return pow(a, (p - 1) // g, p) == 1


def _max_matching(adjacency: dict[int, tuple[int, ...]]) -> dict[int, int]:
    """Hopcroft-Karp maximum bipartite matching.

    Deterministic given the iteration order of ``adjacency`` and its
    neighbor tuples.
    """
    inf = float("inf")
    match_left: dict[int, int] = {}
    match_right: dict[int, int] = {}

    while True:
        dist: dict[int, float] = {}
        queue: deque[int] = deque()
        for u in adjacency:
            if u not in match_left:
                dist[u] = 0
                queue.append(u)
        shortest = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= shortest:
                continue
            for v in adjacency[u]:
                w = match_right.get(v)
                if w is None:
                    if shortest == inf:
                        shortest = dist[u] + 1
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if shortest == inf:
            return match_left

        def augment(u: int) -> bool:
            for v in adjacency[u]:
                w = match_right.get(v)
                if w is None:
                    if dist[u] + 1 == shortest:
                        match_left[u] = v
                        match_right[v] = u
                        return True
                elif dist.get(w) == dist[u] + 1 and augment(w):
                    match_left[u] = v
                    match_right[v] = u
                    return True
            dist[u] = inf
            return False

        for u in adjacency:
            if u not in match_left:
                augment(u)


def has_augmenting_path(adjacency, matched: dict[int, int]) -> bool:
    """Independent maximality check: True iff an augmenting path exists
    with respect to ``matched`` (then the matching is not maximum)."""
    right_owner = {v: u for u, v in matched.items()}
    for start in adjacency:
        if start in matched:
            continue
        seen_left = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in adjacency[u]:
                w = right_owner.get(v)
                if w is None:
                    return True
                if w not in seen_left:
                    seen_left.add(w)
                    frontier.append(w)
    return False


def match_offsets(sets: KSetSystem) -> KMatching:
    """Maximum matching between cover-needing offsets and matchable primes.

    An edge (u, p) exists iff m**k == 1 - u (mod p) has a nonzero
    solution; zero roots are useless (the found prime m would have to be
    divisible by p), so offsets with 1 - u == 0 mod p lose that edge.
    The offset u = 1 is excluded outright: its window element is m^k
    itself, the constructed prime power.
    """
    k = sets.k
    domain = [u for u in sets.u7 if u != 1]
    adjacency: dict[int, tuple[int, ...]] = {}
    for u in domain:
        edges = []
        for p in sets.p3tilde:
            a = (1 - u) % p
            if a != 0 and _solvable(a, k, p):
                edges.append(p)
        adjacency[u] = tuple(edges)
    pairs = _max_matching(adjacency)
    matched: dict[int, tuple[int, int]] = {}
    for u in sorted(pairs):
        p = pairs[u]
        roots = kth_roots_mod_p((1 - u) % p, k, p)
        if not roots:
            raise RuntimeError(
                f"solvability test and enumeration disagree at (u={u}, p={p})"
            )
        root = min(roots)
        if pow(root, k, p) != (1 - u) % p:
            raise RuntimeError(f"chosen root fails re-verification at (u={u}, p={p})")
        matched[u] = (p, root)
    unmatched = tuple(u for u in domain if u not in matched)
    return KMatching(matched=matched, unmatched=unmatched)


def solve_m0_k(
    sch: Schedule, sets: KSetSystem, matching: KMatching, reduced: bool = True
) -> tuple[KSetSystem, int, int]:
    """Solve the congruence system for the progression base.

    Residue 1 on band-one primes, 2 on mid-band primes, the chosen root
    on each matched prime, and (full mode only) 1 on every remaining
    prime <= x.  Reduced mode drops that last block: it exists only to
    force coprimality to the full primorial, and the construction's
    coverage never uses it, while the smaller modulus makes the prime
    search far cheaper.

    Returns the set system with the matched image and leftovers filled
    in, the modulus, and m0.
    """
    p3 = tuple(sorted(matching.witness_primes()))
    congs = [Congruence(1, p) for p in sets.p1]
    congs += [Congruence(2, p) for p in sets.p2]
    for u in sorted(matching.matched):
        p, root = matching.matched[u]
        if root == 0:
            raise ValueError(
                f"zero root chosen for offset {u}: would break coprimality"
            )
        congs.append(Congruence(root, p))
    p4: tuple[int, ...] = ()
    if not reduced:
        used = set(sets.p1) | set(sets.p2) | set(p3)
        p4 = tuple(p for p in primes_upto(math.floor(sch.x)) if p not in used)
        congs += [Congruence(1, p) for p in p4]
    m0, modulus = crt_solve(congs)
    if math.gcd(m0, modulus) != 1:
        raise RuntimeError("m0 is not coprime to the modulus; construction bug")
    return replace(sets, p3=p3, p4=p4), modulus, m0


def _residue_screen(m0: int, modulus: int, limit: int = _SCREEN_PRIME_LIMIT):
    """Per-prime (p, m0 mod p, modulus mod p) triples for cheap
    divisibility rejection of progression members."""
    return [
        (p, m0 % p, modulus % p)
        for p in primes_upto(limit)
        if modulus % p != 0
    ]


def _screen_hit(screen, j: int) -> int:
    """First screen prime dividing m0 + j*modulus, or 0."""
    for p, r0, rstep in screen:
        if (r0 + j * rstep) % p == 0:
            return p
    return 0


def find_prime_in_ap(
    m0: int, modulus: int, max_steps: int = DEFAULT_PRIME_STEPS, seed: int = 0
) -> int:
    """Smallest prime m0 + j*modulus with 1 <= j <= max_steps."""
    if math.gcd(m0, modulus) != 1:
        raise ValueError("m0 and modulus are not coprime: progression has no primes")
    screen = _residue_screen(m0, modulus)
    tests = 0
    for j in range(1, max_steps + 1):
        hit = _screen_hit(screen, j)
        if hit:
            if m0 + j * modulus == hit:
                return hit  # the member *is* that small prime
            continue
        candidate = m0 + j * modulus
        tests += 1
        if is_prime(candidate, seed):
            return candidate
    raise SearchExhausted(
        f"no prime in {max_steps} progression steps "
        f"({tests} probable-prime tests performed)",
        steps=max_steps,
        tests=tests,
    )


def verify_power_window(
    m: int, sets: KSetSystem, matching: KMatching, sch: Schedule, seed: int = 0
) -> tuple[dict[int, FactorWitness], list[tuple[int, str]], int]:
    """Witness or classify every window element m^k + (u - 1).

    u = 1 is skipped (the element is m^k, the constructed prime power).
    Offsets with no witness path get an explicit primality status; the
    number found prime is reported, never asserted to be zero.
    """
    k, y = sets.k, sch.y
    value_base = m**k
    u1_set = set(sets.u1)
    u3_set = set(sets.u3)
    shift = (1 << k) - 1
    cover: dict[int, FactorWitness] = {}
    pending: list[int] = []
    for u in range(-y, y + 1):
        if u == 1:
            continue
        value = value_base + u - 1
        p = 0
        if u in u1_set:
            p = next(q for q in sets.p1 if u % q == 0)
        elif u in matching.matched:
            p = matching.matched[u][0]
        elif u in u3_set:
            p = next((q for q in sets.p2 if (u + shift) % q == 0), 0)
        if p:
            if value % p != 0 or p >= value:
                raise RuntimeError(
                    f"offset {u} has an invalid witness p={p}; construction bug"
                )
            cover[u] = FactorWitness.checked(value, p)
        else:
            pending.append(u)
    verdicts = pmap(lambda u: is_prime(value_base + u - 1, seed), pending)
    exceptions = [
        (u, "prime" if verdict else "composite")
        for u, verdict in zip(pending, verdicts)
    ]
    prime_count = sum(1 for _, s in exceptions if s == "prime")
    return cover, exceptions, prime_count


@dataclass(frozen=True)
class MatrixScanReport:
    rows: int
    prime_rows: int  # rows whose progression member is prime
    rows_with_window_prime: int  # of those, rows with a prime exception
    avoiding_rows: tuple[int, ...]

    @property
    def ratio(self) -> float:
        return self.rows_with_window_prime / self.prime_rows if self.prime_rows else 0.0


def matrix_scan(
    m0: int,
    modulus: int,
    k: int,
    rows: int,
    y: int,
    exceptional=(),
    seed: int = 0,
) -> MatrixScanReport:
    """Scan rows r = 1..rows of the progression.

    A row counts when m0 + r*modulus is prime; it is "avoiding" when
    none of its exceptional window elements (the offsets the congruence
    system left open) is prime -- every other element inherits its
    witness divisor from the congruences, row by row.
    """
    if rows > 10**5:
        raise ValueError("row count exceeds the desk bound 10**5")
    exceptional = tuple(u for u in exceptional if u != 1 and -y <= u <= y)
    screen = _residue_screen(m0, modulus)
    prime_rows = 0
    with_window_prime = 0
    avoiding: list[int] = []
    for r in range(1, rows + 1):
        g = m0 + r * modulus
        hit = _screen_hit(screen, r)
        if hit and g != hit:
            continue
        if not is_prime(g, seed):
            continue
        prime_rows += 1
        base = g**k
        if any(is_prime(base + u - 1, seed) for u in exceptional):
            with_window_prime += 1
        else:
            avoiding.append(r)
    return MatrixScanReport(
        rows=rows,
        prime_rows=prime_rows,
        rows_with_window_prime=with_window_prime,
        avoiding_rows=tuple(avoiding),
    )


@dataclass(frozen=True)
class KCertificate:
    """Complete verifiable output of one k-th power run."""

    schedule: Schedule
    sets: KSetSystem
    matching: KMatching
    modulus: int
    m0: int
    m: int
    reduced: bool
    cover: dict[int, FactorWitness]
    exceptions: list[tuple[int, str]]
    prime_count_in_window: int
    autoshrink_trace: tuple[int, ...]
    seed: int


def construct_certificate_k(
    sch: Schedule,
    reduced: bool = True,
    max_steps: int = DEFAULT_PRIME_STEPS,
    seed: int = 0,
) -> KCertificate:
    """Run the full k-th power pipeline, auto-shrinking y on capacity."""
    trace = [sch.y]
    while True:
        sets = build_sets_k(sch)
        decision = capacity_check(sch, len(sets.u7), len(sets.p3tilde))
        if decision.ok:
            break
        if decision.status == "shrink":
            sch = sch.shrunk(decision.new_y)
            trace.append(sch.y)
            continue
        raise CapacityError(
            f"capacity failed at y={sch.y}: |u7|={decision.needed} > "
            f"|matchable primes|={decision.available} and y cannot shrink below 3",
            needed=decision.needed,
            available=decision.available,
        )

    sets = replace(sets, u6=legendre_screen(sch, sets.p3tilde))
    matching = match_offsets(sets)
    sets, modulus, m0 = solve_m0_k(sch, sets, matching, reduced=reduced)
    m = find_prime_in_ap(m0, modulus, max_steps=max_steps, seed=seed)
    cover, exceptions, prime_count = verify_power_window(m, sets, matching, sch, seed)
    return KCertificate(
        schedule=sch,
        sets=sets,
        matching=matching,
        modulus=modulus,
        m0=m0,
        m=m,
        reduced=reduced,
        cover=cover,
        exceptions=exceptions,
        prime_count_in_window=prime_count,
        autoshrink_trace=tuple(trace),
        seed=seed,
    )
