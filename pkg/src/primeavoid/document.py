"""Certificate documents: lossless JSON serialization and re-verification.

All big integers are carried as decimal strings so no consumer can
truncate them.  ``verify_document`` re-checks a document from its own
numbers alone (congruences, progression membership, witness divisions,
primality claims); it never re-runs the construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DocumentError
from .kpower import KCertificate
from .numtheory import is_prime, natural_log
from .squarefree import AvoidanceCertificate, avoidance_constant, classify_squarefree

FORMAT_VERSION = "1.0"
MAX_LISTED_ELEMENTS = 10**4


def _set_entry(values) -> dict:
    values = list(values)
    entry = {"card": len(values)}
    if len(values) <= MAX_LISTED_ELEMENTS:
        entry["elements"] = values
    return entry


def _schedule_entry(sch) -> dict:
    return {
        "x": sch.x,
        "k": sch.k,
        "c1": sch.c1,
        "c2": sch.c2,
        "z": sch.z,
        "y": sch.y,
        "profile": sch.profile,
        "delta": sch.delta,
        "c2_autoshrink": sch.c2_autoshrink,
        "degenerate": sch.degenerate,
    }


def certificate_to_document(cert: AvoidanceCertificate) -> dict:
    """Serialize a squarefree certificate."""
    congs = [["0", str(p)] for p in cert.sets.p1]
    congs += [["1", str(p)] for p in cert.sets.p2]
    congs += [[str((-u) % p), str(p)] for u, p in sorted(cert.phi.items())]
    return {
        "format_version": FORMAT_VERSION,
        "mode": "squarefree",
        "seed": cert.seed,
        "schedule": _schedule_entry(cert.schedule),
        "sets": {
            "P1": _set_entry(cert.sets.p1),
            "P2": _set_entry(cert.sets.p2),
            "P3": _set_entry(cert.sets.p3),
            "U1": _set_entry(cert.sets.u1),
            "U2": _set_entry(cert.sets.u2),
            "U3": _set_entry(cert.sets.u3),
            "U4": _set_entry(cert.sets.u4),
            "U5": _set_entry(cert.sets.u5),
            "U6": _set_entry(cert.sets.u6),
        },
        "congruences": congs,
        "modulus": str(cert.n),
        "m0": str(cert.m0),
        "m": str(cert.m),
        "cover": [
            {"u": u, "witness_prime": str(w.p)}
            for u, w in sorted(cert.cover.items())
        ],
        "exceptions": [],
        "metrics": {
            "log_m": natural_log(cert.m),
            "log_modulus": natural_log(cert.n),
            "exponent_report": cert.exponent_report,
            "avoidance_constant": cert.avoidance_constant,
            "prime_count_in_window": 0,
            "autoshrink_trace": list(cert.autoshrink_trace),
            "squarefree_status": cert.squarefree_status,
            "squarefree_trial_bound": str(cert.squarefree_bound),
        },
    }


def kcertificate_to_document(cert: KCertificate) -> dict:
    """Serialize a k-th power certificate."""
    congs = [["1", str(p)] for p in cert.sets.p1]
    congs += [["2", str(p)] for p in cert.sets.p2]
    for u in sorted(cert.matching.matched):
        p, root = cert.matching.matched[u]
        congs.append([str(root), str(p)])
    if not cert.reduced:
        congs += [["1", str(p)] for p in cert.sets.p4]
    try:
        constant = avoidance_constant(cert.m**cert.sets.k, cert.schedule.y)
    except ValueError:
        constant = None
    return {
        "format_version": FORMAT_VERSION,
        "mode": "kpower",
        "seed": cert.seed,
        "reduced_modulus": cert.reduced,
        "schedule": _schedule_entry(cert.schedule),
        "sets": {
            "P1": _set_entry(cert.sets.p1),
            "P2": _set_entry(cert.sets.p2),
            "P3tilde": _set_entry(cert.sets.p3tilde),
            "P3": _set_entry(cert.sets.p3),
            "P4": _set_entry(cert.sets.p4),
            "U1": _set_entry(cert.sets.u1),
            "U2": _set_entry(cert.sets.u2),
            "U3": _set_entry(cert.sets.u3),
            "U4": _set_entry(cert.sets.u4),
            "U5": _set_entry(cert.sets.u5),
            "U6": _set_entry(cert.sets.u6),
            "U7": _set_entry(cert.sets.u7),
        },
        "congruences": congs,
        "modulus": str(cert.modulus),
        "m0": str(cert.m0),
        "m": str(cert.m),
        "cover": [
            {"u": u, "witness_prime": str(w.p)}
            for u, w in sorted(cert.cover.items())
        ],
        "exceptions": [{"u": u, "status": s} for u, s in cert.exceptions],
        "metrics": {
            "log_m": natural_log(cert.m),
            "log_modulus": natural_log(cert.modulus),
            "exponent_report": natural_log(cert.m) / natural_log(cert.modulus),
            "avoidance_constant": constant,
            "prime_count_in_window": cert.prime_count_in_window,
            "autoshrink_trace": list(cert.autoshrink_trace),
            "unmatched_offsets": list(cert.matching.unmatched),
            "u4_card": len(cert.sets.u4),
            "u4_within_u2": cert.sets.u4_within_u2,
            "p1_upper_empty": cert.sets.p1_upper_empty,
        },
    }


def document_to_json(doc: dict) -> str:
    """Canonical rendering; identical documents give identical bytes."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


_REQUIRED_KEYS = (
    "format_version",
    "mode",
    "seed",
    "schedule",
    "sets",
    "congruences",
    "modulus",
    "m0",
    "m",
    "cover",
    "exceptions",
    "metrics",
)


def parse_document(text: str) -> dict:
    """Parse and structurally validate a certificate document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object")
    for key in _REQUIRED_KEYS:
        if key not in doc:
            raise DocumentError(f"missing required key {key!r}")
    if doc["mode"] not in ("squarefree", "kpower"):
        raise DocumentError(f"unknown mode {doc['mode']!r}")
    try:
        int(doc["modulus"])
        int(doc["m0"])
        int(doc["m"])
        for r, q in doc["congruences"]:
            int(r), int(q)
        for entry in doc["cover"]:
            int(entry["u"]), int(entry["witness_prime"])
        int(doc["schedule"]["y"])
    except (ValueError, TypeError, KeyError) as exc:
        raise DocumentError(f"malformed numeric field: {exc}") from exc
    return doc


@dataclass
class VerifyReport:
    sections: list[tuple[str, bool, str]]
    notes: list[str]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.sections)

    def render(self) -> str:
        lines = []
        for name, passed, detail in self.sections:
            mark = "PASS" if passed else "FAIL"
            lines.append(f"  [{mark}] {name:<14} {detail}")
        lines.extend(f"  [note] {n}" for n in self.notes)
        return "\n".join(lines)


def verify_document(doc: dict) -> VerifyReport:
    """Re-validate every claim a certificate document makes."""
    sections: list[tuple[str, bool, str]] = []
    notes: list[str] = []
    mode = doc["mode"]
    seed = int(doc["seed"])
    y = int(doc["schedule"]["y"])
    k = int(doc["schedule"]["k"])
    modulus = int(doc["modulus"])
    m0 = int(doc["m0"])
    m = int(doc["m"])
    congs = [(int(r), int(q)) for r, q in doc["congruences"]]

    # congruence system: distinct prime moduli, m0 in range, all satisfied
    moduli = [q for _, q in congs]
    problems = []
    if len(set(moduli)) != len(moduli):
        problems.append("duplicate moduli")
    if math.prod(moduli) != modulus:
        problems.append("modulus is not the product of the congruence moduli")
    if not 1 <= m0 <= modulus:
        problems.append(f"m0={m0} outside [1, modulus]")
    for r, q in congs:
        if not is_prime(q):
            problems.append(f"modulus {q} is not prime")
            break
        if m0 % q != r % q:
            problems.append(f"m0 fails residue {r} mod {q}")
            break
    if mode == "kpower" and math.gcd(m0, modulus) != 1:
        problems.append("m0 shares a factor with the modulus")
    sections.append(
        ("congruences", not problems, problems[0] if problems else f"{len(congs)} checked")
    )

    # progression membership
    member = (m - m0) % modulus == 0
    detail = "m == m0 (mod modulus)" if member else "m is not in the progression"
    if mode == "squarefree" and m < 2 * y:
        member = False
        detail = f"m={m} < 2y={2 * y}"
    sections.append(("progression", member, detail))

    # window cover: completeness, then every witness division
    cover = {int(e["u"]): int(e["witness_prime"]) for e in doc["cover"]}
    exc = {int(e["u"]): e["status"] for e in doc["exceptions"]}
    expected = set(range(-y, y + 1))
    if mode == "kpower":
        expected.discard(1)
    seen = set(cover) | set(exc)
    complete = seen == expected and not (set(cover) & set(exc))
    sections.append(
        (
            "completeness",
            complete,
            f"{len(cover)} witnessed + {len(exc)} exceptions"
            if complete
            else f"offsets covered do not tile the window (missing "
            f"{sorted(expected - seen)[:5]}, extra {sorted(seen - expected)[:5]})",
        )
    )

    value_base = m if mode == "squarefree" else m**k
    bad_offset = None
    for u, p in sorted(cover.items()):
        value = value_base + u if mode == "squarefree" else value_base + u - 1
        if p < 2 or not is_prime(p) or value % p != 0 or p >= value:
            bad_offset = (u, p)
            break
    sections.append(
        (
            "witnesses",
            bad_offset is None,
            f"{len(cover)} divisions verified"
            if bad_offset is None
            else f"witness {bad_offset[1]} fails at offset {bad_offset[0]}",
        )
    )

    if mode == "kpower":
        sections.append(
            (
                "prime_base",
                is_prime(m, seed),
                "m passes the primality test with the recorded seed",
            )
        )
        mismatch = None
        for u, status in sorted(exc.items()):
            actual = "prime" if is_prime(value_base + u - 1, seed) else "composite"
            if actual != status:
                mismatch = (u, status, actual)
                break
        sections.append(
            (
                "exceptions",
                mismatch is None,
                f"{len(exc)} statuses re-checked"
                if mismatch is None
                else f"offset {mismatch[0]} recorded {mismatch[1]} but is {mismatch[2]}",
            )
        )
    else:
        recorded = doc["metrics"].get("squarefree_status", "proven")
        actual = classify_squarefree(m)
        ok = actual != "not_squarefree"
        if ok and actual != recorded:
            notes.append(f"squarefree tier changed: recorded {recorded}, now {actual}")
        sections.append(
            (
                "squarefree",
                ok,
                f"status {actual}" if ok else "m has a square factor",
            )
        )

    return VerifyReport(sections=sections, notes=notes)
