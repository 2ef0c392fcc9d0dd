"""
Verification sweep over every rational link b(q, p) with q up to a bound.

Responsibilities:
- Run the selected consistency checks on one link and record the outcome
- Fan the links out over a worker pool and merge the records in (q, p) order
- Build and persist the sweep report

A failing check never stops the sweep: the exception text is stored on the
link's record and the check is flagged as failed.
"""

import hashlib
import math
import os
import sys
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from twobridge import config
from twobridge.blocks import canonical_block_form, to_all_even, to_all_even_by_tau
from twobridge.braid import braid_index, braid_index_dl
from twobridge.contfrac import ContFrac, ExactRational, evaluate, expand_even, expand_nonalternating
from twobridge.errors import InvariantViolation, UsageError
from twobridge.homfly import homfly, homfly_even, homfly_pipelines, mfw_bound, mirror_homfly, parity_ok
from twobridge.link import (
    block_signs_consistent,
    build_diagram,
    complement_signed_vector,
    schubert_equivalent,
    signed_vector,
)
from twobridge.models import LinkRecord, SweepParameters, SweepReport, SweepSummary
from twobridge.utils import atomic_write_text

CHECKS: Tuple[str, ...] = ("contfrac", "blocks", "signs", "braid", "homfly", "mfw", "mirror", "schubert")


def status(message: str, always: bool = False):
    if always or config.TWOBRIDGE_VERBOSE:
        print(message, file=sys.stderr)


def _require(condition: bool, message: str):
    if not condition:
        raise InvariantViolation(message)


def _preferred_partner(q: int, p: int) -> int:
    """p itself when pq is even, otherwise q - p (the mirror, which is preferred)."""
    return q - p if (p * q) % 2 else p


def homfly_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


# ==============================
# Per-link checks
# ==============================

def _check_contfrac(q: int, p: int, record: LinkRecord):
    r = ExactRational.of(p, q)
    first, second = expand_nonalternating(r)
    even = expand_even(r)
    for cf in (first, second, even):
        _require(evaluate(cf) == r, f"{cf} does not evaluate to {r}")
    _require(first.is_nonalternating and second.is_nonalternating, "nonalternating flag lost")
    _require(even.is_even_form, f"{even} is not in even form")
    _require((even.terms[-1] % 2 == 0) == ((p * q) % 2 == 0), f"last term of {even} has the wrong parity")
    _require(evaluate(first.negate()) == -r, f"negating {first} does not negate the value")


def _check_blocks(q: int, p: int, record: LinkRecord):
    r = ExactRational.of(p, q)
    cf, dec = canonical_block_form(r)
    _require(dec.has_exceptional == ((p * q) % 2 == 1), f"{dec}: exceptional block does not match pq parity")
    if dec.has_exceptional:
        return
    even = expand_even(r)
    _require(to_all_even(cf, dec) == even, f"block rewrite of {dec} differs from {even}")
    d = build_diagram(q, p)
    _require(to_all_even_by_tau(d.terms, d.crossing_signs) == even, f"term-by-term rewrite of {d} differs from {even}")


def _check_signs(q: int, p: int, record: LinkRecord):
    p_eff = _preferred_partner(q, p)
    cf, dec = canonical_block_form(ExactRational.of(p_eff, q))
    _require(block_signs_consistent(cf, dec), f"crossing signs of {dec} are not block-alternating")


def _check_braid(q: int, p: int, record: LinkRecord):
    report = braid_index(q, p)
    record.braid = dict(report.formulas)
    d = build_diagram(q, _preferred_partner(q, p))
    for convention in (-1, 1):
        sv = signed_vector(d, convention)
        _require(
            braid_index_dl(-sv) == braid_index_dl(sv),
            f"signed-vector formula of {sv} changes under negation",
        )
        _require(
            braid_index_dl(complement_signed_vector(sv)) == braid_index_dl(sv),
            f"signed-vector formula of {sv} changes under the complement",
        )


def _check_homfly(q: int, p: int, record: LinkRecord):
    poly, _ = homfly(q, p)
    homfly_pipelines(q, _preferred_partner(q, p))
    _require(parity_ok(poly, q), f"z-exponents of {poly} break the parity law")
    record.homfly_digest = homfly_digest(poly.to_text())


def _check_mfw(q: int, p: int, record: LinkRecord):
    poly, _ = homfly(q, p)
    bound = mfw_bound(poly)
    record.mfw_bound = bound
    value = braid_index(q, p).value
    _require(bound == value, f"a-span bound {bound} differs from braid index {value}")


def _check_mirror(q: int, p: int, record: LinkRecord):
    even = expand_even(ExactRational.of(_preferred_partner(q, p), q))
    negated = ContFrac((0,) + tuple(-c for c in even.tail))
    _require(
        homfly_even(negated) == mirror_homfly(homfly_even(even)),
        f"negating {even} is not the a -> -1/a substitution",
    )


def _check_schubert(q: int, p: int, record: LinkRecord):
    oriented = q % 2 == 0
    modulus = 2 * q if oriented else q
    partner = pow(p, -1, modulus)
    if not 0 < partner < q or partner == p:
        return
    _require(schubert_equivalent(q, p, q, partner, oriented), f"b({q},{partner}) is not a Schubert partner")
    _require(homfly(q, p)[0] == homfly(q, partner)[0], f"HOMFLY differs between b({q},{p}) and b({q},{partner})")
    _require(
        braid_index(q, p).value == braid_index(q, partner).value,
        f"braid index differs between b({q},{p}) and b({q},{partner})",
    )


_CHECK_FUNCTIONS: Dict[str, Callable[[int, int, LinkRecord], None]] = {
    "contfrac": _check_contfrac,
    "blocks": _check_blocks,
    "signs": _check_signs,
    "braid": _check_braid,
    "homfly": _check_homfly,
    "mfw": _check_mfw,
    "mirror": _check_mirror,
    "schubert": _check_schubert,
}


def check_link(q: int, p: int, checks: Sequence[str] = CHECKS) -> LinkRecord:
    record = LinkRecord(q=q, p=p)
    for name in checks:
        try:
            _CHECK_FUNCTIONS[name](q, p, record)
            record.checks[name] = True
        except Exception as e:
            record.checks[name] = False
            record.errors.append(f"{name}: {type(e).__name__}: {e}")
    return record


def _check_pair(args: Tuple[int, int, Tuple[str, ...]]) -> LinkRecord:
    q, p, checks = args
    return check_link(q, p, checks)


# ==============================
# Sweep
# ==============================

def link_pairs(max_q: int, min_q: int = 2) -> Iterable[Tuple[int, int]]:
    for q in range(min_q, max_q + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield q, p


def parse_checks(text: Optional[str]) -> List[str]:
    if text is None or not text.strip():
        return list(CHECKS)
    selected = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    return selected


def run_sweep(
    max_q: int,
    checks: Sequence[str] = CHECKS,
    jobs: int = 1,
    chunksize: int = config.TWOBRIDGE_CHUNKSIZE,
    min_q: int = 2,
) -> SweepReport:
    if max_q < 2:
        raise UsageError(f"max q must be at least 2, got {max_q}")
    unknown = [name for name in checks if name not in _CHECK_FUNCTIONS]
    if unknown:
        raise UsageError(f"unknown checks {', '.join(unknown)}")
    if jobs <= 0:
        jobs = os.cpu_count() or 1

    work = [(q, p, tuple(checks)) for q, p in link_pairs(max_q, min_q)]
    status(f"🚀 Checking {len(work)} links with q <= {max_q} on {jobs} worker(s): {', '.join(checks)}")

    if jobs == 1:
        records = [_check_pair(item) for item in work]
    else:
        with Pool(jobs) as pool:
            records = list(pool.imap(_check_pair, work, chunksize=max(1, chunksize)))

    records.sort(key=lambda r: (r.q, r.p))
    summary = SweepSummary.tally(records)
    if summary.failed:
        status(f"❌ {summary.failed} of {summary.links} links failed: {summary.failures_by_check}", always=True)
    else:
        status(f"✅ All {summary.links} links passed")

    return SweepReport(
        parameters=SweepParameters(min_q=min_q, max_q=max_q, checks=list(checks), jobs=jobs),
        records=records,
        summary=summary,
    )


def write_report(report: SweepReport, path) -> None:
    atomic_write_text(path, report.model_dump_json(indent=2) + "\n")
    status(f"📘 Report written to {path}")
