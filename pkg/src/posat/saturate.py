"""P-freeness and P-saturation verdicts, plus the chain construction."""

from dataclasses import dataclass

from .embed import completes_copy, find_induced_copy
from .errors import GroundTooLarge
from .families import Family, all_masks, mask_of

CONTAINS_COPY = "contains_copy"
NOT_SATURATED = "not_saturated"
SATURATED = "saturated"

DEFAULT_MAX_SCAN_GROUND = 22


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None  # Embedding, for contains_copy
    missing: int = None  # mask, for not_saturated


def is_p_free(fam, pattern):
    return find_induced_copy(fam, pattern) is None


def missing_masks(fam):
    """Non-members of ``fam`` in canonical set order."""
    members = set(fam.sets)
    return [m for m in all_masks(fam.n) if m not in members]


def saturation_verdict(fam, pattern, max_ground=DEFAULT_MAX_SCAN_GROUND, workers=1):
    """Decide whether ``fam`` is pattern-saturated.

    Scans every one of the 2^n - |fam| missing sets; the reported
    NotSaturated witness is the canonically first failure regardless of how
    the scan is partitioned across workers (partitions reduce by minimum).
    """
    if fam.n > max_ground:
        raise GroundTooLarge(
            f"2^{fam.n} saturation scan exceeds the budget (max ground {max_ground})"
        )
    copy = find_induced_copy(fam, pattern)
    if copy is not None:
        return Verdict(CONTAINS_COPY, witness=copy)
    missing = missing_masks(fam)
    if workers <= 1:
        for s in missing:
            if completes_copy(fam, s, pattern) is None:
                return Verdict(NOT_SATURATED, missing=s)
        return Verdict(SATURATED)
    first_failures = []
    for w in range(workers):
        for s in missing[w::workers]:
            if completes_copy(fam, s, pattern) is None:
                first_failures.append(s)
                break
    if first_failures:
        return Verdict(NOT_SATURATED, missing=min(first_failures, key=lambda m: (m.bit_count(), m)))
    return Verdict(SATURATED)


def chain_family(n):
    """The maximal chain {{}, {1}, {1,2}, ..., [n]} of size n + 1."""
    if n < 1:
        raise ValueError("ground size must be at least 1")
    return Family(n, (mask_of(range(1, k + 1), n) for k in range(n + 1)))
