"""Exact saturation numbers by isomorph-free iterative deepening.

Families are built by appending sets in canonical order, and a partial
family is extended only if it equals its own canonical form. Prefixes (in
canonical set order) of an orbit-minimal family are themselves
orbit-minimal, so this prune is exhaustive: every canonical pattern-free
family of the target size is visited exactly once. Pattern-freeness is
hereditary under removal, so prefixes that already host the pattern are
abandoned. Saturation is only ever tested at full size; the paper-style
lower-bound lemmas are deliberately not used as pruning.
"""

import json
import os
import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .families import (
    Family,
    all_masks,
    canonical_form,
    elements,
    is_canonical,
    mask_of,
)
from .embed import completes_copy
from .patterns import pattern_fingerprint
from .saturate import SATURATED, chain_family, saturation_verdict


@dataclass
class Budget:
    max_nodes: int = 100_000_000
    max_seconds: float = 600.0


class _Ticker:
    """Counts explored nodes and enforces the budget.

    The node budget is deterministic; the time budget is checked every 1024
    nodes and is inherently wall-clock dependent.
    """

    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0
        self._t0 = time.monotonic()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded("node budget exhausted", partial=self.nodes)
        if self.nodes % 1024 == 0 and self.elapsed() > self.budget.max_seconds:
            raise BudgetExceeded("time budget exhausted", partial=self.nodes)

    def elapsed(self):
        return time.monotonic() - self._t0


@dataclass
class SearchCertificate:
    n: int
    pattern_label: str
    pattern_fingerprint: str
    value: int
    witness: Family
    exhausted: bool  # True iff every size below value was refuted
    nodes: int
    elapsed: float = field(compare=False, default=0.0)
    refuted_below: int = 0  # every size strictly below this was refuted


def _scan_level(n, pattern, k, ticker, workers=1):
    """All canonical pattern-free saturated families of size exactly k.

    The whole level is always scanned (no early exit), so the set of visited
    nodes, the node count, and the result are independent of the worker
    partitioning, which only permutes the processing order of root subtrees.
    """
    if k == 0:
        ticker.tick()
        empty = Family(n, [])
        if saturation_verdict(empty, pattern).status == SATURATED:
            return [empty]
        return []
    masks = all_masks(n)
    found = []

    def extend(fam, last, depth):
        for j in range(last + 1, len(masks)):
            ticker.tick()
            s = masks[j]
            if completes_copy(fam, s, pattern) is not None:
                continue  # adding s would host the pattern
            child = fam.plus(s)
            if not is_canonical(child):
                continue
            if depth + 1 == k:
                if saturation_verdict(child, pattern).status == SATURATED:
                    found.append(child)
            else:
                extend(child, j, depth + 1)

    empty = Family(n, [])
    root_order = [r for w in range(workers) for r in range(w, len(masks), workers)]
    for r in root_order:
        ticker.tick()
        s = masks[r]
        if completes_copy(empty, s, pattern) is not None:
            continue
        fam = Family(n, [s])
        if not is_canonical(fam):
            continue
        if k == 1:
            if saturation_verdict(fam, pattern).status == SATURATED:
                found.append(fam)
        else:
            extend(fam, r, 1)
    found.sort(key=lambda f: f.sets)
    return found


class SearchCache:
    """Per-(n, pattern) level records on disk, so interrupted runs resume.

    Each completed size k stores its deterministic node count and the
    canonical saturated families found, which lets warm runs report the same
    totals a cold run would. Stored families are re-verified before reuse.
    """

    def __init__(self, cache_dir, n, pattern):
        self.n = n
        self.pattern = pattern
        fp = pattern_fingerprint(pattern)
        os.makedirs(cache_dir, exist_ok=True)
        self.path = os.path.join(cache_dir, f"satnum-n{n}-p{fp}.json")
        self.data = {"n": n, "pattern": fp, "levels": {}}
        try:
            with open(self.path, encoding="utf-8") as fh:
                loaded = json.load(fh)
            if loaded.get("n") == n and loaded.get("pattern") == fp:
                self.data = loaded
        except (OSError, ValueError):
            pass

    def level(self, k):
        rec = self.data.get("levels", {}).get(str(k))
        if rec is None:
            return None
        try:
            nodes = int(rec["nodes"])
            fams = [
                Family(self.n, (mask_of(es, self.n) for es in sets))
                for sets in rec["saturated"]
            ]
        except (KeyError, TypeError, ValueError):
            return None
        for fam in fams:
            if len(fam) != k or canonical_form(fam) != fam:
                return None
            if saturation_verdict(fam, self.pattern).status != SATURATED:
                return None
        return nodes, fams

    def store(self, k, nodes, fams):
        self.data.setdefault("levels", {})[str(k)] = {
            "nodes": nodes,
            "saturated": [[list(elements(m)) for m in fam.sets] for fam in fams],
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.data, fh, sort_keys=True)
        os.replace(tmp, self.path)


def _search_min(n, pattern, budget, workers, cache_dir):
    """Shared deepening loop; returns (certificate fields, all minimum families)."""
    if n < 1:
        raise ValueError("ground size must be at least 1")
    budget = budget if budget is not None else Budget()
    ticker = _Ticker(budget)
    cache = SearchCache(cache_dir, n, pattern) if cache_dir else None

    ub_value = None
    ub_witness = None
    chain = chain_family(n)
    if saturation_verdict(chain, pattern).status == SATURATED:
        ub_value = n + 1
        ub_witness = canonical_form(chain)

    cached_nodes = 0
    k = 0
    while k <= (1 << n):
        rec = cache.level(k) if cache else None
        if rec is not None:
            level_nodes, sats = rec
            cached_nodes += level_nodes
        else:
            before = ticker.nodes
            try:
                sats = _scan_level(n, pattern, k, ticker, workers)
            except BudgetExceeded:
                cert = SearchCertificate(
                    n=n,
                    pattern_label=pattern.label or "pattern",
                    pattern_fingerprint=pattern_fingerprint(pattern),
                    value=ub_value,
                    witness=ub_witness,
                    exhausted=False,
                    nodes=cached_nodes + ticker.nodes,
                    elapsed=ticker.elapsed(),
                    refuted_below=k,
                )
                if ub_value is None:
                    raise BudgetExceeded(
                        f"budget exhausted at size {k} with no saturated family known",
                        partial=cert,
                    ) from None
                return cert, None
            if cache:
                cache.store(k, ticker.nodes - before, sats)
        if sats:
            cert = SearchCertificate(
                n=n,
                pattern_label=pattern.label or "pattern",
                pattern_fingerprint=pattern_fingerprint(pattern),
                value=k,
                witness=sats[0],
                exhausted=True,
                nodes=cached_nodes + ticker.nodes,
                elapsed=ticker.elapsed(),
                refuted_below=k,
            )
            return cert, sats
        k += 1
    raise RuntimeError("deepening exhausted the power set without a hit")


def sat_number(n, pattern, budget=None, workers=1, cache_dir=None):
    """Smallest size of a pattern-saturated family in P([n]), with witness.

    Returns a certificate with exhausted=True when every smaller size was
    refuted. If the budget runs out, returns exhausted=False with the best
    known upper bound (the maximal chain, when it is saturated for this
    pattern), or raises BudgetExceeded when no upper bound is known.
    """
    cert, _ = _search_min(n, pattern, budget, workers, cache_dir)
    return cert


def enumerate_min_saturated(n, pattern, budget=None, workers=1, cache_dir=None):
    """All minimum saturated families, one canonical representative per orbit."""
    cert, sats = _search_min(n, pattern, budget, workers, cache_dir)
    if not cert.exhausted:
        raise BudgetExceeded("budget exhausted before the minimum was certified", partial=cert)
    return sats
