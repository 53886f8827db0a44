"""Set families over a ground set {1, ..., n}, encoded as bitmasks.

A set is a plain int: bit i-1 set means element i is a member. A Family
keeps its sets deduplicated and ordered by (cardinality, numeric value);
that ordering is the canonical set order used everywhere downstream (file
format, scan order, witness tie-breaking).
"""

from functools import lru_cache
from itertools import permutations

from .errors import ParseError

MAX_GROUND = 63

# Orbit canonicalization is exact up to this ground size (branch and bound
# over relabelings); beyond it a deterministic refinement heuristic is used,
# which may fail to merge some orbits.
EXACT_CANONICAL_LIMIT = 12

# Below this size it is cheaper to take the minimum over all n! relabelings
# with precomputed mask tables than to branch and bound.
_BRUTE_LIMIT = 6


def set_key(mask):
    """Canonical comparison key for a single set: cardinality, then value."""
    return (mask.bit_count(), mask)


def mask_of(elems, n):
    """Bitmask for an iterable of 1-based elements of [n]."""
    m = 0
    for e in elems:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set [1..{n}]")
        m |= 1 << (e - 1)
    return m


def elements(mask):
    """1-based elements of a mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def render_set(mask):
    if mask == 0:
        return "-"
    return " ".join(str(e) for e in elements(mask))


def is_subset(a, b):
    return a & b == a


def is_proper_subset(a, b):
    return a != b and a & b == a


def comparable(a, b):
    return a & b == a or a & b == b


class Family:
    """Duplicate-free collection of subsets of [n], in canonical order."""

    __slots__ = ("n", "sets")

    def __init__(self, n, masks=()):
        if not 1 <= n <= MAX_GROUND:
            raise ValueError(f"ground size must be in [1, {MAX_GROUND}], got {n}")
        full = (1 << n) - 1
        seen = set()
        for m in masks:
            if m < 0 or m & ~full:
                raise ValueError(f"set {m:#x} not a subset of [1..{n}]")
            seen.add(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sets", tuple(sorted(seen, key=set_key)))

    @classmethod
    def of(cls, n, *element_lists):
        """Family from 1-based element lists, e.g. Family.of(3, [], [1], [1, 3])."""
        return cls(n, (mask_of(es, n) for es in element_lists))

    @classmethod
    def power_set(cls, n):
        return cls(n, range(1 << n))

    def __setattr__(self, name, value):
        raise AttributeError("Family is immutable")

    def __contains__(self, mask):
        return mask in self.sets  # tuples are tiny here; no index needed

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __eq__(self, other):
        return (
            isinstance(other, Family)
            and self.n == other.n
            and self.sets == other.sets
        )

    def __hash__(self):
        return hash((self.n, self.sets))

    def __repr__(self):
        body = ", ".join("{" + ",".join(map(str, elements(m))) + "}" for m in self.sets)
        return f"Family(n={self.n}, [{body}])"

    def plus(self, mask):
        return Family(self.n, self.sets + (mask,))

    def minus(self, mask):
        return Family(self.n, (m for m in self.sets if m != mask))

    def full_mask(self):
        return (1 << self.n) - 1


def maximal_sets(fam):
    """Members of ``fam`` not strictly contained in another member."""
    out = [
        m
        for m in fam.sets
        if not any(is_proper_subset(m, other) for other in fam.sets)
    ]
    return Family(fam.n, out)


def minimal_sets(fam):
    """Members of ``fam`` not strictly containing another member."""
    out = [
        m
        for m in fam.sets
        if not any(is_proper_subset(other, m) for other in fam.sets)
    ]
    return Family(fam.n, out)


def is_antichain(fam):
    sets = fam.sets
    for i, a in enumerate(sets):
        for b in sets[i + 1 :]:
            if comparable(a, b):
                return False
    return True


@lru_cache(maxsize=32)
def all_masks(n):
    """Every subset of [n] in canonical (cardinality, value) order."""
    return tuple(sorted(range(1 << n), key=set_key))


def apply_perm(mask, perm):
    """Image of a mask under a 0-based bit relabeling (bit i -> perm[i])."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


def permute_family(fam, perm):
    return Family(fam.n, (apply_perm(m, perm) for m in fam.sets))


def _family_key(masks):
    return tuple((m.bit_count(), m) for m in sorted(masks, key=set_key))


@lru_cache(maxsize=8)
def _perm_tables(n):
    """For each permutation of [n], the image table for all 2^n masks."""
    tables = []
    for perm in permutations(range(n)):
        bit_img = [1 << perm[i] for i in range(n)]
        table = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            table[m] = table[m ^ low] | bit_img[low.bit_length() - 1]
        tables.append(tuple(table))
    return tuple(tables)


def _canonical_brute(fam):
    table_set = _perm_tables(fam.n)
    best = None
    for table in table_set:
        key = _family_key([table[m] for m in fam.sets])
        if best is None or key < best:
            best = key
    return Family(fam.n, (v for _, v in best))


def _canonical_bnb(fam, own_key=None, stop_if_below=False):
    """Minimum orbit representative by assigning target bits high to low.

    After d assignments each set's value is known in its top d bits, and the
    sorted tuple of those partial values is a prefix (in the high-bits sense)
    of the final sorted key, so subtrees whose partial key already exceeds
    the incumbent's truncation cannot improve on it.

    With ``stop_if_below`` the search aborts as soon as any full key beats
    ``own_key`` (used to test canonicity without finding the minimum).
    """
    n = fam.n
    masks = fam.sets
    pcs = [m.bit_count() for m in masks]
    best = own_key if own_key is not None else _family_key(masks)
    found_below = False

    def rec(depth, used, his):
        nonlocal best, found_below
        if found_below and stop_if_below:
            return
        if depth == n:
            key = tuple(sorted(zip(pcs, his)))
            if key < best:
                best = key
                found_below = True
            return
        shift = n - depth - 1
        trunc = tuple((pc, v >> shift) for pc, v in best)
        children = []
        for s in range(n):
            if used >> s & 1:
                continue
            nxt = [h << 1 | (m >> s & 1) for h, m in zip(his, masks)]
            pkey = tuple(sorted(zip(pcs, nxt)))
            if pkey <= trunc:
                children.append((pkey, s, nxt))
        children.sort()
        for pkey, s, nxt in children:
            # re-test against the possibly improved incumbent
            if pkey > tuple((pc, v >> shift) for pc, v in best):
                continue
            rec(depth + 1, used | 1 << s, nxt)

    rec(0, 0, [0] * len(masks))
    if stop_if_below:
        return not found_below
    return Family(n, (v for _, v in best))


def _refinement_order(fam):
    """Deterministic element order from iterated membership profiles."""
    n = fam.n
    masks = fam.sets
    colors = {
        e: tuple(sorted(m.bit_count() for m in masks if m >> e & 1))
        for e in range(n)
    }
    for _ in range(2):
        nxt = {}
        for e in range(n):
            sig = []
            for m in masks:
                if m >> e & 1:
                    co = tuple(sorted(colors[x] for x in range(n) if m >> x & 1))
                    sig.append((m.bit_count(), co))
            nxt[e] = (colors[e], tuple(sorted(sig)))
        colors = nxt
    return sorted(range(n), key=lambda e: (colors[e], e))


def _canonical_heuristic(fam):
    order = _refinement_order(fam)
    perm = [0] * fam.n
    for target, source in enumerate(order):
        perm[source] = target
    return permute_family(fam, perm)


def canonicalization_is_exact(n, exact_limit=EXACT_CANONICAL_LIMIT):
    return n <= exact_limit


def canonical_form(fam, exact_limit=EXACT_CANONICAL_LIMIT):
    """Distinguished representative of ``fam``'s orbit under relabelings of [n].

    Exact (the minimum of the orbit in canonical set order) for
    n <= exact_limit; above that, a deterministic refinement heuristic that
    is idempotent but not guaranteed orbit-invariant.
    """
    if not fam.sets or fam.n == 1:
        return fam
    if fam.n <= _BRUTE_LIMIT:
        return _canonical_brute(fam)
    if fam.n <= exact_limit:
        return _canonical_bnb(fam)
    return _canonical_heuristic(fam)


def is_canonical(fam, exact_limit=EXACT_CANONICAL_LIMIT):
    """True iff ``fam`` equals its own canonical form (cheaper than computing it)."""
    if not fam.sets or fam.n == 1:
        return True
    own = _family_key(fam.sets)
    if fam.n <= _BRUTE_LIMIT:
        for table in _perm_tables(fam.n):
            if _family_key([table[m] for m in fam.sets]) < own:
                return False
        return True
    if fam.n <= exact_limit:
        return _canonical_bnb(fam, own_key=own, stop_if_below=True)
    return canonical_form(fam, exact_limit) == fam


def parse_family(text):
    """Parse the family text format.

    First non-comment line is ``n=<N>``; each further line is one set as
    space-separated 1-based elements ("-" for the empty set). Lines starting
    with ``#`` are comments; blank lines are ignored.
    """
    n = None
    masks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError("expected header 'n=<N>'", lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"bad ground size {line[2:]!r}", lineno) from None
            if not 1 <= n <= MAX_GROUND:
                raise ParseError(f"ground size {n} out of range", lineno)
            continue
        if line == "-":
            masks.append(0)
            continue
        try:
            elems = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"bad set line {line!r}", lineno) from None
        try:
            masks.append(mask_of(elems, n))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if n is None:
        raise ParseError("empty input: missing 'n=<N>' header")
    return Family(n, masks)


def render_family(fam):
    lines = [f"n={fam.n}"]
    lines.extend(render_set(m) for m in fam.sets)
    return "\n".join(lines) + "\n"
