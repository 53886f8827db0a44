"""Abstract finite patterns: strict partial orders on {0, ..., k-1}.

Patterns are the shapes searched for inside set families; they are kept
separate from families because a pattern is abstract while a family is a
concrete collection of subsets of [n]. Indices are 0-based internally and
1-based in all user-facing text.
"""

import hashlib
from dataclasses import dataclass, field

from .errors import CycleError, ParseError


@dataclass(frozen=True)
class PatternPoset:
    """A strict partial order given by its full (transitively closed) relation."""

    size: int
    strict_lt: frozenset
    label: str = field(default="", compare=False)

    def lt(self, a, b):
        return (a, b) in self.strict_lt

    def above(self, a):
        return tuple(b for b in range(self.size) if (a, b) in self.strict_lt)

    def below(self, a):
        return tuple(b for b in range(self.size) if (b, a) in self.strict_lt)

    def minimal_elements(self):
        return tuple(a for a in range(self.size) if not self.below(a))

    def maximal_elements(self):
        return tuple(a for a in range(self.size) if not self.above(a))

    def degree_pair(self, a):
        return (len(self.below(a)), len(self.above(a)))

    def __repr__(self):
        name = self.label or f"poset{self.size}"
        rels = sorted(self.strict_lt)
        return f"PatternPoset({name}, {rels})"


def make_poset(size, strict_pairs, label=""):
    """Build a pattern from generating pairs; the closure is taken eagerly.

    Raises CycleError if the closure would relate an element to itself, and
    IndexError for out-of-range indices.
    """
    if size < 1:
        raise ValueError(f"pattern must have at least one element, got {size}")
    up = [0] * size
    for a, b in strict_pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise IndexError(f"pair ({a}, {b}) out of range for size {size}")
        up[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for a in range(size):
            reach = up[a]
            m = reach
            while m:
                low = m & -m
                reach |= up[low.bit_length() - 1]
                m ^= low
            if reach != up[a]:
                up[a] = reach
                changed = True
    pairs = set()
    for a in range(size):
        if up[a] >> a & 1:
            raise CycleError(f"element {a + 1} is below itself after closure")
        for b in range(size):
            if up[a] >> b & 1:
                pairs.add((a, b))
    return PatternPoset(size, frozenset(pairs), label)


def chain(k):
    return make_poset(k, [(i, i + 1) for i in range(k - 1)], f"chain:{k}")


def antichain(k):
    return make_poset(k, [], f"antichain:{k}")


def builtin(name, k=None):
    """Named patterns: diamond, c2, v, lambda, butterfly, chain(k), antichain(k)."""
    if name == "diamond":
        return make_poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)], "diamond")
    if name == "c2":
        return make_poset(2, [(0, 1)], "c2")
    if name == "v":
        return make_poset(3, [(0, 1), (0, 2)], "v")
    if name == "lambda":
        return make_poset(3, [(0, 2), (1, 2)], "lambda")
    if name == "butterfly":
        return make_poset(4, [(0, 2), (0, 3), (1, 2), (1, 3)], "butterfly")
    if name == "chain":
        if k is None or k < 1:
            raise ValueError("chain needs a length k >= 1")
        return chain(k)
    if name == "antichain":
        if k is None or k < 1:
            raise ValueError("antichain needs a size k >= 1")
        return antichain(k)
    raise ValueError(f"unknown builtin pattern {name!r}")


BUILTIN_NAMES = ("diamond", "c2", "v", "lambda", "butterfly")


def linear_sum(top, bottom):
    """Disjoint union with every element of ``bottom`` below every element of ``top``."""
    nb, nt = bottom.size, top.size
    pairs = list(bottom.strict_lt)
    pairs += [(nb + a, nb + b) for a, b in top.strict_lt]
    pairs += [(i, nb + j) for i in range(nb) for j in range(nt)]
    label = ""
    if top.label and bottom.label:
        label = f"{top.label}*{bottom.label}"
    return make_poset(nb + nt, pairs, label)


def complete_multipartite(layer_sizes):
    """Layered pattern: a < b iff a's layer is strictly below b's layer."""
    if not layer_sizes or any(s < 1 for s in layer_sizes):
        raise ValueError("layer sizes must be positive")
    offsets = []
    total = 0
    for s in layer_sizes:
        offsets.append(total)
        total += s
    pairs = []
    for li in range(len(layer_sizes)):
        for lj in range(li + 1, len(layer_sizes)):
            for a in range(offsets[li], offsets[li] + layer_sizes[li]):
                for b in range(offsets[lj], offsets[lj] + layer_sizes[lj]):
                    pairs.append((a, b))
    label = "K:" + ",".join(map(str, layer_sizes))
    return make_poset(total, pairs, label)


def poset_isomorphic(p, q):
    """True iff an order-preserving-and-reflecting bijection p -> q exists."""
    if p.size != q.size or len(p.strict_lt) != len(q.strict_lt):
        return False
    pd = sorted(p.degree_pair(a) for a in range(p.size))
    qd = sorted(q.degree_pair(a) for a in range(q.size))
    if pd != qd:
        return False
    candidates = [
        [b for b in range(q.size) if q.degree_pair(b) == p.degree_pair(a)]
        for a in range(p.size)
    ]
    image = [-1] * p.size
    used = [False] * q.size

    def place(a):
        if a == p.size:
            return True
        for b in candidates[a]:
            if used[b]:
                continue
            ok = True
            for a2 in range(a):
                if p.lt(a, a2) != q.lt(b, image[a2]) or p.lt(a2, a) != q.lt(image[a2], b):
                    ok = False
                    break
            if ok:
                image[a] = b
                used[b] = True
                if place(a + 1):
                    return True
                used[b] = False
        return False

    return place(0)


def pattern_fingerprint(p):
    """Isomorphism-invariant digest, used for cache keys and report echoes."""
    colors = {a: p.degree_pair(a) for a in range(p.size)}
    for _ in range(3):
        colors = {
            a: (
                colors[a],
                tuple(sorted(colors[b] for b in p.below(a))),
                tuple(sorted(colors[b] for b in p.above(a))),
            )
            for a in range(p.size)
        }
    blob = repr((p.size, sorted(repr(colors[a]) for a in range(p.size))))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def parse_pattern(text):
    """Parse a CLI pattern spec.

    Accepts builtin names (``diamond``, ``butterfly``, ...), parametric
    builders (``chain:4``, ``antichain:3``, ``K:1,2,1``), or a literal
    ``poset k; a<b, c<d`` with 1-based indices.
    """
    spec = text.strip()
    if spec.startswith("poset"):
        body = spec[len("poset") :].strip()
        if ";" not in body:
            raise ParseError(f"pattern literal needs 'poset k; relations': {text!r}")
        head, rels = body.split(";", 1)
        try:
            size = int(head.strip())
        except ValueError:
            raise ParseError(f"bad pattern size {head.strip()!r}") from None
        pairs = []
        rels = rels.strip()
        if rels:
            for part in rels.split(","):
                part = part.strip()
                if "<" not in part:
                    raise ParseError(f"bad relation {part!r} (expected a<b)")
                lo, hi = part.split("<", 1)
                try:
                    a, b = int(lo), int(hi)
                except ValueError:
                    raise ParseError(f"bad relation {part!r}") from None
                if not (1 <= a <= size and 1 <= b <= size):
                    raise ParseError(f"relation {part!r} out of range 1..{size}")
                pairs.append((a - 1, b - 1))
        try:
            return make_poset(size, pairs, spec)
        except CycleError as exc:
            raise ParseError(str(exc)) from None
    if ":" in spec:
        name, arg = spec.split(":", 1)
        name = name.strip()
        if name == "K":
            try:
                sizes = [int(tok) for tok in arg.split(",")]
            except ValueError:
                raise ParseError(f"bad layer sizes {arg!r}") from None
            try:
                return complete_multipartite(sizes)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        try:
            k = int(arg)
        except ValueError:
            raise ParseError(f"bad parameter {arg!r} in {text!r}") from None
        try:
            return builtin(name, k)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    try:
        return builtin(spec)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
