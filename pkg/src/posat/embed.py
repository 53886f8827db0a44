"""Induced-copy detection: embedding an abstract pattern into a set family.

The host order is always inclusion on subsets of [n]. An embedding must
preserve comparabilities and incomparabilities both ways (the copy is
induced), so every extension step checks the candidate against every placed
element in both directions.
"""

from dataclasses import dataclass

from .errors import PreconditionError
from .families import set_key


@dataclass(frozen=True)
class Embedding:
    """assignment[i] is the host set (mask) that pattern element i maps to."""

    assignment: tuple

    def image(self):
        return frozenset(self.assignment)


def embedding_is_valid(emb, pattern, host=None):
    masks = emb.assignment
    if len(masks) != pattern.size or len(set(masks)) != pattern.size:
        return False
    if host is not None and any(m not in host.sets for m in masks):
        return False
    for a in range(pattern.size):
        for b in range(pattern.size):
            if a == b:
                continue
            strict = masks[a] != masks[b] and masks[a] & masks[b] == masks[a]
            if pattern.lt(a, b) != strict:
                return False
    return True


def _static_order(pattern, pinned):
    rest = [e for e in range(pattern.size) if e not in pinned]
    rest.sort(key=lambda e: (-sum(pattern.degree_pair(e)), e))
    return sorted(pinned) + rest


def _consistent(pattern, e, cand, order, images, upto):
    for i in range(upto):
        e2 = order[i]
        m2 = images[i]
        if cand == m2:
            return False
        if pattern.lt(e, e2):
            if cand & m2 != cand:
                return False
        elif pattern.lt(e2, e):
            if m2 & cand != m2:
                return False
        elif cand & m2 == cand or m2 & cand == m2:
            return False
    return True


def _search(candidates, pattern, pinned):
    """Backtracking over pattern elements in a fixed most-constrained-first order."""
    order = _static_order(pattern, pinned)
    images = [0] * pattern.size

    def place(i):
        if i == pattern.size:
            return True
        e = order[i]
        pool = (pinned[e],) if e in pinned else candidates
        for cand in pool:
            if _consistent(pattern, e, cand, order, images, i):
                images[i] = cand
                if place(i + 1):
                    return True
        return False

    if not place(0):
        return None
    assignment = [0] * pattern.size
    for i, e in enumerate(order):
        assignment[e] = images[i]
    return tuple(assignment)


def find_induced_copy(host, pattern):
    """Some embedding of ``pattern`` into ``host`` if one exists, else None."""
    if pattern.size > len(host):
        return None
    assignment = _search(host.sets, pattern, {})
    if assignment is None:
        return None
    emb = Embedding(assignment)
    assert embedding_is_valid(emb, pattern, host)
    return emb


def completes_copy(host, s, pattern):
    """An embedding into host + {s} whose image uses s, if one exists.

    Found by pinning s to each pattern element in turn, so the witness is
    deterministic. Precondition: s is not already a member of the host.
    """
    if s in host.sets:
        raise PreconditionError(f"set {s:#x} already in the host family")
    if pattern.size > len(host) + 1:
        return None
    candidates = tuple(sorted(host.sets + (s,), key=set_key))
    for e in range(pattern.size):
        assignment = _search(candidates, pattern, {e: s})
        if assignment is not None:
            emb = Embedding(assignment)
            assert s in assignment and embedding_is_valid(emb, pattern)
            return emb
    return None
