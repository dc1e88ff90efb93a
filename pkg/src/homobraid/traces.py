"""
Words up to partial commutation (trace monoid) and up to conjugacy.

Two traces are conjugate when one turns into the other by repeatedly moving
a letter that can come first to the end.  A single rotation is not enough in
general: on the path a-b-c with only a, c commuting, ``cba`` and ``abc`` are
conjugate (cba -> acb = cab -> abc) but no rotation of ``abc`` equals
``cba`` as a trace.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

Commutation = frozenset  # frozenset of frozenset({x, y}) pairs that commute
Form = tuple  # Foata normal form: tuple of sorted steps


def commutation(pairs: Iterable[Iterable[Hashable]]) -> Commutation:
    return frozenset(frozenset(p) for p in pairs if len(set(p)) == 2)


def foata_normal_form(word: Sequence[Hashable], commuting: Commutation) -> Form:
    """
    Foata normal form: the word cut into steps of pairwise commuting letters,
    each step sorted, every letter placed in the earliest step allowed by the
    dependent letters before it.
    """
    level: list[int] = []
    for i, x in enumerate(word):
        lv = 0
        for j in range(i):
            if level[j] >= lv and frozenset((word[j], x)) not in commuting:
                lv = level[j] + 1
        level.append(lv)
    steps: list[list] = [[] for _ in range(max(level, default=-1) + 1)]
    for x, lv in zip(word, level):
        steps[lv].append(x)
    return tuple(tuple(sorted(s, key=repr)) for s in steps)


def trace_equal(w1: Sequence[Hashable], w2: Sequence[Hashable], commuting: Commutation) -> bool:
    return foata_normal_form(w1, commuting) == foata_normal_form(w2, commuting)


def _check_alphabets(w1: Sequence[Hashable], w2: Sequence[Hashable]) -> None:
    if set(w1) != set(w2):
        raise ValueError(f"alphabet mismatch: {sorted(map(str, set(w1)))} vs {sorted(map(str, set(w2)))}")


@lru_cache(maxsize=65536)
def _rotation_forms(word: tuple, commuting: Commutation) -> frozenset:
    return frozenset(foata_normal_form(word[r:] + word[:r], commuting) for r in range(max(len(word), 1)))


def rotation_trace_equal(
    w1: Sequence[Hashable],
    w2: Sequence[Hashable],
    commuting: Commutation,
) -> bool:
    """Whether a single rotation of ``w2`` equals ``w1`` as a trace (stronger than conjugacy)."""
    _check_alphabets(w1, w2)
    if len(w1) != len(w2):
        return False
    return foata_normal_form(tuple(w1), commuting) in _rotation_forms(tuple(w2), commuting)


_classes: dict[tuple[Form, Commutation], frozenset] = {}


def conjugacy_class(word: Sequence[Hashable], commuting: Commutation) -> frozenset:
    """Foata forms of every trace conjugate to ``word``."""
    start = foata_normal_form(tuple(word), commuting)
    cached = _classes.get((start, commuting))
    if cached is not None:
        return cached
    seen = {start}
    queue = deque([start])
    while queue:
        form = queue.popleft()
        if not form:
            continue
        flat = [x for step in form for x in step]
        for x in set(form[0]):
            # x can come first; move it to the end
            k = flat.index(x)
            nxt = foata_normal_form(flat[:k] + flat[k + 1 :] + [x], commuting)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    cls = frozenset(seen)
    if len(_classes) > 100_000:
        _classes.clear()
    for form in cls:
        _classes[(form, commuting)] = cls
    return cls


def trace_cyclic_equivalent(
    w1: Sequence[Hashable],
    w2: Sequence[Hashable],
    commuting: Commutation,
) -> bool:
    """Whether ``w1`` and ``w2`` are conjugate traces under the given commutations."""
    _check_alphabets(w1, w2)
    if len(w1) != len(w2):
        return False
    return foata_normal_form(tuple(w1), commuting) in conjugacy_class(w2, commuting)
