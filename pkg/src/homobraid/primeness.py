"""
Decomposition circles, primeness verdicts and prime factorizations of
homogeneous braid closures.

A diagram of a closed braid word has a decomposition circle exactly when some
seesaw number ``g_i`` is 2 or 3.  For homogeneous words the converse
direction holds after maximal destabilization: a non-split, fully
destabilized homogeneous word with every ``g_i >= 4`` has a prime closure.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .braids import (
    BraidWord,
    NotHomogeneousError,
    SplitWordError,
    closure_stats,
    destabilize_fully,
    homogeneity_profile,
    is_split,
    render_word,
    seesaw_profile,
    split_components_with_offsets,
    subword,
)


@dataclass(frozen=True)
class DecompositionCircleSet:
    strands: frozenset[int]

    def __bool__(self) -> bool:
        return bool(self.strands)


def decomposition_strands(word: BraidWord) -> DecompositionCircleSet:
    profile = seesaw_profile(word)
    return DecompositionCircleSet(frozenset(i for i, g in profile.values.items() if g in (2, 3)))


class Status(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "compositeWithFactorization"
    INCONCLUSIVE = "inconclusiveNotHomogeneous"


@dataclass(frozen=True)
class PrimenessVerdict:
    status: Status
    witness: int | None = None  # strand of the input word carrying a decomposition circle

    @property
    def is_prime(self) -> bool:
        return self.status is Status.PRIME


@dataclass(frozen=True)
class SplitStep:
    strand: int  # strand of the input word the decomposition circle meets
    lower: str
    upper: str


@dataclass(frozen=True)
class PrimeFactorization:
    summands: tuple[BraidWord, ...]
    unknot_components: int
    provenance: tuple[SplitStep, ...] = field(default=())

    def canonical(self) -> tuple[str, ...]:
        """Sorted renderings of the summands; the multiset used for comparisons."""
        return tuple(sorted(render_word(w) for w in self.summands))

    def multiset(self) -> Counter[str]:
        return Counter(render_word(w) for w in self.summands)


def _require_homogeneous(word: BraidWord) -> None:
    if not homogeneity_profile(word).is_homogeneous:
        raise NotHomogeneousError(f"{render_word(word)!r} uses some σ_i with both signs")


def _is_prime_reduced(reduced: BraidWord) -> bool:
    return reduced.strands <= 2 or not decomposition_strands(reduced)


def primeness_verdict(word: BraidWord) -> PrimenessVerdict:
    if not homogeneity_profile(word).is_homogeneous:
        return PrimenessVerdict(Status.INCONCLUSIVE)
    for offset, comp in split_components_with_offsets(word):
        d = destabilize_fully(comp)
        if not _is_prime_reduced(d.reduced):
            i = min(decomposition_strands(d.reduced).strands)
            return PrimenessVerdict(Status.COMPOSITE, witness=offset + d.m_minus + i)
    return PrimenessVerdict(Status.PRIME)


def _factor(
    word: BraidWord,
    offset: int,
    summands: list[BraidWord],
    steps: list[SplitStep],
) -> int:
    """Factor a non-split homogeneous word; returns the number of unknots found."""
    d = destabilize_fully(word)
    reduced = d.reduced
    base = offset + d.m_minus
    if reduced.strands == 1:
        return 1
    circles = decomposition_strands(reduced)
    if reduced.strands == 2 or not circles:
        summands.append(reduced)
        return 0
    i = min(circles.strands)
    lower = subword(reduced, 1, i - 1)
    upper = subword(reduced, i, reduced.strands - 1)
    # both sides of a circle on a fully destabilized word are non-trivial
    for side in (lower, upper):
        assert not is_split(side), side
        assert any(side.count(g) != 1 for g in range(1, side.strands)), side
    steps.append(SplitStep(base + i, render_word(lower), render_word(upper)))
    unknots = _factor(lower, base, summands, steps)
    unknots += _factor(upper, base + i - 1, summands, steps)
    assert unknots == 0
    return 0


def prime_factorization(word: BraidWord) -> PrimeFactorization:
    """
    Split a homogeneous closure into prime connected summands.

    Split components are handled separately; each is fully destabilized and
    cut at the smallest strand with seesaw number 2 or 3 until no such strand
    remains.  Components that destabilize to the empty word are unknots.
    """
    _require_homogeneous(word)
    summands: list[BraidWord] = []
    steps: list[SplitStep] = []
    unknots = 0
    for offset, comp in split_components_with_offsets(word):
        unknots += _factor(comp, offset, summands, steps)
    return PrimeFactorization(tuple(summands), unknots, tuple(steps))


def is_unknot_homogeneous(word: BraidWord) -> bool:
    _require_homogeneous(word)
    if is_split(word):
        raise SplitWordError(f"{render_word(word)!r} is split")
    once = all(word.count(i) == 1 for i in range(1, word.strands))
    assert once == (destabilize_fully(word).reduced.strands == 1)
    return once


def summand_betti(summand: BraidWord) -> int:
    stats = closure_stats(summand)
    assert stats.first_betti is not None
    return stats.first_betti
