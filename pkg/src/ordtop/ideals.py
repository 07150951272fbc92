"""Ideals of a finite poset and the completion they form under inclusion."""

from __future__ import annotations

from typing import Iterable

from .errors import NotAnIdeal, TooLarge, UnknownLabel
from .poset import FinitePoset, Label, _iter_bits
from .topology import DEFAULT_MAX_ELEMENTS, _guard


class Ideal:
    """A nonempty directed lower subset of a base poset.

    Construction re-derives both defining properties and refuses anything
    that fails them, so holding an Ideal is already a certificate.
    """

    def __init__(self, base: FinitePoset, members: Iterable[Label]):
        members = frozenset(members)
        mask = base.mask_of(members)
        if mask == 0:
            raise NotAnIdeal("an ideal is nonempty (directedness requires it)")
        for i in _iter_bits(mask):
            if base._down[i] & ~mask:
                raise NotAnIdeal(
                    f"not a lower set: something below {base.elements[i]!r} is missing"
                )
        if not base.is_directed(members):
            raise NotAnIdeal("members are not directed")
        self.base = base
        self.members = members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.base == other.base and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.base, self.members))

    def __repr__(self) -> str:
        return f"Ideal({sorted(map(str, self.members))})"


def principal_ideal(base: FinitePoset, point: Label) -> Ideal:
    """The down set of a single element."""
    if point not in base:
        raise UnknownLabel(f"no element labeled {point!r}")
    return Ideal(base, base.down_set([point]))


def all_ideals(base: FinitePoset, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[Ideal]:
    """Every ideal, found by filtering the lower sets for directedness.

    Deliberately enumerative; the finite shortcut (all ideals are principal)
    is a theorem the tests confirm against this function, not an assumption
    baked into it.
    """
    _guard(base, max_elements)
    n = len(base)
    down = base._down
    out = []
    for mask in range(1, 1 << n):
        lower = True
        for i in _iter_bits(mask):
            if down[i] & ~mask:
                lower = False
                break
        if not lower:
            continue
        members = base.labels_of(mask)
        if base.is_directed(members):
            out.append(Ideal(base, members))
    order = {label: i for i, label in enumerate(base.elements)}
    out.sort(key=lambda ideal: (len(ideal.members), tuple(sorted(order[m] for m in ideal.members))))
    return out


def idl_poset(
    base: FinitePoset, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> tuple[FinitePoset, dict[Label, frozenset]]:
    """The ideal completion, ordered by inclusion, plus the principal embedding.

    Elements of the returned poset are the member sets themselves (as
    frozensets of base labels).  The embedding sends each base element to
    its principal ideal; on a finite base it is onto.
    """
    ideals = all_ideals(base, max_elements)
    labels = [ideal.members for ideal in ideals]
    pairs = [(a, b) for a in labels for b in labels if a <= b]
    completion = FinitePoset.from_relation(labels, pairs)
    embedding = {q: frozenset(base.down_set([q])) for q in base.elements}
    missing = set(labels) - set(embedding.values())
    assert not missing, "a finite poset's ideals are all principal"
    return completion, embedding
