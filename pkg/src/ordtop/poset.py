"""Finite posets with an exact, fully materialized order relation.

Elements are opaque hashable labels kept in a fixed tuple; the order is
stored closed (reflexive and transitive), so order queries never recompute
reachability.  Internally each element carries an integer bitmask of the
elements above it, which keeps the subset primitives cheap even when a
caller sweeps over every subset of the poset.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Any, Iterable, Iterator

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptySet,
    ForeignSet,
    FormatError,
    UnknownLabel,
)

Label = Any


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transitive_close(masks: list[int]) -> None:
    # Warshall over bitmask rows, in place.
    n = len(masks)
    for i in range(n):
        masks[i] |= 1 << i
    for k in range(n):
        bit = 1 << k
        row = masks[k]
        for i in range(n):
            if masks[i] & bit:
                masks[i] |= row


class FinitePoset:
    """An immutable poset over an ordered tuple of distinct labels.

    Construct through ``build_poset`` (covers, closed automatically) or
    ``FinitePoset.from_relation`` (an already closed relation, revalidated).
    The raw constructor trusts its masks and is meant for internal use.
    """

    def __init__(self, elements: Iterable[Label], up_masks: Iterable[int]):
        self.elements = tuple(elements)
        index: dict[Label, int] = {}
        for pos, label in enumerate(self.elements):
            if label in index:
                raise DuplicateLabel(f"duplicate element label {label!r}")
            index[label] = pos
        self._index = index
        self._up = tuple(up_masks)
        if len(self._up) != len(self.elements):
            raise ValueError("one up-mask per element required")

    @classmethod
    def from_covers(cls, elements: Iterable[Label], covers: Iterable[tuple[Label, Label]]) -> "FinitePoset":
        """Close a cover (or any generating) relation and validate antisymmetry."""
        elements = tuple(elements)
        seen: dict[Label, int] = {}
        for pos, label in enumerate(elements):
            if label in seen:
                raise DuplicateLabel(f"duplicate element label {label!r}")
            seen[label] = pos
        masks = [0] * len(elements)
        for low, high in covers:
            if low not in seen:
                raise UnknownLabel(f"cover mentions unknown label {low!r}")
            if high not in seen:
                raise UnknownLabel(f"cover mentions unknown label {high!r}")
            masks[seen[low]] |= 1 << seen[high]
        _transitive_close(masks)
        cls._check_antisymmetry(elements, masks)
        return cls(elements, masks)

    @classmethod
    def from_relation(cls, elements: Iterable[Label], pairs: Iterable[tuple[Label, Label]]) -> "FinitePoset":
        """Build from a relation that must already be reflexive and transitive."""
        elements = tuple(elements)
        seen = {label: pos for pos, label in enumerate(elements)}
        if len(seen) != len(elements):
            raise DuplicateLabel("duplicate element label in relation")
        masks = [0] * len(elements)
        for a, b in pairs:
            if a not in seen or b not in seen:
                raise UnknownLabel(f"relation mentions unknown pair ({a!r}, {b!r})")
            masks[seen[a]] |= 1 << seen[b]
        for i in range(len(elements)):
            if not masks[i] >> i & 1:
                raise ValueError(f"relation is not reflexive at {elements[i]!r}")
        closed = list(masks)
        _transitive_close(closed)
        if closed != masks:
            raise ValueError("relation is not transitively closed")
        cls._check_antisymmetry(elements, masks)
        return cls(elements, masks)

    @staticmethod
    def _check_antisymmetry(elements: tuple[Label, ...], masks: list[int]) -> None:
        for i in range(len(elements)):
            for j in _iter_bits(masks[i]):
                if j != i and masks[j] >> i & 1:
                    raise CycleDetected(
                        f"{elements[i]!r} and {elements[j]!r} sit below each other"
                    )

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, label: Label) -> bool:
        return label in self._index

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"no element labeled {label!r}") from None

    def le(self, a: Label, b: Label) -> bool:
        return self._up[self.index(a)] >> self.index(b) & 1 == 1

    def lt(self, a: Label, b: Label) -> bool:
        return a != b and self.le(a, b)

    @cached_property
    def leq(self) -> frozenset[tuple[int, int]]:
        """The full order relation as a set of index pairs."""
        return frozenset(
            (i, j) for i in range(len(self)) for j in _iter_bits(self._up[i])
        )

    @cached_property
    def _down(self) -> tuple[int, ...]:
        down = [0] * len(self)
        for i in range(len(self)):
            for j in _iter_bits(self._up[i]):
                down[j] |= 1 << i
        return tuple(down)

    # -- masks ------------------------------------------------------------

    def mask_of(self, labels: Iterable[Label]) -> int:
        """Bitmask of a subset; rejects labels that live elsewhere."""
        mask = 0
        for label in labels:
            pos = self._index.get(label)
            if pos is None:
                raise ForeignSet(f"label {label!r} is not an element of this poset")
            mask |= 1 << pos
        return mask

    def labels_of(self, mask: int) -> frozenset[Label]:
        return frozenset(self.elements[i] for i in _iter_bits(mask))

    # -- subset primitives --------------------------------------------------

    def up_set(self, labels: Iterable[Label]) -> frozenset[Label]:
        """All elements above some member of ``labels``."""
        out = 0
        for i in _iter_bits(self.mask_of(labels)):
            out |= self._up[i]
        return self.labels_of(out)

    def down_set(self, labels: Iterable[Label]) -> frozenset[Label]:
        """All elements below some member of ``labels``."""
        out = 0
        for i in _iter_bits(self.mask_of(labels)):
            out |= self._down[i]
        return self.labels_of(out)

    @cached_property
    def _max_mask(self) -> int:
        mask = 0
        for i in range(len(self)):
            if self._up[i] == 1 << i:
                mask |= 1 << i
        return mask

    def maximal_elements(self) -> frozenset[Label]:
        return self.labels_of(self._max_mask)

    def is_directed(self, labels: Iterable[Label]) -> bool:
        """Nonempty, and every pair of members has an upper bound among the members."""
        mask = self.mask_of(labels)
        if mask == 0:
            return False
        members = list(_iter_bits(mask))
        for a in members:
            for b in members:
                if not self._up[a] & self._up[b] & mask:
                    return False
        return True

    def supremum(self, labels: Iterable[Label]) -> Label | None:
        """Least upper bound of a nonempty subset, or None when there is none."""
        mask = self.mask_of(labels)
        if mask == 0:
            raise EmptySet("supremum of the empty set is not defined here")
        ub = (1 << len(self)) - 1
        for i in _iter_bits(mask):
            ub &= self._up[i]
        for u in _iter_bits(ub):
            if ub & ~self._up[u] == 0:
                return self.elements[u]
        return None

    def is_dcpo(self) -> bool:
        # Finite and nonempty directed sets have greatest elements, so every
        # finite poset is directed complete.
        return True

    # -- derived structure ---------------------------------------------------

    def covers(self) -> tuple[tuple[Label, Label], ...]:
        """Transitive reduction as (lower, upper) pairs in element order."""
        out = []
        for i in range(len(self)):
            strict_up = self._up[i] & ~(1 << i)
            for j in _iter_bits(strict_up):
                between = strict_up & self._down[j] & ~(1 << j)
                if between == 0:
                    out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    def restrict(self, labels: Iterable[Label]) -> "FinitePoset":
        """Subposet on the given labels with the induced order."""
        keep_mask = self.mask_of(labels)
        kept = [i for i in range(len(self)) if keep_mask >> i & 1]
        renumber = {old: new for new, old in enumerate(kept)}
        masks = []
        for old in kept:
            row = 0
            for j in _iter_bits(self._up[old] & keep_mask):
                row |= 1 << renumber[j]
            masks.append(row)
        return FinitePoset((self.elements[i] for i in kept), masks)

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.elements, self._up))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.leq)} related pairs)"


def build_poset(elements: Iterable[Label], covers: Iterable[tuple[Label, Label]]) -> FinitePoset:
    """Close the given covers into a poset; see ``FinitePoset.from_covers``."""
    return FinitePoset.from_covers(elements, covers)


def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Componentwise order on pairs of labels."""
    nq = len(q)
    elements = [(a, b) for a in p.elements for b in q.elements]
    masks = []
    for i in range(len(p)):
        for j in range(nq):
            row = 0
            for k in _iter_bits(p._up[i]):
                for l in _iter_bits(q._up[j]):
                    row |= 1 << (k * nq + l)
            masks.append(row)
    return FinitePoset(elements, masks)


# -- order isomorphism search ---------------------------------------------


def _refined_colors(p: FinitePoset) -> list[int]:
    n = len(p)
    down = p._down
    colors = [(bin(p._up[i]).count("1"), bin(down[i]).count("1")) for i in range(n)]
    ranks = {c: r for r, c in enumerate(sorted(set(colors)))}
    current = [ranks[c] for c in colors]
    for _ in range(n):
        sigs = []
        for i in range(n):
            above = tuple(sorted(current[j] for j in _iter_bits(p._up[i])))
            below = tuple(sorted(current[j] for j in _iter_bits(down[i])))
            sigs.append((current[i], above, below))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        refined = [ranks[s] for s in sigs]
        if refined == current:
            break
        current = refined
    return current


def find_order_isomorphism(p: FinitePoset, q: FinitePoset) -> dict[Label, Label] | None:
    """A label bijection preserving order in both directions, or None."""
    if len(p) != len(q):
        return None
    cp, cq = _refined_colors(p), _refined_colors(q)
    if sorted(cp) != sorted(cq):
        return None
    candidates = [[j for j in range(len(q)) if cq[j] == cp[i]] for i in range(len(p))]
    order = sorted(range(len(p)), key=lambda i: len(candidates[i]))
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        for a, b in assigned.items():
            if (p._up[i] >> a & 1) != (q._up[j] >> b & 1):
                return False
            if (p._up[a] >> i & 1) != (q._up[b] >> j & 1):
                return False
        return True

    def backtrack(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for j in candidates[i]:
            if j not in used and consistent(i, j):
                assigned[i] = j
                used.add(j)
                if backtrack(pos + 1):
                    return True
                del assigned[i]
                used.discard(j)
        return False

    if not backtrack(0):
        return None
    return {p.elements[i]: q.elements[j] for i, j in assigned.items()}


# -- file formats -----------------------------------------------------------


def label_text(label: Label) -> str:
    """Deterministic readable rendering for composite labels."""
    if isinstance(label, frozenset):
        return "{" + ",".join(sorted(label_text(m) for m in label)) + "}"
    if isinstance(label, tuple):
        return "(" + ",".join(label_text(m) for m in label) + ")"
    return str(label)


def poset_to_json(p: FinitePoset) -> dict:
    for label in p.elements:
        if not isinstance(label, str):
            raise FormatError("only string-labeled posets can be serialized")
    return {
        "elements": list(p.elements),
        "covers": [[a, b] for a, b in p.covers()],
    }


def poset_from_json(data: object) -> FinitePoset:
    if not isinstance(data, dict):
        raise FormatError("poset file must hold a JSON object")
    elements = data.get("elements")
    covers = data.get("covers")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise FormatError('"elements" must be an array of strings')
    if not isinstance(covers, list):
        raise FormatError('"covers" must be an array of [low, high] pairs')
    pairs = []
    for item in covers:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise FormatError(f"malformed cover entry {item!r}")
        pairs.append((item[0], item[1]))
    return build_poset(elements, pairs)


def load_poset(path: str) -> FinitePoset:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {path}: {exc}") from exc
    return poset_from_json(data)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(p: FinitePoset) -> str:
    """Hasse diagram in DOT form: nodes in element order, edges low to high."""
    lines = ["digraph poset {", "  rankdir=BT;"]
    for label in p.elements:
        lines.append(f"  {_dot_quote(label_text(label))};")
    for low, high in p.covers():
        lines.append(f"  {_dot_quote(label_text(low))} -> {_dot_quote(label_text(high))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
