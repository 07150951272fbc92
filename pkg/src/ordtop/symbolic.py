"""Symbolic points and Scott opens of two infinite chain-bundle domains.

The ambient order ("L" mode) is built from countably many disjoint chains

    (i,0) < (i,1) < ... < (i,inf)        one chain per natural i,

together with a pair of points (s,0) < (s,1) for every selector s, where a
selector picks one finite position per chain and (s,0) sits directly above
all the picked points (i, s(i)).  The chain tops and the level-1 selector
points are the maximal elements.  "Lhat" mode removes the level-1 points,
which promotes every (s,0) to a maximal element; nothing else changes.

Everything infinite is kept decidable by sticking to finitely-describable
data: selectors are finite exceptions over a default position, and an open
set is a threshold per chain (again finite exceptions over a default, with
None meaning the chain is missing entirely), an all-level-1 flag, and
finitely many cylinder grants for selector points.  The fragment is closed
under everything the constructions here need, and in particular contains
every witness the diagonal argument produces; it does not try to represent
arbitrary Scott opens of the full domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping

from .errors import FormatError, NotCoveringMax, TooLarge
from .poset import FinitePoset, build_poset
from .report import Report

MODE_L = "L"
MODE_LHAT = "Lhat"
MODES = (MODE_L, MODE_LHAT)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _normalize(exceptions, default, *, allow_none: bool) -> tuple:
    out = {}
    for i, value in dict(exceptions).items():
        if not isinstance(i, int) or i < 0:
            raise ValueError(f"chain index {i!r} must be a natural number")
        if value is None and not allow_none:
            raise ValueError("selector positions cannot be absent")
        if value is not None and (not isinstance(value, int) or value < 0):
            raise ValueError(f"position {value!r} must be a natural number")
        if value != default:
            out[i] = value
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Selector:
    """A choice of one finite position per chain: finite exceptions over a default."""

    exceptions: tuple = ()
    default: int = 0

    def __post_init__(self):
        if not isinstance(self.default, int) or self.default < 0:
            raise ValueError("default position must be a natural number")
        object.__setattr__(
            self, "exceptions", _normalize(self.exceptions, self.default, allow_none=False)
        )

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], default: int = 0) -> "Selector":
        return cls(tuple(mapping.items()), default)

    def __call__(self, i: int) -> int:
        for j, value in self.exceptions:
            if j == i:
                return value
        return self.default

    def exception_map(self) -> dict[int, int]:
        return dict(self.exceptions)


@dataclass(frozen=True)
class ChainPoint:
    """The point at a finite position of one chain."""

    chain: int
    pos: int


@dataclass(frozen=True)
class ChainTop:
    """The top of one chain: the supremum of its finite points."""

    chain: int


@dataclass(frozen=True)
class SelectorPoint:
    """A selector's point at level 0 or 1; level 1 exists only in L mode."""

    selector: Selector
    level: int


LPoint = ChainPoint | ChainTop | SelectorPoint


def in_mode(point: LPoint, mode: str) -> bool:
    _check_mode(mode)
    if isinstance(point, SelectorPoint) and point.level not in (0, 1):
        return False
    if mode == MODE_LHAT and isinstance(point, SelectorPoint) and point.level == 1:
        return False
    return True


def l_leq(a: LPoint, b: LPoint) -> bool:
    """The order, directly from its generating clauses.

    Within a chain, positions compare as numbers and everything sits below
    the chain top.  A selector point at level 0 sits above exactly the
    picked chain points (and whatever lies below them); level 1 sits above
    level 0 of the same selector.  Chain tops are above their chain only.
    """
    if a == b:
        return True
    if isinstance(a, ChainPoint):
        if isinstance(b, ChainPoint):
            return a.chain == b.chain and a.pos <= b.pos
        if isinstance(b, ChainTop):
            return a.chain == b.chain
        if isinstance(b, SelectorPoint):
            return b.selector(a.chain) >= a.pos
    if isinstance(a, SelectorPoint) and isinstance(b, SelectorPoint):
        return a.selector == b.selector and a.level <= b.level
    return False


def is_maximal(point: LPoint, mode: str) -> bool:
    _check_mode(mode)
    if not in_mode(point, mode):
        raise ValueError(f"{point!r} is not a point of mode {mode}")
    if isinstance(point, ChainTop):
        return True
    if isinstance(point, SelectorPoint):
        return point.level == 1 if mode == MODE_L else True
    return False


# -- symbolic opens ------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdRule:
    """Admission threshold per chain; None means the chain is missing.

    A present threshold t at chain i admits the points (i, n) for n >= t
    and, through upward closure, the chain top.
    """

    default: int | None = 0
    exceptions: tuple = ()

    def __post_init__(self):
        if self.default is not None and (not isinstance(self.default, int) or self.default < 0):
            raise ValueError("default threshold must be a natural number or None")
        object.__setattr__(
            self, "exceptions", _normalize(self.exceptions, self.default, allow_none=True)
        )

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int | None], default: int | None = 0) -> "ThresholdRule":
        return cls(default, tuple(mapping.items()))

    def __call__(self, i: int) -> int | None:
        for j, value in self.exceptions:
            if j == i:
                return value
        return self.default

    def all_present(self) -> bool:
        if self.default is None:
            return False
        return all(value is not None for _, value in self.exceptions)

    def somewhere_zero(self) -> bool:
        # a zero threshold admits every selector point by upward closure
        return self.default == 0 or any(value == 0 for _, value in self.exceptions)


@dataclass(frozen=True)
class Cylinder:
    """A grant for selector points: minimum positions on finitely many chains.

    A selector matches when it clears every listed minimum; matched
    selectors receive membership at the listed levels.
    """

    conds: tuple = ()
    levels: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        conds = {}
        for i, value in dict(self.conds).items():
            if not isinstance(i, int) or i < 0 or not isinstance(value, int) or value < 0:
                raise ValueError(f"cylinder condition ({i!r}, {value!r}) must be naturals")
            conds[i] = value
        object.__setattr__(self, "conds", tuple(sorted(conds.items())))
        levels = frozenset(self.levels)
        if not levels <= {0, 1}:
            raise ValueError("cylinder levels must sit inside {0, 1}")
        object.__setattr__(self, "levels", levels)

    def matches(self, selector: Selector) -> bool:
        return all(selector(i) >= minimum for i, minimum in self.conds)

    def grants_all_selectors(self) -> bool:
        return all(minimum == 0 for _, minimum in self.conds)


@dataclass(frozen=True)
class SymbolicOpen:
    """A Scott open of the fragment: thresholds, a level-1 flag, cylinders.

    ``all_level1`` makes every level-1 selector point a member beyond the
    ones upward closure already forces; cylinders grant selector points
    individually.  Upward closure over chains is built into the threshold
    reading and is not stored.
    """

    thresholds: ThresholdRule = ThresholdRule()
    all_level1: bool = False
    cylinders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cylinders", tuple(self.cylinders))
        for cylinder in self.cylinders:
            if not isinstance(cylinder, Cylinder):
                raise ValueError("cylinders must be Cylinder instances")


def _forced(thresholds: ThresholdRule, selector: Selector) -> bool:
    """Does some chain's threshold sit at or below the selector's pick?

    Only finitely many chains escape the two defaults, so the comparison
    reduces to the exception indices plus one default-vs-default check.
    """
    indices = {i for i, _ in thresholds.exceptions} | {i for i, _ in selector.exceptions}
    for i in indices:
        t = thresholds(i)
        if t is not None and selector(i) >= t:
            return True
    return thresholds.default is not None and selector.default >= thresholds.default


def symbolic_member(open_set: SymbolicOpen, point: LPoint) -> bool:
    """Decide membership of a point in a symbolic open."""
    thresholds = open_set.thresholds
    if isinstance(point, ChainPoint):
        t = thresholds(point.chain)
        return t is not None and point.pos >= t
    if isinstance(point, ChainTop):
        return thresholds(point.chain) is not None
    selector, level = point.selector, point.level
    if _forced(thresholds, selector):
        return True
    if level == 1 and open_set.all_level1:
        return True
    return any(
        level in cylinder.levels and cylinder.matches(selector)
        for cylinder in open_set.cylinders
    )


def validate_open(open_set: SymbolicOpen, mode: str) -> bool:
    """Scott-openness inside the fragment.

    Upward closure along chains and the inaccessibility of each chain top
    (a top is a member only when finitely many of its chain points are
    missing) are structural consequences of the threshold reading; what
    remains to check is the selector levels: level sets of cylinders must
    be upward closed, and in Lhat mode nothing may mention level 1.
    """
    _check_mode(mode)
    for cylinder in open_set.cylinders:
        if mode == MODE_L and 0 in cylinder.levels and 1 not in cylinder.levels:
            return False
        if mode == MODE_LHAT and 1 in cylinder.levels:
            return False
    if mode == MODE_LHAT and open_set.all_level1:
        return False
    return True


def contains_max(open_set: SymbolicOpen, mode: str) -> bool:
    """Certificate that the open contains every maximal point.

    Both modes need every chain present.  L mode needs the all-level-1
    grant; Lhat mode needs every level-0 selector point, either through an
    unconditional cylinder or through a zero threshold somewhere.
    """
    _check_mode(mode)
    if not open_set.thresholds.all_present():
        return False
    if mode == MODE_L:
        return open_set.all_level1
    if open_set.thresholds.somewhere_zero():
        return True
    return any(
        0 in cylinder.levels and cylinder.grants_all_selectors()
        for cylinder in open_set.cylinders
    )


# -- open families --------------------------------------------------------------


class OpenFamily:
    """An indexed family of symbolic opens.

    Either a finite explicit list or a rule evaluated lazily; a rule family
    carries an evaluation bound, and point-wise certification stops there
    while structural notes cover the rest.
    """

    def __init__(self, opens=None, rule: Callable[[int], SymbolicOpen] | None = None,
                 eval_bound: int | None = None):
        if (opens is None) == (rule is None):
            raise ValueError("provide exactly one of opens or rule")
        if rule is not None and (eval_bound is None or eval_bound < 1):
            raise ValueError("a rule family needs a positive evaluation bound")
        self._opens = tuple(opens) if opens is not None else None
        self._rule = rule
        self.eval_bound = eval_bound
        self._cache: dict[int, SymbolicOpen] = {}

    @classmethod
    def from_list(cls, opens: Iterable[SymbolicOpen]) -> "OpenFamily":
        return cls(opens=tuple(opens))

    @classmethod
    def from_rule(cls, rule: Callable[[int], SymbolicOpen], eval_bound: int) -> "OpenFamily":
        return cls(rule=rule, eval_bound=eval_bound)

    @property
    def is_rule(self) -> bool:
        return self._rule is not None

    def indices(self) -> range:
        if self._opens is not None:
            return range(len(self._opens))
        return range(self.eval_bound)

    def member(self, j: int) -> SymbolicOpen:
        if self._opens is not None:
            return self._opens[j]
        if j not in self._cache:
            self._cache[j] = self._rule(j)
        return self._cache[j]

    def validate(self, mode: str) -> bool:
        return all(validate_open(self.member(j), mode) for j in self.indices())


# -- the diagonal argument -------------------------------------------------------


def diagonal_witness(
    family: OpenFamily, *, offsets: Mapping[int, int] | int = 0
) -> tuple[Selector, Report]:
    """A selector point inside every family member but below a maximal point.

    Every member must certify covering the maximal points of L (error:
    NotCoveringMax).  The witness picks, at chain j, exactly member j's
    threshold for chain j; that chain point is a member, so upward closure
    drags the selector's level-0 point into member j, for every j.  Since
    the family covers each chain top through a finite threshold, such a
    pick always exists; the level-0 point is never maximal in L.

    ``offsets`` shifts the picks upward (membership only needs "at least
    the threshold"), which is how the tests sample non-canonical witnesses.
    """
    for j in family.indices():
        if not contains_max(family.member(j), MODE_L):
            raise NotCoveringMax(f"family member {j} does not certify covering the maxima")

    def offset_at(j: int) -> int:
        if isinstance(offsets, int):
            return offsets
        return offsets.get(j, 0)

    picks = {}
    for j in family.indices():
        threshold = family.member(j).thresholds(j)
        picks[j] = threshold + offset_at(j)
    witness = Selector.from_mapping(picks, default=0)
    point = SelectorPoint(witness, 0)

    report = Report()
    if family.is_rule:
        report.info("family", f"rule evaluated up to {family.eval_bound}")
    else:
        report.info("family-size", len(family.indices()))
    all_in = True
    for j in family.indices():
        inside = symbolic_member(family.member(j), point)
        report.check(f"witness-in-member {j}", inside)
        all_in = all_in and inside
    report.check("witness-in-every-member", all_in)
    if family.is_rule:
        report.info(
            "structural-rule",
            "at every index j the witness position on chain j is member j's "
            "threshold for chain j, so membership persists beyond the bound",
        )
    above = SelectorPoint(witness, 1)
    report.check(
        "witness-not-maximal",
        l_leq(point, above) and point != above and not is_maximal(point, MODE_L),
    )
    report.check("intersection-strictly-exceeds-max", report.ok)
    return witness, report


# -- the countable certificate for Lhat ------------------------------------------


def cutoff_open(k: int) -> SymbolicOpen:
    """The open that removes the depth-k prefix of the first k+1 chains.

    Thresholds force position k+1 on chains 0..k and 0 elsewhere; an
    unconditional cylinder keeps every level-0 selector point.  In Lhat
    mode this is a valid open containing all maximal points.
    """
    if k < 0:
        raise ValueError("cutoff index must be a natural number")
    thresholds = ThresholdRule(0, tuple((i, k + 1) for i in range(k + 1)))
    keep_selectors = Cylinder((), frozenset({0}))
    return SymbolicOpen(thresholds, False, (keep_selectors,))


def gdelta_certificate_lhat(bound: int) -> Report:
    """Certify, up to a bound, that the maxima of Lhat form a Gdelta set.

    Obligations: each cutoff open is valid and covers the maxima; every
    non-maximal chain point (i, n) with i, n <= bound is excluded by the
    cutoff at max(i, n); chain tops and sampled level-0 selector points
    survive every evaluated cutoff.  The index rule is recorded as a
    structural note since no finite run can visit every chain point.
    """
    if bound < 0:
        raise ValueError("bound must be a natural number")
    report = Report()
    report.info("mode", MODE_LHAT)
    report.info("bound", bound)
    family = [cutoff_open(k) for k in range(bound + 1)]
    for k, open_set in enumerate(family):
        report.check(
            f"cutoff {k} valid-and-covering",
            validate_open(open_set, MODE_LHAT) and contains_max(open_set, MODE_LHAT),
        )

    excluded = 0
    failure = None
    for i in range(bound + 1):
        for n in range(bound + 1):
            k = max(i, n)
            if symbolic_member(family[k], ChainPoint(i, n)):
                failure = (i, n)
            else:
                excluded += 1
    report.info("chain-points-checked", (bound + 1) ** 2)
    report.check("non-maximal-chain-points-excluded", failure is None, failure)
    report.info(
        "structural-rule",
        "chain point (i,n) is excluded by the cutoff at index max(i,n), "
        "so the intersection of all cutoffs holds no chain point",
    )

    tops_ok = all(
        symbolic_member(family[k], ChainTop(i))
        for i in range(bound + 1)
        for k in range(bound + 1)
    )
    report.check("chain-tops-in-every-cutoff", tops_ok)
    samples = [
        Selector(),
        Selector.from_mapping({0: bound}),
        Selector.from_mapping({j: j for j in range(min(bound, 5))}, default=1),
    ]
    selectors_ok = all(
        symbolic_member(family[k], SelectorPoint(s, 0))
        for s in samples
        for k in range(bound + 1)
    )
    report.check("selector-points-in-every-cutoff", selectors_ok)
    report.check("intersection-equals-max-at-bound", report.ok)
    return report


# -- finite truncations -----------------------------------------------------------


def chain_label(i: int, pos: int) -> str:
    return f"({i},{pos})"


def top_label(i: int) -> str:
    return f"({i},inf)"


def selector_label(values: tuple[int, ...], level: int) -> str:
    return "s[" + ",".join(map(str, values)) + f"]@{level}"


def truncate_domain(
    width: int, depth: int, mode: str, *, max_elements: int = 5000
) -> tuple[FinitePoset, dict[str, LPoint]]:
    """A finite prefix of the mode's domain, with a map back to its points.

    Keeps ``width`` chains, each with positions below ``depth`` plus its
    top, and every selector over those positions (level 1 only in L mode).
    The point map sends each element label to the symbolic point it stands
    for, so symbolic membership can be replayed concretely.
    """
    _check_mode(mode)
    if width < 1 or depth < 1:
        raise ValueError("width and depth must be at least 1")
    levels = (0, 1) if mode == MODE_L else (0,)
    count = width * (depth + 1) + (depth ** width) * len(levels)
    if count > max_elements:
        raise TooLarge(f"truncation would hold {count} elements, bound is {max_elements}")

    elements: list[str] = []
    points: dict[str, LPoint] = {}
    covers: list[tuple[str, str]] = []
    for i in range(width):
        for n in range(depth):
            label = chain_label(i, n)
            elements.append(label)
            points[label] = ChainPoint(i, n)
            if n + 1 < depth:
                covers.append((label, chain_label(i, n + 1)))
        top = top_label(i)
        elements.append(top)
        points[top] = ChainTop(i)
        covers.append((chain_label(i, depth - 1), top))
    for values in cartesian(range(depth), repeat=width):
        selector = Selector.from_mapping({i: v for i, v in enumerate(values)})
        for level in levels:
            label = selector_label(values, level)
            elements.append(label)
            points[label] = SelectorPoint(selector, level)
        for i, v in enumerate(values):
            covers.append((chain_label(i, v), selector_label(values, 0)))
        if len(levels) == 2:
            covers.append((selector_label(values, 0), selector_label(values, 1)))
    return build_poset(elements, covers), points


def truncation_members(
    open_set: SymbolicOpen, points: Mapping[str, LPoint]
) -> frozenset[str]:
    """Labels of truncation elements the symbolic open contains."""
    return frozenset(
        label for label, point in points.items() if symbolic_member(open_set, point)
    )


# -- file format --------------------------------------------------------------------


def _nat_or_none(value, what: str):
    if value is None:
        return None
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return value
    raise FormatError(f"{what} must be a natural number or null, got {value!r}")


def open_to_json(open_set: SymbolicOpen) -> dict:
    return {
        "thresholds": {
            "default": open_set.thresholds.default,
            "exceptions": {str(i): v for i, v in open_set.thresholds.exceptions},
        },
        "allPhiLevel1": open_set.all_level1,
        "extraPhi": [
            {"conds": {str(i): v for i, v in c.conds}, "levels": sorted(c.levels)}
            for c in open_set.cylinders
        ],
    }


def _parse_index(key: str) -> int:
    if not isinstance(key, str) or not key.isdigit():
        raise FormatError(f"chain index {key!r} must be a base-10 natural number")
    return int(key)


def open_from_json(data: object) -> SymbolicOpen:
    if not isinstance(data, dict):
        raise FormatError("symbolic open must be a JSON object")
    raw_thresholds = data.get("thresholds")
    if not isinstance(raw_thresholds, dict):
        raise FormatError('"thresholds" must be an object')
    default = _nat_or_none(raw_thresholds.get("default"), "threshold default")
    raw_exceptions = raw_thresholds.get("exceptions", {})
    if not isinstance(raw_exceptions, dict):
        raise FormatError('"exceptions" must be an object keyed by chain index')
    exceptions = {
        _parse_index(key): _nat_or_none(value, f"threshold exception {key}")
        for key, value in raw_exceptions.items()
    }
    all_level1 = data.get("allPhiLevel1", False)
    if not isinstance(all_level1, bool):
        raise FormatError('"allPhiLevel1" must be a boolean')
    raw_cylinders = data.get("extraPhi", [])
    if not isinstance(raw_cylinders, list):
        raise FormatError('"extraPhi" must be an array')
    cylinders = []
    for entry in raw_cylinders:
        if not isinstance(entry, dict) or not isinstance(entry.get("conds", {}), dict):
            raise FormatError(f"malformed extraPhi entry {entry!r}")
        conds = {}
        for key, value in entry.get("conds", {}).items():
            minimum = _nat_or_none(value, f"cylinder minimum {key}")
            if minimum is None:
                raise FormatError("cylinder minimums cannot be null")
            conds[_parse_index(key)] = minimum
        levels = entry.get("levels", [])
        if not isinstance(levels, list) or not all(lv in (0, 1) for lv in levels):
            raise FormatError('"levels" must be an array over {0, 1}')
        cylinders.append(Cylinder(tuple(conds.items()), frozenset(levels)))
    try:
        return SymbolicOpen(
            ThresholdRule(default, tuple(exceptions.items())), all_level1, tuple(cylinders)
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def family_to_json(family: OpenFamily) -> list:
    return [open_to_json(family.member(j)) for j in family.indices()]


def family_from_json(data: object) -> OpenFamily:
    if not isinstance(data, list) or not data:
        raise FormatError("a family file holds a nonempty JSON array of opens")
    return OpenFamily.from_list(open_from_json(entry) for entry in data)
