"""Recovering a domain model of one factor of a finite product space.

Starting point: an algebraic domain whose maximal points are labeled, via a
bijection, by the pairs of a product X x Y carrying the relative Scott
topology.  From that data the pipeline assembles the auxiliary poset of
admissible triples (an open box around a compact element's maximal shadow),
takes its ideal completion, and certifies that the maximal points of the
completion are exactly the ideals attached to the points of X, carrying the
X topology.  Every step of the argument is re-checked at run time; nothing
is trusted because it "must" hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DuplicateLabel,
    FormatError,
    InvalidModel,
    NotAnIdeal,
    NotAProductTopology,
    TooLarge,
    UnknownLabel,
    VerificationFailed,
)
from .ideals import Ideal, idl_poset
from .poset import FinitePoset, Label, build_poset, label_text, poset_from_json, poset_to_json
from .report import Report
from .topology import (
    DEFAULT_MAX_ELEMENTS,
    Topology,
    compact_elements,
    is_algebraic,
    is_ideal_domain,
    is_scott_closed,
    relative_topology,
)


@dataclass(frozen=True)
class QTriple:
    """An admissible triple: open box u x v inside a compact element's shadow.

    ``u`` is a nonempty open set of X labels, ``v`` an open set of Y labels
    containing the base point, ``k`` a compact element of the model poset.
    """

    u: frozenset
    v: frozenset
    k: Label

    def __str__(self) -> str:
        u = ",".join(sorted(map(str, self.u)))
        v = ",".join(sorted(map(str, self.v)))
        return f"(U={{{u}}},V={{{v}}},k={label_text(self.k)})"


def split_product_topology(
    topology: Topology, xs: Iterable, ys: Iterable
) -> tuple[Topology, Topology]:
    """Factor a topology on pair points, or raise NotAProductTopology.

    The candidate factors are the section families (slices of opens along
    each coordinate); these are the only possible factors, so the check is
    complete: the topology is a product exactly when every open satisfies
    the pointwise box condition against the sections and every box is open.
    """
    xs, ys = tuple(xs), tuple(ys)
    pairs = frozenset((x, y) for x in xs for y in ys)
    if frozenset(topology.space) != pairs:
        raise InvalidModel("topology space is not the expected set of pairs")
    tx_opens = {frozenset(x for x in xs if (x, y) in w) for w in topology.opens for y in ys}
    ty_opens = {frozenset(y for y in ys if (x, y) in w) for w in topology.opens for x in xs}
    tx = Topology(xs, tx_opens | {frozenset(), frozenset(xs)})
    ty = Topology(ys, ty_opens | {frozenset(), frozenset(ys)})
    for u in tx.sorted_opens():
        for v in ty.sorted_opens():
            box = frozenset((x, y) for x in u for y in v)
            if box not in topology.opens:
                raise NotAProductTopology(
                    f"box {sorted(map(str, u))} x {sorted(map(str, v))} is not open"
                )
    for w in topology.sorted_opens():
        for x, y in w:
            if not any(
                x in u and y in v and all((a, b) in w for a in u for b in v)
                for u in tx.opens
                for v in ty.opens
            ):
                raise NotAProductTopology(
                    f"open containing ({x}, {y}) holds no open box around it"
                )
    return tx, ty


class ProductModel:
    """An algebraic domain model of a finite product space.

    ``max_labeling`` must biject the maximal elements of the poset with the
    pairs of label_x x label_y; the base point ``y0`` is a Y label.  The
    constructor validates all of it, including that the relative Scott
    topology on the maximal points, transported along the labeling, is the
    product of its factor topologies.
    """

    def __init__(
        self,
        poset: FinitePoset,
        label_x: Iterable,
        label_y: Iterable,
        max_labeling: Mapping[Label, tuple],
        y0,
        *,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
    ):
        self.poset = poset
        self.label_x = tuple(label_x)
        self.label_y = tuple(label_y)
        for labels, name in ((self.label_x, "X"), (self.label_y, "Y")):
            if not labels:
                raise InvalidModel(f"factor {name} has no labels")
            if len(set(labels)) != len(labels):
                raise DuplicateLabel(f"factor {name} repeats a label")
        if y0 not in self.label_y:
            raise UnknownLabel(f"base point {y0!r} is not a Y label")
        self.y0 = y0

        maximal = poset.maximal_elements()
        keys = frozenset(max_labeling)
        if keys != maximal:
            stray = sorted(map(str, keys ^ maximal))
            raise InvalidModel(f"labeling keys differ from the maximal elements: {stray}")
        pairs = {}
        for element, pair in max_labeling.items():
            pair = tuple(pair)
            if len(pair) != 2 or pair[0] not in self.label_x or pair[1] not in self.label_y:
                raise InvalidModel(f"labeling value {pair!r} is not an (x, y) pair")
            pairs[element] = pair
        wanted = {(x, y) for x in self.label_x for y in self.label_y}
        if set(pairs.values()) != wanted or len(set(pairs.values())) != len(pairs):
            raise InvalidModel("labeling is not a bijection onto the label pairs")
        self.max_labeling = pairs
        self.pair_to_max = {pair: element for element, pair in pairs.items()}

        if not is_algebraic(poset):
            raise InvalidModel("the poset is not an algebraic domain")
        transported = self.transported_max_topology(max_elements)
        self.topology_x, self.topology_y = split_product_topology(
            transported, self.label_x, self.label_y
        )

    def transported_max_topology(self, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Topology:
        """Relative Scott topology on the maxima, renamed to label pairs."""
        rel = relative_topology(self.poset, self.poset.maximal_elements(), max_elements)
        space = [(x, y) for x in self.label_x for y in self.label_y]
        opens = {frozenset(self.max_labeling[e] for e in u) for u in rel.opens}
        return Topology(space, opens)

    def max_shadow(self, k: Label) -> frozenset:
        """Pairs labeling the maximal elements above an element."""
        maximal = self.poset.maximal_elements()
        return frozenset(
            self.max_labeling[e] for e in self.poset.up_set([k]) if e in maximal
        )

    def __repr__(self) -> str:
        return (
            f"ProductModel({len(self.poset)} elements, "
            f"{len(self.label_x)}x{len(self.label_y)} maxima)"
        )


def factor_topologies(model: ProductModel) -> tuple[Topology, Topology]:
    """The validated factor topologies (computed at construction)."""
    return model.topology_x, model.topology_y


def build_Q(model: ProductModel, *, max_candidates: int = 200_000) -> FinitePoset:
    """The poset of admissible triples under the approximation order.

    Triples are enumerated lexicographically by (k, u, v) in the canonical
    label orders.  The order puts t1 below t2 when k1 <= k2 and the maximal
    shadow of k2 fits inside t1's box; its partial-order axioms are verified
    here explicitly before the poset is built.
    """
    p = model.poset
    compact = sorted(compact_elements(p), key=p.index)
    opens_x = [u for u in model.topology_x.sorted_opens() if u]
    opens_y = [v for v in model.topology_y.sorted_opens() if model.y0 in v]
    if len(compact) * len(opens_x) * len(opens_y) > max_candidates:
        raise TooLarge(
            f"{len(compact) * len(opens_x) * len(opens_y)} candidate triples "
            f"exceed the bound {max_candidates}"
        )

    shadows = {k: model.max_shadow(k) for k in compact}
    triples: list[QTriple] = []
    boxes: dict[QTriple, frozenset] = {}
    for k in compact:
        shadow = shadows[k]
        for u in opens_x:
            for v in opens_y:
                box = frozenset((x, y) for x in u for y in v)
                if box <= shadow:
                    t = QTriple(u, v, k)
                    triples.append(t)
                    boxes[t] = box

    def below(t1: QTriple, t2: QTriple) -> bool:
        return p.le(t1.k, t2.k) and shadows[t2.k] <= boxes[t1]

    rel = {(t1, t2) for t1 in triples for t2 in triples if below(t1, t2)}
    for t in triples:
        if (t, t) not in rel:
            raise VerificationFailed(f"triple order is not reflexive at {t}")
    for t1, t2 in rel:
        if t1 != t2 and (t2, t1) in rel:
            raise VerificationFailed(f"triple order is not antisymmetric at {t1}, {t2}")
    for t1, t2 in rel:
        for t3 in triples:
            if (t2, t3) in rel and (t1, t3) not in rel:
                raise VerificationFailed(
                    f"triple order is not transitive at {t1}, {t2}, {t3}"
                )
    return FinitePoset.from_relation(triples, rel)


def ideal_J(model: ProductModel, x, q_poset: FinitePoset) -> Ideal:
    """The triples whose X open contains the point; checked to be an ideal."""
    if x not in model.label_x:
        raise UnknownLabel(f"{x!r} is not an X label")
    members = frozenset(t for t in q_poset.elements if x in t.u)
    try:
        return Ideal(q_poset, members)
    except NotAnIdeal as exc:
        raise NotAnIdeal(f"triples selected by {x!r} are not an ideal: {exc}") from exc


def box_intersection_pair(
    model: ProductModel, members: Iterable[QTriple]
) -> tuple[frozenset, frozenset]:
    """Both descriptions of the core of a set of triples, as pair sets.

    First: the intersection of the open boxes.  Second: the intersection of
    the maximal shadows.  For an ideal of the triple poset the two agree.
    """
    members = list(members)
    pairs = frozenset((x, y) for x in model.label_x for y in model.label_y)
    box_core, shadow_core = pairs, pairs
    for t in members:
        box_core &= frozenset((x, y) for x in t.u for y in t.v)
        shadow_core &= model.max_shadow(t.k)
    return box_core, shadow_core


def covering_intersection(model: ProductModel, q_poset: FinitePoset, x) -> frozenset:
    """Intersection of the X opens over the triples selected by a point."""
    members = [t for t in q_poset.elements if x in t.u]
    out = frozenset(model.label_x)
    for t in members:
        out &= t.u
    return out


def verify_claims(
    model: ProductModel,
    q_poset: FinitePoset,
    completion: FinitePoset,
    selected: Mapping[object, Ideal],
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Report:
    """Re-check every claim of the factorization on concrete data.

    Raises VerificationFailed naming the first claim that does not hold;
    on success the returned report lists one line per claim.
    """
    report = Report()
    report.info("q-count", len(q_poset))

    # the triple order must be a partial order; FinitePoset construction
    # enforces antisymmetry, the rest is re-checked against the raw masks
    ok1 = all(q_poset.le(t, t) for t in q_poset.elements)
    for t1 in q_poset.elements:
        for t2 in q_poset.elements:
            if not q_poset.le(t1, t2):
                continue
            if q_poset.le(t2, t1) and t1 != t2:
                ok1 = False
            for t3 in q_poset.elements:
                if q_poset.le(t2, t3) and not q_poset.le(t1, t3):
                    ok1 = False
    report.check("claim-partial-order", ok1)

    # each selected family must be an ideal of the triple poset
    ok2, witness2 = True, None
    for x in model.label_x:
        ideal = selected.get(x)
        if ideal is None or ideal.members != frozenset(
            t for t in q_poset.elements if x in t.u
        ):
            ok2, witness2 = False, x
            break
        down = q_poset.down_set(ideal.members)
        if down != ideal.members or not q_poset.is_directed(ideal.members):
            ok2, witness2 = False, x
            break
    report.check("claim-selected-are-ideals", ok2, witness2)

    maximal_ideals = completion.maximal_elements()
    selected_sets = {x: frozenset(selected[x].members) for x in selected}
    image = frozenset(selected_sets.values())

    # every maximal ideal must be a selected one
    missing = [m for m in maximal_ideals if m not in image]
    report.check(
        "claim-max-ideals-are-selected",
        not missing,
        None if not missing else sorted(map(str, next(iter(missing)))),
    )

    # every selected ideal must be maximal, so the two families agree
    not_max = [x for x, s in sorted(selected_sets.items(), key=str) if s not in maximal_ideals]
    report.check("claim-selected-are-maximal", not not_max, not_max[0] if not_max else None)
    report.check(
        "claim-max-point-bijection",
        len(set(selected_sets.values())) == len(model.label_x)
        and image == frozenset(maximal_ideals),
    )

    rel = relative_topology(completion, maximal_ideals, max_elements)

    # the point-to-ideal map must be continuous (preimages of relative
    # opens are opens of the X factor)
    ok5, witness5 = True, None
    for w in rel.sorted_opens():
        preimage = frozenset(x for x in model.label_x if selected_sets[x] in w)
        if preimage not in model.topology_x.opens:
            ok5, witness5 = False, sorted(map(str, preimage))
            break
    report.check("claim-map-continuous", ok5, witness5)

    # the map must also be open (images of X opens are relatively open)
    ok6, witness6 = True, None
    images = set()
    for u in model.topology_x.sorted_opens():
        image_set = frozenset(selected_sets[x] for x in u)
        images.add(image_set)
        if image_set not in rel.opens:
            ok6, witness6 = False, sorted(map(str, u))
            break
    report.check("claim-map-open", ok6, witness6)
    report.check("topology-transport-exact", ok5 and ok6 and images == set(rel.opens))
    report.info("max-count", len(maximal_ideals))

    if not report.ok:
        first = report.failures()[0]
        raise VerificationFailed(f"{first} does not hold on this model")
    return report


def factor_model(
    model: ProductModel, *, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> tuple[FinitePoset, dict, Report]:
    """Domain model of the X factor: completion, point map, and certificate."""
    q_poset = build_Q(model)
    completion, _embedding = idl_poset(q_poset, max_elements)
    try:
        selected = {x: ideal_J(model, x, q_poset) for x in model.label_x}
    except NotAnIdeal as exc:
        raise VerificationFailed(f"claim-selected-are-ideals does not hold: {exc}") from exc
    report = verify_claims(model, q_poset, completion, selected,
                           max_elements=max_elements)
    point_map = {x: frozenset(selected[x].members) for x in model.label_x}
    return completion, point_map, report


def lower_set_model(
    model: ProductModel, y, *, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> tuple[FinitePoset, Report]:
    """Down set of one Y fiber of the maxima, with its structural report.

    When the ambient poset is an ideal domain the down set of a closed set
    of maximal points stays one; the report records that, plus whether the
    fiber's maxima carry the X factor topology.
    """
    if y not in model.label_y:
        raise UnknownLabel(f"{y!r} is not a Y label")
    report = Report()
    report.info("fiber", y)
    targets = frozenset(model.pair_to_max[(x, y)] for x in model.label_x)
    lower = model.poset.down_set(targets)
    report.info("lower-set-size", len(lower))
    exhaustive = len(model.poset) <= 12
    report.check(
        "scott-closed",
        is_scott_closed(model.poset, lower, exhaustive=exhaustive, max_elements=max_elements),
    )
    ambient_ideal = is_ideal_domain(model.poset)
    report.info("ambient-ideal-domain", "yes" if ambient_ideal else "no")
    sub = model.poset.restrict(lower)
    sub_ideal = is_ideal_domain(sub)
    if ambient_ideal:
        report.check("lower-set-ideal-domain", sub_ideal)
    else:
        report.info("lower-set-ideal-domain", "yes" if sub_ideal else "no")
    sub_max = sub.maximal_elements()
    fiber_ok = report.check(
        "max-equals-fiber",
        sub_max == targets,
        sorted(map(str, sub_max ^ targets)) or None,
    )
    if fiber_ok:
        rel = relative_topology(sub, sub_max, max_elements)
        renamed = Topology(
            [x for x in model.label_x],
            {frozenset(model.max_labeling[e][0] for e in u) for u in rel.opens},
        )
        report.check("max-homeomorphic-to-factor", renamed == model.topology_x)
    else:
        report.check("max-homeomorphic-to-factor", False, "fiber mismatch")
    return sub, report


def algebraic_model(p: FinitePoset, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FinitePoset:
    """An algebraic domain with the same maximal point space.

    The ideal completion always works; the homeomorphism between the two
    maximal point spaces is verified here rather than assumed.
    """
    completion, embedding = idl_poset(p, max_elements)
    maximal = p.maximal_elements()
    comp_max = completion.maximal_elements()
    sent = {e: embedding[e] for e in maximal}
    if frozenset(sent.values()) != comp_max or len(set(sent.values())) != len(maximal):
        raise VerificationFailed("maximal points do not biject with maximal ideals")
    rel_p = relative_topology(p, maximal, max_elements)
    rel_c = relative_topology(completion, comp_max, max_elements)
    transported = {frozenset(sent[e] for e in u) for u in rel_p.opens}
    if transported != set(rel_c.opens):
        raise VerificationFailed("maximal point topologies do not correspond")
    return completion


# -- a concrete family of models ---------------------------------------------


def chain_pairs_model(depth: int, extra_covers: Iterable[tuple[str, str]] = ()) -> ProductModel:
    """A finite model of a discrete (chain-prefix x two-point) space.

    A chain 0 < 1 < ... < depth < inf sits below the single pair element
    (0,1); every other pair element (n,b) is isolated, hence maximal.  The
    order deliberately carries nothing else; ``extra_covers`` is the hook
    for experimenting with denser variants without changing this default.
    """
    if depth < 0:
        raise InvalidModel("depth must be at least 0")
    chain = [str(i) for i in range(depth + 1)]
    xs = list(chain)
    ys = ["0", "1"]
    pair_labels = {(x, b): f"({x},{b})" for x in xs for b in ys}
    elements = chain + ["inf"] + [pair_labels[(x, b)] for x in xs for b in ys]
    covers = [(chain[i], chain[i + 1]) for i in range(depth)]
    covers.append((chain[-1], "inf"))
    covers.append(("inf", pair_labels[("0", "1")]))
    covers.extend(extra_covers)
    poset = build_poset(elements, covers)
    labeling = {pair_labels[(x, b)]: (x, b) for x in xs for b in ys}
    return ProductModel(poset, xs, ys, labeling, "0")


# -- file format ---------------------------------------------------------------


def model_to_json(model: ProductModel) -> dict:
    return {
        "poset": poset_to_json(model.poset),
        "labelX": list(model.label_x),
        "labelY": list(model.label_y),
        "maxLabeling": {
            str(e): [x, y] for e, (x, y) in sorted(model.max_labeling.items(), key=str)
        },
        "y0": model.y0,
    }


def model_from_json(data: object, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> ProductModel:
    if not isinstance(data, dict):
        raise FormatError("model file must hold a JSON object")
    poset = poset_from_json(data.get("poset"))
    label_x = data.get("labelX")
    label_y = data.get("labelY")
    if not isinstance(label_x, list) or not isinstance(label_y, list):
        raise FormatError('"labelX" and "labelY" must be arrays')
    raw = data.get("maxLabeling")
    if not isinstance(raw, dict):
        raise FormatError('"maxLabeling" must map maximal elements to [x, y] pairs')
    labeling = {}
    for element, pair in raw.items():
        if not (isinstance(pair, list) and len(pair) == 2):
            raise FormatError(f"malformed maxLabeling entry {pair!r}")
        labeling[element] = (pair[0], pair[1])
    if "y0" not in data:
        raise FormatError('"y0" is required')
    return ProductModel(poset, label_x, label_y, labeling, data["y0"],
                        max_elements=max_elements)
