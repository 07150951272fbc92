import pytest

from ordtop import (
    Ideal,
    NotAnIdeal,
    UnknownLabel,
    all_ideals,
    compact_elements,
    find_order_isomorphism,
    idl_poset,
    principal_ideal,
)
from ordtop.generate import all_posets

from helpers import antichain, chain, diamond, vshape


def test_ideals_of_small_posets_are_exactly_the_principal_ones():
    for p in [chain(3), antichain(2), diamond(), vshape()]:
        ideals = {i.members for i in all_ideals(p)}
        principal = {principal_ideal(p, e).members for e in p.elements}
        assert ideals == principal


def test_diamond_has_four_ideals():
    # {bot, l, r} is a lower set but not directed, so it does not count
    members = sorted(sorted(i.members) for i in all_ideals(diamond()))
    assert members == [
        ["bot"],
        ["bot", "l"],
        ["bot", "l", "r", "top"],
        ["bot", "r"],
    ]


def test_ideal_validation():
    p = chain(3)
    with pytest.raises(NotAnIdeal):
        Ideal(p, [])
    with pytest.raises(NotAnIdeal):
        Ideal(p, ["c2"])  # not a lower set
    with pytest.raises(NotAnIdeal):
        Ideal(vshape(), ["a", "b"])  # lower but not directed
    assert Ideal(p, ["c0", "c1"]).members == frozenset({"c0", "c1"})


def test_principal_ideal():
    d = diamond()
    assert principal_ideal(d, "l").members == frozenset({"bot", "l"})
    with pytest.raises(UnknownLabel):
        principal_ideal(d, "zzz")


def test_ideal_value_equality():
    p = chain(2)
    assert Ideal(p, ["c0"]) == principal_ideal(p, "c0")
    assert Ideal(p, ["c0"]) != principal_ideal(p, "c1")


def test_completion_is_isomorphic_to_a_finite_base():
    for n in range(1, 5):
        for p in all_posets(n):
            completion, embedding = idl_poset(p)
            assert len(completion) == len(p)
            assert find_order_isomorphism(p, completion) is not None
            assert set(embedding.values()) == set(completion.elements)


def test_completion_embedding_preserves_and_reflects_order():
    for p in [chain(4), diamond(), vshape()]:
        completion, embedding = idl_poset(p)
        for a in p.elements:
            for b in p.elements:
                assert p.le(a, b) == completion.le(embedding[a], embedding[b])


def test_completion_elements_are_compact():
    completion, _ = idl_poset(diamond())
    assert compact_elements(completion) == frozenset(completion.elements)
