"""Catalog loading, tags, and the packaged structure-constant tables."""

import pytest
from fractions import Fraction

from altverify import catalog
from altverify.exactnum import sc
from altverify.formats import parse_algebra, serialize_algebra
from altverify.identities import check_variety
from altverify.sctensor import ConstraintViolation


def test_group_sizes():
    sizes = {g: len(m) for g, m in catalog.GROUPS.items()}
    assert sizes == {
        "comm-assoc": 11,
        "jordan": 8,
        "right-alt": 17,
        "assoc": 13,
        "semi-alt": 13,
        "lie": 4,
        "binary-lie-4": 2,
        "malcev-4": 1,
        "non-minus-one-one-4": 8,
        "semi-alt-4": 6,
        "perm-4": 1,
        "right-alt-4": 1,
    }
    assert len(catalog.ids()) == 85
    assert len(set(catalog.ids())) == 85


def test_spot_values():
    # retyped from the classification tables, not from the data files
    a12 = catalog.get("A12")
    assert a12.c(1, 2, 3) == sc(1)
    assert a12.c(2, 1, 3) == sc(-1)
    assert a12.c(1, 1, 1).is_zero()

    j12 = catalog.get("J12")
    assert j12.c(1, 3, 3) == sc(Fraction(1, 2))
    assert j12.c(3, 1, 3) == sc(Fraction(1, 2))  # commutative completion
    assert j12.c(3, 3, 1) == sc(1) and j12.c(3, 3, 2) == sc(1)

    l04 = catalog.get("L04")
    assert l04.c(1, 3, 1) == sc(-2)
    assert l04.c(3, 1, 1) == sc(2)  # anticommutative completion

    s11 = catalog.get("S11")
    assert s11.c(1, 1, 2) == sc(1) and s11.c(1, 1, 3) == sc(1)
    assert s11.c(2, 1, 2) == sc(-1)

    ss02 = catalog.get("SS02")
    assert ss02.c(4, 4, 1) == sc(-4) and ss02.c(4, 4, 4) == sc(2)

    bb03 = catalog.get("BB03")
    assert bb03.c(1, 2, 2) == sc(2) and bb03.c(1, 2, 4) == sc(1)
    assert bb03.c(2, 1, 4) == sc(1)


def test_aliases_share_tables():
    assert catalog.get("A14") == catalog.get("R02")
    assert catalog.get("A19") == catalog.get("R08")
    assert catalog.get("A14").label == "A14"
    # the four nonassociative right-alternative tables have no assoc alias
    aliased = set(catalog._ALIASES.values())
    assert set(catalog.GROUPS["right-alt"]) - aliased == {"R04", "R09", "R10", "R13"}


def test_parameter_specialization():
    r02 = catalog.get("R02", {"alpha": 2})
    assert r02.c(1, 2, 3) == sc(3)
    assert r02.c(2, 1, 3) == sc(-1)

    a14 = catalog.get("A14", {"alpha": 1})
    assert a14.c(1, 2, 3) == sc(2)
    assert a14.c(2, 1, 3).is_zero()

    with pytest.raises(ConstraintViolation):
        catalog.get("R02", {"alpha": 0})
    with pytest.raises(ConstraintViolation):
        catalog.get("B1", {"alpha": 2})
    # string values parse, and may mention the entry's own parameters
    flipped = catalog.get("R02", {"alpha": "-alpha"})
    assert flipped.c(1, 2, 3).render() == "-alpha + 1"
    with pytest.raises(KeyError):
        catalog.get("A07", {"alpha": 1})


def test_resolve_uri():
    assert catalog.resolve_uri("catalog:R09") == catalog.get("R09")
    a = catalog.resolve_uri("catalog:A14?alpha=2")
    assert a == catalog.get("A14", {"alpha": 2})
    assert catalog.resolve_uri("S05") == catalog.get("S05")
    with pytest.raises(KeyError):
        catalog.resolve_uri("catalog:NOPE")
    with pytest.raises(ValueError):
        catalog.resolve_uri("catalog:A14?alpha")


def test_round_trip_full_catalog():
    for ident in catalog.ids():
        ent = catalog.entry(ident)
        again = parse_algebra(serialize_algebra(ent.algebra))
        assert again == ent.algebra, ident
        assert again.label == ident
        assert {p.name for p in again.params} == {
            p.name for p in ent.algebra.params}, ident


def test_three_dim_tags_all_pass():
    checks = catalog.self_check(dim=3)
    failures = [(c.ident, c.tag) for c in checks if not c.ok]
    assert failures == []


def test_four_dim_tags_except_pinned_defect():
    checks = catalog.self_check(dim=4)
    failures = [(c.ident, c.tag) for c in checks if not c.ok]
    # the printed binary-perm example is 2-generated and nonassociative, so
    # its membership claim cannot hold; everything else verifies
    assert failures == [("P4", "binary-perm")]


def test_pinned_defect_is_structural():
    # the whole algebra is generated by two basis vectors, and it is not
    # associative, so no reading of the membership claim survives
    P = catalog.get("P4")
    e = P.basis()
    closure = P.subalgebra_closure([e[0], e[2]])
    assert len(closure) == 4
    assert not check_variety(P, "associative").member
    assert check_variety(P, "right-alternative").member


def test_claimed_distinct_pairs():
    pairs = catalog.claimed_distinct_pairs()
    assert len(pairs) == len(set(pairs))
    expected = sum(
        n * (n - 1) // 2 for n in (11, 8, 17, 13, 13, 4, 2, 1, 8, 6, 1, 1))
    assert len(pairs) == expected
    assert ("A12", "A13") in pairs
    # cross-list duplicates are never claimed distinct
    assert ("R02", "A14") not in pairs and ("A14", "R02") not in pairs


def test_swap_equivalences_change_basis():
    from altverify.sctensor import Algebra

    for ident in ("R02", "A14", "BB02", "BB05"):
        name, repl, mat = catalog.swap_equivalence(ident)
        generic = catalog.get(ident)
        swapped = generic.change_basis(mat)
        target = catalog.get(ident, {name: repl})
        assert swapped.constants == target.constants, ident
    assert catalog.swap_equivalence("A07") is None


def test_opposite_pairs_exact():
    for a, b in catalog.opposite_pairs():
        assert catalog.get(a).opposite().constants == catalog.get(b).constants


def test_tags_registry_names_valid():
    from altverify.identities import REGISTRY

    for ident in catalog.ids():
        for tag in catalog.entry(ident).tags:
            assert tag.lstrip("!") in REGISTRY, (ident, tag)
