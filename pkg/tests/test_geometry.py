"""Degeneration witnesses, closed-set certificates, barriers, and the solver."""

import pytest

from altverify import catalog
from altverify.exactnum import Matrix, Scalar, sc
from altverify.formats import (PolySystem, parse_degeneration,
                               serialize_degeneration)
from altverify.geometry import (CERTIFICATES, ORBIT_DIM_CLAIMS,
                                VARIETY_BARRIERS, borel_stability_sample,
                                check_orbit_claims, closed_set_member,
                                degeneration_labels, derivation_condition,
                                emit_representability_system,
                                load_degeneration, orbit_dimension,
                                solve_system_bounded, verify_barrier,
                                verify_certificate, verify_degeneration)

ALL_ROWS = [
    ("A13-to-A12", "A13", "A12"),
    ("A14-to-A13", "A14", "A13"),
    ("A23-to-A15", "A23", "A15"),
    ("A23-to-A22", "A23", "A22"),
    ("A24-to-A16", "A24", "A16"),
    ("A24-to-A21", "A24", "A21"),
    ("R09-to-A14", "R09", "A14"),
    ("R09-to-R13", "R09", "R13"),
    ("R10-to-R04", "R10", "R04"),
    ("S01-to-A14", "S01", "A14"),
    ("S03-to-A19", "S03", "A19"),
    ("S03-to-S02", "S03", "S02"),
    ("S03-to-S04", "S03", "S04"),
    ("S06-to-A24", "S06", "A24"),
    ("S06-to-S05", "S06", "S05"),
    ("S06-to-S07", "S06", "S07"),
    ("S09-to-A23", "S09", "A23"),
    ("S09-to-S08", "S09", "S08"),
    ("S09-to-S10", "S09", "S10"),
    ("S11-to-A20", "S11", "A20"),
    ("S11-to-S01", "S11", "S01"),
    ("S12-to-A17", "S12", "A17"),
    ("S13-to-A18", "S13", "A18"),
]


def test_packaged_rows_are_exactly_the_expected_ones():
    assert degeneration_labels() == tuple(sorted(r[0] for r in ALL_ROWS))


@pytest.mark.parametrize("label,source,target",
                         ALL_ROWS, ids=[r[0] for r in ALL_ROWS])
def test_degeneration_verifies_exactly(label, source, target):
    df = load_degeneration(label)
    assert (df.source, df.target) == (source, target)
    report = verify_degeneration(df)
    assert report.verified, report.reason


@pytest.mark.parametrize("label,source,target",
                         ALL_ROWS, ids=[r[0] for r in ALL_ROWS])
def test_degeneration_is_proper(label, source, target):
    # orbit dimension strictly drops along every row; the derivation algebra
    # strictly grows on all but one row, where the source is a one-parameter
    # family and the lost parameter supplies the orbit-dimension slack
    assert orbit_dimension(source) > orbit_dimension(target)
    if label == "A14-to-A13":
        assert not derivation_condition(source, target)
    else:
        assert derivation_condition(source, target), (source, target)


def test_degeneration_files_round_trip():
    for label in degeneration_labels():
        df = load_degeneration(label)
        back = parse_degeneration(serialize_degeneration(df))
        assert back == df


def test_degeneration_rejects_wrong_target():
    df = load_degeneration("S03-to-S02")
    broken = type(df)(df.label, df.dim, df.source, "S04",
                      df.tparams, df.bindings, df.rows)
    report = verify_degeneration(broken)
    assert not report.verified
    assert "but target has" in report.reason


def test_orbit_dimension_claims_all_match():
    assert check_orbit_claims() == []
    # spot values, retyped
    assert orbit_dimension("A07") == 9
    assert orbit_dimension("A14") == 6
    assert orbit_dimension("S11") == 8
    assert ORBIT_DIM_CLAIMS["semi-alt"]["S03"] == 7


CERT_EXPECTED = {
    "perm-A24": True,
    "assoc-A20": True,
    "assoc-A23": True,
    "right-alt-R09": False,   # A19 satisfies every printed condition
    "right-alt-R10": True,
    "semi-alt-S06": True,
    "semi-alt-S11": False,    # printed equality fails on the S11 table itself
}


@pytest.mark.parametrize("name", sorted(CERTIFICATES))
def test_certificate_outcomes_are_pinned(name):
    report = verify_certificate(name)
    assert report.verified == CERT_EXPECTED[name], report


def test_certificate_r09_defect_is_exactly_a19():
    report = verify_certificate("right-alt-R09")
    bad = [ident for ident, ok, _ in report.targets_ok if not ok]
    assert bad == ["A19"]
    good = [ident for ident, ok, _ in report.targets_ok if ok]
    assert good == ["A20", "A23", "A24"]


def test_certificate_s11_defect_is_the_source_membership():
    report = verify_certificate("semi-alt-S11")
    assert [(i, bool(r)) for i, r in report.sources_ok] == [("S11", False)]
    # the target exclusion half still works
    assert [(i, ok) for i, ok, _ in report.targets_ok] == [("S03", True)]


def test_certificate_s06_contains_both_opposite_sources():
    report = verify_certificate("semi-alt-S06")
    assert [(i, bool(r)) for i, r in report.sources_ok] == [
        ("S06", True), ("S09", True)]


def test_closed_set_membership_is_exact():
    cert = CERTIFICATES["perm-A24"]
    # an upper-triangular basis change (rows are the new basis vectors)
    # keeps the representative inside the closed set
    assert closed_set_member(catalog.get("A24").change_basis(
        Matrix([[sc(1), sc(2), sc(0)],
                [sc(0), sc(1), sc(-1)],
                [sc(0), sc(0), sc(3)]])), cert)
    assert not closed_set_member(catalog.get("A14"), cert)


BOREL_EXPECTED = {
    "perm-A24": "stable",
    "assoc-A20": "stable",
    "assoc-A23": "stable",
    "right-alt-R09": "stable",
    "right-alt-R10": "stable",
    "semi-alt-S06": "stable",
    "semi-alt-S11": "no-member",
}


@pytest.mark.parametrize("name", sorted(CERTIFICATES))
def test_borel_stability_sample(name):
    report = borel_stability_sample(name, trials=100, seed=0)
    assert report.status == BOREL_EXPECTED[name], report


def test_barriers_all_verify():
    assert len(VARIETY_BARRIERS) == 20
    for barrier in VARIETY_BARRIERS:
        report = verify_barrier(barrier)
        assert report.verified, (barrier, report.reason)


def test_representability_sampler_stays_inconclusive():
    # a modest sample count here; the full ten-thousand-sample run is part
    # of the acceptance sweep
    system = emit_representability_system(
        catalog.get("A14", {"alpha": 2}), CERTIFICATES["perm-A24"])
    report = solve_system_bounded(system, samples=500, seed=0, gb_steps=0)
    assert report.status == "inconclusive"
    assert report.samples == 500


def test_solver_toy_outcomes():
    x = Scalar.param("x")
    y = Scalar.param("y")
    infeasible = PolySystem("t1", ["x"], [x - sc(1), x - sc(2)])
    rep = solve_system_bounded(infeasible, samples=50, seed=0)
    assert rep.status == "infeasible"

    feasible = PolySystem("t2", ["x", "y"], [x + y - sc(3), x - y - sc(1)])
    rep = solve_system_bounded(feasible, samples=50, seed=0)
    assert rep.status == "feasible"
    assert (rep.solution["x"] - sc(2)).is_zero()
    assert (rep.solution["y"] - sc(1)).is_zero()

    # quadratic with no rational solution in range but a real one: the
    # bounded run reports inconclusive rather than guessing
    hard = PolySystem("t3", ["x"], [x * x - sc(2)])
    rep = solve_system_bounded(hard, samples=50, seed=0, gb_steps=50)
    assert rep.status == "inconclusive"


def test_solver_groebner_catches_hidden_contradiction():
    x = Scalar.param("x")
    y = Scalar.param("y")
    # x*y = 1 forces x nonzero, but x^2 = 0 forces x = 0
    system = PolySystem("t4", ["x", "y"], [x * y - sc(1), x * x])
    rep = solve_system_bounded(system, samples=20, seed=0, gb_steps=200)
    assert rep.status == "infeasible"
