import pytest

from stuquandle.diagram import (
    Crossing,
    CrossingKind,
    InvalidDiagramError,
    StuckDiagram,
    UnknownFixtureError,
    braid_closure,
    component_cycles,
    components,
    faces,
    fixture,
    fixture_source,
    fixtures,
    from_ports,
    is_planar,
    move_pairs,
    problems,
    renumber,
    semiarcs,
    signed_sticking_number,
    sticking_number,
    validate,
)

KNOTS = ["0k+_1", "0k-_1", "2k+_1", "2k-_1", "3k+_1", "3k-_1", "4k+_1", "4k-_1"]


def test_hopf_validates():
    info = validate(fixture("hopf_stuck"))
    assert (info.components, info.semiarcs) == (2, 4)


def test_duplicated_input_role():
    d = from_ports([("ClassicalA", 0, 0, 1, 2)])
    with pytest.raises(InvalidDiagramError) as info:
        validate(d)
    assert any("duplicated input role" in e for e in info.value.errors)


def test_dangling_semiarc():
    d = from_ports([("ClassicalA", 0, 1, 1, 2)])
    errs = problems(d)
    assert any("dangling semiarc 0" in e for e in errs)
    assert any("dangling semiarc 2" in e for e in errs)


def test_semiarc_used_twice():
    d = from_ports([("ClassicalA", 0, 1, 0, 1), ("ClassicalA", 0, 1, 0, 1)])
    assert any("used 2 times" in e for e in problems(d))


def test_empty_and_free_circles():
    assert validate(StuckDiagram()).components == 0
    info = validate(StuckDiagram((), 1))
    assert (info.components, info.semiarcs) == (1, 1)
    with pytest.raises(InvalidDiagramError):
        validate(StuckDiagram((), -1))


def test_infinity_curve():
    d = from_ports([("StuckNegative", 0, 1, 0, 1)])
    assert components(d) == 1
    assert semiarcs(d) == 2
    assert component_cycles(d) == [[0, 1]]


def test_sticking_numbers():
    assert signed_sticking_number(fixture("S1")) == -1
    assert signed_sticking_number(fixture("S2")) == 1
    for name in KNOTS:
        expected = 1 if "+" in name else -1
        assert signed_sticking_number(fixture(name)) == expected
        assert sticking_number(fixture(name)) == 1
    assert signed_sticking_number(fixture("rna1_closed")) == -2
    assert signed_sticking_number(fixture("rna2_closed")) == -2
    assert signed_sticking_number(braid_closure("A1 A1 A1", 2)) == 0


def test_fixture_components():
    assert components(fixture("rna1_closed")) == 1
    assert components(fixture("rna2_closed")) == 1
    for name in KNOTS:
        assert components(fixture(name)) == 1
    for name in ("S1", "S2", "0l+_1", "0l-_1"):
        assert components(fixture(name)) == 2


def test_all_fixtures_valid_and_planar():
    for name, d in fixtures().items():
        validate(d)
        assert is_planar(d), name
        assert fixture_source(name)


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError):
        fixture("no-such-diagram")
    with pytest.raises(UnknownFixtureError):
        fixture_source("no-such-diagram")


def test_move_pairs_shipped():
    pairs = move_pairs()
    names = {m for m, _, _ in pairs}
    assert {"omega1a", "omega2a", "omega3a", "omega4a+", "omega4a-", "omega4e+",
            "omega4e-", "omega5a+", "omega5a-"} <= names
    for _, left, right in pairs:
        assert components(left) == components(right)


def test_planarity_detects_bad_rotation():
    # trefoil-like 3-crossing closure is planar; the same ports with one
    # crossing's outputs swapped are not a plane curve
    good = braid_closure("A1 A1 A1", 2)
    assert is_planar(good)
    assert faces(good) == 5
    c = good.crossings
    swapped = StuckDiagram((Crossing(c[0].kind, c[0].in_nw, c[0].in_ne, c[0].out_se, c[0].out_sw),) + c[1:])
    assert not is_planar(swapped)


def test_braid_closure_shapes():
    d = braid_closure("A1 B2", 3)
    assert components(d) == 1
    assert braid_closure("", 2).free_circles == 2
    assert components(braid_closure("A1", 3)) == 2  # one untouched strand
    with pytest.raises(ValueError):
        braid_closure("A3", 3)


def test_json_round_trip():
    for d in fixtures().values():
        assert StuckDiagram.from_json(d.to_json()) == d
    assert fixture("hopf_stuck").label(1) == "x"


def test_malformed_json():
    with pytest.raises(InvalidDiagramError):
        StuckDiagram.from_dict({"crossings": [{"kind": "ClassicalA"}]})
    with pytest.raises(ValueError):
        StuckDiagram.from_dict({"crossings": [{"kind": "Virtual", "in_nw": 0, "in_ne": 1, "out_sw": 0, "out_se": 1}]})


def test_mirror_swaps_kinds():
    d = fixture("2k+_1").mirror()
    assert signed_sticking_number(d) == -1
    assert CrossingKind.CLASSICAL_A.mirror() is CrossingKind.CLASSICAL_B
    assert d.mirror() == fixture("2k+_1")


def test_renumber_and_disjoint_union():
    d = fixture("S1").relabel({0: 10, 1: 11, 2: 12, 3: 13})
    assert renumber(d).semiarc_ids() == [0, 1, 2, 3]
    u = fixture("S1").disjoint_union(fixture("0k-_1"))
    info = validate(u)
    assert (info.components, info.semiarcs) == (3, 6)
