import pytest

from config.engine_config import EngineConfig
from errors import AlreadyInRing, NotFoundWithinBound, NotInRadical, NotRegulousError, PresentationError
from extension import VarietyPresentation
from ideal_engine import Ideal, equal_radical
from poly_core import PolynomialRing
from poly_parser import PolynomialParser
from regulous import Fraction
from seminorm import (
    CandidateStatus,
    SeminormTower,
    adjoin,
    nullstellensatz_witness,
    seminormalize_with_candidates,
    slice_polynomials,
    swan_scan,
)


def frac(parse, ring, p, q="1"):
    return Fraction(parse(ring, p), parse(ring, q))


@pytest.fixture
def cusp_tower(cusp, parse):
    return adjoin(SeminormTower.trivial(cusp), frac(parse, cusp.ring, "y", "x"))


# -- towers ---------------------------------------------------------------------------------------


def test_adjoining_y_over_x_normalizes_the_cusp(cusp_tower, parse):
    assert cusp_tower.height == 1
    assert cusp_tower.adjoined == ("t1",)
    assert cusp_tower.ring.variables == ("t1", "x", "y")
    relations = cusp_tower.current.relations
    for g in ("t1^2 - x", "t1^3 - y", "x*t1 - y"):
        assert relations.contains(parse(cusp_tower.ring, g))
    assert all(report.holds for report in cusp_tower.check_chain())


def test_next_variable_counts_the_height(cusp, cusp_tower):
    assert SeminormTower.trivial(cusp).next_variable() == "t1"
    assert cusp_tower.next_variable() == "t2"


def test_prefixes(cusp, cusp_tower):
    assert cusp_tower.prefix(1) is cusp_tower
    base = cusp_tower.prefix(0)
    assert base.height == 0
    assert base.ring.variables == cusp.ring.variables
    with pytest.raises(PresentationError):
        cusp_tower.prefix(2)


def test_adjoining_a_ring_element_is_refused(cusp, cusp_tower, parse):
    with pytest.raises(AlreadyInRing):
        adjoin(SeminormTower.trivial(cusp), frac(parse, cusp.ring, "x"))
    with pytest.raises(AlreadyInRing):
        adjoin(cusp_tower, frac(parse, cusp.ring, "y", "x"))


def test_adjoining_a_non_regulous_fraction_is_refused(sextic, parse):
    with pytest.raises(NotRegulousError):
        adjoin(SeminormTower.trivial(sextic), frac(parse, sextic.ring, "y", "x^2"))


def test_sextic_candidates(sextic, parse):
    candidates = [frac(parse, sextic.ring, "y", "x"), frac(parse, sextic.ring, "y", "x^2")]
    report = seminormalize_with_candidates(sextic, candidates)
    assert [o.status for o in report.outcomes] == [CandidateStatus.ADJOINED, CandidateStatus.NOT_REGULOUS]
    assert report.outcomes[0].variable == "t1"
    assert report.tower.height == 1
    assert [o.fraction for o in report.adjoined] == candidates[:1]


def test_no_candidates_leaves_the_variety_alone(cusp):
    report = seminormalize_with_candidates(cusp, [])
    assert report.tower.height == 0
    assert report.outcomes == []
    assert report.to_frame().empty


def test_rerunning_the_candidates_adjoins_nothing(cusp, parse):
    candidates = [frac(parse, cusp.ring, "y", "x")]
    first = seminormalize_with_candidates(cusp, candidates)
    second = seminormalize_with_candidates(first.tower, candidates)
    assert second.tower.height == 1
    assert [o.status for o in second.outcomes] == [CandidateStatus.ALREADY_IN_RING]


def test_report_frame(cusp, parse):
    candidates = [frac(parse, cusp.ring, "y", "x"), frac(parse, cusp.ring, "y^2", "x^2")]
    frame = seminormalize_with_candidates(cusp, candidates).to_frame()
    assert list(frame.columns) == ["candidate", "status", "variable", "reason"]
    assert frame["status"].tolist() == ["Adjoined", "AlreadyInRing"]
    assert frame.loc[0, "candidate"] == "y / x"
    assert frame.loc[0, "variable"] == "t1"


def test_budget_overrun_is_recorded_as_undecided(cusp, parse):
    with EngineConfig.use({"budget": 1}):
        report = seminormalize_with_candidates(cusp, [frac(parse, cusp.ring, "y", "x")])
    assert report.outcomes[0].status is CandidateStatus.UNDECIDED
    assert report.tower.height == 0


@pytest.fixture(scope="module")
def two_cusps():
    ring = PolynomialRing.of(["x", "y", "z", "w"])
    parser = PolynomialParser(ring)
    X = VarietyPresentation.from_generators(ring, [parser.parse("y^2 - x^3"), parser.parse("w^2 - z^3")])
    return X, [Fraction(parser.parse("y"), parser.parse("x")), Fraction(parser.parse("w"), parser.parse("z"))]


@pytest.mark.slow
def test_height_two_tower_over_two_cusps(two_cusps):
    X, candidates = two_cusps
    report = seminormalize_with_candidates(X, candidates)
    assert [o.status for o in report.outcomes] == [CandidateStatus.ADJOINED] * 2
    tower = report.tower
    assert tower.adjoined == ("t2", "t1")
    assert [r.holds for r in tower.check_chain()] == [True, True]


@pytest.mark.slow
def test_adjoining_order_does_not_change_the_tower(two_cusps):
    X, candidates = two_cusps
    forward = seminormalize_with_candidates(X, candidates).tower
    backward = seminormalize_with_candidates(X, candidates[::-1]).tower
    ring = forward.ring
    swapped = [g.rename({"t1": "t2", "t2": "t1"}, ring) for g in backward.current.relations.generators]
    assert equal_radical(forward.current.relations, Ideal(ring, swapped))


# -- Swan scan ------------------------------------------------------------------------------------


def test_slice_polynomials_skip_constants(variety, parse):
    ring = variety("s").ring
    assert set(slice_polynomials(ring, 1, (0, 1))) == {parse(ring, "s"), parse(ring, "s + 1")}
    assert len(slice_polynomials(ring, 2, (0, 1))) == 6


def test_swan_scan_finds_the_cusp_pair(cusp, parse):
    found = swan_scan(cusp, 2)
    assert (parse(cusp.ring, "y"), parse(cusp.ring, "x")) in [(pair.p, pair.q) for pair in found]


def test_swan_scan_on_the_line_finds_nothing(variety):
    assert swan_scan(variety("s"), 3) == []


@pytest.mark.slow
def test_swan_scan_on_the_axes_finds_nothing(variety):
    # x^2 and x^3 are a pair whose denominator vanishes on the y-axis
    assert swan_scan(variety("x, y", "x*y"), 3, (0, 1)) == []


# -- Nullstellensatz witnesses --------------------------------------------------------------------


def test_witness_on_the_line(variety, parse):
    line = variety("s")
    witness = nullstellensatz_witness(line, parse(line.ring, "s"), [parse(line.ring, "s^2")])
    assert witness.exponent == 2
    assert witness.cofactors == [line.ring.one()]
    assert witness.relation_cofactors == []


def test_witness_over_the_normalized_cusp(cusp_tower, parse):
    ring = cusp_tower.ring
    f, g = parse(ring, "t1"), parse(ring, "x")
    witness = nullstellensatz_witness(cusp_tower, f, [g])
    assert witness.exponent == 2
    total = witness.cofactors[0] * g
    for h, rel in zip(witness.relation_cofactors, cusp_tower.current.relations.generators):
        total = total + h * rel
    assert total == f ** 2
    assert witness.claims[0].holds


def test_witness_keeps_zero_generators_in_place(variety, parse):
    line = variety("s")
    witness = nullstellensatz_witness(line, parse(line.ring, "s"), [line.ring.zero(), parse(line.ring, "s")])
    assert witness.exponent == 1
    assert witness.cofactors == [line.ring.zero(), line.ring.one()]


def test_witness_requires_radical_membership(variety, parse):
    line = variety("x")
    with pytest.raises(NotInRadical):
        nullstellensatz_witness(line, line.ring.one(), [parse(line.ring, "x")])


def test_witness_bound(variety, parse):
    line = variety("s")
    with EngineConfig.use({"nullstellensatz_bound": 1}):
        with pytest.raises(NotFoundWithinBound) as info:
            nullstellensatz_witness(line, parse(line.ring, "s"), [parse(line.ring, "s^2")])
    assert info.value.bound == 1


def _random_quadratic(rng, ring):
    x, y = ring.var("x"), ring.var("y")
    total = ring.zero()
    for i in range(3):
        for j in range(3 - i):
            total = total + int(rng.integers(-2, 3)) * x ** i * y ** j
    return total


@pytest.mark.parametrize("generators", [(), ("y^2 - x^3",)])
def test_random_witnesses_reproduce_the_power(variety, rng, generators):
    X = variety("x, y", *generators)
    relations = list(X.ideal.generators)
    found = 0
    while found < 10:
        f, g = _random_quadratic(rng, X.ring), _random_quadratic(rng, X.ring)
        if f.is_zero() or g.is_zero():
            continue
        # f^2 lies in ⟨a·f^2 + b·g, g⟩ for any unit a
        a, b = int(rng.choice([-2, -1, 1, 2])), _random_quadratic(rng, X.ring)
        gens = [a * f ** 2 + b * g, g]
        witness = nullstellensatz_witness(X, f, gens)
        assert witness.exponent <= 2
        total = f ** witness.exponent
        for h, gen in zip(witness.cofactors, gens):
            total = total - h * gen
        for h, rel in zip(witness.relation_cofactors, relations):
            total = total - h * rel
        assert total.is_zero()
        found += 1
