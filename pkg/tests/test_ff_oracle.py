import numpy as np
import pytest

from config.fixture_config import FixtureConfig
from errors import InputError
from extension import ExtensionPresentation, graph_relations
from ff_oracle import FiniteFieldOracle, ReducedPolynomial, bijective_on_points, span_contains
from problem_file import load_problem
from regulous import Fraction, is_regulous

P = 101


def graph_extension(X, parse, p, q):
    return ExtensionPresentation(X, ("t",), graph_relations(X, parse(X.ring, p), parse(X.ring, q), "t"))


def test_cusp_has_one_point_per_field_element(cusp):
    points = FiniteFieldOracle(P).points(cusp)
    assert points.shape == (P, 2)
    x, y = points[:, 0], points[:, 1]
    assert np.all((y * y - x * x % P * x) % P == 0)


def test_circle_point_count(variety):
    # p = 1 mod 4: the circle has p - 1 points
    assert len(FiniteFieldOracle(P).points(variety("x, y", "x^2 + y^2 - 1"))) == P - 1


def test_affine_line(variety):
    assert FiniteFieldOracle(P).points(variety("s")).ravel().tolist() == list(range(P))


def test_cusp_normalization_is_bijective(cusp, parse):
    E = graph_extension(cusp, parse, "y", "x")
    counts = FiniteFieldOracle(P).fiber_counts(E)
    assert counts.shape == (P,)
    assert np.all(counts == 1)
    assert bijective_on_points(E, prime=P)


def test_two_valued_fibres_are_counted(sextic, variety, parse):
    oracle = FiniteFieldOracle(P)
    E = graph_extension(sextic, parse, "y", "x^2")
    base = oracle.points(sextic)
    counts = oracle.fiber_counts(E, base)
    origin = np.flatnonzero((base == 0).all(axis=1))
    assert counts[origin].tolist() == [2]
    assert not oracle.is_bijective(E)

    node = variety("x, y", "y^2 - x^2*(x + 1)")
    assert not bijective_on_points(graph_extension(node, parse, "y", "x"), prime=P)


def test_regulous_verdict_agrees_with_the_oracle(sextic, parse):
    verdict = is_regulous(sextic, Fraction(parse(sextic.ring, "y"), parse(sextic.ring, "x")))
    assert verdict.is_regulous
    assert bijective_on_points(verdict.extension(sextic), prime=P)


def test_bad_prime_moves_to_the_next_one(variety, parse):
    line = variety("x")
    ring = line.ring.extend(["t"])
    E = ExtensionPresentation.from_relations(line, ["t"], [parse(ring, "t - 1/101*x")])
    assert bijective_on_points(E, prime=P)


def test_reduction_inverts_denominators(ring_xy, parse):
    reduced = ReducedPolynomial.of(parse(ring_xy, "1/2*x + 3"), 7)
    assert sorted(reduced.terms) == [(3, (0, 0)), (4, (1, 0))]
    assert reduced.degree == 1


def test_oracle_rejects_bad_moduli_and_large_grids(variety, cusp, parse):
    with pytest.raises(InputError):
        FiniteFieldOracle(100)
    with pytest.raises(InputError):
        FiniteFieldOracle(P).points(variety("a, b, c, d, e"))
    ring = cusp.ring.extend(["s", "t"])
    E = ExtensionPresentation.from_relations(cusp, ["s", "t"], [parse(ring, "s - x"), parse(ring, "t - y")])
    with pytest.raises(InputError):
        FiniteFieldOracle(P).fiber_counts(E)


def test_span_membership(ring_xy, parse):
    cusp = parse(ring_xy, "y^2 - x^3")
    assert span_contains(parse(ring_xy, "x*y^2 - x^4"), [cusp], degree_bound=4)
    assert not span_contains(parse(ring_xy, "x*y^2 - x^4"), [cusp], degree_bound=3)
    assert not span_contains(parse(ring_xy, "x"), [parse(ring_xy, "x^2")], degree_bound=4)
    assert span_contains(ring_xy.zero(), [], degree_bound=2)


@pytest.mark.slow
def test_default_prime_on_the_cusp(cusp, parse):
    assert bijective_on_points(graph_extension(cusp, parse, "y", "x"))


ORACLE_TASKS = ("regulous-check", "power-pair", "power-relation", "subintegral-check")
ORACLE_PRIME = 10007


def fixture_extension(problem):
    """The extension a curve fixture is about: its explicit relations or the graph of its fraction."""
    X = problem.variety()
    if problem.task == "subintegral-check":
        names = problem.names("adjoin")
        return ExtensionPresentation.from_relations(X, names, problem.polynomials("relation", problem.extended_ring(names)))
    if problem.task == "power-relation":
        p, q = problem.polynomial("p"), problem.polynomial("q")
    else:
        f = problem.fraction()
        p, q = f.p, f.q
    return ExtensionPresentation(X, ("t",), graph_relations(X, p, q, "t"))


def curve_fixtures():
    names = []
    for name in FixtureConfig.names(include_slow=False):
        problem = load_problem(FixtureConfig.path(name))
        if problem.task in ORACLE_TASKS and len(problem.variables) == 2 and not problem.has("component"):
            names.append(name)
    return names


def test_curve_fixtures_include_the_three_lines():
    assert {"cusp_yx", "sextic_yx2", "three_lines", "cusp_subintegral"} <= set(curve_fixtures())


@pytest.mark.slow
@pytest.mark.parametrize("name", curve_fixtures())
def test_fixture_verdicts_agree_with_fiber_counts(name):
    problem = load_problem(FixtureConfig.path(name))
    expected = FixtureConfig.expected_verdict(name) in ("Regulous", "Subintegral")
    assert bijective_on_points(fixture_extension(problem), prime=ORACLE_PRIME) == expected
