import pytest

from errors import InputError, NotFinite, NotIntegral, PreconditionFailed, PresentationError
from extension import (
    ExtensionPresentation,
    VarietyPresentation,
    conductor,
    doubled_relations,
    fiber_injective,
    graph_relations,
    integral_equation,
    is_finite,
    is_subintegral,
    primed_names,
    ring_value,
)
from ideal_engine import Ideal, equal_radical, ideal_contains
from poly_core import PolynomialRing


def extension(parse, X, adjoined, *relations):
    ring = X.ring.extend(adjoined)
    return ExtensionPresentation.from_relations(X, adjoined, [parse(ring, r) for r in relations])


def test_cusp_graph_is_finite_with_monic_relation(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    assert is_finite(E)
    assert integral_equation(E, 0) == parse(E.ring, "t^2 - x")
    assert integral_equation(E, "t") == integral_equation(E, 0)


def test_localization_is_not_finite(variety, parse):
    line = variety("x")
    E = extension(parse, line, ["t"], "x*t - 1")
    assert not is_finite(E)
    with pytest.raises(NotFinite):
        integral_equation(E, "t")


def test_polynomial_adjunction(variety, parse):
    line = variety("x")
    E = extension(parse, line, ["t"], "t - x^2")
    assert is_finite(E)
    assert integral_equation(E, "t") == parse(E.ring, "t - x^2")
    assert fiber_injective(E)
    assert is_subintegral(E)


def test_three_lines_integral_equation(three_lines, parse):
    graph = graph_relations(three_lines, parse(three_lines.ring, "2*x*y"), parse(three_lines.ring, "x + y"), "t")
    E = ExtensionPresentation(three_lines, ("t",), graph)
    assert integral_equation(E, "t") == parse(E.ring, "t^2 - x*y")


def test_unknown_adjoined_variable(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    with pytest.raises(InputError):
        integral_equation(E, "s")
    with pytest.raises(InputError):
        integral_equation(E, 3)


def test_injectivity_on_the_cusp(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    result = fiber_injective(E)
    assert result.holds
    assert [c.role for c in result.claims] == ["injective:t"]


def test_sextic_with_y_over_x_squared_is_two_valued(sextic, parse):
    ring = sextic.ring
    graph = graph_relations(sextic, parse(ring, "y"), parse(ring, "x^2"), "t")
    E = ExtensionPresentation(sextic, ("t",), graph)
    assert is_finite(E)
    assert not fiber_injective(E)


def test_cusp_normalization_is_subintegral(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    report = is_subintegral(E)
    assert report.holds and not report.failures()
    roles = [c.role for c in report.claims]
    assert roles[0] == "finite:t"
    assert "image" in roles
    assert any(r.startswith("dominant:") for r in roles)


def test_node_normalization_is_not_subintegral(variety, parse):
    node = variety("x, y", "y^2 - x^2*(x + 1)")
    graph = graph_relations(node, parse(node.ring, "y"), parse(node.ring, "x"), "t")
    E = ExtensionPresentation(node, ("t",), graph)
    report = is_subintegral(E)
    assert report.finite and report.dominant
    assert not report.injective
    assert report.failures() == ["not injective on closed points"]


def test_identity_extension_is_subintegral(cusp):
    report = is_subintegral(ExtensionPresentation.trivial(cusp))
    assert report.holds
    assert report.claims == []


def test_relation_ring_must_match(cusp):
    wrong = PolynomialRing.of(["s", "y", "x"])
    with pytest.raises(PresentationError):
        ExtensionPresentation(cusp, ("s",), Ideal(wrong, []))


def test_validate_detects_missing_defining_equations(cusp, parse):
    ring = cusp.ring.extend(["t"])
    E = ExtensionPresentation(cusp, ("t",), Ideal(ring, [parse(ring, "t^2 - x")]))
    with pytest.raises(PresentationError):
        E.validate()


def test_empty_variety_is_rejected(variety):
    with pytest.raises(PresentationError):
        variety("x", "x", "x - 1").validate()


def test_components_must_cover_the_variety(parse):
    ring = PolynomialRing.of(["x", "y"])
    good = VarietyPresentation.from_generators(ring, [parse(ring, "x*y")], [[parse(ring, "x")], [parse(ring, "y")]])
    good.validate()
    bad = VarietyPresentation.from_generators(ring, [parse(ring, "x*y")], [[parse(ring, "x")]])
    with pytest.raises(PresentationError):
        bad.validate()


def test_doubled_relations_prime_the_adjoined_variables(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    doubled, primed = doubled_relations(E)
    assert primed == primed_names(E) == ("t_",)
    assert doubled.ring.variables == ("t_", "t", "x", "y")
    assert doubled.contains(parse(doubled.ring, "t_^2 - x"))


# -- conductor ---------------------------------------------------------------------------------


def test_cusp_conductor_is_the_maximal_ideal(cusp, parse):
    ring = cusp.ring
    cond = conductor(cusp, parse(ring, "y"), parse(ring, "x"), 2)
    assert equal_radical(cond, Ideal(ring, [parse(ring, "x"), parse(ring, "y")]))
    assert not cond.is_unit()


def test_conductor_of_a_polynomial_is_the_unit_ideal(cusp, parse):
    ring = cusp.ring
    assert conductor(cusp, parse(ring, "x + y"), ring.one(), 1).is_unit()


def test_three_lines_conductor(three_lines, parse):
    ring = three_lines.ring
    cond = conductor(three_lines, parse(ring, "2*x*y"), parse(ring, "x + y"), 2)
    assert ideal_contains(cond, Ideal(ring, [parse(ring, "x + y"), parse(ring, "x*y")]))


def test_conductor_preconditions(variety, cusp, parse):
    axes = variety("x, y", "x*y")
    with pytest.raises(PreconditionFailed):
        conductor(axes, parse(axes.ring, "y"), parse(axes.ring, "x"), 2)
    line = variety("x, y", "y")
    with pytest.raises(NotIntegral):
        conductor(line, line.ring.one(), parse(line.ring, "x"), 2)
    with pytest.raises(NotIntegral):
        conductor(cusp, parse(cusp.ring, "y"), parse(cusp.ring, "x"), 1)


def test_ring_value_reads_back_base_elements(cusp, parse):
    E = extension(parse, cusp, ["t"], "x*t - y", "t^2 - x")
    assert ring_value(E, parse(E.ring, "t^2")) == parse(cusp.ring, "x")
    assert ring_value(E, parse(E.ring, "t^3")) == parse(cusp.ring, "y")
    assert ring_value(E, parse(E.ring, "t")) is None


@pytest.mark.parametrize("name", ["t", "s", "w"])
def test_injectivity_does_not_depend_on_the_variable_name(cusp, variety, parse, name):
    E = extension(parse, cusp, [name], f"x*{name} - y", f"{name}^2 - x")
    assert fiber_injective(E).holds
    node = variety("x, y", "y^2 - x^2*(x + 1)")
    graph = graph_relations(node, parse(node.ring, "y"), parse(node.ring, "x"), name)
    assert not fiber_injective(ExtensionPresentation(node, (name,), graph)).holds


@pytest.mark.parametrize("p, q", [("y", "x"), ("2*x*y", "x + y")])
def test_conductor_generators_multiply_powers_into_the_ring(cusp, three_lines, parse, p, q):
    X = cusp if q == "x" else three_lines
    ring = X.ring
    p, q = parse(ring, p), parse(ring, q)
    degree = 2
    cond = conductor(X, p, q, degree)
    for c in cond.generators:
        for i in range(1, degree):
            colon = Ideal(ring, list(X.ideal.generators) + [q ** i])
            assert colon.contains(c * p ** i)


# -- transitivity ------------------------------------------------------------------------------


def test_subintegrality_composes_along_a_cusp_chain(variety, parse):
    # y^2 = x^5, then s = y/x and u = s/x = y/x^2
    X = variety("x, y", "y^2 - x^5")
    B = extension(parse, X, ["s"], "x*s - y", "s^2 - x^3")
    C = extension(parse, B.as_variety(), ["u"], "x*u - s", "u^2 - x")
    assert is_subintegral(B).holds
    assert is_subintegral(C).holds
    assert is_subintegral(ExtensionPresentation(X, ("u", "s"), C.relations)).holds


def test_subintegrality_composes_along_a_three_lines_chain(three_lines, parse):
    ring = three_lines.ring
    graph = graph_relations(three_lines, parse(ring, "2*x*y"), parse(ring, "x + y"), "s")
    B = ExtensionPresentation(three_lines, ("s",), graph)
    C = extension(parse, B.as_variety(), ["u"], "u - x*s")
    assert is_subintegral(B).holds
    assert is_subintegral(C).holds
    assert is_subintegral(ExtensionPresentation(three_lines, ("u", "s"), C.relations)).holds
