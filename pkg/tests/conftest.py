import numpy as np
import pytest

from config.engine_config import EngineConfig
from extension import VarietyPresentation
from poly_core import PolynomialRing
from poly_parser import PolynomialParser


@pytest.fixture(autouse=True)
def engine_config():
    """Every test runs on the default configuration, whatever SNK_BUDGET says."""
    with EngineConfig.use(dict(EngineConfig.DEFAULT_CONFIG)) as config:
        with EngineConfig.collect_stats():
            yield config


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def ring_xy():
    return PolynomialRing.of(["x", "y"])


@pytest.fixture
def parse():
    """parse(ring, "y^2 - x^3") -> Polynomial."""

    def _parse(ring, text):
        return PolynomialParser(ring).parse(text)

    return _parse


@pytest.fixture
def variety():
    """variety("x, y", "y^2 - x^3", ...) -> VarietyPresentation."""

    def _variety(variables, *generators, order="grevlex"):
        ring = PolynomialRing.of([v.strip() for v in variables.split(",")], order)
        parser = PolynomialParser(ring)
        return VarietyPresentation.from_generators(ring, [parser.parse(g) for g in generators])

    return _variety


@pytest.fixture
def cusp(variety):
    return variety("x, y", "y^2 - x^3")


@pytest.fixture
def three_lines(variety):
    return variety("x, y", "x*y*(y - x)")


@pytest.fixture
def sextic(variety):
    return variety("x, y", "y^2 + (x^2 - 1)*x^4")
