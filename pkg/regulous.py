"""Deciding whether a rational fraction extends to a regulous (continuous rational) function.

The decision runs on the graph of the fraction in X × A^1: the fraction is regulous exactly
when the extension of Q[X] by the graph variable is finite, injective on closed points and
onto X. Every step leaves claims behind so that a certificate can be written for it.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction as ExactRational
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from config.engine_config import EngineConfig
from errors import (
    ComputationBudgetExceeded,
    InputError,
    NotFinite,
    NotFoundWithinBound,
    NotRegulousOnAmbient,
    PreconditionFailed,
    PresentationError,
    ReducibleAmbiguity,
    WitnessNotFound,
)
from extension import (
    ExtensionPresentation,
    VarietyPresentation,
    conductor,
    dominance_claims,
    doubled_relations,
    finiteness_claims,
    injectivity_claims,
    integral_equation,
    ring_value,
)
from ideal_engine import (
    Claim,
    Ideal,
    expand_cofactors,
    ideal_contains,
    intersect,
    is_nzd,
    leading_term_claim,
    membership_claim,
    radical_claim,
    radical_contains,
    saturate,
    saturation_claim,
)
from poly_core import Polynomial, PolynomialRing, fresh_variable

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    REGULOUS = "Regulous"
    NOT_REGULOUS = "NotRegulous"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Fraction:
    """p / q over the base ring of a variety."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        if self.q.is_zero():
            raise InputError("fraction with zero denominator")
        if self.p.ring.variables != self.q.ring.variables:
            raise InputError("numerator and denominator live in different rings")

    @classmethod
    def polynomial(cls, p: Polynomial) -> "Fraction":
        return cls(p, p.ring.one())

    @property
    def ring(self) -> PolynomialRing:
        return self.p.ring

    def is_polynomial(self) -> bool:
        return self.q.is_constant()

    def to_ring(self, ring: PolynomialRing) -> "Fraction":
        return Fraction(ring.convert(self.p), ring.convert(self.q))

    def __str__(self) -> str:
        if self.q == 1:
            return str(self.p)
        p = str(self.p) if len(self.p) == 1 else f"({self.p})"
        q = str(self.q) if len(self.q) == 1 else f"({self.q})"
        return f"{p} / {q}"


@dataclass(frozen=True)
class StratifiedFraction:
    """p1/q1 where q1 != 0, then p2/q2 where q1 = 0 and q2 != 0, ..., final value elsewhere."""

    strata: Tuple[Fraction, ...]
    final_value: Optional[Polynomial] = None

    def __post_init__(self):
        if not self.strata:
            raise InputError("a stratified fraction needs at least one stratum")

    @property
    def primary(self) -> Fraction:
        return self.strata[0]

    @property
    def final(self) -> Polynomial:
        return self.final_value if self.final_value is not None else self.primary.ring.zero()


FractionLike = Union[Fraction, StratifiedFraction]


def as_stratified(f: FractionLike) -> StratifiedFraction:
    return f if isinstance(f, StratifiedFraction) else StratifiedFraction((f,))


@dataclass
class RegulousVerdict:
    verdict: Verdict
    graph_ideal: Optional[Ideal]
    graph_var: str
    claims: List[Claim] = field(default_factory=list)
    reason: str = ""
    integral_relation: Optional[Polynomial] = None
    polynomial_value: Optional[Polynomial] = None

    @property
    def is_regulous(self) -> bool:
        return self.verdict is Verdict.REGULOUS

    def extension(self, X: VarietyPresentation) -> ExtensionPresentation:
        if self.graph_ideal is None:
            raise PresentationError("undecided verdict has no graph ideal")
        return ExtensionPresentation(X, (self.graph_var,), self.graph_ideal)


def _graph_var(X: VarietyPresentation, var: Optional[str]) -> str:
    if var is None:
        return X.ring.fresh_variable("t")
    if X.ring.has_variable(var):
        raise InputError(f"graph variable {var!r} clashes with a variety variable")
    return var


def _zero_extended_graph(X: VarietyPresentation, f: Fraction, var: str) -> Ideal:
    """Graph when q vanishes identically on some listed components: f is 0 there."""
    ring = X.ring.extend([var])
    t = ring.var(var)
    p, q = ring.convert(f.p), ring.convert(f.q)
    parts = []
    for component in X.components:
        if component.contains(f.q):
            parts.append(Ideal(ring, list(component.generators) + [t]))
        else:
            parts.append(saturate(Ideal(ring, list(component.generators) + [q * t - p]), q))
    graph = parts[0]
    for part in parts[1:]:
        graph = intersect(graph, part)
    return graph


def _graph_with_claims(X: VarietyPresentation, f: Fraction, var: str) -> Tuple[Ideal, List[Claim], Optional[str]]:
    ring = X.ring.extend([var])
    t = ring.var(var)
    p, q = ring.convert(f.p), ring.convert(f.q)
    if f.is_polynomial():
        value = p.scale(1 / f.q.constant_value())
        return Ideal(ring, list(X.ideal.generators) + [t - value]), [], None
    if not is_nzd(X.ideal, f.q):
        if not X.components:
            raise ReducibleAmbiguity(
                f"{f.q} is a zero divisor on the variety; list its components to extend the fraction by 0"
            )
        logger.info("denominator %s vanishes on a component; extending by zero", f.q)
        return _zero_extended_graph(X, f, var), [], None
    claim, graph = saturation_claim("graph", Ideal(ring, list(X.ideal.generators) + [q * t - p]), q)
    return graph, [claim], "graph"


def graph_closure(X: VarietyPresentation, f: FractionLike, var: str = "t") -> Ideal:
    """Zariski closure of {(x, p(x)/q(x)) : q(x) != 0} as (I + ⟨q·t - p⟩) : q^∞."""
    var = _graph_var(X, var)
    graph, _, _ = _graph_with_claims(X, as_stratified(f).primary, var)
    return graph


def _clear_denominator(g: Polynomial, var: str, p: Polynomial, q: Polynomial) -> Polynomial:
    """q^D · g(x, p/q) with D = deg_var g, as a polynomial in the base ring of p, q."""
    degree = max(g.degree_in(var), 0)
    total = p.ring.zero()
    for k, coeff in g.coefficients_in(var).items():
        total = total + p.ring.convert(coeff) * p ** k * q ** (degree - k)
    return total


def vanishing_claims(X: VarietyPresentation, f: FractionLike, system: Sequence[Polynomial], var: str) -> List[Claim]:
    """The explicit graph system vanishes on the graph of every stratum of f."""
    sf = as_stratified(f)
    claims: List[Claim] = []
    earlier: List[Polynomial] = []
    for i, stratum in enumerate(sf.strata):
        base = X.ideal + earlier
        for j, g in enumerate(system):
            numerator = _clear_denominator(g, var, stratum.p, stratum.q)
            claims.append(radical_claim(f"vanishes:{i}.{j}", base, stratum.q * numerator))
        earlier.append(stratum.q)
    if isinstance(f, StratifiedFraction):
        base = X.ideal + earlier
        value = sf.final
        for j, g in enumerate(system):
            restricted = g.substitute({var: g.ring.convert(value)})
            claims.append(radical_claim(f"vanishes:final.{j}", base, X.ring.convert(restricted)))
    return claims


def _decide(X: VarietyPresentation, J: Ideal, var: str, claims: List[Claim], source: Optional[str]) -> RegulousVerdict:
    E = ExtensionPresentation(X, (var,), J)

    finite = finiteness_claims(E, source)
    claims.extend(finite)
    if not finite[0].holds:
        return RegulousVerdict(Verdict.NOT_REGULOUS, J, var, claims,
                               reason="no monic relation: the function is not integral over the variety")
    relation = finite[0].element

    in_ring = leading_term_claim(f"in-ring:{var}", J, E.elimination_order(), var, 1, source)
    claims.append(in_ring)
    value = None
    if in_ring.holds:
        value = X.ring.convert(J.ring.var(var) - in_ring.element)

    injective = injectivity_claims(E, source)
    claims.extend(injective)
    if not all(c.holds for c in injective):
        return RegulousVerdict(Verdict.NOT_REGULOUS, J, var, claims,
                               reason="some point of the variety has two values over it",
                               integral_relation=relation)

    dominant = dominance_claims(E, source)
    claims.extend(dominant)
    if not all(c.holds for c in dominant if c.role.startswith("dominant")):
        return RegulousVerdict(Verdict.NOT_REGULOUS, J, var, claims,
                               reason="the graph does not project onto the variety",
                               integral_relation=relation)

    if not all(c.holds for c in claims if c.role.startswith("vanishes")):
        return RegulousVerdict(Verdict.NOT_REGULOUS, J, var, claims,
                               reason="the graph system does not vanish on the graph of the fraction",
                               integral_relation=relation)

    return RegulousVerdict(Verdict.REGULOUS, J, var, claims,
                           integral_relation=relation, polynomial_value=value)


def is_regulous(X: VarietyPresentation, f: Optional[FractionLike], graph_system: Optional[Sequence[Polynomial]] = None,
                var: Optional[str] = "t") -> RegulousVerdict:
    """Decide whether f extends to a regulous function on X.

    Args:
        X: The variety.
        f: The fraction (or stratified fraction). May be None only with an explicit system.
        graph_system: Explicit equations of the graph in Q[var, x]; when given they are used
            instead of the saturation, after checking they vanish on the graph of f.
        var: Name of the graph variable.

    Returns:
        A RegulousVerdict; a budget overrun yields Undecided instead of an exception.
    """
    var = _graph_var(X, var)
    try:
        if graph_system is not None:
            ring = X.ring.extend([var])
            system = [ring.convert(g) for g in graph_system]
            claims: List[Claim] = []
            if f is not None:
                # a stratified fraction names its value on the zero set of each denominator
                if isinstance(f, Fraction) and not f.is_polynomial() and not X.components and not is_nzd(X.ideal, f.q):
                    raise ReducibleAmbiguity(f"{f.q} is a zero divisor on the variety; give strata or components")
                claims = vanishing_claims(X, f, system, var)
            J = Ideal(ring, list(X.ideal.generators) + system)
            verdict = _decide(X, J, var, claims, None)
        else:
            if f is None:
                raise InputError("a fraction or an explicit graph system is required")
            J, claims, source = _graph_with_claims(X, as_stratified(f).primary, var)
            verdict = _decide(X, J, var, list(claims), source)
    except ComputationBudgetExceeded as exc:
        logger.warning("regulosity undecided: %s", exc)
        return RegulousVerdict(Verdict.UNDECIDED, None, var, [], reason=str(exc))
    logger.info("%s: %s%s", f if f is not None else "graph system", verdict.verdict.value,
                f" ({verdict.reason})" if verdict.reason else "")
    return verdict


def in_ring_value(X: VarietyPresentation, f: FractionLike, var: Optional[str] = "t") -> Optional[Polynomial]:
    """h with f = h on X when the closed graph of f contains t - h, else None."""
    var = _graph_var(X, var)
    graph = graph_closure(X, f, var)
    E = ExtensionPresentation(X, (var,), graph)
    claim = leading_term_claim("in-ring", graph, E.elimination_order(), var, 1)
    if not claim.holds or claim.element.is_constant():
        return None
    return X.ring.convert(graph.ring.var(var) - claim.element)


# -- power pairs and Swan pairs ---------------------------------------------------------------


def bezout_exponents(n: int, m: int) -> Tuple[int, int]:
    """(u, v) with u·n + v·m = 1, 0 < u < m and v <= 0 (u = 1, v = 1 - n when m = 1)."""
    if n < 1 or m < 1:
        raise InputError("power-pair exponents must be positive")
    if gcd(n, m) != 1:
        raise InputError(f"exponents {n} and {m} are not coprime")
    if m == 1:
        return 1, 1 - n
    u = pow(n, -1, m)
    v = (1 - u * n) // m
    return u, v


def check_power_pair(X: VarietyPresentation, f: Fraction, n: int, m: int, var: Optional[str] = "t") -> RegulousVerdict:
    """Regulosity of f from f^n, f^m ∈ Q[X] with gcd(n, m) = 1.

    With a = f^n, b = f^m and u·n + v·m = 1, the graph is cut out by b^(-v)·t - a^u and
    t^m - b; the explicit system goes through the regulosity pipeline.

    Raises:
        PreconditionFailed: f^n or f^m is not in the coordinate ring.
    """
    u, v = bezout_exponents(n, m)
    var = _graph_var(X, var)
    values = {}
    missing = []
    for k in (n, m):
        value = in_ring_value(X, Fraction(f.p ** k, f.q ** k), var)
        if value is None:
            missing.append(f"f^{k}")
        values[k] = value
    if missing:
        raise PreconditionFailed(f"{' and '.join(missing)} not in the coordinate ring")
    ring = X.ring.extend([var])
    t = ring.var(var)
    a, b = ring.convert(values[n]), ring.convert(values[m])
    system = [b ** (-v) * t - a ** u, t ** m - b]
    logger.debug("power pair (%d, %d): u=%d v=%d", n, m, u, v)
    return is_regulous(X, f, system, var)


class SwanKind(str, Enum):
    IN_RING = "InRing"
    PROPERLY_REGULOUS = "ProperlyRegulous"
    NOT_A_PAIR = "NotAPair"


@dataclass
class SwanResult:
    kind: SwanKind
    value: Optional[Polynomial] = None
    claims: List[Claim] = field(default_factory=list)
    graph_ideal: Optional[Ideal] = None


def swan_pair_solve(X: VarietyPresentation, p: Polynomial, q: Polynomial, var: Optional[str] = "t") -> SwanResult:
    """Classify (p, q) with p² = q³ on X: the cube root f (f² = q, f³ = p) is in Q[X] or not.

    The cube root lives on J = I + ⟨q·t - p, t² - q⟩, with no condition on q: over D(q)
    it is t = p/q and over Z(q) it is t = 0. The candidate h is read off J : q^∞ and is
    accepted when t - h vanishes on all of V(J).
    """
    p, q = X.ring.convert(p), X.ring.convert(q)
    var = _graph_var(X, var)
    pair = membership_claim("pair", X.ideal, p ** 2 - q ** 3)
    if not pair.holds:
        return SwanResult(SwanKind.NOT_A_PAIR, None, [pair])
    zero = membership_claim("zero", X.ideal, q)
    if zero.holds:
        return SwanResult(SwanKind.IN_RING, X.ring.zero(), [pair, zero])

    ring = X.ring.extend([var])
    t = ring.var(var)
    J = Ideal(ring, list(X.ideal.generators) + [ring.convert(q) * t - ring.convert(p), t ** 2 - ring.convert(q)])
    graph, saturated = saturation_claim("graph", J, q)
    candidate = leading_term_claim("candidate", saturated, ring.block_order([var]), var, 1, "graph")
    claims: List[Claim] = [pair, zero, graph, candidate]
    if not candidate.holds:
        return SwanResult(SwanKind.PROPERLY_REGULOUS, None, claims, J)

    # a unit saturation means q is nilpotent on X, so the cube root is 0
    h = ring.zero() if candidate.element.is_constant() else t - candidate.element
    in_ring = radical_claim("in-ring", J, t - h)
    claims.append(in_ring)
    if in_ring.holds:
        return SwanResult(SwanKind.IN_RING, X.ring.convert(h), claims, J)
    return SwanResult(SwanKind.PROPERLY_REGULOUS, None, claims, J)


# -- elementary witnesses --------------------------------------------------------------------


@dataclass
class ElementaryWitness:
    """g ∈ Q[X][f] \\ Q[X] with g², g³ ∈ Q[X]; g = multiplier · omega^power · t^shift in Q[t, x]/J."""

    element: Polynomial
    omega: Polynomial
    power: int
    shift: int
    multiplier: Polynomial
    square: Polynomial
    cube: Polynomial
    conductor: Ideal
    extension: ExtensionPresentation
    claims: List[Claim] = field(default_factory=list)


def elementary_witness(X: VarietyPresentation, f: FractionLike, var: Optional[str] = "t") -> ElementaryWitness:
    """An element of Q[X][f] outside Q[X] whose square and cube lie in Q[X].

    The strata are normalized first (f is replaced by q_i·f - p_i for the first stratum
    with q_i·f ∉ Q[X], or by f minus its final value), giving omega in √Cond(f) \\ Cond(f).
    Then omega^k ∉ Cond(f), omega^(k+1) ∈ Cond(f) and some m·omega^k·f^l ∉ Q[X] with l < deg f
    and m a monomial of bounded degree.

    Raises:
        PreconditionFailed: f is not regulous, or already lies in Q[X].
    """
    sf = as_stratified(f)
    primary = sf.primary
    var = _graph_var(X, var)
    verdict = is_regulous(X, primary, var=var)
    if not verdict.is_regulous:
        raise PreconditionFailed(f"{primary} is not regulous on the variety ({verdict.reason or verdict.verdict.value})")
    if verdict.polynomial_value is not None:
        raise PreconditionFailed(f"{primary} already lies in the coordinate ring")

    E = verdict.extension(X)
    ring = E.ring
    t = ring.var(var)
    d = verdict.integral_relation.degree_in(var)

    omega = None
    for stratum in sf.strata[1:]:
        candidate = ring.convert(stratum.q) * t
        if ring_value(E, candidate) is None:
            omega = candidate - ring.convert(stratum.p)
            break
    if omega is None:
        omega = t - ring.convert(sf.final)

    cond = conductor(X, primary.p, primary.q, d)
    in_cond = E.relations + cond.generators
    if not radical_contains(in_cond, omega):
        raise WitnessNotFound(f"{omega} is not in the radical of the conductor")
    bound = EngineConfig.get("nullstellensatz_bound")
    power = 1
    while not in_cond.contains(omega ** (power + 1)):
        power += 1
        if power > bound:
            raise NotFoundWithinBound("no power of the normalized fraction enters the conductor", bound)

    base = omega ** power
    cap = max((g.total_degree() for g in cond.generators), default=0) + EngineConfig.get("witness_degree_slack")
    for multiplier in _monomials_up_to(X.ring, cap):
        for shift in range(d):
            element = base * ring.convert(multiplier) * t ** shift
            if ring_value(E, element) is not None:
                continue
            square = ring_value(E, element ** 2)
            cube = ring_value(E, element ** 3)
            if square is None or cube is None:
                continue
            logger.info("elementary witness %s (power %d, shift %d)", element, power, shift)
            return ElementaryWitness(element, omega, power, shift, multiplier, square, cube, cond, E,
                                      list(verdict.claims))
    raise WitnessNotFound(f"no element m·omega^{power}·t^l with deg m <= {cap} and l < {d} leaves the coordinate ring")


def _monomials_up_to(ring: PolynomialRing, degree: int) -> Iterator[Polynomial]:
    """Monomials of the ring by increasing total degree, starting with 1."""
    for total in range(degree + 1):
        for combo in combinations_with_replacement(ring.variables, total):
            yield ring.monomial(Counter(combo))


# -- restriction and extension -----------------------------------------------------------------


def _linear_element(basis: Sequence[Polynomial], var: str, V: VarietyPresentation) -> Optional[Fraction]:
    for g in basis:
        if g.degree_in(var) != 1:
            continue
        parts = g.coefficients_in(var)
        q_prime = V.ring.convert(parts[1])
        if V.vanishes(q_prime) or not is_nzd(V.ideal, q_prime):
            continue
        return Fraction(-V.ring.convert(parts.get(0, g.ring.zero())), q_prime)
    return None


def restrict_regulous(X: VarietyPresentation, V: VarietyPresentation, f: Fraction,
                      var: Optional[str] = "t") -> RegulousVerdict:
    """Restriction of a regulous f on X to the subvariety V ⊆ X.

    Raises:
        NotRegulousOnAmbient: f is not regulous on X.
        PresentationError: V is not a subvariety of X.
    """
    if V.ring.variables != X.ring.variables:
        raise PresentationError("the subvariety must use the ambient variables")
    if not ideal_contains(V.ideal, X.ideal):
        raise PresentationError("the subvariety ideal does not contain the ambient ideal")
    var = _graph_var(X, var)
    ambient = is_regulous(X, f, var=var)
    if ambient.verdict is Verdict.UNDECIDED:
        return ambient
    if not ambient.is_regulous:
        raise NotRegulousOnAmbient(f"{f} is not regulous on the ambient variety: {ambient.reason}")

    if not V.vanishes(f.q) and is_nzd(V.ideal, f.q):
        return is_regulous(V, f, var=var)

    J_V = ambient.graph_ideal + [ambient.graph_ideal.ring.convert(g) for g in V.ideal.generators]
    order = J_V.ring.block_order([var])
    try:
        basis = J_V.groebner(order)
        restricted = _linear_element(basis, var, V)
        if restricted is not None:
            logger.info("restriction of %s is %s", f, restricted)
            return is_regulous(V, restricted, var=var)
        E = ExtensionPresentation(V, (var,), J_V)
        relation = integral_equation(E, var)
        k = relation.degree_in(var)
        h = relation.coefficients_in(var).get(k - 1, J_V.ring.zero()).scale(-ExactRational(1, k))
        t = J_V.ring.var(var)
        if radical_contains(J_V, t - h):
            return is_regulous(V, Fraction.polynomial(V.ring.convert(h)), var=var)
    except (ComputationBudgetExceeded, NotFinite) as exc:
        return RegulousVerdict(Verdict.UNDECIDED, J_V, var, [], reason=str(exc))
    return RegulousVerdict(Verdict.UNDECIDED, J_V, var, [],
                           reason="no linear element q't - p' with q' a non-zero-divisor on the subvariety")




@dataclass(frozen=True)
class PrincipalOpenSystem:
    """Graph system of g over D(f): coefficients are pairs (a, k) standing for a / f^k.

    ``monic`` lists the coefficients of t^0 .. t^(d-1) of the monic equation (t^d has
    coefficient 1); each entry of ``equations`` lists coefficients of t^0 .. t^(d_i).
    """

    monic: Tuple[Tuple[Polynomial, int], ...]
    equations: Tuple[Tuple[Tuple[Polynomial, int], ...], ...] = ()
    function: Optional[Fraction] = None

    def exponents(self) -> List[int]:
        ks = [k for _, k in self.monic]
        for equation in self.equations:
            ks.extend(k for _, k in equation)
        return ks


@dataclass
class PrincipalOpenExtension:
    exponent: int
    system: Tuple[Polynomial, ...]
    verdict: RegulousVerdict
    uniqueness: List[Claim] = field(default_factory=list)
    base: Optional[VarietyPresentation] = None


def _cleared_system(system: PrincipalOpenSystem, h: Polynomial, ring: PolynomialRing, var: str) -> List[Polynomial]:
    t = ring.var(var)
    h = ring.convert(h)
    equations = []
    top = max([k for _, k in system.monic] + [0])
    monic = h ** top * t ** len(system.monic)
    for j, (a, k) in enumerate(system.monic):
        monic = monic + ring.convert(a) * h ** (top - k) * t ** j
    equations.append(monic)
    for equation in system.equations:
        top = max([k for _, k in equation] + [0])
        poly = ring.zero()
        for j, (a, k) in enumerate(equation):
            poly = poly + ring.convert(a) * h ** (top - k) * t ** j
        equations.append(poly)
    return equations


def extend_from_principal_open(X: VarietyPresentation, f: Fraction, system: PrincipalOpenSystem,
                               var: Optional[str] = "t") -> PrincipalOpenExtension:
    """N and a graph system on all of X for f^N·g (0 where f = 0), from a system for g over D(f).

    With s = f^e, e twice the sum of all exponents, the monic equation becomes
    t^d + Σ f^(e-k_j)·a_j·s^(d-1-j)·t^j and every other equation Σ f^(e-k_ij)·a_ij·s^(d_i-j)·t^j.
    When f is regulous but not regular, the construction runs on the graph of f, where f is
    the coordinate of its own graph variable; ``base`` of the result is that presentation.

    Raises:
        PreconditionFailed: f is not regulous, or the system has several solutions over D(f).
    """
    var = _graph_var(X, var)
    if not system.monic:
        raise InputError("the monic equation needs at least one coefficient")
    h = in_ring_value(X, f, var)
    if h is None:
        f_var = fresh_variable("u", X.ring.variables + (var,))
        regulous = is_regulous(X, f, var=f_var)
        if not regulous.is_regulous:
            raise PreconditionFailed(f"{f} is not regulous on the variety ({regulous.reason or regulous.verdict.value})")
        X = regulous.extension(X).as_variety()
        h = X.ring.var(f_var)
        logger.debug("%s is not regular; extending over its graph in (%s)", f, ", ".join(X.ring.variables))
    ring = X.ring.extend([var])
    t = ring.var(var)

    cleared = _cleared_system(system, h, ring, var)
    base = ExtensionPresentation(X, (var,), Ideal(ring, list(X.ideal.generators) + cleared))
    doubled, primed = doubled_relations(base)
    diff = doubled.ring.var(var) - doubled.ring.var(primed[0])
    unique = radical_claim("unique", doubled, doubled.ring.convert(h) * diff)
    if not unique.holds:
        raise PreconditionFailed("the system has more than one solution over the principal open set")

    e = 2 * sum(system.exponents())
    hr = ring.convert(h)
    s = hr ** e
    d = len(system.monic)
    scaled = [t ** d]
    for j, (a, k) in enumerate(system.monic):
        scaled[0] = scaled[0] + hr ** (e - k) * ring.convert(a) * s ** (d - 1 - j) * t ** j
    for equation in system.equations:
        d_i = len(equation) - 1
        poly = ring.zero()
        for j, (a, k) in enumerate(equation):
            poly = poly + hr ** (e - k) * ring.convert(a) * s ** (d_i - j) * t ** j
        scaled.append(poly)

    target = None
    if system.function is not None:
        g = system.function.to_ring(X.ring)
        target = Fraction(g.p * h ** e, g.q)
    verdict = is_regulous(X, target, scaled, var)
    logger.info("f^%d·g from the principal open set: %s", e, verdict.verdict.value)
    return PrincipalOpenExtension(e, tuple(scaled), verdict, [unique], X)


def construct_from_power_relation(X: VarietyPresentation, p: Polynomial, q: Polynomial, n: int,
                                  var: Optional[str] = "t") -> RegulousVerdict:
    """p/q extended by 0 on Z(q) is regulous when p^n ∈ ⟨q^(n+1)⟩ + I.

    Writing p^n = h·q^(n+1) mod I, the graph is cut out by q·t - p and t^n - q·h.
    """
    if n < 1:
        raise InputError("the power must be positive")
    p, q = X.ring.convert(p), X.ring.convert(q)
    var = _graph_var(X, var)
    ideal = Ideal(X.ring, [q ** (n + 1)] + list(X.ideal.generators))
    trace = ideal.trace()
    quotients, remainder = trace.divide(p ** n)
    if not remainder.is_zero():
        raise PreconditionFailed(f"({p})^{n} is not in ⟨({q})^{n + 1}⟩ + I")
    h = expand_cofactors(trace, quotients)[0]
    ring = X.ring.extend([var])
    t = ring.var(var)
    system = [ring.convert(q) * t - ring.convert(p), t ** n - ring.convert(q * h)]
    f = StratifiedFraction((Fraction(p, q),), X.ring.zero())
    return is_regulous(X, f, system, var)
