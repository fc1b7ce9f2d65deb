"""Presentations of varieties and of finite extensions Q[X] -> Q[X][t1..tm]/J."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from errors import InputError, NotFinite, NotIntegral, PreconditionFailed, PresentationError
from ideal_engine import (
    Claim,
    Ideal,
    LeadingTermClaim,
    MembershipClaim,
    elimination_claim,
    equal_radical,
    ideal_contains,
    intersect,
    is_nzd,
    leading_term_claim,
    pure_power_element,
    quotient,
    radical_claim,
    saturate,
)
from poly_core import MonomialOrder, Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarietyPresentation:
    """X = V(I) in affine space over the ring's variables; I is assumed radical."""

    ring: PolynomialRing
    ideal: Ideal
    components: Optional[Tuple[Ideal, ...]] = None

    @classmethod
    def from_generators(cls, ring: PolynomialRing, generators: Sequence[Polynomial],
                        components: Optional[Sequence[Sequence[Polynomial]]] = None) -> "VarietyPresentation":
        parts = None
        if components:
            parts = tuple(Ideal(ring, c) for c in components)
        return cls(ring, Ideal(ring, generators), parts)

    @property
    def base_vars(self) -> Tuple[str, ...]:
        return self.ring.variables

    def validate(self) -> None:
        if self.ideal.is_unit():
            raise PresentationError("the defining ideal contains 1; the variety is empty")
        if self.components:
            meet = self.components[0]
            for component in self.components[1:]:
                meet = intersect(meet, component)
            if not equal_radical(meet, self.ideal):
                raise PresentationError("the listed components do not intersect to the variety")

    def vanishes(self, f: Polynomial) -> bool:
        """True when f is zero as a function on X."""
        return self.ideal.contains(f)

    def with_ideal(self, ideal: Ideal) -> "VarietyPresentation":
        return VarietyPresentation(self.ring, ideal, None)


@dataclass(frozen=True)
class ExtensionPresentation:
    """Q[X] -> Q[X][t]/J with J ⊇ I; the ring of J is (adjoined..., base variables...)."""

    base: VarietyPresentation
    adjoined: Tuple[str, ...]
    relations: Ideal

    def __post_init__(self):
        expected = tuple(self.adjoined) + self.base.ring.variables
        if self.relations.ring.variables != expected:
            raise PresentationError(
                f"relation ring ({', '.join(self.relations.ring.variables)}) does not match "
                f"adjoined + base variables ({', '.join(expected)})"
            )

    @classmethod
    def trivial(cls, base: VarietyPresentation) -> "ExtensionPresentation":
        return cls(base, (), base.ideal)

    @classmethod
    def from_relations(cls, base: VarietyPresentation, adjoined: Sequence[str],
                       relations: Sequence[Polynomial]) -> "ExtensionPresentation":
        ring = base.ring.extend(tuple(adjoined))
        gens = [ring.convert(g) for g in base.ideal.generators] + [ring.convert(r) for r in relations]
        return cls(base, tuple(adjoined), Ideal(ring, gens))

    @property
    def ring(self) -> PolynomialRing:
        return self.relations.ring

    def elimination_order(self) -> MonomialOrder:
        return self.ring.block_order(self.adjoined)

    def as_variety(self) -> VarietyPresentation:
        return VarietyPresentation(self.ring, self.relations, None)

    def validate(self) -> None:
        I = self.base.ideal.to_ring(self.ring)
        if not ideal_contains(self.relations, I):
            raise PresentationError("the relation ideal does not contain the defining ideal")


@dataclass
class CheckResult:
    """A boolean verdict together with the claims that certify it."""

    holds: bool
    claims: List[Claim] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class SubintegralReport:
    finite: bool
    injective: bool
    dominant: bool
    claims: List[Claim] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.finite and self.injective and self.dominant

    def __bool__(self) -> bool:
        return self.holds

    def failures(self) -> List[str]:
        names = []
        if not self.finite:
            names.append("not finite")
        if not self.injective:
            names.append("not injective on closed points")
        if not self.dominant:
            names.append("image is not the whole variety")
        return names


def _variable(E: ExtensionPresentation, i: Union[int, str]) -> str:
    if isinstance(i, str):
        if i not in E.adjoined:
            raise InputError(f"{i!r} is not an adjoined variable")
        return i
    try:
        return E.adjoined[i]
    except IndexError:
        raise InputError(f"extension has no adjoined variable with index {i}") from None


def finiteness_claims(E: ExtensionPresentation, source: Optional[str] = None) -> List[LeadingTermClaim]:
    if not E.adjoined:
        return []
    order = E.elimination_order()
    return [leading_term_claim(f"finite:{t}", E.relations, order, t, None, source) for t in E.adjoined]


def is_finite(E: ExtensionPresentation) -> bool:
    """Every adjoined variable has a pure-power leading monomial in the block-order basis."""
    return all(claim.holds for claim in finiteness_claims(E))


def integral_equation(E: ExtensionPresentation, i: Union[int, str]) -> Polynomial:
    """The element of J monic in t_i of least degree found in the reduced basis.

    Raises:
        NotFinite: no element of the basis has a pure power of t_i as leading monomial.
    """
    t = _variable(E, i)
    order = E.elimination_order()
    element = pure_power_element(E.relations.groebner(order), order, t)
    if element is None:
        raise NotFinite(f"{t} satisfies no monic relation over the base ring")
    return element


def primed_names(E: ExtensionPresentation) -> Tuple[str, ...]:
    taken = set(E.ring.variables)
    names = []
    for t in E.adjoined:
        name = f"{t}_"
        while name in taken:
            name += "_"
        taken.add(name)
        names.append(name)
    return tuple(names)


def doubled_relations(E: ExtensionPresentation) -> Tuple[Ideal, Tuple[str, ...]]:
    """J + J' in Q[t', t, x], where J' is J with every adjoined variable primed."""
    primed = primed_names(E)
    ring = E.ring.extend(primed)
    mapping = dict(zip(E.adjoined, primed))
    gens = [ring.convert(g) for g in E.relations.generators]
    gens += [g.rename(mapping, ring) for g in E.relations.generators]
    return Ideal(ring, gens), primed


def injectivity_claims(E: ExtensionPresentation, source: Optional[str] = None) -> List[MembershipClaim]:
    if not E.adjoined:
        return []
    doubled, primed = doubled_relations(E)
    ring = doubled.ring
    return [
        radical_claim(f"injective:{t}", doubled, ring.var(t) - ring.var(tp), source)
        for t, tp in zip(E.adjoined, primed)
    ]


def fiber_injective(E: ExtensionPresentation) -> CheckResult:
    """t_i - t_i' ∈ √(J + J') for every i: at most one point over each point of X."""
    claims = injectivity_claims(E)
    return CheckResult(all(c.holds for c in claims), list(claims))


def dominance_claims(E: ExtensionPresentation, source: Optional[str] = None) -> List[Claim]:
    """J ∩ Q[x] and I have the same radical; the elimination result feeds the radical checks."""
    if not E.adjoined:
        return []
    image = elimination_claim("image", E.relations, E.adjoined, source)
    I = E.base.ideal
    claims: List[Claim] = [image]
    for k, g in enumerate(image.result.to_ring(E.base.ring).generators):
        claims.append(radical_claim(f"dominant:{k}", I, g))
    for k, g in enumerate(I.generators):
        claims.append(radical_claim(f"dominant-back:{k}", image.result.to_ring(E.base.ring), g, "image"))
    return claims


def _dominant(claims: Sequence[Claim]) -> bool:
    return all(c.holds for c in claims if c.role.startswith("dominant"))


def is_subintegral(E: ExtensionPresentation, source: Optional[str] = None) -> SubintegralReport:
    """Finite, injective on closed points, and onto X (checked through elimination)."""
    finite = finiteness_claims(E, source)
    if not all(c.holds for c in finite):
        return SubintegralReport(False, False, False, list(finite))
    injective = injectivity_claims(E, source)
    dominant = dominance_claims(E, source)
    report = SubintegralReport(
        True,
        all(c.holds for c in injective),
        _dominant(dominant),
        list(finite) + list(injective) + list(dominant),
    )
    logger.info("subintegral check over (%s): %s", ", ".join(E.adjoined) or "-",
                "yes" if report.holds else "; ".join(report.failures()))
    return report


def graph_relations(X: VarietyPresentation, p: Polynomial, q: Polynomial, var: str) -> Ideal:
    """(I + ⟨q·var - p⟩) : q^∞ in Q[var, x]."""
    ring = X.ring.extend([var])
    t = ring.var(var)
    p, q = ring.convert(p), ring.convert(q)
    ideal = Ideal(ring, list(X.ideal.generators) + [q * t - p])
    return saturate(ideal, q)


def conductor(X: VarietyPresentation, p: Polynomial, q: Polynomial, d: int) -> Ideal:
    """Cond(p/q) = ∩_{i=1}^{d-1} ((⟨q^i⟩ + I) : p^i), an ideal of the base ring.

    Raises:
        PreconditionFailed: q is a zero divisor on X.
        NotIntegral: p/q satisfies no monic relation of degree d.
    """
    if d < 1:
        raise InputError(f"integral degree must be positive, got {d}")
    p, q = X.ring.convert(p), X.ring.convert(q)
    if not is_nzd(X.ideal, q):
        raise PreconditionFailed(f"{q} is a zero divisor on the variety")
    var = X.ring.fresh_variable("t")
    E = ExtensionPresentation(X, (var,), graph_relations(X, p, q, var))
    try:
        relation = integral_equation(E, var)
    except NotFinite as exc:
        raise NotIntegral(f"({p}) / ({q}) is not integral over the base ring") from exc
    degree = relation.degree_in(var)
    if degree > d:
        raise NotIntegral(f"({p}) / ({q}) has no monic relation of degree {d} (least degree is {degree})")

    result: Optional[Ideal] = None
    for i in range(1, d):
        colon = quotient(Ideal(X.ring, [q ** i]) + X.ideal, p ** i)
        result = colon if result is None else intersect(result, colon)
    if result is None:
        return Ideal.unit(X.ring)
    return result + X.ideal


def ring_value(E: ExtensionPresentation, element: Polynomial) -> Optional[Polynomial]:
    """If ``element`` of Q[x,t]/J lies in Q[X], its representative in the base ring."""
    order = E.elimination_order()
    nf = E.relations.normal_form(element, order)
    if nf.involves(E.adjoined):
        return None
    return E.base.ring.convert(nf)


