"""Gröbner bases and the ideal operations built on them.

Buchberger's algorithm with normal selection and the Gebauer-Möller pair update. Every
run can be traced: each basis element then remembers the S-pair and division quotients
that produced it, which is what certificates and Nullstellensatz cofactors are made from.
"""
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction as ExactRational
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from config.engine_config import EngineConfig
from errors import ComputationBudgetExceeded, InputError
from poly_core import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    divide_multi,
    exact_quotient,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    normal_form,
    spoly,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceRow:
    """One basis element of a traced Buchberger run.

    ``origin`` is ``("gen", k)`` for ``scale * generators[k]`` or ``("spair", i, j)`` for
    ``scale * (spoly(rows[i], rows[j]) - sum(quotients[l] * rows[l]))``.
    """

    poly: Polynomial
    origin: Tuple
    scale: ExactRational
    quotients: Dict[int, Polynomial] = field(default_factory=dict)


@dataclass(frozen=True)
class GroebnerTrace:
    ring: PolynomialRing
    order: MonomialOrder
    generators: Tuple[Polynomial, ...]
    rows: Tuple[TraceRow, ...]
    minimal: Tuple[int, ...]
    reduced: Tuple[Polynomial, ...]

    @property
    def polys(self) -> List[Polynomial]:
        return [row.poly for row in self.rows]

    def divide(self, f: Polynomial) -> Tuple[Dict[int, Polynomial], Polynomial]:
        """Divide by the minimal part of the traced basis; quotients keyed by row index."""
        basis = [self.rows[i].poly for i in self.minimal]
        quotients, remainder = divide_multi(self.ring.convert(f), basis, self.order)
        return {self.minimal[k]: q for k, q in enumerate(quotients) if not q.is_zero()}, remainder


def _update_pairs(lms: List[Monomial], pairs: Dict[Tuple[int, int], tuple], lmf: Monomial,
                  order: MonomialOrder) -> Dict[Tuple[int, int], tuple]:
    """Gebauer-Möller update of the pair set when a basis element with leading monomial lmf is added."""
    n = len(lms)
    kept = {}
    for (i, j), key in pairs.items():
        lcm_ij = monomial_lcm(lms[i], lms[j])
        if (not monomial_divides(lmf, lcm_ij)
                or lcm_ij == monomial_lcm(lms[i], lmf)
                or lcm_ij == monomial_lcm(lms[j], lmf)):
            kept[(i, j)] = key

    groups: Dict[Monomial, List[int]] = {}
    for i in range(n):
        groups.setdefault(monomial_lcm(lms[i], lmf), []).append(i)
    minimal_lcms: List[Monomial] = []
    for lcm in sorted(groups, key=order.key):
        if all(not monomial_divides(other, lcm) for other in minimal_lcms):
            minimal_lcms.append(lcm)
    for lcm in minimal_lcms:
        members = groups[lcm]
        if not any(lcm == monomial_mul(lms[i], lmf) for i in members):
            i = min(members)
            kept[(i, n)] = (order.key(lcm), i, n)
    return kept


def _minimalize(G: Sequence[Polynomial], order: MonomialOrder) -> List[int]:
    indexed = sorted(range(len(G)), key=lambda k: (order.key(G[k].leading_monomial(order)), k))
    chosen: List[int] = []
    for k in indexed:
        lm = G[k].leading_monomial(order)
        if all(not monomial_divides(G[c].leading_monomial(order), lm) for c in chosen):
            chosen.append(k)
    return chosen


def _interreduce(G: Sequence[Polynomial], order: MonomialOrder) -> List[Polynomial]:
    reduced = []
    for i, g in enumerate(G):
        others = list(G[:i]) + list(G[i + 1:])
        reduced.append(normal_form(g, others, order).monic(order))
    return sorted(reduced, key=lambda g: order.key(g.leading_monomial(order)), reverse=True)


def _buchberger(ring: PolynomialRing, generators: Sequence[Polynomial], order: MonomialOrder,
                track: bool) -> GroebnerTrace:
    budget = EngineConfig.get("budget")
    stats = EngineConfig.stats()
    rows: List[TraceRow] = []
    G: List[Polynomial] = []
    lms: List[Monomial] = []
    pairs: Dict[Tuple[int, int], tuple] = {}
    unit = False

    def add(poly: Polynomial, row: TraceRow) -> None:
        nonlocal pairs
        lm = poly.leading_monomial(order)
        pairs = _update_pairs(lms, pairs, lm, order)
        G.append(poly)
        lms.append(lm)
        rows.append(row)

    for k, g in enumerate(generators):
        if g.is_zero():
            continue
        scale = 1 / g.leading_coefficient(order)
        monic = g.scale(scale)
        add(monic, TraceRow(monic, ("gen", k), scale))
        if monic.is_constant():
            unit = True
            break

    processed = 0
    while pairs and not unit:
        i, j = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        processed += 1
        stats.spairs += 1
        if processed > budget:
            raise ComputationBudgetExceeded(budget, processed)
        s = spoly(G[i], G[j], order)
        if track:
            quotients, remainder = divide_multi(s, G, order)
            qdict = {l: q for l, q in enumerate(quotients) if not q.is_zero()}
        else:
            remainder = normal_form(s, G, order)
            qdict = {}
        if remainder.is_zero():
            continue
        scale = 1 / remainder.leading_coefficient(order)
        monic = remainder.scale(scale)
        add(monic, TraceRow(monic, ("spair", i, j), scale, qdict))
        if monic.is_constant():
            unit = True

    stats.groebner_runs += 1
    stats.largest_basis = max(stats.largest_basis, len(G))
    logger.debug("groebner: %d generators, %d pairs, %d elements", len(generators), processed, len(G))

    if unit:
        last = len(G) - 1
        return GroebnerTrace(ring, order, tuple(generators), tuple(rows), (last,), (ring.one(),))
    minimal = _minimalize(G, order)
    reduced = _interreduce([G[k] for k in minimal], order)
    return GroebnerTrace(ring, order, tuple(generators), tuple(rows), tuple(minimal), tuple(reduced))


class Ideal:
    """An ideal of a polynomial ring, given by generators, with a per-order basis cache."""

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring.convert(g)
            if not g.is_zero():
                gens.append(g)
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb_cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._trace_cache: Dict[MonomialOrder, GroebnerTrace] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def _order(self, order: Optional[MonomialOrder]) -> MonomialOrder:
        order = order or self.ring.order
        if order.nvars != self.ring.nvars:
            raise InputError("monomial order does not match the ring of the ideal")
        return order

    def groebner(self, order: Optional[MonomialOrder] = None) -> Tuple[Polynomial, ...]:
        """Reduced Gröbner basis (monic, sorted by decreasing leading monomial)."""
        order = self._order(order)
        with self._lock:
            cached = self._gb_cache.get(order)
        if cached is not None:
            return cached
        trace = self._trace_cache.get(order)
        if trace is None:
            trace = _buchberger(self.ring, self.generators, order, track=False)
        with self._lock:
            return self._gb_cache.setdefault(order, trace.reduced)

    def trace(self, order: Optional[MonomialOrder] = None) -> GroebnerTrace:
        order = self._order(order)
        with self._lock:
            cached = self._trace_cache.get(order)
        if cached is not None:
            return cached
        trace = _buchberger(self.ring, self.generators, order, track=True)
        with self._lock:
            self._gb_cache.setdefault(order, trace.reduced)
            return self._trace_cache.setdefault(order, trace)

    def normal_form(self, f: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
        order = self._order(order)
        return normal_form(self.ring.convert(f), self.groebner(order), order)

    def contains(self, f: Polynomial, order: Optional[MonomialOrder] = None) -> bool:
        return self.normal_form(f, order).is_zero()

    def is_unit(self) -> bool:
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other: Union["Ideal", Iterable[Polynomial]]) -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.generators + tuple(self.ring.convert(g) for g in extra))

    def to_ring(self, ring: PolynomialRing) -> "Ideal":
        return Ideal(ring, self.generators)

    def __repr__(self) -> str:
        return f"Ideal<{', '.join(str(g) for g in self.generators) or '0'}>"


def _ring_of(gens: Sequence[Polynomial], ring: Optional[PolynomialRing]) -> PolynomialRing:
    if ring is not None:
        return ring
    if not gens:
        raise InputError("cannot infer the ring of an empty generator list")
    return gens[0].ring


def groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
             ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
    """Reduced Gröbner basis of ⟨gens⟩.

    Args:
        gens: Generators, all in one ring.
        order: Monomial order (default: the ring's order).
        ring: Needed only when ``gens`` is empty.

    Returns:
        The reduced basis, monic and sorted by decreasing leading monomial.

    Raises:
        ComputationBudgetExceeded: more S-pairs than the active budget allows.
    """
    return list(Ideal(_ring_of(gens, ring), gens).groebner(order))


def groebner_trace(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                   ring: Optional[PolynomialRing] = None) -> GroebnerTrace:
    return Ideal(_ring_of(gens, ring), gens).trace(order)


def expand_cofactors(trace: GroebnerTrace, quotients: Dict[int, Polynomial]) -> List[Polynomial]:
    """Rewrite ``sum(quotients[k] * rows[k])`` as cofactors of the original generators."""
    ring, order = trace.ring, trace.order
    ngens = len(trace.generators)
    # rows only refer to earlier rows, so one forward pass suffices
    cofactors: List[List[Polynomial]] = []
    for row in trace.rows:
        if row.origin[0] == "gen":
            vector = [ring.zero()] * ngens
            vector[row.origin[1]] = ring.constant(row.scale)
        else:
            _, i, j = row.origin
            lm_i = trace.rows[i].poly.leading_monomial(order)
            lm_j = trace.rows[j].poly.leading_monomial(order)
            lcm = monomial_lcm(lm_i, lm_j)
            m_i = ring.one().mul_term(monomial_div(lcm, lm_i))
            m_j = ring.one().mul_term(monomial_div(lcm, lm_j))
            vector = [m_i * a - m_j * b for a, b in zip(cofactors[i], cofactors[j])]
            for l, q in row.quotients.items():
                vector = [v - q * c for v, c in zip(vector, cofactors[l])]
            vector = [v.scale(row.scale) for v in vector]
        cofactors.append(vector)
    result = [ring.zero()] * ngens
    for k, q in quotients.items():
        result = [r + q * c for r, c in zip(result, cofactors[k])]
    return result


def contains(I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None) -> bool:
    return I.contains(f, order)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True when J ⊆ I."""
    return all(I.contains(g) for g in J.generators)


def rabinowitsch_ideal(I: Ideal, f: Polynomial) -> Tuple[Ideal, str]:
    """I + ⟨1 - z·f⟩ in the ring extended by a fresh variable z."""
    z = I.ring.fresh_variable("z")
    ring = I.ring.extend([z])
    f = ring.convert(f)
    return Ideal(ring, list(I.generators) + [ring.one() - ring.var(z) * f]), z


def radical_contains(I: Ideal, f: Polynomial) -> bool:
    f = I.ring.convert(f)
    if f.is_zero():
        return True
    ideal, _ = rabinowitsch_ideal(I, f)
    return ideal.is_unit()


def eliminate(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """I ∩ Q[remaining variables], read off a block-order basis."""
    drop = tuple(drop_vars)
    for name in drop:
        I.ring.index(name)
    if not drop:
        return I
    order = I.ring.block_order(drop)
    basis = I.groebner(order)
    ring = I.ring.drop(drop)
    kept = [ring.convert(g) for g in basis if not g.involves(drop)]
    logger.debug("eliminate %s: %d of %d basis elements survive", ",".join(drop), len(kept), len(basis))
    return Ideal(ring, kept)


def saturate(I: Ideal, q: Polynomial) -> Ideal:
    """(I : q^∞), as the elimination of z from I + ⟨1 - z·q⟩."""
    q = I.ring.convert(q)
    if q.is_zero():
        raise InputError("cannot saturate by the zero polynomial")
    if q.is_constant():
        return I
    ideal, z = rabinowitsch_ideal(I, q)
    return eliminate(ideal, [z]).to_ring(I.ring)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via w·I + (1 - w)·J and elimination of w."""
    if I.ring.variables != J.ring.variables:
        raise InputError("intersection of ideals from different rings")
    w = I.ring.fresh_variable("w")
    ring = I.ring.extend([w])
    wv = ring.var(w)
    gens = [wv * ring.convert(g) for g in I.generators]
    gens += [(ring.one() - wv) * ring.convert(h) for h in J.generators]
    return eliminate(Ideal(ring, gens), [w]).to_ring(I.ring)


def quotient(I: Ideal, q: Polynomial) -> Ideal:
    """(I : q) = (I ∩ ⟨q⟩) / q."""
    q = I.ring.convert(q)
    if q.is_zero():
        raise InputError("colon by the zero polynomial")
    if q.is_constant():
        return I
    meet = intersect(I, Ideal(I.ring, [q]))
    return Ideal(I.ring, [exact_quotient(g, q) for g in meet.generators])


def equal_radical(I: Ideal, J: Ideal) -> bool:
    return (all(radical_contains(J, g) for g in I.generators)
            and all(radical_contains(I, g) for g in J.generators))


def is_nzd(I: Ideal, q: Polynomial) -> bool:
    """True when q is a non-zero-divisor modulo I, i.e. (I : q) ⊆ I."""
    return ideal_contains(I, quotient(I, q))


# -- claims ---------------------------------------------------------------------------------
#
# A claim records one ideal-theoretic fact a verdict depends on, together with everything
# needed to re-derive it. ``source`` names the role of an elimination claim whose result
# is the leading block of this claim's generators.


@dataclass(frozen=True)
class MembershipClaim:
    role: str
    ideal: Ideal
    target: Polynomial
    holds: bool
    order: Optional[MonomialOrder] = None
    radical_of: Optional[Polynomial] = None
    source: Optional[str] = None

    def recheck(self) -> bool:
        return self.ideal.contains(self.target, self.order) == self.holds


@dataclass(frozen=True)
class EliminationClaim:
    role: str
    ideal: Ideal
    drop: Tuple[str, ...]
    result: Ideal
    source: Optional[str] = None
    holds: bool = True

    def recheck(self) -> bool:
        fresh = eliminate(Ideal(self.ideal.ring, self.ideal.generators), self.drop)
        result = self.result.to_ring(fresh.ring)
        return ideal_contains(fresh, result) and ideal_contains(result, fresh)


@dataclass(frozen=True)
class LeadingTermClaim:
    """Whether the leading ideal of ``ideal`` contains a power variable^k (k ≤ max_exponent)."""

    role: str
    ideal: Ideal
    order: MonomialOrder
    variable: str
    max_exponent: Optional[int]
    holds: bool
    element: Optional[Polynomial] = None
    source: Optional[str] = None

    def recheck(self) -> bool:
        basis = self.ideal.groebner(self.order)
        return (pure_power_element(basis, self.order, self.variable, self.max_exponent) is not None) == self.holds


@dataclass(frozen=True)
class BasisClaim:
    role: str
    ideal: Ideal
    order: MonomialOrder
    basis: Tuple[Polynomial, ...]
    holds: bool = True
    source: Optional[str] = None

    def recheck(self) -> bool:
        return tuple(self.ideal.groebner(self.order)) == self.basis


Claim = Union[MembershipClaim, EliminationClaim, LeadingTermClaim, BasisClaim]


def pure_power_element(basis: Sequence[Polynomial], order: MonomialOrder, variable: str,
                       max_exponent: Optional[int] = None) -> Optional[Polynomial]:
    """The basis element of least degree whose leading monomial is variable^k (or 1)."""
    if not basis:
        return None
    ring = basis[0].ring
    slot = ring.index(variable)
    best = None
    for g in basis:
        lm = g.leading_monomial(order)
        if any(e for i, e in enumerate(lm) if i != slot):
            continue
        if max_exponent is not None and lm[slot] > max_exponent:
            continue
        if best is None or lm[slot] < best.leading_monomial(order)[slot]:
            best = g
    return best


def membership_claim(role: str, I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None,
                     source: Optional[str] = None) -> MembershipClaim:
    f = I.ring.convert(f)
    return MembershipClaim(role, I, f, I.contains(f, order), order, source=source)


def radical_claim(role: str, I: Ideal, f: Polynomial, source: Optional[str] = None) -> MembershipClaim:
    f = I.ring.convert(f)
    ideal, _ = rabinowitsch_ideal(I, f)
    return MembershipClaim(role, ideal, ideal.ring.one(), ideal.is_unit(), radical_of=f, source=source)


def elimination_claim(role: str, I: Ideal, drop: Iterable[str], source: Optional[str] = None) -> EliminationClaim:
    drop = tuple(drop)
    return EliminationClaim(role, I, drop, eliminate(I, drop), source=source)


def saturation_claim(role: str, I: Ideal, q: Polynomial) -> Tuple[EliminationClaim, Ideal]:
    """Saturation as a certifiable elimination; returns the claim and (I : q^∞) in I's ring."""
    q = I.ring.convert(q)
    ideal, z = rabinowitsch_ideal(I, q)
    claim = elimination_claim(role, ideal, [z])
    return claim, claim.result.to_ring(I.ring)


def leading_term_claim(role: str, I: Ideal, order: MonomialOrder, variable: str,
                       max_exponent: Optional[int] = None, source: Optional[str] = None) -> LeadingTermClaim:
    element = pure_power_element(I.groebner(order), order, variable, max_exponent)
    return LeadingTermClaim(role, I, order, variable, max_exponent, element is not None, element, source)


def basis_claim(role: str, I: Ideal, order: Optional[MonomialOrder] = None) -> BasisClaim:
    order = order or I.ring.order
    return BasisClaim(role, I, order, tuple(I.groebner(order)))
