"""Subintegral extension towers built from regulous elements, and Nullstellensatz witnesses.

A tower starts at a variety X and adjoins one verified regulous element at a time. The ring
of the current presentation is Q[t_k, ..., t1, x]; every prefix is a subintegral extension
of Q[X].
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from config.engine_config import EngineConfig
from errors import (
    AlreadyInRing,
    ComputationBudgetExceeded,
    NotFoundWithinBound,
    NotInRadical,
    NotRegulousError,
    PresentationError,
    ReducibleAmbiguity,
)
from extension import ExtensionPresentation, SubintegralReport, VarietyPresentation, is_subintegral
from ideal_engine import Claim, Ideal, expand_cofactors, radical_claim
from poly_core import Polynomial, PolynomialRing, fresh_variable, normal_form, normalize
from regulous import Fraction, SwanKind, SwanResult, Verdict, is_regulous, swan_pair_solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TowerStep:
    fraction: Fraction
    variable: str
    relations: Tuple[Polynomial, ...]
    claims: Tuple[Claim, ...] = ()


@dataclass(frozen=True)
class SeminormTower:
    """Immutable snapshot; :func:`adjoin` returns a new tower."""

    base: VarietyPresentation
    steps: Tuple[TowerStep, ...]
    current: ExtensionPresentation

    @classmethod
    def trivial(cls, base: VarietyPresentation) -> "SeminormTower":
        return cls(base, (), ExtensionPresentation.trivial(base))

    @property
    def height(self) -> int:
        return len(self.steps)

    @property
    def ring(self) -> PolynomialRing:
        return self.current.ring

    @property
    def adjoined(self) -> Tuple[str, ...]:
        return self.current.adjoined

    def next_variable(self) -> str:
        return fresh_variable(f"t{self.height + 1}", self.ring.variables)

    def prefix(self, k: int) -> "SeminormTower":
        """The tower after its first k steps."""
        if not 0 <= k <= self.height:
            raise PresentationError(f"tower of height {self.height} has no prefix of height {k}")
        if k == self.height:
            return self
        tower = SeminormTower.trivial(self.base)
        for step in self.steps[:k]:
            ring = tower.ring.extend([step.variable])
            relations = Ideal(ring, step.relations)
            current = ExtensionPresentation(self.base, (step.variable,) + tower.adjoined, relations)
            tower = SeminormTower(self.base, tower.steps + (step,), current)
        return tower

    def check_chain(self) -> List[SubintegralReport]:
        """is_subintegral for every non-trivial prefix, shortest first."""
        return [is_subintegral(self.prefix(k).current) for k in range(1, self.height + 1)]


def adjoin(T: SeminormTower, f: Fraction) -> SeminormTower:
    """Adjoin the regulous element f of the current presentation as a new variable.

    Raises:
        AlreadyInRing: f already lies in the current ring.
        NotRegulousError: f is not regulous on the current presentation.
        ComputationBudgetExceeded: the decision ran out of S-pairs.
        PresentationError: the grown tower fails the subintegrality re-check.
    """
    f = f.to_ring(T.ring)
    var = T.next_variable()
    verdict = is_regulous(T.current.as_variety(), f, var=var)
    if verdict.verdict is Verdict.UNDECIDED:
        stats = EngineConfig.stats()
        raise ComputationBudgetExceeded(EngineConfig.get("budget"), stats.spairs)
    if not verdict.is_regulous:
        raise NotRegulousError(f"{f} is not regulous on the current presentation: {verdict.reason}")
    if verdict.polynomial_value is not None:
        raise AlreadyInRing(f"{f} equals {verdict.polynomial_value} in the current ring")

    graph = verdict.graph_ideal
    current = ExtensionPresentation(T.base, (var,) + T.adjoined, graph)
    report = is_subintegral(current)
    if not report.holds:
        raise PresentationError(f"adjoining {f} broke subintegrality: {'; '.join(report.failures())}")
    step = TowerStep(f, var, graph.generators, tuple(verdict.claims))
    logger.info("adjoined %s = %s (height %d)", var, f, T.height + 1)
    return SeminormTower(T.base, T.steps + (step,), current)


class CandidateStatus(str, Enum):
    ADJOINED = "Adjoined"
    ALREADY_IN_RING = "AlreadyInRing"
    NOT_REGULOUS = "NotRegulous"
    UNDECIDED = "Undecided"


@dataclass
class CandidateOutcome:
    fraction: Fraction
    status: CandidateStatus
    variable: Optional[str] = None
    reason: str = ""


@dataclass
class SeminormReport:
    tower: SeminormTower
    outcomes: List[CandidateOutcome] = field(default_factory=list)

    @property
    def adjoined(self) -> List[CandidateOutcome]:
        return [o for o in self.outcomes if o.status is CandidateStatus.ADJOINED]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "candidate": str(o.fraction),
                "status": o.status.value,
                "variable": o.variable or "",
                "reason": o.reason,
            }
            for o in self.outcomes
        ]
        return pd.DataFrame(rows, columns=["candidate", "status", "variable", "reason"])


def seminormalize_with_candidates(X: Union[VarietyPresentation, SeminormTower],
                                  candidates: Sequence[Fraction]) -> SeminormReport:
    """Greedily adjoin every candidate that is regulous and not yet in the ring.

    Candidates are re-read over the grown presentation after every adjunction. Failures
    never abort the run; they are recorded per candidate.
    """
    tower = X if isinstance(X, SeminormTower) else SeminormTower.trivial(X)
    report = SeminormReport(tower)
    for candidate in candidates:
        try:
            grown = adjoin(report.tower, candidate)
        except AlreadyInRing as exc:
            report.outcomes.append(CandidateOutcome(candidate, CandidateStatus.ALREADY_IN_RING, reason=str(exc)))
        except (NotRegulousError, ReducibleAmbiguity) as exc:
            report.outcomes.append(CandidateOutcome(candidate, CandidateStatus.NOT_REGULOUS, reason=str(exc)))
        except ComputationBudgetExceeded as exc:
            report.outcomes.append(CandidateOutcome(candidate, CandidateStatus.UNDECIDED, reason=str(exc)))
        else:
            report.tower = grown
            report.outcomes.append(CandidateOutcome(candidate, CandidateStatus.ADJOINED, grown.steps[-1].variable))
    logger.info("tower of height %d after %d candidates", report.tower.height, len(candidates))
    return report


# -- Swan pairs ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class SwanPair:
    p: Polynomial
    q: Polynomial
    result: SwanResult


def slice_polynomials(ring: PolynomialRing, degree: int, coefficients: Iterable[int]) -> List[Polynomial]:
    """Non-constant polynomials of degree at most ``degree`` with coefficients in the given set."""
    monomials = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(ring.nvars), total):
            exps = [0] * ring.nvars
            for i in combo:
                exps[i] += 1
            monomials.append(tuple(exps))
    values = sorted(set(coefficients))
    polys = []
    for choice in product(values, repeat=len(monomials)):
        poly = normalize(ring, [(c, m) for c, m in zip(choice, monomials) if c])
        if not poly.is_constant():
            polys.append(poly)
    return polys


def swan_scan(X: VarietyPresentation, degree_bound: Optional[int] = None,
              coefficients: Iterable[int] = (0, 1)) -> List[SwanPair]:
    """Pairs (p, q) of slice polynomials with p² = q³ on X whose cube root is not in Q[X].

    A hit is a witness that X is not seminormal. An empty result only says the slice holds
    no such pair.
    """
    degree_bound = degree_bound or EngineConfig.get("swan_degree")
    polys = slice_polynomials(X.ring, degree_bound, coefficients)
    logger.info("swan scan over %d slice polynomials of degree <= %d", len(polys), degree_bound)
    basis = X.ideal.groebner()
    order = X.ring.order
    cubes: Dict[Polynomial, List[Polynomial]] = {}
    for q in polys:
        if X.vanishes(q):
            continue
        cubes.setdefault(normal_form(q ** 3, basis, order), []).append(q)

    found = []
    for p in polys:
        for q in cubes.get(normal_form(p ** 2, basis, order), []):
            result = swan_pair_solve(X, p, q)
            if result.kind is SwanKind.PROPERLY_REGULOUS:
                logger.info("swan pair (%s, %s) is properly regulous", p, q)
                found.append(SwanPair(p, q, result))
    return found


# -- Nullstellensatz witnesses ------------------------------------------------------------------


@dataclass
class NullstellensatzWitness:
    """f^exponent = Σ cofactors[i]·gens[i] + Σ relation_cofactors[j]·J[j]."""

    exponent: int
    cofactors: List[Polynomial]
    relation_cofactors: List[Polynomial]
    claims: List[Claim] = field(default_factory=list)


def nullstellensatz_witness(T: Union[SeminormTower, VarietyPresentation], f: Polynomial,
                            gens: Sequence[Polynomial]) -> NullstellensatzWitness:
    """The least n with f^n ∈ ⟨gens⟩ + J, and cofactors expressing it.

    Raises:
        NotInRadical: f does not vanish on the zeros of gens in the presentation.
        NotFoundWithinBound: no n up to the configured bound works.
    """
    tower = T if isinstance(T, SeminormTower) else SeminormTower.trivial(T)
    ring = tower.ring
    f = ring.convert(f)
    gens = [ring.convert(g) for g in gens]
    relations = list(tower.current.relations.generators)
    ideal = Ideal(ring, gens + relations)

    radical = radical_claim("radical", ideal, f)
    if not radical.holds:
        raise NotInRadical(f"{f} does not vanish on the common zeros of the given elements")

    # Ideal drops zero generators; keep positions aligned with the caller's list.
    kept = [g for g in gens + relations if not g.is_zero()]
    positions = [i for i, g in enumerate(gens + relations) if not g.is_zero()]
    trace = Ideal(ring, kept).trace()
    bound = EngineConfig.get("nullstellensatz_bound")
    for n in range(1, bound + 1):
        quotients, remainder = trace.divide(f ** n)
        if not remainder.is_zero():
            continue
        expanded = expand_cofactors(trace, quotients)
        full = [ring.zero()] * (len(gens) + len(relations))
        for slot, h in zip(positions, expanded):
            full[slot] = h
        cofactors, relation_cofactors = full[:len(gens)], full[len(gens):]
        residue = f ** n
        for h, g in zip(full, gens + relations):
            residue = residue - h * g
        if not residue.is_zero():
            raise PresentationError("cofactor expansion does not reproduce the power")
        logger.info("%s^%d lies in the ideal of %d elements", f, n, len(gens))
        return NullstellensatzWitness(n, cofactors, relation_cofactors, [radical])
    raise NotFoundWithinBound(f"no power of {f} up to the bound lies in the ideal", bound)
