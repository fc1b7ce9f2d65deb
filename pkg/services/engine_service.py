import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from certificate import build_certificate
from config.engine_config import EngineConfig
from errors import (
    ComputationBudgetExceeded,
    InputError,
    NotFoundWithinBound,
    NotInRadical,
    SnkError,
    WitnessNotFound,
)
from extension import ExtensionPresentation, VarietyPresentation, conductor, finiteness_claims, is_subintegral
from ideal_engine import (
    Claim,
    Ideal,
    basis_claim,
    elimination_claim,
    membership_claim,
    radical_claim,
    saturation_claim,
)
from poly_core import exact_quotient
from problem_file import ProblemFile, emit_problem, load_problem
from regulous import (
    RegulousVerdict,
    check_power_pair,
    construct_from_power_relation,
    elementary_witness,
    is_regulous,
    restrict_regulous,
    swan_pair_solve,
)
from seminorm import SeminormTower, nullstellensatz_witness, seminormalize_with_candidates, swan_scan

logger = logging.getLogger(__name__)

# (verdict, claims, result, reason)
TaskResult = Tuple[str, List[Claim], Dict[str, Any], str]

UNDECIDED_ERRORS = (ComputationBudgetExceeded, NotFoundWithinBound, WitnessNotFound)


@dataclass
class TaskOutcome:
    """What one problem file produced; ``status`` is ok, undecided or error."""

    path: Optional[str]
    task: Optional[str]
    status: str
    verdict: Optional[str] = None
    message: str = ""
    certificate: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0
    counters: Dict[str, int] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "undecided": 2}.get(self.status, 1)


def _strings(polys) -> List[str]:
    return [str(p) for p in polys]


def _tagged(claims: Sequence[Claim], prefix: str = "", suffix: str = "") -> List[Claim]:
    """Rename roles (and the sources pointing at them) so several runs share one certificate."""
    tagged = []
    for claim in claims:
        source = f"{prefix}{claim.source}{suffix}" if claim.source is not None else None
        tagged.append(replace(claim, role=f"{prefix}{claim.role}{suffix}", source=source))
    return tagged


def _regulous_result(verdict: RegulousVerdict) -> Dict[str, Any]:
    return {
        "graph_var": verdict.graph_var,
        "graph": _strings(verdict.graph_ideal.generators) if verdict.graph_ideal is not None else [],
        "relation": str(verdict.integral_relation) if verdict.integral_relation is not None else None,
        "value": str(verdict.polynomial_value) if verdict.polynomial_value is not None else None,
    }


def _regulous_task(verdict: RegulousVerdict) -> TaskResult:
    return verdict.verdict.value, list(verdict.claims), _regulous_result(verdict), verdict.reason


def _tower_claims(tower: SeminormTower) -> List[Claim]:
    claims: List[Claim] = []
    for k, step in enumerate(tower.steps, start=1):
        claims.extend(_tagged(step.claims, prefix=f"step{k}/"))
    return claims


class EngineService:
    """Service class running problem files through the engine and packaging certificates."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = EngineConfig.from_env(config)
        self.handlers: Dict[str, Callable[[ProblemFile], TaskResult]] = {
            "gb": self._gb,
            "member": self._member,
            "radical-member": self._radical_member,
            "eliminate": self._eliminate,
            "saturate": self._saturate,
            "quotient": self._quotient,
            "regulous-check": self._regulous_check,
            "subintegral-check": self._subintegral_check,
            "swan-check": self._swan_check,
            "swan-scan": self._swan_scan,
            "conductor": self._conductor,
            "seminormalize": self._seminormalize,
            "nullstellensatz": self._nullstellensatz,
            "restrict": self._restrict,
            "power-pair": self._power_pair,
            "power-relation": self._power_relation,
            "elementary-witness": self._elementary_witness,
        }

    # -- entry points ---------------------------------------------------------------------------

    def run_file(self, path: str, task: Optional[str] = None) -> TaskOutcome:
        """Load and run one problem file; ``task`` must match the file's task when given."""
        with EngineConfig.use(self.config):
            try:
                problem = load_problem(path)
            except InputError as e:
                return TaskOutcome(path, task, "error", message=f"{path}: {e}")
            if task is not None and task != problem.task:
                return TaskOutcome(path, task, "error",
                                   message=f"{path}: file describes task {problem.task!r}, not {task!r}")
            return self._run(problem)

    def run_problem(self, problem: ProblemFile) -> TaskOutcome:
        with EngineConfig.use(self.config):
            return self._run(problem)

    def run_batch(self, paths: Sequence[str], task: Optional[str] = None) -> List[TaskOutcome]:
        """Run independent files, in worker processes when ``jobs`` > 1; results keep input order."""
        jobs = self.config["jobs"]
        if jobs <= 1 or len(paths) <= 1:
            return [self.run_file(path, task) for path in paths]
        with ProcessPoolExecutor(max_workers=min(jobs, len(paths))) as pool:
            return list(pool.map(_run_in_worker, paths, [task] * len(paths), [self.config] * len(paths)))

    # -- dispatch -------------------------------------------------------------------------------

    def _run(self, problem: ProblemFile) -> TaskOutcome:
        started = time.perf_counter()
        text = emit_problem(problem)
        handler = self.handlers[problem.task]
        with EngineConfig.collect_stats() as stats:
            try:
                verdict, claims, result, reason = handler(problem)
                status = "undecided" if verdict == "Undecided" else "ok"
            except UNDECIDED_ERRORS as e:
                verdict, claims, result, reason, status = "Undecided", [], {}, str(e), "undecided"
            except SnkError as e:
                logger.info("%s: %s", problem.path or problem.task, e)
                return TaskOutcome(problem.path, problem.task, "error", message=str(e),
                                   elapsed=time.perf_counter() - started, counters=stats.as_dict())
            counters = stats.as_dict()
            try:
                certificate = build_certificate(problem.task, text, verdict, claims, result, reason, counters)
            except ComputationBudgetExceeded as e:
                return TaskOutcome(problem.path, problem.task, "undecided", "Undecided",
                                   f"certificate could not be written: {e}",
                                   elapsed=time.perf_counter() - started, counters=counters)
        elapsed = time.perf_counter() - started
        logger.info("%s: %s (%d S-pairs, %.2fs)", problem.path or problem.task, verdict, counters["spairs"], elapsed)
        return TaskOutcome(problem.path, problem.task, status, verdict, reason, certificate, elapsed, counters)

    # -- ideal tasks ----------------------------------------------------------------------------

    def _ideal(self, problem: ProblemFile) -> Ideal:
        return Ideal(problem.ring, problem.ideal_generators())

    def _gb(self, problem: ProblemFile) -> TaskResult:
        claim = basis_claim("basis", self._ideal(problem))
        return "Computed", [claim], {"basis": _strings(claim.basis)}, ""

    def _member(self, problem: ProblemFile) -> TaskResult:
        claim = membership_claim("member", self._ideal(problem), problem.polynomial("target"))
        return ("Member" if claim.holds else "NotMember"), [claim], {}, ""

    def _radical_member(self, problem: ProblemFile) -> TaskResult:
        claim = radical_claim("radical", self._ideal(problem), problem.polynomial("target"))
        return ("Member" if claim.holds else "NotMember"), [claim], {}, ""

    def _eliminate(self, problem: ProblemFile) -> TaskResult:
        claim = elimination_claim("eliminate", self._ideal(problem), problem.names("drop"))
        return "Computed", [claim], {
            "ring": list(claim.result.ring.variables),
            "result": _strings(claim.result.generators),
        }, ""

    def _saturate(self, problem: ProblemFile) -> TaskResult:
        q = problem.polynomial("by")
        if q.is_zero():
            raise InputError("cannot saturate by the zero polynomial")
        claim, saturation = saturation_claim("saturate", self._ideal(problem), q)
        return "Computed", [claim], {"result": _strings(saturation.generators)}, ""

    def _quotient(self, problem: ProblemFile) -> TaskResult:
        I = self._ideal(problem)
        q = problem.polynomial("by")
        if q.is_zero():
            raise InputError("colon by the zero polynomial")
        w = I.ring.fresh_variable("w")
        ring = I.ring.extend([w])
        wv = ring.var(w)
        gens = [wv * ring.convert(g) for g in I.generators] + [(ring.one() - wv) * ring.convert(q)]
        meet = elimination_claim("meet", Ideal(ring, gens), [w])
        result = meet.result.to_ring(I.ring)
        quotient = [exact_quotient(g, q) for g in result.generators]
        return "Computed", [meet], {
            "ring": list(I.ring.variables),
            "by": str(q),
            "meet": _strings(result.generators),
            "quotient": _strings(quotient),
        }, ""

    # -- regulous tasks -------------------------------------------------------------------------

    def _graph_var(self, problem: ProblemFile, X: VarietyPresentation) -> str:
        return problem.raw("graph-var") or X.ring.fresh_variable("t")

    def _regulous_check(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        var = self._graph_var(problem, X)
        system = None
        if problem.has("graph"):
            system = problem.polynomials("graph", problem.extended_ring([var]))
        return _regulous_task(is_regulous(X, problem.function(), system, var))

    def _restrict(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        extra = [g for entry in problem.entries["restrict"] for g in problem.polynomial_list("restrict", entry)]
        V = VarietyPresentation.from_generators(X.ring, list(X.ideal.generators) + extra)
        return _regulous_task(restrict_regulous(X, V, problem.fraction(), X.ring.fresh_variable("t")))

    def _power_pair(self, problem: ProblemFile) -> TaskResult:
        powers = problem.integers("powers")
        if len(powers) != 2:
            raise InputError("powers must list exactly two exponents")
        X = problem.variety()
        return _regulous_task(check_power_pair(X, problem.fraction(), powers[0], powers[1],
                                               X.ring.fresh_variable("t")))

    def _power_relation(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        verdict = construct_from_power_relation(X, problem.polynomial("p"), problem.polynomial("q"),
                                                problem.integer("exponent"), X.ring.fresh_variable("t"))
        return _regulous_task(verdict)

    def _subintegral_check(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        names = problem.names("adjoin")
        relations = problem.polynomials("relation", problem.extended_ring(names))
        E = ExtensionPresentation.from_relations(X, names, relations)
        report = is_subintegral(E)
        verdict = "Subintegral" if report.holds else "NotSubintegral"
        return verdict, list(report.claims), {"failures": report.failures()}, "; ".join(report.failures())

    def _swan_check(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        result = swan_pair_solve(X, problem.polynomial("p"), problem.polynomial("q"), X.ring.fresh_variable("t"))
        value = str(result.value) if result.value is not None else None
        return result.kind.value, list(result.claims), {"value": value}, ""

    def _swan_scan(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        coefficients = problem.integers("coefficients") if problem.has("coefficients") else (0, 1)
        pairs = swan_scan(X, problem.integer("degree"), coefficients)
        claims: List[Claim] = []
        for k, pair in enumerate(pairs):
            claims.extend(_tagged(pair.result.claims, suffix=f"@{k}"))
        verdict = "NotSeminormal" if pairs else "NoneFound"
        return verdict, claims, {"pairs": [[str(pair.p), str(pair.q)] for pair in pairs]}, ""

    def _conductor(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        f = problem.fraction()
        degree = problem.integer("degree")
        result = conductor(X, f.p, f.q, degree)
        var = X.ring.fresh_variable("t")
        ring = X.ring.extend([var])
        graph_ideal = Ideal(ring, list(X.ideal.generators) + [ring.convert(f.q) * ring.var(var) - ring.convert(f.p)])
        graph, relations = saturation_claim("graph", graph_ideal, f.q)
        E = ExtensionPresentation(X, (var,), relations)
        claims: List[Claim] = [graph] + list(finiteness_claims(E, "graph"))
        # c ∈ Cond(p/q) needs c·p^i ∈ ⟨q^i⟩ + I for every 0 < i < degree
        for k, c in enumerate(result.generators):
            for i in range(1, degree):
                colon = Ideal(X.ring, list(X.ideal.generators) + [f.q ** i])
                claims.append(membership_claim(f"conductor:{k}.{i}", colon, c * f.p ** i))
        return "Computed", claims, {"conductor": _strings(result.generators), "degree": degree}, ""

    def _elementary_witness(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        witness = elementary_witness(X, problem.function(), X.ring.fresh_variable("t"))
        E = witness.extension
        ring = E.ring
        element = witness.element
        claims = list(witness.claims) + [
            membership_claim("square", E.relations, element ** 2 - ring.convert(witness.square)),
            membership_claim("cube", E.relations, element ** 3 - ring.convert(witness.cube)),
            basis_claim("presentation", E.relations, E.elimination_order()),
        ]
        return "Witness", claims, {
            "element": str(element),
            "omega": str(witness.omega),
            "power": witness.power,
            "shift": witness.shift,
            "multiplier": str(witness.multiplier),
            "square": str(witness.square),
            "cube": str(witness.cube),
            "adjoined": list(E.adjoined),
            "conductor": _strings(witness.conductor.generators),
        }, ""

    # -- towers ---------------------------------------------------------------------------------

    def _seminormalize(self, problem: ProblemFile) -> TaskResult:
        report = seminormalize_with_candidates(problem.variety(), problem.fractions("candidate"))
        tower = report.tower
        outcomes = [
            {"candidate": str(o.fraction), "status": o.status.value, "variable": o.variable, "reason": o.reason}
            for o in report.outcomes
        ]
        return "Computed", _tower_claims(tower), {
            "ring": list(tower.ring.variables),
            "relations": _strings(tower.current.relations.generators),
            "outcomes": outcomes,
        }, ""

    def _nullstellensatz(self, problem: ProblemFile) -> TaskResult:
        X = problem.variety()
        tower = seminormalize_with_candidates(X, problem.fractions("candidate")).tower
        adjoin = problem.extended_ring(problem.names("adjoin"))
        ring = tower.ring
        f = ring.convert(problem.polynomial("target", adjoin))
        gens = [ring.convert(g) for g in problem.polynomials("gen", adjoin)]
        overrides = dict(self.config)
        if problem.has("bound"):
            overrides["nullstellensatz_bound"] = problem.integer("bound")
        with EngineConfig.use(overrides):
            try:
                witness = nullstellensatz_witness(tower, f, gens)
            except NotInRadical as e:
                ideal = Ideal(ring, gens + list(tower.current.relations.generators))
                claims = _tower_claims(tower) + [radical_claim("radical", ideal, f)]
                return "NotInRadical", claims, {}, str(e)
        return "Witness", _tower_claims(tower) + list(witness.claims), {
            "ring": list(ring.variables),
            "target": str(f),
            "exponent": witness.exponent,
            "gens": _strings(gens),
            "cofactors": _strings(witness.cofactors),
            "relations": _strings(tower.current.relations.generators),
            "relation_cofactors": _strings(witness.relation_cofactors),
        }, ""


def _run_in_worker(path: str, task: Optional[str], config: Dict[str, Any]) -> TaskOutcome:
    return EngineService(config).run_file(path, task)
