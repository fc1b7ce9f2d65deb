"""Certificate files: claims turned into witnesses that re-check by division alone.

A certificate is a JSON document (sorted keys, schema-versioned). Every claim carries the
ring, order and generators it speaks about plus one witness:

* a Buchberger trace, whose rows are replayed (each row is a scaled generator or a reduced
  S-polynomial of earlier rows), so every row is a proven ideal member;
* quotients over trace rows that recompose a target exactly (membership);
* a Gröbner basis with the S-pair criterion checked by division (non-membership, leading
  terms, elimination).

Verification never runs Buchberger; it only multiplies, adds and calls ``divide_multi``.
"""
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction as ExactRational
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config.engine_config import EngineConfig
from errors import CertificateError, InputError
from ideal_engine import (
    BasisClaim,
    Claim,
    EliminationClaim,
    GroebnerTrace,
    LeadingTermClaim,
    MembershipClaim,
)
from poly_core import (
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    divide_multi,
    monomial_coprime,
    normal_form,
    spoly,
)
from poly_parser import PolynomialParser
from problem_file import ProblemFile, parse_problem
from regulous import as_stratified

logger = logging.getLogger(__name__)

REGULOUS_TASKS = ("regulous-check", "restrict", "power-pair", "power-relation")
COMPUTED_TASKS = ("gb", "eliminate", "saturate", "quotient", "conductor", "seminormalize")
DECIDING_PREFIXES = ("finite:", "injective:", "dominant", "vanishes:")


# -- writing ------------------------------------------------------------------------------------


def _poly(p: Polynomial) -> str:
    return str(p)


def _polys(ps: Sequence[Polynomial]) -> List[str]:
    return [str(p) for p in ps]


def _trace_record(trace: GroebnerTrace) -> Dict[str, Any]:
    rows = []
    for row in trace.rows:
        rows.append({
            "poly": _poly(row.poly),
            "origin": list(row.origin),
            "scale": str(row.scale),
            "quotients": {str(l): _poly(q) for l, q in sorted(row.quotients.items())},
        })
    return {"rows": rows, "minimal": list(trace.minimal)}


def _quotient_record(quotients: Dict[int, Polynomial]) -> Dict[str, str]:
    return {str(k): _poly(q) for k, q in sorted(quotients.items())}


def claim_record(claim: Claim) -> Dict[str, Any]:
    """Serialize a claim together with a witness for its truth value."""
    ideal = claim.ideal
    ring = ideal.ring
    record: Dict[str, Any] = {
        "role": claim.role,
        "holds": claim.holds,
        "source": claim.source,
        "ring": list(ring.variables),
        "generators": _polys(ideal.generators),
    }

    if isinstance(claim, MembershipClaim):
        order = claim.order or ring.order
        record.update(kind="membership", order=order.describe(ring.variables), target=_poly(claim.target),
                      radical_of=_poly(claim.radical_of) if claim.radical_of is not None else None)
        if claim.holds:
            trace = ideal.trace(order)
            quotients, _ = trace.divide(claim.target)
            record["witness"] = {"trace": _trace_record(trace), "quotients": _quotient_record(quotients)}
        else:
            basis = ideal.groebner(order)
            record["witness"] = {
                "basis": _polys(basis),
                "remainder": _poly(normal_form(claim.target, basis, order)),
            }

    elif isinstance(claim, EliminationClaim):
        order = ring.block_order(claim.drop)
        record.update(kind="elimination", order=order.describe(ring.variables), drop=list(claim.drop),
                      result=_polys(claim.result.generators))
        record["witness"] = {"trace": _trace_record(ideal.trace(order))}

    elif isinstance(claim, LeadingTermClaim):
        order = claim.order
        record.update(kind="leading-term", order=order.describe(ring.variables), variable=claim.variable,
                      max_exponent=claim.max_exponent,
                      element=_poly(claim.element) if claim.element is not None else None)
        trace = ideal.trace(order)
        witness: Dict[str, Any] = {"trace": _trace_record(trace)}
        if claim.element is not None:
            quotients, _ = trace.divide(claim.element)
            witness["element_quotients"] = _quotient_record(quotients)
        record["witness"] = witness

    elif isinstance(claim, BasisClaim):
        order = claim.order
        trace = ideal.trace(order)
        record.update(kind="basis", order=order.describe(ring.variables), basis=_polys(claim.basis))
        record["witness"] = {
            "trace": _trace_record(trace),
            "basis_quotients": [_quotient_record(trace.divide(b)[0]) for b in claim.basis],
        }
    else:
        raise CertificateError(f"cannot serialize claim of type {type(claim).__name__}")
    return record


def build_certificate(task: str, problem_text: str, verdict: str, claims: Sequence[Claim],
                      result: Optional[Dict[str, Any]] = None, reason: str = "",
                      counters: Optional[Dict[str, int]] = None) -> Dict[str, Any]:
    return {
        "schema": EngineConfig.CERTIFICATE_SCHEMA,
        "engine": {"name": EngineConfig.ENGINE_NAME, "version": EngineConfig.ENGINE_VERSION},
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "task": task,
        "problem": problem_text,
        "verdict": verdict,
        "reason": reason,
        "counters": counters or {},
        "result": result or {},
        "claims": [claim_record(c) for c in claims],
    }


def dumps(certificate: Dict[str, Any]) -> str:
    return json.dumps(certificate, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_certificate(path: str, certificate: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(certificate))


def load_certificate(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise CertificateError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CertificateError(f"{path} is not a certificate: {exc.msg} at line {exc.lineno}") from exc


# -- verification ---------------------------------------------------------------------------------


class WitnessFailure(Exception):
    """A witness does not establish what its claim says."""


@dataclass
class VerificationReport:
    ok: bool
    failures: List[str] = field(default_factory=list)
    derived_verdict: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class _CheckedClaim:
    role: str
    kind: str
    holds: bool
    ring: PolynomialRing
    generators: List[Polynomial]
    order: Optional[MonomialOrder] = None
    result: List[Polynomial] = field(default_factory=list)
    source: Optional[str] = None
    target: Optional[Polynomial] = None
    element: Optional[Polynomial] = None
    drop: Tuple[str, ...] = ()
    variable: Optional[str] = None


def _field(record: Dict[str, Any], key: str, kind: type = object) -> Any:
    if key not in record:
        raise CertificateError(f"missing field {key!r}")
    value = record[key]
    if kind is not object and not isinstance(value, kind):
        raise CertificateError(f"field {key!r} has the wrong type")
    return value


def _swan_kind(holds: Dict[str, bool], suffix: str = "") -> str:
    """InRing needs a vanishing q or a proven cube root; ProperlyRegulous needs a failed candidate."""
    if not holds.get(f"pair{suffix}", False):
        return "NotAPair"
    if holds.get(f"zero{suffix}") or holds.get(f"in-ring{suffix}"):
        return "InRing"
    candidate = holds.get(f"candidate{suffix}")
    if candidate is None or (candidate and f"in-ring{suffix}" not in holds):
        return "Invalid"
    return "ProperlyRegulous"


class CertificateVerifier:
    """Re-check a certificate using division only."""

    def __init__(self, certificate: Dict[str, Any]):
        if not isinstance(certificate, dict):
            raise CertificateError("a certificate must be a JSON object")
        self.certificate = certificate
        self.failures: List[str] = []
        self.problem: Optional[ProblemFile] = None

    # -- parsing helpers ------------------------------------------------------------------------

    def _ring(self, record: Dict[str, Any]) -> Tuple[PolynomialRing, MonomialOrder]:
        variables = _field(record, "ring", list)
        try:
            ring = PolynomialRing(tuple(variables))
            order = MonomialOrder.from_description(_field(record, "order", dict), ring.variables)
            return ring.with_order(order), order
        except InputError as exc:
            raise CertificateError(f"bad ring or order: {exc}") from exc

    def _parse(self, ring: PolynomialRing, text: Any) -> Polynomial:
        if not isinstance(text, str):
            raise CertificateError(f"expected polynomial text, found {text!r}")
        try:
            return PolynomialParser(ring).parse(text)
        except InputError as exc:
            raise CertificateError(f"unreadable polynomial {text!r}: {exc}") from exc

    def _parse_all(self, ring: PolynomialRing, texts: Any) -> List[Polynomial]:
        if not isinstance(texts, list):
            raise CertificateError("expected a list of polynomials")
        return [self._parse(ring, t) for t in texts]

    def _quotients(self, ring: PolynomialRing, record: Any, nrows: int) -> Dict[int, Polynomial]:
        if not isinstance(record, dict):
            raise CertificateError("quotients must be an object")
        quotients = {}
        for key, text in record.items():
            try:
                index = int(key)
            except ValueError:
                raise CertificateError(f"bad row index {key!r}") from None
            if not 0 <= index < nrows:
                raise WitnessFailure(f"quotient refers to missing row {index}")
            quotients[index] = self._parse(ring, text)
        return quotients

    # -- witness checks -------------------------------------------------------------------------

    def _replay(self, ring: PolynomialRing, order: MonomialOrder, generators: List[Polynomial],
                trace: Dict[str, Any]) -> Tuple[List[Polynomial], List[int]]:
        """Check every trace row; returns the row polynomials and the minimal indices."""
        rows: List[Polynomial] = []
        for n, row in enumerate(_field(trace, "rows", list)):
            poly = self._parse(ring, _field(row, "poly"))
            origin = _field(row, "origin", list)
            try:
                scale = ExactRational(_field(row, "scale", str))
            except (ValueError, ZeroDivisionError):
                raise CertificateError(f"bad scale in row {n}") from None
            if origin[:1] == ["gen"] and len(origin) == 2 and isinstance(origin[1], int):
                k = origin[1]
                if not 0 <= k < len(generators):
                    raise WitnessFailure(f"row {n} refers to missing generator {k}")
                expected = generators[k].scale(scale)
            elif origin[:1] == ["spair"] and len(origin) == 3 and all(isinstance(i, int) for i in origin[1:]):
                i, j = origin[1], origin[2]
                if not (0 <= i < n and 0 <= j < n):
                    raise WitnessFailure(f"row {n} refers to a later row")
                s = spoly(rows[i], rows[j], order)
                for l, q in self._quotients(ring, _field(row, "quotients"), n).items():
                    s = s - q * rows[l]
                expected = s.scale(scale)
            else:
                raise CertificateError(f"bad origin {origin!r} in row {n}")
            if poly != expected or poly.is_zero():
                raise WitnessFailure(f"trace row {n} does not replay")
            rows.append(poly)
        minimal = _field(trace, "minimal", list)
        if (rows and not minimal) or not all(isinstance(k, int) and 0 <= k < len(rows) for k in minimal):
            raise WitnessFailure("bad minimal row indices")
        return rows, minimal

    def _recompose(self, rows: List[Polynomial], quotients: Dict[int, Polynomial], target: Polynomial) -> None:
        total = target.ring.zero()
        for k, q in quotients.items():
            total = total + q * rows[k]
        if total != target:
            raise WitnessFailure("quotients do not recompose the target")

    def _check_groebner(self, basis: List[Polynomial], order: MonomialOrder) -> None:
        """Buchberger's criterion by division; pairs with coprime leading monomials are skipped."""
        lms = [g.leading_monomial(order) for g in basis]
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if monomial_coprime(lms[i], lms[j]):
                    continue
                _, remainder = divide_multi(spoly(basis[i], basis[j], order), basis, order)
                if not remainder.is_zero():
                    raise WitnessFailure("basis fails the S-pair criterion")

    def _reduces_to_zero(self, polys: Sequence[Polynomial], basis: List[Polynomial], order: MonomialOrder) -> None:
        for p in polys:
            _, remainder = divide_multi(p, basis, order)
            if not remainder.is_zero():
                raise WitnessFailure("an element does not reduce to zero modulo the basis")

    def _groebner_of_ideal(self, ring: PolynomialRing, order: MonomialOrder, generators: List[Polynomial],
                           witness: Dict[str, Any]) -> Tuple[List[Polynomial], List[Polynomial]]:
        """Replayed rows and a proven Gröbner basis of the ideal (the minimal rows)."""
        rows, minimal = self._replay(ring, order, generators, _field(witness, "trace", dict))
        basis = [rows[k] for k in minimal]
        self._check_groebner(basis, order)
        self._reduces_to_zero(generators, basis, order)
        return rows, basis

    def _check_membership(self, record, ring, order, generators) -> bool:
        target = self._parse(ring, _field(record, "target"))
        witness = _field(record, "witness", dict)
        if "trace" in witness:
            rows, minimal = self._replay(ring, order, generators, witness["trace"])
            quotients = self._quotients(ring, _field(witness, "quotients"), len(rows))
            if not set(quotients) <= set(minimal):
                raise WitnessFailure("quotients must use minimal rows only")
            self._recompose(rows, quotients, target)
            return True
        basis = self._parse_all(ring, _field(witness, "basis"))
        if not basis:
            return target.is_zero()
        self._check_groebner(basis, order)
        self._reduces_to_zero(generators, basis, order)
        _, remainder = divide_multi(target, basis, order)
        if remainder != self._parse(ring, _field(witness, "remainder")):
            raise WitnessFailure("recorded remainder does not match")
        return remainder.is_zero()

    def _check_radical_target(self, record, ring, generators) -> None:
        """A radical claim is 1 ∈ I + ⟨1 - z·f⟩; its last generator must be exactly that."""
        text = record.get("radical_of")
        if text is None:
            return
        f = self._parse(ring, text)
        z = ring.variables[0]
        if not generators or generators[-1] != ring.one() - ring.var(z) * f:
            raise WitnessFailure("radical claim is not built from its element")
        if self._parse(ring, _field(record, "target")) != ring.one():
            raise WitnessFailure("radical claim must target 1")

    def _check_leading_term(self, record, ring, order, generators) -> bool:
        witness = _field(record, "witness", dict)
        rows, basis = self._groebner_of_ideal(ring, order, generators, witness)
        variable = _field(record, "variable", str)
        if not ring.has_variable(variable):
            raise CertificateError(f"unknown variable {variable!r}")
        slot = ring.index(variable)
        bound = record.get("max_exponent")
        holds = False
        for g in basis:
            lm = g.leading_monomial(order)
            if any(e for i, e in enumerate(lm) if i != slot):
                continue
            if bound is None or lm[slot] <= bound:
                holds = True
        element = record.get("element")
        if element is not None:
            if not holds:
                raise WitnessFailure("an element is recorded for a failing leading-term claim")
            poly = self._parse(ring, element)
            lm = poly.leading_monomial(order)
            if any(e for i, e in enumerate(lm) if i != slot) or (bound is not None and lm[slot] > bound):
                raise WitnessFailure("recorded element does not have a pure-power leading monomial")
            quotients = self._quotients(ring, _field(witness, "element_quotients"), len(rows))
            self._recompose(rows, quotients, poly)
        return holds

    def _check_elimination(self, record, ring, order, generators) -> List[Polynomial]:
        witness = _field(record, "witness", dict)
        drop = _field(record, "drop", list)
        for name in drop:
            if not ring.has_variable(name):
                raise CertificateError(f"unknown variable {name!r}")
        expected = ring.block_order(drop)
        if expected != order:
            raise WitnessFailure("elimination must use the block order on the dropped variables")
        _, basis = self._groebner_of_ideal(ring, order, generators, witness)
        kept = [g for g in basis if not g.involves(drop)]
        result = self._parse_all(ring, _field(record, "result"))
        if any(r.involves(drop) for r in result):
            raise WitnessFailure("elimination result involves a dropped variable")
        self._reduces_to_zero(result, kept, order)
        if kept and not result:
            raise WitnessFailure("elimination result is missing elements")
        if result:
            self._check_groebner(result, order)
            self._reduces_to_zero(kept, result, order)
        return result

    def _check_basis(self, record, ring, order, generators) -> None:
        witness = _field(record, "witness", dict)
        rows, _ = self._replay(ring, order, generators, _field(witness, "trace", dict))
        basis = self._parse_all(ring, _field(record, "basis"))
        quotient_records = _field(witness, "basis_quotients", list)
        if len(quotient_records) != len(basis):
            raise WitnessFailure("one quotient record per basis element is required")
        for b, q in zip(basis, quotient_records):
            self._recompose(rows, self._quotients(ring, q, len(rows)), b)
        self._check_groebner(basis, order)
        self._reduces_to_zero(generators, basis, order)
        lms = [b.leading_monomial(order) for b in basis]
        for i, b in enumerate(basis):
            if b.leading_coefficient(order) != 1:
                raise WitnessFailure("reduced basis elements must be monic")
            for mono in b.monomials():
                if any(k != i and all(x <= y for x, y in zip(lm, mono)) for k, lm in enumerate(lms)):
                    raise WitnessFailure("basis is not reduced")

    def check_claim(self, record: Dict[str, Any]) -> _CheckedClaim:
        role = _field(record, "role", str)
        kind = _field(record, "kind", str)
        recorded = _field(record, "holds", bool)
        ring, order = self._ring(record)
        generators = self._parse_all(ring, _field(record, "generators"))
        checked = _CheckedClaim(role, kind, recorded, ring, generators, order, source=record.get("source"))
        if kind == "membership":
            self._check_radical_target(record, ring, generators)
            holds = self._check_membership(record, ring, order, generators)
            checked.target = self._parse(ring, record["target"])
            if record.get("radical_of") is not None:
                checked.element = self._parse(ring, record["radical_of"])
        elif kind == "leading-term":
            holds = self._check_leading_term(record, ring, order, generators)
            checked.variable = record["variable"]
            if record.get("element") is not None:
                checked.element = self._parse(ring, record["element"])
        elif kind == "elimination":
            checked.result = self._check_elimination(record, ring, order, generators)
            checked.drop = tuple(record["drop"])
            holds = True
        elif kind == "basis":
            self._check_basis(record, ring, order, generators)
            checked.result = self._parse_all(ring, record["basis"])
            holds = True
        else:
            raise CertificateError(f"unknown claim kind {kind!r}")
        if holds != recorded:
            raise WitnessFailure(f"witness shows holds={holds}, certificate says {recorded}")
        return checked

    # -- whole-certificate checks ---------------------------------------------------------------

    def _check_sources(self, checked: List[_CheckedClaim]) -> None:
        by_role: Dict[str, _CheckedClaim] = {}
        for claim in checked:
            if claim.source is not None:
                source = by_role.get(claim.source)
                if source is None or source.kind != "elimination":
                    self.failures.append(f"{claim.role}: source {claim.source!r} is not an earlier elimination")
                else:
                    try:
                        prefix = [claim.ring.convert(g) for g in source.result]
                    except InputError:
                        prefix = None
                    if prefix is None or claim.generators[:len(prefix)] != prefix:
                        self.failures.append(f"{claim.role}: generators do not start with the {claim.source} result")
            by_role[claim.role] = claim

    def _check_anchor(self, checked: List[_CheckedClaim]) -> None:
        """The first claim must speak about an ideal containing the problem's generators."""
        task = self.certificate.get("task")
        try:
            problem = parse_problem(_field(self.certificate, "problem", str))
        except InputError as exc:
            self.failures.append(f"problem echo does not parse: {exc}")
            return
        if problem.task != task:
            self.failures.append("problem echo is for a different task")
            return
        self.problem = problem
        if not checked or problem.has("component") or task == "quotient":
            return
        first = checked[0]
        try:
            gens = [first.ring.convert(g) for g in problem.ideal_generators() if not g.is_zero()]
        except InputError:
            self.failures.append(f"{first.role}: ring does not contain the problem variables")
            return
        missing = [g for g in gens if g not in first.generators]
        if missing:
            self.failures.append(f"{first.role}: problem generator {missing[0]} is not among its generators")

    # -- result payloads ------------------------------------------------------------------------

    def _claim(self, by_role: Dict[str, _CheckedClaim], role: str, kind: str) -> _CheckedClaim:
        claim = by_role.get(role)
        if claim is None or claim.kind != kind:
            raise WitnessFailure(f"result needs a {kind} claim with role {role!r}")
        return claim

    def _matches(self, ring: PolynomialRing, texts: Any, polys: Sequence[Polynomial], what: str) -> None:
        if self._parse_all(ring, texts) != list(polys):
            raise WitnessFailure(f"result {what} differs from what the claims establish")

    def _optional(self, ring: PolynomialRing, text: Any) -> Optional[Polynomial]:
        return None if text is None else self._parse(ring, text)

    def _rabinowitsch_tail(self, claim: _CheckedClaim, q: Polynomial) -> None:
        """The claim eliminates z from generators ending in 1 - z·q."""
        if len(claim.drop) != 1:
            raise WitnessFailure(f"{claim.role} must eliminate exactly one variable")
        ring = claim.ring
        tail = ring.one() - ring.var(claim.drop[0]) * ring.convert(q)
        if not claim.generators or claim.generators[-1] != tail:
            raise WitnessFailure(f"{claim.role} is not a saturation by {q}")

    def _check_regulous_result(self, by_role: Dict[str, _CheckedClaim], result: Dict[str, Any]) -> None:
        var = _field(result, "graph_var", str)
        finite = self._claim(by_role, f"finite:{var}", "leading-term")
        ring = finite.ring
        self._matches(ring, _field(result, "graph"), finite.generators, "graph")
        if self._optional(ring, result.get("relation")) != finite.element:
            raise WitnessFailure("result relation is not the monic element of the finiteness claim")

        value = self._optional(ring, result.get("value"))
        in_ring = by_role.get(f"in-ring:{var}")
        if value is not None:
            if in_ring is None or not in_ring.holds or in_ring.element != ring.var(var) - value:
                raise WitnessFailure("result value is not backed by a linear element of the graph")
        elif in_ring is not None and in_ring.holds and self.certificate.get("verdict") == "Regulous":
            raise WitnessFailure("result omits the value the graph establishes")

        problem = self.problem
        if (self.certificate.get("task") != "regulous-check" or problem is None
                or problem.has("graph") or problem.has("component")):
            return
        f = as_stratified(problem.function()).primary
        t = ring.var(var)
        if f.is_polynomial():
            if t - ring.convert(f.p).scale(1 / f.q.constant_value()) not in finite.generators:
                raise WitnessFailure("graph does not come from the problem's polynomial")
            return
        graph = self._claim(by_role, "graph", "elimination")
        if finite.source != "graph":
            raise WitnessFailure(f"{finite.role} does not cite the graph saturation")
        self._rabinowitsch_tail(graph, f.q)
        linear = graph.ring.convert(ring.convert(f.q) * t - ring.convert(f.p))
        if len(graph.generators) < 2 or graph.generators[-2] != linear:
            raise WitnessFailure("graph saturation is not built from the problem's fraction")

    def _swan_value(self, by_role: Dict[str, _CheckedClaim], suffix: str, value: Optional[str]) -> None:
        zero = by_role.get(f"zero{suffix}")
        if zero is not None and zero.holds:
            if value is not None and self._parse(zero.ring, value) != zero.ring.zero():
                raise WitnessFailure("a vanishing q has cube root 0")
            return
        in_ring = by_role.get(f"in-ring{suffix}")
        candidate = by_role.get(f"candidate{suffix}")
        if in_ring is None or not in_ring.holds:
            if value is not None:
                raise WitnessFailure("result value is not backed by the in-ring claim")
            return
        if value is None or candidate is None:
            raise WitnessFailure("in-ring claim without its value")
        t = in_ring.ring.var(candidate.variable)
        if in_ring.element != t - self._parse(in_ring.ring, value):
            raise WitnessFailure("result value is not the one the in-ring claim proves")

    def _check_swan_scan(self, by_role: Dict[str, _CheckedClaim], result: Dict[str, Any]) -> None:
        pairs = _field(result, "pairs", list)
        keys = {c.role.split("@", 1)[1] for c in by_role.values() if "@" in c.role}
        if keys != {str(k) for k in range(len(pairs))}:
            raise WitnessFailure("every listed pair needs its own claims")
        for k, pair in enumerate(pairs):
            claim = self._claim(by_role, f"pair@{k}", "membership")
            if not isinstance(pair, list) or len(pair) != 2:
                raise CertificateError("a Swan pair is a list [p, q]")
            p, q = (self._parse(claim.ring, text) for text in pair)
            if claim.target != p ** 2 - q ** 3:
                raise WitnessFailure(f"pair claim {k} is not about ({p}, {q})")

    def _check_conductor(self, by_role: Dict[str, _CheckedClaim], result: Dict[str, Any]) -> None:
        """Each listed generator c satisfies c·p^i ∈ ⟨q^i⟩ + I for 0 < i < degree."""
        if self.problem is None:
            return
        problem = self.problem
        f = problem.fraction()
        ring = problem.ring
        degree = _field(result, "degree", int)
        if degree != problem.integer("degree"):
            raise WitnessFailure("result degree differs from the problem")
        base = [g for g in problem.ideal_generators() if not g.is_zero()]
        for k, c in enumerate(self._parse_all(ring, _field(result, "conductor"))):
            for i in range(1, degree):
                claim = self._claim(by_role, f"conductor:{k}.{i}", "membership")
                gens = [claim.ring.convert(g) for g in base + [f.q ** i]]
                if not claim.holds or claim.target != claim.ring.convert(c * f.p ** i) or claim.generators != gens:
                    raise WitnessFailure(f"conductor generator {c} is not certified for power {i}")

    def _check_result(self, checked: List[_CheckedClaim]) -> None:
        task = self.certificate.get("task")
        verdict = self.certificate.get("verdict")
        result = self.certificate.get("result") or {}
        by_role = {c.role: c for c in checked}
        if verdict == "Undecided":
            return
        if task in REGULOUS_TASKS:
            self._check_regulous_result(by_role, result)
        elif task == "gb":
            claim = self._claim(by_role, "basis", "basis")
            self._matches(claim.ring, _field(result, "basis"), claim.result, "basis")
        elif task == "eliminate":
            claim = self._claim(by_role, "eliminate", "elimination")
            kept = [v for v in claim.ring.variables if v not in claim.drop]
            if _field(result, "ring", list) != kept:
                raise WitnessFailure("result ring must keep exactly the variables not dropped")
            self._matches(claim.ring, _field(result, "result"), claim.result, "generators")
        elif task == "saturate":
            claim = self._claim(by_role, "saturate", "elimination")
            if self.problem is not None:
                self._rabinowitsch_tail(claim, self.problem.polynomial("by"))
            self._matches(claim.ring, _field(result, "result"), claim.result, "generators")
        elif task == "swan-check":
            self._swan_value(by_role, "", result.get("value"))
        elif task == "swan-scan":
            self._check_swan_scan(by_role, result)
        elif task == "conductor":
            self._check_conductor(by_role, result)
        elif task == "nullstellensatz" and verdict == "Witness":
            ring = PolynomialRing(tuple(_field(result, "ring", list)))
            f = self._parse(ring, _field(result, "target"))
            n = _field(result, "exponent", int)
            total = f ** n
            for key, cof_key in (("gens", "cofactors"), ("relations", "relation_cofactors")):
                polys = self._parse_all(ring, _field(result, key))
                cofactors = self._parse_all(ring, _field(result, cof_key))
                if len(polys) != len(cofactors):
                    raise WitnessFailure(f"{cof_key} do not match {key}")
                for h, g in zip(cofactors, polys):
                    total = total - h * g
            if not total.is_zero():
                raise WitnessFailure("cofactors do not reproduce the power of the target")
        elif task == "quotient":
            meet = self._claim(by_role, "meet", "elimination")
            ring = PolynomialRing(tuple(_field(result, "ring", list)))
            q = self._parse(ring, _field(result, "by"))
            if self.problem is not None and ring.convert(self.problem.polynomial("by")) != q:
                raise WitnessFailure("result divisor differs from the problem")
            self._check_meet_divisor(meet, q)
            meet_result = [ring.convert(g) for g in meet.result]
            self._matches(ring, _field(result, "meet"), meet_result, "intersection")
            quotient = self._parse_all(ring, _field(result, "quotient"))
            if len(meet_result) != len(quotient) or any(a * q != b for a, b in zip(quotient, meet_result)):
                raise WitnessFailure("quotient generators times the divisor do not give the intersection")
        elif task == "elementary-witness":
            basis = self._claim(by_role, "presentation", "basis")
            element = self._parse(basis.ring, _field(result, "element"))
            adjoined = _field(result, "adjoined", list)
            if not normal_form(element, basis.result, basis.order).involves(adjoined):
                raise WitnessFailure("the witness element lies in the coordinate ring")
            for role, key in (("square", "square"), ("cube", "cube")):
                claim = self._claim(by_role, role, "membership")
                power = 2 if role == "square" else 3
                if claim.target != element ** power - self._parse(basis.ring, _field(result, key)):
                    raise WitnessFailure(f"result {key} is not the one the {role} claim proves")

    def _check_meet_divisor(self, meet: _CheckedClaim, q: Polynomial) -> None:
        """The intersection claim eliminates w from w·I + (1 - w)·q."""
        if len(meet.drop) != 1:
            raise WitnessFailure("intersection must eliminate exactly one variable")
        ring = meet.ring
        w = ring.var(meet.drop[0])
        if not meet.generators or meet.generators[-1] != (ring.one() - w) * ring.convert(q):
            raise WitnessFailure("intersection claim is not built from the divisor")

    def derive_verdict(self, holds: Dict[str, bool]) -> str:
        task = self.certificate.get("task")

        def deciding(prefix: str = "") -> Optional[bool]:
            roles = {r: h for r, h in holds.items() if r.startswith(prefix)}
            stripped = {r[len(prefix):]: h for r, h in roles.items()}
            if not any(r.startswith("finite:") for r in stripped):
                return None
            return all(h for r, h in stripped.items() if r.startswith(DECIDING_PREFIXES))

        if not holds and self.certificate.get("verdict") == "Undecided":
            return "Undecided"
        if task in REGULOUS_TASKS:
            decided = deciding()
            if decided is None:
                return "Undecided"
            return "Regulous" if decided else "NotRegulous"
        if task == "subintegral-check":
            return "Subintegral" if deciding() else "NotSubintegral"
        if task == "swan-check":
            return _swan_kind(holds)
        if task == "swan-scan":
            keys = {r.split("@", 1)[1] for r in holds if "@" in r}
            if not keys:
                return "NoneFound"
            kinds = {_swan_kind(holds, f"@{k}") for k in keys}
            return "NotSeminormal" if kinds == {"ProperlyRegulous"} else "Invalid"
        if task == "member":
            return "Member" if holds.get("member") else "NotMember"
        if task == "radical-member":
            return "Member" if holds.get("radical") else "NotMember"
        if task == "nullstellensatz":
            return "Witness" if holds.get("radical") else "NotInRadical"
        if task == "elementary-witness":
            if deciding() and holds.get("square") and holds.get("cube"):
                return "Witness"
            return "Invalid"
        if task == "seminormalize":
            steps = {r.split("/", 1)[0] for r in holds if "/" in r}
            if all(deciding(f"{s}/") for s in steps):
                return "Computed"
            return "Invalid"
        if task == "conductor":
            cond = all(h for r, h in holds.items() if r.startswith("conductor:"))
            return "Computed" if deciding() and cond else "Invalid"
        if task in COMPUTED_TASKS:
            return "Computed"
        raise CertificateError(f"unknown task {task!r}")

    def verify(self) -> VerificationReport:
        cert = self.certificate
        if cert.get("schema") != EngineConfig.CERTIFICATE_SCHEMA:
            raise CertificateError(f"unsupported certificate schema {cert.get('schema')!r}")
        engine = cert.get("engine") or {}
        if engine.get("name") != EngineConfig.ENGINE_NAME:
            raise CertificateError("certificate was not written by this engine")
        records = _field(cert, "claims", list)

        checked: List[_CheckedClaim] = []
        holds: Dict[str, bool] = {}
        for n, record in enumerate(records):
            if not isinstance(record, dict):
                raise CertificateError(f"claim {n} is not an object")
            try:
                claim = self.check_claim(record)
            except WitnessFailure as exc:
                self.failures.append(f"claim {n} ({record.get('role')}): {exc}")
                continue
            if claim.role in holds:
                self.failures.append(f"duplicate claim role {claim.role!r}")
            checked.append(claim)
            holds[claim.role] = claim.holds
        if self.failures:
            return VerificationReport(False, self.failures)

        self._check_sources(checked)
        self._check_anchor(checked)
        try:
            self._check_result(checked)
        except WitnessFailure as exc:
            self.failures.append(str(exc))

        derived = self.derive_verdict(holds)
        if derived != cert.get("verdict"):
            self.failures.append(f"claims support {derived!r}, certificate says {cert.get('verdict')!r}")
        logger.info("verified %d claims: %s", len(checked), "ok" if not self.failures else "FAILED")
        return VerificationReport(not self.failures, self.failures, derived)


def verify(certificate: Dict[str, Any]) -> VerificationReport:
    """Re-check every witness of a certificate; malformed input raises CertificateError."""
    return CertificateVerifier(certificate).verify()
