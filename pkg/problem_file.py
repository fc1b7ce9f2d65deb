import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from config.engine_config import EngineConfig
from errors import InputError
from extension import VarietyPresentation
from poly_core import Polynomial, PolynomialRing
from poly_parser import PolynomialParser
from regulous import Fraction, StratifiedFraction


@dataclass
class Entry:
    """One header value together with the line it came from."""

    value: str
    line: int
    offset: int = 0


@dataclass
class ProblemFile:
    """A parsed ``.problem`` file: header entries by key, one generator per body line."""

    task: str
    variables: Tuple[str, ...]
    order: str
    entries: Dict[str, List[Entry]] = field(default_factory=dict)
    generators: List[Entry] = field(default_factory=list)
    path: Optional[str] = None

    # -- rings and presentations ------------------------------------------------------------

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing.of(self.variables, self.order)

    def extended_ring(self, names: Sequence[str]) -> PolynomialRing:
        return self.ring.extend(tuple(names))

    def has(self, key: str) -> bool:
        return bool(self.entries.get(key))

    def raw(self, key: str) -> Optional[str]:
        values = self.entries.get(key)
        return values[0].value if values else None

    def _parse(self, entry: Entry, ring: PolynomialRing) -> Polynomial:
        try:
            return PolynomialParser(ring).parse(entry.value)
        except InputError as exc:
            raise self._locate(exc, entry) from exc

    def _locate(self, exc: InputError, entry: Entry) -> InputError:
        # parser columns count from the start of the value; report file columns
        column = exc.column + entry.offset if exc.column is not None else None
        return InputError(exc.message, line=entry.line, column=column)

    def ideal_generators(self) -> List[Polynomial]:
        ring = self.ring
        return [self._parse(entry, ring) for entry in self.generators]

    def variety(self) -> VarietyPresentation:
        components = None
        if self.has("component"):
            components = [self.polynomial_list("component", entry) for entry in self.entries["component"]]
        return VarietyPresentation.from_generators(self.ring, self.ideal_generators(), components)

    def polynomial(self, key: str, ring: Optional[PolynomialRing] = None) -> Polynomial:
        return self._parse(self._single(key), ring or self.ring)

    def polynomials(self, key: str, ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
        ring = ring or self.ring
        return [self._parse(entry, ring) for entry in self.entries.get(key, [])]

    def polynomial_list(self, key: str, entry: Entry, ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
        """A comma-separated list of polynomials on one header line."""
        ring = ring or self.ring
        polys = []
        for match in re.finditer(r"[^,]+", entry.value):
            part = match.group()
            if part.strip():
                start = entry.offset + match.start() + len(part) - len(part.lstrip())
                polys.append(self._parse(Entry(part.strip(), entry.line, start), ring))
        return polys

    def fraction(self, key: str = "fraction", entry: Optional[Entry] = None) -> Fraction:
        entry = entry or self._single(key)
        try:
            p, q = PolynomialParser(self.ring).parse_fraction(entry.value)
        except InputError as exc:
            raise self._locate(exc, entry) from exc
        return Fraction(p, q)

    def fractions(self, key: str) -> List[Fraction]:
        return [self.fraction(key, entry) for entry in self.entries.get(key, [])]

    def function(self):
        """The fraction of a regulosity task: ``fraction`` or the ``stratum`` list (final value 0)."""
        if self.has("stratum"):
            return StratifiedFraction(tuple(self.fractions("stratum")), self.ring.zero())
        if self.has("fraction"):
            return self.fraction()
        return None

    def names(self, key: str) -> Tuple[str, ...]:
        value = self.raw(key)
        if value is None:
            return ()
        return tuple(part.strip() for part in value.split(",") if part.strip())

    def integer(self, key: str, default: Optional[int] = None) -> Optional[int]:
        entry = self.entries.get(key)
        if not entry:
            return default
        try:
            return int(entry[0].value)
        except ValueError:
            raise InputError(f"{key} must be an integer, got {entry[0].value!r}", line=entry[0].line) from None

    def integers(self, key: str) -> List[int]:
        entry = self._single(key)
        try:
            return [int(part) for part in entry.value.split(",") if part.strip()]
        except ValueError:
            raise InputError(f"{key} must be a comma-separated list of integers", line=entry.line) from None

    def _single(self, key: str) -> Entry:
        values = self.entries.get(key)
        if not values:
            raise InputError(f"task {self.task!r} needs a {key!r} entry")
        return values[0]

    def check(self) -> None:
        """Parse every polynomial-valued entry so that errors surface with their line."""
        self.variety()
        for key in FRACTION_KEYS:
            self.fractions(key)
        tower = self.extended_ring(self.names("adjoin"))
        for key in BASE_POLY_KEYS:
            self.polynomials(key)
        for key in TOWER_POLY_KEYS:
            self.polynomials(key, tower)
        for entry in self.entries.get("restrict", []):
            self.polynomial_list("restrict", entry)
        if self.has("graph"):
            graph_ring = self.extended_ring([self.raw("graph-var") or "t"])
            self.polynomials("graph", graph_ring)


# -- format description ---------------------------------------------------------------------------

TASKS = {
    "gb": ((), ()),
    "member": (("target",), ()),
    "radical-member": (("target",), ()),
    "eliminate": (("drop",), ()),
    "saturate": (("by",), ()),
    "quotient": (("by",), ()),
    "regulous-check": ((), ("fraction", "stratum", "graph-var", "graph")),
    "subintegral-check": (("adjoin", "relation"), ()),
    "swan-check": (("p", "q"), ()),
    "swan-scan": ((), ("degree", "coefficients")),
    "conductor": (("fraction", "degree"), ()),
    "seminormalize": ((), ("candidate",)),
    "nullstellensatz": (("target", "gen"), ("candidate", "adjoin", "bound")),
    "restrict": (("fraction", "restrict"), ()),
    "power-pair": (("fraction", "powers"), ()),
    "power-relation": (("p", "q", "exponent"), ()),
    "elementary-witness": ((), ("fraction", "stratum")),
}

COMMON_KEYS = ("task", "vars", "order", "component")
REPEATED_KEYS = ("stratum", "graph", "component", "candidate", "gen", "restrict", "relation")
FRACTION_KEYS = ("fraction", "stratum", "candidate")
BASE_POLY_KEYS = ("by", "p", "q")
TOWER_POLY_KEYS = ("target", "gen", "relation")

# canonical header order used by the emitter
KEY_ORDER = (
    "task", "vars", "order", "component", "fraction", "stratum", "graph-var", "graph", "target",
    "drop", "by", "adjoin", "relation", "p", "q", "degree", "coefficients", "candidate", "gen",
    "bound", "restrict", "powers", "exponent",
)


class ProblemParser:
    """Parse the line-oriented problem format.

    Layout::

        task: regulous-check
        vars: x, y
        fraction: y / x
        ---
        y^2 - x^3

    ``#`` starts a comment line. Header keys are fixed; unknown or misplaced keys are errors.
    """

    HEADER_PATTERN = re.compile(r"^([a-z][a-z-]*)\s*:\s*(.*?)\s*$")
    SEPARATOR = "---"

    def parse(self, text: str, path: Optional[str] = None) -> ProblemFile:
        entries: Dict[str, List[Entry]] = {}
        generators: List[Entry] = []
        in_body = False
        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if in_body:
                generators.append(Entry(stripped, number, line.index(stripped)))
                continue
            if stripped == self.SEPARATOR:
                in_body = True
                continue
            match = self.HEADER_PATTERN.match(stripped)
            if not match:
                raise InputError(f"expected 'key: value', found {stripped!r}", line=number)
            key, value = match.groups()
            if key not in KEY_ORDER:
                raise InputError(f"unknown key {key!r}", line=number)
            if key in entries and key not in REPEATED_KEYS:
                raise InputError(f"duplicate key {key!r}", line=number)
            if not value:
                raise InputError(f"empty value for {key!r}", line=number)
            entries.setdefault(key, []).append(Entry(value, number, line.index(value, line.index(":") + 1)))

        if not in_body:
            raise InputError(f"missing '{self.SEPARATOR}' line before the ideal generators")
        problem = self._build(entries, generators, path)
        problem.check()
        return problem

    def _build(self, entries: Dict[str, List[Entry]], generators: List[Entry], path: Optional[str]) -> ProblemFile:
        for key in ("task", "vars"):
            if key not in entries:
                raise InputError(f"missing required key {key!r}")
        task_entry = entries["task"][0]
        task = task_entry.value
        if task not in TASKS:
            raise InputError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}", line=task_entry.line)
        required, optional = TASKS[task]
        for key in required:
            if key not in entries:
                raise InputError(f"task {task!r} needs a {key!r} entry")
        allowed = set(COMMON_KEYS) | set(required) | set(optional)
        for key, values in entries.items():
            if key not in allowed:
                raise InputError(f"key {key!r} is not used by task {task!r}", line=values[0].line)
        if task in ("regulous-check", "elementary-witness"):
            if not any(key in entries for key in ("fraction", "stratum", "graph")):
                raise InputError(f"task {task!r} needs a 'fraction', 'stratum' or 'graph' entry")
            if "fraction" in entries and "stratum" in entries:
                raise InputError("give either 'fraction' or 'stratum' entries, not both",
                                 line=entries["stratum"][0].line)

        variables = tuple(v.strip() for v in entries["vars"][0].value.split(",") if v.strip())
        order = entries["order"][0].value if "order" in entries else EngineConfig.get("order")
        if order not in EngineConfig.get_order_names():
            raise InputError(f"unknown order {order!r}", line=entries["order"][0].line)
        try:
            PolynomialRing.of(variables, order)
        except InputError as exc:
            raise exc.at_line(entries["vars"][0].line) from exc
        return ProblemFile(task, variables, order, entries, generators, path)


class ProblemEmitter:
    """Write a problem back in canonical form (fixed key order, canonical polynomials)."""

    def emit(self, problem: ProblemFile) -> str:
        lines = []
        for key in KEY_ORDER:
            if key == "task":
                lines.append(f"task: {problem.task}")
            elif key == "vars":
                lines.append(f"vars: {', '.join(problem.variables)}")
            elif key == "order":
                lines.append(f"order: {problem.order}")
            else:
                for entry in problem.entries.get(key, []):
                    lines.append(f"{key}: {self._canonical(problem, key, entry)}")
        lines.append(ProblemParser.SEPARATOR)
        lines.extend(str(g) for g in problem.ideal_generators())
        return "\n".join(lines) + "\n"

    def _canonical(self, problem: ProblemFile, key: str, entry: Entry) -> str:
        if key in FRACTION_KEYS:
            return str(problem.fraction(key, entry))
        if key in BASE_POLY_KEYS:
            return str(problem._parse(entry, problem.ring))
        if key in TOWER_POLY_KEYS:
            return str(problem._parse(entry, problem.extended_ring(problem.names("adjoin"))))
        if key in ("component", "restrict"):
            return ", ".join(str(g) for g in problem.polynomial_list(key, entry))
        if key == "graph":
            ring = problem.extended_ring([problem.raw("graph-var") or "t"])
            return str(problem._parse(entry, ring))
        if key in ("drop", "adjoin"):
            return ", ".join(part.strip() for part in entry.value.split(",") if part.strip())
        if key in ("coefficients", "powers"):
            return ", ".join(str(int(part)) for part in entry.value.split(",") if part.strip())
        return entry.value.strip()


def parse_problem(text: str, path: Optional[str] = None) -> ProblemFile:
    return ProblemParser().parse(text, path)


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text, path)


def emit_problem(problem: ProblemFile) -> str:
    return ProblemEmitter().emit(problem)
