"""Exact multivariate polynomials over the rationals and the monomial orders used on them.

Coefficients are ``fractions.Fraction`` values (always reduced, denominator positive, zero
stored as 0/1). Monomials are plain exponent tuples with one slot per ring variable.
Polynomials are immutable; every operation returns a new polynomial.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction as ExactRational
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from errors import InputError

Monomial = Tuple[int, ...]
Scalar = Union[int, ExactRational]

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

ORDER_KINDS = ("lex", "grevlex", "block")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Return a / b, or None when b does not divide a."""
    result = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in result):
        return None
    return result


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def as_rational(value: Scalar) -> ExactRational:
    if isinstance(value, ExactRational):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return ExactRational(value)
    raise InputError(f"coefficient {value!r} is not an exact rational")


def _lex_key(indices: Tuple[int, ...]) -> Callable[[Monomial], tuple]:
    def key(m: Monomial) -> tuple:
        return tuple(m[i] for i in indices)
    return key


def _grevlex_key(indices: Tuple[int, ...]) -> Callable[[Monomial], tuple]:
    reverse = tuple(reversed(indices))

    def key(m: Monomial) -> tuple:
        return (sum(m[i] for i in indices), tuple(-m[i] for i in reverse))
    return key


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on the monomials of a ring with ``len(precedence)`` variables.

    ``precedence`` lists variable indices from most to least significant. A block order
    compares the ``elim`` variables first (with ``inner``) and breaks ties on the rest,
    so any monomial containing an eliminated variable outranks every monomial without one.
    ``key(m)`` is a sort key: larger keys are larger monomials.
    """

    kind: str
    precedence: Tuple[int, ...]
    elim: Tuple[int, ...] = ()
    inner: str = "grevlex"
    key: Callable[[Monomial], tuple] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise InputError(f"unknown monomial order {self.kind!r}")
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise InputError("order precedence must be a permutation of the ring variables")
        if self.kind == "block":
            if self.inner not in ("lex", "grevlex"):
                raise InputError(f"unknown inner order {self.inner!r}")
            if not set(self.elim) <= set(self.precedence):
                raise InputError("elimination block references unknown variables")
            elim = tuple(i for i in self.precedence if i in self.elim)
            rest = tuple(i for i in self.precedence if i not in self.elim)
            make = _lex_key if self.inner == "lex" else _grevlex_key
            first, second = make(elim), make(rest)
            object.__setattr__(self, "key", lambda m: (first(m), second(m)))
        elif self.kind == "lex":
            object.__setattr__(self, "key", _lex_key(self.precedence))
        else:
            object.__setattr__(self, "key", _grevlex_key(self.precedence))

    @property
    def nvars(self) -> int:
        return len(self.precedence)

    @classmethod
    def lex(cls, nvars: int, precedence: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls("lex", tuple(precedence) if precedence is not None else tuple(range(nvars)))

    @classmethod
    def grevlex(cls, nvars: int, precedence: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls("grevlex", tuple(precedence) if precedence is not None else tuple(range(nvars)))

    @classmethod
    def block(cls, nvars: int, elim: Iterable[int], inner: str = "grevlex",
              precedence: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls(
            "block",
            tuple(precedence) if precedence is not None else tuple(range(nvars)),
            tuple(sorted(set(elim))),
            inner,
        )

    @classmethod
    def named(cls, name: str, nvars: int) -> "MonomialOrder":
        if name == "lex":
            return cls.lex(nvars)
        if name == "grevlex":
            return cls.grevlex(nvars)
        raise InputError(f"unknown monomial order {name!r}")

    def is_elimination_for(self, indices: Iterable[int]) -> bool:
        return self.kind == "block" and set(indices) <= set(self.elim)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self, variables: Sequence[str]) -> Dict[str, Any]:
        """Serializable description, used by certificates."""
        description: Dict[str, Any] = {
            "kind": self.kind,
            "precedence": [variables[i] for i in self.precedence],
        }
        if self.kind == "block":
            description["elim"] = [variables[i] for i in self.elim]
            description["inner"] = self.inner
        return description

    @classmethod
    def from_description(cls, description: Mapping[str, Any], variables: Sequence[str]) -> "MonomialOrder":
        try:
            index = {name: i for i, name in enumerate(variables)}
            precedence = tuple(index[name] for name in description["precedence"])
            if description["kind"] == "block":
                elim = tuple(sorted(index[name] for name in description["elim"]))
                return cls("block", precedence, elim, description.get("inner", "grevlex"))
            return cls(description["kind"], precedence)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed order description: {exc}") from exc


@dataclass(frozen=True)
class PolynomialRing:
    """Q[variables] with a default monomial order (declaration order precedence)."""

    variables: Tuple[str, ...]
    order: MonomialOrder = None
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        for name in variables:
            if not IDENTIFIER.match(name):
                raise InputError(f"invalid variable name {name!r}")
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable in {', '.join(variables)}")
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.grevlex(len(variables)))
        elif self.order.nvars != len(variables):
            raise InputError("monomial order does not match the ring variables")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(variables)})

    @classmethod
    def of(cls, variables: Iterable[str], order: str = "grevlex") -> "PolynomialRing":
        variables = tuple(variables)
        return cls(variables, MonomialOrder.named(order, len(variables)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"undeclared variable {name!r}") from None

    def has_variable(self, name: str) -> bool:
        return name in self._index

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Scalar) -> "Polynomial":
        value = as_rational(value)
        return Polynomial(self, {self.one_monomial(): value} if value else {})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): ExactRational(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(name) for name in self.variables)

    def monomial(self, exponents: Mapping[str, int], coefficient: Scalar = 1) -> "Polynomial":
        return normalize(self, [(coefficient, exponents)])

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.variables, order)

    def extend(self, names: Sequence[str]) -> "PolynomialRing":
        """Ring with ``names`` prepended; new variables rank above the old ones."""
        variables = tuple(names) + self.variables
        if self.order.kind == "lex":
            return PolynomialRing(variables, MonomialOrder.lex(len(variables)))
        return PolynomialRing(variables, MonomialOrder.grevlex(len(variables)))

    def drop(self, names: Iterable[str]) -> "PolynomialRing":
        names = set(names)
        for name in names:
            self.index(name)
        variables = tuple(v for v in self.variables if v not in names)
        if self.order.kind == "lex":
            return PolynomialRing(variables, MonomialOrder.lex(len(variables)))
        return PolynomialRing(variables, MonomialOrder.grevlex(len(variables)))

    def block_order(self, elim: Iterable[str], inner: str = "grevlex") -> MonomialOrder:
        return MonomialOrder.block(self.nvars, [self.index(name) for name in elim], inner)

    def fresh_variable(self, prefix: str) -> str:
        return fresh_variable(prefix, self.variables)

    def convert(self, poly: "Polynomial") -> "Polynomial":
        """Embed ``poly`` into this ring by matching variable names."""
        if poly.ring.variables == self.variables:
            if poly.ring == self:
                return poly
            return Polynomial(self, poly._terms)
        slots = []
        for i, name in enumerate(poly.ring.variables):
            slots.append(self._index.get(name))
        terms: Dict[Monomial, ExactRational] = {}
        for mono, coeff in poly._terms.items():
            exps = [0] * self.nvars
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                if slots[i] is None:
                    raise InputError(
                        f"variable {poly.ring.variables[i]!r} is not part of the ring "
                        f"({', '.join(self.variables)})"
                    )
                exps[slots[i]] = e
            terms[tuple(exps)] = coeff
        return Polynomial(self, terms)


def fresh_variable(prefix: str, taken: Iterable[str]) -> str:
    """``prefix`` if unused, else ``prefix1``, ``prefix2``, ..."""
    taken = set(taken)
    if prefix not in taken:
        return prefix
    n = 1
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


RawMonomial = Union[Sequence[int], Mapping[Union[str, int], int]]


def normalize(ring: PolynomialRing, raw_terms: Iterable[Tuple[Scalar, RawMonomial]]) -> "Polynomial":
    """Build a canonical polynomial from (coefficient, monomial) pairs.

    Monomials are exponent vectors of the ring's length, or mappings from variable
    names / indices to exponents. Duplicates are merged and zero coefficients dropped.
    """
    terms: Dict[Monomial, ExactRational] = {}
    for coeff, raw in raw_terms:
        coeff = as_rational(coeff)
        if isinstance(raw, Mapping):
            exps = [0] * ring.nvars
            for var, e in raw.items():
                if isinstance(var, str):
                    slot = ring.index(var)
                elif isinstance(var, int) and 0 <= var < ring.nvars:
                    slot = var
                else:
                    raise InputError(f"undeclared variable index {var!r}")
                if not isinstance(e, int) or e < 0:
                    raise InputError(f"exponent {e!r} is not a non-negative integer")
                exps[slot] += e
            mono = tuple(exps)
        else:
            mono = tuple(raw)
            if len(mono) != ring.nvars:
                raise InputError(
                    f"monomial {mono} has {len(mono)} slots, the ring has {ring.nvars} variables"
                )
            if any(not isinstance(e, int) or e < 0 for e in mono):
                raise InputError(f"monomial {mono} has a negative or non-integer exponent")
        value = terms.get(mono, 0) + coeff
        if value:
            terms[mono] = value
        else:
            terms.pop(mono, None)
    return Polynomial(ring, terms)


class Polynomial:
    """An immutable polynomial: a map from monomials to non-zero rationals."""

    __slots__ = ("ring", "_terms", "_sorted", "_lead", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, ExactRational]):
        self.ring = ring
        self._terms: Dict[Monomial, ExactRational] = dict(terms)
        self._sorted: Optional[List[Tuple[Monomial, ExactRational]]] = None
        self._lead: Dict[MonomialOrder, Monomial] = {}
        self._hash: Optional[int] = None

    # -- inspection -------------------------------------------------------------------

    def items(self) -> Iterator[Tuple[Monomial, ExactRational]]:
        return iter(self._terms.items())

    def terms(self) -> List[Tuple[Monomial, ExactRational]]:
        """Terms sorted from largest to smallest in the ring's order."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)
        return list(self._sorted)

    def coefficient(self, monomial: Monomial) -> ExactRational:
        return self._terms.get(tuple(monomial), ExactRational(0))

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or list(self._terms) == [self.ring.one_monomial()]

    def constant_value(self) -> ExactRational:
        return self._terms.get(self.ring.one_monomial(), ExactRational(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def variables_used(self) -> FrozenSet[str]:
        used = set()
        for mono in self._terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(self.ring.variables[i])
        return frozenset(used)

    def involves(self, names: Iterable[str]) -> bool:
        return bool(self.variables_used() & set(names))

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Coefficients of the powers of one variable, as polynomials free of it."""
        slot = self.ring.index(name)
        grouped: Dict[int, Dict[Monomial, ExactRational]] = {}
        for mono, coeff in self._terms.items():
            rest = mono[:slot] + (0,) + mono[slot + 1:]
            grouped.setdefault(mono[slot], {})[rest] = coeff
        return {k: Polynomial(self.ring, terms) for k, terms in grouped.items()}

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        order = order or self.ring.order
        lead = self._lead.get(order)
        if lead is None:
            if not self._terms:
                raise ValueError("the zero polynomial has no leading monomial")
            lead = max(self._terms, key=order.key)
            self._lead[order] = lead
        return lead

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> ExactRational:
        return self._terms[self.leading_monomial(order)]

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, ExactRational]:
        lm = self.leading_monomial(order)
        return lm, self._terms[lm]

    # -- arithmetic -------------------------------------------------------------------

    def _coerce(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables:
                raise InputError(
                    f"ring mismatch: ({', '.join(self.ring.variables)}) vs ({', '.join(other.ring.variables)})"
                )
            return other
        return self.ring.constant(as_rational(other))

    def __add__(self, other: Any) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = terms.get(mono, 0) + coeff
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = as_rational(factor)
        if not factor:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * factor for m, c in self._terms.items()})

    def mul_term(self, monomial: Monomial, coefficient: Scalar = 1) -> "Polynomial":
        coefficient = as_rational(coefficient)
        if not coefficient:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {monomial_mul(m, monomial): c * coefficient for m, c in self._terms.items()},
        )

    def __mul__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        terms: Dict[Monomial, ExactRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                value = terms.get(mono, 0) + c1 * c2
                if value:
                    terms[mono] = value
                else:
                    terms.pop(mono, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"exponent {exponent!r} is not a non-negative integer")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def substitute(self, mapping: Mapping[str, "Polynomial"], ring: Optional[PolynomialRing] = None) -> "Polynomial":
        """Replace variables by polynomials of ``ring`` (default: this ring).

        Variables absent from ``mapping`` are kept and must exist in the target ring.
        """
        ring = ring or self.ring
        images = []
        for name in self.ring.variables:
            if name in mapping:
                images.append(ring.convert(mapping[name]))
            else:
                images.append(ring.var(name))
        result = ring.zero()
        cache: Dict[Tuple[int, int], Polynomial] = {}
        for mono, coeff in self._terms.items():
            term = ring.constant(coeff)
            for i, e in enumerate(mono):
                if e:
                    power = cache.get((i, e))
                    if power is None:
                        power = images[i] ** e
                        cache[(i, e)] = power
                    term = term * power
            result = result + term
        return result

    def rename(self, mapping: Mapping[str, str], ring: PolynomialRing) -> "Polynomial":
        """Rename variables into ``ring`` without any arithmetic."""
        slots = [ring.index(mapping.get(name, name)) for name in self.ring.variables]
        terms: Dict[Monomial, ExactRational] = {}
        for mono, coeff in self._terms.items():
            exps = [0] * ring.nvars
            for i, e in enumerate(mono):
                exps[slots[i]] += e
            terms[tuple(exps)] = coeff
        return Polynomial(ring, terms)

    # -- comparison and display -----------------------------------------------------------

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.variables == other.ring.variables and self._terms == other._terms
        if isinstance(other, (int, ExactRational)) and not isinstance(other, bool):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_rational(value: ExactRational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_monomial(ring: PolynomialRing, monomial: Monomial) -> str:
    factors = []
    for name, e in zip(ring.variables, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(poly: Polynomial) -> str:
    """Canonical text form: terms in decreasing ring order, e.g. ``-x^3 + y^2``."""
    if poly.is_zero():
        return "0"
    pieces: List[str] = []
    for mono, coeff in poly.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        mono_text = format_monomial(poly.ring, mono)
        if not mono_text:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = mono_text
        else:
            body = f"{format_rational(magnitude)}*{mono_text}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# -- division ---------------------------------------------------------------------------


def _prepare_divisors(G: Sequence[Polynomial], order: MonomialOrder):
    divisors = []
    for g in G:
        if g.is_zero():
            raise InputError("division by the zero polynomial")
        lm, lc = g.leading_term(order)
        divisors.append((lm, lc, list(g.items())))
    return divisors


def _subtract_multiple(work: Dict[Monomial, ExactRational], g_terms, shift: Monomial, factor: ExactRational) -> None:
    for mono, coeff in g_terms:
        target = monomial_mul(mono, shift)
        value = work.get(target, 0) - factor * coeff
        if value:
            work[target] = value
        else:
            work.pop(target, None)


def divide_multi(f: Polynomial, G: Sequence[Polynomial], order: Optional[MonomialOrder] = None
                 ) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division of ``f`` by the list ``G``.

    Returns ``(quotients, remainder)`` with ``f == sum(q*g) + remainder`` and no term of
    the remainder divisible by a leading monomial of ``G``. Divisors are tried in list order.
    """
    order = order or f.ring.order
    ring = f.ring
    divisors = _prepare_divisors([ring.convert(g) for g in G], order)
    quotients: List[Dict[Monomial, ExactRational]] = [{} for _ in divisors]
    remainder: Dict[Monomial, ExactRational] = {}
    work = dict(f._terms)
    key = order.key
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for i, (g_lm, g_lc, g_terms) in enumerate(divisors):
            shift = monomial_div(lm, g_lm)
            if shift is None:
                continue
            factor = lc / g_lc
            value = quotients[i].get(shift, 0) + factor
            if value:
                quotients[i][shift] = value
            else:
                quotients[i].pop(shift, None)
            _subtract_multiple(work, g_terms, shift, factor)
            break
        else:
            remainder[lm] = lc
            del work[lm]
    return [Polynomial(ring, q) for q in quotients], Polynomial(ring, remainder)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> Polynomial:
    """Remainder of ``f`` modulo ``G`` (division without quotient bookkeeping)."""
    order = order or f.ring.order
    if not G:
        return f
    ring = f.ring
    divisors = _prepare_divisors(G, order)
    remainder: Dict[Monomial, ExactRational] = {}
    work = dict(f._terms)
    key = order.key
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for g_lm, g_lc, g_terms in divisors:
            shift = monomial_div(lm, g_lm)
            if shift is not None:
                _subtract_multiple(work, g_terms, shift, lc / g_lc)
                break
        else:
            remainder[lm] = lc
            del work[lm]
    return Polynomial(ring, remainder)


def spoly(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    """S-polynomial (lcm/lt(f))*f - (lcm/lt(g))*g; the leading terms cancel."""
    order = order or f.ring.order
    if f.is_zero() or g.is_zero():
        raise InputError("S-polynomial of the zero polynomial")
    f_lm, f_lc = f.leading_term(order)
    g_lm, g_lc = g.leading_term(order)
    lcm = monomial_lcm(f_lm, g_lm)
    left = f.mul_term(monomial_div(lcm, f_lm), 1 / f_lc)
    right = g.mul_term(monomial_div(lcm, g_lm), 1 / g_lc)
    return left - right


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f exactly."""
    (q,), r = divide_multi(f, [g])
    if not r.is_zero():
        raise InputError(f"{g} does not divide {f}")
    return q
