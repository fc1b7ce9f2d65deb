"""Finite-field sanity oracle: point enumeration, fiber counts and bounded-degree membership.

Everything here is a necessary-condition cross-check for the symbolic engine and never
feeds a verdict. Arithmetic is vectorized with numpy over int64; residues stay below the
prime, so products of two residues fit as long as the prime is below 2^31.
"""
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, nextprime

from config.engine_config import EngineConfig
from errors import InputError
from extension import ExtensionPresentation, VarietyPresentation
from poly_core import Monomial, Polynomial, PolynomialRing

logger = logging.getLogger(__name__)

MEMBERSHIP_PRIME = 2 ** 31 - 1
MAX_GRID = 2 * 10 ** 8


class BadPrime(Exception):
    """A coefficient denominator vanishes modulo the prime."""


@dataclass(frozen=True)
class ReducedPolynomial:
    """A polynomial with coefficients reduced modulo ``prime``."""

    prime: int
    terms: Tuple[Tuple[int, Monomial], ...]

    @classmethod
    def of(cls, poly: Polynomial, prime: int) -> "ReducedPolynomial":
        terms = []
        for mono, coeff in poly.terms():
            if coeff.denominator % prime == 0:
                raise BadPrime(f"{prime} divides a denominator of {poly}")
            value = coeff.numerator * pow(coeff.denominator, -1, prime) % prime
            if value:
                terms.append((value, mono))
        return cls(prime, tuple(terms))

    @property
    def degree(self) -> int:
        return max((sum(m) for _, m in self.terms), default=0)

    def evaluate(self, columns: Sequence[np.ndarray]) -> np.ndarray:
        """Values at the points whose i-th coordinates are ``columns[i]`` (broadcastable)."""
        p = self.prime
        shape = np.broadcast(*columns).shape if columns else ()
        result = np.zeros(shape, dtype=np.int64)
        powers = [[np.ones_like(c, dtype=np.int64)] for c in columns]
        for coeff, mono in self.terms:
            term = np.full(shape, coeff, dtype=np.int64)
            for i, e in enumerate(mono):
                if not e:
                    continue
                table = powers[i]
                while len(table) <= e:
                    table.append(np.mod(table[-1] * columns[i], p))
                term = np.mod(term * table[e], p)
            result = np.mod(result + term, p)
        return result


class FiniteFieldOracle:
    """Counts points of varieties and fibers of extensions over F_p."""

    def __init__(self, prime: Optional[int] = None, chunk_rows: int = 64):
        prime = prime or EngineConfig.get("oracle_prime")
        if not isprime(prime) or prime >= 2 ** 31:
            raise InputError(f"oracle modulus {prime} must be a prime below 2^31")
        self.prime = prime
        self.chunk_rows = chunk_rows

    def _reduce_all(self, polys: Sequence[Polynomial]) -> List[ReducedPolynomial]:
        return [ReducedPolynomial.of(g, self.prime) for g in polys]

    def points(self, X: VarietyPresentation) -> np.ndarray:
        """All F_p-points of X as an (m, n) array, n the number of ring variables."""
        n = X.ring.nvars
        p = self.prime
        if p ** n > MAX_GRID:
            raise InputError(f"F_{p}^{n} is too large to enumerate")
        gens = self._reduce_all(X.ideal.generators)
        if n == 0:
            return np.zeros((1 if not any(g.terms for g in gens) else 0, 0), dtype=np.int64)
        values = np.arange(p, dtype=np.int64)
        if n == 1:
            mask = np.ones(p, dtype=bool)
            for g in gens:
                mask &= g.evaluate([values]) == 0
            return values[mask].reshape(-1, 1)

        found = []
        # chunks of leading coordinates against the full range of the last one
        heads = np.array(np.meshgrid(*([values] * (n - 1)), indexing="ij")).reshape(n - 1, -1).T
        for start in range(0, len(heads), self.chunk_rows):
            block = heads[start:start + self.chunk_rows]
            columns = [block[:, i][:, None] for i in range(n - 1)] + [values[None, :]]
            mask = np.ones((len(block), p), dtype=bool)
            for g in gens:
                mask &= g.evaluate(columns) == 0
            rows, cols = np.nonzero(mask)
            if len(rows):
                found.append(np.column_stack([block[rows], values[cols]]))
        if not found:
            return np.zeros((0, n), dtype=np.int64)
        return np.vstack(found)

    def fiber_counts(self, E: ExtensionPresentation, base_points: Optional[np.ndarray] = None) -> np.ndarray:
        """Number of F_p-points of the extension over each F_p-point of the base."""
        if len(E.adjoined) != 1:
            raise InputError("fiber counts are implemented for one adjoined variable")
        if base_points is None:
            base_points = self.points(E.base)
        relations = self._reduce_all(E.relations.generators)
        p = self.prime
        t = np.arange(p, dtype=np.int64)[None, :]
        counts = np.zeros(len(base_points), dtype=np.int64)
        for start in range(0, len(base_points), self.chunk_rows):
            block = base_points[start:start + self.chunk_rows]
            columns = [t] + [block[:, i][:, None] for i in range(block.shape[1])]
            mask = np.ones((len(block), p), dtype=bool)
            for g in relations:
                mask &= g.evaluate(columns) == 0
            counts[start:start + len(block)] = mask.sum(axis=1)
        return counts

    def is_bijective(self, E: ExtensionPresentation) -> bool:
        counts = self.fiber_counts(E)
        logger.debug("F_%d fibers: %d base points, counts %s", self.prime, len(counts),
                     dict(zip(*np.unique(counts, return_counts=True))))
        return bool(np.all(counts == 1))


def bijective_on_points(E: ExtensionPresentation, prime: Optional[int] = None, attempts: int = 5) -> bool:
    """Fiber-count bijectivity over F_p, moving to the next prime when p is bad for the data."""
    prime = prime or EngineConfig.get("oracle_prime")
    for _ in range(attempts):
        try:
            return FiniteFieldOracle(prime).is_bijective(E)
        except BadPrime as exc:
            logger.info("%s; retrying", exc)
            prime = nextprime(prime)
    raise InputError(f"no good prime found after {attempts} attempts")


# -- bounded-degree membership ------------------------------------------------------------------


def _monomials(nvars: int, degree: int) -> List[Monomial]:
    monos = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            monos.append(tuple(exps))
    return monos


def _row_reduce(matrix: np.ndarray, p: int) -> np.ndarray:
    """Row echelon form modulo p; returns the non-zero rows."""
    m = matrix.copy() % p
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = np.mod(m[rank] * inv, p)
        for r in range(rows):
            if r != rank and m[r, col]:
                m[r] = np.mod(m[r] - np.mod(m[r, col] * m[rank], p), p)
        rank += 1
        if rank == rows:
            break
    return m[:rank]


def span_contains(f: Polynomial, gens: Sequence[Polynomial], degree_bound: int = 6,
                  prime: int = MEMBERSHIP_PRIME) -> bool:
    """True when f mod p is a combination of m·g with deg(m·g) ≤ degree_bound.

    A positive answer proves f ∈ ⟨gens⟩ over F_p; a negative one only says no certificate of
    that degree exists.
    """
    ring: PolynomialRing = f.ring
    monos = _monomials(ring.nvars, degree_bound)
    column = {m: i for i, m in enumerate(monos)}
    if f.total_degree() > degree_bound:
        return False

    def row(poly: ReducedPolynomial) -> np.ndarray:
        vector = np.zeros(len(monos), dtype=np.int64)
        for coeff, mono in poly.terms:
            vector[column[mono]] = coeff
        return vector

    rows = []
    for g in gens:
        g = ring.convert(g)
        if g.is_zero():
            continue
        for m in monos:
            if sum(m) + g.total_degree() > degree_bound:
                continue
            rows.append(row(ReducedPolynomial.of(g.mul_term(m), prime)))
    target = row(ReducedPolynomial.of(f, prime))
    if not rows:
        return not target.any()
    basis = _row_reduce(np.array(rows, dtype=np.int64), prime)
    extended = _row_reduce(np.vstack([basis, target]), prime)
    return len(extended) == len(basis)
