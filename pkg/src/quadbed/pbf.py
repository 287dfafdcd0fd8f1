"""Multilinear pseudo-Boolean polynomials over binary variables.

A polynomial is stored as a map from monomials to nonzero integer
coefficients.  Monomials are sorted tuples of variable names (strings); the
empty tuple keys the constant term.  Idempotence (x*x = x) is applied on
construction, so every stored polynomial is multilinear and canonical.

Text format (one term per line, ``#`` starts a comment)::

    <int-coeff> [: var [var ...]]

The canonical serializer emits the constant first, then monomials ordered by
(degree, variable tuple), with the variables of each monomial sorted.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import MissingVariableError, PbfParseError

Assignment = Mapping[str, int]

Monomial = tuple  # sorted tuple of variable names


def _normalize_terms(raw: Mapping[Iterable[str], int]) -> dict:
    terms = {}
    for mono, coeff in raw.items():
        if coeff == 0:
            continue
        key = tuple(sorted(set(mono)))
        terms[key] = terms.get(key, 0) + coeff
    return {m: c for m, c in terms.items() if c != 0}


class Polynomial:
    """Immutable multilinear polynomial with integer coefficients."""

    __slots__ = ("_terms", "_variables")

    def __init__(self, terms: Mapping[Iterable[str], int] | None = None):
        self._terms = _normalize_terms(terms or {})
        names = set()
        for mono in self._terms:
            names.update(mono)
        self._variables = frozenset(names)

    @property
    def terms(self) -> dict:
        return self._terms

    @property
    def variables(self) -> frozenset:
        return self._variables

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def coefficient(self, mono: Iterable[str]) -> int:
        return self._terms.get(tuple(sorted(set(mono))), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, assignment: Assignment) -> int:
        """Sum of coeff * prod(bits); every variable must be assigned."""
        for v in self._variables:
            if v not in assignment:
                raise MissingVariableError(v)
        total = 0
        for mono, coeff in self._terms.items():
            prod = coeff
            for v in mono:
                if assignment[v] == 0:
                    prod = 0
                    break
            total += prod
        return total

    def restrict(self, partial: Assignment) -> "Polynomial":
        """Substitute a partial assignment, returning a polynomial in the rest."""
        out = {}
        for mono, coeff in self._terms.items():
            keep = []
            dead = False
            for v in mono:
                if v in partial:
                    if partial[v] == 0:
                        dead = True
                        break
                else:
                    keep.append(v)
            if dead:
                continue
            key = tuple(keep)
            out[key] = out.get(key, 0) + coeff
        return Polynomial(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return Polynomial(out)

    def scale(self, factor: int) -> "Polynomial":
        return Polynomial({m: c * factor for m, c in self._terms.items()})

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return Polynomial(
            {tuple(mapping.get(v, v) for v in mono): c for mono, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def to_text(self) -> str:
        """Canonical one-term-per-line form; parse(to_text(p)) == p."""
        if not self._terms:
            return "0"
        lines = []
        for mono in sorted(self._terms, key=lambda m: (len(m), m)):
            coeff = self._terms[mono]
            if mono:
                lines.append(f"{coeff} : {' '.join(mono)}")
            else:
                lines.append(str(coeff))
        return "\n".join(lines)


ZERO = Polynomial()


def parse_pbf(text: str) -> Polynomial:
    """Parse the line format into a multilinear-normalized polynomial.

    Raises PbfParseError (with the line number) on malformed lines or
    non-integer coefficients.
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        head, sep, tail = body.partition(":")
        coeff_text = head.strip()
        try:
            coeff = int(coeff_text)
        except ValueError:
            raise PbfParseError(lineno, f"non-integer coefficient {coeff_text!r}") from None
        variables = tail.split()
        if sep and not variables:
            raise PbfParseError(lineno, "':' present but no variables follow")
        key = tuple(sorted(set(variables)))
        raw[key] = raw.get(key, 0) + coeff
    return Polynomial(raw)
