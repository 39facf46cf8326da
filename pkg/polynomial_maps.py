#!/usr/bin/env python3
"""
Polynomial Maps for QEC Coding Maps
Sparse polynomials in (x, y, z) with exact dyadic-rational coefficients, and the
three-component maps they form on diagonal channels
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from qec_errors import CompositionTooLargeError, DomainError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int, int]
Scalar = Union[int, Fraction]

VARIABLES = ("x", "y", "z")
_ZERO_EXP: Exponent = (0, 0, 0)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def log2_denominator(c: Fraction) -> int:
    """k with denominator 2**k; raises for non-dyadic values"""
    den = c.denominator
    if den & (den - 1):
        raise DomainError(f"coefficient {c} is not a dyadic rational")
    return den.bit_length() - 1


class Polynomial3:
    """Polynomial in x, y, z; terms map exponent triples to Fraction coefficients"""

    def __init__(self, terms: Optional[Dict[Exponent, Scalar]] = None):
        cleaned: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                cleaned[tuple(int(e) for e in exp)] = coeff
        self._terms = cleaned

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial3":
        return cls({_ZERO_EXP: value})

    @classmethod
    def variable(cls, index: int) -> "Polynomial3":
        exp = [0, 0, 0]
        exp[index] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def _from_clean(cls, terms: Dict[Exponent, Fraction]) -> "Polynomial3":
        poly = cls.__new__(cls)
        poly._terms = {exp: c for exp, c in terms.items() if c != 0}
        return poly

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(exp) for exp in self._terms), default=0)

    def variables(self) -> frozenset:
        """Indices of variables appearing with nonzero coefficient"""
        used = set()
        for exp in self._terms:
            used.update(i for i in range(3) if exp[i])
        return frozenset(used)

    # ring operations

    def __add__(self, other) -> "Polynomial3":
        if not isinstance(other, Polynomial3):
            other = Polynomial3.constant(other)
        result = dict(self._terms)
        for exp, c in other._terms.items():
            result[exp] = result.get(exp, Fraction(0)) + c
        return Polynomial3._from_clean(result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial3":
        return Polynomial3._from_clean({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial3":
        if not isinstance(other, Polynomial3):
            other = Polynomial3.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial3":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial3":
        if not isinstance(other, Polynomial3):
            factor = Fraction(other)
            return Polynomial3._from_clean({exp: c * factor for exp, c in self._terms.items()})
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = _add_exp(e1, e2)
                result[exp] = result.get(exp, Fraction(0)) + c1 * c2
        return Polynomial3._from_clean(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial3":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial3.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial3):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial3.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    # evaluation

    @cached_property
    def _compiled(self) -> Tuple[np.ndarray, np.ndarray]:
        items = sorted(self._terms.items())
        exps = np.array([exp for exp, _ in items], dtype=np.int64).reshape(-1, 3)
        coeffs = np.array([float(c) for _, c in items], dtype=float)
        return exps, coeffs

    def evaluate(self, x, y, z):
        """Numeric value; x, y, z may be floats or broadcastable arrays"""
        exps, coeffs = self._compiled
        xa, ya, za = (np.asarray(v, dtype=float)[..., None] for v in (x, y, z))
        powers = xa ** exps[:, 0] * ya ** exps[:, 1] * za ** exps[:, 2]
        value = np.sum(powers * coeffs, axis=-1)
        return float(value) if np.ndim(value) == 0 else value

    def evaluate_exact(self, x: Scalar, y: Scalar, z: Scalar) -> Fraction:
        point = (Fraction(x), Fraction(y), Fraction(z))
        total = Fraction(0)
        for exp, c in self._terms.items():
            total += c * point[0] ** exp[0] * point[1] ** exp[1] * point[2] ** exp[2]
        return total

    def substitute(self, px: "Polynomial3", py: "Polynomial3", pz: "Polynomial3",
                   term_cap: Optional[int] = None) -> "Polynomial3":
        """self(px, py, pz), refusing results larger than term_cap"""
        inner = (px, py, pz)
        powers: List[List[Polynomial3]] = [[Polynomial3.constant(1)] for _ in range(3)]

        def power(var: int, k: int) -> Polynomial3:
            cache = powers[var]
            while len(cache) <= k:
                cache.append(cache[-1] * inner[var])
                if term_cap is not None and len(cache[-1]) > term_cap:
                    raise CompositionTooLargeError(len(cache[-1]), term_cap)
            return cache[k]

        result: Dict[Exponent, Fraction] = {}
        for exp, c in sorted(self._terms.items()):
            term = power(0, exp[0]) * power(1, exp[1])
            if term_cap is not None and len(term) > term_cap:
                raise CompositionTooLargeError(len(term), term_cap)
            term = term * power(2, exp[2])
            for e, v in term._terms.items():
                result[e] = result.get(e, Fraction(0)) + c * v
            if term_cap is not None and len(result) > term_cap:
                raise CompositionTooLargeError(len(result), term_cap)
        return Polynomial3._from_clean(result)

    # single-variable views

    def univariate_coefficients(self, var: int) -> Dict[int, Fraction]:
        if self.variables() - {var}:
            raise DomainError(f"polynomial depends on more than {VARIABLES[var]}")
        return {exp[var]: c for exp, c in self._terms.items()}

    def diagonal_restriction(self) -> Dict[int, Fraction]:
        """Coefficients of v -> self(v, v, v)"""
        coeffs: Dict[int, Fraction] = {}
        for exp, c in self._terms.items():
            k = sum(exp)
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        return {k: c for k, c in coeffs.items() if c != 0}

    # formatting

    def to_json(self) -> List[dict]:
        return [
            {"e": list(exp), "num": c.numerator, "log2den": log2_denominator(c)}
            for exp, c in self._display_order()
        ]

    @classmethod
    def from_json(cls, terms: Iterable[dict]) -> "Polynomial3":
        parsed: Dict[Exponent, Fraction] = {}
        for term in terms:
            exp = tuple(int(e) for e in term["e"])
            if len(exp) != 3 or min(exp) < 0:
                raise DomainError(f"bad exponent triple {term['e']!r}")
            log2den = int(term.get("log2den", 0))
            if log2den < 0:
                raise DomainError(f"log2den must be >= 0, got {log2den}")
            parsed[exp] = parsed.get(exp, Fraction(0)) + Fraction(int(term["num"]), 1 << log2den)
        return cls(parsed)

    def _display_order(self) -> List[Tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), tuple(-e for e in item[0])))

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self._display_order():
            factors = []
            for name, e in zip(VARIABLES, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            magnitude = abs(c)
            if magnitude == 1 and factors:
                text = " ".join(factors)
            else:
                text = " ".join([str(magnitude)] + factors)
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(f"-{text}" if sign == "-" else text)
            else:
                pieces.append(f"{sign} {text}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial3({self.pretty()!r})"


def univariate(coeffs: Dict[int, Fraction]) -> Polynomial:
    """numpy Polynomial from exponent -> exact coefficient"""
    if not coeffs:
        return Polynomial([0.0])
    dense = [0.0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        dense[k] = float(c)
    return Polynomial(dense)


def compose_univariate(outer: Dict[int, Fraction], inner: Dict[int, Fraction]) -> Dict[int, Fraction]:
    """Exact coefficients of outer(inner(v))"""
    outer_poly = Polynomial3({(k, 0, 0): c for k, c in outer.items()})
    inner_poly = Polynomial3({(k, 0, 0): c for k, c in inner.items()})
    zero = Polynomial3()
    return outer_poly.substitute(inner_poly, zero, zero).univariate_coefficients(0)


X = Polynomial3.variable(0)
Y = Polynomial3.variable(1)
Z = Polynomial3.variable(2)


@dataclass(frozen=True)
class PolyMap:
    """Coding map restricted to diagonal channels: [x,y,z] -> [x', y', z']"""
    x: Polynomial3
    y: Polynomial3
    z: Polynomial3

    @classmethod
    def identity(cls) -> "PolyMap":
        return cls(X, Y, Z)

    @property
    def components(self) -> Tuple[Polynomial3, Polynomial3, Polynomial3]:
        return (self.x, self.y, self.z)

    def term_count(self) -> int:
        return sum(len(p) for p in self.components)

    def evaluate(self, x, y, z) -> Tuple:
        return tuple(p.evaluate(x, y, z) for p in self.components)

    def fixes_identity(self) -> bool:
        return all(p.evaluate_exact(1, 1, 1) == 1 for p in self.components)

    def compose(self, inner: "PolyMap", term_cap: Optional[int] = None) -> "PolyMap":
        """self after inner, i.e. self(inner(.))"""
        return PolyMap(*(
            p.substitute(inner.x, inner.y, inner.z, term_cap=term_cap) for p in self.components
        ))

    def to_json(self) -> dict:
        return {name: p.to_json() for name, p in zip(VARIABLES, self.components)}

    @classmethod
    def from_json(cls, data: dict) -> "PolyMap":
        try:
            return cls(*(Polynomial3.from_json(data[name]) for name in VARIABLES))
        except (KeyError, TypeError) as e:
            raise DomainError(f"malformed polynomial map JSON: {e}")

    def pretty_lines(self) -> List[str]:
        return [f"{name}' = {p.pretty()}" for name, p in zip(VARIABLES, self.components)]
