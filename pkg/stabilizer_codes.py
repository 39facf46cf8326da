#!/usr/bin/env python3
"""
Stabilizer Codes for QEC Coding Maps
Code validation, syndrome recovery tables, the JSON code-spec format and the
Pauli expansions of the encoding (E) and decoding (D) operators
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from pauli_algebra import (
    PauliLike,
    PauliString,
    SignedPauli,
    eta,
    format_pauli,
    parse_pauli,
    paulis_of_weight,
    product_exponent,
    signed_product,
)
from qec_errors import CodeSpecError, InvalidCodeError, PauliParseError

logger = logging.getLogger(__name__)

MIN_WEIGHT = "min_weight"
LOGICAL_AXES = ("I", "X", "Y", "Z")

RecoveryPolicy = Union[str, Sequence[Tuple[str, Union[str, SignedPauli]]]]


def syndrome_of(generators: Sequence[PauliLike], error: PauliLike) -> int:
    """Bit k is set iff error anticommutes with generator k"""
    bits = 0
    for k, g in enumerate(generators):
        if eta(g, error) < 0:
            bits |= 1 << k
    return bits


def syndrome_text(syndrome: int, n_checks: int) -> str:
    """Character k is the bit for generator k"""
    return "".join(str((syndrome >> k) & 1) for k in range(n_checks))


def parse_syndrome(text: str, n_checks: int) -> int:
    if len(text) != n_checks or set(text) - {"0", "1"}:
        raise InvalidCodeError(f"syndrome {text!r} must be {n_checks} characters of 0/1")
    return sum(1 << k for k, ch in enumerate(text) if ch == "1")


@dataclass(frozen=True)
class PauliExpansion:
    """Operator written as exact dyadic coefficients on unsigned Pauli monomials"""
    n: int
    terms: Tuple[Tuple[PauliString, Fraction], ...]

    def __post_init__(self):
        for body, coeff in self.terms:
            if body.n != self.n:
                raise InvalidCodeError(f"monomial {body} does not act on {self.n} qubits")
            if coeff == 0:
                raise InvalidCodeError(f"zero coefficient stored for {body}")

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[PauliString, Fraction]) -> "PauliExpansion":
        return cls(n, tuple(sorted((p, Fraction(c)) for p, c in mapping.items() if c != 0)))

    def coefficient(self, body: PauliString) -> Fraction:
        return self.as_dict().get(body, Fraction(0))

    def as_dict(self) -> Dict[PauliString, Fraction]:
        return dict(self.terms)

    def monomials(self) -> List[PauliString]:
        return [body for body, _ in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[PauliString, Fraction]]:
        return iter(self.terms)

    def pretty(self) -> str:
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*{body}" for body, c in self.terms)


@dataclass(frozen=True)
class SyndromeTable:
    """Recovery operator for every syndrome, indexed by the syndrome integer"""
    n_checks: int
    recoveries: Tuple[SignedPauli, ...]

    def __post_init__(self):
        if len(self.recoveries) != 1 << self.n_checks:
            raise InvalidCodeError(
                f"recovery table has {len(self.recoveries)} entries, "
                f"{1 << self.n_checks} syndromes exist"
            )

    def recovery(self, syndrome: int) -> SignedPauli:
        return self.recoveries[syndrome]

    def items(self) -> Iterator[Tuple[str, SignedPauli]]:
        for j, op in enumerate(self.recoveries):
            yield syndrome_text(j, self.n_checks), op

    def __len__(self) -> int:
        return len(self.recoveries)


def _symplectic_vector(p: PauliLike, n: int) -> int:
    body = p.body if isinstance(p, SignedPauli) else p
    return body.x_mask | (body.z_mask << n)


def _first_dependent(vectors: Sequence[int]) -> Optional[int]:
    """Index of the first vector in the GF(2) span of the earlier ones"""
    basis: Dict[int, int] = {}
    for idx, v in enumerate(vectors):
        while v:
            pivot = v.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = v
                break
            v ^= basis[pivot]
        else:
            return idx
    return None


def validate_generators(n: int, generators: Sequence[SignedPauli]):
    if len(generators) != n - 1:
        raise InvalidCodeError(f"an n={n} code storing one qubit needs {n - 1} generators, got {len(generators)}")
    for i, g in enumerate(generators):
        if g.n != n:
            raise InvalidCodeError(f"generator {i} ({format_pauli(g)}) acts on {g.n} qubits, expected {n}")
    for i, j in combinations(range(len(generators)), 2):
        if eta(generators[i], generators[j]) < 0:
            raise InvalidCodeError(
                f"generators {i} ({format_pauli(generators[i])}) and "
                f"{j} ({format_pauli(generators[j])}) anticommute"
            )
    dependent = _first_dependent([_symplectic_vector(g, n) for g in generators])
    if dependent is not None:
        raise InvalidCodeError(
            f"generator {dependent} ({format_pauli(generators[dependent])}) is a product of earlier generators"
        )


def validate_logicals(generators: Sequence[SignedPauli], logical_x: SignedPauli, logical_z: SignedPauli):
    n = generators[0].n if generators else logical_x.n
    for name, op in (("logical_x", logical_x), ("logical_z", logical_z)):
        if op.n != n:
            raise InvalidCodeError(f"{name} ({format_pauli(op)}) acts on {op.n} qubits, expected {n}")
        for k, g in enumerate(generators):
            if eta(op, g) < 0:
                raise InvalidCodeError(
                    f"{name} ({format_pauli(op)}) anticommutes with generator {k} ({format_pauli(g)})"
                )
    if eta(logical_x, logical_z) > 0:
        raise InvalidCodeError(
            f"logical_x ({format_pauli(logical_x)}) and logical_z ({format_pauli(logical_z)}) must anticommute"
        )


def _min_weight_table(n: int, generators: Sequence[SignedPauli]) -> SyndromeTable:
    n_checks = len(generators)
    wanted = 1 << n_checks
    best: Dict[int, Tuple[Tuple[int, int, int, int], PauliString]] = {}
    for w in range(n + 1):
        for candidate in paulis_of_weight(n, w):
            s = syndrome_of(generators, candidate)
            # Y-count before the masks keeps CSS codes on independent X/Z corrections
            key = (w, candidate.y_count, candidate.x_mask, candidate.z_mask)
            if s not in best or key < best[s][0]:
                best[s] = (key, candidate)
        if len(best) == wanted:
            logger.debug(f"Min-weight table complete at weight {w}")
            break
    if len(best) != wanted:
        raise InvalidCodeError(f"only {len(best)} of {wanted} syndromes are reachable")
    return SyndromeTable(n_checks, tuple(SignedPauli.positive(best[j][1]) for j in range(wanted)))


def _explicit_table(n: int, generators: Sequence[SignedPauli],
                    entries: Sequence[Tuple[str, Union[str, SignedPauli]]]) -> SyndromeTable:
    n_checks = len(generators)
    table: Dict[int, SignedPauli] = {}
    for text, op in entries:
        j = parse_syndrome(text, n_checks)
        if j in table:
            raise InvalidCodeError(f"syndrome {text} listed twice")
        recovery = parse_pauli(op) if isinstance(op, str) else op
        if recovery.n != n:
            raise InvalidCodeError(f"recovery {format_pauli(recovery)} for syndrome {text} is not {n} qubits")
        actual = syndrome_of(generators, recovery)
        if actual != j:
            raise InvalidCodeError(
                f"recovery {format_pauli(recovery)} listed under syndrome {text} "
                f"has syndrome {syndrome_text(actual, n_checks)}"
            )
        table[j] = recovery
    missing = [syndrome_text(j, n_checks) for j in range(1 << n_checks) if j not in table]
    if missing:
        raise InvalidCodeError(f"recovery table is missing syndrome(s) {', '.join(missing)}")
    return SyndromeTable(n_checks, tuple(table[j] for j in range(1 << n_checks)))


def build_recovery(n: int, generators: Sequence[SignedPauli], policy: RecoveryPolicy = MIN_WEIGHT) -> SyndromeTable:
    """Syndrome table for validated generators: "min_weight" or explicit (syndrome, operator) pairs"""
    if isinstance(policy, str):
        if policy != MIN_WEIGHT:
            raise InvalidCodeError(f"unknown recovery policy {policy!r}")
        return _min_weight_table(n, generators)
    return _explicit_table(n, generators, policy)


@dataclass(frozen=True)
class StabilizerCode:
    """One logical qubit stored in n physical qubits"""
    name: str
    generators: Tuple[SignedPauli, ...]
    logical_x: SignedPauli
    logical_z: SignedPauli
    recovery: SyndromeTable

    def __post_init__(self):
        n = self.logical_x.n
        validate_generators(n, self.generators)
        validate_logicals(self.generators, self.logical_x, self.logical_z)
        if self.recovery.n_checks != len(self.generators):
            raise InvalidCodeError("recovery table does not match the generator count")
        for j, op in enumerate(self.recovery.recoveries):
            if syndrome_of(self.generators, op) != j:
                raise InvalidCodeError(
                    f"recovery {format_pauli(op)} is filed under syndrome "
                    f"{syndrome_text(j, self.recovery.n_checks)} but has another syndrome"
                )

    @property
    def n(self) -> int:
        return self.logical_x.n

    @cached_property
    def logical_y(self) -> SignedPauli:
        return signed_product(self.logical_x, self.logical_z, extra_i_power=1)

    @cached_property
    def stabilizer_group(self) -> Tuple[SignedPauli, ...]:
        """All 2**(n-1) elements; bit i of the index selects generator i"""
        group = [SignedPauli.identity(self.n)]
        for g in self.generators:
            group += [signed_product(s, g) for s in group]
        return tuple(group)

    @property
    def group_size(self) -> int:
        return 1 << len(self.generators)

    def logical(self, axis: str) -> SignedPauli:
        if axis == "I":
            return SignedPauli.identity(self.n)
        return {"X": self.logical_x, "Y": self.logical_y, "Z": self.logical_z}[axis]

    def syndrome(self, error: PauliLike) -> int:
        return syndrome_of(self.generators, error)

    def describe(self) -> Dict:
        return {
            "name": self.name,
            "n": self.n,
            "generators": [format_pauli(g) for g in self.generators],
            "logical_x": format_pauli(self.logical_x),
            "logical_y": format_pauli(self.logical_y),
            "logical_z": format_pauli(self.logical_z),
            "recovery": [{"syndrome": s, "operator": format_pauli(op)} for s, op in self.recovery.items()],
        }


# code-spec files

@dataclass(frozen=True)
class CodeSpec:
    """Parsed code-spec file: either a code or a concatenation recipe"""
    name: str
    n: Optional[int] = None
    generators: Tuple[str, ...] = ()
    logical_x: Optional[str] = None
    logical_z: Optional[str] = None
    recovery: Union[str, Tuple[Tuple[str, str], ...]] = MIN_WEIGHT
    concat: Optional[Tuple[str, ...]] = None

    @property
    def is_recipe(self) -> bool:
        return self.concat is not None


_CODE_FIELDS = ("n", "generators", "logical_x", "logical_z", "recovery")


def _line_of(text: str, field: str) -> Optional[int]:
    needle = f'"{field}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def parse_code_spec(text: str) -> CodeSpec:
    """Parse the JSON code-spec format, reporting the field and line of the first problem"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodeSpecError(f"invalid JSON: {e.msg}", line=e.lineno)
    if not isinstance(data, dict):
        raise CodeSpecError("top level must be a JSON object", line=1)

    def fail(message: str, field: str):
        raise CodeSpecError(message, field=field, line=_line_of(text, field.split("[")[0]))

    name = data.get("name")
    if not isinstance(name, str) or not name:
        fail("a non-empty string is required", "name")

    if "concat" in data:
        clashing = [f for f in _CODE_FIELDS if f in data]
        if clashing:
            fail(f"a recipe cannot also define {', '.join(clashing)}", "concat")
        parts = data["concat"]
        if not isinstance(parts, list) or not parts or not all(isinstance(p, str) and p for p in parts):
            fail("must be a non-empty list of code names or spec paths, outermost first", "concat")
        return CodeSpec(name=name, concat=tuple(parts))

    for field in _CODE_FIELDS[:4]:
        if field not in data:
            fail("missing", field)
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        fail(f"must be a positive integer, got {n!r}", "n")

    generators = data["generators"]
    if not isinstance(generators, list):
        fail("must be a list of Pauli strings", "generators")
    for i, g in enumerate(generators):
        _check_pauli_field(g, n, f"generators[{i}]", fail)
    for field in ("logical_x", "logical_z"):
        _check_pauli_field(data[field], n, field, fail)

    recovery = data.get("recovery", MIN_WEIGHT)
    if isinstance(recovery, str):
        if recovery != MIN_WEIGHT:
            fail(f"unknown policy {recovery!r}; use {MIN_WEIGHT!r} or an explicit list", "recovery")
        parsed_recovery: Union[str, Tuple[Tuple[str, str], ...]] = recovery
    elif isinstance(recovery, list):
        entries = []
        for i, entry in enumerate(recovery):
            if not (isinstance(entry, dict) and isinstance(entry.get("syndrome"), str)
                    and isinstance(entry.get("operator"), str)):
                fail("each entry needs string 'syndrome' and 'operator'", f"recovery[{i}]")
            _check_pauli_field(entry["operator"], n, f"recovery[{i}]", fail)
            entries.append((entry["syndrome"], entry["operator"]))
        parsed_recovery = tuple(entries)
    else:
        fail("must be 'min_weight' or a list of syndrome entries", "recovery")

    return CodeSpec(
        name=name,
        n=n,
        generators=tuple(generators),
        logical_x=data["logical_x"],
        logical_z=data["logical_z"],
        recovery=parsed_recovery,
    )


def _check_pauli_field(value, n: int, field: str, fail):
    if not isinstance(value, str):
        fail("must be a Pauli string such as '+XZZXI'", field)
    try:
        op = parse_pauli(value)
    except PauliParseError as e:
        fail(str(e), field)
    if op.n != n:
        fail(f"{value!r} has {op.n} qubits, expected n={n}", field)


def read_code_spec(path: str) -> CodeSpec:
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise CodeSpecError(f"cannot read code spec {path!r}: {e.strerror}")
    return parse_code_spec(text)


def load_code(spec: CodeSpec) -> StabilizerCode:
    """Validate a code spec and build the code with its recovery table"""
    if spec.is_recipe:
        raise CodeSpecError(f"{spec.name!r} is a concatenation recipe, not a single code", field="concat")
    generators = tuple(parse_pauli(g) for g in spec.generators)
    logical_x = parse_pauli(spec.logical_x)
    logical_z = parse_pauli(spec.logical_z)
    validate_generators(spec.n, generators)
    validate_logicals(generators, logical_x, logical_z)
    table = build_recovery(spec.n, generators, spec.recovery)
    code = StabilizerCode(spec.name, generators, logical_x, logical_z, table)
    logger.info(f"Loaded code {code.name} (n={code.n}, |S|={code.group_size})")
    return code


# expansions

@lru_cache(maxsize=None)
def encoding_expansion(code: StabilizerCode) -> Mapping[str, PauliExpansion]:
    """E_s = sum_k (-1)^a(S_k s) / 2^n * phi(S_k s) for s in I, X, Y, Z"""
    weight = Fraction(1, 1 << code.n)
    expansions = {}
    for axis in LOGICAL_AXES:
        logical = code.logical(axis)
        terms: Dict[PauliString, Fraction] = {}
        for s in code.stabilizer_group:
            op = signed_product(s, logical)
            terms[op.body] = terms.get(op.body, Fraction(0)) + op.sign * weight
        expansions[axis] = PauliExpansion.from_mapping(code.n, terms)
    return MappingProxyType(expansions)


def commutation_sums(code: StabilizerCode) -> Dict[str, Tuple[int, ...]]:
    """f[s][k] = sum_j eta(S_k, R_j) * eta(R_j, s-bar)"""
    recoveries = code.recovery.recoveries
    sums = {}
    for axis in LOGICAL_AXES:
        logical = code.logical(axis)
        signs = [eta(r, logical) for r in recoveries]
        sums[axis] = tuple(
            sum(eta(s, r) * sign for r, sign in zip(recoveries, signs))
            for s in code.stabilizer_group
        )
    return sums


@lru_cache(maxsize=None)
def decoding_expansion(code: StabilizerCode) -> Mapping[str, PauliExpansion]:
    """D_s = sum_k (-1)^a(S_k s) f[s][k] / |S| * phi(S_k s)"""
    f = commutation_sums(code)
    expansions = {}
    for axis in LOGICAL_AXES:
        logical = code.logical(axis)
        terms: Dict[PauliString, Fraction] = {}
        for s, f_k in zip(code.stabilizer_group, f[axis]):
            if f_k == 0:
                continue
            op = signed_product(s, logical)
            terms[op.body] = terms.get(op.body, Fraction(0)) + op.sign * Fraction(f_k, code.group_size)
        expansions[axis] = PauliExpansion.from_mapping(code.n, terms)
    return MappingProxyType(expansions)


# decoder behaviour on explicit errors

def residual_logical_class(code: StabilizerCode, error: PauliLike) -> str:
    """Logical Pauli left behind by error followed by its syndrome's recovery"""
    recovery = code.recovery.recovery(code.syndrome(error))
    _, residual = product_exponent(error, recovery)
    flips_z = eta(residual, code.logical_z) < 0
    flips_x = eta(residual, code.logical_x) < 0
    return {(False, False): "I", (True, False): "X", (False, True): "Z", (True, True): "Y"}[(flips_z, flips_x)]


def is_correctable(code: StabilizerCode, error: PauliLike) -> bool:
    return residual_logical_class(code, error) == "I"


def correctable_counts(code: StabilizerCode, max_weight: int = 2) -> List[int]:
    """Number of correctable errors of each weight 0..max_weight"""
    return [
        sum(1 for e in paulis_of_weight(code.n, w) if is_correctable(code, e))
        for w in range(min(max_weight, code.n) + 1)
    ]


def success_polynomial(n: int, counts: Sequence[int]) -> Dict[int, Fraction]:
    """Coefficients in p of sum_w counts[w] (p/3)^w (1-p)^(n-w)"""
    coeffs: Dict[int, Fraction] = {}
    for w, count in enumerate(counts):
        if not count:
            continue
        scale = Fraction(count, 3 ** w)
        for i in range(n - w + 1):
            c = scale * comb(n - w, i) * (-1) ** i
            coeffs[w + i] = coeffs.get(w + i, Fraction(0)) + c
    return {k: c for k, c in coeffs.items() if c != 0}


def correctable_probability_poly(code: StabilizerCode, max_weight: int = 2) -> Dict[int, Fraction]:
    """Probability the decoder succeeds under symmetric Pauli noise, counting errors up to max_weight"""
    counts = correctable_counts(code, max_weight)
    logger.debug(f"{code.name}: correctable counts by weight {counts}")
    return success_polynomial(code.n, counts)
