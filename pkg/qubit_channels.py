#!/usr/bin/env python3
"""
Qubit Channels for QEC Coding Maps
Pauli-transfer matrices, diagonal channels [x,y,z], Pauli error probabilities and their conversions
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from qec_errors import CPViolationError, DomainError

logger = logging.getLogger(__name__)

CP_TOLERANCE = 1e-12
TRACE_ROW_TOLERANCE = 1e-12
AXES = ("I", "X", "Y", "Z")

# (label, coefficients on (x, y, z)); each row must stay <= 1
CP_INEQUALITIES = (
    ("-x+y+z <= 1", (-1, 1, 1)),
    ("x-y+z <= 1", (1, -1, 1)),
    ("x+y-z <= 1", (1, 1, -1)),
    ("-x-y-z <= 1", (-1, -1, -1)),
)


@dataclass(frozen=True, eq=False)
class QubitChannel:
    """4x4 real transfer matrix acting on (<I>, <X>, <Y>, <Z>)"""
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (4, 4):
            raise DomainError(f"a qubit channel needs a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("channel matrix has non-finite entries")
        if np.max(np.abs(m[0] - (1.0, 0.0, 0.0, 0.0))) > TRACE_ROW_TOLERANCE:
            raise DomainError(f"first row must be 1,0,0,0 (trace preservation), got {m[0].tolist()}")
        m[0] = (1.0, 0.0, 0.0, 0.0)
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @classmethod
    def identity(cls) -> "QubitChannel":
        return cls(np.eye(4))

    def entry(self, out_axis: str, in_axis: str) -> float:
        return float(self.m[AXES.index(out_axis), AXES.index(in_axis)])

    def off_diagonal_max(self) -> float:
        return float(np.max(np.abs(self.m - np.diag(np.diag(self.m)))))

    def is_diagonal(self, tol: float = 0.0) -> bool:
        return self.off_diagonal_max() <= tol

    def as_diagonal(self, tol: float = 1e-12) -> "DiagonalChannel":
        if not self.is_diagonal(tol):
            raise DomainError(f"channel is not diagonal (max off-diagonal {self.off_diagonal_max():.3e})")
        return DiagonalChannel(float(self.m[1, 1]), float(self.m[2, 2]), float(self.m[3, 3]))

    def rows(self) -> List[List[float]]:
        return self.m.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, QubitChannel) and np.array_equal(self.m, other.m)


@dataclass(frozen=True)
class DiagonalChannel:
    """Channel diag(1, x, y, z), written [x, y, z]"""
    x: float
    y: float
    z: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def to_transfer_matrix(self) -> QubitChannel:
        return QubitChannel(np.diag([1.0, self.x, self.y, self.z]))

    def cp_violations(self, tol: float = CP_TOLERANCE) -> List[Tuple[str, float]]:
        """Violated complete-positivity inequalities with their left-hand values"""
        violated = []
        for label, (a, b, c) in CP_INEQUALITIES:
            lhs = a * self.x + b * self.y + c * self.z
            if lhs > 1 + tol:
                violated.append((label, lhs))
        return violated

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_tuple())))

    def is_physical(self, tol: float = CP_TOLERANCE) -> bool:
        return self.is_finite() and not self.cp_violations(tol)

    def __str__(self) -> str:
        return f"[{self.x:.6g}, {self.y:.6g}, {self.z:.6g}]"


@dataclass(frozen=True)
class PauliProbs:
    """Exclusive probabilities of X, Y and Z errors"""
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self):
        probs = (self.p_x, self.p_y, self.p_z)
        if not np.all(np.isfinite(probs)):
            raise DomainError(f"Pauli probabilities {probs} must be finite")
        if min(probs) < -CP_TOLERANCE or sum(probs) > 1 + CP_TOLERANCE:
            raise CPViolationError(
                f"Pauli probabilities {probs} are outside the simplex "
                f"(need each >= 0 and total <= 1)"
            )

    @property
    def p_identity(self) -> float:
        return 1.0 - self.p_x - self.p_y - self.p_z

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.p_x, self.p_y, self.p_z)


def check_physical(c: DiagonalChannel):
    """Raise CPViolationError naming the first violated inequality"""
    if not c.is_finite():
        raise DomainError(f"channel {c} has non-finite entries")
    violated = c.cp_violations()
    if violated:
        label, lhs = violated[0]
        raise CPViolationError(
            f"channel {c} is not completely positive: {label} fails ({lhs:.6g} > 1)",
            inequality=label,
        )


def make_diagonal(x: float, y: float, z: float, require_physical: bool = False) -> DiagonalChannel:
    if not np.all(np.isfinite([x, y, z])):
        raise DomainError(f"diagonal entries [{x}, {y}, {z}] must be finite")
    c = DiagonalChannel(float(x), float(y), float(z))
    if require_physical:
        check_physical(c)
    return c


def diagonal_to_pauli_probs(c: DiagonalChannel) -> PauliProbs:
    return PauliProbs(
        (1 + c.x - c.y - c.z) / 4,
        (1 - c.x + c.y - c.z) / 4,
        (1 - c.x - c.y + c.z) / 4,
    )


def pauli_probs_to_diagonal(p: PauliProbs) -> DiagonalChannel:
    return DiagonalChannel(
        1 - 2 * (p.p_y + p.p_z),
        1 - 2 * (p.p_x + p.p_z),
        1 - 2 * (p.p_x + p.p_y),
    )


def symmetric_pauli(p: float) -> DiagonalChannel:
    """Random Pauli error with total probability p, split evenly"""
    return pauli_probs_to_diagonal(PauliProbs(p / 3, p / 3, p / 3))


def depolarizing(gamma_t: float) -> DiagonalChannel:
    """Symmetric depolarizing channel after time t (gamma = 1 units)"""
    if gamma_t < 0 or np.isnan(gamma_t):
        raise DomainError(f"gamma_t must be >= 0, got {gamma_t}")
    decay = float(np.exp(-gamma_t))
    return DiagonalChannel(decay, decay, decay)


def depolarizing_to_pauli_probability(gamma_t: float) -> float:
    """p with symmetric_pauli(p) == depolarizing(gamma_t)"""
    return 0.75 * (1.0 - float(np.exp(-gamma_t)))


def amplitude_damping(p: float) -> QubitChannel:
    """Decay |1> -> |0> with probability p; not diagonal"""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"damping probability must lie in [0, 1], got {p}")
    root = float(np.sqrt(1.0 - p))
    return QubitChannel(np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, root, 0.0, 0.0],
        [0.0, 0.0, root, 0.0],
        [p, 0.0, 0.0, 1.0 - p],
    ]))


def worst_case_fidelity(c: DiagonalChannel) -> float:
    return (1.0 + min(c.x, c.y, c.z)) / 2


def worst_case_axis(c: DiagonalChannel) -> str:
    """Eigenbasis (X, Y or Z) of the pure states reaching the worst-case fidelity"""
    values = c.as_tuple()
    return "XYZ"[values.index(min(values))]


def pure_state_fidelity(c: DiagonalChannel, bloch: Sequence[float]) -> float:
    bx, by, bz = bloch
    return (1.0 + c.x * bx * bx + c.y * by * by + c.z * bz * bz) / 2


def apply_channel(c: Union[QubitChannel, DiagonalChannel], v: Sequence[float]) -> np.ndarray:
    """Transfer matrix times an expectation vector whose <I> entry is 1"""
    vec = np.asarray(v, dtype=float)
    if vec.shape != (4,):
        raise DomainError(f"expectation vector needs 4 entries, got shape {vec.shape}")
    if abs(vec[0] - 1.0) > TRACE_ROW_TOLERANCE:
        raise DomainError(f"expectation vector must have <I> = 1, got {vec[0]}")
    matrix = c.to_transfer_matrix().m if isinstance(c, DiagonalChannel) else c.m
    out = matrix @ vec
    out[0] = 1.0
    return out


def _numbers(body: str, count: int, literal: str) -> List[float]:
    parts = [part.strip() for part in body.split(",")]
    if len(parts) != count:
        raise DomainError(f"channel literal {literal!r} needs {count} comma-separated numbers")
    try:
        numbers = [float(part) for part in parts]
    except ValueError:
        raise DomainError(f"channel literal {literal!r} has a non-numeric entry")
    if not np.all(np.isfinite(numbers)):
        raise DomainError(f"channel literal {literal!r} has a non-finite entry")
    return numbers


def parse_channel_literal(text: str) -> Union[DiagonalChannel, QubitChannel]:
    """Parse a CLI channel literal, checking physicality where a criterion exists.

    Accepted forms: diag:x,y,z  pauli:pX,pY,pZ  depol:gamma_t  ampdamp:p
    and a JSON row-major array of 16 numbers (inline or as a .json file path).
    Non-diagonal matrices are only checked for the trace-preservation row.
    """
    literal = text.strip()
    kind, _, body = literal.partition(":")
    kind = kind.lower()
    if kind == "diag":
        return make_diagonal(*_numbers(body, 3, literal), require_physical=True)
    if kind == "pauli":
        return pauli_probs_to_diagonal(PauliProbs(*_numbers(body, 3, literal)))
    if kind == "depol":
        return depolarizing(_numbers(body, 1, literal)[0])
    if kind == "ampdamp":
        return amplitude_damping(_numbers(body, 1, literal)[0])

    raw = literal
    if not literal.startswith("[") and literal.endswith(".json") and os.path.exists(literal):
        with open(literal, "r") as f:
            raw = f.read()
    try:
        values = json.loads(raw)
    except json.JSONDecodeError as e:
        raise DomainError(f"unrecognised channel literal {text!r}: {e}")
    flat = np.asarray(values, dtype=float).reshape(-1)
    if flat.size != 16:
        raise DomainError(f"a general channel needs 16 numbers, got {flat.size}")
    channel = QubitChannel(flat.reshape(4, 4))
    if channel.is_diagonal():
        diagonal = channel.as_diagonal()
        check_physical(diagonal)
        return diagonal
    logger.info("General (non-diagonal) channel accepted with trace-row check only")
    return channel
