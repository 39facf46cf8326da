#!/usr/bin/env python3
"""
Dense Oracle for QEC Coding Maps
Brute-force effective channels from explicit codewords, projectors and Kraus noise;
a slow reference for small registers only
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from app_config import settings
from pauli_algebra import PauliLike, SignedPauli
from qec_errors import CPViolationError, DimensionError, DomainError, OracleSizeError
from qubit_channels import AXES, DiagonalChannel, QubitChannel, check_physical, diagonal_to_pauli_probs
from stabilizer_codes import LOGICAL_AXES, PauliExpansion, StabilizerCode

logger = logging.getLogger(__name__)

KRAUS_TOLERANCE = 1e-12
CHOI_TOLERANCE = 1e-10

SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def check_size(n: int):
    limit = settings.max_oracle_qubits
    if n > limit:
        raise OracleSizeError(f"dense oracle handles at most {limit} qubits, code has {n}")


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Single-qubit Kraus operators summing to a complete map"""
    operators: Tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise DomainError("a Kraus set needs one or more 2x2 matrices")
        total = sum(k.conj().T @ k for k in ops)
        deviation = float(np.max(np.abs(total - np.eye(2))))
        if deviation > KRAUS_TOLERANCE:
            raise DomainError(f"Kraus operators are not complete (max deviation {deviation:.3e})")
        object.__setattr__(self, "operators", ops)

    def __len__(self) -> int:
        return len(self.operators)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)


def kraus_from_diagonal(c: DiagonalChannel) -> KrausSet:
    """sqrt(p_s) * s for the Pauli channel behind [x, y, z]; zero-probability terms dropped"""
    check_physical(c)
    probs = diagonal_to_pauli_probs(c)
    weights = {"I": probs.p_identity, "X": probs.p_x, "Y": probs.p_y, "Z": probs.p_z}
    ops = [np.sqrt(max(p, 0.0)) * SINGLE_QUBIT[axis] for axis, p in weights.items() if p > KRAUS_TOLERANCE]
    return KrausSet(tuple(ops))


def amplitude_damping_kraus(p: float) -> KrausSet:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"damping probability must lie in [0, 1], got {p}")
    return KrausSet((
        np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex),
        np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex),
    ))


def kraus_to_transfer_matrix(k: KrausSet) -> QubitChannel:
    """m[s][s'] = tr(s K(s')) / 2"""
    m = np.array([
        [0.5 * np.trace(SINGLE_QUBIT[s] @ k.apply(SINGLE_QUBIT[s_in])).real for s_in in AXES]
        for s in AXES
    ])
    return QubitChannel(m)


def kraus_from_transfer_matrix(c: Union[QubitChannel, DiagonalChannel]) -> KrausSet:
    """Kraus operators from the eigen-decomposition of the Choi matrix; fails if c is not CP"""
    m = c.to_transfer_matrix().m if isinstance(c, DiagonalChannel) else c.m
    paulis = [SINGLE_QUBIT[a] for a in AXES]
    outputs = [sum(m[nu, mu] * paulis[nu] for nu in range(4)) for mu in range(4)]
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            # |i><j| = sum_mu <j|mu|i> mu / 2
            image = sum(0.5 * paulis[mu][j, i] * outputs[mu] for mu in range(4))
            choi[2 * i:2 * i + 2, 2 * j:2 * j + 2] = image
    evals, evecs = np.linalg.eigh(choi)
    if evals[0] < -CHOI_TOLERANCE:
        raise CPViolationError(f"channel is not completely positive (Choi eigenvalue {evals[0]:.3e})")
    ops = [
        np.sqrt(lam) * evecs[:, k].reshape(2, 2).T
        for k, lam in enumerate(evals) if lam > 0
    ]
    return KrausSet(tuple(ops))


def pauli_matrix(p: PauliLike) -> np.ndarray:
    """Dense matrix; qubit 0 is the most significant tensor factor"""
    body = p.body if isinstance(p, SignedPauli) else p
    sign = p.sign if isinstance(p, SignedPauli) else 1
    return sign * reduce(np.kron, (SINGLE_QUBIT[body.letter(i)] for i in range(body.n)))


def expansion_matrix(exp: PauliExpansion) -> np.ndarray:
    check_size(exp.n)
    total = np.zeros((1 << exp.n, 1 << exp.n), dtype=complex)
    for body, coeff in exp:
        total += float(coeff) * pauli_matrix(body)
    return total


def codespace_projector(code: StabilizerCode) -> np.ndarray:
    check_size(code.n)
    return sum(pauli_matrix(s) for s in code.stabilizer_group) / code.group_size


def codewords(code: StabilizerCode) -> Tuple[np.ndarray, np.ndarray]:
    """|0> as the +1 eigenvector of logical Z in the codespace, first nonzero amplitude real positive;
    |1> = logical X |0>"""
    dim = 1 << code.n
    zero_projector = codespace_projector(code) @ (np.eye(dim) + pauli_matrix(code.logical_z)) / 2
    column = int(np.argmax(np.linalg.norm(zero_projector, axis=0)))
    ket0 = zero_projector[:, column]
    ket0 = ket0 / np.linalg.norm(ket0)
    lead = ket0[np.flatnonzero(np.abs(ket0) > 1e-12)[0]]
    ket0 = ket0 * (abs(lead) / lead)
    ket1 = pauli_matrix(code.logical_x) @ ket0
    return ket0, ket1


def encoder(code: StabilizerCode) -> np.ndarray:
    """Isometry B with columns |0>, |1>"""
    ket0, ket1 = codewords(code)
    return np.column_stack([ket0, ket1])


def syndrome_projectors(code: StabilizerCode) -> List[np.ndarray]:
    """P_j onto the joint eigenspace where generator k has eigenvalue (-1)^(bit k of j)"""
    dim = 1 << code.n
    identity = np.eye(dim, dtype=complex)
    gens = [pauli_matrix(g) for g in code.generators]
    projectors = []
    for j in range(1 << len(gens)):
        factors = [(identity + (-1) ** ((j >> k) & 1) * g) / 2 for k, g in enumerate(gens)]
        projectors.append(reduce(np.matmul, factors, identity))
    return projectors


def recovery_operators(code: StabilizerCode) -> List[np.ndarray]:
    """A_j = R_j P_j"""
    return [
        pauli_matrix(r) @ p
        for r, p in zip(code.recovery.recoveries, syndrome_projectors(code))
    ]


def dense_encoding_operators(code: StabilizerCode) -> Dict[str, np.ndarray]:
    b = encoder(code)
    return {s: b @ (SINGLE_QUBIT[s] / 2) @ b.conj().T for s in LOGICAL_AXES}


def dense_decoding_operators(code: StabilizerCode) -> Dict[str, np.ndarray]:
    """D_s = sum_j A_j^dag B s B^dag A_j"""
    b = encoder(code)
    ops = recovery_operators(code)
    decoded = {}
    for s in LOGICAL_AXES:
        logical = b @ SINGLE_QUBIT[s] @ b.conj().T
        decoded[s] = sum(a.conj().T @ logical @ a for a in ops)
    return decoded


def decoder_completeness(code: StabilizerCode) -> np.ndarray:
    """sum_j A_j^dag (B B^dag) A_j, the identity for a complete decoder"""
    return dense_decoding_operators(code)["I"]


def _apply_on_qubit(rho: np.ndarray, kraus: KrausSet, qubit: int, n: int) -> np.ndarray:
    t = rho.reshape([2] * (2 * n))
    out = np.zeros_like(t)
    for k in kraus.operators:
        left = np.moveaxis(np.tensordot(k, t, axes=([1], [qubit])), 0, qubit)
        out += np.moveaxis(np.tensordot(left, k.conj(), axes=([n + qubit], [1])), -1, n + qubit)
    return out.reshape(rho.shape)


def apply_noise(rho: np.ndarray, n: int, kraus: Union[KrausSet, Sequence[KrausSet]]) -> np.ndarray:
    """Independent single-qubit noise on every qubit, equal to the sum over n-fold Kraus products"""
    sites = [kraus] * n if isinstance(kraus, KrausSet) else list(kraus)
    if len(sites) != n:
        raise DimensionError(len(sites), n)
    for qubit, k in enumerate(sites):
        rho = _apply_on_qubit(rho, k, qubit, n)
    return rho


def dense_effective_channel(code: StabilizerCode, kraus: Union[KrausSet, Sequence[KrausSet]]) -> QubitChannel:
    """G[s][s'] = tr(D_s N[E_s']) computed with explicit matrices"""
    check_size(code.n)
    enc = dense_encoding_operators(code)
    dec = dense_decoding_operators(code)
    noisy = {s: apply_noise(enc[s], code.n, kraus) for s in LOGICAL_AXES}
    g = np.array([[np.trace(dec[s] @ noisy[s_in]).real for s_in in LOGICAL_AXES] for s in LOGICAL_AXES])
    logger.debug(f"Dense oracle for {code.name}: G = {g.tolist()}")
    return QubitChannel(g)


def max_deviation(a: QubitChannel, b: QubitChannel) -> float:
    return float(np.max(np.abs(a.m - b.m)))
