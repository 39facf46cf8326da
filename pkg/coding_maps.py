#!/usr/bin/env python3
"""
Coding Maps for QEC Coding Maps
Effective logical channels of a code under independent single-qubit noise, computed
numerically for any channel and symbolically (exact polynomials) for diagonal channels
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from app_config import settings
from code_catalog import AnyCode, code_components
from pauli_algebra import product_exponent, weights
from polynomial_maps import PolyMap, Polynomial3
from qec_errors import DimensionError
from qubit_channels import AXES, DiagonalChannel, QubitChannel, make_diagonal
from stabilizer_codes import (
    PauliExpansion,
    StabilizerCode,
    commutation_sums,
    decoding_expansion,
    encoding_expansion,
)

logger = logging.getLogger(__name__)

GENERIC = "generic"
SYMBOLIC = "symbolic"

ChannelLike = Union[QubitChannel, DiagonalChannel]


@dataclass(frozen=True)
class EffectiveChannelResult:
    """Effective channel G with where it came from"""
    channel: QubitChannel
    code_name: str
    input_description: str
    path: str
    levels: Tuple[str, ...] = field(default=())

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        return self.channel.is_diagonal(tol)

    def to_json(self) -> Dict:
        return {
            "code": self.code_name,
            "input": self.input_description,
            "path": self.path,
            "matrix": self.channel.rows(),
        }


def _as_matrix(c: ChannelLike) -> np.ndarray:
    return c.to_transfer_matrix().m if isinstance(c, DiagonalChannel) else c.m


def describe_channel(c: Union[ChannelLike, Sequence[ChannelLike]]) -> str:
    if isinstance(c, DiagonalChannel):
        return f"diag:{c.x!r},{c.y!r},{c.z!r}"
    if isinstance(c, QubitChannel):
        return "matrix:" + ",".join(repr(float(v)) for v in c.m.reshape(-1))
    return f"per-site({len(c)})"


def _expansion_arrays(exp: PauliExpansion) -> Tuple[np.ndarray, np.ndarray]:
    """(letter indices, float coefficients) for vectorised evaluation"""
    indices = np.array([body.letter_indices() for body, _ in exp], dtype=np.intp).reshape(-1, exp.n)
    coeffs = np.array([float(c) for _, c in exp], dtype=float)
    return indices, coeffs


@lru_cache(maxsize=None)
def _compiled_expansions(code: StabilizerCode):
    enc = encoding_expansion(code)
    dec = decoding_expansion(code)
    return (
        [_expansion_arrays(enc[a]) for a in AXES],
        [_expansion_arrays(dec[a]) for a in AXES],
    )


def _single_code_channel(code: StabilizerCode, sites: np.ndarray) -> np.ndarray:
    """G[s, s'] = 2^n sum beta_nu alpha_mu prod_i n1_i[nu_i][mu_i]; sites has shape (n, 4, 4)"""
    enc, dec = _compiled_expansions(code)
    scale = float(1 << code.n)
    g = np.zeros((4, 4))
    for s, (nu, beta) in enumerate(dec):
        for s_prime, (mu, alpha) in enumerate(enc):
            prod = np.ones((len(beta), len(alpha)))
            for i in range(code.n):
                prod *= sites[i][nu[:, i][:, None], mu[:, i][None, :]]
            g[s, s_prime] = scale * (beta @ prod @ alpha)
    return g


def _site_stack(n: int, n1: Union[ChannelLike, Sequence[ChannelLike]]) -> np.ndarray:
    if isinstance(n1, (QubitChannel, DiagonalChannel)):
        return np.broadcast_to(_as_matrix(n1), (n, 4, 4))
    if len(n1) != n:
        raise DimensionError(len(n1), n)
    return np.stack([_as_matrix(c) for c in n1])


def effective_channel_general(code: AnyCode,
                              n1: Union[ChannelLike, Sequence[ChannelLike]]) -> EffectiveChannelResult:
    """Effective channel for any single-qubit channel, or one channel per physical qubit.

    A concatenated code is handled level by level from the innermost code outwards:
    each inner block's effective channel becomes the noise on one qubit of the next level.
    """
    components = code_components(code)
    sites = _site_stack(code.n, n1)
    for inner in reversed(components):
        blocks = len(sites) // inner.n
        sites = np.stack([
            _single_code_channel(inner, sites[b * inner.n:(b + 1) * inner.n]) for b in range(blocks)
        ])
        logger.debug(f"{inner.name}: {blocks} block(s) reduced")
    g = sites[0]
    result = EffectiveChannelResult(
        channel=QubitChannel(g),
        code_name=code.name,
        input_description=describe_channel(n1),
        path=GENERIC,
        levels=tuple(c.name for c in components),
    )
    logger.info(f"Effective channel for {code.name} on {result.input_description} (generic path)")
    return result


def _single_code_poly_map(code: StabilizerCode) -> PolyMap:
    f = commutation_sums(code)
    size = code.group_size
    components = []
    for axis in ("X", "Y", "Z"):
        logical = code.logical(axis)
        terms: Dict[Tuple[int, int, int], Fraction] = {}
        for s, f_k in zip(code.stabilizer_group, f[axis]):
            if f_k == 0:
                continue
            _, body = product_exponent(s, logical)
            exp = weights(body)
            terms[exp] = terms.get(exp, Fraction(0)) + Fraction(f_k, size)
        components.append(Polynomial3(terms))
    return PolyMap(*components)


@lru_cache(maxsize=None)
def diagonal_poly_map(code: AnyCode) -> PolyMap:
    """Exact coding map on diagonal channels [x, y, z]"""
    result = compose_chain([_single_code_poly_map(c) for c in code_components(code)])
    logger.info(f"Polynomial map for {code.name}: {result.term_count()} terms")
    return result


def compose_maps(outer: PolyMap, inner: PolyMap, term_cap: Optional[int] = None) -> PolyMap:
    """outer after inner: the map of outer-code(inner-code)"""
    cap = settings.compose_term_cap if term_cap is None else term_cap
    return outer.compose(inner, term_cap=cap)


def compose_chain(maps: Sequence[PolyMap], term_cap: Optional[int] = None) -> PolyMap:
    """Compose maps listed outermost first"""
    result = maps[0]
    for inner in maps[1:]:
        result = compose_maps(result, inner, term_cap=term_cap)
    return result


def eval_poly_map(m: PolyMap, c: DiagonalChannel) -> DiagonalChannel:
    x, y, z = m.evaluate(c.x, c.y, c.z)
    return make_diagonal(x, y, z)


def effective_channel_symbolic(code: AnyCode, c: DiagonalChannel) -> EffectiveChannelResult:
    out = eval_poly_map(diagonal_poly_map(code), c)
    return EffectiveChannelResult(
        channel=out.to_transfer_matrix(),
        code_name=code.name,
        input_description=describe_channel(c),
        path=SYMBOLIC,
        levels=tuple(comp.name for comp in code_components(code)),
    )
