#!/usr/bin/env python3
"""
Pauli Algebra for QEC Coding Maps
Signed n-qubit Pauli operators in symplectic (x-mask, z-mask) form
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Tuple, Union

from qec_errors import DimensionError, PauliParseError

logger = logging.getLogger(__name__)

# (x bit, z bit) -> letter; qubit 0 is the leftmost letter and bit 0 of each mask
_LETTER_OF_BITS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS_OF_LETTER = {letter: bits for bits, letter in _LETTER_OF_BITS.items()}

# i**k for k = 0..3
PHASES = (1, 1j, -1, -1j)


@dataclass(frozen=True, order=True)
class PauliString:
    """Unsigned tensor product of I/X/Y/Z letters"""
    n: int
    x_mask: int
    z_mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a Pauli string needs at least one qubit, got n={self.n}")
        limit = 1 << self.n
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValueError(f"masks do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    @classmethod
    def from_letters(cls, letters: str) -> "PauliString":
        x_mask = z_mask = 0
        for i, letter in enumerate(letters):
            if letter not in _BITS_OF_LETTER:
                raise PauliParseError(letters, i, f"illegal character {letter!r}")
            x_bit, z_bit = _BITS_OF_LETTER[letter]
            x_mask |= x_bit << i
            z_mask |= z_bit << i
        if not letters:
            raise PauliParseError(letters, 0, "empty Pauli body")
        return cls(len(letters), x_mask, z_mask)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """Weight-one string with `letter` on `qubit`"""
        x_bit, z_bit = _BITS_OF_LETTER[letter]
        return cls(n, x_bit << qubit, z_bit << qubit)

    @property
    def support(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    @property
    def y_count(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    def letter(self, qubit: int) -> str:
        return _LETTER_OF_BITS[((self.x_mask >> qubit) & 1, (self.z_mask >> qubit) & 1)]

    def letters(self) -> str:
        return "".join(self.letter(i) for i in range(self.n))

    def letter_indices(self) -> Tuple[int, ...]:
        """Per-qubit index into (I, X, Y, Z), the row order of transfer matrices"""
        return tuple("IXYZ".index(self.letter(i)) for i in range(self.n))

    def is_identity(self) -> bool:
        return self.support == 0

    def __str__(self) -> str:
        return self.letters()


@dataclass(frozen=True, order=True)
class SignedPauli:
    """Hermitian Pauli operator (-1)**sign_bit * body"""
    sign_bit: int
    body: PauliString

    def __post_init__(self):
        if self.sign_bit not in (0, 1):
            raise ValueError(f"sign_bit must be 0 or 1, got {self.sign_bit}")

    @classmethod
    def identity(cls, n: int) -> "SignedPauli":
        return cls(0, PauliString.identity(n))

    @classmethod
    def positive(cls, body: PauliString) -> "SignedPauli":
        return cls(0, body)

    @property
    def n(self) -> int:
        return self.body.n

    @property
    def sign(self) -> int:
        return -1 if self.sign_bit else 1

    def __neg__(self) -> "SignedPauli":
        return SignedPauli(self.sign_bit ^ 1, self.body)

    def __str__(self) -> str:
        return format_pauli(self)


PauliLike = Union[SignedPauli, PauliString]


def _unsigned(p: PauliLike) -> PauliString:
    return p.body if isinstance(p, SignedPauli) else p


def _sign_bit(p: PauliLike) -> int:
    return p.sign_bit if isinstance(p, SignedPauli) else 0


def _check_lengths(a: PauliLike, b: PauliLike):
    if _unsigned(a).n != _unsigned(b).n:
        raise DimensionError(_unsigned(a).n, _unsigned(b).n)


def product_exponent(a: PauliLike, b: PauliLike) -> Tuple[int, PauliString]:
    """Return (k, body) with a*b = i**k * body"""
    _check_lengths(a, b)
    pa, pb = _unsigned(a), _unsigned(b)
    x3 = pa.x_mask ^ pb.x_mask
    z3 = pa.z_mask ^ pb.z_mask
    # Each Hermitian letter is i**(x&z) X**x Z**z; moving Z past X costs a sign.
    k = (
        (pa.x_mask & pa.z_mask).bit_count()
        + (pb.x_mask & pb.z_mask).bit_count()
        + 2 * (pa.z_mask & pb.x_mask).bit_count()
        - (x3 & z3).bit_count()
        + 2 * (_sign_bit(a) + _sign_bit(b))
    ) % 4
    return k, PauliString(pa.n, x3, z3)


def pauli_mul(a: PauliLike, b: PauliLike) -> Tuple[complex, PauliString]:
    """Exact product a*b as (phase, unsigned body); phase is one of 1, -1, 1j, -1j"""
    k, body = product_exponent(a, b)
    return PHASES[k], body


def signed_product(a: PauliLike, b: PauliLike, extra_i_power: int = 0) -> SignedPauli:
    """i**extra_i_power * a * b, which must come out Hermitian"""
    k, body = product_exponent(a, b)
    k = (k + extra_i_power) % 4
    if k % 2:
        raise ValueError(f"product of {a} and {b} is not Hermitian (phase {PHASES[k]})")
    return SignedPauli(k // 2, body)


def eta(a: PauliLike, b: PauliLike) -> int:
    """+1 if a and b commute, -1 if they anticommute"""
    _check_lengths(a, b)
    pa, pb = _unsigned(a), _unsigned(b)
    parity = ((pa.x_mask & pb.z_mask).bit_count() + (pa.z_mask & pb.x_mask).bit_count()) & 1
    return -1 if parity else 1


def weights(p: PauliLike) -> Tuple[int, int, int]:
    """(w_X, w_Y, w_Z) letter counts"""
    body = _unsigned(p)
    x, z = body.x_mask, body.z_mask
    return (x & ~z).bit_count(), (x & z).bit_count(), (z & ~x).bit_count()


def parse_pauli(text: str) -> SignedPauli:
    """Parse '+XZI', '-YYY' or 'ZZI' (no sign means +)"""
    sign_bit = 0
    offset = 0
    if text[:1] in ("+", "-"):
        sign_bit = 1 if text[0] == "-" else 0
        offset = 1
    body_text = text[offset:]
    if not body_text:
        raise PauliParseError(text, len(text), "empty Pauli body")
    for i, letter in enumerate(body_text):
        if letter not in _BITS_OF_LETTER:
            raise PauliParseError(text, i + offset, f"illegal character {letter!r}")
    return SignedPauli(sign_bit, PauliString.from_letters(body_text))


def format_pauli(p: PauliLike) -> str:
    """Inverse of parse_pauli; always writes the sign"""
    return ("-" if _sign_bit(p) else "+") + _unsigned(p).letters()


def paulis_of_weight(n: int, w: int) -> Iterator[PauliString]:
    """All unsigned n-qubit strings of weight w, positions ascending then letters X, Y, Z"""
    for positions in combinations(range(n), w):
        for letters in product("XYZ", repeat=w):
            x_mask = z_mask = 0
            for qubit, letter in zip(positions, letters):
                x_bit, z_bit = _BITS_OF_LETTER[letter]
                x_mask |= x_bit << qubit
                z_mask |= z_bit << qubit
            yield PauliString(n, x_mask, z_mask)
