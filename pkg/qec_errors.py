#!/usr/bin/env python3
"""
Error types for QEC Coding Maps
Every domain failure derives from QECError so the CLI can map it to exit status 1
"""

from typing import Optional


class QECError(Exception):
    """Base class for domain errors"""


class DimensionError(QECError, ValueError):
    """Operands act on different numbers of qubits"""

    def __init__(self, left: int, right: int):
        super().__init__(f"qubit count mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class PauliParseError(QECError, ValueError):
    """Malformed Pauli text"""

    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse Pauli {text!r} at index {position}: {reason}")
        self.text = text
        self.position = position


class CPViolationError(QECError, ValueError):
    """A channel fails complete positivity"""

    def __init__(self, message: str, inequality: Optional[str] = None):
        super().__init__(message)
        self.inequality = inequality


class InvalidCodeError(QECError, ValueError):
    """Stabilizer code data is inconsistent"""


class CodeSpecError(QECError, ValueError):
    """Code-spec file cannot be turned into a code or recipe"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line


class CompositionTooLargeError(QECError):
    """Symbolic composition would exceed the configured term cap"""

    def __init__(self, terms: int, cap: int):
        super().__init__(
            f"symbolic composition needs more than {cap} terms (reached {terms}); "
            f"use numeric iteration (the 'iterate' command) for deep concatenation"
        )
        self.terms = terms
        self.cap = cap


class OracleSizeError(QECError):
    """Dense oracle refused a register that is too large"""


class NoThresholdError(QECError):
    """No leading-order threshold estimate exists"""


class DomainError(QECError, ValueError):
    """Argument outside the domain of an operation"""
