"""Exact arithmetic over prime fields GF(p).

Elements are canonical residues in [0, p).  Matrices are dense, immutable
after construction, and every public result is fully reduced, so values
compare bit-exactly.  Scale is desk-sized (at most a few hundred rows), so
no sparse storage or fast multiplication is attempted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DivisionByZero, NonPrimeModulus

__all__ = [
    "Field",
    "FieldMatrix",
    "field_new",
    "mat_mul",
    "mat_vec",
    "vstack",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise NonPrimeModulus(f"modulus {self.p!r} is not a prime")

    @property
    def characteristic(self) -> int:
        return self.p

    def element(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def arith(self, a: int, b: int, op: str) -> int:
        """Dispatch form of add/sub/mul, handy for table-driven tests."""
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        if op == "mul":
            return self.mul(a, b)
        raise ValueError(f"unknown op {op!r}")

    # matrix constructors

    def matrix(self, entries) -> "FieldMatrix":
        return FieldMatrix(self, entries)

    def zeros(self, rows: int, cols: int) -> "FieldMatrix":
        return FieldMatrix(self, np.zeros((rows, cols), dtype=np.int64))

    def identity(self, n: int) -> "FieldMatrix":
        return FieldMatrix(self, np.eye(n, dtype=np.int64))

    def __repr__(self):
        return f"GF({self.p})"


def field_new(p: int) -> Field:
    """Build GF(p), rejecting composite moduli."""
    return Field(p)


class FieldMatrix:
    """Dense matrix over a prime field, row-major, reduced entries."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        arr = np.mod(arr, field.p)
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def p(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, FieldMatrix)
            and self.p == other.p
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.p, self.entries.shape, self.entries.tobytes()))

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if not isinstance(other, FieldMatrix) or other.p != self.p:
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return FieldMatrix(self.field, self.entries @ other.entries)

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        if not isinstance(other, FieldMatrix) or other.p != self.p:
            return NotImplemented
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatch("matrix addition needs equal shapes")
        return FieldMatrix(self.field, self.entries + other.entries)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        if not isinstance(other, FieldMatrix) or other.p != self.p:
            return NotImplemented
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatch("matrix subtraction needs equal shapes")
        return FieldMatrix(self.field, self.entries - other.entries)

    def vec(self, x) -> np.ndarray:
        """Matrix-vector product, returned as a reduced 1-d int array."""
        v = np.asarray(x, dtype=np.int64)
        if v.ndim != 1 or v.shape[0] != self.cols:
            raise DimensionMismatch(
                f"vector of length {v.shape} does not fit {self.rows}x{self.cols}"
            )
        return (self.entries @ v) % self.p

    def row_slice(self, lo: int, hi: int) -> "FieldMatrix":
        if not (0 <= lo <= hi <= self.rows):
            raise DimensionMismatch(f"row slice [{lo}, {hi}) out of range")
        return FieldMatrix(self.field, self.entries[lo:hi])

    def to_json(self) -> str:
        doc = {
            "rows": self.rows,
            "cols": self.cols,
            "p": self.p,
            "entries": [int(v) for v in self.entries.reshape(-1)],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "FieldMatrix":
        doc = json.loads(text)
        arr = np.asarray(doc["entries"], dtype=np.int64).reshape(doc["rows"], doc["cols"])
        return cls(Field(doc["p"]), arr)

    def __repr__(self):
        return f"FieldMatrix(GF({self.p}), {self.rows}x{self.cols})"


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    out = a @ b
    if out is NotImplemented:
        raise DimensionMismatch("operands live in different fields")
    return out


def mat_vec(a: FieldMatrix, x) -> np.ndarray:
    return a.vec(x)


def vstack(blocks) -> FieldMatrix:
    """Stack matrices top to bottom; all blocks must share field and width."""
    blocks = list(blocks)
    if not blocks:
        raise DimensionMismatch("vstack of no blocks")
    field = blocks[0].field
    cols = blocks[0].cols
    for blk in blocks:
        if blk.p != field.p or blk.cols != cols:
            raise DimensionMismatch("vstack blocks must share field and column count")
    return FieldMatrix(field, np.vstack([blk.entries for blk in blocks]))
