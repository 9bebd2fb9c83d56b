"""Dense exact linear algebra over prime fields F_p.

Matrices are thin immutable wrappers around ``int64`` numpy arrays whose
entries are kept reduced to ``[0, p)``.  With ``p < 2**31`` every product of
two entries fits in 64 bits, so elimination never overflows as long as we
reduce after each multiply.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "Matrix",
    "NoRootError",
    "is_prime",
    "primitive_root_of_unity",
    "multiplicative_order",
    "rank",
    "rref",
    "kernel_basis",
    "multiply",
    "solve_right",
    "random_invertible",
]

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class NoRootError(ValueError):
    """Raised when F_p has no element of the requested multiplicative order."""


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an integer, got {self.p!r}")
        if not (2 <= self.p < MAX_PRIME) or not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not a prime below 2^31")
        object.__setattr__(self, "p", int(self.p))

    def __call__(self, value: int) -> int:
        return int(value) % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(value, -1, self.p)

    def __repr__(self):
        return f"F{self.p}"


def multiplicative_order(field: PrimeField, x: int) -> int:
    x = field(x)
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % field.p
        k += 1
    return k


def primitive_root_of_unity(field: PrimeField, N: int) -> int:
    """Smallest element of F_p of exact multiplicative order ``N``."""
    if N < 1:
        raise ValueError("N must be positive")
    if (field.p - 1) % N:
        raise NoRootError(f"F_{field.p} has no primitive {N}-th root of unity ({N} does not divide {field.p - 1})")
    for x in range(1, field.p):
        if pow(x, N, field.p) == 1 and all(pow(x, k, field.p) != 1 for k in range(1, N)):
            return x
    raise AssertionError("unreachable: the multiplicative group of F_p is cyclic")


class Matrix:
    """Immutable dense matrix over a prime field.

    Zero rows or zero columns are allowed; they are the maps to and from the
    zero space.
    """

    __slots__ = ("field", "_a")

    def __init__(self, field: PrimeField, data, shape: Optional[tuple[int, int]] = None):
        a = np.array(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            raise ValueError(f"matrix data must be two-dimensional, got shape {a.shape}")
        a %= field.p
        a.setflags(write=False)
        self.field = field
        self._a = a

    @classmethod
    def _wrap(cls, field: PrimeField, a: np.ndarray) -> "Matrix":
        # `a` must already be reduced and owned by the caller.
        m = cls.__new__(cls)
        a.setflags(write=False)
        m.field = field
        m._a = a
        return m

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Matrix":
        """Build from a row-major list of lists.  ``cols`` disambiguates ``[]``."""
        if len(rows) == 0:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, [list(r) for r in rows])

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def is_zero(self) -> bool:
        return not self._a.any()

    def __getitem__(self, idx):
        return int(self._a[idx])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return multiply(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._wrap(self.field, (self._a + other._a) % self.field.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._wrap(self.field, (self._a - other._a) % self.field.p)

    def scale(self, c: int) -> "Matrix":
        return Matrix._wrap(self.field, self._a * self.field(c) % self.field.p)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self._a.T.copy())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.field.p, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.tolist()!r}, shape={self.shape})"


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field!r} vs {b.field!r}")


def multiply(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    p = a.field.p
    n = a.cols
    if n == 0:
        return Matrix.zeros(a.field, a.rows, b.cols)
    # Chunk the inner dimension so partial sums stay below 2^63.
    chunk = max(1, (2**63 - 1) // ((p - 1) ** 2 or 1))
    if n <= chunk:
        out = (a._a @ b._a) % p
    else:
        out = np.zeros((a.rows, b.cols), dtype=np.int64)
        for s in range(0, n, chunk):
            out = (out + a._a[:, s:s + chunk] @ b._a[s:s + chunk, :]) % p
    return Matrix._wrap(a.field, out)


def hstack(field: PrimeField, blocks: Iterable[Matrix], rows: int) -> Matrix:
    arrs = [b.array for b in blocks]
    if not arrs:
        return Matrix.zeros(field, rows, 0)
    return Matrix._wrap(field, np.hstack(arrs).astype(np.int64))


def block_diag(field: PrimeField, blocks: Sequence[Matrix]) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i:i + b.rows, j:j + b.cols] = b.array
        i += b.rows
        j += b.cols
    return Matrix._wrap(field, out)


def _rref_array(a: np.ndarray, p: int, ncols: Optional[int] = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a copy of ``a``.

    Pivot search scans columns left to right and takes the topmost nonzero
    entry.  Only the first ``ncols`` columns are eligible as pivots.
    """
    a = a.copy()
    m = a.shape[0]
    n = a.shape[1] if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    a, piv = _rref_array(m.array, m.field.p)
    return Matrix._wrap(m.field, a), piv


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # Eliminate on the shorter side; rank is transpose invariant.
    a = m.array if m.rows <= m.cols else m.array.T
    return len(_rref_array(a, m.field.p)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}``, one per free column of the RREF."""
    n = m.cols
    p = m.field.p
    if m.rows == 0:
        return Matrix.identity(m.field, n)
    r, piv = _rref_array(m.array, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, c in enumerate(piv):
            basis[c, k] = (-r[row, f]) % p
    return Matrix._wrap(m.field, basis)


def solve_right(m: Matrix, target: Matrix) -> Optional[Matrix]:
    """Some ``X`` with ``m @ X == target``, or ``None`` when the system is inconsistent.

    Free variables are set to zero.
    """
    _same_field(m, target)
    if m.rows != target.rows:
        raise ValueError(f"row mismatch: {m.shape} vs target {target.shape}")
    p = m.field.p
    n, k = m.cols, target.cols
    if m.rows == 0:
        return Matrix.zeros(m.field, n, k)
    aug = np.hstack([m.array, target.array])
    r, piv = _rref_array(aug, p, ncols=n)
    if r[len(piv):, n:].any():
        return None
    x = np.zeros((n, k), dtype=np.int64)
    for row, c in enumerate(piv):
        x[c] = r[row, n:]
    return Matrix._wrap(m.field, x)


def random_invertible(field: PrimeField, n: int, seed: int) -> Matrix:
    """Seeded uniformly random element of GL_n(F_p), by rejection sampling."""
    rng = np.random.default_rng(seed)
    while True:
        a = rng.integers(0, field.p, size=(n, n), dtype=np.int64)
        m = Matrix._wrap(field, a)
        if rank(m) == n:
            return m


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    x = solve_right(m, Matrix.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def kron(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    return Matrix._wrap(a.field, np.kron(a.array, b.array) % a.field.p)
