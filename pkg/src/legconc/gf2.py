"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row is the entry in column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class NotAComplex(ArithmeticError):
    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"d o d is nonzero starting in degree {degree}")


class GF2Matrix:
    """A dense ``nrows x ncols`` matrix over GF(2)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        if any(r & ~mask for r in self.rows):
            raise ValueError("row wider than ncols")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "GF2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            v = 0
            for j, x in enumerate(row):
                if x & 1:
                    v |= 1 << j
            rows.append(v)
        return cls(len(rows), ncols, rows)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __setitem__(self, ij: tuple[int, int], value: int) -> None:
        i, j = ij
        if value & 1:
            self.rows[i] |= 1 << j
        else:
            self.rows[i] &= ~(1 << j)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF2Matrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols})"

    def copy(self) -> "GF2Matrix":
        return GF2Matrix(self.nrows, self.ncols, self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def transpose(self) -> "GF2Matrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return GF2Matrix(self.ncols, self.nrows, out)

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return GF2Matrix(self.nrows, other.ncols, out)

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return GF2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def apply(self, v: int) -> int:
        """Matrix times column vector (bit ``j`` = coordinate ``j``)."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def rank(self) -> int:
        return len(_echelon(list(self.rows))[0])

    def row_space_basis(self) -> list[int]:
        return _echelon(list(self.rows))[0]

    def kernel(self) -> list[int]:
        """Basis of {v : M v = 0}, vectors as int bitsets over the columns."""
        rows, pivots = _reduced_echelon(list(self.rows))
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            v = 1 << free
            for r, p in zip(rows, pivots):
                if (r >> free) & 1:
                    v |= 1 << p
            basis.append(v)
        return basis


def _echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = r.bit_length() - 1
            # keep earlier basis rows reduced at the new pivot
            basis.append(r)
            pivots.append(p)
    return basis, pivots


def _reduced_echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    basis, pivots = _echelon(rows)
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j and (basis[j] >> pivots[i]) & 1:
                basis[j] ^= basis[i]
    return basis, pivots


def rank(rows: Iterable[int]) -> int:
    return len(_echelon(list(rows))[0])


# ---------------------------------------------------------------------------
# graded complexes


@dataclass(frozen=True)
class PoincarePolynomial:
    """Finite Laurent polynomial sum dim_k t^k with nonnegative coefficients."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in self.coeffs.items() if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("negative dimension")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PoincarePolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, Mapping):
            return self.coeffs == PoincarePolynomial(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out: dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return PoincarePolynomial(out)

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return PoincarePolynomial(out)

    def total(self) -> int:
        return sum(self.coeffs.values())

    def evaluate(self, t: int) -> int:
        return sum(v * t**k for k, v in self.coeffs.items())

    def shift(self, m: int) -> "PoincarePolynomial":
        return PoincarePolynomial({k + m: v for k, v in self.coeffs.items()})

    def serialize(self) -> str:
        return " ".join(f"{k}:{v}" for k, v in self.coeffs.items())

    @classmethod
    def parse(cls, text: str) -> "PoincarePolynomial":
        out: dict[int, int] = {}
        for tok in text.split():
            k, v = tok.split(":")
            out[int(k)] = out.get(int(k), 0) + int(v)
        return cls(out)

    def __str__(self) -> str:
        return self.serialize() or "0"


@dataclass
class GradedComplex:
    """Cochain complex over GF(2): ``d`` raises degree by one.

    ``basis[k]`` lists labels in degree ``k``; ``differential[k]`` is the
    matrix of d from degree k to degree k+1 (rows index the target basis).
    With ``modulus`` m > 0 degrees live in Z/m.
    """

    basis: dict[int, list]
    differential: dict[int, GF2Matrix]
    modulus: int = 0

    def _norm(self, k: int) -> int:
        return k % self.modulus if self.modulus else k

    def dim(self, k: int) -> int:
        return len(self.basis.get(self._norm(k), []))

    def d(self, k: int) -> GF2Matrix:
        k = self._norm(k)
        m = self.differential.get(k)
        if m is None:
            return GF2Matrix.zeros(self.dim(k + 1), self.dim(k))
        return m

    def degrees(self) -> list[int]:
        return sorted(k for k, b in self.basis.items() if b)

    def check(self) -> None:
        for k in self.degrees():
            if self.dim(k + 1) and not (self.d(k + 1) @ self.d(k)).is_zero():
                raise NotAComplex(k)

    def homology(self) -> PoincarePolynomial:
        self.check()
        out = {}
        for k in self.degrees():
            ker = self.dim(k) - self.d(k).rank()
            im = self.d(k - 1).rank() if self.dim(k - 1) else 0
            out[k] = ker - im
        return PoincarePolynomial(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * self.dim(k) for k in self.degrees())


def homology(complex_: GradedComplex) -> PoincarePolynomial:
    return complex_.homology()
