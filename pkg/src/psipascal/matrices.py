"""Exact matrix layer: subdiagonal generators, Pascal-type and symmetric
binomial matrices, moment matrices, products, and the matrix-level checks.

Lower-triangular matrices store only the triangle (row i holds i+1 entries);
the symmetric binomial ("Fermat") matrix and transposes are dense squares.
All matrices are immutable; entries are exact scalars from one of the two
field domains, with rationals promoting to rational functions on contact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .polynomials import psi_plus_power
from .report import IdentityReport, failing, passing
from .scalars import (
    RATIONAL_FIELD,
    RATIONAL_FUNCTION_FIELD,
    RationalFunction,
    Scalar,
    ScalarField,
    scalar_to_latex,
    scalar_to_string,
)
from .sequences import AdmissibleSequence

__all__ = [
    "LowerTriMatrix",
    "SquareMatrix",
    "GeneralizedPascal",
    "k_matrix",
    "psi_exp_nilpotent",
    "pascal_closed",
    "fermat",
    "matmul",
    "transpose",
    "binom_convolve",
    "check_exp_vs_closed",
    "check_nilpotency",
    "check_semigroup",
    "check_product_identity",
    "check_transpose_fermat",
    "check_weighted_cauchy",
    "check_cauchy_vandermonde",
    "MatrixDocument",
    "matrix_document",
    "matrix_to_latex",
]


def _entries_field(entry_rows, declared: Optional[ScalarField]) -> ScalarField:
    if declared is not None:
        return declared
    for row in entry_rows:
        for value in row:
            if isinstance(value, RationalFunction):
                return RATIONAL_FUNCTION_FIELD
    return RATIONAL_FIELD


class LowerTriMatrix:
    """Square lower-triangular matrix; entries above the diagonal are implicit zeros."""

    __slots__ = ("_rows", "_field")

    def __init__(self, rows: Sequence[Sequence], field: Optional[ScalarField] = None):
        rows = [list(r) for r in rows]
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise ValueError(f"row {i} must have {i + 1} entries, got {len(row)}")
        fld = _entries_field(rows, field)
        self._rows = tuple(tuple(fld.coerce(v) for v in row) for row in rows)
        self._field = fld

    @classmethod
    def identity(cls, n: int, field: ScalarField = RATIONAL_FIELD) -> "LowerTriMatrix":
        return cls([[0] * i + [1] for i in range(n)], field)

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def field(self) -> ScalarField:
        return self._field

    @property
    def rows(self) -> tuple:
        return self._rows

    def entry(self, i: int, j: int) -> Scalar:
        if j > i:
            return self._field.zero
        return self._rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(not v for row in self._rows for v in row)

    @property
    def has_zero_diagonal(self) -> bool:
        return all(not row[i] for i, row in enumerate(self._rows))

    def scale(self, value) -> "LowerTriMatrix":
        return LowerTriMatrix([[v * value for v in row] for row in self._rows])

    def __add__(self, other):
        if not isinstance(other, LowerTriMatrix) or other.size != self.size:
            return NotImplemented
        return LowerTriMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __matmul__(self, other):
        return matmul(self, other)

    def transpose(self) -> "SquareMatrix":
        n = self.size
        return SquareMatrix(
            [[self.entry(j, i) for j in range(n)] for i in range(n)], self._field
        )

    def to_square(self) -> "SquareMatrix":
        n = self.size
        return SquareMatrix(
            [[self.entry(i, j) for j in range(n)] for i in range(n)], self._field
        )

    def __eq__(self, other):
        if isinstance(other, (LowerTriMatrix, SquareMatrix)):
            return _same_entries(self, other)
        return NotImplemented

    def __hash__(self):
        return _entries_hash(self)

    def __repr__(self):
        return f"<LowerTriMatrix {self.size}x{self.size} over {self._field.name}>"


class SquareMatrix:
    """Dense square matrix over an exact scalar field."""

    __slots__ = ("_rows", "_field")

    def __init__(self, rows: Sequence[Sequence], field: Optional[ScalarField] = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} must have {n} entries, got {len(row)}")
        fld = _entries_field(rows, field)
        self._rows = tuple(tuple(fld.coerce(v) for v in row) for row in rows)
        self._field = fld

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def field(self) -> ScalarField:
        return self._field

    @property
    def rows(self) -> tuple:
        return self._rows

    def entry(self, i: int, j: int) -> Scalar:
        return self._rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(not v for row in self._rows for v in row)

    def transpose(self) -> "SquareMatrix":
        n = self.size
        return SquareMatrix(
            [[self._rows[j][i] for j in range(n)] for i in range(n)], self._field
        )

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other):
        if isinstance(other, (LowerTriMatrix, SquareMatrix)):
            return _same_entries(self, other)
        return NotImplemented

    def __hash__(self):
        return _entries_hash(self)

    def __repr__(self):
        return f"<SquareMatrix {self.size}x{self.size} over {self._field.name}>"


def _same_entries(a, b) -> bool:
    if a.size != b.size:
        return False
    n = a.size
    return all(a.entry(i, j) == b.entry(i, j) for i in range(n) for j in range(n))


def _entries_hash(a) -> int:
    # hashed over the dense grid so triangular and square forms with equal
    # entries hash alike, matching __eq__ across the two classes
    n = a.size
    return hash(tuple(tuple(a.entry(i, j) for j in range(n)) for i in range(n)))


def matmul(a, b):
    """Exact matrix product; triangular times triangular stays triangular."""
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    n = a.size
    zero = a.field.join(b.field).zero
    if isinstance(a, LowerTriMatrix) and isinstance(b, LowerTriMatrix):
        rows = []
        for i in range(n):
            arow = a.rows[i]
            out = []
            for j in range(i + 1):
                acc = zero
                for k in range(j, i + 1):
                    av = arow[k]
                    if not av:
                        continue
                    bv = b.rows[k][j]
                    if bv:
                        acc = acc + av * bv
                out.append(acc)
            rows.append(out)
        return LowerTriMatrix(rows)
    rows = []
    for i in range(n):
        out = []
        for j in range(n):
            acc = zero
            for k in range(n):
                av = a.entry(i, k)
                if not av:
                    continue
                bv = b.entry(k, j)
                if bv:
                    acc = acc + av * bv
            out.append(acc)
        rows.append(out)
    return SquareMatrix(rows)


def transpose(matrix):
    return matrix.transpose()


# ---------------------------------------------------------------------------
# the matrices themselves
# ---------------------------------------------------------------------------


def k_matrix(seq: AdmissibleSequence, n: int) -> LowerTriMatrix:
    """The subdiagonal generator: entry (j+1, j) is the integer (j+1)_psi.

    Strictly lower-triangular, hence nilpotent with K^n = 0 at size n.
    """
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    rows = []
    for i in range(n):
        row = [seq.field.zero] * (i + 1)
        if i >= 1:
            row[i - 1] = seq.integer(i)
        rows.append(row)
    return LowerTriMatrix(rows, seq.field)


def psi_exp_nilpotent(seq: AdmissibleSequence, matrix: LowerTriMatrix, x) -> LowerTriMatrix:
    """Generalized exponential sum_k x^k M^k / k_psi! of a nilpotent matrix.

    Requires a strictly lower-triangular argument so the series terminates.
    """
    if not isinstance(matrix, LowerTriMatrix) or not matrix.has_zero_diagonal:
        raise ValueError("generalized exponential needs a strictly lower-triangular matrix")
    n = matrix.size
    acc = LowerTriMatrix.identity(n, seq.field)
    power = LowerTriMatrix.identity(n, matrix.field)
    x_power = x ** 0
    for k in range(1, n):
        power = matmul(power, matrix)
        if power.is_zero:
            break
        x_power = x_power * x
        acc = acc + power.scale(x_power / seq.factorial(k))
    return acc


def pascal_closed(seq: AdmissibleSequence, n: int, x) -> LowerTriMatrix:
    """The Pascal-type matrix in closed form: entry (i, j) = x^(i-j) binomial(i, j)."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    x_powers = [x ** 0]
    for _ in range(n - 1):
        x_powers.append(x_powers[-1] * x)
    rows = []
    for i in range(n):
        rows.append([seq.binomial(i, j) * x_powers[i - j] for j in range(i + 1)])
    return LowerTriMatrix(rows)


def fermat(seq: AdmissibleSequence, n: int) -> SquareMatrix:
    """The symmetric binomial matrix: entry (i, j) = binomial(i + j, i)."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    return SquareMatrix(
        [[seq.binomial(i + j, i) for j in range(n)] for i in range(n)], seq.field
    )


# ---------------------------------------------------------------------------
# moment matrices: the closure of the Pascal family under products
# ---------------------------------------------------------------------------


def binom_convolve(seq: AdmissibleSequence, a: Sequence, b: Sequence) -> tuple:
    """Binomial convolution of two moment lists: c_m = sum_t binomial(m,t) a_t b_(m-t)."""
    if len(a) != len(b):
        raise ValueError(f"moment lists differ in length: {len(a)} vs {len(b)}")
    out = []
    for m in range(len(a)):
        total = seq.field.zero
        for t in range(m + 1):
            total = total + seq.binomial(m, t) * a[t] * b[m - t]
        out.append(total)
    return tuple(out)


class GeneralizedPascal:
    """Moment matrix: entry (i, j) = binomial(i, j) * a_(i-j), with a_0 = 1.

    Products of Pascal-type matrices P[x] leave the one-parameter family for
    sequences that are not normal; moment matrices are the closed algebra
    containing them.  The product law is binomial convolution of moments,
    commutative with identity (1, 0, 0, ...) and with triangular-solve
    inverses, so these matrices form an abelian group.
    """

    __slots__ = ("seq", "moments")

    def __init__(self, seq: AdmissibleSequence, moments: Sequence):
        values = tuple(seq.field.coerce(m) for m in moments)
        if not values:
            raise ValueError("at least one moment is required")
        if values[0] != 1:
            raise ValueError("the leading moment must be 1")
        self.seq = seq
        self.moments = values

    @classmethod
    def from_scalar_powers(cls, seq: AdmissibleSequence, x, n: int) -> "GeneralizedPascal":
        """The moment matrix of P[x]: moments 1, x, x^2, ..., x^(n-1)."""
        powers = [x ** 0]
        for _ in range(n - 1):
            powers.append(powers[-1] * x)
        return cls(seq, powers)

    def matrix(self) -> LowerTriMatrix:
        n = len(self.moments)
        rows = []
        for i in range(n):
            rows.append([self.seq.binomial(i, j) * self.moments[i - j] for j in range(i + 1)])
        return LowerTriMatrix(rows)

    def product(self, other: "GeneralizedPascal") -> "GeneralizedPascal":
        if self.seq.selector != other.seq.selector:
            raise ValueError("moment matrices over different sequences cannot be multiplied")
        return GeneralizedPascal(self.seq, binom_convolve(self.seq, self.moments, other.moments))

    def inverse(self) -> "GeneralizedPascal":
        """Moments of the inverse matrix, by triangular solve against (1, 0, 0, ...)."""
        inv = [self.seq.field.one]
        for m in range(1, len(self.moments)):
            acc = self.seq.field.zero
            for t in range(m):
                acc = acc + self.seq.binomial(m, t) * self.moments[m - t] * inv[t]
            inv.append(-acc)
        return GeneralizedPascal(self.seq, inv)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedPascal):
            return NotImplemented
        return self.seq.selector == other.seq.selector and self.moments == other.moments

    def __repr__(self):
        shown = ", ".join(scalar_to_string(m) for m in self.moments[:4])
        return f"<GeneralizedPascal {self.seq.selector!r} moments ({shown}, ...)>"


# ---------------------------------------------------------------------------
# matrix-level identity checks
# ---------------------------------------------------------------------------


def check_exp_vs_closed(seq: AdmissibleSequence, n: int, x) -> IdentityReport:
    """The nilpotent exponential of the generator must equal the closed form."""
    params = {"sequence": seq.selector, "n": str(n), "x": scalar_to_string(x)}
    series = psi_exp_nilpotent(seq, k_matrix(seq, n), x)
    closed = pascal_closed(seq, n, x)
    for i in range(n):
        for j in range(i + 1):
            lhs, rhs = series.entry(i, j), closed.entry(i, j)
            if lhs != rhs:
                return failing(
                    "exp-vs-closed", params, (i, j), scalar_to_string(lhs), scalar_to_string(rhs)
                )
    return passing("exp-vs-closed", params)


def check_nilpotency(seq: AdmissibleSequence, n: int) -> IdentityReport:
    """K^n = 0 while K^(n-1) != 0 at size n: nilpotency of exact index."""
    params = {"sequence": seq.selector, "n": str(n)}
    power = LowerTriMatrix.identity(n, seq.field)
    matrix = k_matrix(seq, n)
    for _ in range(n - 1):
        power = matmul(power, matrix)
    if power.is_zero:
        return failing("nilpotent", params, (n - 1,), "0", "nonzero", detail=f"K^{n - 1} vanished")
    power = matmul(power, matrix)
    for i in range(n):
        for j in range(i + 1):
            value = power.entry(i, j)
            if value:
                return failing(
                    "nilpotent", params, (n, i, j), scalar_to_string(value), "0",
                    detail=f"K^{n} has a nonzero entry",
                )
    return passing("nilpotent", params)


def _check_product(seq, n, x, y, identity: str, params: dict) -> IdentityReport:
    product = matmul(pascal_closed(seq, n, x), pascal_closed(seq, n, y))
    sum_powers = [psi_plus_power(seq, x, y, d) for d in range(n)]
    for i in range(n):
        for j in range(i + 1):
            expected = seq.binomial(i, j) * sum_powers[i - j]
            actual = product.entry(i, j)
            if actual != expected:
                return failing(
                    identity, params, (i, j), scalar_to_string(actual), scalar_to_string(expected)
                )
    return passing(identity, params)


def check_semigroup(seq: AdmissibleSequence, n: int, x, y) -> IdentityReport:
    """P[x] P[y] has entries binomial(i, j) (x +psi y)^(i-j): the product law."""
    params = {
        "sequence": seq.selector,
        "n": str(n),
        "x": scalar_to_string(x),
        "y": scalar_to_string(y),
    }
    return _check_product(seq, n, x, y, "semigroup", params)


def check_product_identity(seq: AdmissibleSequence, n: int, variant: str) -> IdentityReport:
    """The product law at x = y = 1 ("eq4") or x = 1, y = -1 ("eq5").

    The second variant compares against the alternating expansion produced by
    the actual matrix product, whose sign pattern is (-1)^(k-j) within
    column j.
    """
    if variant not in ("eq4", "eq5"):
        raise ValueError(f"variant must be 'eq4' or 'eq5', got {variant!r}")
    y = 1 if variant == "eq4" else -1
    params = {"sequence": seq.selector, "n": str(n)}
    return _check_product(seq, n, seq.field.one, seq.field.coerce(y), variant, params)


def check_transpose_fermat(seq: AdmissibleSequence, n: int) -> IdentityReport:
    """Compare P[1] P[1]^T with the symmetric binomial matrix, entry by entry.

    This is the unweighted convolution sum_k binomial(i,k) binomial(j,k)
    against binomial(i+j, i).  It holds for the classical sequence (plain
    Vandermonde) and fails otherwise; the weighted identities eq9/eq10 are
    the corrected forms for the q case.
    """
    params = {"sequence": seq.selector, "n": str(n)}
    p1 = pascal_closed(seq, n, seq.field.one)
    product = matmul(p1, p1.transpose())
    expected = fermat(seq, n)
    for i in range(n):
        for j in range(n):
            lhs, rhs = product.entry(i, j), expected.entry(i, j)
            if lhs != rhs:
                return failing("eq6", params, (i, j), scalar_to_string(lhs), scalar_to_string(rhs))
    return passing("eq6", params)


def _require_q(seq: AdmissibleSequence, identity: str):
    if seq.q_scalar is None:
        raise ValueError(f"{identity} needs a q-analog sequence, got {seq.selector!r}")
    return seq.q_scalar


def check_weighted_cauchy(seq: AdmissibleSequence, i: int, j: int) -> IdentityReport:
    """Weighted symmetric Cauchy identity for q-binomials:

    sum_k q^((i-k)(j-k)) binomial(i,k) binomial(j,k) = binomial(i+j, j).
    """
    base = _require_q(seq, "eq10")
    params = {"sequence": seq.selector, "i": str(i), "j": str(j)}
    lhs = seq.field.zero
    for k in range(min(i, j) + 1):
        lhs = lhs + (base ** ((i - k) * (j - k))) * seq.binomial(i, k) * seq.binomial(j, k)
    rhs = seq.binomial(i + j, j)
    if lhs != rhs:
        return failing("eq10", params, (i, j), scalar_to_string(lhs), scalar_to_string(rhs))
    return passing("eq10", params)


def check_cauchy_vandermonde(seq: AdmissibleSequence, r: int, s: int, j: int) -> IdentityReport:
    """Weighted Vandermonde convolution for q-binomials:

    sum_k q^((r-k)(j-k)) binomial(r,k) binomial(s,j-k) = binomial(r+s, j).
    """
    base = _require_q(seq, "eq9")
    params = {"sequence": seq.selector, "r": str(r), "s": str(s), "j": str(j)}
    lhs = seq.field.zero
    for k in range(max(0, j - s), min(r, j) + 1):
        lhs = lhs + (base ** ((r - k) * (j - k))) * seq.binomial(r, k) * seq.binomial(s, j - k)
    rhs = seq.binomial(r + s, j)
    if lhs != rhs:
        return failing("eq9", params, (r, s, j), scalar_to_string(lhs), scalar_to_string(rhs))
    return passing("eq9", params)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_JSON_KEYS = ("kind", "sequence", "size", "x", "entries")


@dataclass(frozen=True)
class MatrixDocument:
    """Serializable snapshot of a generated matrix.

    Entries are canonical scalar strings; triangular matrices keep their
    ragged row shape, dense matrices are full.  The JSON form round-trips
    byte for byte.
    """

    kind: str
    sequence: str
    size: int
    x: Optional[str]
    entries: tuple[tuple[str, ...], ...]

    def to_json(self) -> str:
        obj = {
            "kind": self.kind,
            "sequence": self.sequence,
            "size": self.size,
            "x": self.x,
            "entries": [list(row) for row in self.entries],
        }
        return json.dumps(obj, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "MatrixDocument":
        obj = json.loads(text)
        if not isinstance(obj, dict) or set(obj) != set(_JSON_KEYS):
            raise ValueError(f"matrix document needs exactly the keys {_JSON_KEYS}")
        entries = tuple(tuple(str(v) for v in row) for row in obj["entries"])
        return cls(obj["kind"], obj["sequence"], int(obj["size"]), obj["x"], entries)

    def to_csv(self) -> str:
        return "\n".join(",".join(row) for row in self.entries)

    def to_text(self) -> str:
        return "\n".join(" ".join(row) for row in self.entries)


def matrix_document(kind: str, seq: AdmissibleSequence, matrix, x=None) -> MatrixDocument:
    entries = tuple(tuple(scalar_to_string(v) for v in row) for row in matrix.rows)
    return MatrixDocument(
        kind=kind,
        sequence=seq.selector,
        size=matrix.size,
        x=None if x is None else scalar_to_string(x),
        entries=entries,
    )


def matrix_to_latex(matrix) -> str:
    """Bracketed array form; triangular matrices are padded with zeros."""
    n = matrix.size
    lines = [f"\\left[\\begin{{array}}{{{'c' * n}}}"]
    for i in range(n):
        cells = [scalar_to_latex(matrix.entry(i, j)) for j in range(n)]
        lines.append(" & ".join(cells) + r" \\")
    lines.append("\\end{array}\\right]")
    return "\n".join(lines)
