"""
Hermitian matrices over O and O_p with exact entries in K.

A LocalHermitian carries its entries as FieldElements that are integral at
p.  Matrices coming from a semi-integral global T are stored in the scaled
form p^{e_p} T, which lies in \\tilde Her_m(O_p).  A GlobalHermitian keeps
integral diagonal entries and off-diagonal numerators z with entry
z / sqrt(-D).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from exact_algebra.quadext import as_fraction
from hermitian_periods.exceptions import InvalidInput
from quadratic_symbols.fields import FieldData, FieldElement


# -- matrices over K ----------------------------------------------------------

def identity(field: FieldData, m: int):
    return [[field.element(1 if i == j else 0) for j in range(m)] for i in range(m)]


def zeros(field: FieldData, rows: int, cols: int):
    return [[field.element(0) for _ in range(cols)] for _ in range(rows)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            total = A[i][0] * B[0][j]
            for k in range(1, inner):
                total = total + A[i][k] * B[k][j]
            row.append(total)
        out.append(row)
    return out


def conj_transpose(A):
    return [[A[i][j].conj() for i in range(len(A))] for j in range(len(A[0]))]


def det(A) -> FieldElement:
    """Determinant over K by Gaussian elimination."""
    m = len(A)
    if m == 0:
        raise InvalidInput("determinant of an empty matrix")
    work = [list(row) for row in A]
    field = work[0][0].field
    result = field.element(1)
    for col in range(m):
        pivot = next((r for r in range(col, m) if not work[r][col].is_zero()), None)
        if pivot is None:
            return field.element(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        result = result * work[col][col]
        inv = work[col][col].inverse()
        for r in range(col + 1, m):
            factor = work[r][col] * inv
            if factor.is_zero():
                continue
            work[r] = [work[r][k] - factor * work[col][k] for k in range(m)]
    return result


def inverse(A):
    """Inverse over K by Gauss-Jordan elimination."""
    m = len(A)
    field = A[0][0].field
    work = [list(A[i]) + identity(field, m)[i] for i in range(m)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if not work[r][col].is_zero()), None)
        if pivot is None:
            raise InvalidInput("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for r in range(m):
            if r != col and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [work[r][k] - factor * work[col][k] for k in range(2 * m)]
    return [row[m:] for row in work]


def as_matrix(field: FieldData, rows):
    """Nested rows of FieldElement, rationals, or (a, b) pairs meaning a + b w."""
    out = []
    for row in rows:
        converted = []
        for x in row:
            if isinstance(x, FieldElement):
                converted.append(x)
            elif isinstance(x, (tuple, list)):
                converted.append(field.element(x[0], x[1]))
            else:
                converted.append(field.element(x))
        out.append(converted)
    return out


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# -- local matrices -----------------------------------------------------------

class LocalHermitian:
    __slots__ = ('ctx', 'entries')

    def __init__(self, ctx, entries):
        entries = as_matrix(ctx.field, entries)
        m = len(entries)
        if m == 0 or any(len(row) != m for row in entries):
            raise InvalidInput("a Hermitian matrix must be square and non-empty")
        for i in range(m):
            if not entries[i][i].is_rational():
                raise InvalidInput(f"diagonal entry {entries[i][i]} is not rational")
            for j in range(i + 1, m):
                if entries[j][i] != entries[i][j].conj():
                    raise InvalidInput(f"entries ({i},{j}) and ({j},{i}) are not conjugate")
        for row in entries:
            for x in row:
                if not ctx.is_integral(x):
                    raise InvalidInput(f"entry {x} is not integral at p={ctx.p}")
        self.ctx = ctx
        self.entries = tuple(tuple(row) for row in entries)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def diagonal(cls, ctx, values) -> 'LocalHermitian':
        m = len(values)
        return cls(ctx, [[values[i] if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def identity(cls, ctx, m: int) -> 'LocalHermitian':
        return cls.diagonal(ctx, [1] * m)

    @classmethod
    def theta(cls, ctx, r: int, scale: int = 0) -> 'LocalHermitian':
        """p^scale Theta_r: r/2 hyperbolic blocks with off-diagonal varpi^{i_p}."""
        if not ctx.is_ramified:
            raise InvalidInput("Theta_r is defined at ramified primes")
        if r % 2:
            raise InvalidInput(f"Theta_r needs an even r, got {r}")
        corner = ctx.prime_element ** ctx.i_p * (ctx.p ** scale)
        blocks = [cls(ctx, [[0, corner], [corner.conj(), 0]]) for _ in range(r // 2)]
        return cls.direct_sum(blocks)

    @classmethod
    def from_components(cls, ctx, first):
        """The split matrix whose first component is the integer matrix ``first``."""
        if not ctx.is_split:
            raise InvalidInput("component matrices exist at split primes only")
        modulus = ctx.p ** ctx.precision
        t, r = ctx.field.t, ctx.root
        inv = pow((2 * r - t) % modulus, -1, modulus)
        m = len(first)
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                c1, c2 = int(first[i][j]) % modulus, int(first[j][i]) % modulus
                b = (c1 - c2) * inv % modulus
                a = (c1 - b * r) % modulus
                if i == j:
                    row.append(ctx.field.element(_balanced(c1, modulus)))
                else:
                    row.append(ctx.field.element(_balanced(a, modulus), _balanced(b, modulus)))
            rows.append(row)
        # re-impose exact conjugate symmetry on the balanced representatives
        for i in range(m):
            for j in range(i):
                rows[i][j] = rows[j][i].conj()
        return cls(ctx, rows)

    @staticmethod
    def direct_sum(blocks) -> 'LocalHermitian':
        blocks = list(blocks)
        if not blocks:
            raise InvalidInput("direct sum of no blocks")
        ctx = blocks[0].ctx
        m = sum(b.m for b in blocks)
        rows = zeros(ctx.field, m, m)
        offset = 0
        for block in blocks:
            for i in range(block.m):
                for j in range(block.m):
                    rows[offset + i][offset + j] = block.entries[i][j]
            offset += block.m
        return LocalHermitian(ctx, rows)

    def perp(self, other: 'LocalHermitian') -> 'LocalHermitian':
        return LocalHermitian.direct_sum([self, other])

    # -- basic data -----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def field(self):
        return self.ctx.field

    def rows(self):
        return [list(row) for row in self.entries]

    def det(self) -> Fraction:
        value = det(self.rows())
        return value.a

    def ord_det(self):
        return self.ctx.ord(self.det())

    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def gamma(self) -> Fraction:
        return gamma_invariant(self)

    def scaled(self, factor) -> 'LocalHermitian':
        factor = as_fraction(factor)
        return LocalHermitian(self.ctx, [[x * factor for x in row] for row in self.entries])

    def transform(self, X) -> 'LocalHermitian':
        """T[X] = X* T X for an m x l matrix X over O_p."""
        X = as_matrix(self.field, X)
        return LocalHermitian(self.ctx, mat_mul(conj_transpose(X), mat_mul(self.rows(), X)))

    def inverse_transform(self, W) -> 'LocalHermitian':
        """T[W^{-1}], which may fail to be integral (InvalidInput)."""
        return self.transform(inverse(as_matrix(self.field, W)))

    def try_inverse_transform(self, W):
        """T[W^{-1}] or None when it is not integral at p."""
        Winv = inverse(as_matrix(self.field, W))
        rows = mat_mul(conj_transpose(Winv), mat_mul(self.rows(), Winv))
        if all(self.ctx.is_integral(x) for row in rows for x in row):
            return LocalHermitian(self.ctx, rows)
        return None

    def inverse_rows(self):
        return inverse(self.rows())

    # -- membership -----------------------------------------------------------

    def in_tilde_her(self, level: int = 0) -> bool:
        """Whether T lies in p^level \\tilde Her_m(O_p)."""
        bound = level + self.ctx.e
        ctx = self.ctx
        for i in range(self.m):
            if ctx.ord(self.entries[i][i].a) < bound:
                return False
            for j in range(i + 1, self.m):
                z = ctx.phi(self.entries[i][j])
                if min(ctx.ord(z.a), ctx.ord(z.b)) < bound:
                    return False
        return True

    def in_her(self, level: int = 0) -> bool:
        ctx = self.ctx
        return all(min(ctx.ord(x.a), ctx.ord(x.b)) >= level for row in self.entries for x in row)

    def tilde_exponent(self) -> int:
        """The least e' with p^{e'} T^{-1} in \\tilde Her_m(O_p)."""
        inv = self.inverse_rows()
        ctx = self.ctx
        need = 0
        for i in range(self.m):
            need = max(need, ctx.e - ctx.ord(inv[i][i].a))
            for j in range(i + 1, self.m):
                z = ctx.phi(inv[i][j])
                if not z.is_zero():
                    need = max(need, ctx.e - min(ctx.ord(z.a), ctx.ord(z.b)))
        return int(need)

    # -- split components -----------------------------------------------------

    def component_matrix(self):
        """First component T_1 as integers mod p^precision (split primes)."""
        if not self.ctx.is_split:
            raise InvalidInput("component matrices exist at split primes only")
        return [[self.ctx.components(x)[0][0] for x in row] for row in self.entries]

    # -- reductions -----------------------------------------------------------

    def reduce(self, level: int):
        """Coordinate arrays (a, b), each m x m int64, of T mod p^level."""
        a = np.zeros((self.m, self.m), dtype=np.int64)
        b = np.zeros((self.m, self.m), dtype=np.int64)
        for i in range(self.m):
            for j in range(self.m):
                a[i, j], b[i, j] = self.ctx.reduce(self.entries[i][j], level)
        return a, b

    # -- comparison and output ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LocalHermitian):
            return NotImplemented
        return self.ctx.label == other.ctx.label and self.entries == other.entries

    def __hash__(self):
        return hash((self.ctx.label, self.entries))

    def to_dict(self) -> dict:
        """JSON form: off-diagonal pairs [a, b] stand for (a + b w) / sqrt(-D)."""
        off = []
        for i in range(self.m):
            for j in range(i + 1, self.m):
                z = self.ctx.phi(self.entries[i][j])
                off.append([_fraction_text(z.a), _fraction_text(z.b)])
        return {
            'm': self.m,
            'diag': [_fraction_text(self.entries[i][i].a) for i in range(self.m)],
            'off': off,
            'D': self.ctx.D,
            'p': self.ctx.p,
        }

    @classmethod
    def from_dict(cls, ctx, data) -> 'LocalHermitian':
        m = int(data['m'])
        diag = [as_fraction(x) for x in data['diag']]
        off = data.get('off', [])
        if len(diag) != m or len(off) != m * (m - 1) // 2:
            raise InvalidInput(f"matrix data does not describe a {m}x{m} Hermitian matrix")
        rows = zeros(ctx.field, m, m)
        k = 0
        sqrt_minus_D = ctx.field.sqrt_minus_D
        for i in range(m):
            rows[i][i] = ctx.field.element(diag[i])
            for j in range(i + 1, m):
                z = ctx.field.element(as_fraction(off[k][0]), as_fraction(off[k][1]))
                rows[i][j] = z / sqrt_minus_D
                rows[j][i] = rows[i][j].conj()
                k += 1
        return cls(ctx, rows)

    def __str__(self):
        return '[' + '; '.join(', '.join(str(x) for x in row) for row in self.entries) + ']'

    def __repr__(self):
        return f"LocalHermitian({self.ctx.label}, {self})"


def _balanced(value: int, modulus: int) -> int:
    return value - modulus if value > modulus // 2 else value


# -- global matrices ----------------------------------------------------------

class GlobalHermitian:
    """Semi-integral Hermitian matrix over O: integer diagonal, off-diagonal z/sqrt(-D) with z in O."""

    __slots__ = ('field', 'diag', 'off')

    def __init__(self, field: FieldData, diag, off=()):
        diag = tuple(int(d) for d in diag)
        m = len(diag)
        off = tuple(
            z if isinstance(z, FieldElement) else field.element(z[0], z[1])
            for z in off
        )
        if len(off) != m * (m - 1) // 2:
            raise InvalidInput(f"{m}x{m} matrix needs {m * (m - 1) // 2} off-diagonal entries")
        for z in off:
            if not z.is_integral():
                raise InvalidInput(f"off-diagonal numerator {z} is not in O")
        self.field = field
        self.diag = diag
        self.off = off

    @classmethod
    def from_entries(cls, field: FieldData, rows) -> 'GlobalHermitian':
        rows = as_matrix(field, rows)
        m = len(rows)
        off = []
        for i in range(m):
            for j in range(i + 1, m):
                off.append(rows[i][j] * field.sqrt_minus_D)
        return cls(field, [rows[i][i].a for i in range(m)], off)

    @classmethod
    def identity(cls, field: FieldData, m: int) -> 'GlobalHermitian':
        return cls(field, [1] * m, [field.element(0)] * (m * (m - 1) // 2))

    @property
    def m(self) -> int:
        return len(self.diag)

    def entries(self):
        m = self.m
        rows = zeros(self.field, m, m)
        k = 0
        for i in range(m):
            rows[i][i] = self.field.element(self.diag[i])
            for j in range(i + 1, m):
                rows[i][j] = self.off[k] / self.field.sqrt_minus_D
                rows[j][i] = rows[i][j].conj()
                k += 1
        return rows

    def det(self) -> Fraction:
        return det(self.entries()).a

    def gamma(self) -> Fraction:
        return gamma_invariant(self)

    def is_integral(self) -> bool:
        return all(x.is_integral() for row in self.entries() for x in row)

    def is_positive_definite(self) -> bool:
        rows = self.entries()
        for k in range(1, self.m + 1):
            if det([row[:k] for row in rows[:k]]).a <= 0:
                return False
        return True

    def numeric(self) -> np.ndarray:
        return np.array([[_to_complex(x) for x in row] for row in self.entries()], dtype=complex)

    def local(self, ctx, scaled: bool = True) -> LocalHermitian:
        """p^{e_p} T in \\tilde Her_m(O_p), or T itself with ``scaled=False``."""
        rows = self.entries()
        if scaled and ctx.e:
            rows = [[x * ctx.p ** ctx.e for x in row] for row in rows]
        return LocalHermitian(ctx, rows)

    def transform(self, X) -> 'GlobalHermitian':
        X = as_matrix(self.field, X)
        return GlobalHermitian.from_entries(self.field, mat_mul(conj_transpose(X), mat_mul(self.entries(), X)))

    def key(self):
        return (self.diag, tuple((z.a, z.b) for z in self.off))

    def __eq__(self, other):
        if not isinstance(other, GlobalHermitian):
            return NotImplemented
        return self.field.D == other.field.D and self.key() == other.key()

    def __hash__(self):
        return hash((self.field.D, self.key()))

    def to_dict(self) -> dict:
        return {
            'm': self.m,
            'diag': list(self.diag),
            'off': [[_fraction_text(z.a), _fraction_text(z.b)] for z in self.off],
            'D': self.field.D,
        }

    @classmethod
    def from_dict(cls, field: FieldData, data) -> 'GlobalHermitian':
        diag = data['diag']
        off = [(as_fraction(a), as_fraction(b)) for a, b in data.get('off', [])]
        if int(data.get('m', len(diag))) != len(diag):
            raise InvalidInput("m does not match the diagonal length")
        return cls(field, diag, off)

    def __repr__(self):
        return f"GlobalHermitian(D={self.field.D}, diag={list(self.diag)}, off={[str(z) for z in self.off]})"


def _to_complex(x: FieldElement) -> complex:
    field = x.field
    # w = (t + sqrt(-D)) / 2
    w = complex(field.t / 2, (field.D ** 0.5) / 2)
    return float(x.a) + float(x.b) * w


def gamma_invariant(B, field: FieldData | None = None) -> Fraction:
    """gamma(B) = (-D)^{[m/2]} det B."""
    field = field or B.field
    value = B.det()
    if value == 0:
        raise InvalidInput("gamma of a degenerate matrix")
    return Fraction(-field.D) ** (B.m // 2) * value
