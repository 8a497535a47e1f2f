"""Exact dense linear algebra over Q or F_p.

Row-vector convention throughout: vectors are rows and linear maps act on the
right, v |-> v.M, so composition of maps reads left to right, matching path
composition in the algebra layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec


class LinalgError(ValueError):
    pass


class Matrix:
    """Immutable-by-convention dense matrix over a FieldSpec."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, rows, nrows: int | None = None, ncols: int | None = None):
        self.field = field
        data = [list(r) for r in rows]
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise LinalgError("ragged or mismatched matrix data")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = data

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_int_rows(cls, field: FieldSpec, rows) -> "Matrix":
        return cls(field, [[field.from_int(x) for x in r] for r in rows])

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Hashable canonical form (entries are already canonical per field)."""
        return (self.nrows, self.ncols, tuple(tuple(r) for r in self.rows))

    def is_zero(self) -> bool:
        zero = self.field.zero()
        return all(x == zero for r in self.rows for x in r)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ncols,
            self.nrows,
        )

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        f = self.field
        out = Matrix.zeros(f, self.nrows, other.ncols)
        for i in range(self.nrows):
            ri = self.rows[i]
            oi = out.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if a == 0:
                    continue
                rk = other.rows[k]
                for j in range(other.ncols):
                    b = rk[j]
                    if b != 0:
                        oi[j] = f.add(oi[j], f.mul(a, b))
        return out

    def add(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinalgError("shape mismatch in add")
        f = self.field
        return Matrix(
            f,
            [[f.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.nrows,
            self.ncols,
        )

    def sub(self, other: "Matrix") -> "Matrix":
        return self.add(other.scale(self.field.neg(self.field.one())))

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(c, x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def row(self, i) -> list:
        return list(self.rows[i])

    def det(self):
        if self.nrows != self.ncols:
            raise LinalgError("determinant of non-square matrix")
        f = self.field
        n = self.nrows
        work = [list(r) for r in self.rows]
        det = f.one()
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col] != 0), None)
            if piv is None:
                return f.zero()
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                det = f.neg(det)
            det = f.mul(det, work[col][col])
            inv = f.inv(work[col][col])
            for r in range(col + 1, n):
                factor = f.mul(work[r][col], inv)
                if factor == 0:
                    continue
                for c in range(col, n):
                    work[r][c] = f.sub(work[r][c], f.mul(factor, work[col][c]))
        return det

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.nrows != b.nrows:
        raise LinalgError("hstack row mismatch")
    return Matrix(a.field, [ra + rb for ra, rb in zip(a.rows, b.rows)], a.nrows, a.ncols + b.ncols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.ncols:
        raise LinalgError("vstack column mismatch")
    return Matrix(a.field, a.rows + b.rows, a.nrows + b.nrows, a.ncols)


def block_diag(field: FieldSpec, blocks: list[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = Matrix.zeros(field, nr, nc)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            out.rows[r0 + i][c0 : c0 + b.ncols] = list(b.rows[i])
        r0 += b.nrows
        c0 += b.ncols
    return out


def rref(m: Matrix, with_transform: bool = False):
    """Reduced row echelon form.

    Returns (R, pivots) or (R, pivots, U) with U.m = R and U invertible.
    """
    f = m.field
    work = [list(r) for r in m.rows]
    trans = [[f.one() if i == j else f.zero() for j in range(m.nrows)] for i in range(m.nrows)] if with_transform else None
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if work[i][col] != 0), None)
        if piv is None:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
            if trans is not None:
                trans[r], trans[piv] = trans[piv], trans[r]
        inv = f.inv(work[r][col])
        if work[r][col] != f.one():
            work[r] = [f.mul(inv, x) for x in work[r]]
            if trans is not None:
                trans[r] = [f.mul(inv, x) for x in trans[r]]
        for i in range(m.nrows):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(work[i], work[r])]
                if trans is not None:
                    trans[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(trans[i], trans[r])]
        pivots.append(col)
        r += 1
        if r == m.nrows:
            break
    R = Matrix(f, work, m.nrows, m.ncols)
    if with_transform:
        return R, pivots, Matrix(f, trans, m.nrows, m.nrows)
    return R, pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of the row space K^ambient, stored by its canonical
    reduced-echelon basis (pivot columns strictly increasing)."""

    ambient: int
    basis: Matrix  # dim x ambient, RREF rows
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @classmethod
    def from_rows(cls, field: FieldSpec, ambient: int, rows) -> "Subspace":
        rows = [list(r) for r in rows]
        if any(len(r) != ambient for r in rows):
            raise LinalgError("row length != ambient dimension")
        if not rows:
            return cls(ambient, Matrix.zeros(field, 0, ambient), ())
        R, piv = rref(Matrix(field, rows))
        keep = [R.rows[i] for i in range(len(piv))]
        return cls(ambient, Matrix(field, keep, len(piv), ambient), tuple(piv))

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls.from_rows(field, ambient, [])

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls.from_rows(field, ambient, Matrix.identity(field, ambient).rows)

    def reduce_vector(self, vec: list) -> list:
        """Subtract the projection onto this subspace (echelon reduction)."""
        f = self.field
        v = list(vec)
        for i, p in enumerate(self.pivots):
            c = v[p]
            if c != 0:
                row = self.basis.rows[i]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains_vector(self, vec) -> bool:
        zero = self.field.zero()
        return all(x == zero for x in self.reduce_vector(list(vec)))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise LinalgError("ambient mismatch in subspace sum")
        return Subspace.from_rows(self.field, self.ambient, self.basis.rows + other.basis.rows)


def rank_kernel_image(m: Matrix) -> tuple[int, Subspace, Subspace]:
    """Rank, kernel {x : x.m = 0} and image (row space) of m.

    rank + dim(kernel) = nrows; both subspaces come back canonical.
    """
    R, piv, U = rref(m, with_transform=True)
    rank = len(piv)
    image = Subspace(m.ncols, Matrix(m.field, R.rows[:rank], rank, m.ncols), tuple(piv))
    kernel = Subspace.from_rows(m.field, m.nrows, U.rows[rank:])
    return rank, kernel, image


def solve_right(a: Matrix, b: Matrix) -> tuple[Matrix, Subspace] | None:
    """Solve x.a = b.  Returns (particular x, kernel of v |-> v.a) or None.

    The full solution set of each row is (particular row) + kernel.
    """
    if a.ncols != b.ncols:
        raise LinalgError(f"solve_right: a has {a.ncols} columns, b has {b.ncols}")
    f = a.field
    R, piv, U = rref(a, with_transform=True)
    rank = len(piv)
    sol_rows = []
    for r in b.rows:
        residual = list(r)
        coeffs = [f.zero()] * a.nrows
        for i, p in enumerate(piv):
            c = residual[p]
            if c != 0:
                row = R.rows[i]
                residual = [f.sub(x, f.mul(c, y)) for x, y in zip(residual, row)]
                for j in range(a.nrows):
                    coeffs[j] = f.add(coeffs[j], f.mul(c, U.rows[i][j]))
        if any(x != 0 for x in residual):
            return None
        sol_rows.append(coeffs)
    kernel = Subspace.from_rows(f, a.nrows, U.rows[rank:])
    return Matrix(f, sol_rows, b.nrows, a.nrows), kernel


def quotient_with_section(field: FieldSpec, ambient: int, w: Subspace) -> tuple[Matrix, Matrix, int]:
    """Projection/section pair for K^ambient -> K^ambient / w.

    projection: ambient x q with kernel(v |-> v.projection) = w;
    section: q x ambient with section.projection = identity on the quotient.
    """
    if w.ambient != ambient:
        raise LinalgError("subspace does not sit in the requested ambient space")
    free = [c for c in range(ambient) if c not in w.pivots]
    q = len(free)
    proj = Matrix.zeros(field, ambient, q)
    one = field.one()
    for i in range(ambient):
        e = [field.zero()] * ambient
        e[i] = one
        red = w.reduce_vector(e)
        proj.rows[i] = [red[c] for c in free]
    sect = Matrix.zeros(field, q, ambient)
    for j, c in enumerate(free):
        sect.rows[j][c] = one
    return proj, sect, q
