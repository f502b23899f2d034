"""Dense exact linear algebra over QQ or GF(p).

Matrices are immutable row-major grids of field elements; zero-by-n and
n-by-zero matrices are first class and act as the unique empty maps.
Subspaces are stored as reduced-column-echelon bases, so two equal
subspaces have structurally identical representations and ``==`` is a
genuine equality test.
"""

from __future__ import annotations

from .errors import DimensionError, InvariantViolationError
from .fields import same_field


class Matrix:
    """An exact matrix together with its coefficient field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        rows = [tuple(field.coerce(x) for x in row) for row in rows]
        nrows = len(rows)
        if nrows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise DimensionError("ragged rows")
        elif ncols is None:
            ncols = 0
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(rows)

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)]
                           for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return cls(field, [[col[i] for col in cols] for i in range(nrows)],
                   len(cols))

    def columns(self):
        return [tuple(self.rows[i][j] for i in range(self.nrows))
                for j in range(self.ncols)]

    # -- structure ----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in row) for row in self.rows)
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}: [{body}])"

    def entry(self, i, j):
        return self.rows[i][j]

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.rows for x in row)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(
            self.field, self.nrows)

    # -- arithmetic ---------------------------------------------------

    def _check_same_shape(self, other):
        same_field(self.field, other.field)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError(
                f"shape mismatch {self.nrows}x{self.ncols} vs "
                f"{other.nrows}x{other.ncols}")

    def __add__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)],
                      self.ncols)

    def __sub__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)],
                      self.ncols)

    def __neg__(self):
        f = self.field
        return Matrix(f, [[f.neg(a) for a in row] for row in self.rows],
                      self.ncols)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return Matrix(f, [[f.mul(c, a) for a in row] for row in self.rows],
                      self.ncols)

    def __matmul__(self, other):
        same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionError(
                f"cannot compose {self.nrows}x{self.ncols} with "
                f"{other.nrows}x{other.ncols}")
        f = self.field
        ocols = other.columns()
        out = []
        for row in self.rows:
            out.append([_dot(f, row, col) for col in ocols])
        return Matrix(f, out, other.ncols)

    def apply(self, vec):
        """Matrix times a column vector given as a tuple."""
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        f = self.field
        vec = tuple(f.coerce(x) for x in vec)
        return tuple(_dot(f, row, vec) for row in self.rows)

    def transpose(self):
        return Matrix(self.field, self.columns(), self.nrows)

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionError("trace of a non-square matrix")
        f = self.field
        t = f.zero
        for i in range(self.nrows):
            t = f.add(t, self.rows[i][i])
        return t

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot_columns)."""
        f = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = None
            for i in range(r, self.nrows):
                if not f.is_zero(rows[i][c]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = f.inv(rows[r][c])
            rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(self.nrows):
                if i != r and not f.is_zero(rows[i][c]):
                    factor = rows[i][c]
                    rows[i] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return [tuple(row) for row in rows], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionError("determinant of a non-square matrix")
        f = self.field
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = f.one
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if not f.is_zero(rows[i][c]):
                    pivot_row = i
                    break
            if pivot_row is None:
                return f.zero
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                d = f.neg(d)
            d = f.mul(d, rows[c][c])
            inv = f.inv(rows[c][c])
            for i in range(c + 1, n):
                if not f.is_zero(rows[i][c]):
                    factor = f.mul(rows[i][c], inv)
                    rows[i] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(rows[i], rows[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and not self.field.is_zero(self.det())

    def inverse(self):
        if self.nrows != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix(self.field,
                     [list(self.rows[i]) + list(Matrix.identity(
                         self.field, n).rows[i]) for i in range(n)],
                     2 * n)
        rows, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in rows], n)

    def solve(self, rhs: "Matrix"):
        """One solution X of self @ X = rhs, or None if inconsistent."""
        same_field(self.field, rhs.field)
        if rhs.nrows != self.nrows:
            raise DimensionError("right-hand side has wrong height")
        f = self.field
        k = rhs.ncols
        aug = Matrix(f, [list(self.rows[i]) + list(rhs.rows[i])
                         for i in range(self.nrows)], self.ncols + k)
        rows, pivots = aug.rref()
        main_pivots = [c for c in pivots if c < self.ncols]
        if len(main_pivots) != len(pivots):
            return None  # a pivot landed in the rhs block: inconsistent
        sol = [[f.zero] * k for _ in range(self.ncols)]
        for r, c in enumerate(main_pivots):
            for j in range(k):
                sol[c][j] = rows[r][self.ncols + j]
        return Matrix(f, sol, k)

    def nullspace(self) -> "Subspace":
        """Canonical kernel basis (spec name: kernel_basis)."""
        f = self.field
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        cols = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(rows[r][fc])
            cols.append(tuple(v))
        return Subspace.from_columns(f, self.ncols, cols)

    def column_space(self) -> "Subspace":
        """Canonical image basis (spec name: image_basis)."""
        return Subspace.from_columns(self.field, self.nrows, self.columns())


def _dot(f, xs, ys):
    t = f.zero
    for x, y in zip(xs, ys):
        if not (f.is_zero(x) or f.is_zero(y)):
            t = f.add(t, f.mul(x, y))
    return t


class Subspace:
    """A subspace of K^n held as a reduced-column-echelon basis.

    The canonical form makes equality structural: two subspaces are
    equal iff their ``basis`` matrices are identical.
    """

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, basis: Matrix):
        if basis.nrows != ambient_dim:
            raise DimensionError("basis height differs from ambient dim")
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_columns(cls, field, ambient_dim, cols) -> "Subspace":
        """Canonicalize any spanning set of column vectors."""
        span = Matrix.from_columns(field, list(cols), ambient_dim)
        rows, _ = span.transpose().rref()
        f = field
        kept = [r for r in rows if any(not f.is_zero(x) for x in r)]
        return cls(field, ambient_dim,
                   Matrix.from_columns(field, kept, ambient_dim))

    @classmethod
    def from_matrix_columns(cls, m: Matrix) -> "Subspace":
        return cls.from_columns(m.field, m.nrows, m.columns())

    @classmethod
    def zero(cls, field, ambient_dim) -> "Subspace":
        return cls(field, ambient_dim,
                   Matrix.zeros(field, ambient_dim, 0))

    @classmethod
    def full(cls, field, ambient_dim) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.field == other.field
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return (f"Subspace(dim {self.dim} of K^{self.ambient_dim}, "
                f"basis {self.basis.columns()})")

    def coords_of(self, vec):
        """Coordinates of vec in this basis, or None if outside."""
        col = Matrix.from_columns(self.field, [tuple(vec)], self.ambient_dim)
        sol = self.basis.solve(col)
        return None if sol is None else tuple(
            sol.rows[i][0] for i in range(sol.nrows))

    def contains_vector(self, vec) -> bool:
        return self.coords_of(vec) is not None

    def contains(self, other: "Subspace") -> bool:
        """True iff other is a subspace of self."""
        same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return all(self.contains_vector(c) for c in other.basis.columns())


# -- operations on maps and invariant subspaces -----------------------

def restrict_between(m: Matrix, dom: Subspace, cod: Subspace) -> Matrix:
    """Matrix of m restricted to dom, expressed in cod's basis.

    Requires m(dom) to lie inside cod; otherwise raises
    InvariantViolationError carrying the offending basis vector.
    """
    same_field(m.field, dom.field)
    if m.ncols != dom.ambient_dim or m.nrows != cod.ambient_dim:
        raise DimensionError("map shape incompatible with the subspaces")
    cols = []
    for b in dom.basis.columns():
        image = m.apply(b)
        coords = cod.coords_of(image)
        if coords is None:
            raise InvariantViolationError(
                "image of a basis vector leaves the target subspace",
                witness=b, image=image)
        cols.append(coords)
    return Matrix.from_columns(m.field, cols, cod.dim)


def restrict_to_invariant(t: Matrix, u: Subspace) -> Matrix:
    """Matrix of t on the t-invariant subspace u, in u's basis."""
    if t.nrows != t.ncols:
        raise DimensionError("restriction needs a square matrix")
    return restrict_between(t, u, u)


def _complete_basis(inner: Subspace, outer: Subspace):
    """Columns of outer's basis extending inner to a basis of outer."""
    f = inner.field
    chosen = list(inner.basis.columns())
    complement = []
    for c in outer.basis.columns():
        trial = Matrix.from_columns(f, chosen + [c], inner.ambient_dim)
        if trial.rank() == len(chosen) + 1:
            chosen.append(c)
            complement.append(c)
    if len(chosen) != outer.dim:
        raise DimensionError("inner subspace is not contained in outer")
    return complement


def induced_on_quotient(t: Matrix, u: Subspace, w: Subspace) -> Matrix:
    """Matrix induced by t on w/u for a t-invariant chain u <= w.

    The result is written in a completed basis, so
    trace(t|w) = trace(t|u) + trace(induced) holds exactly.
    """
    if t.nrows != t.ncols:
        raise DimensionError("quotient action needs a square matrix")
    if not w.contains(u):
        raise DimensionError("u is not contained in w")
    restrict_to_invariant(t, u)   # raises with witness if u not invariant
    f = t.field
    complement = _complete_basis(u, w)
    frame_cols = list(u.basis.columns()) + complement
    frame = Matrix.from_columns(f, frame_cols, u.ambient_dim)
    k = u.dim
    out_cols = []
    for c in complement:
        image = Matrix.from_columns(f, [t.apply(c)], t.nrows)
        coords = frame.solve(image)
        if coords is None:
            raise InvariantViolationError(
                "image of a basis vector leaves the larger subspace",
                witness=c, image=tuple(image.rows[i][0]
                                       for i in range(image.nrows)))
        out_cols.append(tuple(coords.rows[i][0]
                              for i in range(k, frame.ncols)))
    return Matrix.from_columns(f, out_cols, len(complement))


def induced_between_quotients(m: Matrix, sub_dom: Subspace,
                              sub_cod: Subspace) -> Matrix:
    """Matrix induced by m on (domain/sub_dom) -> (codomain/sub_cod).

    Well-defined only when m maps sub_dom into sub_cod, which is
    checked.  Quotient bases are completed with standard basis vectors,
    deterministically.
    """
    same_field(m.field, sub_dom.field)
    if m.ncols != sub_dom.ambient_dim or m.nrows != sub_cod.ambient_dim:
        raise DimensionError("map shape incompatible with the subspaces")
    restrict_between(m, sub_dom, sub_cod)   # raises with witness
    f = m.field
    dom_comp = _complete_basis(sub_dom, Subspace.full(f, m.ncols))
    cod_comp = _complete_basis(sub_cod, Subspace.full(f, m.nrows))
    cod_frame = Matrix.from_columns(
        f, list(sub_cod.basis.columns()) + cod_comp, m.nrows)
    k = sub_cod.dim
    out_cols = []
    for c in dom_comp:
        image = Matrix.from_columns(f, [m.apply(c)], m.nrows)
        coords = cod_frame.solve(image)
        out_cols.append(tuple(coords.rows[i][0]
                              for i in range(k, cod_frame.ncols)))
    return Matrix.from_columns(f, out_cols, len(cod_comp))


# -- spec-facing aliases -----------------------------------------------

def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> Subspace:
    return m.nullspace()


def image_basis(m: Matrix) -> Subspace:
    return m.column_space()


def subspace_contains(u: Subspace, w: Subspace) -> bool:
    """True iff w is contained in u."""
    return u.contains(w)
