"""Dense exact linear algebra over Q(zeta_m).

Everything is canonical: reduced row-echelon forms are unique, so equality of
subspaces is equality of representations.  Vectors are tuples of Scalar and
matrices act on column vectors.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar


def _coerce_scalar(x, m: int = 1) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar.rational(Fraction(x), m)


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: tuple):
        self.rows = rows
        self.cols = cols
        self.entries = entries  # row-major tuple of Scalar

    # -- constructors ------------------------------------------------------

    @staticmethod
    def build(rows, m: int = 1) -> "Matrix":
        data = [[_coerce_scalar(x, m) for x in row] for row in rows]
        nr = len(data)
        nc = len(data[0]) if nr else 0
        if any(len(row) != nc for row in data):
            raise ValueError("ragged matrix rows")
        return Matrix(nr, nc, tuple(x for row in data for x in row))

    @staticmethod
    def identity(n: int, m: int = 1) -> "Matrix":
        one, zero = Scalar.one(m), Scalar.zero(m)
        return Matrix(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int, m: int = 1) -> "Matrix":
        z = Scalar.zero(m)
        return Matrix(rows, cols, (z,) * (rows * cols))

    @staticmethod
    def from_rows(vectors) -> "Matrix":
        return Matrix(len(vectors), len(vectors[0]) if vectors else 0,
                      tuple(x for v in vectors for x in v))

    @staticmethod
    def from_cols(vectors) -> "Matrix":
        return Matrix.from_rows(vectors).transpose()

    # -- access --------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def flatten(self) -> tuple:
        return self.entries

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch in subtraction")
        return Matrix(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a * c for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("matrix shape mismatch in product")
        n, k, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k: (i + 1) * k]
            for j in range(p):
                s = None
                for t in range(k):
                    x = arow[t]
                    if x:
                        term = x * b[t * p + j]
                        s = term if s is None else s + term
                out.append(s if s is not None else Scalar.zero(self._conductor()))
            # row done
        return Matrix(n, p, tuple(out))

    def mul_vector(self, v: tuple) -> tuple:
        return tuple(self.__matmul__(Matrix(len(v), 1, tuple(v))).entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j]
                            for j in range(self.cols) for i in range(self.rows)))

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        s = Scalar.zero(self._conductor())
        for i in range(self.rows):
            s = s + self[i, i]
        return s

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows, self._conductor())
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def _conductor(self) -> int:
        for e in self.entries:
            return e.m
        return 1

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def rank(self) -> int:
        return rref(self)[2]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        m = self._conductor()
        aug = [list(self.row(i)) + list(Matrix.identity(n, m).row(i)) for i in range(n)]
        reduced, pivots, rank = _rref_rows(aug)
        if list(pivots[:n]) != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(n, n, tuple(reduced[i][n + j] for i in range(n) for j in range(n)))

    def char_poly(self) -> list:
        """Characteristic polynomial coefficients, low -> high, monic."""
        # Faddeev-LeVerrier: exact, divisions by integers only
        n = self.rows
        m = self._conductor()
        coeffs = [Scalar.zero(m)] * (n + 1)
        coeffs[n] = Scalar.one(m)
        M = Matrix.zero(n, n, m)
        ident = Matrix.identity(n, m)
        for k in range(1, n + 1):
            M = self @ M + ident.scale(coeffs[n - k + 1])
            c = (self @ M).trace() * Fraction(-1, k)
            coeffs[n - k] = c
        return coeffs

    def __repr__(self):
        return "Matrix(" + "; ".join(
            "[" + ", ".join(repr(x) for x in self.row(i)) + "]" for i in range(self.rows)) + ")"

    def to_json(self):
        return [[x.to_json() for x in self.row(i)] for i in range(self.rows)]

    @staticmethod
    def from_json(data, m: int) -> "Matrix":
        return Matrix.build([[Scalar.from_json(x, m) for x in row] for row in data], m)


def _rref_rows(rows: list):
    """In-place reduced row echelon form on a list of row lists."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots, r


def rref(a: Matrix):
    """Reduced row-echelon form.  Returns (R, pivots, rank), deterministic."""
    rows = a.row_list()
    if not rows:
        return a, (), 0
    reduced, pivots, rank = _rref_rows(rows)
    return Matrix.build(reduced), tuple(pivots), rank


class Subspace:
    """A subspace of K^n in canonical reduced row-echelon form."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: tuple):
        self.ambient_dim = ambient_dim
        self.basis = basis  # tuple of tuples of Scalar, canonical echelon rows

    @staticmethod
    def from_vectors(ambient_dim: int, vectors) -> "Subspace":
        vecs = [[_coerce_scalar(x) for x in v] for v in vectors]
        vecs = [v for v in vecs if any(v)]
        if not vecs:
            return Subspace(ambient_dim, ())
        reduced, pivots, rank = _rref_rows(vecs)
        return Subspace(ambient_dim, tuple(tuple(row) for row in reduced[:rank]))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int, m: int = 1) -> "Subspace":
        return Subspace.from_vectors(ambient_dim,
                                     [Matrix.identity(ambient_dim, m).row(i)
                                      for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, vector) -> bool:
        res = list(vector)
        for row in self.basis:
            piv = _pivot_index(row)
            if res[piv]:
                f = res[piv]
                res = [x - f * y for x, y in zip(res, row)]
        return all(not x for x in res)

    def coordinates(self, vector):
        """Coordinates of vector in the echelon basis, or None."""
        res = [_coerce_scalar(x) for x in vector]
        coords = []
        for row in self.basis:
            piv = _pivot_index(row)
            f = res[piv]
            coords.append(f)
            if f:
                res = [x - f * y for x, y in zip(res, row)]
        if any(res):
            return None
        return tuple(coords)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: row reduce [A|A; B|0], read the right half of the zero-left rows
        n = self.ambient_dim
        zero = Scalar.zero()
        rows = [list(r) + list(r) for r in self.basis]
        rows += [list(r) + [zero] * n for r in other.basis]
        if not rows:
            return Subspace.zero(n)
        reduced, pivots, rank = _rref_rows(rows)
        out = []
        for row in reduced[:rank]:
            if all(not x for x in row[:n]):
                out.append(row[n:])
        return Subspace.from_vectors(n, out)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and \
            len(self.basis) == len(other.basis) and \
            all(all(a == b for a, b in zip(r1, r2)) for r1, r2 in zip(self.basis, other.basis))

    __hash__ = None

    def sort_key(self):
        """Deterministic order on subspaces of one ambient space."""
        key = [self.dim]
        for row in self.basis:
            for x in row:
                key.append(tuple(c for c in x.coeffs))
        return tuple(key)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def to_json(self):
        return {"ambient_dim": self.ambient_dim,
                "basis": [[x.to_json() for x in row] for row in self.basis]}

    @staticmethod
    def from_json(data, m: int) -> "Subspace":
        return Subspace.from_vectors(
            data["ambient_dim"],
            [[Scalar.from_json(x, m) for x in row] for row in data["basis"]])


def _pivot_index(row) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row in echelon basis")


def kernel(a: Matrix) -> Subspace:
    """Null space {x : a @ x = 0} as a canonical Subspace of K^cols."""
    reduced, pivots, rank = _rref_rows(a.row_list()) if a.rows else ([], [], 0)
    n = a.cols
    m = a._conductor()
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Scalar.zero(m)] * n
        v[f] = Scalar.one(m)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    return Subspace.from_vectors(n, basis)


def linear_solve(a: Matrix, b: Matrix):
    """One solution X of a @ X = b (or None) together with the kernel of a.

    The kernel describes the solution ambiguity per column of b.
    """
    if a.rows != b.rows:
        raise ValueError("dimension mismatch: a and b must have equal row count")
    m = a._conductor()
    aug = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    if not aug:
        return Matrix.zero(a.cols, b.cols, m), kernel(a)
    reduced, pivots, rank = _rref_rows(aug)
    ker = kernel(a)
    for r in range(rank):
        if _pivot_index(reduced[r]) >= a.cols:
            return None, ker  # inconsistent system
    xs = [[Scalar.zero(m)] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        if p < a.cols:
            for j in range(b.cols):
                xs[p][j] = reduced[r][a.cols + j]
    return Matrix.build(xs, m), ker


def solve_vector(a: Matrix, v: tuple):
    part, _ = linear_solve(a, Matrix(len(v), 1, tuple(v)))
    return None if part is None else tuple(part.entries)


class Grading:
    """A weight decomposition of K^n: distinct integer weights in Z^k with
    jointly independent spanning bases.  This is how a torus is presented:
    the torus is recovered from its weight spaces."""

    __slots__ = ("ambient_dim", "k", "pieces")

    def __init__(self, ambient_dim: int, pieces):
        self.ambient_dim = ambient_dim
        pieces = [(tuple(int(w) for w in weight),
                   [tuple(_coerce_scalar(x) for x in v) for v in basis])
                  for weight, basis in pieces]
        ks = {len(w) for w, _ in pieces}
        if len(ks) > 1:
            raise ValueError("grading weights have mixed lengths")
        self.k = ks.pop() if ks else 0
        weights = [w for w, _ in pieces]
        if len(set(weights)) != len(weights):
            raise ValueError("grading weights are not pairwise distinct")
        total = [v for _, basis in pieces for v in basis]
        if len(total) != ambient_dim:
            raise ValueError("grading pieces do not have total dimension n")
        if Matrix.from_rows(total).rank() != ambient_dim:
            raise ValueError("grading pieces are not jointly independent")
        self.pieces = pieces

    @staticmethod
    def trivial(n: int, m: int = 1) -> "Grading":
        ident = Matrix.identity(n, m)
        return Grading(n, [((), [ident.row(i) for i in range(n)])])

    def is_trivial(self) -> bool:
        return len(self.pieces) == 1

    def piece_subspaces(self):
        return [Subspace.from_vectors(self.ambient_dim, basis) for _, basis in self.pieces]

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        if (self.ambient_dim, self.k) != (other.ambient_dim, other.k):
            return False
        if len(self.pieces) != len(other.pieces):
            return False
        for (w1, b1), (w2, b2) in zip(self.pieces, other.pieces):
            if w1 != w2 or Subspace.from_vectors(self.ambient_dim, b1) != \
                    Subspace.from_vectors(self.ambient_dim, b2):
                return False
        return True

    __hash__ = None

    def to_json(self):
        return [{"weight": list(w),
                 "basis": [[x.to_json() for x in v] for v in basis]}
                for w, basis in self.pieces]


def weight_projectors(g: Grading) -> list:
    """Projectors onto each piece along the sum of the others.

    Idempotent, pairwise orthogonal, summing to the identity; exact.
    """
    n = g.ambient_dim
    cols = [v for _, basis in g.pieces for v in basis]
    b = Matrix.from_cols(cols)
    if not b.is_invertible():
        raise ValueError("degenerate grading: pieces do not span")
    binv = b.inverse()
    m = b._conductor()
    out = []
    start = 0
    for _, basis in g.pieces:
        d = len(basis)
        sel = Matrix.build([[1 if (i == j and start <= i < start + d) else 0
                             for j in range(n)] for i in range(n)], m)
        out.append(b @ sel @ binv)
        start += d
    return out
