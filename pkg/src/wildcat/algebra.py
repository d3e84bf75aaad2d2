"""Unital matrix algebras: spinning, radicals, invariant subspaces, decomposition.

The semisimplicity oracle at the centre of the stability engine.  A tuple of
invertible matrices generates the same unital algebra as the Zariski closure
of the group they generate (inverses come for free by Cayley-Hamilton), so in
characteristic zero the natural module is semisimple exactly when that group
is linearly reductive.  The radical is computed two independent ways:

* ``radical_trace``  -- null space of the trace form of the natural module;
* ``radical_oracle`` -- null space of the trace form of the left regular
  module, built from structure constants.  A different faithful module and a
  different code path; the two must agree on every input.

Invariant-subspace search is a MeatAxe over the exact coefficient field:
kernel and eigenvalue candidates first, then a proof-grade fallback through
the radical, the commutant, and polynomial factorisation over the field.  A
returned subspace is always a genuine submodule; ``None`` is only returned
with a proof of irreducibility over the field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional

from .linalg import Matrix, Subspace, kernel, linear_solve
from .scalars import Scalar


class NotSemisimpleError(Exception):
    """Raised when an operation requiring a semisimple module meets a radical."""


class MeatAxeInconclusive(Exception):
    """Raised when irreducibility over the field cannot be certified.

    Only reachable when the endomorphism ring is a noncommutative
    division-algebra candidate; deciding that case amounts to solving norm
    equations, which is out of scope.  Never returns a wrong verdict.
    """


class _EchelonSet:
    """Incremental reduced row echelon basis with exact membership."""

    def __init__(self, width: int):
        self.width = width
        self.rows = []          # echelon rows, pivot order
        self.pivots = []        # pivot column per row

    def _reduce(self, vec):
        vec = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            f = vec[piv]
            if f:
                for j in range(piv, self.width):
                    if row[j]:
                        vec[j] = vec[j] - f * row[j]
        return vec

    def reduce_with_coords(self, vec):
        vec = list(vec)
        coords = []
        for row, piv in zip(self.rows, self.pivots):
            f = vec[piv]
            coords.append(f)
            if f:
                for j in range(piv, self.width):
                    if row[j]:
                        vec[j] = vec[j] - f * row[j]
        return vec, coords

    def add(self, vec) -> bool:
        """Insert vec into the span; True if it was independent."""
        res = self._reduce(vec)
        piv = next((j for j, x in enumerate(res) if x), None)
        if piv is None:
            return False
        inv = res[piv].inverse()
        res = [x * inv for x in res]
        for row in self.rows:
            f = row[piv]
            if f:
                for j in range(self.width):
                    if res[j]:
                        row[j] = row[j] - f * res[j]
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.rows))
        self.rows.insert(at, res)
        self.pivots.insert(at, piv)
        return True

    def contains(self, vec) -> bool:
        return all(not x for x in self._reduce(vec))

    @property
    def dim(self) -> int:
        return len(self.rows)


def _common_conductor(mats) -> int:
    m = 1
    for mat in mats:
        m = lcm(m, mat._conductor())
    return m


def _promote_matrix(mat: Matrix, m: int) -> Matrix:
    if mat._conductor() == m:
        return mat
    return Matrix(mat.rows, mat.cols, tuple(x.promote(m) for x in mat.entries))


@dataclass
class MatrixAlgebra:
    """A unital subalgebra of n x n matrices, basis in canonical echelon order."""

    ambient_n: int
    basis: tuple
    conductor: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _echelon(self) -> _EchelonSet:
        ech = _EchelonSet(self.ambient_n ** 2)
        for b in self.basis:
            ech.add(list(b.flatten()))
        return ech

    def contains(self, mat: Matrix) -> bool:
        return self._echelon().contains(list(_promote_matrix(mat, self.conductor).flatten()))

    def coordinates(self, mat: Matrix):
        res, coords = self._echelon().reduce_with_coords(
            list(_promote_matrix(mat, self.conductor).flatten()))
        if any(res):
            return None
        return tuple(coords)

    def is_closed(self) -> bool:
        ech = self._echelon()
        for a in self.basis:
            for b in self.basis:
                if not ech.contains(list((a @ b).flatten())):
                    return False
        return ech.contains(list(Matrix.identity(self.ambient_n, self.conductor).flatten()))


def spin_algebra(generators, ambient_n: Optional[int] = None) -> MatrixAlgebra:
    """Smallest unital algebra of n x n matrices containing the generators."""
    if not generators and ambient_n is None:
        raise ValueError("need generators or an ambient size")
    n = generators[0].rows if generators else ambient_n
    for g in generators:
        if g.rows != n or g.cols != n:
            raise ValueError("generators must be square of one common size")
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]
    ech = _EchelonSet(n * n)
    frontier = []
    for w in [Matrix.identity(n, m)] + gens:
        if ech.add(list(w.flatten())):
            frontier.append(w)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                for prod in (g @ w, w @ g):
                    if ech.add(list(prod.flatten())):
                        nxt.append(prod)
        frontier = nxt
    basis = tuple(Matrix(n, n, tuple(row)) for row in ech.rows)
    return MatrixAlgebra(n, basis, m)


@dataclass
class RadicalCertificate:
    radical: Subspace              # of the flattened n^2 space
    nilpotency_index: int          # least k with radical^k = 0 (1 when radical = 0)
    witness: Optional[Matrix]      # a nonzero radical element, absent iff radical = 0

    @property
    def dim(self) -> int:
        return self.radical.dim


def _certificate_from_rows(n: int, rows) -> RadicalCertificate:
    sub = Subspace.from_vectors(n * n, rows)
    if sub.dim == 0:
        return RadicalCertificate(sub, 1, None)
    mats = [Matrix(n, n, tuple(row)) for row in sub.basis]
    index = 1
    current = mats
    while current:
        index += 1
        ech = _EchelonSet(n * n)
        nxt = []
        for a in current:
            for b in mats:
                p = a @ b
                if ech.add(list(p.flatten())):
                    nxt.append(p)
        current = nxt
        if index > n + 1:
            raise AssertionError("radical fails to be nilpotent")
    return RadicalCertificate(sub, index, mats[0])


def radical_trace(alg: MatrixAlgebra) -> RadicalCertificate:
    """Radical as the null space of the Gram matrix tr(b_i b_j) on the algebra."""
    d = alg.dim
    n = alg.ambient_n
    gram = []
    for i in range(d):
        bi = alg.basis[i]
        row = []
        for j in range(d):
            bj = alg.basis[j]
            s = Scalar.zero(alg.conductor)
            for r in range(n):
                for c in range(n):
                    x = bi[r, c]
                    if x:
                        s = s + x * bj[c, r]
            row.append(s)
        gram.append(row)
    ker = kernel(Matrix.build(gram, alg.conductor))
    rows = []
    for coeffs in ker.basis:
        elem = Matrix.zero(n, n, alg.conductor)
        for c, b in zip(coeffs, alg.basis):
            if c:
                elem = elem + b.scale(c)
        rows.append(list(elem.flatten()))
    return _certificate_from_rows(n, rows)


def radical_oracle(alg: MatrixAlgebra) -> RadicalCertificate:
    """Radical via the trace form of the left regular module.

    Structure constants are computed first; the Gram matrix lives on the
    regular module A acting on itself, so this route never looks at natural-
    module traces.  Every element of the result is certified nilpotent.
    """
    d = alg.dim
    n = alg.ambient_n
    ech = alg._echelon()
    struct = []
    for i in range(d):
        row = []
        for j in range(d):
            res, coords = ech.reduce_with_coords(list((alg.basis[i] @ alg.basis[j]).flatten()))
            if any(res):
                raise AssertionError("algebra is not multiplicatively closed")
            row.append(coords)
        struct.append(row)
    # tau[l] = trace of left multiplication by basis element l
    tau = []
    for l in range(d):
        s = Scalar.zero(alg.conductor)
        for k in range(d):
            s = s + struct[l][k][k]
        tau.append(s)
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            s = Scalar.zero(alg.conductor)
            for l in range(d):
                c = struct[i][j][l]
                if c:
                    s = s + c * tau[l]
            row.append(s)
        gram.append(row)
    ker = kernel(Matrix.build(gram, alg.conductor))
    rows = []
    for coeffs in ker.basis:
        elem = Matrix.zero(n, n, alg.conductor)
        for c, b in zip(coeffs, alg.basis):
            if c:
                elem = elem + b.scale(c)
        rows.append(list(elem.flatten()))
    cert = _certificate_from_rows(n, rows)
    for row in cert.radical.basis:
        mat = Matrix(n, n, tuple(row))
        if not (mat ** n).is_zero():
            raise AssertionError("radical element is not nilpotent")
    return cert


# ---------------------------------------------------------------------------
# module machinery


def spin_subspace(generators, vectors, n: int) -> Subspace:
    """Submodule of K^n generated by the given vectors."""
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]
    ech = _EchelonSet(n)
    frontier = []
    for v in vectors:
        v = [x if isinstance(x, Scalar) else Scalar.rational(Fraction(x), m) for x in v]
        if ech.add(v):
            frontier.append(tuple(v))
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = g.mul_vector(v)
                if ech.add(list(w)):
                    nxt.append(w)
        frontier = nxt
    return Subspace.from_vectors(n, [tuple(r) for r in ech.rows])


def commutant(generators, n: int):
    """Echelon basis of {x : x g = g x for all generators g}."""
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]
    rows = []
    zero = Scalar.zero(m)
    for g in gens:
        for r in range(n):
            for c in range(n):
                row = [zero] * (n * n)
                # (x g - g x)[r, c] = sum_k x[r,k] g[k,c] - g[r,k] x[k,c]
                for k in range(n):
                    row[r * n + k] = row[r * n + k] + g[k, c]
                    row[k * n + c] = row[k * n + c] - g[r, k]
                rows.append(row)
    if not rows:
        return [Matrix.identity(n, m)]
    ker = kernel(Matrix.build(rows, m))
    return [Matrix(n, n, tuple(v)) for v in ker.basis]


def restrict_matrix(g: Matrix, sub: Subspace) -> Matrix:
    """Coordinate matrix of g acting on an invariant subspace."""
    cols = Matrix.from_cols(sub.basis)
    sol, _ = linear_solve(cols, g @ cols)
    if sol is None:
        raise ValueError("subspace is not invariant under the matrix")
    return sol


def lift_subspace(inner: Subspace, outer: Subspace) -> Subspace:
    """Interpret a subspace of coordinates on ``outer`` inside the ambient space."""
    rows = []
    for coords in inner.basis:
        vec = [Scalar.zero()] * outer.ambient_dim
        for c, base in zip(coords, outer.basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, base)]
        rows.append(vec)
    return Subspace.from_vectors(outer.ambient_dim, rows)


def invariant_complement(generators, sub: Subspace) -> Subspace:
    """A complementary submodule (exists whenever the module is semisimple)."""
    n = sub.ambient_dim
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]
    d = sub.dim
    # complete the echelon basis of sub to a basis of the ambient space
    full = _EchelonSet(n)
    for row in sub.basis:
        full.add(list(row))
    extra = []
    for j in range(n):
        e = [Scalar.zero(m)] * n
        e[j] = Scalar.one(m)
        if full.add(e):
            extra.append(tuple(e))
    f = Matrix.from_rows([tuple(r) for r in sub.basis] + extra)
    g_test = f.transpose().inverse()
    # constraint rows on the projection e (n^2 unknowns):
    rows, rhs = [], []
    zero = Scalar.zero(m)
    # columns of e lie in sub: bottom coordinates vanish
    for i in range(d, n):
        gi = g_test.row(i)
        for c in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[k * n + c] = gi[k]
            rows.append(row)
            rhs.append([zero])
    # e fixes sub pointwise
    one = Scalar.one(m)
    for u in sub.basis:
        for r in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[r * n + k] = u[k]
            rows.append(row)
            rhs.append([u[r]])
    # e commutes with every generator
    for g in gens:
        for r in range(n):
            for c in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    row[r * n + k] = row[r * n + k] + g[k, c]
                    row[k * n + c] = row[k * n + c] - g[r, k]
                rows.append(row)
                rhs.append([zero])
    sol, _ = linear_solve(Matrix.build(rows, m), Matrix.build(rhs, m))
    if sol is None:
        raise NotSemisimpleError("no invariant complement: module is not semisimple")
    proj = Matrix(n, n, tuple(sol.entries))
    return kernel(proj)


def module_homs(generators, sub_a: Subspace, sub_b: Subspace):
    """Basis of module maps sub_a -> sub_b (as coordinate matrices)."""
    if sub_a.dim == 0 or sub_b.dim == 0:
        return []
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]
    da, db = sub_a.dim, sub_b.dim
    acts_a = [restrict_matrix(g, sub_a) for g in gens]
    acts_b = [restrict_matrix(g, sub_b) for g in gens]
    rows = []
    zero = Scalar.zero(m)
    # unknown h (db x da) with act_b h = h act_a
    for ga, gb in zip(acts_a, acts_b):
        for r in range(db):
            for c in range(da):
                row = [zero] * (db * da)
                for k in range(db):
                    row[k * da + c] = row[k * da + c] + gb[r, k]
                for k in range(da):
                    row[r * da + k] = row[r * da + k] - ga[k, c]
                rows.append(row)
    if not rows:
        return [Matrix.identity(da, m)] if da == db else []
    ker = kernel(Matrix.build(rows, m))
    return [Matrix(db, da, tuple(v)) for v in ker.basis]


# ---------------------------------------------------------------------------
# polynomial factorisation over the coefficient field (sympy bridge)


@lru_cache(maxsize=None)
def _sympy_field(m: int):
    import sympy

    if m == 1:
        return sympy.QQ
    return sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / m))


def _scalar_to_domain(x: Scalar, m: int, dom):
    import sympy

    if m == 1:
        q = x.as_fraction()
        return dom(q.numerator) / dom(q.denominator)
    coeffs = list(reversed([sympy.QQ(c.numerator, c.denominator) for c in x.coeffs]))
    return dom(coeffs)


def _domain_to_scalar(val, m: int) -> Scalar:
    if m == 1:
        return Scalar.rational(Fraction(int(val.numerator), int(val.denominator)))
    lst = list(reversed(val.to_list()))
    return Scalar.from_coeffs(m, [Fraction(int(c.numerator), int(c.denominator)) for c in lst])


def factor_over_field(coeffs, m: int):
    """Irreducible monic factors (with multiplicity) of a monic polynomial.

    ``coeffs`` are Scalar coefficients, low -> high.  Returns a list of
    (factor_coeffs_low_to_high, multiplicity).
    """
    import sympy

    dom = _sympy_field(m)
    x = sympy.symbols("x")
    poly = sympy.Poly([_scalar_to_domain(c.promote(m), m, dom) for c in reversed(coeffs)],
                      x, domain=dom)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        fc = [_domain_to_scalar(c, m) for c in f.rep.to_list()]  # highest first
        lead = fc[0]
        fc = [c / lead for c in fc]
        out.append((list(reversed(fc)), mult))
    out.sort(key=lambda t: (len(t[0]), [tuple(c.coeffs) for c in t[0]]))
    return out


def _eval_poly(coeffs, f: Matrix) -> Matrix:
    n = f.rows
    m = f._conductor()
    out = Matrix.zero(n, n, m)
    power = Matrix.identity(n, m)
    for c in coeffs:
        if c:
            out = out + power.scale(c)
        power = power @ f
    return out


def minimal_polynomial(f: Matrix):
    """Monic minimal polynomial coefficients, low -> high."""
    n = f.rows
    m = f._conductor()
    ech = _EchelonSet(n * n)
    powers = []
    cur = Matrix.identity(n, m)
    while ech.add(list(cur.flatten())):
        powers.append(cur)
        cur = cur @ f
    # cur = f^d is the first dependent power: solve sum a_i f^i = f^d
    d = len(powers)
    cols = Matrix.from_cols([tuple(p.flatten()) for p in powers])
    sol, _ = linear_solve(cols, Matrix(n * n, 1, tuple(cur.flatten())))
    return [-sol[i, 0] for i in range(d)] + [Scalar.one(m)]


# ---------------------------------------------------------------------------
# invariant subspaces (MeatAxe)


_MEATAXE_SEED = 0x5EED
_HUNT_BUDGET = 64


def _first_line(n: int, m: int = 1) -> Subspace:
    v = [Scalar.zero(m)] * n
    v[0] = Scalar.one(m)
    return Subspace.from_vectors(n, [v])


def _is_scalar_matrix(g: Matrix) -> bool:
    n = g.rows
    c = g[0, 0]
    for i in range(n):
        for j in range(n):
            if (i == j and not (g[i, j] == c)) or (i != j and g[i, j]):
                return False
    return True


def _split_by_element(f: Matrix, n: int, m: int):
    """A proper nonzero kernel of p(f) for a factor p of the char poly, or None."""
    if f.is_zero() or _is_scalar_matrix(f):
        return None
    ker_f = kernel(f)
    if 0 < ker_f.dim < n:
        return ker_f
    factors = factor_over_field(f.char_poly(), m)
    for fc, _ in factors:
        pf = _eval_poly(fc, f)
        if pf.is_zero():
            continue
        kp = kernel(pf)
        if 0 < kp.dim < n:
            return kp
    return None


def _primitive_element(basis, n: int, m: int) -> Matrix:
    """Generator of a commutative algebra span(basis) (deterministic sweep)."""
    target = len(basis)

    def span_dim(f):
        ech = _EchelonSet(n * n)
        cur = Matrix.identity(n, m)
        d = 0
        while ech.add(list(cur.flatten())):
            d += 1
            cur = cur @ f
        return d

    f = None
    fdim = 0
    for b in basis:
        if _is_scalar_matrix(b):
            continue
        if f is None:
            f, fdim = b, span_dim(b)
            continue
        # check whether b already lies in K[f]
        ech = _EchelonSet(n * n)
        cur = Matrix.identity(n, m)
        for _ in range(fdim):
            ech.add(list(cur.flatten()))
            cur = cur @ f
        if ech.contains(list(b.flatten())):
            continue
        for c in range(n * n + 2):
            g = f + b.scale(Scalar.rational(c, m))
            gdim = span_dim(g)
            if gdim > fdim:
                f, fdim = g, gdim
                break
        else:
            raise AssertionError("primitive element sweep failed")
        if fdim == target:
            break
    return f if f is not None else Matrix.identity(n, m)


def invariant_subspace(generators) -> Optional[Subspace]:
    """A proper nonzero subspace invariant under all generators, if one exists.

    Over the coefficient field: ``None`` certifies that the natural module is
    irreducible over that field.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].rows
    for g in generators:
        if g.rows != n or g.cols != n:
            raise ValueError("generators must be square of one common size")
    if n <= 1:
        return None
    m = _common_conductor(generators)
    gens = [_promote_matrix(g, m) for g in generators]

    if all(_is_scalar_matrix(g) for g in gens):
        return _first_line(n, m)

    # cheap kernel candidates straight from the generators
    for f in gens:
        kf = kernel(f)
        if 0 < kf.dim < n:
            sub = spin_subspace(gens, [list(v) for v in kf.basis], n)
            if 0 < sub.dim < n:
                return sub

    alg = spin_algebra(gens)
    rad = radical_trace(alg)
    if rad.dim > 0:
        cols = []
        for row in rad.radical.basis:
            mat = Matrix(n, n, tuple(row))
            cols.extend([mat.col(j) for j in range(n)])
        sub = Subspace.from_vectors(n, cols)
        if not (0 < sub.dim < n):
            raise AssertionError("radical image must be proper and nonzero")
        return sub

    # semisimple from here on
    comm = commutant(gens, n)
    if len(comm) == 1:
        return None  # commutant is scalars: absolutely irreducible

    for f in comm:
        sub = _split_by_element(f, n, m)
        if sub is not None:
            return sub

    commutative = True
    for i in range(len(comm)):
        for j in range(i + 1, len(comm)):
            if not (comm[i] @ comm[j] - comm[j] @ comm[i]).is_zero():
                commutative = False
                break
        if not commutative:
            break

    if commutative:
        f = _primitive_element(comm, n, m)
        sub = _split_by_element(f, n, m)
        if sub is not None:
            return sub
        factors = factor_over_field(minimal_polynomial(f), m)
        if len(factors) == 1 and factors[0][1] == 1:
            return None  # the commutant is a field: irreducible over it
        raise AssertionError("commutative endomorphism ring escaped splitting")

    # noncommutative endomorphism ring: try its centre, then bounded hunts
    centre_rows = []
    zero = Scalar.zero(m)
    for g in comm:
        for r in range(n):
            for c in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    row[r * n + k] = row[r * n + k] + g[k, c]
                    row[k * n + c] = row[k * n + c] - g[r, k]
                centre_rows.append(row)
    double_comm = Subspace.from_vectors(n * n, [list(v) for v in
                                                kernel(Matrix.build(centre_rows, m)).basis])
    comm_span = Subspace.from_vectors(n * n, [list(b.flatten()) for b in comm])
    centre_sub = double_comm.intersection(comm_span)
    centre_mats = [Matrix(n, n, tuple(row)) for row in centre_sub.basis]
    if len(centre_mats) >= 2:
        f = _primitive_element(centre_mats, n, m)
        sub = _split_by_element(f, n, m)
        if sub is not None:
            return sub

    # isotypic with division endomorphisms is the only remaining shape;
    # hunt for zero divisors before giving up
    ident = Matrix.identity(n, m)
    for j in range(n):
        e = [Scalar.zero(m)] * n
        e[j] = Scalar.one(m)
        sub = spin_subspace(gens, [e], n)
        if 0 < sub.dim < n:
            return sub
    rng = random.Random(_MEATAXE_SEED)
    for _ in range(_HUNT_BUDGET):
        f = Matrix.zero(n, n, m)
        for b in comm:
            f = f + b.scale(Scalar.rational(rng.randint(-3, 3), m))
        for candidate in (f, f @ comm[-1] - comm[-1] @ f):
            sub = _split_by_element(candidate, n, m)
            if sub is not None:
                return sub
    raise MeatAxeInconclusive(
        "endomorphism ring resists splitting: division algebra candidate")


# ---------------------------------------------------------------------------
# decomposition


def decompose_irreducibles(generators, n: Optional[int] = None):
    """Direct sum decomposition of K^n into irreducible submodules.

    Requires a semisimple module (raises NotSemisimpleError otherwise via the
    complement computation).  Deterministic; result sorted canonically.
    """
    if not generators and n is None:
        raise ValueError("need generators or an ambient size")
    size = generators[0].rows if generators else n
    m = _common_conductor(generators) if generators else 1
    gens = [_promote_matrix(g, m) for g in generators]

    def rec(sub: Subspace):
        acts = [restrict_matrix(g, sub) for g in gens]
        if sub.dim == 1:
            return [sub]
        if not acts:
            return [Subspace.from_vectors(size, [row]) for row in sub.basis]
        inner = invariant_subspace(acts)
        if inner is None:
            return [sub]
        part = lift_subspace(inner, sub)
        comp_inner = invariant_complement(acts, inner)
        comp = lift_subspace(comp_inner, sub)
        return rec(part) + rec(comp)

    parts = rec(Subspace.full(size, m))
    parts.sort(key=lambda s: s.sort_key())
    return parts


def isotypic_decomposition(generators, n: Optional[int] = None):
    """Isotypic components of a semisimple module: sums of isomorphic irreducibles."""
    size = generators[0].rows if generators else n
    alg = spin_algebra(generators, ambient_n=size)
    if radical_trace(alg).dim > 0:
        raise NotSemisimpleError("module has a nonzero radical")
    parts = decompose_irreducibles(generators, n=size)
    groups = []
    for part in parts:
        placed = False
        for group in groups:
            rep = group[0]
            if part.dim == rep.dim and module_homs(generators, part, rep):
                group.append(part)
                placed = True
                break
        if not placed:
            groups.append([part])
    components = []
    for group in groups:
        total = group[0]
        for extra in group[1:]:
            total = total.sum(extra)
        components.append(total)
    components.sort(key=lambda s: s.sort_key())
    return components
