"""Exact integer linear algebra for finitely generated abelian groups.

Everything is computed over Z with Python's arbitrary-precision integers:
no floating point, no wraparound.  The central objects are abelian groups
in invariant-factor form (`AbGroup`), integer matrices of homomorphisms
between them (`AbHom`), and the Smith-normal-form machinery that produces
kernels, cokernels, quotients of integer lattices, and Hom-groups carved
out by linear conditions.

Conventions
-----------
* An `AbGroup` with factors ``(d1, ..., dk)`` is ``Z/d1 + ... + Z/dk``
  where ``di = 0`` denotes an infinite cyclic factor.  Factors equal to 1
  are forbidden and nonzero factors divide each other in order, with the
  zero (free) factors last; this makes the representation canonical.
* Elements are coordinate tuples with respect to the generators; the i-th
  coordinate is taken modulo ``di`` when ``di > 0``.
* An `AbHom` stores the matrix whose column j is the image of the j-th
  generator of the domain (rows are indexed by codomain generators), so
  application is matrix-times-column-vector.
* A "lattice" is a subgroup of some Z^n given by the column span of an
  integer matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence


class UnsupportedInstance(Exception):
    """Raised when an operation needs a finite group but got an infinite one."""


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------


class IMat:
    """An immutable integer matrix with an explicit shape.

    Plain lists of lists lose the column count once there are zero rows;
    zero-dimensional matrices occur constantly here (trivial stalks, empty
    relation sets), so the shape is carried separately.
    """

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: Sequence[Sequence[int]]):
        if len(data) != nrows or any(len(row) != ncols for row in data):
            raise ValueError("matrix data does not match shape")
        self.nrows = nrows
        self.ncols = ncols
        self.data = tuple(tuple(int(x) for x in row) for row in data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IMat":
        if not rows:
            if ncols is None:
                raise ValueError("need ncols for a matrix with zero rows")
            return cls(0, ncols, [])
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]], nrows: int | None = None) -> "IMat":
        if not cols:
            if nrows is None:
                raise ValueError("need nrows for a matrix with zero columns")
            return cls(nrows, 0, [[] for _ in range(nrows)])
        n = len(cols[0])
        return cls(n, len(cols), [[col[i] for col in cols] for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "IMat":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IMat":
        return cls(nrows, ncols, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IMat":
        n = len(entries)
        return cls(n, n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def col(self, j: int) -> list[int]:
        return [self.data[i][j] for i in range(self.nrows)]

    def cols(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.ncols)]

    def mul(self, other: "IMat") -> "IMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            row = self.data[i]
            for k in range(self.ncols):
                a = row[k]
                if a:
                    orow = other.data[k]
                    orow_out = out[i]
                    for j in range(other.ncols):
                        orow_out[j] += a * orow[j]
        return IMat(self.nrows, other.ncols, out)

    def __matmul__(self, other: "IMat") -> "IMat":
        return self.mul(other)

    def vec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum(row[j] * v[j] for j in range(self.ncols)) for row in self.data]

    def hstack(self, other: "IMat") -> "IMat":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch in hstack")
        return IMat(
            self.nrows,
            self.ncols + other.ncols,
            [list(self.data[i]) + list(other.data[i]) for i in range(self.nrows)],
        )

    def transpose(self) -> "IMat":
        return IMat(self.ncols, self.nrows, [self.col(i) for i in range(self.ncols)])

    def neg(self) -> "IMat":
        return IMat(self.nrows, self.ncols, [[-x for x in row] for row in self.data])

    def add(self, other: "IMat") -> "IMat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in add")
        return IMat(
            self.nrows,
            self.ncols,
            [[self.data[i][j] + other.data[i][j] for j in range(self.ncols)] for i in range(self.nrows)],
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IMat) and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.shape, self.data))

    def __repr__(self) -> str:
        return f"IMat({self.nrows}x{self.ncols}, {[list(r) for r in self.data]})"


def mat(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IMat:
    """Shorthand constructor from a list of rows."""
    return IMat.from_rows(rows, ncols=ncols)


def det(m: IMat) -> int:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(row) for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNF:
    """Smith normal form ``D = U @ M @ V`` with unimodular U, V.

    ``u_inv`` and ``v_inv`` are the exact integer inverses of U and V,
    tracked during the reduction, so lattice bases can be read off without
    a separate inversion step.
    """

    u: IMat
    d: IMat
    v: IMat
    u_inv: IMat
    v_inv: IMat

    def diagonal(self) -> list[int]:
        return [self.d.data[i][i] for i in range(min(self.d.nrows, self.d.ncols))]


def smith_normal_form(m: IMat | Sequence[Sequence[int]], ncols: int | None = None) -> SNF:
    """Diagonalise an integer matrix by unimodular row and column operations.

    The diagonal is non-negative and satisfies ``d1 | d2 | ...``; trailing
    diagonal entries may be zero.  All arithmetic is exact.
    """
    if not isinstance(m, IMat):
        m = IMat.from_rows(m, ncols=ncols)
    nr, nc = m.nrows, m.ncols
    d = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    ui = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    vi = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_add(i: int, j: int, q: int) -> None:
        # row_i += q * row_j ; mirrored on U, inverse op on U^-1 columns
        for t in range(nc):
            d[i][t] += q * d[j][t]
        for t in range(nr):
            u[i][t] += q * u[j][t]
        for t in range(nr):
            ui[t][j] -= q * ui[t][i]

    def col_add(i: int, j: int, q: int) -> None:
        # col_i += q * col_j
        for t in range(nr):
            d[t][i] += q * d[t][j]
        for t in range(nc):
            v[t][i] += q * v[t][j]
        for t in range(nc):
            vi[j][t] -= q * vi[i][t]

    def row_swap(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for t in range(nr):
            ui[t][i], ui[t][j] = ui[t][j], ui[t][i]

    def col_swap(i: int, j: int) -> None:
        for t in range(nr):
            d[t][i], d[t][j] = d[t][j], d[t][i]
        for t in range(nc):
            v[t][i], v[t][j] = v[t][j], v[t][i]
        vi[i], vi[j] = vi[j], vi[i]

    def row_neg(i: int) -> None:
        for t in range(nc):
            d[i][t] = -d[i][t]
        for t in range(nr):
            u[i][t] = -u[i][t]
        for t in range(nr):
            ui[t][i] = -ui[t][i]

    k = min(nr, nc)

    def diagonalise() -> None:
        for t in range(k):
            # pick the nonzero entry of smallest magnitude as pivot
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = d[i][j]
                    if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return
            i0, j0 = best
            if i0 != t:
                row_swap(t, i0)
            if j0 != t:
                col_swap(t, j0)
            while True:
                dirty = False
                for i in range(t + 1, nr):
                    if d[i][t]:
                        q = d[i][t] // d[t][t]
                        row_add(i, t, -q)
                        if d[i][t]:
                            row_swap(t, i)
                            dirty = True
                for j in range(t + 1, nc):
                    if d[t][j]:
                        q = d[t][j] // d[t][t]
                        col_add(j, t, -q)
                        if d[t][j]:
                            col_swap(t, j)
                            dirty = True
                if not dirty and all(d[i][t] == 0 for i in range(t + 1, nr)) and all(
                    d[t][j] == 0 for j in range(t + 1, nc)
                ):
                    break

    diagonalise()
    # enforce the divisibility chain d1 | d2 | ... (zeros are already trailing
    # because the pivot search only stops when the remaining block vanishes)
    while True:
        bad = None
        for i in range(k - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a != 0 and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        col_add(bad, bad + 1, 1)
        diagonalise()
    for i in range(k):
        if d[i][i] < 0:
            row_neg(i)
    return SNF(
        u=IMat(nr, nr, u),
        d=IMat(nr, nc, d),
        v=IMat(nc, nc, v),
        u_inv=IMat(nr, nr, ui),
        v_inv=IMat(nc, nc, vi),
    )


# ---------------------------------------------------------------------------
# abelian groups and homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbGroup:
    """A finitely generated abelian group in canonical invariant-factor form.

    >>> AbGroup((2, 4, 0))
    AbGroup(factors=(2, 4, 0))
    >>> str(AbGroup((2, 4, 0))), str(AbGroup(()))
    ('C2 x C4 x Z', '0')
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        fs = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", fs)
        for f in fs:
            if f < 0 or f == 1:
                raise ValueError(f"invalid invariant factor {f}")
        for a, b in zip(fs, fs[1:]):
            if a == 0 and b != 0:
                raise ValueError("free factors must come last")
            if a != 0 and b != 0 and b % a != 0:
                raise ValueError(f"factors not in divisibility order: {a}, {b}")

    @property
    def ngens(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    def is_trivial(self) -> bool:
        return not self.factors

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if not self.is_finite():
            return None
        n = 1
        for f in self.factors:
            n *= f
        return n

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise ValueError("coordinate length mismatch")
        return tuple(int(x) % f if f else int(x) for x, f in zip(vec, self.factors))

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite():
            raise UnsupportedInstance(f"cannot enumerate the infinite group {self}")
        return itertools.product(*(range(f) for f in self.factors))

    def relation_cols(self) -> IMat:
        """Columns spanning the relation lattice in Z^ngens."""
        cols = [
            [f if i == j else 0 for i in range(self.ngens)]
            for j, f in enumerate(self.factors)
            if f != 0
        ]
        return IMat.from_cols(cols, nrows=self.ngens)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join("Z" if f == 0 else f"C{f}" for f in self.factors)


TRIVIAL = AbGroup(())
Z = AbGroup((0,))


def cyclic(n: int) -> AbGroup:
    """Z/n, or Z when n == 0."""
    return AbGroup(()) if n == 1 else AbGroup((n,))


@dataclass(frozen=True)
class AbHom:
    """A homomorphism between abelian groups in invariant-factor form.

    Column j of ``matrix`` is the image of the domain's j-th generator in
    codomain coordinates.  Matrices are normalised entrywise modulo the
    codomain factors, so two equal homomorphisms compare equal.
    """

    dom: AbGroup
    cod: AbGroup
    matrix: IMat

    def __post_init__(self) -> None:
        m = self.matrix
        if m.shape != (self.cod.ngens, self.dom.ngens):
            raise ValueError(
                f"matrix shape {m.shape} does not match hom "
                f"{self.dom.ngens} -> {self.cod.ngens} generators"
            )
        norm = IMat(
            m.nrows,
            m.ncols,
            [
                [x % f if f else x for x in row]
                for row, f in zip(m.data, self.cod.factors)
            ],
        )
        object.__setattr__(self, "matrix", norm)
        # well-definedness: torsion generators must map to torsion of
        # compatible order
        for j, dj in enumerate(self.dom.factors):
            if dj == 0:
                continue
            for i, fi in enumerate(self.cod.factors):
                x = dj * norm.data[i][j]
                if (x % fi if fi else x) != 0:
                    raise ValueError(
                        f"ill-defined hom: generator {j} of order {dj} maps "
                        f"outside the relation lattice (row {i})"
                    )

    @classmethod
    def identity(cls, g: AbGroup) -> "AbHom":
        return cls(g, g, IMat.identity(g.ngens))

    @classmethod
    def zero(cls, dom: AbGroup, cod: AbGroup) -> "AbHom":
        return cls(dom, cod, IMat.zeros(cod.ngens, dom.ngens))

    @classmethod
    def from_columns(cls, dom: AbGroup, cod: AbGroup, cols: Sequence[Sequence[int]]) -> "AbHom":
        return cls(dom, cod, IMat.from_cols(cols, nrows=cod.ngens))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.cod.reduce(self.matrix.vec(list(vec)))

    def then(self, other: "AbHom") -> "AbHom":
        """Diagrammatic composite: first self, then other."""
        if self.cod != other.dom:
            raise ValueError("composition mismatch")
        return AbHom(self.dom, other.cod, other.matrix @ self.matrix)

    def add(self, other: "AbHom") -> "AbHom":
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ValueError("hom addition mismatch")
        return AbHom(self.dom, self.cod, self.matrix.add(other.matrix))

    def neg(self) -> "AbHom":
        return AbHom(self.dom, self.cod, self.matrix.neg())

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def kernel(self) -> tuple[AbGroup, "AbHom"]:
        return kernel_subgroup(self)

    def image_cols(self) -> IMat:
        """Columns spanning im(h) + (relations of cod) as a lattice in Z^cod."""
        return self.matrix.hstack(self.cod.relation_cols())

    def is_injective(self) -> bool:
        k, _ = self.kernel()
        return k.is_trivial()

    def is_surjective(self) -> bool:
        return quotient_by_columns(self.cod.ngens, self.image_cols()).group.is_trivial()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


# ---------------------------------------------------------------------------
# lattice machinery
# ---------------------------------------------------------------------------


class LatticeQuotient:
    """The quotient of two nested integer lattices big/small in Z^n.

    Exposes the quotient as a canonical `AbGroup`, ambient representative
    vectors for its generators, and a linear projection taking any vector
    of the big lattice to its class coordinates.
    """

    def __init__(self, ambient: int, big_cols: IMat, small_cols: IMat):
        if big_cols.nrows != ambient or small_cols.nrows != ambient:
            raise ValueError("lattice generator rows must match ambient dimension")
        self.ambient = ambient
        s1 = smith_normal_form(big_cols)
        diag1 = s1.diagonal()
        self._rank = sum(1 for x in diag1 if x != 0)
        self._d1 = diag1
        self._u1 = s1.u
        # basis of the big lattice: columns u_inv * (d_j e_j), j < rank
        self._basis = IMat.from_cols(
            [[s1.u_inv.data[i][j] * diag1[j] for i in range(ambient)] for j in range(self._rank)],
            nrows=ambient,
        )
        # express the small generators in that basis
        xcols = [self._solve_in_big(small_cols.col(j)) for j in range(small_cols.ncols)]
        x = IMat.from_cols(xcols, nrows=self._rank)
        s2 = smith_normal_form(x)
        diag2 = s2.diagonal()
        facs = [diag2[i] if i < len(diag2) else 0 for i in range(self._rank)]
        keep = [i for i, f in enumerate(facs) if f != 1]
        self._u2 = s2.u
        self._keep = keep
        self.group = AbGroup(tuple(facs[i] for i in keep))
        self.reps: list[list[int]] = []
        for i in keep:
            y = s2.u_inv.col(i)
            self.reps.append(self._basis.vec(y))

    def _solve_in_big(self, vec: Sequence[int]) -> list[int]:
        w = self._u1.vec(list(vec))
        out = []
        for j in range(self._rank):
            q, r = divmod(w[j], self._d1[j])
            if r != 0:
                raise ValueError("vector not in the big lattice")
            out.append(q)
        for j in range(self._rank, len(w)):
            if w[j] != 0:
                raise ValueError("vector not in the big lattice")
        return out

    def contains(self, vec: Sequence[int]) -> bool:
        try:
            self._solve_in_big(vec)
            return True
        except ValueError:
            return False

    def coords_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Class coordinates of a big-lattice vector in the quotient group."""
        y = self._solve_in_big(vec)
        z = self._u2.vec(y)
        return self.group.reduce([z[i] for i in self._keep])


def quotient_by_columns(ambient: int, rel_cols: IMat) -> LatticeQuotient:
    """Z^ambient modulo the column span of ``rel_cols``, with witness maps."""
    return LatticeQuotient(ambient, IMat.identity(ambient), rel_cols)


def cokernel(m: IMat | Sequence[Sequence[int]], ncols: int | None = None) -> AbGroup:
    """The canonical form of Z^rows / column-span(M)."""
    if not isinstance(m, IMat):
        m = IMat.from_rows(m, ncols=ncols)
    return quotient_by_columns(m.nrows, m).group


def solution_lattice(m: IMat, row_moduli: Sequence[int]) -> IMat:
    """Generators of the lattice { x : (M x)_i == 0 mod row_moduli[i] }.

    A modulus of 0 means the row must vanish exactly over Z.
    """
    if m.nrows != len(row_moduli):
        raise ValueError("row moduli length mismatch")
    slack = IMat.from_cols(
        [
            [mod if i == r else 0 for i in range(m.nrows)]
            for r, mod in enumerate(row_moduli)
            if mod != 0
        ],
        nrows=m.nrows,
    )
    ext = m.hstack(slack)
    s = smith_normal_form(ext)
    diag = s.diagonal()
    gens = []
    for j in range(ext.ncols):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            gens.append(s.v.col(j)[: m.ncols])
    return IMat.from_cols(gens, nrows=m.ncols)


def solve_linear(
    m: IMat | Sequence[Sequence[int]],
    b: Sequence[int],
    row_moduli: Sequence[int] | None = None,
    ncols: int | None = None,
) -> tuple[list[int], IMat] | None:
    """Solve M x == b row-wise modulo the given moduli (0 meaning over Z).

    Returns a particular solution together with generators of the
    homogeneous solution lattice, or None when no solution exists.
    """
    if not isinstance(m, IMat):
        m = IMat.from_rows(m, ncols=ncols)
    if row_moduli is None:
        row_moduli = [0] * m.nrows
    if len(b) != m.nrows or len(row_moduli) != m.nrows:
        raise ValueError("dimension mismatch")
    slack = IMat.from_cols(
        [
            [mod if i == r else 0 for i in range(m.nrows)]
            for r, mod in enumerate(row_moduli)
            if mod != 0
        ],
        nrows=m.nrows,
    )
    ext = m.hstack(slack)
    s = smith_normal_form(ext)
    diag = s.diagonal()
    ub = s.u.vec(list(b))
    w = [0] * ext.ncols
    for i in range(ext.nrows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            q, r = divmod(ub[i], di)
            if r != 0:
                return None
            w[i] = q
    z = s.v.vec(w)
    x = z[: m.ncols]
    return x, solution_lattice(m, row_moduli)


def kernel_subgroup(h: AbHom) -> tuple[AbGroup, AbHom]:
    """The kernel of h as an abstract group with its embedding into dom(h)."""
    lat = solution_lattice(h.matrix, h.cod.factors)
    rel = h.dom.relation_cols()
    lq = LatticeQuotient(h.dom.ngens, lat.hstack(rel), rel)
    emb = AbHom.from_columns(lq.group, h.dom, lq.reps)
    return lq.group, emb


# ---------------------------------------------------------------------------
# products, direct sums, constrained subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    """A canonical direct sum with injections and projections per summand."""

    group: AbGroup
    summands: tuple[AbGroup, ...]
    injections: tuple[AbHom, ...]
    projections: tuple[AbHom, ...]
    moduli: tuple[int, ...]
    offsets: tuple[int, ...]
    to_canonical: IMat
    from_canonical: IMat

    def pack(self, parts: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Canonical coordinates of an element given per-summand coordinates."""
        flat: list[int] = []
        for part in parts:
            flat.extend(part)
        return self.group.reduce(self.to_canonical.vec(flat))

    def unpack(self, vec: Sequence[int]) -> list[tuple[int, ...]]:
        flat = self.from_canonical.vec(list(vec))
        out = []
        for g, off in zip(self.summands, self.offsets):
            out.append(g.reduce(flat[off : off + g.ngens]))
        return out


def canonical_of_moduli(moduli: Sequence[int]) -> tuple[AbGroup, IMat, IMat]:
    """Canonicalise the diagonal presentation Z^n / (moduli_i e_i).

    Returns the canonical group with matrices mapping presentation
    coordinates to canonical coordinates and back.
    """
    n = len(moduli)
    lq = quotient_by_columns(n, IMat.diag(list(moduli)))
    to_c = IMat.from_cols(
        [list(lq.coords_of([1 if i == j else 0 for i in range(n)])) for j in range(n)],
        nrows=lq.group.ngens,
    )
    from_c = IMat.from_cols(lq.reps, nrows=n)
    return lq.group, to_c, from_c


def direct_sum(groups: Sequence[AbGroup]) -> DirectSum:
    moduli: list[int] = []
    offsets: list[int] = []
    for g in groups:
        offsets.append(len(moduli))
        moduli.extend(g.factors)
    total, to_c, from_c = canonical_of_moduli(moduli)
    injections = []
    projections = []
    for g, off in zip(groups, offsets):
        emb_cols = [to_c.col(off + j) for j in range(g.ngens)]
        injections.append(AbHom.from_columns(g, total, emb_cols))
        proj_rows = [from_c.data[off + j] for j in range(g.ngens)]
        projections.append(AbHom(total, g, IMat.from_rows(proj_rows, ncols=total.ngens)))
    return DirectSum(
        group=total,
        summands=tuple(groups),
        injections=tuple(injections),
        projections=tuple(projections),
        moduli=tuple(moduli),
        offsets=tuple(offsets),
        to_canonical=to_c,
        from_canonical=from_c,
    )


Constraint = tuple[Sequence[int], int]


class ProductSubgroup:
    """A subgroup of a coordinate product cut out by linear conditions.

    The ambient group is the product of cyclic groups with the given
    moduli (0 meaning Z).  Each constraint is a pair (coefficients,
    modulus) demanding ``sum(c_k x_k) == 0 mod modulus`` (0: over Z).
    """

    def __init__(self, moduli: Sequence[int], constraints: Sequence[Constraint] = ()):
        self.moduli = tuple(int(m) for m in moduli)
        n = len(self.moduli)
        rows = []
        row_mods = []
        for coeffs, mod in constraints:
            coeffs = list(coeffs)
            if len(coeffs) != n:
                raise ValueError("constraint length mismatch")
            for c, m in zip(coeffs, self.moduli):
                x = c * m
                if (x % mod if mod else x) != 0:
                    raise ValueError("constraint not well-defined on the product")
            rows.append(coeffs)
            row_mods.append(int(mod))
        rel = IMat.diag(list(self.moduli))
        rel = IMat.from_cols([rel.col(j) for j in range(n) if self.moduli[j] != 0], nrows=n)
        if rows:
            lat = solution_lattice(IMat.from_rows(rows, ncols=n), row_mods)
        else:
            lat = IMat.identity(n)
        self._lq = LatticeQuotient(n, lat.hstack(rel), rel)
        self.group = self._lq.group
        self.rep_vectors = [self._reduce(r) for r in self._lq.reps]

    def _reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % m if m else x for x, m in zip(vec, self.moduli))

    def contains(self, vec: Sequence[int]) -> bool:
        return self._lq.contains(vec)

    def coords_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self._lq.coords_of(vec)

    def vector_of(self, coords: Sequence[int]) -> tuple[int, ...]:
        flat = [0] * len(self.moduli)
        for c, rep in zip(coords, self.rep_vectors):
            for i, x in enumerate(rep):
                flat[i] += c * x
        return self._reduce(flat)

    def enumerate_vectors(self) -> Iterator[tuple[int, ...]]:
        for coords in self.group.elements():
            yield self.vector_of(coords)


# ---------------------------------------------------------------------------
# Hom groups
# ---------------------------------------------------------------------------


class HomGroup:
    """The group of homomorphisms A -> B satisfying extra linear conditions.

    Matrix entries are flattened row-major: entry (i, j) -- the i-th
    codomain coordinate of the image of domain generator j -- sits at index
    ``i * A.ngens + j``.  Constraints are linear in these entries.
    """

    def __init__(self, dom: AbGroup, cod: AbGroup, constraints: Sequence[Constraint] = ()):
        self.dom = dom
        self.cod = cod
        nd, nc = dom.ngens, cod.ngens
        moduli = [cod.factors[i] for i in range(nc) for _ in range(nd)]
        rows: list[Constraint] = []
        for j, dj in enumerate(dom.factors):
            if dj == 0:
                continue
            for i in range(nc):
                coeffs = [0] * (nd * nc)
                coeffs[i * nd + j] = dj
                rows.append((coeffs, cod.factors[i]))
        rows.extend(constraints)
        self._sub = ProductSubgroup(moduli, rows)
        self.group = self._sub.group

    def hom_of(self, entries: Sequence[int]) -> AbHom:
        nd = self.dom.ngens
        rows = [list(entries[i * nd : (i + 1) * nd]) for i in range(self.cod.ngens)]
        return AbHom(self.dom, self.cod, IMat.from_rows(rows, ncols=nd))

    def entries_of(self, h: AbHom) -> list[int]:
        return [x for row in h.matrix.data for x in row]

    def coords_of(self, h: AbHom) -> tuple[int, ...]:
        return self._sub.coords_of(self.entries_of(h))

    def basis(self) -> list[AbHom]:
        return [self.hom_of(v) for v in self._sub.rep_vectors]

    def enumerate(self) -> Iterator[AbHom]:
        for v in self._sub.enumerate_vectors():
            yield self.hom_of(v)


def hom_group(dom: AbGroup, cod: AbGroup, constraints: Sequence[Constraint] = ()) -> HomGroup:
    """All homomorphisms dom -> cod subject to integer-linear constraints."""
    return HomGroup(dom, cod, constraints)


def lattices_equal(ambient: int, cols_a: IMat, cols_b: IMat) -> bool:
    """Whether two column-generated lattices in Z^ambient coincide."""
    qa = LatticeQuotient(ambient, cols_a, IMat.from_cols([], nrows=ambient))
    qb = LatticeQuotient(ambient, cols_b, IMat.from_cols([], nrows=ambient))
    return all(qa.contains(cols_b.col(j)) for j in range(cols_b.ncols)) and all(
        qb.contains(cols_a.col(j)) for j in range(cols_a.ncols)
    )


def subgroups_equal(h1: AbHom, h2: AbHom) -> bool:
    """Whether two subgroup inclusions into the same group have equal image."""
    if h1.cod != h2.cod:
        raise ValueError("subgroups of different ambient groups")
    return lattices_equal(h1.cod.ngens, h1.image_cols(), h2.image_cols())
