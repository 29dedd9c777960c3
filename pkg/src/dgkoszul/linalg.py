"""Exact scalar arithmetic and sparse linear algebra.

Everything downstream (validators, cohomology, duality reports) reduces to
rank / kernel / image computations done here, over the rationals or a prime
field.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAComplexError


class Rationals:
    """Field of rationals; scalars are Fraction (always in lowest terms)."""

    characteristic = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    def parse(self, s):
        return Fraction(s)

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """Prime field of order p; scalars are ints in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def of(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def parse(self, s):
        return self.of(Fraction(s))

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def field_from_name(name):
    """Parse "Q" or "F<p>" into a field object."""
    if name == "Q":
        return QQ
    if name.startswith("F"):
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


class SparseMatrix:
    """Immutable-by-convention sparse matrix over an exact field.

    Entries are a dict {(row, col): nonzero scalar}; iteration over entries
    is row-major, so every algorithm downstream is deterministic.
    """

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field, nrows, ncols, entries=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                if v != field.zero:
                    self.entries[i, j] = v

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {(i, i): field.one for i in range(n)})

    @classmethod
    def from_rows(cls, field, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                fv = field.of(v)
                if fv != field.zero:
                    entries[i, j] = fv
        return cls(field, nrows, ncols, entries)

    def to_rows(self):
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def items(self):
        """Entries in row-major order."""
        return sorted(self.entries.items())

    def get(self, i, j):
        return self.entries.get((i, j), self.field.zero)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("unhashable")

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, {len(self.entries)} nz)"

    def transpose(self):
        return SparseMatrix(
            self.field, self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def add(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        f = self.field
        out = dict(self.entries)
        for key, v in other.entries.items():
            s = f.add(out.get(key, f.zero), v)
            if s == f.zero:
                out.pop(key, None)
            else:
                out[key] = s
        return SparseMatrix(f, self.nrows, self.ncols, out)

    def scale(self, c):
        f = self.field
        if c == f.zero:
            return SparseMatrix(f, self.nrows, self.ncols)
        return SparseMatrix(
            f, self.nrows, self.ncols, {k: f.mul(c, v) for k, v in self.entries.items()}
        )

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def mul(self, other):
        """Matrix product self @ other."""
        assert self.ncols == other.nrows, f"{self.ncols} != {other.nrows}"
        f = self.field
        by_row = {}
        for (j, k), w in other.entries.items():
            by_row.setdefault(j, []).append((k, w))
        out = {}
        for (i, j), v in self.entries.items():
            for k, w in by_row.get(j, ()):
                key = (i, k)
                s = f.add(out.get(key, f.zero), f.mul(v, w))
                if s == f.zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return SparseMatrix(f, self.nrows, other.ncols, out)

    def apply(self, vec):
        """Apply to a column vector given as {index: scalar}; returns same shape."""
        f = self.field
        out = {}
        for (i, j), v in self.entries.items():
            x = vec.get(j)
            if x is None:
                continue
            s = f.add(out.get(i, f.zero), f.mul(v, x))
            if s == f.zero:
                out.pop(i, None)
            else:
                out[i] = s
        return out

    def stack(self, other):
        """Rows of self on top of rows of other (same ncols)."""
        assert self.ncols == other.ncols
        out = dict(self.entries)
        for (i, j), v in other.entries.items():
            out[self.nrows + i, j] = v
        return SparseMatrix(self.field, self.nrows + other.nrows, self.ncols, out)

    def augment(self, other):
        """Columns of self followed by columns of other (same nrows)."""
        assert self.nrows == other.nrows
        out = dict(self.entries)
        for (i, j), v in other.entries.items():
            out[i, self.ncols + j] = v
        return SparseMatrix(self.field, self.nrows, self.ncols + other.ncols, out)

    def permute(self, row_perm=None, col_perm=None):
        """Reindex entries: new[row_perm[i], col_perm[j]] = old[i, j]."""
        out = {}
        for (i, j), v in self.entries.items():
            ni = row_perm[i] if row_perm else i
            nj = col_perm[j] if col_perm else j
            out[ni, nj] = v
        return SparseMatrix(self.field, self.nrows, self.ncols, out)


def row_reduce(m):
    """Reduced row-echelon form.

    Returns (rank, pivot_columns, rref).  Columns are processed left to
    right; within a column the pivot row is the candidate with the fewest
    nonzeros (Markowitz-style, to limit fill-in), ties broken by lowest
    row index, so the result is deterministic.
    """
    f = m.field
    rows = [dict() for _ in range(m.nrows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    order = list(range(m.nrows))  # order[r] = index into rows for logical row r
    pivots = []
    r = 0
    for col in range(m.ncols):
        best = None
        for k in range(r, len(order)):
            row = rows[order[k]]
            if col in row:
                nz = len(row)
                if best is None or nz < best[0]:
                    best = (nz, k)
        if best is None:
            continue
        k = best[1]
        order[r], order[k] = order[k], order[r]
        prow = rows[order[r]]
        pval = prow[col]
        if pval != f.one:
            inv = f.inv(pval)
            for j in list(prow):
                prow[j] = f.mul(inv, prow[j])
        # eliminate the column from every other row (full reduction)
        for k in range(len(order)):
            if k == r:
                continue
            row = rows[order[k]]
            c = row.get(col)
            if c is None:
                continue
            for j, pv in prow.items():
                s = f.sub(row.get(j, f.zero), f.mul(c, pv))
                if s == f.zero:
                    row.pop(j, None)
                else:
                    row[j] = s
        pivots.append(col)
        r += 1
        if r == m.nrows:
            break
    entries = {}
    for rr in range(r):
        for j, v in rows[order[rr]].items():
            entries[rr, j] = v
    rref = SparseMatrix(f, m.nrows, m.ncols, entries)
    return r, pivots, rref


def rank(m):
    return row_reduce(m)[0]


def kernel_basis(m):
    """Basis of the right kernel, as column vectors {row_index: scalar}.

    One vector per non-pivot column, in increasing column order; the free
    coordinate is set to 1.
    """
    f = m.field
    r, pivots, rref = row_reduce(m)
    pivot_set = set(pivots)
    pivot_row = {col: i for i, col in enumerate(pivots)}
    basis = []
    for j in range(m.ncols):
        if j in pivot_set:
            continue
        vec = {j: f.one}
        for (i, jj), v in rref.entries.items():
            if jj == j and i < r:
                vec[pivots[i]] = f.neg(v)
        basis.append(vec)
    return basis


def column_space_basis(m):
    """Basis of the column space as vectors {row_index: scalar}."""
    cols = {}
    for (i, j), v in m.entries.items():
        cols.setdefault(j, {})[i] = v
    r, pivots, _ = row_reduce(m)
    return [cols[j] for j in pivots]


def vectors_to_matrix(field, vecs, nrows):
    """Pack column vectors {row: scalar} into a matrix with len(vecs) columns."""
    entries = {}
    for j, vec in enumerate(vecs):
        for i, v in vec.items():
            entries[i, j] = v
    return SparseMatrix(field, nrows, len(vecs), entries)


def solve_in_span(field, generators, target, nrows):
    """Express target (column vector) in the span of generator vectors.

    Returns a coefficient list (one per generator) or None when the target
    is outside the span.  Used for quotient-class arithmetic.
    """
    mat = vectors_to_matrix(field, list(generators) + [target], nrows)
    r, pivots, rref = row_reduce(mat)
    ngen = len(generators)
    if ngen in pivots:
        return None
    coeffs = [field.zero] * ngen
    for i, col in enumerate(pivots):
        v = rref.get(i, ngen)
        coeffs[col] = v
    return coeffs


def subquotient(cycles, boundaries):
    """Dimension and representatives of ker(cycles) / im(boundaries).

    `cycles` and `boundaries` are matrices of consecutive maps: boundaries
    lands in the domain of cycles.  Raises NotAComplexError when the image
    is not contained in the kernel.  Representatives are kernel vectors
    whose classes form a basis of the quotient.
    """
    assert cycles.ncols == boundaries.nrows, "maps are not consecutive"
    f = cycles.field
    n = cycles.ncols
    image = column_space_basis(boundaries)
    for vec in image:
        if any(v != f.zero for v in cycles.apply(vec).values()):
            raise NotAComplexError("image of boundaries not contained in kernel of cycles")
    kernel = kernel_basis(cycles)
    dim = len(kernel) - len(image)
    # grow a basis of the quotient: keep kernel vectors independent mod image
    reps = []
    span = list(image)
    current_rank = rank(vectors_to_matrix(f, span, n))
    for vec in kernel:
        if len(reps) == dim:
            break
        cand = span + [vec]
        r = rank(vectors_to_matrix(f, cand, n))
        if r > current_rank:
            reps.append(vec)
            span = cand
            current_rank = r
    assert len(reps) == dim, "quotient representative extraction failed"
    return dim, reps
