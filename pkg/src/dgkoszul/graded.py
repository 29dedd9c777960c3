"""Bigraded vector spaces with named bases and Koszul-sign-correct maps.

Degrees are cohomological (differentials raise degree by 1).  The optional
weight is an auxiliary grading used to certify finiteness of computation
windows; structure maps are either weight-homogeneous with a declared
shift, weight-nonincreasing ("filtered"), or weight-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import UnboundedWindowError
from .linalg import SparseMatrix

# Sentinel for weight-nonincreasing maps between weighted spaces.
FILTERED = "filtered"

TENSOR_SEP = "⊗"


class Bidegree(NamedTuple):
    degree: int
    weight: int | None = None

    def sort_key(self):
        return (self.degree, 0 if self.weight is None else 1, self.weight or 0)


@dataclass(frozen=True)
class Window:
    """Rectangular bidegree range; a None bound is unbounded on that side."""

    degree_lo: int | None = None
    degree_hi: int | None = None
    weight_lo: int | None = None
    weight_hi: int | None = None

    def contains(self, degree, weight=None):
        if self.degree_lo is not None and degree < self.degree_lo:
            return False
        if self.degree_hi is not None and degree > self.degree_hi:
            return False
        if weight is not None:
            if self.weight_lo is not None and weight < self.weight_lo:
                return False
            if self.weight_hi is not None and weight > self.weight_hi:
                return False
        return True

    def degrees(self):
        if self.degree_lo is None or self.degree_hi is None:
            raise UnboundedWindowError("window has unbounded degree range")
        return range(self.degree_lo, self.degree_hi + 1)

    def weights(self):
        if self.weight_lo is None or self.weight_hi is None:
            raise UnboundedWindowError("window has unbounded weight range")
        return range(self.weight_lo, self.weight_hi + 1)

    def grow_degree(self, by=1):
        lo = None if self.degree_lo is None else self.degree_lo - by
        hi = None if self.degree_hi is None else self.degree_hi + by
        return Window(lo, hi, self.weight_lo, self.weight_hi)


class GradedSpace:
    """Graded vector space with an ordered named basis per degree.

    `trusted` records where the stored table is known to agree with the
    mathematical object it truncates: None means the table is the whole
    space ("exact"); a (lo, hi) weight band means the table is complete
    for weights inside the band and unknown outside.
    """

    __slots__ = ("field", "_slices", "trusted", "_index")

    def __init__(self, field, slices, trusted=None):
        self.field = field
        self._slices = {}
        for d in sorted(slices):
            basis = tuple(slices[d])
            if basis:
                self._slices[d] = basis
        self.trusted = trusted
        self._index = {}
        seen = set()
        for d, basis in self._slices.items():
            for pos, (name, _w) in enumerate(basis):
                if name in seen:
                    raise ValueError(f"duplicate basis name {name!r}")
                seen.add(name)
                self._index[name] = (d, pos)

    @classmethod
    def ground(cls, field, name="1"):
        return cls(field, {0: [(name, 0)]})

    @property
    def exact(self):
        return self.trusted is None

    def degrees(self):
        return sorted(self._slices)

    def basis(self, degree):
        return self._slices.get(degree, ())

    def dim(self, degree):
        return len(self._slices.get(degree, ()))

    def total_dim(self):
        return sum(len(b) for b in self._slices.values())

    def bidegrees(self):
        out = []
        for d in self.degrees():
            seen = []
            for _n, w in self.basis(d):
                if w not in seen:
                    seen.append(w)
            for w in sorted(seen, key=lambda x: (x is None, x)):
                out.append(Bidegree(d, w))
        return out

    def dim_at(self, degree, weight):
        return len(self.positions_at(degree, weight))

    def positions_at(self, degree, weight):
        return [i for i, (_n, w) in enumerate(self.basis(degree)) if w == weight]

    def locate(self, name):
        """(degree, position) of a basis element."""
        return self._index[name]

    def weight_of(self, name):
        d, pos = self._index[name]
        return self._slices[d][pos][1]

    def degree_of(self, name):
        return self._index[name][0]

    def has_weights(self):
        return all(w is not None for b in self._slices.values() for (_n, w) in b)

    def weight_support(self):
        ws = [w for b in self._slices.values() for (_n, w) in b if w is not None]
        if not ws:
            return (None, None)
        return (min(ws), max(ws))

    def is_trusted(self, degree, weight=None):
        if self.trusted is None:
            return True
        lo, hi = self.trusted
        if weight is None:
            return False
        if lo is not None and weight < lo:
            return False
        if hi is not None and weight > hi:
            return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.field == other.field
            and self._slices == other._slices
        )

    def __repr__(self):
        dims = {d: self.dim(d) for d in self.degrees()}
        return f"GradedSpace({dims}, trusted={'exact' if self.exact else self.trusted})"


def _combine_trust(a, b):
    """Trusted band of a tensor product, conservatively.

    Exact factors combine to exact.  Otherwise the rule is sound only when
    all stored weights of both factors share one sign; the truncated side's
    bound then caps the product's trusted band.
    """
    if a.trusted is None and b.trusted is None:
        return None
    sa, sb = a.weight_support(), b.weight_support()
    if None in sa or None in sb:
        return (0, -1)  # unweighted + truncated: trust nothing
    if sa[0] >= 0 and sb[0] >= 0:
        his = []
        for sp in (a, b):
            if sp.trusted is not None:
                hi = sp.trusted[1]
                if hi is None:
                    continue
                his.append(hi)
        return (None, min(his)) if his else None
    if sa[1] <= 0 and sb[1] <= 0:
        los = []
        for sp in (a, b):
            if sp.trusted is not None:
                lo = sp.trusted[0]
                if lo is None:
                    continue
                los.append(lo)
        return (max(los), None) if los else None
    return (0, -1)


def tensor_space(a, b):
    """Tensor product with canonical "x⊗y" basis names.

    Basis order within a degree: first factor's degree ascending, then first
    factor's basis order, then second factor's.
    """
    assert a.field == b.field
    degs = sorted({da + db for da in a.degrees() for db in b.degrees()})
    ordered = {}
    for d in degs:
        bucket = []
        for da in a.degrees():
            db = d - da
            for (na, wa) in a.basis(da):
                for (nb, wb) in b.basis(db):
                    w = None if (wa is None or wb is None) else wa + wb
                    bucket.append((f"{na}{TENSOR_SEP}{nb}", w))
        ordered[d] = bucket
    return GradedSpace(a.field, ordered, trusted=_combine_trust(a, b))


class _TensorIndex:
    """Column/row offsets of (da, db) blocks inside tensor_space(a, b)."""

    def __init__(self, a, b):
        self.a = a
        self.b = b
        self.offsets = {}
        degs = set()
        for da in a.degrees():
            for db in b.degrees():
                degs.add(da + db)
        for d in sorted(degs):
            off = 0
            for da in a.degrees():
                db = d - da
                na, nb = a.dim(da), b.dim(db)
                if na and nb:
                    self.offsets[da, db] = off
                    off += na * nb

    def offset(self, da, db):
        return self.offsets.get((da, db))


class GradedMap:
    """Degree-homogeneous linear map stored as per-degree matrix blocks.

    `weight` is the declared weight behaviour: an int shift (validated
    entrywise), FILTERED (entries may only decrease weight), or None (no
    weight bookkeeping).
    """

    __slots__ = ("source", "target", "degree", "weight", "blocks")

    def __init__(self, source, target, degree, weight=0, blocks=None, check=True):
        self.source = source
        self.target = target
        self.degree = degree
        self.weight = weight
        self.blocks = {}
        if blocks:
            for d, m in blocks.items():
                if not m.is_zero():
                    self.blocks[d] = m
        if check:
            self._check()

    def _check(self):
        for d, m in self.blocks.items():
            src = self.source.basis(d)
            tgt = self.target.basis(d + self.degree)
            assert m.ncols == len(src), f"block {d}: {m.ncols} cols vs {len(src)} basis"
            assert m.nrows == len(tgt), f"block {d}: {m.nrows} rows vs {len(tgt)} basis"
            if self.weight is None:
                continue
            for (i, j), _v in m.entries.items():
                ws = src[j][1]
                wt = tgt[i][1]
                if ws is None or wt is None:
                    raise ValueError("weighted map over unweighted basis")
                if self.weight == FILTERED:
                    if wt > ws:
                        raise ValueError(
                            f"filtered map raises weight: {src[j][0]} -> {tgt[i][0]}"
                        )
                elif wt != ws + self.weight:
                    raise ValueError(
                        f"weight shift violated: {src[j][0]} (w={ws}) -> {tgt[i][0]} (w={wt})"
                    )

    @classmethod
    def from_entries(cls, source, target, degree, entries, weight=0):
        """entries: iterable of (source_name, target_name, scalar)."""
        blocks = {}
        field = source.field
        for sname, tname, coeff in entries:
            c = field.of(coeff)
            if c == field.zero:
                continue
            d, j = source.locate(sname)
            dt, i = target.locate(tname)
            assert dt == d + degree, f"{sname}->{tname} has degree {dt - d}, map has {degree}"
            blocks.setdefault(d, {})[(i, j)] = field.add(
                blocks.get(d, {}).get((i, j), field.zero), c
            )
        mats = {
            d: SparseMatrix(field, len(target.basis(d + degree)), len(source.basis(d)), ent)
            for d, ent in blocks.items()
        }
        return cls(source, target, degree, weight=weight, blocks=mats)

    @classmethod
    def zero_map(cls, source, target, degree, weight=0):
        return cls(source, target, degree, weight=weight, blocks={})

    @classmethod
    def identity(cls, space):
        blocks = {
            d: SparseMatrix.identity(space.field, space.dim(d)) for d in space.degrees()
        }
        weight = 0 if space.has_weights() else None
        return cls(space, space, 0, weight=weight, blocks=blocks)

    def block(self, degree):
        m = self.blocks.get(degree)
        if m is None:
            return SparseMatrix.zero(
                self.source.field,
                self.target.dim(degree + self.degree),
                self.source.dim(degree),
            )
        return m

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            return False
        degs = set(self.blocks) | set(other.blocks)
        return all(self.block(d) == other.block(d) for d in degs)

    def add(self, other):
        assert self.source == other.source and self.target == other.target
        assert self.degree == other.degree
        blocks = {}
        for d in set(self.blocks) | set(other.blocks):
            blocks[d] = self.block(d).add(other.block(d))
        weight = self.weight if self.weight == other.weight else FILTERED
        return GradedMap(self.source, self.target, self.degree, weight=weight, blocks=blocks)

    def sub(self, other):
        return self.add(other.scale(self.source.field.neg(self.source.field.one)))

    def scale(self, c):
        return GradedMap(
            self.source,
            self.target,
            self.degree,
            weight=self.weight,
            blocks={d: m.scale(c) for d, m in self.blocks.items()},
            check=False,
        )

    def compose(self, inner):
        """self ∘ inner (apply inner first)."""
        assert inner.target == self.source, "composition mismatch"
        blocks = {}
        for d, m in inner.blocks.items():
            outer = self.blocks.get(d + inner.degree)
            if outer is None:
                continue
            prod = outer.mul(m)
            if not prod.is_zero():
                blocks[d] = prod
        if self.weight is None or inner.weight is None:
            weight = None
        elif self.weight == FILTERED or inner.weight == FILTERED:
            weight = FILTERED
        else:
            weight = self.weight + inner.weight
        return GradedMap(
            inner.source, self.target, self.degree + inner.degree, weight=weight, blocks=blocks
        )

    def apply(self, degree, vec):
        """Apply to {name: scalar} supported in the given source degree."""
        src = self.source.basis(degree)
        idx = {name: i for i, (name, _w) in enumerate(src)}
        col = {idx[n]: c for n, c in vec.items() if c != self.source.field.zero}
        out = self.block(degree).apply(col)
        tgt = self.target.basis(degree + self.degree)
        return {tgt[i][0]: c for i, c in sorted(out.items())}

    def entries_named(self):
        """All entries as (source_name, target_name, scalar), deterministic order."""
        out = []
        for d in sorted(self.blocks):
            src = self.source.basis(d)
            tgt = self.target.basis(d + self.degree)
            for (i, j), v in self.blocks[d].items():
                out.append((src[j][0], tgt[i][0], v))
        return out

    def cell_block(self, degree, weight, target_weight=None):
        """Sub-matrix between the weight-w part of the source degree slice
        and the weight-(w + shift) part of the target slice."""
        shift = self.weight if isinstance(self.weight, int) else 0
        tw = target_weight if target_weight is not None else weight + shift
        cols = self.source.positions_at(degree, weight)
        rows = self.target.positions_at(degree + self.degree, tw)
        return _submatrix(self.block(degree), rows, cols)

    def cap_block(self, degree, cap):
        """Sub-matrix between weight <= cap parts of source and target slices."""
        cols = [
            i for i, (_n, w) in enumerate(self.source.basis(degree)) if w is not None and w <= cap
        ]
        rows = [
            i
            for i, (_n, w) in enumerate(self.target.basis(degree + self.degree))
            if w is not None and w <= cap
        ]
        return _submatrix(self.block(degree), rows, cols)


def _submatrix(m, rows, cols):
    rpos = {r: i for i, r in enumerate(rows)}
    cpos = {c: j for j, c in enumerate(cols)}
    entries = {}
    for (i, j), v in m.entries.items():
        if i in rpos and j in cpos:
            entries[rpos[i], cpos[j]] = v
    return SparseMatrix(m.field, len(rows), len(cols), entries)


def tensor_map(f, g, source=None, target=None):
    """Koszul-signed tensor product of maps.

    (f⊗g)(x⊗y) = (-1)^(|g|·|x|) f(x)⊗g(y), with |x| the cohomological
    degree of x.  `source`/`target` may be passed to reuse existing tensor
    spaces (they must equal tensor_space of the factors).
    """
    src = source if source is not None else tensor_space(f.source, g.source)
    tgt = target if target is not None else tensor_space(f.target, g.target)
    field = src.field
    src_index = _TensorIndex(f.source, g.source)
    tgt_index = _TensorIndex(f.target, g.target)
    blocks = {}
    for da in f.source.degrees():
        fb = f.blocks.get(da)
        for db in g.source.degrees():
            gb = g.blocks.get(db)
            d = da + db
            col_off = src_index.offset(da, db)
            row_off = tgt_index.offset(da + f.degree, db + g.degree)
            ncols_b = g.source.dim(db)
            nrows_b = g.target.dim(db + g.degree)
            # kron of the two blocks, with the Koszul sign
            sign = field.one if (g.degree * da) % 2 == 0 else field.neg(field.one)
            ent = blocks.setdefault(d, {})
            if fb is not None and gb is not None:
                for (i1, j1), v1 in fb.entries.items():
                    for (i2, j2), v2 in gb.entries.items():
                        ent[row_off + i1 * nrows_b + i2, col_off + j1 * ncols_b + j2] = field.mul(
                            sign, field.mul(v1, v2)
                        )
    mats = {}
    for d, ent in blocks.items():
        if ent:
            mats[d] = SparseMatrix(field, tgt.dim(d + f.degree + g.degree), src.dim(d), ent)
    if f.weight is None or g.weight is None:
        weight = None
    elif f.weight == FILTERED or g.weight == FILTERED:
        weight = FILTERED
    else:
        weight = f.weight + g.weight
    return GradedMap(src, tgt, f.degree + g.degree, weight=weight, blocks=mats)


def alignment(src, dst):
    """Identity map matching equal basis names across two layouts.

    Tensor spaces built with different bracketing carry the same flat
    "x⊗y⊗z" names in different orders; this permutation map converts
    between them.  Bases must agree as sets per degree.
    """
    field = src.field
    blocks = {}
    for d in src.degrees():
        sb = src.basis(d)
        db = dst.basis(d)
        pos = {n: i for i, (n, _w) in enumerate(db)}
        if len(pos) != len(sb) or any(n not in pos for (n, _w) in sb):
            raise ValueError(f"bases differ at degree {d}")
        entries = {(pos[n], j): field.one for j, (n, _w) in enumerate(sb)}
        blocks[d] = SparseMatrix(field, len(db), len(sb), entries)
    weight = 0 if src.has_weights() and dst.has_weights() else None
    return GradedMap(src, dst, 0, weight=weight, blocks=blocks)


def tensor_many(spaces):
    out = spaces[0]
    for s in spaces[1:]:
        out = tensor_space(out, s)
    return out


def tensor_maps(maps, source=None, target=None):
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    if source is not None or target is not None:
        out = GradedMap(
            source if source is not None else out.source,
            target if target is not None else out.target,
            out.degree,
            weight=out.weight,
            blocks=out.blocks,
            check=False,
        )
    return out
