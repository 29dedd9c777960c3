"""Cochain complexes, windowed cohomology with certification, and cones."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import NotAComplexError, WindowNotCertifiedError
from .graded import FILTERED, Bidegree, GradedMap, GradedSpace, Window, tensor_map, tensor_space
from .linalg import SparseMatrix, subquotient

CERT_EXACT = "exact"
CERT_TRUNCATED = "truncated-unverified"
CERT_STABLE = "truncated-stabilized"
CERT_UNSTABLE = "truncated-unstable"


class CochainComplex:
    """Graded space with a degree +1 differential."""

    def __init__(self, space, differential, check=False):
        assert differential.degree == 1, "differential must have degree +1"
        assert differential.source == space and differential.target == space
        self.space = space
        self.d = differential
        if check:
            w = self.d_squared_witness()
            if w is not None:
                raise NotAComplexError(f"d^2 != 0 at {w}")

    def d_squared_witness(self, degrees=None):
        """First nonzero entry of d∘d, or None."""
        dd = self.d.compose(self.d)
        for deg in sorted(dd.blocks):
            if degrees is not None and deg not in degrees:
                continue
            blk = dd.blocks[deg]
            if not blk.is_zero():
                (i, j), v = blk.items()[0]
                src = self.space.basis(deg)[j][0]
                tgt = self.space.basis(deg + 2)[i][0]
                return (src, tgt, v)
        return None


@dataclass
class CohomologyCell:
    dim: int
    representatives: list
    cert: str = CERT_EXACT


@dataclass
class CohomologyTable:
    cells: dict
    window: Window
    mode: str = "graded"
    notes: dict = dc_field(default_factory=dict)

    def dim(self, degree, weight=None):
        cell = self.cells.get(Bidegree(degree, weight))
        return cell.dim if cell else 0

    def dims(self):
        return {bd: cell.dim for bd, cell in sorted(self.cells.items(), key=lambda kv: kv[0].sort_key())}

    def is_exact(self):
        return all(cell.dim == 0 for cell in self.cells.values())

    def first_nonzero(self):
        for bd in sorted(self.cells, key=lambda b: b.sort_key()):
            if self.cells[bd].dim:
                return bd
        return None


def _named_reps(space, degree, positions, vecs):
    basis = space.basis(degree)
    out = []
    for vec in vecs:
        out.append({basis[positions[i]][0]: c for i, c in sorted(vec.items())})
    return out


def cohomology(cx, window, on_untrusted="error"):
    """Windowed cohomology of a weight-graded complex, cell by cell.

    Requires d^2 = 0 on the window enlarged by one degree on each side;
    raises WindowNotCertifiedError (or flags cells, per `on_untrusted`)
    when truncation of the underlying space could leak into the window.
    """
    space = cx.space
    d = cx.d
    if d.weight == FILTERED:
        raise WindowNotCertifiedError(
            "differential is filtered (weight-mixing); use cohomology_filtered"
        )
    shift = d.weight if isinstance(d.weight, int) else None
    wit = cx.d_squared_witness(degrees=set(window.grow_degree(1).degrees()))
    if wit is not None:
        raise NotAComplexError(f"d^2 != 0: {wit[0]} -> {wit[1]} = {wit[2]}")
    cells = {}
    weighted = space.has_weights() and shift is not None
    for deg in window.degrees():
        if weighted:
            if window.weight_lo is not None and window.weight_hi is not None:
                weights = list(window.weights())
            else:
                weights = sorted({w for (_n, w) in space.basis(deg)})
        else:
            weights = [None]
        for w in weights:
            if weighted:
                cert = (
                    CERT_EXACT
                    if all(space.is_trusted(deg + k, w + k * shift) for k in (-1, 0, 1))
                    else CERT_TRUNCATED
                )
                if cert != CERT_EXACT and on_untrusted == "error":
                    raise WindowNotCertifiedError(
                        f"cohomology at (degree {deg}, weight {w}) not certified: "
                        f"space truncated near that bidegree"
                    )
                cycles = d.cell_block(deg, w)
                boundaries = d.cell_block(deg - 1, w - shift)
                positions = space.positions_at(deg, w)
            else:
                if not space.exact:
                    if on_untrusted == "error":
                        raise WindowNotCertifiedError(
                            "unweighted truncated space cannot be certified"
                        )
                    cert = CERT_TRUNCATED
                else:
                    cert = CERT_EXACT
                cycles = d.block(deg)
                boundaries = d.block(deg - 1)
                positions = list(range(space.dim(deg)))
            if not positions:
                continue
            dim, reps = subquotient(cycles, boundaries)
            cells[Bidegree(deg, w)] = CohomologyCell(
                dim, _named_reps(space, deg, positions, reps), cert
            )
    return CohomologyTable(cells, window)


def cohomology_filtered(cx, degree_lo, degree_hi, caps):
    """Cohomology of the weight-cap subcomplexes F_s, per degree and cap.

    The differential must be weight-nonincreasing so each F_s is a
    subcomplex.  Cells are keyed (degree, cap); stabilization flags are the
    caller's job (compare runs at two truncation bounds).
    """
    space = cx.space
    d = cx.d
    cells = {}
    for s in caps:
        for deg in range(degree_lo, degree_hi + 1):
            cycles = d.cap_block(deg, s)
            boundaries = d.cap_block(deg - 1, s)
            if cycles.ncols == 0 and boundaries.nrows == 0:
                continue
            dim, reps = subquotient(cycles, boundaries)
            positions = [
                i for i, (_n, w) in enumerate(space.basis(deg)) if w is not None and w <= s
            ]
            cells[Bidegree(deg, s)] = CohomologyCell(
                dim, _named_reps(space, deg, positions, reps), CERT_TRUNCATED
            )
    window = Window(degree_lo, degree_hi, min(caps), max(caps))
    return CohomologyTable(cells, window, mode="filtered")


def check_chain_map(f, d_source, d_target):
    """Witness that f fails to commute with the differentials, or None."""
    lhs = d_target.compose(f).sub(f.compose(d_source))
    for deg in sorted(lhs.blocks):
        blk = lhs.blocks[deg]
        if not blk.is_zero():
            (i, j), v = blk.items()[0]
            return (deg, i, j, v)
    return None


def cone(f, cx_source, cx_target, check=True):
    """Mapping cone of a degree-0 chain map f: X -> Y.

    cone(f)^d = X^(d+1) ⊕ Y^d with differential (x, y) ↦ (-dx, fx + dy).
    Basis names are prefixed "s:" (shifted X part) and "c:" (Y part).
    """
    X, Y = cx_source.space, cx_target.space
    assert f.source == X and f.target == Y and f.degree == 0
    if check:
        wit = check_chain_map(f, cx_source.d, cx_target.d)
        if wit is not None:
            raise NotAComplexError(f"comparison map is not a chain map: {wit}")
    field = X.field
    degs = sorted({d - 1 for d in X.degrees()} | set(Y.degrees()))
    slices = {}
    for d in degs:
        bucket = [(f"s:{n}", w) for (n, w) in X.basis(d + 1)]
        bucket += [(f"c:{n}", w) for (n, w) in Y.basis(d)]
        slices[d] = bucket

    def _combine(a, b):
        if a is None and b is None:
            return None
        lo = []
        hi = []
        for t in (a, b):
            if t is None:
                continue
            if t[0] is not None:
                lo.append(t[0])
            if t[1] is not None:
                hi.append(t[1])
        return (max(lo) if lo else None, min(hi) if hi else None)

    space = GradedSpace(field, slices, trusted=_combine(X.trusted, Y.trusted))
    blocks = {}
    for d in degs:
        nX, nY = X.dim(d + 1), Y.dim(d)
        mX, mY = X.dim(d + 2), Y.dim(d + 1)
        ent = {}
        dx = cx_source.d.block(d + 1)
        for (i, j), v in dx.entries.items():
            ent[i, j] = field.neg(v)
        fb = f.block(d + 1)
        for (i, j), v in fb.entries.items():
            ent[mX + i, j] = v
        dy = cx_target.d.block(d)
        for (i, j), v in dy.entries.items():
            ent[mX + i, nX + j] = v
        if ent:
            blocks[d] = SparseMatrix(field, mX + mY, nX + nY, ent)
    weight = cx_source.d.weight
    if weight != cx_target.d.weight:
        weight = FILTERED
    diff = GradedMap(space, space, 1, weight=weight, blocks=blocks)
    return CochainComplex(space, diff)


def tensor_complex(a, b):
    """Tensor product complex with differential d⊗1 + 1⊗d (Koszul signs)."""
    space = tensor_space(a.space, b.space)
    ida = GradedMap.identity(a.space)
    idb = GradedMap.identity(b.space)
    d1 = tensor_map(a.d, idb, source=space, target=space)
    d2 = tensor_map(ida, b.d, source=space, target=space)
    return CochainComplex(space, d1.add(d2))
