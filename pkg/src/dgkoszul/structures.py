"""Dg algebras and dg coalgebras as validated structure-constant tables.

Both carry an augmentation adapted to the basis: the distinguished unit
(resp. coaugmentation) element is a basis vector in bidegree (0, 0) and the
augmentation (resp. counit) sends every other basis vector to zero.  The
validators check the axioms as finite matrix identities on the trusted part
of the stored window; failures are reported with witnesses, not raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import OverflowAccessError
from .graded import FILTERED, GradedMap, GradedSpace, alignment, tensor_map, tensor_space


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    structure: str
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=""):
        self.checks.append(CheckResult(name, passed, witness))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        out = []
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            extra = f"  [{c.witness}]" if c.witness and not c.passed else ""
            out.append(f"{mark}  {c.name}{extra}")
        return out


def _infer_map_weight(space_src, space_tgt, named_entries):
    """0 if weight-homogeneous of shift 0, FILTERED if nonincreasing, else the
    homogeneous shift; None when either side is unweighted."""
    shifts = set()
    for sname, tname, _c in named_entries:
        ws = space_src.weight_of(sname)
        wt = space_tgt.weight_of(tname)
        if ws is None or wt is None:
            return None
        shifts.add(wt - ws)
    if not shifts:
        return 0
    if len(shifts) == 1:
        return shifts.pop()
    if max(shifts) <= 0:
        return FILTERED
    raise ValueError(f"weight shifts {sorted(shifts)} neither homogeneous nor nonincreasing")


class DgAlgebra:
    """Structure-constant presentation of an augmented dg algebra.

    consts: {(a, b): {c: coeff}} over basis names, products omitted when the
    truncation cannot represent them (such pairs lie outside the trusted
    band of space⊗space and raise OverflowAccessError on direct access).
    """

    kind = "algebra"

    def __init__(self, space, consts, unit, differential=None, name="algebra"):
        self.space = space
        self.unit = unit
        self.name = name
        self.square = tensor_space(space, space)
        field = space.field
        self.consts = {}
        for (a, b), terms in consts.items():
            clean = {c: field.of(v) for c, v in terms.items() if field.of(v) != field.zero}
            if clean:
                self.consts[a, b] = clean
        entries = []
        for (a, b), terms in sorted(self.consts.items()):
            for c, v in sorted(terms.items()):
                entries.append((f"{a}⊗{b}", c, v))
        weight = _infer_map_weight(self.square, space, entries)
        self.mult = GradedMap.from_entries(self.square, space, 0, entries, weight=weight)
        if differential is None:
            differential = GradedMap.zero_map(space, space, 1, weight=0)
        self.d = differential
        self.diff_consts = {}
        for sname, tname, v in self.d.entries_named():
            self.diff_consts.setdefault(sname, {})[tname] = v

    @property
    def field(self):
        return self.space.field

    def letters(self):
        """Non-unit basis names with bidegrees, in basis order."""
        out = []
        for deg in self.space.degrees():
            for (n, w) in self.space.basis(deg):
                if n != self.unit:
                    out.append((n, deg, w))
        return out

    def product(self, a, b):
        """Structure constants of a·b; OverflowAccessError outside the
        trusted band of a truncated multiplication table."""
        terms = self.consts.get((a, b))
        if terms is not None:
            return terms
        wa = self.space.weight_of(a)
        wb = self.space.weight_of(b)
        if wa is not None and wb is not None and not self.square.is_trusted(0, wa + wb):
            raise OverflowAccessError(f"product {a}·{b} beyond truncation bound")
        return {}

    def aug(self, name):
        return self.field.one if name == self.unit else self.field.zero


class DgCoalgebra:
    """Structure-constant presentation of a coaugmented dg coalgebra.

    coconsts: {c: {(a, b): coeff}} giving Δ(c).
    """

    kind = "coalgebra"

    def __init__(self, space, coconsts, counit, differential=None, name="coalgebra"):
        self.space = space
        self.counit = counit  # the coaugmentation basis element; counit is adapted
        self.name = name
        self.square = tensor_space(space, space)
        field = space.field
        self.coconsts = {}
        for c, terms in coconsts.items():
            clean = {ab: field.of(v) for ab, v in terms.items() if field.of(v) != field.zero}
            if clean:
                self.coconsts[c] = clean
        entries = []
        for c, terms in sorted(self.coconsts.items()):
            for (a, b), v in sorted(terms.items()):
                entries.append((c, f"{a}⊗{b}", v))
        weight = _infer_map_weight(space, self.square, entries)
        self.comult = GradedMap.from_entries(space, self.square, 0, entries, weight=weight)
        if differential is None:
            differential = GradedMap.zero_map(space, space, 1, weight=0)
        self.d = differential
        self.diff_consts = {}
        for sname, tname, v in self.d.entries_named():
            self.diff_consts.setdefault(sname, {})[tname] = v

    @property
    def field(self):
        return self.space.field

    def letters(self):
        out = []
        for deg in self.space.degrees():
            for (n, w) in self.space.basis(deg):
                if n != self.counit:
                    out.append((n, deg, w))
        return out

    def coproduct(self, c):
        return self.coconsts.get(c, {})

    def reduced_coproduct(self, c):
        """Δ̄(c): splittings with both tensor factors away from the coaugmentation."""
        out = {}
        for (a, b), v in self.coproduct(c).items():
            if a != self.counit and b != self.counit:
                out[a, b] = v
        return out


def _maps_agree(f, g, witness_fmt=None):
    """None if f == g on trusted source columns, else a witness string."""
    diff = f.sub(g)
    src = f.source
    for deg in sorted(diff.blocks):
        blk = diff.blocks[deg]
        basis = src.basis(deg)
        for (i, j), v in blk.items():
            name, w = basis[j]
            if not src.is_trusted(deg, w):
                continue
            tgt = f.target.basis(deg + f.degree)[i][0]
            return f"{name} -> {tgt}: {f.source.field.to_str(v)}"
    return None


def unit_map(algebra):
    ground = GradedSpace.ground(algebra.field, "k")
    return GradedMap.from_entries(ground, algebra.space, 0, [("k", algebra.unit, 1)]), ground


def validate_algebra(a):
    """Axioms of an augmented dg algebra, checked on the trusted window."""
    rep = ValidationReport(a.name)
    field = a.field
    deg_u, _ = a.space.locate(a.unit)
    wu = a.space.weight_of(a.unit)
    rep.add("unit-in-bidegree-(0,0)", deg_u == 0 and wu in (0, None))
    rep.add("differential-degree-+1", a.d.degree == 1)

    dd = a.d.compose(a.d)
    wit = _maps_agree(dd, GradedMap.zero_map(a.space, a.space, 2, weight=dd.weight))
    rep.add("d-squared-zero", wit is None, wit or "")

    # unitality, straight off the constants
    ok, wit = True, ""
    for (n, _deg, _w) in [(a.unit, 0, 0)] + a.letters():
        left = a.product(a.unit, n)
        right = a.product(n, a.unit)
        if left != {n: field.one} or right != {n: field.one}:
            ok, wit = False, n
            break
    rep.add("unitality", ok, wit)

    # associativity via map identity on the trusted part of A⊗A⊗A
    ida = GradedMap.identity(a.space)
    cube = tensor_space(a.square, a.space)
    lhs = a.mult.compose(tensor_map(a.mult, ida, source=cube, target=a.square))
    cube2 = tensor_space(a.space, a.square)
    rhs = a.mult.compose(tensor_map(ida, a.mult, source=cube2, target=a.square))
    rhs = rhs.compose(alignment(cube, cube2))
    wit = _maps_agree(lhs, rhs)
    rep.add("associativity", wit is None, wit or "")

    # Leibniz: d∘μ = μ∘(d⊗1 + 1⊗d)
    dmu = a.d.compose(a.mult)
    mudd = a.mult.compose(
        tensor_map(a.d, ida, source=a.square, target=a.square).add(
            tensor_map(ida, a.d, source=a.square, target=a.square)
        )
    )
    wit = _maps_agree(dmu, mudd)
    rep.add("leibniz", wit is None, wit or "")

    # augmentation is a dg morphism (adapted basis): no unit outputs
    wit = ""
    for sname, terms in a.diff_consts.items():
        if a.unit in terms:
            wit = f"d({sname}) hits the unit"
            break
    rep.add("augmentation-chain-map", not wit, wit)
    wit = ""
    for (x, y), terms in a.consts.items():
        if a.unit in terms and not (x == a.unit and y == a.unit):
            wit = f"{x}·{y} hits the unit"
            break
    rep.add("augmentation-multiplicative", not wit, wit)
    return rep


def validate_coalgebra(c):
    """Axioms of a coaugmented cocomplete dg coalgebra."""
    rep = ValidationReport(c.name)
    field = c.field
    deg_u, _ = c.space.locate(c.counit)
    wu = c.space.weight_of(c.counit)
    rep.add("coaugmentation-in-bidegree-(0,0)", deg_u == 0 and wu in (0, None))
    rep.add("differential-degree-+1", c.d.degree == 1)

    dd = c.d.compose(c.d)
    wit = _maps_agree(dd, GradedMap.zero_map(c.space, c.space, 2, weight=dd.weight))
    rep.add("d-squared-zero", wit is None, wit or "")

    # counit laws, off the constants: the coaugmented splittings of x are
    # exactly 1⊗x and x⊗1
    ok, wit = True, ""
    for (n, _deg, _w) in [(c.counit, 0, 0)] + c.letters():
        terms = c.coproduct(n)
        left = {b: v for (a, b), v in terms.items() if a == c.counit}
        right = {a: v for (a, b), v in terms.items() if b == c.counit}
        if left != {n: field.one} or right != {n: field.one}:
            ok, wit = False, n
            break
    rep.add("counit-laws", ok, wit)

    rep.add(
        "coaugmentation-group-like",
        c.coproduct(c.counit) == {(c.counit, c.counit): field.one}
        and c.counit not in c.diff_consts,
    )

    # coassociativity
    idc = GradedMap.identity(c.space)
    cube = tensor_space(c.square, c.space)
    lhs = tensor_map(c.comult, idc, source=c.square, target=cube).compose(c.comult)
    cube2 = tensor_space(c.space, c.square)
    rhs = tensor_map(idc, c.comult, source=c.square, target=cube2).compose(c.comult)
    rhs = alignment(cube2, cube).compose(rhs)
    wit = _maps_agree(lhs, rhs)
    rep.add("coassociativity", wit is None, wit or "")

    # co-Leibniz: Δ∘d = (d⊗1 + 1⊗d)∘Δ
    lhs = c.comult.compose(c.d)
    rhs = (
        tensor_map(c.d, idc, source=c.square, target=c.square)
        .add(tensor_map(idc, c.d, source=c.square, target=c.square))
        .compose(c.comult)
    )
    wit = _maps_agree(lhs, rhs)
    rep.add("co-leibniz", wit is None, wit or "")

    # cocompleteness: iterated reduced comultiplication vanishes
    ok, wit = True, ""
    bound = c.space.total_dim() + 2
    for (n, _deg, _w) in c.letters():
        words = {(n,): field.one}
        for _ in range(bound):
            new = {}
            for word, coeff in words.items():
                head, last = word[:-1], word[-1]
                for (x, y), v in c.reduced_coproduct(last).items():
                    key = head + (x, y)
                    s = field.add(new.get(key, field.zero), field.mul(coeff, v))
                    if s == field.zero:
                        new.pop(key, None)
                    else:
                        new[key] = s
            words = new
            if not words:
                break
        if words:
            ok, wit = False, f"Δ̄^({bound}) does not vanish on {n}"
            break
    rep.add("cocomplete", ok, wit)
    return rep


def dualize(c):
    """k-dual dg algebra of a finite coalgebra: multiplication is the
    transpose of the comultiplication, degrees and weights negate."""
    if not c.space.exact:
        from .errors import UnboundedWindowError

        raise UnboundedWindowError("dual of a truncated coalgebra is not defined")
    slices = {}
    for deg in c.space.degrees():
        for (n, w) in c.space.basis(deg):
            slices.setdefault(-deg, []).append((n, None if w is None else -w))
    space = GradedSpace(c.field, slices)
    consts = {}
    for x, terms in c.coconsts.items():
        for (a, b), v in terms.items():
            consts.setdefault((a, b), {})[x] = v
    diff_entries = []
    for sname, terms in c.diff_consts.items():
        for tname, v in terms.items():
            diff_entries.append((tname, sname, v))
    weight = _infer_map_weight(space, space, diff_entries)
    d = GradedMap.from_entries(space, space, 1, diff_entries, weight=weight)
    return DgAlgebra(space, consts, c.counit, d, name=f"dual({c.name})")


def dualize_algebra(a):
    """k-dual dg coalgebra of a finite algebra (inverse of dualize)."""
    if not a.space.exact:
        from .errors import UnboundedWindowError

        raise UnboundedWindowError("dual of a truncated algebra is not defined")
    slices = {}
    for deg in a.space.degrees():
        for (n, w) in a.space.basis(deg):
            slices.setdefault(-deg, []).append((n, None if w is None else -w))
    space = GradedSpace(a.field, slices)
    coconsts = {}
    for (x, y), terms in a.consts.items():
        for z, v in terms.items():
            coconsts.setdefault(z, {})[x, y] = v
    diff_entries = []
    for sname, terms in a.diff_consts.items():
        for tname, v in terms.items():
            diff_entries.append((tname, sname, v))
    weight = _infer_map_weight(space, space, diff_entries)
    d = GradedMap.from_entries(space, space, 1, diff_entries, weight=weight)
    return DgCoalgebra(space, coconsts, a.unit, d, name=f"dual({a.name})")


def opposite(a):
    """Opposite algebra with the Koszul sign: a·_op b = (-1)^(|a||b|) b·a."""
    field = a.field
    consts = {}
    for (x, y), terms in a.consts.items():
        sign = (a.space.degree_of(x) * a.space.degree_of(y)) % 2
        scaled = {z: (field.neg(v) if sign else v) for z, v in terms.items()}
        consts[y, x] = scaled
    return DgAlgebra(a.space, consts, a.unit, a.d, name=f"op({a.name})")


def opposite_coalgebra(c):
    field = c.field
    coconsts = {}
    for x, terms in c.coconsts.items():
        out = {}
        for (p, q), v in terms.items():
            sign = (c.space.degree_of(p) * c.space.degree_of(q)) % 2
            out[q, p] = field.neg(v) if sign else v
        coconsts[x] = out
    return DgCoalgebra(c.space, coconsts, c.counit, c.d, name=f"op({c.name})")


def tensor_algebra(a, b, name=None):
    """Tensor product dg algebra A⊗B with Koszul-signed multiplication."""
    field = a.field
    space = tensor_space(a.space, b.space)
    consts = {}
    for (x1, y1), t1 in a.consts.items():
        for (x2, y2), t2 in b.consts.items():
            sign = (b.space.degree_of(x2) * a.space.degree_of(y1)) % 2
            key = (f"{x1}⊗{x2}", f"{y1}⊗{y2}")
            out = consts.setdefault(key, {})
            for z1, v1 in t1.items():
                for z2, v2 in t2.items():
                    v = field.mul(v1, v2)
                    if sign:
                        v = field.neg(v)
                    zname = f"{z1}⊗{z2}"
                    s = field.add(out.get(zname, field.zero), v)
                    if s == field.zero:
                        out.pop(zname, None)
                    else:
                        out[zname] = s
    ida = GradedMap.identity(a.space)
    idb = GradedMap.identity(b.space)
    d = tensor_map(a.d, idb, source=space, target=space).add(
        tensor_map(ida, b.d, source=space, target=space)
    )
    return DgAlgebra(
        space, consts, f"{a.unit}⊗{b.unit}", d, name=name or f"{a.name}⊗{b.name}"
    )


def tensor_coalgebra(c1, c2, name=None):
    """Tensor product dg coalgebra with Koszul-signed comultiplication."""
    field = c1.field
    space = tensor_space(c1.space, c2.space)
    coconsts = {}
    for x1, t1 in c1.coconsts.items():
        for x2, t2 in c2.coconsts.items():
            out = coconsts.setdefault(f"{x1}⊗{x2}", {})
            for (p1, q1), v1 in t1.items():
                for (p2, q2), v2 in t2.items():
                    sign = (c1.space.degree_of(q1) * c2.space.degree_of(p2)) % 2
                    v = field.mul(v1, v2)
                    if sign:
                        v = field.neg(v)
                    key = (f"{p1}⊗{p2}", f"{q1}⊗{q2}")
                    s = field.add(out.get(key, field.zero), v)
                    if s == field.zero:
                        out.pop(key, None)
                    else:
                        out[key] = s
    id1 = GradedMap.identity(c1.space)
    id2 = GradedMap.identity(c2.space)
    d = tensor_map(c1.d, id2, source=space, target=space).add(
        tensor_map(id1, c2.d, source=space, target=space)
    )
    return DgCoalgebra(
        space, coconsts, f"{c1.counit}⊗{c2.counit}", d, name=name or f"{c1.name}⊗{c2.name}"
    )


def enveloping(a):
    """A^e = A ⊗ A^op."""
    return tensor_algebra(a, opposite(a), name=f"env({a.name})")


def enveloping_coalgebra(c):
    """C^e = C ⊗ C^op."""
    return tensor_coalgebra(c, opposite_coalgebra(c), name=f"env({c.name})")
