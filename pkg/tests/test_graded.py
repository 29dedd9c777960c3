import random

import pytest

from dgkoszul.errors import NotAComplexError, WindowNotCertifiedError
from dgkoszul.graded import (
    Bidegree,
    GradedMap,
    GradedSpace,
    Window,
    tensor_map,
    tensor_space,
)
from dgkoszul.homology import CochainComplex, cohomology, cone, tensor_complex
from dgkoszul.linalg import QQ


def exterior_space(n):
    """Underlying graded space of ΛV, dim V = n, generators in (-1, 1)."""
    import itertools

    slices = {}
    for k in range(n + 1):
        names = []
        for S in itertools.combinations(range(1, n + 1), k):
            name = "1" if not S else "^".join(f"v{i}" for i in S)
            names.append((name, k))
        slices[-k] = names
    return GradedSpace(QQ, slices)


def poincare_coeff(dims_by_degree, other, degree):
    total = 0
    for d1, n1 in dims_by_degree.items():
        n2 = other.get(degree - d1, 0)
        total += n1 * n2
    return total


def test_ground_space():
    k = GradedSpace.ground(QQ)
    assert k.dim(0) == 1
    assert k.degrees() == [0]
    assert k.exact


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        GradedSpace(QQ, {0: [("a", 0), ("a", 0)]})


def test_tensor_with_ground_renames():
    k = GradedSpace.ground(QQ, "u")
    s = GradedSpace(QQ, {0: [("x", 1)]})
    t = tensor_space(k, s)
    assert t.dim(0) == 1
    assert t.basis(0)[0] == ("u⊗x", 1)


def test_tensor_square_of_one_dim_exterior():
    lam = exterior_space(1)  # basis 1 in (0,0), v1 in (-1,1)
    sq = tensor_space(lam, lam)
    assert sq.dim(0) == 1
    assert sq.dim(-1) == 2
    assert sq.dim(-2) == 1
    assert sq.basis(-2)[0] == ("v1⊗v1", 2)


def test_tensor_dims_match_poincare_series():
    # dims of (ΛV)⊗(ΛV), dim V = 2, at degree -2: expand (1+2t+t^2)^2, t^2 coeff
    lam = exterior_space(2)
    dims = {d: lam.dim(d) for d in lam.degrees()}
    expected = poincare_coeff(dims, dims, -2)
    assert expected == 6
    sq = tensor_space(lam, lam)
    assert sq.dim(-2) == 6


def rand_map(rng, src, tgt, degree):
    entries = []
    for d in src.degrees():
        for (sn, sw) in src.basis(d):
            for (tn, tw) in tgt.basis(d + degree):
                if rng.random() < 0.4:
                    entries.append((sn, tn, rng.randint(-3, 3)))
    return GradedMap.from_entries(src, tgt, degree, entries, weight=None)


def test_identity_tensor_identity():
    lam = exterior_space(2)
    ident = GradedMap.identity(lam)
    sq = tensor_space(lam, lam)
    t = tensor_map(ident, ident)
    assert t == GradedMap.identity(sq)


def test_interchange_with_koszul_sign():
    # (f⊗g)∘(f'⊗g') = (-1)^(|g||f'|) (ff')⊗(gg') on random homogeneous maps
    rng = random.Random(5)
    lam = exterior_space(2)
    for df, dg, dfp, dgp in [(1, 1, 1, 0), (1, 1, 1, 1), (0, 1, 1, 0), (2, 1, 1, 1)]:
        f = rand_map(rng, lam, lam, df)
        g = rand_map(rng, lam, lam, dg)
        fp = rand_map(rng, lam, lam, dfp)
        gp = rand_map(rng, lam, lam, dgp)
        lhs = tensor_map(f, g).compose(tensor_map(fp, gp))
        rhs = tensor_map(f.compose(fp), g.compose(gp))
        if (dg * dfp) % 2:
            rhs = rhs.scale(QQ.of(-1))
        assert lhs == rhs


def two_term_complex():
    space = GradedSpace(QQ, {0: [("a", 0)], 1: [("b", 0)]})
    d = GradedMap.from_entries(space, space, 1, [("a", "b", 1)])
    return CochainComplex(space, d)


def test_total_differential_on_tensor_squares_to_zero():
    cx = two_term_complex()
    sq = tensor_complex(cx, cx)
    assert sq.d_squared_witness() is None


def test_cohomology_zero_differential_gives_dims():
    lam = exterior_space(2)
    cx = CochainComplex(lam, GradedMap.zero_map(lam, lam, 1, weight=0))
    table = cohomology(cx, Window(-2, 0, 0, 2))
    assert table.dim(0, 0) == 1
    assert table.dim(-1, 1) == 2
    assert table.dim(-2, 2) == 1
    for cell in table.cells.values():
        assert cell.cert == "exact"
        assert len(cell.representatives) == cell.dim


def test_cohomology_two_term_identity_vanishes():
    cx = two_term_complex()
    table = cohomology(cx, Window(0, 1))
    assert table.is_exact()


def test_cohomology_rejects_non_complex():
    space = GradedSpace(QQ, {0: [("a", 0)], 1: [("b", 0)], 2: [("c", 0)]})
    d = GradedMap.from_entries(space, space, 1, [("a", "b", 1), ("b", "c", 1)])
    cx = CochainComplex(space, d)
    with pytest.raises(NotAComplexError):
        cohomology(cx, Window(0, 2))


def test_cohomology_window_certification():
    # truncated space: trusted only for weights <= 1
    space = GradedSpace(QQ, {0: [("x0", 0), ("x1", 1), ("x2", 2)]}, trusted=(None, 1))
    cx = CochainComplex(space, GradedMap.zero_map(space, space, 1, weight=0))
    with pytest.raises(WindowNotCertifiedError):
        cohomology(cx, Window(0, 0, 0, 2))
    table = cohomology(cx, Window(0, 0, 0, 2), on_untrusted="flag")
    assert table.cells[Bidegree(0, 2)].cert != "exact"
    assert table.cells[Bidegree(0, 1)].cert == "exact"


def test_cohomology_independent_of_basis_order():
    rng = random.Random(9)
    names = [("a", 0), ("b", 0), ("c", 0)]
    top = [("p", 0), ("q", 0)]
    entries = [("a", "p", 1), ("b", "p", -1), ("b", "q", 2), ("c", "q", 1)]
    space = GradedSpace(QQ, {0: names, 1: top})
    d = GradedMap.from_entries(space, space, 1, entries)
    t1 = cohomology(CochainComplex(space, d), Window(0, 1))
    shuffled = names[:]
    rng.shuffle(shuffled)
    top_s = top[:]
    rng.shuffle(top_s)
    space2 = GradedSpace(QQ, {0: shuffled, 1: top_s})
    d2 = GradedMap.from_entries(space2, space2, 1, entries)
    t2 = cohomology(CochainComplex(space2, d2), Window(0, 1))
    assert {bd: c.dim for bd, c in t1.cells.items()} == {bd: c.dim for bd, c in t2.cells.items()}


def test_cone_of_identity_is_exact():
    cx = two_term_complex()
    ident = GradedMap.identity(cx.space)
    c = cone(ident, cx, cx)
    assert c.d_squared_witness() is None
    table = cohomology(c, Window(-1, 2))
    assert table.is_exact()


def test_cone_of_zero_map_adds_shifted_cohomology():
    space = GradedSpace(QQ, {0: [("a", 0)]})
    cx = CochainComplex(space, GradedMap.zero_map(space, space, 1, weight=0))
    zero = GradedMap.zero_map(space, space, 0, weight=0)
    c = cone(zero, cx, cx)
    table = cohomology(c, Window(-2, 2))
    assert table.dim(-1, 0) == 1  # shifted copy
    assert table.dim(0, 0) == 1


def test_graded_map_apply_named():
    lam = exterior_space(1)
    f = GradedMap.from_entries(lam, lam, 1, [("v1", "1", 3)], weight=-1)
    assert f.apply(-1, {"v1": QQ.of(2)}) == {"1": QQ.of(6)}


def test_window_contains():
    w = Window(-2, 0, 0, 4)
    assert w.contains(-1, 2)
    assert not w.contains(1, 2)
    assert not w.contains(0, 5)
    assert w.grow_degree(1).contains(1, 2)
