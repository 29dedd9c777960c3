"""Builders for the example families: symmetric and exterior (co)algebras,
dual numbers, Chevalley–Eilenberg coalgebras and PBW-truncated enveloping
algebras of finite-dimensional Lie algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CharacteristicUnsupportedError
from .graded import GradedMap, GradedSpace
from .structures import DgAlgebra, DgCoalgebra, _infer_map_weight


@dataclass
class LiePresentation:
    """Finite-dimensional Lie algebra by basis and structure constants.

    brackets: {(i, j): {k: coeff}} for i < j over basis positions;
    antisymmetry is implied, Jacobi is validated on demand.
    """

    names: list
    brackets: dict

    def bracket(self, field, i, j):
        """[x_i, x_j] as {position: scalar}, any i, j."""
        if i == j:
            return {}
        if i < j:
            raw = self.brackets.get((i, j), {})
            return {k: field.of(v) for k, v in raw.items()}
        raw = self.brackets.get((j, i), {})
        return {k: field.neg(field.of(v)) for k, v in raw.items()}

    def jacobi_witness(self, field):
        """First failing triple of the Jacobi identity, or None."""
        n = len(self.names)
        for i, j, k in itertools.combinations(range(n), 3):
            acc = {}
            for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket(field, b, c)
                for m, v in inner.items():
                    outer = self.bracket(field, a, m)
                    for t, w in outer.items():
                        s = field.add(acc.get(t, field.zero), field.mul(v, w))
                        if s == field.zero:
                            acc.pop(t, None)
                        else:
                            acc[t] = s
            if acc:
                return (self.names[i], self.names[j], self.names[k])
        return None


def lie_abelian(n):
    return LiePresentation([f"x{i}" for i in range(1, n + 1)], {})


def lie_nonabelian2():
    """Two-dimensional nonabelian Lie algebra: [x1, x2] = x1."""
    return LiePresentation(["x1", "x2"], {(0, 1): {0: 1}})


def lie_sl2():
    """sl2 with basis (e, f, h): [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return LiePresentation(
        ["e", "f", "h"],
        {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}},
    )


LIE_FAMILIES = {
    "abelian1": lambda: lie_abelian(1),
    "abelian2": lambda: lie_abelian(2),
    "abelian3": lambda: lie_abelian(3),
    "nonabelian2": lie_nonabelian2,
    "sl2": lie_sl2,
}


def _monomial_name(names, expts):
    parts = []
    for x, e in zip(names, expts):
        if e == 1:
            parts.append(x)
        elif e > 1:
            parts.append(f"{x}^{e}")
    return "*".join(parts) if parts else "1"


def _monomials(nvars, weight):
    """Exponent tuples of total degree `weight`, lexicographically."""
    if nvars == 1:
        return [(weight,)]
    out = []
    for e in range(weight, -1, -1):
        for rest in _monomials(nvars - 1, weight - e):
            out.append((e,) + rest)
    return out


def sym_algebra(field, dim, max_weight, names=None):
    """Symmetric algebra on `dim` degree-0 weight-1 generators, truncated at
    total weight max_weight; products beyond the bound are overflow."""
    names = names or [f"x{i}" for i in range(1, dim + 1)]
    slices = {0: []}
    monos = {}
    for w in range(max_weight + 1):
        for expts in _monomials(dim, w):
            name = _monomial_name(names, expts)
            slices[0].append((name, w))
            monos[name] = expts
    space = GradedSpace(field, slices, trusted=(None, max_weight))
    consts = {}
    for a, ea in monos.items():
        wa = sum(ea)
        for b, eb in monos.items():
            if wa + sum(eb) > max_weight:
                continue
            consts[a, b] = {_monomial_name(names, tuple(x + y for x, y in zip(ea, eb))): 1}
    return DgAlgebra(space, consts, "1", name=f"S(k^{dim})<=w{max_weight}")


def _wedge_name(names, subset):
    return "^".join(names[i] for i in subset) if subset else "1"


def _split_sign(left, right):
    """Sign of the shuffle (left, right) back into sorted order; all
    generators are odd, so the Koszul sign equals the permutation sign."""
    inv = sum(1 for t in left for u in right if u < t)
    return -1 if inv % 2 else 1


def exterior_coalgebra(field, dim, names=None, name=None):
    """Exterior coalgebra on `dim` generators in bidegree (-1, 1); the
    comultiplication is the deconcatenation of wedge monomials."""
    names = names or [f"v{i}" for i in range(1, dim + 1)]
    slices = {}
    subsets = []
    for k in range(dim + 1):
        basis = []
        for S in itertools.combinations(range(dim), k):
            basis.append((_wedge_name(names, S), k))
            subsets.append(S)
        slices[-k] = basis
    space = GradedSpace(field, slices)
    coconsts = {}
    for S in subsets:
        terms = {}
        for r in range(len(S) + 1):
            for left in itertools.combinations(S, r):
                right = tuple(t for t in S if t not in left)
                sign = _split_sign(left, right)
                terms[_wedge_name(names, left), _wedge_name(names, right)] = field.of(sign)
        coconsts[_wedge_name(names, S)] = terms
    return DgCoalgebra(space, coconsts, "1", name=name or f"Λ(k^{dim})")


def exterior_algebra(field, dim, names=None):
    """Exterior algebra on `dim` generators in bidegree (+1, -1) with zero
    differential (the dual picture of exterior_coalgebra)."""
    names = names or [f"s{i}" for i in range(1, dim + 1)]
    slices = {}
    subsets = []
    for k in range(dim + 1):
        basis = []
        for S in itertools.combinations(range(dim), k):
            basis.append((_wedge_name(names, S), -k))
            subsets.append(S)
        slices[k] = basis
    space = GradedSpace(field, slices)
    consts = {}
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            sign = _split_sign(S, T)
            consts[_wedge_name(names, S), _wedge_name(names, T)] = {
                _wedge_name(names, tuple(sorted(S + T))): field.of(sign)
            }
    return DgAlgebra(space, consts, "1", name=f"Λ((k^{dim})*)")


def dual_numbers(field):
    """k[x]/(x^2) with x in bidegree (0, 1)."""
    space = GradedSpace(field, {0: [("1", 0), ("x", 1)]})
    consts = {
        ("1", "1"): {"1": 1},
        ("1", "x"): {"x": 1},
        ("x", "1"): {"x": 1},
    }
    return DgAlgebra(space, consts, "1", name="k[x]/(x^2)")


def ce_coalgebra(field, lie, name=None):
    """Chevalley–Eilenberg coalgebra of a Lie algebra: the exterior
    coalgebra on generators in (-1, 1) with the differential whose
    two-cogenerator component is the bracket (sign pinned so that the
    projection-inclusion cochain into the enveloping algebra twists).
    """
    if field.characteristic != 0:
        raise CharacteristicUnsupportedError("Chevalley–Eilenberg requires characteristic 0")
    if lie.jacobi_witness(field) is not None:
        wit = lie.jacobi_witness(field)
        raise ValueError(f"Jacobi identity fails on {wit}")
    base = exterior_coalgebra(field, len(lie.names), names=lie.names)
    nm = lie.names
    diff_entries = []
    for k in range(2, len(nm) + 1):
        for S in itertools.combinations(range(len(nm)), k):
            src = _wedge_name(nm, S)
            for (pi, pj) in itertools.combinations(range(k), 2):
                i, j = S[pi], S[pj]
                rest = tuple(t for t in S if t not in (i, j))
                sign0 = 1 if (pi + pj + 1 + 2) % 2 == 0 else -1  # (-1)^(i+j+1), 1-indexed
                for m, v in lie.bracket(field, i, j).items():
                    if m in rest:
                        continue
                    before = sum(1 for t in rest if t < m)
                    sign1 = -1 if before % 2 else 1
                    coeff = field.mul(field.of(sign0 * sign1), v)
                    diff_entries.append((src, _wedge_name(nm, tuple(sorted(rest + (m,)))), coeff))
    weight = _infer_map_weight(base.space, base.space, diff_entries)
    d = GradedMap.from_entries(base.space, base.space, 1, diff_entries, weight=weight)
    return DgCoalgebra(
        base.space, base.coconsts, "1", d, name=name or f"CE({'-'.join(lie.names)})"
    )


def _pbw_name(names, expts):
    return _monomial_name(names, expts)


class _PBWRewriter:
    """Normalizes words in the generators into the ordered-monomial basis by
    adjacent transpositions, [x_j, x_i] terms lowering the filtration."""

    def __init__(self, field, lie):
        self.field = field
        self.lie = lie
        self.memo = {}

    def normalize(self, word):
        field = self.field
        if word in self.memo:
            return self.memo[word]
        for k in range(len(word) - 1):
            if word[k] > word[k + 1]:
                swapped = word[:k] + (word[k + 1], word[k]) + word[k + 2 :]
                out = dict(self.normalize(swapped))
                for m, v in self.lie.bracket(field, word[k], word[k + 1]).items():
                    shorter = word[:k] + (m,) + word[k + 2 :]
                    for mono, w in self.normalize(shorter).items():
                        s = field.add(out.get(mono, field.zero), field.mul(v, w))
                        if s == field.zero:
                            out.pop(mono, None)
                        else:
                            out[mono] = s
                self.memo[word] = out
                return out
        self.memo[word] = {word: field.one}
        return {word: field.one}


def universal_envelope(field, lie, max_filtration, name=None):
    """Enveloping algebra on the PBW basis, truncated at total filtration
    max_filtration; products that overflow the bound are not stored."""
    if field.characteristic != 0:
        raise CharacteristicUnsupportedError("enveloping algebra requires characteristic 0")
    if lie.jacobi_witness(field) is not None:
        raise ValueError(f"Jacobi identity fails on {lie.jacobi_witness(field)}")
    nvars = len(lie.names)
    slices = {0: []}
    monos = {}
    for w in range(max_filtration + 1):
        for expts in _monomials(nvars, w):
            mname = _pbw_name(lie.names, expts)
            slices[0].append((mname, w))
            monos[mname] = expts
    space = GradedSpace(field, slices, trusted=(None, max_filtration))
    rewriter = _PBWRewriter(field, lie)

    def word_of(expts):
        out = []
        for i, e in enumerate(expts):
            out.extend([i] * e)
        return tuple(out)

    consts = {}
    for a, ea in monos.items():
        for b, eb in monos.items():
            if sum(ea) + sum(eb) > max_filtration:
                continue
            normal = rewriter.normalize(word_of(ea) + word_of(eb))
            terms = {}
            for mono_word, v in normal.items():
                expts = [0] * nvars
                for i in mono_word:
                    expts[i] += 1
                terms[_pbw_name(lie.names, tuple(expts))] = v
            consts[a, b] = terms
    return DgAlgebra(
        space, consts, "1", name=name or f"U({'-'.join(lie.names)})<=f{max_filtration}"
    )
