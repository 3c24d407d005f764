"""Weil algebras: quotients of jet algebras with nilpotent maximal ideal.

A spec fixes variables, a truncation order r and extra relations; the algebra
is Q[vars]/(relations + all monomials of degree r+1). The basis is the
ascending list of standard monomials, 1 first, and products are cached as
structure constants so the same multiplication drives both numeric elements
and symbolic endomorphism images.
"""

from fractions import Fraction

from .scalar import QQ
from .poly import PolyRing, Polynomial, PolyError
from .quotient import IdealPresentation, buchberger, normal_form, standard_monomials, nf_table
from .linalg import rref


class WeilError(ValueError):
    pass


class AlgebraSpec:
    __slots__ = ("name", "variables", "order", "relations", "precedence", "ring")

    def __init__(self, name, variables, order, relations, precedence=None):
        self.name = str(name)
        self.variables = tuple(variables)
        if not self.variables:
            raise WeilError("an algebra needs at least one variable")
        if int(order) < 1:
            raise WeilError("order must be a positive integer")
        self.order = int(order)
        self.precedence = tuple(precedence) if precedence else None
        self.ring = PolyRing(self.variables, QQ, self.precedence)
        rels = []
        for p in relations:
            if isinstance(p, Polynomial):
                if p.ring.vars != self.variables:
                    raise WeilError("relation uses foreign variables")
                if p.ring is not self.ring:
                    p = Polynomial(self.ring, dict(p.terms))
            else:
                p = self.ring.poly(p)
            zero_exps = (0,) * len(self.variables)
            if zero_exps in p.terms:
                raise WeilError("relation %r has a nonzero constant term" % (p,))
            if p:
                rels.append(p)
        self.relations = tuple(rels)

    def with_precedence(self, precedence):
        return AlgebraSpec(self.name, self.variables, self.order, self.relations, precedence)


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = list(coords)
        if len(coords) != algebra.dim:
            raise WeilError("coordinate vector has wrong length")
        self.algebra = algebra
        self.coords = coords

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def scale(self, c):
        return Element(self.algebra, [a * c for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            self._same(other)
            return Element(self.algebra, structure_product(self.algebra, self.coords, other.coords, Fraction(0)))
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(tuple(self.coords))

    def is_zero(self):
        return all(not c for c in self.coords)

    def _same(self, other):
        if self.algebra is not other.algebra:
            raise WeilError("elements of different algebras")

    def __repr__(self):
        names = self.algebra.basis_names()
        parts = []
        for c, n in zip(self.coords, names):
            if not c:
                continue
            parts.append("%s*%s" % (c, n) if n != "1" else str(c))
        return " + ".join(parts) if parts else "0"


class WeilAlgebra:
    __slots__ = (
        "spec",
        "ring",
        "gb",
        "basis",
        "dim",
        "basis_index",
        "structure",
        "structure_pairs",
        "nil_indices",
        "nil_power_indices",
        "nilpotency_order",
    )

    def basis_names(self):
        return [self.ring.monomial_str(e) for e in self.basis]

    def unit(self):
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(1)
        return Element(self, coords)

    def element(self, coords):
        return Element(self, [Fraction(c) for c in coords])

    def basis_element(self, i):
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return Element(self, coords)

    def monomial_element(self, name):
        names = self.basis_names()
        if name not in names:
            raise WeilError("%s is not a basis monomial" % name)
        return self.basis_element(names.index(name))

    def from_polynomial(self, p):
        nf = normal_form(p if p.ring is self.ring else Polynomial(self.ring, dict(p.terms)), self.gb)
        coords = [Fraction(0)] * self.dim
        for e, c in nf.terms.items():
            coords[self.basis_index[e]] = c
        return Element(self, coords)

    def degree_one_indices(self):
        return [i for i, e in enumerate(self.basis) if sum(e) == 1]


def structure_product(algebra, u, v, zero):
    """Coordinates of the product of two coordinate vectors.

    Entries only need +, * against each other and Fractions, so the same
    routine multiplies numeric elements and vectors of symbolic polynomials.
    """
    out = [None] * algebra.dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = algebra.structure_pairs[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            pairs = row[j]
            if not pairs:
                continue
            uv = ui * vj
            for k, c in pairs:
                t = uv * c
                out[k] = t if out[k] is None else out[k] + t
    return [zero if x is None else x for x in out]


def multiply(algebra, a, b):
    return a * b


def build_algebra(spec):
    ring = spec.ring
    ideal = IdealPresentation(ring, spec.relations, spec.order)
    gb = buchberger(ideal)
    basis = standard_monomials(gb)
    if not basis or any(basis[0]):
        raise WeilError("the unit monomial is not standard; quotient is trivial")
    alg = WeilAlgebra.__new__(WeilAlgebra)
    alg.spec = spec
    alg.ring = ring
    alg.gb = gb
    alg.basis = tuple(basis)
    alg.dim = len(basis)
    alg.basis_index = {e: i for i, e in enumerate(basis)}
    table = nf_table(gb)
    structure = []
    pairs_table = []
    for ei in basis:
        row = []
        prow = []
        for ej in basis:
            prod = tuple(a + b for a, b in zip(ei, ej))
            nf = table[prod]
            coords = [Fraction(0)] * alg.dim
            pairs = []
            for e, c in nf.terms.items():
                k = alg.basis_index[e]
                coords[k] = c
                pairs.append((k, c))
            pairs.sort()
            row.append(tuple(coords))
            prow.append(tuple(pairs))
        structure.append(tuple(row))
        pairs_table.append(tuple(prow))
    alg.structure = tuple(structure)
    alg.structure_pairs = tuple(pairs_table)
    alg.nil_indices = tuple(range(1, alg.dim))

    # powers of the nilradical: span of normal forms of monomials of degree >= s
    r = spec.order
    npi = []
    for s in range(1, r + 2):
        rows = []
        for e in _monomials_between(len(ring.vars), s, r):
            nf = table.get(e)
            if nf is None:
                nf = normal_form(ring.monomial(e), gb)
            if nf:
                coords = [Fraction(0)] * alg.dim
                for ee, c in nf.terms.items():
                    coords[alg.basis_index[ee]] = c
                rows.append(coords)
        if not rows:
            npi.append(tuple())
            continue
        red, pivots = rref(rows)
        idx = set()
        for t, row in enumerate(red[: len(pivots)]):
            nonzero = [k for k, x in enumerate(row) if x]
            if len(nonzero) != 1:
                raise WeilError("nilradical power is not spanned by basis monomials")
            idx.add(nonzero[0])
        npi.append(tuple(sorted(idx)))
    while npi and not npi[-1]:
        npi.pop()
    alg.nil_power_indices = tuple(npi)
    alg.nilpotency_order = len(npi)
    deg1 = set(alg.degree_one_indices())
    if len(npi) >= 2 and (set(npi[1]) & deg1):
        raise WeilError("a degree-one basis element lies in the square of the nilradical")
    return alg


def _monomials_between(nvars, lo, hi):
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            for k in range(left + 1):
                e = tuple(prefix + [k])
                if sum(e) >= lo:
                    out.append(e)
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], hi, nvars)
    return out


def nil_quotient_projection(algebra):
    """Basis of n/n^2 plus the projection matrix from n coordinates."""
    deg1 = algebra.degree_one_indices()
    nil = list(algebra.nil_indices)
    sq = set(algebra.nil_power_indices[1]) if len(algebra.nil_power_indices) >= 2 else set()
    rows = []
    for i in nil:
        row = []
        for j in deg1:
            row.append(Fraction(1) if i == j else Fraction(0))
        rows.append(row)
    for i in nil:
        if sum(algebra.basis[i]) >= 2 and i not in sq:
            # degree >= 2 basis elements outside n^2 would make the
            # coordinate projection wrong; not the case for shipped algebras
            raise WeilError("nilradical is not generated in degree one")
    return {
        "quotient_basis": [algebra.ring.monomial_str(algebra.basis[i]) for i in deg1],
        "quotient_indices": list(deg1),
        "matrix": rows,
    }
