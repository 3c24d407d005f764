"""Symbolic endomorphisms with unknown coefficients.

A generic endomorphism maps each algebra variable to a combination of the
nilpotent basis monomials with one fresh unknown per coordinate; extending it
multiplicatively and reducing by normal forms produces the matrix of the map
and the polynomial constraints characterizing homomorphisms. The same
structure-constant products drive fully numeric instantiation, which serves
as the independent ground truth for every derived equation.
"""

from fractions import Fraction

from .scalar import QQ, FieldElement
from .poly import PolyRing, Polynomial, PolyError
from .weil import structure_product, WeilError
from .linalg import bareiss_determinant, rref, matmul, identity_matrix


class EndoError(ValueError):
    pass


def unknown_names(count, taken=(), prefix=""):
    """A, B, C, ... skipping O and any taken names; A1, B1, ... afterwards."""
    letters = [chr(ord("A") + i) for i in range(26) if chr(ord("A") + i) != "O"]
    out = []
    suffix = 0
    while len(out) < count:
        for letter in letters:
            name = prefix + letter + (str(suffix) if suffix else "")
            if name in taken:
                continue
            out.append(name)
            if len(out) == count:
                break
        suffix += 1
    return out


class SymbolicEndo:
    __slots__ = ("algebra", "ring", "unknowns", "images", "unknown_slots", "_monomial_cache")

    def __init__(self, algebra, ring, unknowns, images, unknown_slots=None):
        self.algebra = algebra
        self.ring = ring
        self.unknowns = tuple(unknowns)
        self.images = {v: list(coords) for v, coords in images.items()}
        self.unknown_slots = dict(unknown_slots or {})
        self._monomial_cache = {}
        for v, coords in self.images.items():
            if len(coords) != algebra.dim:
                raise EndoError("image of %s has wrong length" % v)
            if coords[0]:
                raise EndoError("image of %s has a nonzero unit coordinate" % v)

    def image_of_monomial(self, exps):
        """Coordinates of the image of a basis monomial, phi extended multiplicatively."""
        exps = tuple(exps)
        cached = self._monomial_cache.get(exps)
        if cached is not None:
            return cached
        alg = self.algebra
        ring = self.ring
        zero = ring.zero()
        if not any(exps):
            coords = [zero] * alg.dim
            coords[0] = ring.one()
        else:
            # peel one variable off the monomial and recurse
            i = next(k for k, e in enumerate(exps) if e)
            prev = list(exps)
            prev[i] -= 1
            base = self.image_of_monomial(tuple(prev))
            var_img = self.images[alg.ring.vars[i]]
            coords = structure_product(alg, base, var_img, zero)
        self._monomial_cache[exps] = coords
        return coords

    def image_of_polynomial(self, p):
        """Image coordinates of an algebra polynomial (not reduced beforehand)."""
        alg = self.algebra
        zero = self.ring.zero()
        acc = [zero] * alg.dim
        for exps, c in p.terms.items():
            coords = self.image_of_monomial(exps)
            acc = [a + x * c for a, x in zip(acc, coords)]
        return acc


def generic_endo(algebra, symbol_prefix=""):
    nvars = len(algebra.ring.vars)
    m = algebra.dim - 1
    taken = set(algebra.ring.vars)
    names = unknown_names(nvars * m, taken, symbol_prefix)
    ring = PolyRing(tuple(names), QQ)
    images = {}
    slots = {}
    for i, v in enumerate(algebra.ring.vars):
        coords = [ring.zero()]
        for j in range(m):
            name = names[i * m + j]
            coords.append(ring.var(name))
            slots[name] = (v, j + 1)
        images[v] = coords
    return SymbolicEndo(algebra, ring, names, images, slots)


class SymbolicMatrix:
    __slots__ = ("ring", "entries", "labels")

    def __init__(self, ring, entries, labels):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise EndoError("matrix is not square")
        if len(labels) != n:
            raise EndoError("label count differs from size")
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.labels = list(labels)

    def det(self):
        return bareiss_determinant(self.entries, lambda a, b: a.exact_div(b))

    def diagonal(self):
        return [self.entries[i][i] for i in range(len(self.entries))]

    def entry(self, row_label, col_label):
        i = self.labels.index(row_label)
        j = self.labels.index(col_label)
        return self.entries[i][j]


def extend_to_matrix(endo):
    """Matrix of phi on the nilpotent part, rows indexed by basis monomials."""
    alg = endo.algebra
    nil = alg.nil_indices
    labels = [alg.ring.monomial_str(alg.basis[i]) for i in nil]
    rows = []
    for i in nil:
        coords = endo.image_of_monomial(alg.basis[i])
        if coords[0]:
            raise EndoError("image of a nilpotent left the nilradical")
        rows.append([coords[j] for j in nil])
    return SymbolicMatrix(endo.ring, rows, labels)


def linear_matrix(endo):
    """Matrix of phi on n/n^2 (coordinates at the degree-one basis)."""
    alg = endo.algebra
    deg1 = alg.degree_one_indices()
    labels = [alg.ring.monomial_str(alg.basis[i]) for i in deg1]
    rows = []
    for i in deg1:
        coords = endo.image_of_monomial(alg.basis[i])
        rows.append([coords[j] for j in deg1])
    return SymbolicMatrix(endo.ring, rows, labels)


class ConstraintSystem:
    __slots__ = ("ring", "equations", "nondegeneracy", "provenance", "unknowns")

    def __init__(self, ring, equations, nondegeneracy, provenance, unknowns):
        self.ring = ring
        self.equations = list(equations)
        self.nondegeneracy = list(nondegeneracy)
        self.provenance = list(provenance)
        self.unknowns = tuple(unknowns)


def relation_label(g):
    """Stable display form of a relation, independent of the ring precedence."""
    plain = PolyRing(g.ring.vars, g.ring.domain)
    return repr(Polynomial(plain, g.terms))


def constraint_system(endo):
    """Equations forcing phi to kill every relation, plus invertibility."""
    alg = endo.algebra
    equations = []
    provenance = []
    for g in alg.spec.relations:
        coords = endo.image_of_polynomial(g)
        if coords[0]:
            raise EndoError("relation image has a unit coordinate")
        label = relation_label(g)
        for k in range(1, alg.dim):
            if coords[k]:
                equations.append(coords[k])
                provenance.append((label, alg.ring.monomial_str(alg.basis[k])))
    det1 = linear_matrix(endo).det()
    return ConstraintSystem(endo.ring, equations, [det1], provenance, endo.unknowns)


class DeterminantReport:
    __slots__ = ("det_full", "det_linear")

    def __init__(self, det_full, det_linear):
        self.det_full = det_full
        self.det_linear = det_linear


def determinants(m_full, m_lin):
    return DeterminantReport(m_full.det(), m_lin.det())


def resolve_bindings(ring, bindings):
    """Close an acyclic binding set so no bound symbol remains on any rhs."""
    bnd = {}
    for k, v in bindings.items():
        if k not in ring.index:
            raise EndoError("unknown symbol %r in bindings" % k)
        bnd[k] = ring.coerce(v)
    resolved = {}
    visiting = []

    def resolve(name):
        if name in resolved:
            return resolved[name]
        if name in visiting:
            raise EndoError("cyclic bindings through %s" % " -> ".join(visiting + [name]))
        visiting.append(name)
        p = bnd[name]
        deps = {v for v in p.vars_used() if v in bnd}
        if deps:
            p = p.substitute({v: resolve(v) for v in deps})
        visiting.pop()
        resolved[name] = p
        return p

    for k in bnd:
        resolve(k)
    return resolved


def substitute(target, bindings):
    """Simultaneous substitution into an endo, constraint system or matrix."""
    if isinstance(target, SymbolicEndo):
        ring = target.ring
        closed = resolve_bindings(ring, bindings)
        images = {
            v: [c.substitute(closed) for c in coords] for v, coords in target.images.items()
        }
        kept = [u for u in target.unknowns if u not in closed]
        return SymbolicEndo(target.algebra, ring, kept, images, target.unknown_slots)
    if isinstance(target, ConstraintSystem):
        ring = target.ring
        closed = resolve_bindings(ring, bindings)
        eqs = [p.substitute(closed) for p in target.equations]
        nd = [p.substitute(closed) for p in target.nondegeneracy]
        kept = [u for u in target.unknowns if u not in closed]
        return ConstraintSystem(ring, eqs, nd, list(target.provenance), kept)
    if isinstance(target, SymbolicMatrix):
        ring = target.ring
        closed = resolve_bindings(ring, bindings)
        entries = [[p.substitute(closed) for p in row] for row in target.entries]
        return SymbolicMatrix(ring, entries, target.labels)
    raise EndoError("cannot substitute into %r" % type(target).__name__)


def lift_to_field(target, field):
    """Re-home a constraint system or matrix over an extension field."""
    def lift_ring(ring):
        return PolyRing(ring.vars, field)

    if isinstance(target, ConstraintSystem):
        ring = lift_ring(target.ring)
        conv = lambda p: p.map_coeffs(field.coerce, ring)
        return ConstraintSystem(
            ring,
            [conv(p) for p in target.equations],
            [conv(p) for p in target.nondegeneracy],
            list(target.provenance),
            target.unknowns,
        )
    if isinstance(target, SymbolicMatrix):
        ring = lift_ring(target.ring)
        return SymbolicMatrix(
            ring,
            [[p.map_coeffs(field.coerce, ring) for p in row] for row in target.entries],
            target.labels,
        )
    if isinstance(target, Polynomial):
        ring = lift_ring(target.ring)
        return target.map_coeffs(field.coerce, ring)
    raise EndoError("cannot lift %r" % type(target).__name__)


class NumericEndo:
    __slots__ = (
        "algebra",
        "matrix",
        "nil_matrix",
        "is_homomorphism",
        "is_automorphism",
        "failing_pairs",
        "det_linear",
    )

    def det_full(self):
        return bareiss_determinant(self.nil_matrix, _scalar_div)


def _scalar_div(a, b):
    if isinstance(a, FieldElement):
        return a / b
    if isinstance(b, FieldElement):
        return b.__rtruediv__(a)
    return Fraction(a) / Fraction(b)


def numeric_instantiate(endo, values):
    """Instantiate every unknown and test multiplicativity from scratch."""
    alg = endo.algebra
    missing = [u for u in endo.unknowns if u not in values]
    if missing:
        raise EndoError("unbound unknowns: %s" % ", ".join(missing))
    images = {}
    for v, coords in endo.images.items():
        images[v] = [c.evaluate(values) if c else Fraction(0) for c in coords]

    cache = {}

    def img(exps):
        exps = tuple(exps)
        got = cache.get(exps)
        if got is not None:
            return got
        if not any(exps):
            coords = [Fraction(0)] * alg.dim
            coords[0] = Fraction(1)
        else:
            i = next(k for k, e in enumerate(exps) if e)
            prev = list(exps)
            prev[i] -= 1
            coords = structure_product(alg, img(tuple(prev)), images[alg.ring.vars[i]], Fraction(0))
        cache[exps] = coords
        return coords

    rows = [img(e) for e in alg.basis]
    failing = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            prod_coords = alg.structure[i][j]
            lhs = None
            for k, c in enumerate(prod_coords):
                if not c:
                    continue
                term = [x * c for x in rows[k]]
                lhs = term if lhs is None else [a + b for a, b in zip(lhs, term)]
            if lhs is None:
                lhs = [Fraction(0)] * alg.dim
            rhs = structure_product(alg, rows[i], rows[j], Fraction(0))
            if any(a != b for a, b in zip(lhs, rhs)):
                failing.append((alg.ring.monomial_str(alg.basis[i]), alg.ring.monomial_str(alg.basis[j])))
    out = NumericEndo.__new__(NumericEndo)
    out.algebra = alg
    out.matrix = rows
    out.nil_matrix = [[rows[i][j] for j in alg.nil_indices] for i in alg.nil_indices]
    out.is_homomorphism = not failing
    out.failing_pairs = failing
    deg1 = alg.degree_one_indices()
    m1 = [[rows[i][j] for j in deg1] for i in deg1]
    out.det_linear = bareiss_determinant(m1, _scalar_div) if m1 else Fraction(1)
    nilrank = len(rref(out.nil_matrix)[1]) if out.nil_matrix else 0
    out.is_automorphism = out.is_homomorphism and nilrank == len(alg.nil_indices)
    return out


def compose(first, second):
    """Numeric composition: apply first, then second (row-vector convention)."""
    if first.algebra is not second.algebra:
        raise EndoError("endomorphisms of different algebras")
    return matmul(first.matrix, second.matrix)


def nil_block(algebra, matrix):
    return [[matrix[i][j] for j in algebra.nil_indices] for i in algebra.nil_indices]


def deg1_block(algebra, matrix):
    deg1 = algebra.degree_one_indices()
    return [[matrix[i][j] for j in deg1] for i in deg1]


def identity_bindings(endo):
    alg = endo.algebra
    values = {}
    for name, (v, coord) in endo.unknown_slots.items():
        var_index = alg.basis_index[tuple(1 if w == v else 0 for w in alg.ring.vars)]
        values[name] = Fraction(1) if coord == var_index else Fraction(0)
    return values
