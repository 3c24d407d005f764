import random
from fractions import Fraction

import pytest

from weilaut.parsing import parse_specfile
from weilaut.weil import build_algebra
from weilaut.endo import (
    EndoError,
    compose,
    constraint_system,
    deg1_block,
    determinants,
    extend_to_matrix,
    generic_endo,
    identity_bindings,
    lift_to_field,
    linear_matrix,
    nil_block,
    numeric_instantiate,
    resolve_bindings,
    substitute,
    unknown_names,
)
from weilaut.linalg import bareiss_determinant, identity_matrix
from weilaut.scalar import QQ, ExtensionField
from weilaut.poly import PolyRing
from weilaut.specdata import spec_path


def load(name):
    with open(spec_path(name)) as fh:
        specs = parse_specfile(fh.read())
    return build_algebra(specs[0])


@pytest.fixture(scope="module")
def tangent2():
    return load("tangent2.alg")


@pytest.fixture(scope="module")
def quartic():
    return load("quartic.alg")


@pytest.fixture(scope="module")
def sextic():
    return load("sextic.alg")


def test_unknown_names_skip_o_and_taken():
    names = unknown_names(18, taken={"X", "Y"})
    assert names[:9] == ["A", "B", "C", "D", "E", "F", "G", "H", "I"]
    assert names[9:] == ["J", "K", "L", "M", "N", "P", "Q", "R", "S"]
    long = unknown_names(28, taken={"X", "Y"})
    assert long[22] == "Z"
    assert long[23:] == ["A1", "B1", "C1", "D1", "E1"]


def test_generic_endo_tangent2(tangent2):
    e = generic_endo(tangent2)
    assert e.unknowns == ("A", "B", "C", "D", "E", "F")
    # phi(X) = A X + B Y + C XY in the 1, X, Y, XY coordinates
    assert [repr(c) for c in e.images["X"]] == ["0", "A", "B", "C"]
    assert [repr(c) for c in e.images["Y"]] == ["0", "D", "E", "F"]


def test_constraints_tangent2(tangent2):
    e = generic_endo(tangent2)
    sys_ = constraint_system(e)
    normalized = sorted(repr(p.primitive()) for p in sys_.equations)
    assert normalized == ["A*B", "D*E"]
    assert repr(sys_.nondegeneracy[0]) == "A*E - B*D"
    assert sys_.provenance == [("X^2", "X*Y"), ("Y^2", "X*Y")]


def test_matrix_tangent2(tangent2):
    e = generic_endo(tangent2)
    m = extend_to_matrix(e)
    assert m.labels == ["X", "Y", "X*Y"]
    assert [repr(p) for p in m.entries[0]] == ["A", "B", "C"]
    assert [repr(p) for p in m.entries[1]] == ["D", "E", "F"]
    # the XY row of the generic endomorphism has a single nonzero entry
    assert [repr(p) for p in m.entries[2]] == ["0", "0", "A*E + B*D"]


def test_determinants_tangent2_families(tangent2):
    e = generic_endo(tangent2)
    m = extend_to_matrix(e)
    m1 = linear_matrix(e)
    first = substitute(m, {"B": 0, "D": 0})
    rep = determinants(first, substitute(m1, {"B": 0, "D": 0}))
    assert repr(rep.det_full) == "A^2*E^2"
    assert repr(rep.det_linear) == "A*E"
    second = substitute(m, {"A": 0, "E": 0})
    rep2 = determinants(second, substitute(m1, {"A": 0, "E": 0}))
    assert repr(rep2.det_full) == "-B^2*D^2"
    assert repr(rep2.det_linear) == "-B*D"


def test_printed_product_criterion_is_not_the_endo_criterion(tangent2):
    # X -> X, Y -> X satisfies AD = 0 and BE = 0 yet also kills both
    # relations, so it is a homomorphism; the product conditions only cut
    # out the same locus once combined with invertibility.
    e = generic_endo(tangent2)
    vals = {"A": 1, "B": 0, "C": 0, "D": 1, "E": 0, "F": 0}
    n = numeric_instantiate(e, vals)
    assert n.is_homomorphism
    assert not n.is_automorphism
    # whereas A = B = D = E = 1 satisfies neither formulation
    bad = numeric_instantiate(e, {"A": 1, "B": 1, "C": 0, "D": 0, "E": 1, "F": 0})
    assert not bad.is_homomorphism
    assert bad.failing_pairs == [("X", "X")]


def test_numeric_instantiate_automorphism(tangent2):
    e = generic_endo(tangent2)
    n = numeric_instantiate(e, {"A": 1, "B": 0, "C": 2, "D": 0, "E": 1, "F": 3})
    assert n.is_homomorphism and n.is_automorphism
    assert n.det_linear == 1
    assert n.det_full() == 1
    ident = numeric_instantiate(e, identity_bindings(e))
    assert ident.matrix == identity_matrix(4, Fraction(1), Fraction(0))
    assert ident.is_automorphism


def test_generic_endo_quartic_names(quartic):
    e = generic_endo(quartic)
    assert len(e.unknowns) == 18
    assert e.unknowns[:9] == ("A", "B", "C", "D", "E", "F", "G", "H", "I")
    assert e.unknowns[9:] == ("J", "K", "L", "M", "N", "P", "Q", "R", "S")
    assert [repr(c) for c in e.images["X"][:4]] == ["0", "A", "B", "C"]
    assert repr(e.images["Y"][1]) == "J"


def test_constraints_quartic_frozen(quartic):
    e = generic_endo(quartic)
    sys_ = constraint_system(e)
    assert len(sys_.equations) == 7
    by_prov = {prov: repr(p.primitive()) for prov, p in zip(sys_.provenance, sys_.equations)}
    assert by_prov[("X^3*Y", "X^4")] == "A^3*J + 3*A*B^2*K + B^3*J"
    assert by_prov[("X^2*Y^2", "X^4")] == "A^2*J^2 + 2*A*B*K^2 + 2*B^2*J*K"
    assert by_prov[("Y^4", "X^4")] == "J^4 + 4*J*K^3"
    diff = "X^3 - Y^3"
    assert by_prov[(diff, "X^3")] == "A^3 + B^3 - J^3 - K^3"
    assert by_prov[(diff, "X^2*Y")] == "A^2*B - J^2*K"
    assert by_prov[(diff, "X*Y^2")] == "A*B^2 - J*K^2"
    assert (
        by_prov[(diff, "X^4")]
        == "A^2*C + 2*A*B*E + B^2*D - J^2*L - 2*J*K*N - K^2*M"
    )
    assert repr(sys_.nondegeneracy[0]) == "A*K - B*J"


def scalar_bindings(endo, value):
    """Bind each variable to value * itself, every other unknown to zero."""
    alg = endo.algebra
    vals = {u: Fraction(0) for u in endo.unknowns}
    for name, (v, idx) in endo.unknown_slots.items():
        var_index = alg.basis_index[tuple(1 if w == v else 0 for w in alg.ring.vars)]
        if idx == var_index:
            vals[name] = Fraction(value)
    return vals


def test_constraints_match_numeric_oracle(tangent2, quartic, sextic):
    rng = random.Random(51)
    for alg in (tangent2, quartic, sextic):
        e = generic_endo(alg)
        sys_ = constraint_system(e)
        hom_seen = 0
        for trial in range(40):
            if trial == 0:
                vals = identity_bindings(e)
            elif trial % 3 == 1:
                vals = scalar_bindings(e, rng.randint(1, 3))
            else:
                vals = {u: Fraction(rng.randint(-2, 2)) for u in e.unknowns}
            vanish = all(p.evaluate(vals) == 0 for p in sys_.equations)
            n = numeric_instantiate(e, vals)
            assert vanish == n.is_homomorphism
            if n.is_homomorphism:
                hom_seen += 1
                assert n.is_automorphism == (n.det_linear != 0)
        assert hom_seen > 0


def test_quartic_matrix_rows(quartic):
    e = generic_endo(quartic)
    m = extend_to_matrix(e)
    assert m.labels == ["X", "Y", "X^2", "X*Y", "Y^2", "X^3", "X^2*Y", "X*Y^2", "X^4"]
    fam = {"B": 0, "J": 0, "K": e.ring.var("A"), "M": e.ring.var("C")}
    mf = substitute(m, fam)
    diag = [repr(p) for p in mf.diagonal()]
    assert diag == ["A", "A", "A^2", "A^2", "A^2", "A^3", "A^3", "A^3", "A^4"]
    rep = determinants(mf, substitute(linear_matrix(e), fam))
    assert repr(rep.det_full) == "A^21"
    assert repr(rep.det_linear) == "A^2"
    # spot entries away from the diagonal
    assert repr(mf.entry("X", "X^3")) == "F"
    assert repr(m.entry("X^2", "X^4")) == "2*A*F + 2*B*H + C^2 + 2*D*E"
    assert repr(mf.entry("X^2", "X^4")) == "2*A*F + C^2 + 2*D*E"
    assert repr(mf.entry("X*Y", "X^4")) == "A*H + A*P + C*E + C*L + D*N"


def test_matrix_agrees_with_numeric(quartic):
    rng = random.Random(52)
    e = generic_endo(quartic)
    m = extend_to_matrix(e)
    for _ in range(5):
        vals = {u: Fraction(rng.randint(-3, 3)) for u in e.unknowns}
        n = numeric_instantiate(e, vals)
        sym = [[p.evaluate(vals) for p in row] for row in m.entries]
        assert sym == n.nil_matrix


def test_compose_and_det_multiplicativity(quartic):
    rng = random.Random(53)
    e = generic_endo(quartic)
    for _ in range(6):
        a = rng.choice([1, 2, -1, Fraction(1, 2)])
        vals = {u: Fraction(0) for u in e.unknowns}
        vals.update({"A": Fraction(a), "K": Fraction(a)})
        vals.update({"C": Fraction(rng.randint(-2, 2))})
        vals["M"] = vals["C"]
        n1 = numeric_instantiate(e, vals)
        assert n1.is_automorphism
        w = {u: Fraction(0) for u in e.unknowns}
        w.update({"A": Fraction(2), "K": Fraction(2), "C": Fraction(1), "M": Fraction(1)})
        n2 = numeric_instantiate(e, w)
        comp = compose(n1, n2)
        d1 = bareiss_determinant(deg1_block(quartic, comp), lambda x, y: x / y)
        assert d1 == n1.det_linear * n2.det_linear
        dfull = bareiss_determinant(nil_block(quartic, comp), lambda x, y: x / y)
        assert dfull == n1.det_full() * n2.det_full()
    ident = numeric_instantiate(e, identity_bindings(e))
    n = numeric_instantiate(e, vals)
    assert compose(n, ident) == n.matrix
    assert compose(ident, n) == n.matrix


def test_sextic_endo_basics(sextic):
    e = generic_endo(sextic)
    assert len(e.unknowns) == 28
    sys_ = constraint_system(e)
    assert sys_.equations
    ident = numeric_instantiate(e, identity_bindings(e))
    assert ident.is_automorphism
    assert all(p.evaluate(identity_bindings(e)) == 0 for p in sys_.equations)


def test_substitute_and_bindings():
    ring = PolyRing(("A", "B", "C"), QQ)
    closed = resolve_bindings(ring, {"A": ring.var("B") + 1, "B": ring.var("C") * 2})
    assert repr(closed["A"]) == "2*C + 1"
    with pytest.raises(EndoError):
        resolve_bindings(ring, {"A": ring.var("B"), "B": ring.var("A")})
    with pytest.raises(EndoError):
        resolve_bindings(ring, {"Z": 1})


def test_lift_to_field(quartic):
    e = generic_endo(quartic)
    sys_ = constraint_system(e)
    field = ExtensionField((-4, 0, 0, 1), (1, 2))
    lifted = lift_to_field(sys_, field)
    assert lifted.ring.domain is field
    assert repr(lifted.equations[0]) == repr(sys_.equations[0])


def test_one_variable_algebra():
    from weilaut.weil import AlgebraSpec

    spec = AlgebraSpec("line", ("T",), 1, [{(2,): Fraction(1)}])
    alg = build_algebra(spec)
    e = generic_endo(alg)
    assert e.unknowns == ("A",)
    sys_ = constraint_system(e)
    assert sys_.equations == []
    assert repr(sys_.nondegeneracy[0]) == "A"
