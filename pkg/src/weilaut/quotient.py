"""Groebner bases (Buchberger) and normal forms for truncated ideals.

The ideals here always contain every monomial of total degree r + 1, which
keeps the quotient finite-dimensional and Buchberger trivially terminating.
Coefficients are rational.
"""

from itertools import combinations

from .poly import Polynomial, PolyError


class IdealPresentation:
    __slots__ = ("ring", "generators", "truncation_order")

    def __init__(self, ring, generators, truncation_order):
        if truncation_order < 1:
            raise PolyError("truncation order must be positive")
        gens = []
        for g in generators:
            g = ring.coerce(g)
            if g.is_constant() and g:
                raise PolyError("a nonzero constant generator makes the quotient trivial")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.truncation_order = truncation_order


class GroebnerBasis:
    __slots__ = ("ring", "elements", "order", "truncation_order", "_leads")

    def __init__(self, ring, elements, truncation_order):
        self.ring = ring
        self.elements = tuple(elements)
        self.order = ring.order
        self.truncation_order = truncation_order
        self._leads = tuple(g.leading()[0] for g in self.elements)


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _lcm_exps(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _truncation_monomials(ring, r):
    n = len(ring.vars)
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], r + 1, n)
    return [ring.monomial(e) for e in out]


def _reduce(p, basis):
    """Full remainder of p modulo the (monic) basis polynomials."""
    ring = p.ring
    key = ring.order.key
    rem = {}
    work = dict(p.terms)
    while work:
        exps = max(work, key=key)
        c = work.pop(exps)
        hit = None
        for g in basis:
            le = g.leading()[0]
            if _divides(le, exps):
                hit = (g, le)
                break
        if hit is None:
            rem[exps] = rem.get(exps, 0) + c
            continue
        g, le = hit
        shift = tuple(a - b for a, b in zip(exps, le))
        sub = Polynomial(ring, {shift: c}) * g
        for e, v in sub.terms.items():
            if e == exps:
                continue
            s = work.get(e, 0) - v
            if s:
                work[e] = s
            elif e in work:
                del work[e]
    return Polynomial(ring, {e: c for e, c in rem.items() if c})


def buchberger(ideal, ring=None):
    """Reduced monic Groebner basis of generators + degree-(r+1) monomials.

    An alternate ring over the same variables may be passed to redo the
    computation under a different precedence.
    """
    if ring is None:
        ring = ideal.ring
    elif ring.vars != ideal.ring.vars:
        raise PolyError("alternate ring must share the variable list")
    r = ideal.truncation_order
    gens = [g if g.ring is ring else Polynomial(ring, dict(g.terms)) for g in ideal.generators]
    basis = []
    for g in gens + _truncation_monomials(ring, r):
        g = _reduce(g, basis)
        if g:
            basis.append(g.monic())
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        gi, gj = basis[i], basis[j]
        li, lj = gi.leading()[0], gj.leading()[0]
        lcm = _lcm_exps(li, lj)
        if tuple(a + b for a, b in zip(li, lj)) == lcm:
            continue  # coprime leading monomials
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        s = Polynomial(ring, {si: ring.domain.coerce(1)}) * gi - Polynomial(
            ring, {sj: ring.domain.coerce(1)}
        ) * gj
        s = _reduce(s, basis)
        if s:
            basis.append(s.monic())
            k = len(basis) - 1
            pairs.extend((t, k) for t in range(k))
    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(basis):
        li = g.leading()[0]
        if any(
            _divides(basis[j].leading()[0], li)
            for j in range(len(basis))
            if j != i and (j < i or basis[j].leading()[0] != li)
        ):
            continue
        keep.append(g)
    # tail-reduce each against the others
    final = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        final.append(_reduce(g, others).monic())
    final.sort(key=lambda g: ring.order.key(g.leading()[0]))
    return GroebnerBasis(ring, final, r)


def normal_form(p, gb):
    if p.ring.vars != gb.ring.vars:
        raise PolyError("mismatched variable context")
    return _reduce(p, gb.elements)


def standard_monomials(gb, r=None):
    """Monomials of degree <= r outside the leading-term ideal, ascending."""
    ring = gb.ring
    if r is None:
        r = gb.truncation_order
    out = []
    n = len(ring.vars)
    key = ring.order.key

    def rec(prefix, left, slots, acc):
        if slots == 1:
            for k in range(left + 1):
                acc.append(tuple(prefix + [k]))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1, acc)

    acc = []
    rec([], r, n, acc)
    for e in acc:
        if sum(e) <= r and not any(_divides(le, e) for le in gb._leads):
            out.append(e)
    out.sort(key=key)
    return out


def nf_table(gb, r=None):
    """Normal form of every monomial of degree <= truncation bound.

    Returns a dict exponent tuple -> Polynomial supported on standard
    monomials. Covers degrees up to r + 1 so products of basis monomials can
    be reduced by table lookup.
    """
    ring = gb.ring
    if r is None:
        r = gb.truncation_order
    table = {}
    n = len(ring.vars)

    def rec(prefix, left, slots, acc):
        if slots == 1:
            for k in range(left + 1):
                acc.append(tuple(prefix + [k]))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1, acc)

    acc = []
    rec([], 2 * r, n, acc)
    for e in acc:
        table[e] = normal_form(ring.monomial(e), gb)
    return table
