"""Sparse multivariate polynomials over an exact scalar field.

Terms live in a dict mapping exponent tuples to nonzero coefficients.
Coefficients are Fraction over the rational field and FieldElement over an
extension; all arithmetic on them is duck-typed. The only monomial order is
graded lexicographic, configurable by a precedence permutation of the
variables.
"""

from fractions import Fraction

from .scalar import FieldElement, sign_of


class PolyError(ArithmeticError):
    pass


class MonomialOrder:
    """grlex refined by a precedence permutation (indices, highest first)."""

    __slots__ = ("precedence",)

    def __init__(self, precedence):
        self.precedence = tuple(precedence)

    def key(self, exps):
        return (sum(exps), tuple(exps[i] for i in self.precedence))


class PolyRing:
    __slots__ = ("vars", "domain", "order", "index")

    def __init__(self, variables, domain, precedence=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError("duplicate variable names")
        self.domain = domain
        self.index = {v: i for i, v in enumerate(self.vars)}
        if precedence is None:
            order = tuple(range(len(self.vars)))
        else:
            if sorted(precedence) != sorted(self.vars):
                raise PolyError("precedence must permute the variables")
            order = tuple(self.index[v] for v in precedence)
        self.order = MonomialOrder(order)

    def nvars(self):
        return len(self.vars)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, x):
        c = self.domain.coerce(x)
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * len(self.vars): c})

    def var(self, name):
        e = [0] * len(self.vars)
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): self.domain.coerce(1)})

    def monomial(self, exps, coeff=1):
        c = self.domain.coerce(coeff)
        if not c:
            return self.zero()
        return Polynomial(self, {tuple(exps): c})

    def poly(self, terms):
        out = {}
        for exps, c in terms.items():
            c = self.domain.coerce(c)
            if c:
                out[tuple(exps)] = c
        return Polynomial(self, out)

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring is not self:
                raise PolyError("polynomial from another ring")
            return x
        return self.const(x)

    def same_vars(self, other):
        return self.vars == other.vars

    def monomial_str(self, exps):
        parts = []
        for v, e in zip(self.vars, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append("%s^%d" % (v, e))
        return "*".join(parts) if parts else "1"


def _coeff_str(c):
    # render a coefficient followed by '*', empty for 1
    if isinstance(c, FieldElement) and not c.is_rational_value():
        s = "(%r)" % (c,)
        return s + "*", False
    q = c.rational_value() if isinstance(c, FieldElement) else Fraction(c)
    neg = q < 0
    q = abs(q)
    return ("" if q == 1 else str(q) + "*"), neg


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basics ------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self.ring.const(other)
            except (TypeError, ValueError, ArithmeticError):
                return NotImplemented
        elif other.ring.vars != self.ring.vars:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        i = self.ring.index[var]
        return max((e[i] for e in self.terms), default=-1)

    def vars_used(self):
        used = set()
        for e in self.terms:
            for v, k in zip(self.ring.vars, e):
                if k:
                    used.add(v)
        return used

    def constant_value(self):
        if not self.terms:
            return self.ring.domain.coerce(0)
        (exps, c), = self.terms.items()
        if any(exps):
            raise PolyError("not a constant")
        return c

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def leading(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        key = self.ring.order.key
        exps = max(self.terms, key=key)
        return exps, self.terms[exps]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self.ring.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.domain.coerce(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        if other.ring is not self.ring:
            raise PolyError("polynomial from another ring")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def mul_capped(self, other, maxdeg):
        """Product with all monomials of total degree > maxdeg dropped."""
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > maxdeg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial(self.ring, out)

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def map_coeffs(self, fn, ring=None):
        ring = ring or self.ring
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return Polynomial(ring, out)

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, mapping):
        """Replace variables by polynomials (or scalars) of the same ring."""
        ring = self.ring
        idx = {ring.index[v]: ring.coerce(p) for v, p in mapping.items()}
        if not idx:
            return self
        pows = {i: {0: ring.one()} for i in idx}

        def power(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * idx[i]
            return cache[k]

        out = ring.zero()
        for e, c in self.terms.items():
            rest = list(e)
            piece = None
            for i in idx:
                if e[i]:
                    rest[i] = 0
                    p = power(i, e[i])
                    piece = p if piece is None else piece * p
            base = Polynomial(ring, {tuple(rest): c})
            out = out + (base if piece is None else base * piece)
        return out

    def evaluate(self, values):
        """Evaluate at scalars; every used variable must be given."""
        ring = self.ring
        vals = [None] * len(ring.vars)
        for v, x in values.items():
            vals[ring.index[v]] = x
        maxe = [0] * len(ring.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxe[i]:
                    maxe[i] = k
        pows = []
        for i, m in enumerate(maxe):
            if m and vals[i] is None:
                raise PolyError("no value for %s" % ring.vars[i])
            row = [1]
            for _ in range(m):
                row.append(row[-1] * vals[i])
            pows.append(row)
        acc = ring.domain.coerce(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pows[i][k]
            acc = acc + t
        return acc

    # -- structure ----------------------------------------------------------

    def content_exps(self):
        """Exponents of the largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(self.ring.vars)
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def divide_monomial(self, exps):
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exps))
            if any(k < 0 for k in ne):
                raise PolyError("monomial does not divide")
            out[ne] = c
        return Polynomial(self.ring, out)

    def monic(self):
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        if isinstance(lc, FieldElement):
            inv = lc.inverse()
        else:
            inv = 1 / Fraction(lc)
        return self.map_coeffs(lambda c: c * inv)

    def primitive(self):
        """Divide by the rational content, sign so the leading coeff is positive.

        Only meaningful when all coefficients are rational; otherwise falls
        back to monic().
        """
        if not self.terms:
            return self
        qs = []
        for c in self.terms.values():
            if isinstance(c, FieldElement):
                if not c.is_rational_value():
                    return self.monic()
                qs.append(c.rational_value())
            else:
                qs.append(Fraction(c))
        from math import gcd
        num = 0
        den = 1
        for q in qs:
            num = gcd(num, q.numerator)
            den = den * q.denominator // gcd(den, q.denominator)
        content = Fraction(num, den)
        _, lc = self.leading()
        lq = lc.rational_value() if isinstance(lc, FieldElement) else Fraction(lc)
        if lq < 0:
            content = -content
        return self.map_coeffs(lambda c: c * (1 / content))

    def exact_div(self, other):
        """Exact polynomial division; raises PolyError on a remainder."""
        other = self.ring.coerce(other)
        if not other:
            raise ZeroDivisionError("exact_div by zero")
        if other.is_constant():
            c = other.constant_value()
            inv = c.inverse() if isinstance(c, FieldElement) else 1 / Fraction(c)
            return self.map_coeffs(lambda v: v * inv)
        rem = Polynomial(self.ring, dict(self.terms))
        q = {}
        dexps, dc = other.leading()
        dinv = dc.inverse() if isinstance(dc, FieldElement) else 1 / Fraction(dc)
        key = self.ring.order.key
        while rem.terms:
            exps = max(rem.terms, key=key)
            ne = tuple(a - b for a, b in zip(exps, dexps))
            if any(k < 0 for k in ne):
                raise PolyError("division is not exact")
            c = rem.terms[exps] * dinv
            q[ne] = c
            rem = rem - Polynomial(self.ring, {ne: c}) * other
        return Polynomial(self.ring, q)

    def derivative(self, var):
        i = self.ring.index[var]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                nc = c * e[i]
                if nc:
                    out[tuple(ne)] = nc
        return Polynomial(self.ring, out)

    def coeffs_in(self, var):
        """dict degree -> coefficient polynomial (free of var)."""
        i = self.ring.index[var]
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            d = out.setdefault(k, {})
            d[tuple(ne)] = c
        return {k: Polynomial(self.ring, d) for k, d in out.items()}

    # -- rendering -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        key = self.ring.order.key
        parts = []
        for exps in sorted(self.terms, key=key, reverse=True):
            c = self.terms[exps]
            cs, neg = _coeff_str(c)
            mono = self.ring.monomial_str(exps)
            if mono == "1":
                if isinstance(c, FieldElement) and not c.is_rational_value():
                    body = "(%r)" % (c,)
                else:
                    q = c.rational_value() if isinstance(c, FieldElement) else Fraction(c)
                    body = str(abs(q))
            else:
                body = cs + mono
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def leading_term(p, order=None):
    """Order-maximal (monomial exponents, coefficient) of a nonzero p."""
    if order is None:
        return p.leading()
    if not p.terms:
        raise PolyError("zero polynomial has no leading term")
    exps = max(p.terms, key=order.key)
    return exps, p.terms[exps]


def poly_arith(p, q, op):
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise PolyError("polynomial operands required")
    if p.ring.vars != q.ring.vars:
        raise PolyError("mismatched variable contexts")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError("unknown op %r" % (op,))


# -- univariate tools: coefficient lists over the scalar field ---------------


def univariate_coeffs(p, var=None):
    """Coefficient list (constant first) of a polynomial using one variable."""
    used = p.vars_used()
    if var is None:
        if len(used) > 1:
            raise PolyError("polynomial is not univariate")
        var = next(iter(used)) if used else p.ring.vars[0]
    elif used - {var}:
        raise PolyError("polynomial uses more than %s" % var)
    i = p.ring.index[var]
    n = p.degree_in(var)
    out = [p.ring.domain.coerce(0)] * (n + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _ueval(coeffs, x):
    acc = None
    for c in reversed(coeffs):
        acc = c if acc is None else acc * x + c
    return acc


def _utrimmed(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _urem(a, b):
    """Remainder of coefficient lists over a field."""
    a = list(a)
    binv = b[-1].inverse() if isinstance(b[-1], FieldElement) else 1 / Fraction(b[-1])
    while len(a) >= len(b) and a:
        f = a[-1] * binv
        k = len(a) - len(b)
        for i, cb in enumerate(b):
            a[k + i] = a[k + i] - f * cb
        a = _utrimmed(a)
    return a


def _ugcd_monic(a, b):
    a, b = _utrimmed(a), _utrimmed(b)
    while b:
        a, b = b, _urem(a, b)
    if not a:
        return a
    ainv = a[-1].inverse() if isinstance(a[-1], FieldElement) else 1 / Fraction(a[-1])
    return [c * ainv for c in a]


def _uderiv(a):
    return _utrimmed([a[i] * i for i in range(1, len(a))])


def _uexact_div(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    binv = b[-1].inverse() if isinstance(b[-1], FieldElement) else 1 / Fraction(b[-1])
    while len(a) >= len(b) and a:
        f = a[-1] * binv
        k = len(a) - len(b)
        q[k] = f
        for i, cb in enumerate(b):
            a[k + i] = a[k + i] - f * cb
        a = _utrimmed(a)
    if a:
        raise PolyError("univariate division not exact")
    return q


def sturm_count(p, interval=(None, None)):
    """Distinct real roots of a univariate polynomial in (lo, hi].

    p is a Polynomial in one variable (or a coefficient list); None endpoints
    mean -oo / +oo. Signs of extension-field values go through scalar.sign_of.
    """
    coeffs = list(p) if isinstance(p, (list, tuple)) else univariate_coeffs(p)
    coeffs = _utrimmed(coeffs)
    if not coeffs:
        raise PolyError("zero polynomial")
    if len(coeffs) == 1:
        return 0
    d = _uderiv(coeffs)
    g = _ugcd_monic(coeffs, d)
    if len(g) > 1:
        coeffs = _uexact_div(coeffs, g)
    if len(coeffs) == 1:
        return 0
    chain = [coeffs, _uderiv(coeffs)]
    while len(chain[-1]) > 1:
        r = _urem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    lo, hi = interval

    def variations(x, at_inf):
        signs = []
        for q in chain:
            if at_inf == 0:
                s = sign_of(_ueval(q, x))
            else:
                s = sign_of(q[-1])
                if at_inf < 0 and (len(q) - 1) % 2 == 1:
                    s = -s
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    vlo = variations(Fraction(lo), 0) if lo is not None else variations(None, -1)
    vhi = variations(Fraction(hi), 0) if hi is not None else variations(None, +1)
    return vlo - vhi


def resultant(p, q, var):
    """Sylvester-matrix resultant of p and q with respect to var."""
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise PolyError("polynomial operands required")
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise PolyError("both polynomials need positive degree in %s" % var)
    ring = p.ring
    pc = p.coeffs_in(var)
    qc = q.coeffs_in(var)
    size = m + n
    zero = ring.zero()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = qc.get(k, zero)
        rows.append(row)
    from .linalg import bareiss_determinant
    return bareiss_determinant(rows, lambda a, b: a.exact_div(b))
