"""Exact scalar arithmetic: rationals and simple real algebraic extensions.

An ExtensionField is Q[c]/(p(c)) for a monic p with one isolated real root;
elements are coefficient tuples reduced mod p. Degree 1 (p = x, root 0) is
plain Q and its coerce() hands back bare Fraction so rational-only pipelines
never pay for the wrapper. No floating point anywhere.
"""

from fractions import Fraction


class FieldError(ArithmeticError):
    pass


def _utrim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _uadd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _utrim(out)


def _uscale(a, s):
    return _utrim([c * s for c in a])


def _umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _utrim(out)


def _udivmod(a, b):
    # exact over a field; b != 0
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, cb in enumerate(b):
            a[k + i] -= f * cb
        _utrim(a)
    return _utrim(q), a


def eval_rational(coeffs, x):
    """Horner evaluation of a coefficient list at a rational point."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_interval(coeffs, lo, hi):
    # interval Horner with exact rational endpoints
    rlo = rhi = Fraction(0)
    for c in reversed(coeffs):
        cands = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo, rhi = min(cands) + c, max(cands) + c
    return rlo, rhi


class ExtensionField:
    """Q[c]/(minpoly) with a rational interval isolating one real root.

    minpoly is a coefficient tuple (constant first), monic. Irreducibility is
    the caller's contract. Degree 1 is the rational field itself.
    """

    __slots__ = ("minpoly", "lo", "hi", "gen_name")

    def __init__(self, minpoly, root_interval=(0, 0), gen_name="c"):
        mp = tuple(Fraction(a) for a in minpoly)
        if len(mp) < 2 or mp[-1] != 1:
            raise FieldError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = mp
        self.lo = Fraction(root_interval[0])
        self.hi = Fraction(root_interval[1])
        self.gen_name = gen_name
        if self.degree > 1:
            slo = eval_rational(mp, self.lo)
            shi = eval_rational(mp, self.hi)
            if slo == 0 or shi == 0 or (slo > 0) == (shi > 0):
                raise FieldError("root interval must give a sign change of the minimal polynomial")

    @property
    def degree(self):
        return len(self.minpoly) - 1

    def is_rational(self):
        return self.degree == 1

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field.minpoly != self.minpoly:
                raise FieldError("element of a different field")
            return x if self.degree > 1 else x.coeffs[0]
        q = Fraction(x)
        if self.degree == 1:
            return q
        return FieldElement(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def element(self, coeffs):
        cs = [Fraction(a) for a in coeffs]
        if len(cs) > self.degree:
            _, cs = _udivmod(cs, list(self.minpoly))
        cs += [Fraction(0)] * (self.degree - len(cs))
        if self.degree == 1:
            return cs[0]
        return FieldElement(self, tuple(cs))

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def gen(self):
        if self.degree == 1:
            raise FieldError("rational field has no generator")
        return self.element([0, 1])

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and self.minpoly == other.minpoly)

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        terms = poly_str(self.minpoly, self.gen_name)
        return "QQ[%s]/(%s)" % (self.gen_name, terms)


def poly_str(coeffs, var):
    """Render a univariate coefficient list, highest power first."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            if abs(c) != 1:
                mono = "%s*%s" % (abs(c), mono)
        if not parts:
            parts.append(mono if c > 0 else "-" + mono)
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts) if parts else "0"


QQ = ExtensionField((0, 1))


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field.minpoly != self.field.minpoly:
                raise FieldError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            f = self.field
            return FieldElement(f, (Fraction(other),) + (Fraction(0),) * (f.degree - 1))
        return None

    def __bool__(self):
        return any(self.coeffs)

    def is_rational_value(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational_value():
            raise FieldError("not a rational element")
        return self.coeffs[0]

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = _umul(list(self.coeffs), list(o.coeffs))
        _, rem = _udivmod(prod, list(self.field.minpoly))
        rem += [Fraction(0)] * (self.field.degree - len(rem))
        return FieldElement(self.field, tuple(rem))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("field element is zero")
        # extended Euclid against the minimal polynomial
        r0, r1 = list(self.field.minpoly), _utrim(list(self.coeffs))
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = _udivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _uadd(t0, _uscale(_umul(q, t1), -1))
        if len(r0) != 1:
            raise FieldError("element not invertible (reducible minimal polynomial?)")
        inv = _uscale(t0, 1 / r0[0])
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return FieldElement(self.field, tuple(inv[: self.field.degree]))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        if isinstance(out, Fraction):  # degree-1 field
            return self.coeffs[0] ** n
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational_value():
            return hash(self.coeffs[0])
        return hash((self.field.minpoly, self.coeffs))

    def __repr__(self):
        return poly_str(self.coeffs, self.field.gen_name)


def field_arith(a, b, op):
    """Exact field arithmetic on two elements of the same field.

    op is one of add, sub, mul, div. Plain rationals count as elements of Q.
    """
    ra = isinstance(a, (int, Fraction))
    rb = isinstance(b, (int, Fraction))
    if not ra and not rb and a.field.minpoly != b.field.minpoly:
        raise FieldError("operands from different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        if rb:
            b = Fraction(b)
            return a / b if ra else a * (1 / b)
        return a / b
    raise ValueError("unknown op %r" % (op,))


def sign_of(a):
    """Sign (-1, 0, +1) of a scalar at the field's isolated real root."""
    if isinstance(a, (int, Fraction)):
        return (a > 0) - (a < 0)
    if not a:
        return 0
    field = a.field
    if field.degree == 1:
        q = a.coeffs[0]
        return (q > 0) - (q < 0)
    lo, hi = field.lo, field.hi
    mp = list(field.minpoly)
    slo = eval_rational(mp, lo)
    cs = list(a.coeffs)
    while True:
        vlo, vhi = _eval_interval(cs, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        mid = (lo + hi) / 2
        smid = eval_rational(mp, mid)
        if smid == 0:
            # the isolated root turned out rational: evaluate exactly
            v = eval_rational(cs, mid)
            return (v > 0) - (v < 0)
        if (smid > 0) == (slo > 0):
            lo, slo = mid, smid
        else:
            hi = mid


def rational_kth_root(q, k):
    """Exact k-th root of a Fraction, or None. Negative q needs odd k."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    neg = q < 0
    if neg:
        if k % 2 == 0:
            return None
        q = -q
    rn = _int_kth_root(q.numerator, k)
    rd = _int_kth_root(q.denominator, k)
    if rn is None or rd is None:
        return None
    r = Fraction(rn, rd)
    return -r if neg else r


def _int_kth_root(n, k):
    if n == 0:
        return 0
    if n == 1:
        return 1
    lo, hi = 1, 1 << ((n.bit_length() + k - 1) // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def kth_root_in_field(field, d, k):
    """A field element r with r**k == d, or None.

    d is rational or a field element. Searches roots of monomial shape
    q*c^j, which is complete for the pure-power minimal polynomials
    (c^m - d0) this package builds; for even k the positive root is returned.
    """
    d = field.coerce(d)
    if field.degree == 1:
        r = rational_kth_root(d, k)
        return None if r is None else r
    mp = field.minpoly
    m = field.degree
    if any(mp[i] for i in range(1, m)):
        return None  # not a pure power extension; out of scope
    d0 = -mp[0]
    # target as q*c^j?
    nz = [i for i, c in enumerate(d.coeffs) if c]
    if len(nz) != 1:
        return None
    jd, qd = nz[0], d.coeffs[nz[0]]
    for j in range(m):
        # (s*c^j)^k = s^k * d0^(kj div m) * c^(kj mod m)
        if (k * j) % m != jd:
            continue
        base = d0 ** ((k * j) // m)
        s = rational_kth_root(qd / base, k)
        if s is None:
            continue
        root = field.element([0] * j + [s])
        if k % 2 == 0 and sign_of(root) < 0:
            root = -root
        return root
    return None
