"""Exact linear algebra helpers.

Works over any commutative domain whose elements support +, -, * and
truthiness for zero tests. Division is injected where needed so the same
routines serve Fraction, FieldElement and Polynomial entries.
"""


class LinalgError(ArithmeticError):
    pass


def bareiss_determinant(rows, exact_div):
    """Fraction-free determinant. exact_div(a, b) must divide exactly."""
    n = len(rows)
    if n == 0:
        raise LinalgError("empty matrix")
    for r in rows:
        if len(r) != n:
            raise LinalgError("matrix is not square")
    m = [list(r) for r in rows]
    zero = m[0][0] - m[0][0]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else exact_div(num, prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def field_div(a, b):
    """Division usable as the exact_div hook for field entries."""
    from fractions import Fraction
    from .scalar import FieldElement
    if isinstance(a, FieldElement) or isinstance(b, FieldElement):
        if not isinstance(a, FieldElement):
            return b.__rtruediv__(a)
        return a / b
    return Fraction(a) / Fraction(b)


def rref(rows):
    """Reduced row echelon form over a field. Returns (new rows, pivot cols)."""
    if not rows:
        return [], []
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv_row = [field_div(x, m[r][c]) for x in m[r]]
        m[r] = inv_row
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], inv_row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def matmul(a, b):
    if not a or not b:
        raise LinalgError("empty matrix")
    inner = len(b)
    for row in a:
        if len(row) != inner:
            raise LinalgError("shape mismatch")
    ncols = len(b[0])
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = None
            for k in range(inner):
                t = row[k] * b[k][j]
                acc = t if acc is None else acc + t
            new.append(acc)
        out.append(new)
    return out


def identity_matrix(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
