"""Text formats: algebra spec files, polynomial syntax, bindings files.

Spec files hold one or more blocks:

    algebra quartic { vars: X, Y; order: 4;
                      relations: X^3*Y, X^2*Y^2, Y^4, X^3 - Y^3;
                      precedence: Y > X; }

Polynomials use ^ for powers; * is optional between factors, and a bare name
like XY is split greedily against the declared variables. Bindings files are
line oriented: "SYMBOL = polynomial", plus "free:" and "nonzero:" name lists.
A # starts a comment.
"""

from fractions import Fraction

from .scalar import QQ
from .poly import PolyRing
from .weil import AlgebraSpec

_PUNCT = "{}();:,+-*^/>="


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "%s (line %d, col %d)" % (message, line, col)
        super().__init__(message)
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(("EOF", "", line, col))
    return tokens


class _TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        if t[0] != "EOF":
            self.pos += 1
        return t

    def expect(self, kind, value=None):
        t = self.peek()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise ParseError("expected %r, found %r" % (want, t[1] or t[0]), t[2], t[3])
        return self.next()

    def at(self, kind, value=None):
        t = self.peek()
        return t[0] == kind and (value is None or t[1] == value)


def _split_name(name, ring, line, col):
    """Greedy split of a bare name like XY into declared variables."""
    if name in ring.index:
        return [name]
    out = []
    rest = name
    variables = sorted(ring.vars, key=len, reverse=True)
    while rest:
        for v in variables:
            if rest.startswith(v):
                out.append(v)
                rest = rest[len(v):]
                break
        else:
            raise ParseError("unknown symbol %r" % name, line, col)
    return out


class _PolyParser:
    def __init__(self, stream, ring):
        self.s = stream
        self.ring = ring

    def parse_expr(self):
        s = self.s
        negate = False
        if s.at("-"):
            s.next()
            negate = True
        elif s.at("+"):
            s.next()
        p = self.parse_term()
        if negate:
            p = -p
        while s.at("+") or s.at("-"):
            op = s.next()[0]
            q = self.parse_term()
            p = p + q if op == "+" else p - q
        return p

    def parse_term(self):
        s = self.s
        p = self.parse_factor()
        while True:
            if s.at("*"):
                s.next()
                p = p * self.parse_factor()
            elif s.at("/"):
                t = s.next()
                q = self.parse_factor()
                if not q.is_constant() or not q:
                    raise ParseError("division only by nonzero constants", t[2], t[3])
                p = p * (1 / Fraction(q.constant_value()))
            elif s.at("NAME") or s.at("INT") or s.at("("):
                p = p * self.parse_factor()
            else:
                return p

    def parse_factor(self):
        s = self.s
        t = s.peek()
        if t[0] == "-":
            s.next()
            return -self.parse_factor()
        if t[0] == "INT":
            s.next()
            base = self.ring.const(Fraction(int(t[1])))
            return self._maybe_power(base)
        if t[0] == "(":
            s.next()
            p = self.parse_expr()
            s.expect(")")
            return self._maybe_power(p)
        if t[0] == "NAME":
            s.next()
            names = _split_name(t[1], self.ring, t[2], t[3])
            p = self.ring.one()
            for v in names[:-1]:
                p = p * self.ring.var(v)
            last = self.ring.var(names[-1])
            return p * self._maybe_power(last)
        raise ParseError("expected a polynomial factor, found %r" % (t[1] or t[0]), t[2], t[3])

    def _maybe_power(self, base):
        s = self.s
        if s.at("^"):
            s.next()
            t = s.expect("INT")
            return base ** int(t[1])
        return base


def parse_polynomial(text, ring):
    stream = _TokenStream(_tokenize(text))
    p = _PolyParser(stream, ring).parse_expr()
    t = stream.peek()
    if t[0] != "EOF":
        raise ParseError("trailing input %r" % (t[1],), t[2], t[3])
    return p


def _parse_poly_tokens(tokens, ring):
    stream = _TokenStream(tokens + [("EOF", "", 0, 0)])
    p = _PolyParser(stream, ring).parse_expr()
    t = stream.peek()
    if t[0] != "EOF":
        raise ParseError("trailing input %r" % (t[1],), t[2], t[3])
    return p


def _split_top_commas(tokens):
    groups = [[]]
    depth = 0
    for t in tokens:
        if t[0] == "(":
            depth += 1
        elif t[0] == ")":
            depth -= 1
        if t[0] == "," and depth == 0:
            groups.append([])
        else:
            groups[-1].append(t)
    return [g for g in groups if g]


def parse_specfile(text):
    """Parse every algebra block in the text; returns a list of AlgebraSpec."""
    s = _TokenStream(_tokenize(text))
    specs = []
    while not s.at("EOF"):
        s.expect("NAME", "algebra")
        name = s.expect("NAME")[1]
        s.expect("{")
        entries = {}
        while not s.at("}"):
            key_tok = s.expect("NAME")
            key = key_tok[1]
            s.expect(":")
            toks = []
            while not s.at(";"):
                if s.at("EOF") or s.at("}"):
                    t = s.peek()
                    raise ParseError("missing ';' after %r entry" % key, t[2], t[3])
                toks.append(s.next())
            s.expect(";")
            if key in entries:
                raise ParseError("duplicate %r entry" % key, key_tok[2], key_tok[3])
            entries[key] = (toks, key_tok)
        s.expect("}")
        specs.append(_build_spec(name, entries))
    if not specs:
        raise ParseError("no algebra block found")
    return specs


def _names_list(tokens, what):
    names = []
    expect_name = True
    for t in tokens:
        if expect_name:
            if t[0] != "NAME":
                raise ParseError("expected a name in %s" % what, t[2], t[3])
            names.append(t[1])
            expect_name = False
        else:
            if t[0] != ",":
                raise ParseError("expected ',' in %s" % what, t[2], t[3])
            expect_name = True
    if expect_name and names:
        raise ParseError("trailing ',' in %s" % what)
    return names


def _build_spec(name, entries):
    for key in entries:
        if key not in ("vars", "order", "relations", "precedence"):
            toks, kt = entries[key]
            raise ParseError("unknown entry %r" % key, kt[2], kt[3])
    for key in ("vars", "order", "relations"):
        if key not in entries:
            raise ParseError("algebra %r is missing the %r entry" % (name, key))
    variables = _names_list(entries["vars"][0], "vars")
    if not variables:
        raise ParseError("empty vars list in algebra %r" % name)
    otoks = entries["order"][0]
    if len(otoks) != 1 or otoks[0][0] != "INT":
        t = otoks[0] if otoks else entries["order"][1]
        raise ParseError("order must be a positive integer", t[2], t[3])
    order = int(otoks[0][1])
    precedence = None
    if "precedence" in entries:
        ptoks = entries["precedence"][0]
        precedence = []
        expect_name = True
        for t in ptoks:
            if expect_name:
                if t[0] != "NAME":
                    raise ParseError("expected a variable in precedence", t[2], t[3])
                precedence.append(t[1])
                expect_name = False
            else:
                if t[0] != ">":
                    raise ParseError("expected '>' in precedence", t[2], t[3])
                expect_name = True
        if sorted(precedence) != sorted(variables):
            t = entries["precedence"][1]
            raise ParseError("precedence must list every variable exactly once", t[2], t[3])
    ring = PolyRing(tuple(variables), QQ, tuple(precedence) if precedence else None)
    relations = []
    for group in _split_top_commas(entries["relations"][0]):
        relations.append(_parse_poly_tokens(group, ring))
    try:
        return AlgebraSpec(name, variables, order, relations, precedence)
    except ValueError as exc:
        raise ParseError(str(exc))


def parse_bindings(text, ring):
    """Bindings file: SYMBOL = polynomial, free: names, nonzero: names."""
    bindings = {}
    free = []
    nonzero = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("free:"):
            free.extend(_names_from_csv(line[len("free:"):], ring, lineno))
            continue
        if line.startswith("nonzero:"):
            nonzero.extend(_names_from_csv(line[len("nonzero:"):], ring, lineno))
            continue
        if "=" not in line:
            raise ParseError("expected 'SYMBOL = polynomial'", lineno, 1)
        sym, _, rhs = line.partition("=")
        sym = sym.strip()
        if sym not in ring.index:
            raise ParseError("unknown symbol %r in bindings" % sym, lineno, 1)
        if sym in bindings:
            raise ParseError("symbol %r bound twice" % sym, lineno, 1)
        try:
            bindings[sym] = parse_polynomial(rhs, ring)
        except ParseError as exc:
            raise ParseError("in binding for %s: %s" % (sym, exc), lineno, 1)
    return {"bindings": bindings, "free": free, "nonzero": nonzero}


def _names_from_csv(chunk, ring, lineno):
    names = []
    for part in chunk.split(","):
        part = part.strip()
        if not part:
            continue
        if part not in ring.index:
            raise ParseError("unknown symbol %r" % part, lineno, 1)
        names.append(part)
    return names
