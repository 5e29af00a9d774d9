"""Exact multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients.  Monomials are compared in graded reverse lexicographic
order with the variables in declared order (``x0 > x1 > ...``).

Vector fields are tuples of polynomials; multivector fields are stored
as sparse maps from sorted index tuples to polynomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParseError

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


@lru_cache(maxsize=None)
def grevlex_key(mon: tuple) -> tuple:
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(mon), tuple(-e for e in reversed(mon)))


class PolyRing:
    """The polynomial ring Q[x_1..x_d] with named variables."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DimensionMismatch(f"repeated variable names in {names}")
        self.names = names
        self.nvars = len(names)
        self.zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"PolyRing({list(self.names)!r})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {self.zero_exp: Fraction(1)})

    def const(self, c) -> "Poly":
        c = as_rational(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "Poly":
        c = as_rational(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def parse(self, text: str, line: int = 1, col: int = 1) -> "Poly":
        return parse_poly(text, self, line=line, col=col)

    def coerce(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise DimensionMismatch("polynomial belongs to another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms and self.ring.nvars == other.ring.nvars
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.ring.zero_exp: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return Poly(self.ring, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            if not c:
                return Poly(self.ring, {})
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, mon: tuple, coeff: Fraction) -> "Poly":
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(m, mon)): c * coeff for m, c in self.terms.items()},
        )

    # calculus and evaluation
    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            k = m[i]
            if k:
                e = list(m)
                e[i] = k - 1
                out[tuple(e)] = c * k
        return Poly(self.ring, out)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute_shift(self, point: Sequence) -> "Poly":
        """Return p(x + point) as a polynomial in x."""
        ring = self.ring
        shifted = [g + as_rational(v) for g, v in zip(ring.gens(), point)]
        out = ring.zero
        for m, c in self.terms.items():
            t = ring.const(c)
            for s, e in zip(shifted, m):
                if e:
                    t = t * s**e
            out = out + t
        return out

    # ordering helpers
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key) if self.terms else None

    def leading_coefficient(self) -> Fraction:
        m = self.leading_monomial()
        return self.terms[m] if m is not None else Fraction(0)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exp, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)


def poly_eval(p: Poly, point: Sequence) -> Fraction:
    """Exact value of p at a rational point."""
    return p.eval(point)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            body = format_rational(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = format_rational(a) + "*" + "*".join(factors)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str, line: int, col: int):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].isspace():
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), col + start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), col + start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", line, col + start)
            tokens.append((ch, ch, col + start))
        pos = m.end()
    tokens.append(("end", "", col + len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, line, col):
        self.ring = ring
        self.line = line
        self.tokens = _tokenize(text, line, col)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok, expected=()):
        raise ParseError(msg, self.line, tok[2], expected)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial", self.peek(), ["number", "variable", "("])
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"unexpected {tok[1]!r}", tok, ["+", "-", "*", "end of input"])
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        p = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        tok = self.peek()
        if tok[0] == "num":
            c = self.coefficient()
            if self.peek()[0] == "name":
                # coefficient adjacent to a variable, as in 2x or 3/2 y^2
                return self.power() * c
            if self.peek()[0] == "^":
                exp = self.exponent()
                return self.ring.const(c**exp)
            return self.ring.const(c)
        return self.power()

    def coefficient(self):
        tok = self.take()
        value = Fraction(int(tok[1]))
        if self.peek()[0] == "/":
            slash = self.take()
            den = self.peek()
            if den[0] != "num":
                self.fail("expected denominator after '/'", slash, ["integer"])
            self.take()
            if int(den[1]) == 0:
                self.fail("zero denominator", den)
            value /= int(den[1])
        return value

    def exponent(self):
        caret = self.take()
        tok = self.peek()
        if tok[0] != "num":
            self.fail("malformed exponent after '^'", caret, ["non-negative integer"])
        self.take()
        return int(tok[1])

    def power(self):
        base = self.primary()
        if self.peek()[0] == "^":
            base = base ** self.exponent()
        return base

    def primary(self):
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            try:
                idx = self.ring.names.index(tok[1])
            except ValueError:
                self.fail(f"unknown variable {tok[1]!r}", tok, self.ring.names)
            return self.ring.gen(idx)
        if tok[0] == "(":
            self.take()
            p = self.expr()
            close = self.peek()
            if close[0] != ")":
                self.fail("unbalanced parenthesis", close, [")"])
            self.take()
            return p
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        self.fail(f"unexpected {what}", tok, ["number", "variable", "("])


def parse_poly(text: str, ring: PolyRing, line: int = 1, col: int = 1) -> Poly:
    """Parse a polynomial over ``ring``.

    Accepts integer and rational literals, the declared variables, the
    operators ``+ - * ^`` and parentheses.  A numeric coefficient may be
    written directly in front of a variable (``2x``, ``3/4 y^2``).
    """
    return _Parser(text, ring, line, col).parse()


# ---------------------------------------------------------------------------
# vector fields


class VectorField:
    """Polynomial vector field: one polynomial component per variable."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolyRing, components: Iterable):
        comps = tuple(ring.coerce(c) for c in components)
        if len(comps) != ring.nvars:
            raise DimensionMismatch(f"vector field has {len(comps)} components on a {ring.nvars}-dimensional base")
        self.ring = ring
        self.components = comps

    def __call__(self, f: Poly) -> Poly:
        out = self.ring.zero
        for i, c in enumerate(self.components):
            if c:
                out = out + c * f.diff(i)
        return out

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other):
        return VectorField(self.ring, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return VectorField(self.ring, [a - b for a, b in zip(self, other)])

    def __neg__(self):
        return VectorField(self.ring, [-a for a in self])

    def scale(self, f) -> "VectorField":
        f = self.ring.coerce(f)
        return VectorField(self.ring, [f * a for a in self])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def eval(self, point) -> tuple:
        return tuple(c.eval(point) for c in self.components)

    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def __repr__(self):
        return "VectorField(" + ", ".join(str(c) for c in self.components) + ")"


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X,Y]^k = X[Y^k] - Y[X^k]."""
    if X.ring.nvars != Y.ring.nvars:
        raise DimensionMismatch("vector fields live on different bases")
    return VectorField(X.ring, [X(yk) - Y(xk) for xk, yk in zip(X, Y)])


# ---------------------------------------------------------------------------
# multivector fields


def _merge_sign(a: tuple, b: tuple):
    """Sign and sorted union of two increasing index tuples (None if they meet)."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    for x in a:
        for y in b:
            if y < x:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


class Multivector:
    """A p-vector field sum f_I d_{i1} ^ ... ^ d_{ip} with increasing I."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: PolyRing, degree: int, terms: Mapping[tuple, Poly] = ()):
        self.ring = ring
        self.degree = degree
        clean = {}
        for idx, f in dict(terms).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DimensionMismatch(f"index {idx} does not have length {degree}")
            if any(i < 0 or i >= ring.nvars for i in idx) or list(idx) != sorted(set(idx)):
                raise DimensionMismatch(f"bad multi-index {idx}")
            f = ring.coerce(f)
            if f:
                clean[idx] = f
        self.terms = clean

    @classmethod
    def function(cls, f: Poly) -> "Multivector":
        return cls(f.ring, 0, {(): f})

    @classmethod
    def from_vector_field(cls, X: VectorField) -> "Multivector":
        return cls(X.ring, 1, {(i,): c for i, c in enumerate(X)})

    def to_vector_field(self) -> VectorField:
        if self.degree != 1:
            raise DimensionMismatch("not a vector field")
        return VectorField(self.ring, [self.terms.get((i,), self.ring.zero) for i in range(self.ring.nvars)])

    def to_function(self) -> Poly:
        if self.degree != 0:
            raise DimensionMismatch("not a function")
        return self.terms.get((), self.ring.zero)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise DimensionMismatch("adding multivectors of different degrees")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self.ring.zero) + v
        return Multivector(self.ring, self.degree, out)

    def __neg__(self):
        return Multivector(self.ring, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "Multivector":
        f = self.ring.coerce(f)
        return Multivector(self.ring, self.degree, {k: f * v for k, v in self.terms.items()})

    def wedge(self, other: "Multivector") -> "Multivector":
        out: dict = {}
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                s, idx = _merge_sign(a, b)
                if s:
                    out[idx] = out.get(idx, self.ring.zero) + f * g * s
        return Multivector(self.ring, self.degree + other.degree, out)

    def __repr__(self):
        names = self.ring.names
        if not self.terms:
            return f"Multivector(degree={self.degree}, 0)"
        body = " + ".join(
            f"({f})" + "".join(f"*d{names[i]}" for i in idx) for idx, f in sorted(self.terms.items())
        )
        return f"Multivector(degree={self.degree}, {body})"


def _right_theta_derivative(idx: tuple, i: int):
    """Right derivative of theta_idx with respect to theta_i: (sign, rest)."""
    if i not in idx:
        return 0, None
    k = idx.index(i)
    sign = -1 if (len(idx) - 1 - k) & 1 else 1
    return sign, idx[:k] + idx[k + 1 :]


def schouten_bracket(P: Multivector, Q: Multivector) -> Multivector:
    """Schouten-Nijenhuis bracket of multivector fields.

    Convention: [X, f] = X[f] for a vector field X and a function f, and
    [X, Y] is the Lie bracket.  For a p-vector P and a function f this gives
    [P, f] = (-1)^(p-1) i_df P, with i the left interior product.
    """
    ring = P.ring
    p, q = P.degree, Q.degree
    deg = p + q - 1
    if deg < 0:
        return Multivector(ring, 0, {})
    sign_swap = -1 if ((p - 1) * (q - 1)) & 1 else 1
    out: dict = {}

    def accumulate(A, B, factor):
        for a, f in A.terms.items():
            for i in a:
                s1, rest = _right_theta_derivative(a, i)
                for b, g in B.terms.items():
                    dg = g.diff(i)
                    if not dg:
                        continue
                    s2, idx = _merge_sign(rest, b)
                    if s2:
                        out[idx] = out.get(idx, ring.zero) + f * dg * (s1 * s2 * factor)

    accumulate(P, Q, 1)
    accumulate(Q, P, -sign_swap)
    return Multivector(ring, deg, out)


def interior_product(omega: Sequence[Poly], P: Multivector) -> Multivector:
    """Left contraction of the 1-form sum omega_i dx_i into P."""
    ring = P.ring
    if P.degree == 0:
        raise DimensionMismatch("cannot contract a 1-form into a function")
    if len(omega) != ring.nvars:
        raise DimensionMismatch("1-form has the wrong number of components")
    omega = [ring.coerce(w) for w in omega]
    out: dict = {}
    for idx, f in P.terms.items():
        for k, i in enumerate(idx):
            if omega[i]:
                rest = idx[:k] + idx[k + 1 :]
                term = f * omega[i] * (-1 if k & 1 else 1)
                out[rest] = out.get(rest, ring.zero) + term
    return Multivector(ring, P.degree - 1, out)


def differential(f: Poly) -> list[Poly]:
    """Components of df."""
    return [f.diff(i) for i in range(f.ring.nvars)]
