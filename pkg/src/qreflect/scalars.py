"""Exact arithmetic in the field Q(p), with q represented as p^(2n).

A Scalar is a reduced fraction of integer-coefficient polynomials in the
base variable p.  Working over p instead of q keeps q^(1/n) (the overall
R-matrix factor) and q^(1/2) (coproduct legs) inside the field: with
q = p^(2n) both are plain integer powers of p.

Polynomials are tuples of ints indexed by degree, with no trailing zeros;
() is the zero polynomial.  Scalars are immutable and hashable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

# ---------------------------------------------------------------------------
# integer polynomials in p


def poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def poly_from_int(k):
    return (k,) if k else ()


def poly_monomial(coeff, deg):
    if coeff == 0:
        return ()
    return tuple([0] * deg + [coeff])


def poly_deg(a):
    return len(a) - 1  # -1 for the zero polynomial


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_neg(a):
    return tuple(-c for c in a)


def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return poly_trim(out)


def poly_scale(a, k):
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def poly_divmod(a, b):
    """Division with remainder over Q; only used where it stays integral."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lead = b[-1]
    qn = len(a) - len(b) + 1
    quo = [0] * qn
    for i in range(qn - 1, -1, -1):
        c = rem[i + len(b) - 1]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        f = c // lead
        quo[i] = f
        for j, cb in enumerate(b):
            rem[i + j] -= f * cb
    return poly_trim(quo), poly_trim(rem)


def poly_div_exact(a, b):
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("non-exact polynomial division")
    return q


def poly_content(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def poly_primitive(a):
    """Strip integer content; keeps the sign of the leading coefficient."""
    if not a:
        return (), 0
    g = poly_content(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a), g


def poly_valuation(a):
    if not a:
        return 0
    v = 0
    while a[v] == 0:
        v += 1
    return v


def poly_shift_down(a, v):
    return tuple(a[v:])


def _poly_pseudo_rem(a, b):
    """Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a reduced by b, over Z."""
    if len(a) < len(b):
        return a
    r = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        top = r[i + len(b) - 1]
        for j in range(len(r)):
            r[j] *= lead
        for j, cb in enumerate(b):
            r[i + j] -= top * cb
    return poly_trim(r)


def poly_gcd(a, b):
    """gcd in Z[p] (primitive, positive leading coefficient), content included."""
    if not a:
        p, _ = poly_primitive(b)
        return p if not p or p[-1] > 0 else poly_neg(p)
    if not b:
        p, _ = poly_primitive(a)
        return p if not p or p[-1] > 0 else poly_neg(p)
    ca, cb = abs(poly_content(a)), abs(poly_content(b))
    cg = math.gcd(ca, cb)
    va, vb = poly_valuation(a), poly_valuation(b)
    v = min(va, vb)
    a = poly_shift_down(tuple(c // ca for c in a), va)
    b = poly_shift_down(tuple(c // cb for c in b), vb)
    # both primitive with nonzero constant term now; primitive PRS loop
    while b:
        if len(b) == 1:  # nonzero constant divides nothing further
            a = (1,)
            break
        a, b = b, _poly_pseudo_rem(a, b)
        if b:
            b, _ = poly_primitive(b)
    g, _ = poly_primitive(a)
    if g and g[-1] < 0:
        g = poly_neg(g)
    g = poly_mul(g, poly_monomial(1, v)) if v else g
    return poly_scale(g, cg) if cg != 1 else g


def poly_eval(a, x):
    """Evaluate at a Fraction (or int) by Horner's rule."""
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_text(a, var="p"):
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            pw = var if d == 1 else f"{var}^{d}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# scalars


class PoleError(ArithmeticError):
    """Raised when a Scalar is evaluated at a pole."""


class Scalar:
    """A reduced fraction num/den of integer polynomials in p.

    Invariants: den != 0, gcd(num, den) = 1 in Z[p], leading coefficient
    of den positive.  Equality and hashing are structural, which agrees
    with equality of rational functions thanks to the canonical form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        if isinstance(num, int):
            num = poly_from_int(num)
        if isinstance(den, int):
            den = poly_from_int(den)
        num = poly_trim(num)
        den = poly_trim(den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not num:
            den = (1,)
        else:
            g = poly_gcd(num, den)
            if g != (1,):
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
            if den[-1] < 0:
                num, den = poly_neg(num), poly_neg(den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- helpers ------------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar(x)
        if isinstance(x, Fraction):
            return Scalar(poly_from_int(x.numerator), poly_from_int(x.denominator))
        return NotImplemented

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == (1,) and self.den == (1,)

    def __bool__(self):
        return bool(self.num)

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return Scalar(poly_add(self.num, other.num), self.den)
        return Scalar(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        object.__setattr__(s, "num", poly_neg(self.num))
        object.__setattr__(s, "den", self.den)
        return s

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return S_ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        # cross-cancel before multiplying to keep operands small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1 == (1,) else poly_div_exact(self.num, g1)
        d2 = other.den if g1 == (1,) else poly_div_exact(other.den, g1)
        n2 = other.num if g2 == (1,) else poly_div_exact(other.num, g2)
        d1 = self.den if g2 == (1,) else poly_div_exact(self.den, g2)
        num = poly_mul(n1, n2)
        den = poly_mul(d1, d2)
        if den[-1] < 0:
            num, den = poly_neg(num), poly_neg(den)
        s = object.__new__(Scalar)
        object.__setattr__(s, "num", num)
        object.__setattr__(s, "den", den)
        return s

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = poly_neg(num), poly_neg(den)
        s = object.__new__(Scalar)
        object.__setattr__(s, "num", num)
        object.__setattr__(s, "den", den)
        return s

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k == 0:
            return S_ONE
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Scalar({self.to_p_text()})"

    # -- evaluation and printing --------------------------------------------

    def evaluate(self, p0):
        """Exact value at p = p0 (a Fraction); raises PoleError on a pole."""
        p0 = Fraction(p0)
        d = poly_eval(self.den, p0)
        if d == 0:
            raise PoleError(f"pole at p = {p0}")
        return poly_eval(self.num, p0) / d

    def classical_limit(self):
        """Value at p = 1, i.e. the q -> 1 limit."""
        return self.evaluate(1)

    def to_p_text(self):
        """Canonical literal in the base variable p."""
        return _laurent_or_fraction(self.num, self.den, 1, "p")

    __str__ = to_p_text


S_ZERO = Scalar(0)
S_ONE = Scalar(1)


def _laurent_terms(num, den, step, var):
    """Render num/den as a Laurent polynomial in var = p^step, if possible."""
    v = poly_valuation(den)
    body = poly_shift_down(den, v)
    if len(body) != 1 or body[0] != 1:
        return None
    terms = []
    for d, c in enumerate(num):
        if c == 0:
            continue
        e = d - v
        if e % step:
            return None
        terms.append((e // step, c))
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms, reverse=True):
        mag = abs(c)
        if e == 0:
            body_s = str(mag)
        else:
            pw = var if e == 1 else f"{var}^{e}"
            body_s = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(body_s if c > 0 else "-" + body_s)
        else:
            parts.append(("+ " if c > 0 else "- ") + body_s)
    return " ".join(parts)


def _laurent_or_fraction(num, den, step, var):
    s = _laurent_terms(num, den, step, var)
    if s is not None:
        return s
    return f"({poly_text(num)})/({poly_text(den)})"


# ---------------------------------------------------------------------------
# session parameters and q-aware helpers


@dataclass(frozen=True)
class SessionParams:
    """Fixed matrix size n; every scalar in a computation shares q = p^(2n)."""

    n: int
    q_exponent: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix size n must be positive")
        object.__setattr__(self, "q_exponent", 2 * self.n)

    # -- distinguished scalars ----------------------------------------------

    def ppow(self, k):
        if k >= 0:
            return Scalar(poly_monomial(1, k))
        return Scalar((1,), poly_monomial(1, -k))

    def qpow(self, a, b=1):
        """q^(a/b) as an exact power of p; rejects non-integral p-exponents."""
        e, r = divmod(self.q_exponent * a, b)
        if r:
            raise ValueError(f"q^({a}/{b}) is not an integer power of p")
        return self.ppow(e)

    @property
    def q(self):
        return self.qpow(1)

    @property
    def omega(self):
        return self.qpow(1) - self.qpow(-1)

    def qint(self, k):
        """(q^k - q^-k)/(q - q^-1); odd in k."""
        if k == 0:
            return S_ZERO
        sign = 1 if k > 0 else -1
        acc = S_ZERO
        for i in range(abs(k)):
            acc = acc + self.qpow(abs(k) - 1 - 2 * i)
        return acc if sign > 0 else -acc

    def qhat(self, k):
        """Sum of q^(-2i+2) for i = 1..k; the quantum trace of a rank-k projector."""
        if k < 0 or k > self.n:
            raise ValueError(f"qhat defined for 0 <= k <= n, got {k}")
        return self.qhat_unbounded(k)

    def qhat_unbounded(self, k):
        """Same sum without the 0 <= k <= n guard (spectrum formulas need n+1)."""
        acc = S_ZERO
        for i in range(1, k + 1):
            acc = acc + self.qpow(-2 * i + 2)
        return acc

    def qhat_factorial(self, k):
        acc = S_ONE
        for i in range(1, k + 1):
            acc = acc * self.qhat_unbounded(i)
        return acc

    def integer(self, k):
        return Scalar(k)

    # -- text I/O -------------------------------------------------------------

    def parse(self, text):
        return _Parser(text, self).parse()

    def to_text(self, s):
        """Literal for s, preferring Laurent form in q, then p, then a fraction."""
        qs = _laurent_terms(s.num, s.den, self.q_exponent, "q")
        if qs is not None:
            return qs
        return s.to_p_text()


# ---------------------------------------------------------------------------
# literal parser (recursive descent)


class ScalarParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    """expr -> term (('+'|'-') term)*; term -> factor (('*'|'/') factor)*;
    factor -> ('+'|'-')* power; power -> atom ('^' exponent)?;
    atom -> integer | 'q' | 'p' | '(' expr ')'."""

    def __init__(self, text, params):
        self.text = text
        self.pos = 0
        self.params = params

    def parse(self):
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ScalarParseError("unexpected trailing input", self.pos)
        return value

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        value = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                value = value + self.term()
            elif c == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                value = value * self.factor()
            elif c == "/":
                self.pos += 1
                d = self.factor()
                if d.is_zero():
                    raise ScalarParseError("division by zero", self.pos)
                value = value / d
            else:
                return value

    def factor(self):
        sign = 1
        while True:
            c = self.peek()
            if c == "-":
                sign = -sign
                self.pos += 1
            elif c == "+":
                self.pos += 1
            else:
                break
        value = self.power()
        return value if sign > 0 else -value

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            num, den = self.exponent()
            if base is _Q:
                try:
                    return self.params.qpow(num, den)
                except ValueError as exc:
                    raise ScalarParseError(str(exc), self.pos) from None
            if base is _P:
                e, r = divmod(num, den)
                if r:
                    raise ScalarParseError("fractional power of p", self.pos)
                return self.params.ppow(e)
            if den != 1:
                raise ScalarParseError("fractional power of a non-variable", self.pos)
            if base.is_zero() and num < 0:
                raise ScalarParseError("zero to a negative power", self.pos)
            return base ** num
        if base is _Q:
            return self.params.qpow(1)
        if base is _P:
            return self.params.ppow(1)
        return base

    def exponent(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            a = self.signed_int()
            if self.peek() != "/":
                raise ScalarParseError("expected '/' in fractional exponent", self.pos)
            self.pos += 1
            b = self.signed_int()
            if b == 0:
                raise ScalarParseError("zero exponent denominator", self.pos)
            if self.peek() != ")":
                raise ScalarParseError("expected ')' after exponent", self.pos)
            self.pos += 1
            return a, b
        return self.signed_int(), 1

    def signed_int(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ScalarParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def atom(self):
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise ScalarParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if c == "q":
            self.pos += 1
            return _Q
        if c == "p":
            self.pos += 1
            return _P
        if c.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Scalar(int(self.text[start:self.pos]))
        raise ScalarParseError("expected number, variable or '('", self.pos)


# sentinels letting the parser resolve q/p lazily so exponents bind correctly
_Q = object.__new__(Scalar)
object.__setattr__(_Q, "num", (0, 1))
object.__setattr__(_Q, "den", (1,))
_P = object.__new__(Scalar)
object.__setattr__(_P, "num", (0, 1))
object.__setattr__(_P, "den", (1,))
