"""Exact scalar arithmetic for Cartan matrix entries.

Three domains, all exact:

* ``Rat``     -- rationals (arbitrary precision),
* ``Quad``    -- a real quadratic extension Q(sqrt(D)) for a fixed positive
  non-square integer radicand D, embedded with sqrt(D) > 0,
* ``RatFunc`` -- univariate rational functions over Q in one formal
  parameter, spelled ``p`` in the external grammar.

Values are immutable and normalized on construction: rationals in lowest
terms, a Quad with vanishing irrational part collapses to Rat, a constant
RatFunc collapses to Rat.  Two Quads interoperate only when their radicands
agree, and Quad never mixes with RatFunc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class DomainError(ValueError):
    """Raised when scalars from incompatible domains are combined."""


class ParseError(ValueError):
    """Raised on malformed scalar expressions."""


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient tuples ordered low degree -> high
# ---------------------------------------------------------------------------

Poly = tuple  # tuple[Fraction, ...], never empty, no trailing zeros unless (0,)

_PZERO: Poly = (Fraction(0),)
_PONE: Poly = (Fraction(1),)


def _ptrim(cs) -> Poly:
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _pis_zero(a: Poly) -> bool:
    return len(a) == 1 and a[0] == 0


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _ptrim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, _pneg(b))


def _pmul(a: Poly, b: Poly) -> Poly:
    if _pis_zero(a) or _pis_zero(b):
        return _PZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _pscale(a: Poly, c: Fraction) -> Poly:
    if c == 0:
        return _PZERO
    return tuple(x * c for x in a)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if _pis_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and not (len(r) == 1 and r[0] == 0):
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i in range(len(b)):
            r[k + i] -= c * b[i]
        r = list(_ptrim(r))
        if len(r) - 1 < db:
            break
    return _ptrim(q), _ptrim(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while not _pis_zero(b):
        a, b = b, _pdivmod(a, b)[1]
    if _pis_zero(a):
        return _PZERO
    return _pscale(a, 1 / a[-1])  # monic


def _pshift(a: Poly, k: int) -> Poly:
    """Compose with p -> p + k."""
    out: Poly = _PZERO
    base: Poly = _PONE
    shift: Poly = (Fraction(k), Fraction(1))
    for c in a:
        out = _padd(out, _pscale(base, c))
        base = _pmul(base, shift)
    return out


def _pformat(a: Poly) -> str:
    # grammar has no exponent operator, so p^k renders as a product
    if _pis_zero(a):
        return "0"
    parts: list[str] = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mono = "*".join(["p"] * k)
        if k == 0:
            body = _frac_str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_frac_str(abs(c))}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def _frac_str(q: Fraction) -> str:
    return str(q)  # "p/q" or "k", lowest terms


# ---------------------------------------------------------------------------
# scalar domains
# ---------------------------------------------------------------------------


class Scalar:
    """Common base; concrete values are Rat, Quad or RatFunc."""

    __slots__ = ()

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        return _arith(self, _coerce(other), "add")

    def __radd__(self, other):
        return _arith(_coerce(other), self, "add")

    def __sub__(self, other):
        return _arith(self, _coerce(other), "sub")

    def __rsub__(self, other):
        return _arith(_coerce(other), self, "sub")

    def __mul__(self, other):
        return _arith(self, _coerce(other), "mul")

    def __rmul__(self, other):
        return _arith(_coerce(other), self, "mul")

    def __truediv__(self, other):
        return _arith(self, _coerce(other), "div")

    def __rtruediv__(self, other):
        return _arith(_coerce(other), self, "div")

    def __neg__(self):
        return _arith(Rat(Fraction(-1)), self, "mul")

    def __bool__(self) -> bool:
        return not self.is_zero()

    # shared queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        raise NotImplementedError

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {format_scalar(self)}>"


@dataclass(frozen=True, repr=False)
class Rat(Scalar):
    value: Fraction

    def is_zero(self) -> bool:
        return self.value == 0


@dataclass(frozen=True, repr=False)
class Quad(Scalar):
    d: int
    a: Fraction  # rational part
    b: Fraction  # coefficient of sqrt(d); nonzero by construction

    def is_zero(self) -> bool:
        return False  # b != 0, and sqrt(d) is irrational


@dataclass(frozen=True, repr=False)
class RatFunc(Scalar):
    num: Poly
    den: Poly  # monic, coprime with num, positive degree overall

    def is_zero(self) -> bool:
        return False  # constants collapse to Rat


ZERO = Rat(Fraction(0))
ONE = Rat(Fraction(1))


def rational(p, q=1) -> Rat:
    return Rat(Fraction(p, q))


def quad(d: int, a, b) -> Scalar:
    """a + b*sqrt(d), collapsing to Rat when b == 0."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return Rat(a)
    _check_radicand(d)
    return Quad(d, a, b)


def _check_radicand(d) -> int:
    if not isinstance(d, int) or d <= 0:
        raise ParseError(f"radicand must be a positive integer, got {d!r}")
    r = math.isqrt(d)
    if r * r == d:
        raise ParseError(f"radicand {d} is a perfect square")
    return d


def ratfunc(num, den=_PONE) -> Scalar:
    """num/den over Q[p], reduced, monic denominator; constants become Rat."""
    num = _ptrim(Fraction(c) for c in num)
    den = _ptrim(Fraction(c) for c in den)
    if _pis_zero(den):
        raise ZeroDivisionError("zero denominator in rational function")
    if _pis_zero(num):
        return ZERO
    g = _pgcd(num, den)
    if len(g) > 1:
        num = _pdivmod(num, g)[0]
        den = _pdivmod(den, g)[0]
    lc = den[-1]
    num = _pscale(num, 1 / lc)
    den = _pscale(den, 1 / lc)
    if len(num) == 1 and len(den) == 1:
        return Rat(num[0] / den[0])
    return RatFunc(num, den)


PARAM = RatFunc((Fraction(0), Fraction(1)), _PONE)  # the formal parameter p


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Rat(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def scalar(x) -> Scalar:
    """Coerce an int, Fraction, string or Scalar into a Scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    return _coerce(x)


# ---------------------------------------------------------------------------
# arithmetic with domain promotion
# ---------------------------------------------------------------------------


def _arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if op == "sub":
        return _arith(x, _arith(Rat(Fraction(-1)), y, "mul"), "add")
    if op == "div":
        return _arith(x, _invert(y), "mul")
    if op not in ("add", "mul"):
        raise ValueError(f"unknown operation {op!r}")

    if isinstance(x, Rat) and isinstance(y, Rat):
        v = x.value + y.value if op == "add" else x.value * y.value
        return Rat(v)

    if isinstance(x, Quad) or isinstance(y, Quad):
        if isinstance(x, RatFunc) or isinstance(y, RatFunc):
            raise DomainError("cannot mix sqrt() and the parameter p")
        qx = x if isinstance(x, Quad) else None
        qy = y if isinstance(y, Quad) else None
        if qx and qy and qx.d != qy.d:
            raise DomainError(f"mixed radicands sqrt({qx.d}) and sqrt({qy.d})")
        d = (qx or qy).d
        xa, xb = (x.a, x.b) if qx else (x.value, Fraction(0))
        ya, yb = (y.a, y.b) if qy else (y.value, Fraction(0))
        if op == "add":
            return quad(d, xa + ya, xb + yb)
        return quad(d, xa * ya + xb * yb * d, xa * yb + xb * ya)

    # at least one RatFunc, the other Rat or RatFunc
    nx, dx = (x.num, x.den) if isinstance(x, RatFunc) else ((x.value,), _PONE)
    ny, dy = (y.num, y.den) if isinstance(y, RatFunc) else ((y.value,), _PONE)
    if op == "add":
        return ratfunc(_padd(_pmul(nx, dy), _pmul(ny, dx)), _pmul(dx, dy))
    return ratfunc(_pmul(nx, ny), _pmul(dx, dy))


def _invert(y: Scalar) -> Scalar:
    if isinstance(y, Rat):
        if y.value == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Rat(1 / y.value)
    if isinstance(y, Quad):
        n = y.a * y.a - y.b * y.b * y.d  # nonzero: d is not a square
        return quad(y.d, y.a / n, -y.b / n)
    return ratfunc(y.den, y.num)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact add | sub | mul | div in the joined domain."""
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"op must be add|sub|mul|div, got {op!r}")
    return _arith(_coerce(a), _coerce(b), op)


# ---------------------------------------------------------------------------
# sign, integrality
# ---------------------------------------------------------------------------


def sign(s: Scalar) -> int:
    """Exact sign under the real embedding sqrt(D) > 0; -1, 0 or +1."""
    s = _coerce(s)
    if isinstance(s, Rat):
        v = s.value
        return 0 if v == 0 else (1 if v > 0 else -1)
    if isinstance(s, Quad):
        sa = 0 if s.a == 0 else (1 if s.a > 0 else -1)
        sb = 1 if s.b > 0 else -1
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 against b^2 d, never equal for non-square d
        t = s.a * s.a - s.b * s.b * s.d
        return sa if t > 0 else sb
    raise DomainError("sign is undefined for a non-constant rational function")


def as_integer(s: Scalar):
    """The exact integer value of s, or None."""
    s = _coerce(s)
    if isinstance(s, Rat) and s.value.denominator == 1:
        return int(s.value)
    return None


def is_nonpositive_integer(s: Scalar) -> bool:
    k = as_integer(s)
    return k is not None and k <= 0


def is_in_even_nonpositive_integers(s: Scalar) -> bool:
    k = as_integer(s)
    return k is not None and k <= 0 and k % 2 == 0


def is_nonnegative_integer(s: Scalar) -> bool:
    k = as_integer(s)
    return k is not None and k >= 0


def is_in_even_nonnegative_integers(s: Scalar) -> bool:
    k = as_integer(s)
    return k is not None and k >= 0 and k % 2 == 0


def shift_param(s: Scalar, k: int) -> Scalar:
    """Substitute p -> p + k; identity on Rat and Quad."""
    if isinstance(s, RatFunc):
        return ratfunc(_pshift(s.num, k), _pshift(s.den, k))
    return s


def param_constant_bound(s: Scalar) -> Fraction:
    """Largest |constant coefficient| appearing in a RatFunc entry, else 0."""
    if isinstance(s, RatFunc):
        return max(abs(s.num[0]), abs(s.den[0]))
    return Fraction(0)


# ---------------------------------------------------------------------------
# canonical printing
# ---------------------------------------------------------------------------


def format_scalar(s: Scalar) -> str:
    """Deterministic round-trippable text; also the canonical sort key."""
    s = _coerce(s)
    if isinstance(s, Rat):
        return _frac_str(s.value)
    if isinstance(s, Quad):
        c = _lcm(s.a.denominator, s.b.denominator)
        va, vb = s.a * c, s.b * c  # integers
        if vb == 1:
            root = f"sqrt({s.d})"
        elif vb == -1:
            root = f"-sqrt({s.d})"
        else:
            root = f"{vb}*sqrt({s.d})"
        if va == 0:
            core = root
            wrap = False
        else:
            tail = root if vb < 0 else "+" + root
            core = f"{va}{tail}"
            wrap = True
        if c == 1:
            return core
        return f"({core})/{c}" if wrap else f"{core}/{c}"
    num = _pformat(s.num)
    if s.den == _PONE:
        return num
    return f"({num})/({_pformat(s.den)})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# parsing: expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
#          factor := INT | 'p' | 'sqrt' '(' INT ')' | '(' expr ')' | '-' factor
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> list:
    toks: list = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", int(text[i:j])))
            i = j
        elif text.startswith("sqrt", i):
            toks.append(("SQRT", None))
            i += 4
        elif ch == "p":
            toks.append(("PARAM", None))
            i += 1
        elif ch in "+-*/()":
            toks.append((ch, None))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} at position {i}")
    return toks


class _Parser:
    def __init__(self, toks: list):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        if self.pos >= len(self.toks):
            raise ParseError("unexpected end of expression")
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}")
        self.pos += 1
        return tok

    def expr(self) -> Scalar:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> Scalar:
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def factor(self) -> Scalar:
        kind = self.peek()
        if kind == "-":
            self.take()
            return -self.factor()
        if kind == "INT":
            return Rat(Fraction(self.take()[1]))
        if kind == "PARAM":
            self.take()
            return PARAM
        if kind == "SQRT":
            self.take()
            self.take("(")
            d = self.take("INT")[1]
            self.take(")")
            _check_radicand(d)
            return Quad(d, Fraction(0), Fraction(1))
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {kind}")


def parse_scalar(text: str) -> Scalar:
    """Parse one scalar expression; exact, normalized."""
    p = _Parser(_tokenize(text))
    v = p.expr()
    if p.pos != len(p.toks):
        raise ParseError(f"trailing input after position {p.pos}")
    return v
