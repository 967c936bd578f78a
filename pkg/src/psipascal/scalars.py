"""Exact scalar arithmetic for the two field domains everything else runs on.

There are exactly two domains:

* rationals, represented by stdlib ``fractions.Fraction`` (already reduced,
  positive denominator, zero is 0/1), and
* rational functions in one indeterminate ``q`` over the rationals,
  represented by :class:`RationalFunction`.

A :class:`RationalFunction` is kept in a canonical form (numerator and
denominator coprime, denominator monic, zero is 0/1) so that equality is a
structural comparison of coefficient tuples.  Rationals embed into the
rational-function domain as constants; the reverse direction is an error.

All values are immutable and all operations are pure, so they can be shared
freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

Rational = Fraction

__all__ = [
    "Rational",
    "RationalFunction",
    "Scalar",
    "ScalarField",
    "RATIONAL_FIELD",
    "RATIONAL_FUNCTION_FIELD",
    "ScalarParseError",
    "FieldMismatchError",
    "PoleError",
    "q",
    "field_of",
    "scalar_to_string",
    "scalar_to_latex",
    "parse_rational",
    "parse_rational_function",
    "parse_scalar",
]


class ScalarParseError(ValueError):
    """Malformed scalar text; ``position`` is the offset of the first bad character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.message = message
        self.position = position


class FieldMismatchError(TypeError):
    """A value from one scalar domain was forced into the other."""


class PoleError(ZeroDivisionError):
    """Substitution point is a root of the denominator."""


# ---------------------------------------------------------------------------
# dense polynomial helpers (ascending coefficient tuples, () is zero)
# ---------------------------------------------------------------------------

_Coeff = Union[int, Fraction]


def _simplify(c: _Coeff) -> _Coeff:
    # integral Fractions collapse to int so the hot paths stay on machine ints
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(a: _Coeff, b: _Coeff) -> _Coeff:
    if b == 1:
        return a
    return _simplify(Fraction(a) / Fraction(b))


def _ptrim(cs) -> tuple:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(_simplify(c) for c in cs[:n])


def _pconst(c) -> tuple:
    c = _simplify(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
    return (c,) if c else ()


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def _psub(a: tuple, b: tuple) -> tuple:
    return _padd(a, _pneg(b))


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return _ptrim(out)


def _ppow(a: tuple, e: int) -> tuple:
    out = (1,)
    base = a
    while e:
        if e & 1:
            out = _pmul(out, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return out


def _pdivmod(num: tuple, den: tuple) -> tuple:
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return (), ()
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return (), num
    rem = list(num)
    lead = den[-1]
    quo = [0] * (dn - dd + 1)
    for i in range(dn, dd - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = _cdiv(c, lead)
        quo[i - dd] = f
        rem[i] = 0
        off = i - dd
        for t in range(dd):
            if den[t]:
                rem[off + t] -= f * den[t]
    return _ptrim(quo), _ptrim(rem[:dd])


def _pprimitive(a: tuple) -> tuple:
    """Integer-coefficient primitive part with positive leading coefficient."""
    if not a:
        return ()
    scale = 1
    for c in a:
        if isinstance(c, Fraction):
            scale = lcm(scale, c.denominator)
    ints = [int(c * scale) for c in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return tuple(v // g for v in ints)


def _pmonic(a: tuple) -> tuple:
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(_cdiv(c, lead) for c in a)


def _pgcd(a: tuple, b: tuple) -> tuple:
    a, b = _pprimitive(a), _pprimitive(b)
    while b:
        a, b = b, _pprimitive(_pdivmod(a, b)[1])
    return _pmonic(a)


def _peval(a: tuple, point: Fraction):
    acc = 0
    for c in reversed(a):
        acc = acc * point + c
    return acc


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _qpow_str(k: int) -> str:
    return "q" if k == 1 else f"q^{k}"


def _poly_str(cs: tuple) -> str:
    if not cs:
        return "0"
    parts = []
    for k, c in enumerate(cs):
        if not c:
            continue
        mag = abs(Fraction(c))
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = _qpow_str(k)
        else:
            body = f"{mag}*{_qpow_str(k)}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _poly_latex(cs: tuple) -> str:
    if not cs:
        return "0"
    parts = []
    for k, c in enumerate(cs):
        if not c:
            continue
        frac = Fraction(c)
        mag = abs(frac)
        if k == 0:
            body = _frac_latex(mag)
        else:
            power = "q" if k == 1 else f"q^{{{k}}}"
            body = power if mag == 1 else f"{_frac_latex(mag)} {power}"
        if not parts:
            parts.append(f"-{body}" if frac < 0 else body)
        else:
            parts.append(f" - {body}" if frac < 0 else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------


def _to_poly(value) -> tuple:
    if isinstance(value, (int, Fraction)):
        return _pconst(value)
    if isinstance(value, RationalFunction):
        raise TypeError("polynomial coefficients expected, not a RationalFunction")
    return _ptrim(list(value))


class RationalFunction:
    """A reduced quotient of two polynomials in q with rational coefficients."""

    __slots__ = ("_num", "_den")

    def __init__(self, numerator=0, denominator=1):
        num = _to_poly(numerator)
        den = _to_poly(denominator)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self._num, self._den = (), (1,)
            return
        quo, rem = _pdivmod(num, den)
        if not rem:
            num, den = quo, (1,)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(_cdiv(c, lead) for c in num)
                den = tuple(_cdiv(c, lead) for c in den)
        self._num, self._den = num, den

    @classmethod
    def _make(cls, num: tuple, den: tuple) -> "RationalFunction":
        # bypass for results already known to be canonical
        obj = object.__new__(cls)
        obj._num, obj._den = num, den
        return obj

    @classmethod
    def from_coefficients(cls, numerator: Iterable, denominator: Iterable = (1,)) -> "RationalFunction":
        return cls(tuple(numerator), tuple(denominator))

    @classmethod
    def generator(cls) -> "RationalFunction":
        return cls._make((0, 1), (1,))

    # -- structure -----------------------------------------------------

    @property
    def numerator(self) -> tuple:
        """Ascending numerator coefficients (ints or Fractions)."""
        return self._num

    @property
    def denominator(self) -> tuple:
        return self._den

    @property
    def is_polynomial(self) -> bool:
        return self._den == (1,)

    @property
    def is_constant(self) -> bool:
        return self._den == (1,) and len(self._num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise FieldMismatchError(f"{self} is not a constant")
        return Fraction(self._num[0]) if self._num else Fraction(0)

    def eval_at(self, point) -> Fraction:
        """Exact substitution q := point; raises PoleError at denominator roots."""
        point = Fraction(point)
        dv = _peval(self._den, point)
        if dv == 0:
            raise PoleError(f"denominator vanishes at q = {point}")
        return Fraction(_peval(self._num, point)) / Fraction(dv)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction)):
            return RationalFunction._make(_pconst(value), (1,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == (1,) and o._den == (1,):
            return RationalFunction._make(_padd(self._num, o._num), (1,))
        return RationalFunction(
            _padd(_pmul(self._num, o._den), _pmul(o._num, self._den)),
            _pmul(self._den, o._den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__add__(-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == (1,) and o._den == (1,):
            return RationalFunction._make(_pmul(self._num, o._num), (1,))
        return RationalFunction(_pmul(self._num, o._num), _pmul(self._den, o._den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(_pmul(self._num, o._den), _pmul(self._den, o._num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent >= 0:
            return RationalFunction._make(_ppow(self._num, exponent), _ppow(self._den, exponent))
        if not self._num:
            raise ZeroDivisionError("zero has no negative powers")
        return RationalFunction(_ppow(self._den, -exponent), _ppow(self._num, -exponent))

    def __neg__(self):
        return RationalFunction._make(_pneg(self._num), self._den)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_constant and (self._num[0] if self._num else 0) == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant:
            return hash(self.constant_value())
        return hash((self._num, self._den))

    def __str__(self):
        if self.is_constant:
            return str(self.constant_value())
        return f"({_poly_str(self._num)})/({_poly_str(self._den)})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


q = RationalFunction.generator()

Scalar = Union[Fraction, RationalFunction]


# ---------------------------------------------------------------------------
# field domains
# ---------------------------------------------------------------------------


class ScalarField:
    """Domain tag plus the coercion and parsing rules of one scalar field."""

    __slots__ = ("name", "symbolic")

    def __init__(self, name: str, symbolic: bool):
        self.name = name
        self.symbolic = symbolic

    @property
    def zero(self) -> Scalar:
        return RationalFunction._make((), (1,)) if self.symbolic else Fraction(0)

    @property
    def one(self) -> Scalar:
        return RationalFunction._make((1,), (1,)) if self.symbolic else Fraction(1)

    def coerce(self, value) -> Scalar:
        if self.symbolic:
            out = RationalFunction._coerce(value)
            if out is None:
                raise FieldMismatchError(f"cannot coerce {value!r} into {self.name}")
            return out
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, Fraction):
            return value
        raise FieldMismatchError(f"cannot coerce {value!r} into {self.name}")

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)

    def to_string(self, value) -> str:
        return scalar_to_string(self.coerce(value))

    def join(self, other: "ScalarField") -> "ScalarField":
        return self if self is other or self.symbolic else other

    def __repr__(self):
        return f"<ScalarField {self.name}>"


RATIONAL_FIELD = ScalarField("rational", symbolic=False)
RATIONAL_FUNCTION_FIELD = ScalarField("rational-function", symbolic=True)


def field_of(value) -> ScalarField:
    """The domain a scalar value belongs to."""
    if isinstance(value, RationalFunction):
        return RATIONAL_FUNCTION_FIELD
    if isinstance(value, (int, Fraction)):
        return RATIONAL_FIELD
    raise TypeError(f"not a scalar: {value!r}")


def scalar_to_string(value) -> str:
    """Canonical text form; parse_scalar inverts it within the same domain."""
    if isinstance(value, RationalFunction):
        return str(value)
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    raise TypeError(f"not a scalar: {value!r}")


def scalar_to_latex(value) -> str:
    if isinstance(value, (int, Fraction)):
        return _frac_latex(Fraction(value))
    if isinstance(value, RationalFunction):
        if value.is_constant:
            return _frac_latex(value.constant_value())
        if value.is_polynomial:
            return _poly_latex(value.numerator)
        return f"\\frac{{{_poly_latex(value.numerator)}}}{{{_poly_latex(value.denominator)}}}"
    raise TypeError(f"not a scalar: {value!r}")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_DIGITS = "0123456789"


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_spaces(self) -> None:
        while self.peek() == " ":
            self.pos += 1

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ScalarParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def take_uint(self, what: str) -> int:
        start = self.pos
        while self.peek() in _DIGITS and self.peek():
            self.pos += 1
        if self.pos == start:
            raise ScalarParseError(f"expected {what}", self.pos)
        return int(self.text[start : self.pos])


def _parse_unsigned_rational(cur: _Cursor) -> Fraction:
    num = cur.take_uint("digits")
    if cur.peek() == "/":
        cur.pos += 1
        dpos = cur.pos
        den = cur.take_uint("digits after '/'")
        if den == 0:
            raise ScalarParseError("zero denominator", dpos)
        return Fraction(num, den)
    return Fraction(num)


def parse_rational(text: str) -> Fraction:
    """Parse the rational grammar: optional '-', digits, optional '/' digits."""
    cur = _Cursor(text)
    negative = cur.peek() == "-"
    if negative:
        cur.pos += 1
    value = _parse_unsigned_rational(cur)
    if cur.pos != len(text):
        raise ScalarParseError("unexpected character", cur.pos)
    return -value if negative else value


def _parse_q_exponent(cur: _Cursor) -> int:
    cur.expect("q")
    if cur.peek() == "^":
        cur.pos += 1
        return cur.take_uint("exponent digits")
    return 1


def _parse_poly_body(cur: _Cursor) -> tuple:
    coeffs: dict[int, Fraction] = {}
    sign = 1
    cur.skip_spaces()
    if cur.peek() == "-":
        sign = -1
        cur.pos += 1
    while True:
        cur.skip_spaces()
        if cur.peek() == "q":
            mag = Fraction(1)
            exponent = _parse_q_exponent(cur)
        else:
            mag = _parse_unsigned_rational(cur)
            if cur.peek() == "*":
                cur.pos += 1
                exponent = _parse_q_exponent(cur)
            else:
                exponent = 0
        coeffs[exponent] = coeffs.get(exponent, Fraction(0)) + sign * mag
        cur.skip_spaces()
        nxt = cur.peek()
        if nxt == "+":
            sign = 1
        elif nxt == "-":
            sign = -1
        else:
            break
        cur.pos += 1
    if not coeffs:
        return ()
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return _ptrim(out)


def parse_rational_function(text: str) -> RationalFunction:
    """Parse '(poly)/(poly)', a bare polynomial in q, or a plain rational."""
    cur = _Cursor(text)
    cur.skip_spaces()
    if cur.peek() == "(":
        cur.pos += 1
        num = _parse_poly_body(cur)
        cur.skip_spaces()
        cur.expect(")")
        cur.skip_spaces()
        cur.expect("/")
        cur.skip_spaces()
        cur.expect("(")
        den = _parse_poly_body(cur)
        cur.skip_spaces()
        cur.expect(")")
    else:
        num = _parse_poly_body(cur)
        den = (1,)
    cur.skip_spaces()
    if cur.pos != len(text):
        raise ScalarParseError("unexpected character", cur.pos)
    if not den:
        raise ScalarParseError("zero denominator polynomial", len(text) - 1)
    return RationalFunction(num, den)


def parse_scalar(text: str, field: ScalarField) -> Scalar:
    """Parse text in the grammar of the given domain (rationals embed upward)."""
    if field.symbolic:
        return parse_rational_function(text)
    return parse_rational(text)
