"""Exact arithmetic in the ground field Q(q) and q-integer combinatorics.

Values are rational functions in a single indeterminate q with rational
coefficients, kept in a unique canonical form so that equality is a
dictionary comparison and serialization is deterministic.
"""

from __future__ import annotations

from fractions import Fraction


class PoleAtOne(ArithmeticError):
    """Raised when a rational function has a genuine pole at q = 1."""


class QParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (offset {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# Laurent polynomials: dict {exponent: coefficient}, no zero coefficients.
# Coefficients are ints or Fractions.

def lp_zero():
    return {}


def lp_const(c):
    return {0: c} if c else {}


def lp_q(exp, coeff=1):
    return {exp: coeff} if coeff else {}


def lp_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def lp_neg(a):
    return {e: -c for e, c in a.items()}

def lp_sub(a, b):
    return lp_add(a, lp_neg(b))


def lp_mul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1:
        (e1, c1), = a.items()
        return {e1 + e: c1 * c for e, c in b.items()}
    if len(b) == 1:
        (e1, c1), = b.items()
        return {e1 + e: c1 * c for e, c in a.items()}
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def lp_scale(a, c):
    if not c:
        return {}
    return {e: cc * c for e, cc in a.items()}


def lp_eval_one(a):
    """Value at q = 1."""
    return sum(a.values(), Fraction(0))


def lp_min_exp(a):
    return min(a) if a else 0


def _to_int_list(a):
    """Shift min exponent to 0, clear denominators: (shift, content, int list).

    a = content * q^shift * poly(list), poly primitive with positive leading
    coefficient.
    """
    assert a
    shift = min(a)
    deg = max(a) - shift
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in a.items():
        coeffs[e - shift] = Fraction(c)
    from math import gcd, lcm
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    ints = [c // g for c in ints]
    return shift, Fraction(g, den), ints


def _ilist_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ilist_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _ilist_prem(a, b):
    """Pseudo-remainder of integer polynomial lists (a, b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        for i in range(db + 1):
            a[da - db + i] -= la * b[i]
        _ilist_trim(a)
        if not a:
            break
    return a


def _ilist_primitive(a):
    from math import gcd
    g = 0
    for c in a:
        g = gcd(g, c)
    if not g:
        return a
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _ilist_gcd(a, b):
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _ilist_prem(a, b)
        a, b = b, _ilist_primitive(r)
    return _ilist_primitive(a)


def _ilist_divexact(a, b):
    """Exact division of integer lists over Q; asserts zero remainder."""
    a = [Fraction(c) for c in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] / lb
        out[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    assert all(c == 0 for c in a[: len(b) - 1]), "non-exact polynomial division"
    return out


def lp_divexact(a, b):
    """Exact Laurent division a / b (b divides a)."""
    if not a:
        return {}
    sa, ca, ia = _to_int_list(a)
    sb, cb, ib = _to_int_list(b)
    qlist = _ilist_divexact(ia, ib)
    shift = sa - sb
    scale = ca / cb
    out = {}
    for i, c in enumerate(qlist):
        if c:
            out[shift + i] = c * scale
    return out


def lp_pow(a, n):
    out = lp_const(1)
    for _ in range(n):
        out = lp_mul(out, a)
    return out


def _lp_key(a):
    return tuple(sorted((e, Fraction(c)) for e, c in a.items()))


# ---------------------------------------------------------------------------
# QScalar: canonical quotient of Laurent polynomials.

class QScalar:
    """A rational function in q; immutable and always canonical.

    Canonical form: den is a primitive integer polynomial with positive
    leading coefficient, nonzero constant term (minimal exponent 0), and
    gcd(num, den) = 1; a zero value has den = 1.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = {0: 1}
        if not _canonical:
            num, den = _canon(num, den)
        self.num = num
        self.den = den
        self._key = None

    # -- construction helpers
    @staticmethod
    def from_fraction(c):
        c = Fraction(c)
        return QScalar({0: c} if c else {}, {0: 1}, _canonical=True)

    @staticmethod
    def q_power(k, coeff=1):
        return QScalar({k: coeff} if coeff else {}, {0: 1}, _canonical=True)

    # -- predicates
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == {0: 1} and self.den == {0: 1}

    def den_is_one(self):
        return self.den == {0: 1}

    def monomial(self):
        """(exp, coeff) if this is a single q-power times a rational, else None."""
        if len(self.num) == 1 and self.den == {0: 1}:
            (e, c), = self.num.items()
            return e, c
        return None

    # -- arithmetic
    def __add__(self, other):
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            n = lp_add(self.num, other.num)
            if self.den == {0: 1}:
                return QScalar(n, {0: 1}, _canonical=True)
            return QScalar(n, self.den)
        n = lp_add(lp_mul(self.num, other.den), lp_mul(other.num, self.den))
        return QScalar(n, lp_mul(self.den, other.den))

    def __neg__(self):
        return QScalar(lp_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.num or not other.num:
            return QS_ZERO
        n = lp_mul(self.num, other.num)
        if self.den == {0: 1} and other.den == {0: 1}:
            return QScalar(n, {0: 1}, _canonical=True)
        return QScalar(n, lp_mul(self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero QScalar")
        if not self.num:
            return QS_ZERO
        return QScalar(lp_mul(self.num, other.den), lp_mul(self.den, other.num))

    def inverse(self):
        return QS_ONE / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = QS_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing
    def key(self):
        if self._key is None:
            self._key = (_lp_key(self.num), _lp_key(self.den))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"QScalar({serialize(self)!r})"

    def complexity(self):
        """Crude size measure used for pivot selection."""
        return len(self.num) + len(self.den)


def _canon(num, den):
    num = {e: c for e, c in num.items() if c}
    den = {e: c for e, c in den.items() if c}
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {0: 1}
    # normalize denominator: min exponent 0, primitive integer, positive lead
    sd, cd, ilistd = _to_int_list(den)
    sn, cn, ilistn = _to_int_list(num)
    g = _ilist_gcd(ilistn, ilistd)
    if len(g) > 1:
        ilistn = _as_ints(_ilist_divexact(ilistn, g))
        ilistd = _as_ints(_ilist_divexact(ilistd, g))
        ilistn = _ilist_primitive_signed(ilistn)
        ilistd, extra = _ilist_primitive_with_content(ilistd)
    else:
        extra = 1
    scale = cn / cd / extra
    shift = sn - sd
    newnum = {}
    for i, c in enumerate(ilistn):
        if c:
            newnum[shift + i] = c * scale if scale != 1 else c
    newden = {i: c for i, c in enumerate(ilistd) if c}
    return newnum, newden


def _as_ints(a):
    # quotient of primitive integer polynomials is integral (Gauss's lemma)
    out = []
    for x in a:
        x = Fraction(x)
        assert x.denominator == 1
        out.append(x.numerator)
    return out


def _ilist_primitive_signed(a):
    # keep sign information in numerator; only remove common content
    from math import gcd
    g = 0
    for c in a:
        g = gcd(g, c)
    return [c // g for c in a] if g > 1 else a


def _ilist_primitive_with_content(a):
    from math import gcd
    g = 0
    for c in a:
        g = gcd(g, c)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a, 1
    return [c // g for c in a], Fraction(g)


QS_ZERO = QScalar({}, {0: 1}, _canonical=True)
QS_ONE = QScalar({0: 1}, {0: 1}, _canonical=True)


def qs(c):
    """Coerce an int or Fraction to QScalar."""
    if isinstance(c, QScalar):
        return c
    return QScalar.from_fraction(c)


def q_power(k, coeff=1):
    return QScalar.q_power(k, coeff)


# ---------------------------------------------------------------------------
# q-combinatorics

def qint(n, d=1):
    """[n] with base t = q^d: (t^n - t^-n)/(t - t^-1)."""
    if n == 0:
        return QS_ZERO
    if n < 0:
        return -qint(-n, d)
    terms = {}
    for k in range(n):
        terms[d * (n - 1 - 2 * k)] = terms.get(d * (n - 1 - 2 * k), 0) + 1
    return QScalar(terms, {0: 1}, _canonical=True)


def qfact(m, d=1):
    out = QS_ONE
    for k in range(1, m + 1):
        out = out * qint(k, d)
    return out


def qbinom(m, n, d=1):
    if not (m >= n >= 0):
        raise ValueError(f"qbinom requires m >= n >= 0, got m={m}, n={n}")
    out = qfact(m, d) / (qfact(n, d) * qfact(m - n, d))
    assert out.den_is_one(), "q-binomial must be a Laurent polynomial"
    return out


def _divide_out_qminus1(a):
    """Divide Laurent poly by (q - 1); caller guarantees a(1) = 0."""
    return lp_divexact(a, {1: 1, 0: -1})


def specialize_at_one(x):
    """Evaluate at q = 1, cancelling common (q - 1) factors first."""
    num, den = x.num, x.den
    if not num:
        return Fraction(0)
    while lp_eval_one(den) == 0:
        if lp_eval_one(num) != 0:
            raise PoleAtOne("pole at q = 1")
        num = _divide_out_qminus1(num)
        den = _divide_out_qminus1(den)
    return lp_eval_one(num) / lp_eval_one(den)


# ---------------------------------------------------------------------------
# Canonical text form
#   poly := term (('+'|'-') term)*     term := coeff '*'? 'q^' int | coeff
# terms in decreasing exponent order; QScalar "(num)/(den)" unless den = 1.

def _fmt_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def serialize_poly(a):
    if not a:
        return "0"
    parts = []
    for e in sorted(a, reverse=True):
        c = Fraction(a[e])
        neg = c < 0
        c = abs(c)
        if e == 0:
            body = _fmt_coeff(c)
        elif c == 1:
            body = f"q^{e}"
        else:
            body = f"{_fmt_coeff(c)}*q^{e}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def serialize(x):
    if x.den_is_one():
        return serialize_poly(x.num)
    return f"({serialize_poly(x.num)})/({serialize_poly(x.den)})"


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise QParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.pos = start
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse_term(self):
        # returns (exp, coeff)
        if self.peek() == "q":
            self.pos += 1
            if self.peek() != "^":
                self.error("expected '^' after q")
            self.pos += 1
            if self.peek() == "^":
                self.error("malformed exponent")
            return self.parse_int(), Fraction(1)
        num = self.parse_int()
        coeff = Fraction(num)
        if self.peek() == "/":
            save = self.pos
            self.pos += 1
            if self.peek() == "(":
                self.pos = save  # the /(den) of a quotient, not part of coeff
            else:
                coeff = coeff / self.parse_int()
        if self.peek() == "*":
            self.pos += 1
            if self.peek() != "q":
                self.error("expected q after '*'")
            self.pos += 1
            if self.peek() != "^":
                self.error("expected '^' after q")
            self.pos += 1
            return self.parse_int(), coeff
        if self.peek() == "q":
            self.pos += 1
            if self.peek() != "^":
                self.error("expected '^' after q")
            self.pos += 1
            return self.parse_int(), coeff
        return 0, coeff

    def parse_poly(self):
        terms = {}
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        while True:
            e, c = self.parse_term()
            c = sign * c
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
            ch = self.peek()
            if ch == "+":
                sign = 1
                self.pos += 1
            elif ch == "-":
                sign = -1
                self.pos += 1
            else:
                return terms

    def parse_scalar(self):
        if self.peek() == "(":
            self.pos += 1
            num = self.parse_poly()
            self.expect(")")
            self.expect("/")
            self.expect("(")
            den = self.parse_poly()
            self.expect(")")
            return QScalar(num, den)
        num = self.parse_poly()
        return QScalar(num)


def parse(text):
    p = _Parser(text)
    out = p.parse_scalar()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return out
