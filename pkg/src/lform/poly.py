"""Dense univariate polynomials and reduced rational functions over a Field."""
from math import perm

import numpy as np

from .errors import (DivideByZero, SpecMismatch, BothZero, DegreeTooSmall,
                     ModuliNotCoprime, ZeroPolynomial, InexactDivision, FieldTooLarge)
from .ff import FieldElem, parse_field_spec, MAX_FIELD

NEG_INF = float("-inf")


def to_int(field, x):
    """Field int from a FieldElem, an encoding in [0, q), or a negative int."""
    if isinstance(x, FieldElem):
        return x.v
    if field.k == 1:
        return x % field.p
    if x < 0:
        return field.neg((-x) % field.p)
    if x >= field.q:
        raise ValueError(f"{x} is not an element of {field.spec}")
    return x


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Coefficients are field ints, low degree first, no trailing zeros."""
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs=()):
        self.field = field
        self.c = _trim([to_int(field, x) for x in coeffs])

    @classmethod
    def _raw(cls, field, c):
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = _trim(c)
        return obj

    @classmethod
    def X(cls, field):
        return cls._raw(field, [0, 1])

    @classmethod
    def const(cls, field, a):
        return cls._raw(field, [to_int(field, a)])

    @classmethod
    def monomial(cls, field, n, a=1):
        return cls._raw(field, [0] * n + [a])

    @classmethod
    def from_roots(cls, field, roots):
        out = cls.const(field, 1)
        for r in roots:
            out = out * cls._raw(field, [field.neg(r), 1])
        return out

    # -- basic data --
    @property
    def deg(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def coeffs(self):
        return [FieldElem(self.field, x) for x in self.c]

    def lc(self):
        return self.c[-1] if self.c else 0

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def is_zero(self):
        return not self.c

    def is_const(self):
        return len(self.c) <= 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.field is o.field and self.c == o.c
        if isinstance(o, int):
            v = to_int(self.field, o)
            return self.c == ([v] if v else [])
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, tuple(self.c)))

    def __repr__(self):
        return f"Poly({self.field.spec}, {self.c})"

    def _check(self, o):
        if isinstance(o, Poly):
            if o.field is not self.field:
                raise SpecMismatch(f"{self.field.spec} vs {o.field.spec}")
            return o
        if isinstance(o, FieldElem):
            if o.field is not self.field:
                raise SpecMismatch(f"{self.field.spec} vs {o.field.spec}")
            return Poly._raw(self.field, [o.v])
        if isinstance(o, int):
            return Poly._raw(self.field, [to_int(self.field, o)])
        raise TypeError(type(o))

    # -- ring operations --
    def __add__(self, o):
        o = self._check(o)
        F = self.field
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add = F.add
        for i, y in enumerate(b):
            out[i] = add(out[i], y)
        return Poly._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Poly._raw(self.field, [neg(x) for x in self.c])

    def __sub__(self, o):
        return self + (-self._check(o))

    def __rsub__(self, o):
        return self._check(o) - self

    def __mul__(self, o):
        o = self._check(o)
        F = self.field
        a, b = self.c, o.c
        if not a or not b:
            return Poly._raw(F, [])
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return o.scale(a[0])
        log, exp, add = F.log, F.exp, F.add
        out = [0] * (len(a) + len(b) - 1)
        lb = [(j, log[y]) for j, y in enumerate(b) if y]
        if F.p == 2:
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in lb:
                        out[i + j] ^= exp[lx + ly]
        elif F.k == 1:
            p = F.p
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            out = [v % p for v in out]
        else:
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in lb:
                        out[i + j] = add(out[i + j], exp[lx + ly])
        return Poly._raw(F, out)

    __rmul__ = __mul__

    def scale(self, s):
        if isinstance(s, FieldElem):
            s = s.v
        mul = self.field.mul
        return Poly._raw(self.field, [mul(x, s) for x in self.c])

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def divmod(self, o):
        o = self._check(o)
        if not o.c:
            raise DivideByZero("polynomial division by zero")
        F = self.field
        r = list(self.c)
        db = len(o.c) - 1
        if len(r) - 1 < db:
            return Poly._raw(F, []), Poly._raw(F, r)
        inv = F.inv(o.c[-1])
        q = [0] * (len(r) - db)
        mul, sub = F.mul, F.sub
        oc = o.c
        for i in range(len(r) - 1, db - 1, -1):
            t = r[i]
            if t:
                t = mul(t, inv)
                q[i - db] = t
                for j in range(db + 1):
                    r[i - db + j] = sub(r[i - db + j], mul(t, oc[j]))
        return Poly._raw(F, q), Poly._raw(F, r[:db])

    __divmod__ = divmod

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def exact_div(self, o):
        q, r = self.divmod(o)
        if r:
            raise InexactDivision("non-zero remainder")
        return q

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.field.inv(self.c[-1]))

    # -- evaluation and composition --
    def __call__(self, x):
        if isinstance(x, Poly):
            return compose(self, x)
        if isinstance(x, FieldElem):
            return FieldElem(self.field, self.eval(x.v))
        return self.eval(x)

    def eval(self, x):
        F = self.field
        acc = 0
        if not x:
            return self.c[0] if self.c else 0
        mul, add = F.mul, F.add
        for a in reversed(self.c):
            acc = add(mul(acc, x), a)
        return acc

    def derivative(self, k=1):
        return derivative_k(self, k)

    def frob_coeffs(self, i=1):
        frob = self.field.frob
        return Poly._raw(self.field, [frob(x, i) for x in self.c])

    def pth_power(self, i=1):
        """self^(p^i) computed as coefficient Frobenius plus exponent spread."""
        F = self.field
        step = F.p ** i
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * step + 1)
        for j, x in enumerate(self.c):
            if x:
                out[j * step] = F.frob(x, i)
        return Poly._raw(F, out)

    def shift(self, n):
        if not self.c:
            return self
        return Poly._raw(self.field, [0] * n + list(self.c))

    def to_json(self):
        return {"field": self.field.spec, "coeffs": [self.field.digits(x) for x in self.c]}

    @classmethod
    def from_json(cls, d, field=None):
        F = field or parse_field_spec(d["field"])
        return cls._raw(F, [F.from_digits(x) if isinstance(x, list) else x % F.p for x in d["coeffs"]])

    def pretty(self):
        from .ff import format_elem
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = format_elem(self.field, a)
            if self.field.k > 1 and "+" in s:
                s = f"({s})"
            mon = "" if i == 0 else "X" if i == 1 else f"X^{i}"
            if mon and s == "1":
                s = ""
            terms.append(s + ("*" if s and mon else "") + mon)
        return " + ".join(terms)


# -- free functions --

def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divmod(b)
    if op == "scale":
        return a.scale(b)
    raise ValueError(op)


def derivative_k(a, k=1):
    """Formal k-th derivative; i(i-1)...(i-k+1) is reduced mod p."""
    F = a.field
    p = F.p
    out = []
    for i in range(k, len(a.c)):
        f = perm(i, k) % p
        out.append(F.mul(a.c[i], f) if f else 0)
    return Poly._raw(F, out)


def gcd_ext(a, b):
    """(g, u, v) with a*u + b*v = g monic; u, v minimal when g = 1."""
    F = a.field
    if not a.c and not b.c:
        raise BothZero("gcd of two zero polynomials")
    one, zero = Poly.const(F, 1), Poly._raw(F, [])
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def gcd(a, b):
    return gcd_ext(a, b)[0]


def field_det(rows, field):
    """Determinant of a square matrix of field ints by elimination."""
    F = field
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        pv = m[col][col]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        rowc = m[col]
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = F.mul(f, inv)
                row = m[r]
                for j in range(col, n):
                    if rowc[j]:
                        row[j] = F.sub(row[j], F.mul(f, rowc[j]))
    return det


def sylvester(a, b, da=None, db=None):
    da = a.deg if da is None else da
    db = b.deg if db is None else db
    n = da + db
    rows = []
    ac = [a.coeff(i) for i in range(da, -1, -1)]
    bc = [b.coeff(i) for i in range(db, -1, -1)]
    for i in range(db):
        rows.append([0] * i + ac + [0] * (n - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + bc + [0] * (n - db - 1 - i))
    return rows


def resultant(a, b, da=None, db=None):
    da = a.deg if da is None else da
    db = b.deg if db is None else db
    if da == NEG_INF or db == NEG_INF:
        return 0
    if da + db == 0:
        return 1
    return field_det(sylvester(a, b, da, db), a.field)


def disc(a, d=None):
    """Discriminant of a taken in degree d (default deg a)."""
    d = a.deg if d is None else d
    if d == NEG_INF or d < 1:
        raise DegreeTooSmall("discriminant needs degree >= 1")
    F = a.field
    lc = a.coeff(d)
    if not lc:
        raise DegreeTooSmall("coefficient of the stated degree is zero")
    r = resultant(a, derivative_k(a, 1), d, d - 1)
    if (d * (d - 1) // 2) % 2:
        r = F.neg(r)
    return F.div(r, lc)


def resultant_disc(a, b):
    if isinstance(b, str) and b == "disc":
        return FieldElem(a.field, disc(a))
    return FieldElem(a.field, resultant(a, b))


def crt_solve(pairs):
    """gamma with gamma = r_i mod m_i; constant moduli impose nothing."""
    pairs = [(r, m) for r, m in pairs if m.deg >= 1]
    if not pairs:
        return None
    F = pairs[0][1].field
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if gcd(pairs[i][1], pairs[j][1]).deg > 0:
                raise ModuliNotCoprime(f"moduli {i} and {j}")
    g, M = Poly._raw(F, []), Poly.const(F, 1)
    for r, m in pairs:
        _, u, _ = gcd_ext(M, m)  # u = M^{-1} mod m
        t = ((r - g) * u) % m
        g = g + M * t
        M = M * m
    return g % M


def roots_in_field(a, bound=MAX_FIELD):
    """[(root, multiplicity)] in int order, and whether a splits."""
    if not a.c:
        raise ZeroPolynomial("roots of the zero polynomial")
    F = a.field
    if F.q > bound:
        raise FieldTooLarge(F.q)
    if a.deg == 0:
        return [], True
    xs = np.arange(F.q, dtype=np.int64)
    vals = F.veval(a.c, xs)
    out = []
    total = 0
    for x in np.nonzero(vals == 0)[0].tolist():
        m, b = 0, a
        lin = Poly._raw(F, [F.neg(x), 1])
        while True:
            q, r = b.divmod(lin)
            if r.c:
                break
            m += 1
            b = q
        out.append((x, m))
        total += m
    return out, total == a.deg


def distinct_roots(a):
    return [x for x, _ in roots_in_field(a)[0]]


def compose(a, s):
    F = a.field
    out = Poly._raw(F, [])
    for x in reversed(a.c):
        out = out * s + Poly._raw(F, [x])
    return out


def pth_components(a):
    """[f_0..f_{p-1}] with a = sum f_i^p X^i."""
    F = a.field
    p = F.p
    comps = []
    for i in range(p):
        cs = a.c[i::p]
        comps.append(Poly._raw(F, [F.root_p(x) for x in cs]))
    return comps


def interpolate(field, xs, ys):
    """Lagrange interpolation through (xs[i], ys[i]) with distinct xs."""
    F = field
    out = Poly._raw(F, [])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = Poly.const(F, 1)
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Poly._raw(F, [F.neg(xj), 1])
                den = F.mul(den, F.sub(xi, xj))
        out = out + num.scale(F.div(yi, den))
    return out


class RatFun:
    """num/den with den monic and gcd(num, den) = 1."""
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        F = num.field
        if den is None:
            den = Poly.const(F, 1)
        if not den.c:
            raise DivideByZero("zero denominator")
        if not num.c:
            self.num, self.den = num, Poly.const(F, 1)
            return
        g = gcd(num, den)
        if g.deg > 0:
            num, den = num // g, den // g
        inv = F.inv(den.lc())
        self.num, self.den = num.scale(inv), den.scale(inv)

    @property
    def field(self):
        return self.num.field

    def __eq__(self, o):
        if isinstance(o, RatFun):
            return self.num == o.num and self.den == o.den
        if isinstance(o, (Poly, int)):
            return self == RatFun(self.num._check(o))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({self.num.pretty()} / {self.den.pretty()})"

    def _lift(self, o):
        if isinstance(o, RatFun):
            return o
        return RatFun(self.num._check(o))

    def __add__(self, o):
        o = self._lift(o)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if not o.num.c:
            raise DivideByZero("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __pow__(self, e):
        if e < 0:
            return RatFun(self.den ** (-e), self.num ** (-e))
        return RatFun(self.num ** e, self.den ** e)

    def is_zero(self):
        return not self.num.c

    def derivative(self, k=1):
        return ratfun_derivative(self, k)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, d, field=None):
        return cls(Poly.from_json(d["num"], field), Poly.from_json(d["den"], field))


def ratfun_derivative(f, k=1):
    for _ in range(k):
        if not f.num.c:
            return f
        f = RatFun(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den)
    return f
