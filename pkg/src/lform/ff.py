"""Exact arithmetic in F_p and F_{p^k} = F_p[mu]/(m(mu)).

Elements are plain ints: x = c_0 + c_1 p + ... + c_{k-1} p^{k-1} encodes
c_0 + c_1 mu + ... + c_{k-1} mu^{k-1}.  Natural int order is therefore the
lexicographic coordinate order used for enumeration.  `FieldElem` wraps an
int together with its field for callers who want operators.
"""
from functools import lru_cache
from math import gcd
import re

import numpy as np

from .errors import (NonPrime, NonMonicModulus, ReducibleModulus, MalformedSpec,
                     SpecMismatch, FieldTooLarge, DivideByZero)

MAX_FIELD = 10 ** 6


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- tiny dense polynomials over F_p (lists of ints, low degree first) ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _ppowmod(a, e, m, p):
    r, a = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            r = _pmod(_pmul(r, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return r


def _digits(x, p, k):
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for x in range(p ** d):
            f = _digits(x, p, d) + [1]
            if not _pmod(m, f, p):
                return False
    return True


def _mu_is_primitive(m, p):
    k = len(m) - 1
    q1 = p ** k - 1
    if k == 1:
        return False
    for r in prime_factors(q1):
        if _ppowmod([0, 1], q1 // r, m, p) == [1]:
            return False
    return True


class Field:
    """F_{p^k} with log/exp tables; addition by XOR (p = 2) or Zech logs."""

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise NonPrime(p)
        if k < 1:
            raise MalformedSpec(f"extension degree {k}")
        if k == 1:
            modulus = (0, 1) if modulus is None else tuple(c % p for c in modulus)
        else:
            if modulus is None or len(modulus) != k + 1:
                raise MalformedSpec("modulus must have k+1 coefficients")
            modulus = tuple(c % p for c in modulus)
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(modulus)
            if modulus[-1] != 1:
                raise NonMonicModulus(modulus)
        if p ** k > MAX_FIELD:
            raise FieldTooLarge(p ** k)
        self.p, self.k, self.q = p, k, p ** k
        self.modulus = modulus
        self.qm1 = self.q - 1
        self.spec = str(p) if k == 1 else f"{p}^{k}/" + ",".join(map(str, modulus))
        self._build_tables()
        if p == 2:
            self.add = self.sub = _xor
        elif k == 1:
            self.add = self._add_mod
            self.sub = self._sub_mod
        else:
            self.add = self._add_zech
        self._np = None

    def __repr__(self):
        return f"Field({self.spec})"

    def __reduce__(self):
        return (parse_field_spec, (self.spec,))

    # -- construction --
    def _mulmu(self, v):
        p, m, k = self.p, self.modulus, self.k
        top = v[-1]
        w = [0] + v[:-1]
        if top:
            for i in range(k):
                w[i] = (w[i] - top * m[i]) % p
        return w

    def _build_tables(self):
        p, k, q, qm1 = self.p, self.k, self.q, self.qm1
        exp = [0] * (2 * qm1 + 1)
        log = [0] * q
        if k == 1:
            g = next(g for g in range(1, p) if all(pow(g, qm1 // r, p) != 1 for r in prime_factors(qm1))) if p > 2 else 1
            x = 1
            for i in range(qm1):
                exp[i] = x
                log[x] = i
                x = x * g % p
        elif _mu_is_primitive(self.modulus, p):
            v = [1] + [0] * (k - 1)
            for i in range(qm1):
                x = 0
                for c in reversed(v):
                    x = x * p + c
                exp[i] = x
                log[x] = i
                v = self._mulmu(v)
        else:
            g = self._find_generator()
            x = [1] + [0] * (k - 1)
            for i in range(qm1):
                xi = sum(c * p ** j for j, c in enumerate(x))
                exp[i] = xi
                log[xi] = i
                x = (_pmod(_pmul(x, g, p), list(self.modulus), p) + [0] * k)[:k]
        for i in range(qm1, 2 * qm1 + 1):
            exp[i] = exp[i - qm1]
        self.exp, self.log = exp, log
        if p != 2:
            zech = [0] * qm1
            for i in range(qm1):
                x = exp[i]
                y = x - x % p + (x % p + 1) % p
                zech[i] = log[y] if y else -1
            self.zech = zech
            self.half = qm1 // 2

    def _find_generator(self):
        p, k, m = self.p, self.k, list(self.modulus)
        for x in range(2, self.q):
            g = _trim(_digits(x, p, k))
            if all(_ppowmod(g, self.qm1 // r, m, p) != [1] for r in prime_factors(self.qm1)):
                return g
        raise AssertionError("no generator")

    # -- arithmetic on ints --
    def _add_mod(self, a, b):
        return (a + b) % self.p

    def _sub_mod(self, a, b):
        return (a - b) % self.p

    def _add_zech(self, a, b):
        if not a:
            return b
        if not b:
            return a
        log = self.log
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self.qm1
        z = self.zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        if self.k == 1:
            return self.p - a
        return self.exp[self.log[a] + self.half]

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if not a:
            raise DivideByZero("inverse of 0")
        return self.exp[self.qm1 - self.log[a]]

    def div(self, a, b):
        if not b:
            raise DivideByZero("division by 0")
        if not a:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % self.qm1]

    def pow(self, a, e):
        if not a:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivideByZero("0 to a negative power")
        return self.exp[self.log[a] * e % self.qm1]

    def frob(self, a, i=1):
        if not a:
            return 0
        return self.exp[self.log[a] * pow(self.p, i, self.qm1) % self.qm1]

    def root_p(self, a, i=1):
        """Inverse Frobenius: the unique b with b^(p^i) = a."""
        return self.frob(a, (-i) % self.k)

    def from_int(self, n):
        return n % self.p

    def digits(self, a):
        return _digits(a, self.p, self.k)

    def from_digits(self, ds):
        x = 0
        for c in reversed(list(ds)):
            x = x * self.p + c % self.p
        return x

    def in_prime_field(self, a):
        return a < self.p

    def signed(self, a):
        """Prime-field element as an int in (-p/2, p/2]."""
        return a if a <= self.p // 2 else a - self.p

    @property
    def gen(self):
        return self.p if self.k > 1 else 1 if self.p == 2 else self.exp[1]

    def mu_pow(self, e):
        """mu^e for the defining root mu (requires k > 1)."""
        return self.pow(self.p, e)

    def elem(self, x):
        return FieldElem(self, x)

    def elements(self):
        return range(self.q)

    def order(self, a):
        if not a:
            raise DivideByZero("order of 0")
        return self.qm1 // gcd(self.log[a], self.qm1)

    def subfield(self, size):
        """Elements of the subfield with `size` elements, in int order."""
        e = 1
        while self.p ** e != size:
            e += 1
            if self.p ** e > size:
                raise SpecMismatch(f"{size} is not a power of {self.p}")
        if self.k % e:
            raise SpecMismatch(f"F_{size} is not a subfield of F_{self.q}")
        step = self.qm1 // (size - 1)
        return sorted([0] + [self.exp[i * step] for i in range(size - 1)])

    # -- vectorized helpers (numpy int64 arrays of encoded elements) --
    def np_tables(self):
        if self._np is None:
            exp = np.array(self.exp, dtype=np.int64)
            log = np.array(self.log, dtype=np.int64)
            zech = np.array(self.zech, dtype=np.int64) if self.p != 2 else None
            self._np = (exp, log, zech)
        return self._np

    def vmul(self, a, b):
        exp, log, _ = self.np_tables()
        r = exp[log[a] + log[b]]
        r[(a == 0) | (b == 0)] = 0
        return r

    def vadd(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        exp, log, zech = self.np_tables()
        a = np.broadcast_to(a, np.broadcast(a, b).shape)
        b = np.broadcast_to(b, a.shape)
        la = log[a]
        d = (log[b] - la) % self.qm1
        z = zech[d]
        r = np.where(z < 0, 0, exp[la + np.maximum(z, 0)])
        r = np.where(a == 0, b, r)
        return np.where(b == 0, a, r)

    def veval(self, coeffs, xs):
        """Evaluate a polynomial (int coeffs, low first) at every x in xs."""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = self.vadd(self.vmul(acc, xs), np.int64(c))
        return acc


def _xor(a, b):
    return a ^ b


class FieldElem:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _other(self, y):
        if isinstance(y, FieldElem):
            if y.field is not self.field:
                raise SpecMismatch(f"{self.field.spec} vs {y.field.spec}")
            return y.v
        if isinstance(y, int):
            return y % self.field.p
        return NotImplemented

    def __add__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.add(self.v, y))

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.sub(self.v, y))

    def __rsub__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.sub(y, self.v))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.v))

    def __mul__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.mul(self.v, y))

    __rmul__ = __mul__

    def __truediv__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.div(self.v, y))

    def __rtruediv__(self, y):
        y = self._other(y)
        return FieldElem(self.field, self.field.div(y, self.v))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.v, e))

    def __eq__(self, y):
        y = self._other(y) if isinstance(y, (FieldElem, int)) else NotImplemented
        if y is NotImplemented:
            return NotImplemented
        return self.v == y

    def __hash__(self):
        return hash((self.field.spec, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"FieldElem({self.field.spec}, {format_elem(self.field, self.v)})"

    @property
    def coeffs(self):
        return self.field.digits(self.v)

    def frobenius(self, i=1):
        return FieldElem(self.field, self.field.frob(self.v, i))


_SPEC = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*/\s*([\d\s,]+))?\s*$")


@lru_cache(maxsize=None)
def _field(p, k, modulus):
    return Field(p, k, modulus)


def get_field(p, k=1, modulus=None):
    if k == 1 and modulus is None:
        return _field(p, 1, None)
    return _field(p, k, tuple(modulus))


def parse_field_spec(text):
    """Parse `p` or `p^k/m0,...,mk` (modulus low degree first)."""
    mt = _SPEC.match(text or "")
    if not mt:
        raise MalformedSpec(text)
    p = int(mt.group(1))
    if not is_prime(p):
        raise NonPrime(p)
    if mt.group(2) is None:
        return get_field(p)
    k = int(mt.group(2))
    try:
        mod = tuple(int(c) for c in mt.group(3).split(","))
    except ValueError:
        raise MalformedSpec(text) from None
    if len(mod) != k + 1:
        raise MalformedSpec(f"{text}: expected {k + 1} modulus coefficients")
    if k == 1:
        f = get_field(p, 1, mod)
        if mod[-1] % p != 1:
            raise NonMonicModulus(text)
        return f
    return get_field(p, k, mod)


@lru_cache(maxsize=None)
def default_field(p, k=1):
    """First monic irreducible modulus (int order) whose root is primitive."""
    if k == 1:
        return get_field(p)
    for x in range(p ** k):
        m = _digits(x, p, k) + [1]
        if m[0] and is_irreducible(m, p) and _mu_is_primitive(m, p):
            return get_field(p, k, m)
    raise AssertionError("unreachable")


def frobenius_elem(x, iterate=1):
    return x.frobenius(iterate)


def enumerate_field(field, bound=MAX_FIELD):
    if field.q > bound:
        raise FieldTooLarge(field.q)
    return [FieldElem(field, v) for v in range(field.q)]


def nth_root_int(field, x, n):
    """Smallest (in int order) y with y^n = x, or None."""
    if not x:
        return 0
    qm1 = field.qm1
    g = gcd(n, qm1)
    lx = field.log[x]
    if lx % g:
        return None
    m = qm1 // g
    # solutions of n*l = lx (mod qm1): l0 + j*m
    l0 = (lx // g) * pow(n // g, -1, m) % m if m > 1 else 0
    return min(field.exp[l0 + j * m] for j in range(g))


def nth_root(x, n):
    y = nth_root_int(x.field, x.v, n)
    return None if y is None else FieldElem(x.field, y)


def embedding(small, big):
    """List img with img[x] the image of x under F_small -> F_big.

    The defining root of `small` goes to the least root (int order) of its
    modulus inside `big`.
    """
    if small.p != big.p or big.k % small.k:
        raise SpecMismatch(f"{small.spec} does not embed in {big.spec}")
    if small.k == 1:
        return list(range(small.q))
    for r in big.subfield(small.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            break
    else:
        raise AssertionError("no root of modulus in subfield")
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], r))
    img = []
    for x in range(small.q):
        acc = 0
        for c, pw in zip(small.digits(x), powers):
            if c:
                acc = big.add(acc, big.mul(c, pw))
        img.append(acc)
    return img


def format_elem(field, a):
    if field.k == 1:
        return str(a)
    terms = []
    for i, c in enumerate(field.digits(a)):
        if c:
            t = "" if (c == 1 and i) else str(c)
            if i == 1:
                t += "mu"
            elif i > 1:
                t += f"mu^{i}"
            terms.append(t)
    return "+".join(terms) or "0"
