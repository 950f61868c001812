"""Moore determinants, Dickson invariants and structural polynomials.

Tuples are either all FieldElem or all Poly over one field.  Polynomial
determinants use Bareiss elimination so every division is exact.
"""
from itertools import product
import random

from .errors import (TupleTooSmall, ZeroEpsilon, DependentBasis, SingularTuple,
                     InexactDivision, InternalInconsistency)
from .ff import FieldElem
from .poly import Poly, field_det


class _Ring:
    """Uniform view of FieldElem tuples (as ints) and Poly tuples."""

    def __init__(self, t):
        t = list(t)
        if not t:
            raise TupleTooSmall("empty tuple")
        self.poly = isinstance(t[0], Poly)
        self.field = t[0].field
        self.items = t if self.poly else [x.v if isinstance(x, FieldElem) else x for x in t]

    def frob(self, x, i):
        return x.pth_power(i) if self.poly else self.field.frob(x, i)

    def det(self, m):
        return bareiss(m) if self.poly else field_det(m, self.field)

    def wrap(self, x):
        return x if self.poly else FieldElem(self.field, x)

    def zero(self):
        return Poly(self.field) if self.poly else 0

    def one(self):
        return Poly.const(self.field, 1) if self.poly else 1

    def mul(self, a, b):
        return a * b if self.poly else self.field.mul(a, b)

    def add(self, a, b):
        return a + b if self.poly else self.field.add(a, b)

    def neg(self, a):
        return -a if self.poly else self.field.neg(a)

    def scale(self, a, c):
        return a.scale(c) if self.poly else self.field.mul(a, c)

    def pow(self, a, e):
        return a ** e if self.poly else self.field.pow(a, e)

    def div(self, a, b):
        if self.poly:
            return a.exact_div(b)
        return self.field.div(a, b)


def bareiss(m):
    """Fraction-free determinant of a square matrix of Polys."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    F = m[0][0].field
    a = [list(r) for r in m]
    sign = 1
    prev = Poly.const(F, 1)
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return Poly(F)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(prev)
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _moore_raw(ring, items, exps=None):
    n = len(items)
    if n == 0:
        return ring.one()
    exps = range(n) if exps is None else exps
    rows = [[ring.frob(x, e) for x in items] for e in exps]
    return ring.det(rows)


def moore_det(t):
    r = _Ring(t)
    return r.wrap(_moore_raw(r, r.items))


def _signed_minors(r):
    n = len(r.items)
    out = []
    for i in range(n):
        m = _moore_raw(r, r.items[:i] + r.items[i + 1:])
        out.append(r.neg(m) if i % 2 else m)
    return out


def moore_minor_map(t):
    """phi(a)_i = (-1)^(i-1) Delta_{n-1}(a with a_i removed)."""
    r = _Ring(t)
    if len(r.items) < 2:
        raise TupleTooSmall("minor map needs n >= 2")
    return [r.wrap(x) for x in _signed_minors(r)]


def delta_epsilon(eps, t):
    r = _Ring(t)
    F = r.field
    if len(eps) != len(r.items):
        raise TupleTooSmall("epsilon length mismatch")
    eps = [e % F.p for e in eps]
    if not any(eps):
        raise ZeroEpsilon("epsilon is zero")
    acc = r.zero()
    for e, m in zip(eps, _signed_minors(r) if len(r.items) > 1 else [r.one()]):
        if e:
            acc = r.add(acc, r.scale(m, e))
    return r.wrap(acc)


def span(field, basis):
    """All F_p-combinations of field ints, in epsilon-lexicographic order."""
    p = field.p
    out = []
    for eps in product(range(p), repeat=len(basis)):
        acc = 0
        for e, b in zip(eps, basis):
            if e:
                acc = field.add(acc, field.mul(e, b))
        out.append(acc)
    return out


def structural_poly(basis):
    """P_V for V = span(basis); computed two ways, which must agree."""
    items = [x.v if isinstance(x, FieldElem) else x for x in basis]
    F = basis[0].field
    d = _moore_raw(_Ring(basis), items)
    if not d:
        raise DependentBasis("Moore determinant vanishes")
    consts = [Poly.const(F, x) for x in items]
    r = _Ring(consts + [Poly.X(F)])
    via_det = _moore_raw(r, r.items).scale(F.inv(d))
    via_prod = Poly.from_roots(F, span(F, items))
    if via_det != via_prod:
        raise InternalInconsistency("structural polynomial routes disagree")
    return via_det


def structural_poly_fast(field, basis):
    """P_V by the product route alone (no cross-check)."""
    return Poly.from_roots(field, span(field, basis))


def dickson_invariants(t, evaluated=True):
    """[c_{n,0}, ..., c_{n,n-1}] at the tuple t."""
    r = _Ring(t)
    n = len(r.items)
    d = _moore_raw(r, r.items)
    if not d:
        raise SingularTuple("Moore determinant vanishes")
    out = []
    for i in range(n):
        exps = [e for e in range(n + 1) if e != i]
        num = _moore_raw(r, r.items, exps)
        if r.poly:
            q, rem = num.divmod(d)
            if rem:
                raise InexactDivision(f"c_{n},{i}")
            out.append(q)
        else:
            out.append(r.field.div(num, d))
    return [r.wrap(x) for x in out]


def moore_product(t):
    """Moore's product formula: prod_i prod_eps (a_i + sum_{j<i} eps_j a_j)."""
    r = _Ring(t)
    F = r.field
    p = F.p
    acc = r.one()
    for i, a in enumerate(r.items):
        for eps in product(range(p), repeat=i):
            term = a
            for e, b in zip(eps, r.items[:i]):
                if e:
                    term = r.add(term, r.scale(b, e))
            acc = r.mul(acc, term)
    return r.wrap(acc)


def cofactor_matrix(M, p):
    """(-1)^(i+j) times the (i, j) minor, over F_p."""
    n = len(M)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            out[i][j] = (_int_det(sub) * (-1) ** (i + j)) % p
    return out


def _int_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _int_det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n))


def int_det_mod(m, p):
    return _int_det(m) % p


def apply_matrix(field, items, M):
    """(x M)_j = sum_i x_i M_ij for field ints or Polys."""
    n = len(items)
    out = []
    for j in range(n):
        acc = None
        for i in range(n):
            c = M[i][j] % field.p
            if not c:
                continue
            term = items[i].scale(c) if isinstance(items[i], Poly) else field.mul(items[i], c)
            if acc is None:
                acc = term
            else:
                acc = acc + term if isinstance(term, Poly) else field.add(acc, term)
        if acc is None:
            acc = Poly(field) if isinstance(items[0], Poly) else 0
        out.append(acc)
    return out


def random_gl(p, n, rng):
    while True:
        M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if int_det_mod(M, p):
            return M


def _geom(p, lo, hi):
    return sum(p ** j for j in range(lo, hi + 1))


def random_independent(field, n, rng):
    while True:
        t = [rng.randrange(field.q) for _ in range(n)]
        if _moore_raw(_Ring([FieldElem(field, x) for x in t]), t):
            return t


def check_identities(field, n, trials=200, rng=None):
    """Run the Moore and Dickson identity suite on random tuples; returns counts.

    Raises InternalInconsistency on the first failure.
    """
    rng = rng or random.Random(0)
    F = field
    p = F.p
    counts = {}

    def ok(name, cond):
        if not cond:
            raise InternalInconsistency(f"identity {name} failed over {F.spec} n={n}")
        counts[name] = counts.get(name, 0) + 1

    def el(xs):
        return [FieldElem(F, x) for x in xs]

    for _ in range(trials):
        a = [rng.randrange(F.q) for _ in range(n)]
        r = _Ring(el(a))
        d = _moore_raw(r, a)
        # identities valid for every tuple, dependent or not
        ok("product_formula", moore_product(el(a)).v == d)
        if n >= 2:
            phi = _signed_minors(r)
            ok("minor_map_power", _moore_raw(r, phi) == F.pow(d, _geom(p, 0, n - 2)))
            phi2 = _signed_minors(_Ring(el(phi)))
            c = F.pow(d, _geom(p, 0, n - 3))
            if (n - 1) % 2:
                c = F.neg(c)
            ok("minor_map_squared", phi2 == [F.mul(c, F.frob(x, n - 2)) for x in a])
            M = random_gl(p, n, rng)
            aM = apply_matrix(F, a, M)
            C = cofactor_matrix(M, p)
            ok("minor_equivariance", _signed_minors(_Ring(el(aM))) == apply_matrix(F, phi, C))
            Y = [_moore_raw(r, a[:i] + a[i + 1:]) for i in range(n)]
            YM = [_moore_raw(r, aM[:i] + aM[i + 1:]) for i in range(n)]
            minors = [[C[i][j] * (-1) ** (i + j) % p for j in range(n)] for i in range(n)]
            ok("unsigned_minor_equivariance", YM == apply_matrix(F, Y, minors))
            ok("det_scaling", _moore_raw(r, aM) == F.mul(d, int_det_mod(M, p)))
        for m in (1, 2):
            if (n, m) not in ((2, 1), (2, 2), (3, 1)):
                continue
            X = [rng.randrange(F.q) for _ in range(m)]
            inner = [_moore_raw(r, [y] + X) for y in a]
            lhs = _moore_raw(r, inner)
            dx = _moore_raw(r, X)
            rhs = F.mul(F.pow(dx, _geom(p, 1, n - 1)), _moore_raw(r, a + X))
            ok(f"nested_moore_{n}_{m}", lhs == rhs)
        # structural Moore needs only the head to be independent
        for t in range(1, n):
            head, tail = a[:n - t], a[n - t:]
            dh = _moore_raw(_Ring(el(head)), head)
            if not dh:
                continue
            P = structural_poly(el(head))
            img = [P.eval(x) for x in tail]
            dt = _moore_raw(_Ring(el(img)), img)
            ok("structural_split", d == F.mul(dh, dt))
            if d:
                for i in range(n - t, n):
                    lhs = F.div(_moore_raw(r, a[:i] + a[i + 1:]), d)
                    j = i - (n - t)
                    rest = img[:j] + img[j + 1:]
                    rhs = F.div(_moore_raw(_Ring(el(img)), rest) if rest else 1, dt)
                    ok("minor_quotients", lhs == rhs)
        if not d:
            continue
        sp = structural_poly(el(a))
        cx = F.pow(d, p - 1)
        ok("structural_linear_coeff", sp.coeff(1) == (F.neg(cx) if n % 2 else cx) and sp.coeff(0) == 0)
        if n >= 2:
            eps = [rng.randrange(p) for _ in range(n)]
            if not any(eps):
                eps[0] = 1
            de = delta_epsilon(eps, el(a)).v
            ok("delta_epsilon_nonzero", de != 0)
            ker = [x for x, cs in zip(span(F, a), product(range(p), repeat=n))
                   if sum(e * c for e, c in zip(eps, cs)) % p == 0]
            Xp = Poly.X(F)
            rows = [[Poly.const(F, e) for e in eps] + [Poly(F)]]
            rows += [[Poly.const(F, F.frob(x, i)) for x in a] + [Xp.pth_power(i)] for i in range(n)]
            pk = bareiss(rows).scale(F.inv(de))
            ok("delta_epsilon_kernel", pk == Poly.from_roots(F, ker))
            cs = dickson_invariants(el(a))
            lower = a[:-1]
            dl = _moore_raw(_Ring(el(lower)), lower)
            cl = dickson_invariants(el(lower))[-1].v
            ok("dickson_top", F.sub(cs[-1].v, F.frob(cl, 1)) == F.pow(F.div(d, dl), p - 1))
    return counts


def check_poly_identities(field, n, trials=5, deg=2, rng=None):
    """Polynomial-tuple versions of the product formula and the minor-map power law."""
    rng = rng or random.Random(0)
    F = field
    p = F.p
    for _ in range(trials):
        t = [Poly(F, [rng.randrange(F.q) for _ in range(deg + 1)]) for _ in range(n)]
        d = moore_det(t)
        if moore_product(t) != d:
            raise InternalInconsistency("product formula on polynomials")
        if n >= 2:
            phi = moore_minor_map(t)
            if moore_det(phi) != d ** _geom(p, 0, n - 2):
                raise InternalInconsistency("minor-map power law on polynomials")
    return True
