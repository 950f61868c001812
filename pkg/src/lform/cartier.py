"""Logarithmic differential forms f dX on the projective line."""
from .errors import (NonSimplePole, PoleOutsideField, ZeroForm, ZeroPolynomial,
                     DegreeMismatch, InternalInconsistency)
from .ff import format_elem
from .poly import Poly, RatFun, roots_in_field, derivative_k, ratfun_derivative


class DiffForm:
    __slots__ = ("f",)

    def __init__(self, f):
        if isinstance(f, Poly):
            f = RatFun(f)
        self.f = f

    @classmethod
    def from_parts(cls, num, den):
        return cls(RatFun(num, den))

    @property
    def field(self):
        return self.f.field

    def is_zero(self):
        return self.f.is_zero()

    def __add__(self, o):
        return DiffForm(self.f + o.f)

    def __sub__(self, o):
        return DiffForm(self.f - o.f)

    def __neg__(self):
        return DiffForm(-self.f)

    def scale(self, c):
        return DiffForm(self.f * Poly.const(self.field, c))

    def __eq__(self, o):
        return isinstance(o, DiffForm) and self.f == o.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"DiffForm(({self.f.num.pretty()}) / ({self.f.den.pretty()}) dX)"


class ResidueTable:
    """Rows (pole, residue) of field ints, sorted by pole."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = sorted(rows)

    def as_dict(self):
        return dict(self.rows)

    @property
    def poles(self):
        return [x for x, _ in self.rows]

    def residue(self, x):
        return self.as_dict().get(x, 0)

    def to_json(self):
        F = self.field
        out = []
        for x, r in self.rows:
            out.append({"pole": F.digits(x), "res": F.signed(r) if r < F.p else F.digits(r)})
        return out

    def __eq__(self, o):
        return isinstance(o, ResidueTable) and self.rows == o.rows

    def __repr__(self):
        F = self.field
        return "ResidueTable(" + ", ".join(f"{format_elem(F, x)}:{format_elem(F, r)}" for x, r in self.rows) + ")"


def poles_and_residues(w):
    f = w.f if isinstance(w, DiffForm) else w
    F = f.field
    den = f.den
    if den.deg <= 0:
        return ResidueTable(F, [])
    roots, split = roots_in_field(den)
    for x, m in roots:
        if m > 1:
            raise NonSimplePole(format_elem(F, x))
    if not split:
        raise PoleOutsideField("denominator does not split in " + F.spec)
    dd = den.derivative()
    return ResidueTable(F, [(x, F.div(f.num.eval(x), dd.eval(x))) for x, _ in roots])


def order_at_infinity(w):
    f = w.f if isinstance(w, DiffForm) else w
    if f.is_zero():
        return float("inf")
    return f.den.deg - f.num.deg - 2


def _frob_ratfun(f):
    return RatFun(f.num.pth_power(), f.den.pth_power())


def log_route_derivative(f):
    """f^(p-1) = -f^p, equivalent to f = f_{p-1}."""
    return ratfun_derivative(f, f.field.p - 1) == -_frob_ratfun(f)


def log_route_residues(f):
    """None if the poles do not split; else whether all residues are in F_p^x."""
    F = f.field
    if f.num.deg >= f.den.deg:
        roots, split = roots_in_field(f.den) if f.den.deg > 0 else ([], True)
        return False if split else None
    roots, split = roots_in_field(f.den)
    if not split:
        return None
    if any(m > 1 for _, m in roots):
        return False
    dd = f.den.derivative()
    for x, _ in roots:
        r = F.div(f.num.eval(x), dd.eval(x))
        if not r or r >= F.p:
            return False
    return True


def is_logarithmic(w):
    """(verdict, witness) with both routes compared when both apply."""
    f = w.f if isinstance(w, DiffForm) else w
    if f.is_zero():
        raise ZeroForm("zero form")
    a = log_route_derivative(f)
    b = log_route_residues(f)
    if b is not None and a != b:
        raise InternalInconsistency("derivative and residue criteria disagree")
    return a, {"derivative": a, "residues": b}


def jc_check(P):
    """(P^{p-1})^{(p-1)}; dX/P is logarithmic iff this equals -1."""
    if not P:
        raise ZeroPolynomial("jc_check of zero")
    p = P.field.p
    return derivative_k(P ** (p - 1), p - 1)


def check_L_lambda_1(P, lam):
    F = P.field
    p = F.p
    if P.deg != lam or lam < 1:
        raise DegreeMismatch(f"deg P = {P.deg}, lambda = {lam}")
    Q = P ** (p - 1)
    verdict = Q.coeff(p - 1) == 1
    hi = lam + (1 - lam) // p
    for mu in range(2, hi + 1):
        if Q.coeff(mu * p - 1):
            verdict = False
    roots, split = roots_in_field(P)
    if split:
        alt = all(m == 1 for _, m in roots)
        if alt:
            dP = P.derivative()
            a = [F.inv(dP.eval(x)) for x, _ in roots]
            alt = all(ai < p for ai in a)
            for k in range(lam - 1):
                s = 0
                for ai, (x, _) in zip(a, roots):
                    s = F.add(s, F.mul(ai, F.pow(x, k)))
                if s:
                    alt = False
        if alt != verdict:
            raise InternalInconsistency("coefficient and power-sum criteria disagree")
    return verdict


def dlog(factors, field):
    """dF/F for F = prod (X - x)^e, as a DiffForm."""
    num = Poly(field)
    den = Poly.const(field, 1)
    X = Poly.X(field)
    for x, e in factors:
        den = den * (X - Poly.const(field, x))
    for i, (x, e) in enumerate(factors):
        other = Poly.const(field, field.from_int(e))
        for j, (y, _) in enumerate(factors):
            if j != i:
                other = other * (X - Poly.const(field, y))
        num = num + other
    return DiffForm(RatFun(num, den))
