"""Prompts, the spaces they give rise to, and operations on those spaces.

Scaling.  Replacing Q by cQ multiplies P = Delta_n(Q) by c^(1+p+...+p^(n-1))
and P_n by c^(1+p+...+p^(n-2)), so P/P_n picks up c^(p^(n-1)).  The
criterion value d = ((P/P_n)^(p-1))^(p-1) therefore becomes
c^(p^(n-1)(p-1)) d, and a prompt with nonzero constant d is rescaled into a
genuine one by any c with c^(p^(n-1)(p-1)) = -1/d.

The determinant criterion computes E = (det(Q', Q, ..., Q^(p^(n-2)))
Delta_n(Q)^(p-2))^(p-2).  Since (P/P_n)^(p-1) differs from the Dickson
invariant c_{n,n-1} by a p-th power, d = -E for every prompt; both values
are computed independently and compared.
"""
from dataclasses import dataclass, field as dfield
from itertools import product
from math import lcm

from .errors import (DependentLeadingCoeffs, NotConstantCriterion, ZeroCriterion,
                     PolesOutsideField, NonSimpleRoot, SingularMatrix, NonEtaleS,
                     EtaNotInField, DependentTuple, MuNotInField, AuditFailure,
                     InternalInconsistency, DegreeMismatch, InputError, TupleTooSmall)
from .ff import FieldElem, nth_root_int, format_elem
from .poly import Poly, RatFun, derivative_k, roots_in_field, compose, gcd
from .moore import (_Ring, _moore_raw, _signed_minors, bareiss, int_det_mod,
                    cofactor_matrix, apply_matrix, structural_poly)
from .cartier import DiffForm, ResidueTable


class NotASpace(InputError):
    pass


def _geom(p, n):
    return sum(p ** i for i in range(n))


@dataclass(frozen=True)
class Prompt:
    Q: tuple

    def __post_init__(self):
        Q = tuple(self.Q)
        object.__setattr__(self, "Q", Q)
        if not Q:
            raise TupleTooSmall("empty prompt")
        F = Q[0].field
        lam = Q[0].deg
        if lam < 1 or any(q.field is not F or q.deg != lam for q in Q):
            raise DegreeMismatch("prompt entries must share one degree >= 1")
        lcs = [q.lc() for q in Q]
        if not _moore_raw(_Ring([FieldElem(F, x) for x in lcs]), lcs):
            raise DependentLeadingCoeffs("leading coefficients are F_p-dependent")

    @property
    def field(self):
        return self.Q[0].field

    @property
    def p(self):
        return self.field.p

    @property
    def n(self):
        return len(self.Q)

    @property
    def lam(self):
        return self.Q[0].deg

    def scale(self, c):
        return Prompt(tuple(q.scale(c) for q in self.Q))

    def to_json(self):
        return {"p": self.p, "n": self.n, "lambda": self.lam, "field": self.field.spec,
                "Q": [q.to_json()["coeffs"] for q in self.Q]}

    @classmethod
    def from_json(cls, d, F):
        return cls(tuple(Poly.from_json({"coeffs": c}, F) for c in d["Q"]))


def as_prompt(Q):
    return Q if isinstance(Q, Prompt) else Prompt(tuple(Q))


def gives_rise(Q):
    """(P, [P_i], [omega_i]) for a prompt, checking Delta_n(P_i) = P^(1+...+p^(n-2))."""
    Q = as_prompt(Q)
    r = _Ring(list(Q.Q))
    P = _moore_raw(r, r.items)
    Pi = _signed_minors(r) if Q.n > 1 else [Poly.const(Q.field, 1)]
    if Q.n > 1:
        lhs = _moore_raw(_Ring(Pi), Pi)
        if lhs != P ** _geom(Q.p, Q.n - 1):
            raise InternalInconsistency("Moore determinant of the P_i")
    forms = [DiffForm(RatFun(x, P)) for x in Pi]
    return P, Pi, forms


def criterion_poly(Q):
    """(P/P_n)^(p-1), by exact division."""
    Q = as_prompt(Q)
    P, Pi, _ = gives_rise(Q)
    return P.exact_div(Pi[-1]) ** (Q.p - 1)


def _coeff_report(F_):
    p = F_.field.p
    top = (F_.deg + 1) // p
    bad = [mu for mu in range(2, top + 1) if F_.coeff(mu * p - 1)]
    return F_.coeff(p - 1), bad


def verify_prompt_coeff(Q):
    Q = as_prompt(Q)
    C = criterion_poly(Q)
    lead, bad = _coeff_report(C)
    return lead == 1 and not bad, {"coeff_p_minus_1": lead, "nonzero_mu": bad}


def criterion_value_coeff(Q):
    """((P/P_n)^(p-1))^(p-1) as a Poly."""
    Q = as_prompt(Q)
    return derivative_k(criterion_poly(Q), Q.p - 1)


def criterion_value_det(Q):
    """(det(Q', Q, ..., Q^(p^(n-2))) Delta_n(Q)^(p-2))^(p-2) as a Poly."""
    Q = as_prompt(Q)
    p, n = Q.p, Q.n
    rows = [[q.derivative() for q in Q.Q]]
    rows += [[q.pth_power(e) for q in Q.Q] for e in range(n - 1)]
    D = bareiss(rows)
    if p > 2:
        r = _Ring(list(Q.Q))
        D = D * _moore_raw(r, r.items) ** (p - 2)
    return derivative_k(D, p - 2)


def verify_prompt_det(Q):
    E = criterion_value_det(Q)
    return E.is_const() and E.coeff(0) == 1


def criterion_constant(Q):
    """The constant d of the coefficient route, cross-checked against -E."""
    Q = as_prompt(Q)
    d = criterion_value_coeff(Q)
    e = criterion_value_det(Q)
    if d != -e:
        raise InternalInconsistency("coefficient and determinant criteria disagree")
    if not d:
        raise ZeroCriterion("criterion vanishes")
    if not d.is_const():
        raise NotConstantCriterion(f"criterion has degree {d.deg}")
    return d.coeff(0)


def solve_scaling(Q):
    """(c, cQ) with c^(p^(n-1)(p-1)) = -1/d, or (None, reason)."""
    Q = as_prompt(Q)
    F = Q.field
    d = criterion_constant(Q)
    e = Q.p ** (Q.n - 1) * (Q.p - 1)
    c = nth_root_int(F, F.neg(F.inv(d)), e)
    if c is None:
        return None, "requires field extension"
    return c, Q.scale(c)


def splitting_degree(P):
    """Degree over the working field of the splitting field of P (distinct-degree probing)."""
    F = P.field
    f = P.monic()
    X = Poly.X(F)
    h = X
    m, out = 0, 1
    while f.deg > 0:
        m += 1
        h = _powmod(h, F.q, f)
        g = gcd(f, h - X)
        if g.deg > 0:
            out = lcm(out, m)
            while True:
                q, r = f.divmod(g)
                if r:
                    break
                f = q
            h = h % f if f.deg > 0 else h
    return out


def _powmod(a, e, m):
    r = Poly.const(a.field, 1)
    a = a % m
    while e:
        if e & 1:
            r = (r * a) % m
        a = (a * a) % m
        e >>= 1
    return r


@dataclass(frozen=True, eq=False)
class LSpace:
    prompt: Prompt
    P: Poly
    Pi: tuple
    basis: tuple
    poles: tuple
    res: dict = dfield(repr=False)

    @property
    def field(self):
        return self.prompt.field

    @property
    def n(self):
        return self.prompt.n

    @property
    def lam(self):
        return self.prompt.lam

    def residues(self):
        F = self.field
        return [ResidueTable(F, [(x, self.res[x][i]) for x in self.poles if self.res[x][i]])
                for i in range(self.n)]

    def residue_vector(self, x):
        return self.res.get(x, (0,) * self.n)

    def form(self, eps):
        F = self.field
        num = Poly(F)
        for e, x in zip(eps, self.Pi):
            if e % F.p:
                num = num + x.scale(e % F.p)
        return DiffForm(RatFun(num, self.P))

    def forms(self):
        for eps in product(range(self.field.p), repeat=self.n):
            if any(eps):
                yield eps, self.form(eps)

    def pole_set(self, eps):
        p = self.field.p
        return {x for x in self.poles
                if sum(e * h for e, h in zip(eps, self.res[x])) % p}

    def to_json(self):
        F = self.field
        return {"prompt": self.prompt.to_json(), "P": self.P.to_json()["coeffs"],
                "poles": [F.digits(x) for x in self.poles],
                "residues": [t.to_json() for t in self.residues()]}


def build_space(Q, audit=True):
    Q = as_prompt(Q)
    F = Q.field
    ok, diag = verify_prompt_coeff(Q)
    if not ok:
        raise NotASpace(f"criterion fails: {diag}")
    P, Pi, forms = gives_rise(Q)
    roots, split = roots_in_field(P)
    for x, m in roots:
        if m > 1:
            raise NonSimpleRoot(format_elem(F, x))
    if not split:
        raise PolesOutsideField(f"poles need an extension of degree {splitting_degree(P)}")
    dP = P.derivative()
    res = {}
    for x, _ in roots:
        inv = F.inv(dP.eval(x))
        res[x] = tuple(F.mul(q.eval(x), inv) for q in Pi)
    s = LSpace(Q, P, tuple(Pi), tuple(forms), tuple(x for x, _ in roots), res)
    if audit:
        audit_pole_combinatorics(s)
    return s


def _check(item, expected, actual):
    if expected != actual:
        raise AuditFailure(item, expected, actual)
    return expected


def audit_pole_combinatorics(s):
    """Pole counts, hyperplane fibers, sub-basis intersections and subspace poles."""
    F = s.field
    p, n, lam = F.p, s.n, s.lam
    report = {}
    report["a"] = _check("pole count", lam * _geom(p, n), len(s.poles))
    for x in s.poles:
        if any(h >= p for h in s.res[x]) or not any(s.res[x]):
            raise AuditFailure("residues in F_p", "F_p vector", s.res[x])
    fibers = {}
    for x in s.poles:
        h = s.res[x]
        lead = next(v for v in h if v)
        inv = pow(lead, -1, p)
        fibers.setdefault(tuple(v * inv % p for v in h), []).append(x)
    _check("hyperplane count", _geom(p, n), len(fibers))
    for key, xs in fibers.items():
        _check(f"fiber {key}", lam, len(xs))
    report["b"] = lam
    sets = [s.pole_set(tuple(int(i == j) for j in range(n))) for i in range(n)]
    for mask in range(1, 2 ** n):
        idx = [i for i in range(n) if mask >> i & 1]
        inter = set.intersection(*(sets[i] for i in idx))
        r = len(idx)
        _check(f"intersection {idx}", lam * (p - 1) ** (r - 1) * p ** (n - r), len(inter))
    report["c"] = True
    for t in range(1, n + 1):
        head = s.prompt.Q[:n - t]
        sub = set()
        for eps in product(range(p), repeat=t):
            if any(eps):
                sub |= s.pole_set((0,) * (n - t) + eps)
        rest = set(s.poles)
        for x in s.poles:
            for eps in product(range(p), repeat=n - t):
                if any(eps):
                    v = 0
                    for e, q in zip(eps, head):
                        if e:
                            v = F.add(v, F.mul(e, q.eval(x)))
                    if not v:
                        rest.discard(x)
                        break
        _check(f"subspace poles t={t}", sorted(rest), sorted(sub))
    report["d"] = True
    return report


def _inv_mod_matrix(M, p):
    det = int_det_mod(M, p)
    if not det:
        raise SingularMatrix("matrix is singular mod p")
    C = cofactor_matrix(M, p)
    di = pow(det, -1, p)
    n = len(M)
    return [[C[j][i] * di % p for j in range(n)] for i in range(n)]


def change_basis(s, M):
    F = s.field
    p, n = F.p, s.n
    Minv = _inv_mod_matrix(M, p)
    new = build_space(Prompt(tuple(apply_matrix(F, list(s.prompt.Q), M))))
    for j in range(n):
        # column j of (M^-1)^t is row j of M^-1
        expect = s.form([Minv[j][i] for i in range(n)])
        if new.basis[j] != expect:
            raise InternalInconsistency("basis change rule")
    if new.poles != s.poles:
        raise InternalInconsistency("pole set changed under basis change")
    return new


def frobenius_twist(s):
    F = s.field
    new = build_space(Prompt(tuple(q.frob_coeffs(1) for q in s.prompt.Q)))
    if sorted(F.frob(x, 1) for x in s.poles) != list(new.poles):
        raise InternalInconsistency("twisted poles are not p-th powers")
    return new


def etale_pullback(s, S):
    F = s.field
    dS = S.derivative()
    if S.deg < 1 or not dS or not dS.is_const():
        raise NonEtaleS("S' must be a nonzero constant")
    g = dS.coeff(0)
    eta = nth_root_int(F, F.inv(g), F.p ** (s.n - 1))
    if eta is None:
        raise EtaNotInField("no eta in the working field")
    new = build_space(Prompt(tuple(compose(q, S).scale(eta) for q in s.prompt.Q)))
    gpoly = Poly.const(F, g)
    for w, v in zip(s.basis, new.basis):
        if RatFun(compose(w.f.num, S) * gpoly, compose(w.f.den, S)) != v.f:
            raise InternalInconsistency("pullback forms")
    if not F.q > 10 ** 6:
        import numpy as np
        vals = F.veval(S.c, np.arange(F.q, dtype=np.int64))
        old = np.zeros(F.q, dtype=bool)
        old[list(s.poles)] = True
        pre = np.nonzero(old[vals])[0].tolist()
        if pre != list(new.poles):
            raise InternalInconsistency("pullback poles are not the preimage")
    return new


def _poles_of(x):
    return sorted(x.poles) if isinstance(x, LSpace) else sorted(x)


def equivalence_witnesses(s1, s2, field=None):
    """All (a, b) with a P(s1) + b = P(s2), via an anchored complete search."""
    F = field or s1.field
    A, B = _poles_of(s1), _poles_of(s2)
    if len(A) != len(B):
        return []
    if not A:
        return [(a, b) for a in range(1, F.q) for b in range(F.q)]
    Bset = set(B)
    out = []
    if len(A) == 1:
        return [(a, F.sub(B[0], F.mul(a, A[0]))) for a in range(1, F.q)]
    x1, x2 = A[0], A[1]
    dx = F.inv(F.sub(x1, x2))
    for y in B:
        for y2 in B:
            if y2 == y:
                continue
            a = F.mul(F.sub(y, y2), dx)
            b = F.sub(y, F.mul(a, x1))
            if all(F.add(F.mul(a, x), b) in Bset for x in A):
                out.append((a, b))
    return sorted(out)


def equivalence_witness(s1, s2, field=None):
    w = equivalence_witnesses(s1, s2, field)
    return w[0] if w else None


def _standard_prompt(F, a):
    p, n = F.p, len(a)
    d = _moore_raw(_Ring([FieldElem(F, x) for x in a]), a)
    if not d:
        raise DependentTuple("Delta_n(a) = 0")
    mu = nth_root_int(F, F.neg(F.inv(F.pow(d, p - 1))), p ** (n - 1))
    if mu is None:
        raise MuNotInField("no mu in the working field")
    Q = tuple(Poly._raw(F, [F.neg(F.mul(mu, F.frob(x, 1)))] + [0] * (p - 2) + [F.mul(mu, x)])
              for x in a)
    return Prompt(Q), mu


def standard_space(a, field=None):
    F = field or a[0].field
    a = [x.v if isinstance(x, FieldElem) else x for x in a]
    Q, _ = _standard_prompt(F, a)
    s = build_space(Q)
    p, n = F.p, len(a)
    want = {}
    for eps in product(range(p), repeat=n):
        if any(eps):
            x = 0
            for e, y in zip(eps, a):
                if e:
                    x = F.add(x, F.mul(e, y))
            want[x] = eps
    if sorted(want) != list(s.poles):
        raise InternalInconsistency("standard poles are not span(a) - {0}")
    for x, eps in want.items():
        if s.res[x] != eps:
            raise InternalInconsistency("standard residue pairing")
    return s


def _structural_of_polys(basis, F):
    """Y -> prod_{v in span(basis)} (Y - v), as a function of Y."""
    p = F.p
    elems = []
    for eps in product(range(p), repeat=len(basis)):
        v = Poly(F)
        for e, b in zip(eps, basis):
            if e:
                v = v + b.scale(e)
        elems.append(v)

    def ev(Y):
        out = Poly.const(F, 1)
        for v in elems:
            out = out * (Y - v)
        return out
    return ev


def standard_subspace(a, t, field=None):
    """Prompt of <omega_{n-t+1}, ..., omega_n> in the standard space of a, with witnesses."""
    F = field or a[0].field
    a = [x.v if isinstance(x, FieldElem) else x for x in a]
    p, n = F.p, len(a)
    if not 1 <= t <= n:
        raise TupleTooSmall("t out of range")
    full = standard_space(a, F)
    head = a[:n - t]
    SA = structural_poly([FieldElem(F, x) for x in head]) if head else Poly.X(F)
    tilde = [SA.eval(x) for x in a[n - t:]]
    base = standard_space(tilde, F)
    dS = SA.derivative()
    dh = _moore_raw(_Ring([FieldElem(F, x) for x in head]), head) if head else 1
    expect = F.pow(dh, p - 1)
    if (n - t) % 2:
        expect = F.neg(expect)
    if dS != Poly.const(F, expect):
        raise InternalInconsistency("derivative of the structural polynomial")
    eta = nth_root_int(F, F.inv(expect), p ** (t - 1))
    sub = Prompt(tuple(compose(q, SA).scale(eta) for q in base.prompt.Q))
    PQ = _structural_of_polys(list(full.prompt.Q[:n - t]), F)
    sign = 1 if (n - t) % 2 == 0 else F.neg(1)
    for q, Qi in zip(sub.Q, full.prompt.Q[n - t:]):
        if q.scale(sign) != PQ(Qi):
            raise InternalInconsistency("subspace prompt identity")
    ss = build_space(sub)
    for w, v in zip(ss.basis, full.basis[n - t:]):
        if w != v:
            raise InternalInconsistency("pullback basis differs from the subspace basis")
    return sub, {"S": SA, "eta": eta, "tilde_a": tilde, "base": base, "space": ss}
