"""Constructions of spaces in characteristic 2 from Bezout pairs and W-tuples."""
from itertools import product

from .errors import (WrongCharacteristic, NotCoprime, DegreeDrop, CongruenceInsolvable,
                     NonPolynomialU, InternalInconsistency, TupleTooSmall, InputError)
from .ff import FieldElem
from .poly import Poly, RatFun, gcd, gcd_ext, crt_solve, compose
from .moore import _Ring, _moore_raw, _signed_minors, bareiss
from .lspace import Prompt, criterion_value_det, build_space, equivalence_witness


class InvalidWTuple(InputError):
    pass


def _need_char2(F):
    if F.p != 2:
        raise WrongCharacteristic(f"characteristic {F.p}")


def split_uv(Q):
    """(U, V) with Q = U^2 + X V^2."""
    F = Q.field
    _need_char2(F)
    U = Poly(F, [F.root_p(c) for c in Q.c[0::2]])
    V = Poly(F, [F.root_p(c) for c in Q.c[1::2]])
    return U, V


def _assemble(U, V):
    X = Poly.X(U[0].field)
    return Prompt(tuple(u * u + X * v * v for u, v in zip(U, V)))


def _check_det_one(Q):
    E = criterion_value_det(Q)
    if E != Poly.const(Q.field, 1):
        raise InternalInconsistency(f"det(Q', Q, ...) = {E!r}, expected 1")


def bezout_prompt_n2(V1, V2, shift=0):
    """Prompt (U1^2 + X V1^2, U2^2 + X V2^2) with V1 U2 + U1 V2 = 1, U1 reduced mod V1."""
    F = V1.field
    _need_char2(F)
    if not V1 or not V2 or V1.deg != V2.deg or (V1 + V2).deg != V1.deg:
        raise DegreeDrop("V1, V2 and V1 + V2 must share one degree")
    g, s, _ = gcd_ext(V2, V1)
    if g.deg > 0:
        raise NotCoprime("V1 and V2 share a factor")
    U1 = s % V1
    U2 = (Poly.const(F, 1) - U1 * V2).exact_div(V1)
    if shift:
        a = Poly.const(F, shift.v if isinstance(shift, FieldElem) else shift)
        U1, U2 = U1 + a * V1, U2 + a * V2
    if U1 * V2 + V1 * U2 != Poly.const(F, 1):
        raise InternalInconsistency("Bezout identity")
    Q = _assemble((U1, U2), (V1, V2))
    _check_det_one(Q)
    return Q


def bezout_prompt_n2_even(U1, U2):
    """The even-degree variant: V from Bezout on coprime U1, U2."""
    F = U1.field
    _need_char2(F)
    if not U1 or not U2 or U1.deg != U2.deg or (U1 + U2).deg != U1.deg:
        raise DegreeDrop("U1, U2 and U1 + U2 must share one degree")
    g, s, _ = gcd_ext(U2, U1)
    if g.deg > 0:
        raise NotCoprime("U1 and U2 share a factor")
    V1 = s % U1
    V2 = (Poly.const(F, 1) - V1 * U2).exact_div(U1)
    Q = _assemble((U1, U2), (V1, V2))
    _check_det_one(Q)
    return Q


def _combos(W):
    F = W[0].field
    out = []
    for eps in product((0, 1), repeat=len(W)):
        if any(eps):
            acc = Poly(F)
            for e, w in zip(eps, W):
                if e:
                    acc = acc + w
            k = max(i for i, e in enumerate(eps) if e)
            out.append((eps, acc, k))
    return out


def validate_w(W):
    """Common degree d of all nonzero combinations, which must be pairwise coprime."""
    W = list(W)
    if len(W) < 2:
        raise TupleTooSmall("need n >= 2")
    _need_char2(W[0].field)
    combos = _combos(W)
    d = W[0].deg
    for eps, w, _ in combos:
        if not w or w.deg != d:
            raise InvalidWTuple(f"combination {eps} has degree {w.deg if w else None}")
    if d > 0:
        for i in range(len(combos)):
            for j in range(i + 1, len(combos)):
                if gcd(combos[i][1], combos[j][1]).deg > 0:
                    raise InvalidWTuple(f"{combos[i][0]} and {combos[j][0]} share a factor")
    return d


def _moore(t):
    return _moore_raw(_Ring(t), t)


def construct_gamma(W):
    """The proper solution of gamma = V_{k_W} (mod W) over all nonzero W in the span."""
    V = [v for v in _signed_minors(_Ring(W))]
    pairs = [(V[k], w) for _, w, k in _combos(W)]
    g = crt_solve(pairs)
    F = W[0].field
    g = Poly(F) if g is None else g
    for r, m in pairs:
        if m.deg > 0 and (g - r) % m:
            raise CongruenceInsolvable("congruence system")
    return g, V


def general_construct(W, R=None):
    """(Prompt, gamma, alpha) from a W-tuple and a polynomial R."""
    W = list(W)
    F = W[0].field
    validate_w(W)
    n = len(W)
    R = R if R is not None else Poly(F)
    D = _moore(W)
    gamma, V = construct_gamma(W)
    alpha = RatFun(gamma, D)
    U = []
    for v in V:
        num = (gamma + R * D) * v + v * v
        q, r = num.divmod(D)
        if r:
            raise NonPolynomialU("U_i is not a polynomial")
        U.append(q)
    if _moore(V) != D ** (2 ** (n - 1) - 1):
        raise InternalInconsistency("Delta_n(V) = Delta_n(W)^(2^(n-1)-1)")
    for u, v in zip(U, V):
        if RatFun(u) != (alpha + RatFun(R)) * RatFun(v) + RatFun(v * v, D):
            raise InternalInconsistency("U = alpha V + beta V^2")
    if n >= 3:
        _check_suffcond(U, V)
    Q = _assemble(U, V)
    _check_det_one(Q)
    return Q, gamma, alpha


def _check_suffcond(U, V):
    n = len(U)
    rows = [U, V] + [[u.pth_power(i) for u in U] for i in range(1, n - 1)]
    if bareiss(rows) != Poly.const(U[0].field, 1):
        raise InternalInconsistency("det(U, V, U^2, ...) = 1")
    for eps in product((0, 1), repeat=n - 2):
        if not any(eps):
            continue
        rows = [U, V]
        for i, e in enumerate(eps):
            base = V if e else U
            rows.append([b.pth_power(i + 1) for b in base])
        if bareiss(rows):
            raise InternalInconsistency(f"vanishing determinant for {eps}")


def expected_lambda(n, d, R):
    """Degree of the constructed Q_i."""
    if R is None or R.deg <= 0:
        return 1 + d * (2 ** n - 2)
    return 2 * (R.deg + d * (2 ** (n - 1) - 1))


def _span_key(W):
    return frozenset(tuple(w.c) for _, w, _ in _combos(W))


def _shift(W, c):
    F = W[0].field
    S = Poly(F, [c, 1])
    return [compose(w, S) for w in W]


def wr_equivalence(W, R, W2, R2, cross_check=True):
    """("same", None), ("equivalent", b) or ("distinct", None)."""
    F = W[0].field
    R = R if R is not None else Poly(F)
    R2 = R2 if R2 is not None else Poly(F)
    validate_w(W)
    validate_w(W2)
    if _span_key(W) == _span_key(W2) and R == R2:
        verdict = ("same", None)
    else:
        verdict = ("distinct", None)
        for b in range(F.q):
            if R2 == R + Poly.const(F, b) and _span_key(W2) == _span_key(_shift(W, F.mul(b, b))):
                verdict = ("equivalent", b)
                break
    if cross_check:
        _cross_check(W, R, W2, R2, verdict)
    return verdict


def _cross_check(W, R, W2, R2, verdict):
    from .errors import PolesOutsideField
    try:
        s1 = build_space(general_construct(W, R)[0])
        s2 = build_space(general_construct(W2, R2)[0])
    except PolesOutsideField:
        return
    w = equivalence_witness(s1, s2)
    if verdict[0] == "same" and s1.poles != s2.poles:
        raise InternalInconsistency("same parameters, different pole sets")
    if verdict[0] == "equivalent":
        if w is None:
            raise InternalInconsistency("equivalent parameters, no pole witness")
    if verdict[0] == "distinct" and w is not None and len(W) >= 3:
        raise InternalInconsistency("distinct parameters, but the spaces are equivalent")


def pullback_parameters(W, R, S):
    """(W o S, R') whose construction gives Q o S, for S' = 1."""
    F = W[0].field
    _need_char2(F)
    dS = S.derivative()
    if dS != Poly.const(F, 1):
        raise InputError("S' must be 1")
    T = Poly(F, [F.root_p(c) for c in (S - Poly.X(F)).c[0::2]])
    R = R if R is not None else Poly(F)
    WS = [compose(w, S) for w in W]
    gamma, _ = construct_gamma(W)
    gamma2, _ = construct_gamma(WS)
    corr = (compose(gamma, S) - gamma2).exact_div(_moore(WS))
    R2 = compose(R, S) + T + corr
    Q = general_construct(W, R)[0]
    Q2 = general_construct(WS, R2)[0]
    if tuple(compose(q, S) for q in Q.Q) != Q2.Q:
        raise InternalInconsistency("pullback closure")
    return WS, R2
