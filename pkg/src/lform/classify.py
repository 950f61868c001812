"""Replays of the classified families, Newton-sum identities on pencils,
pencil discriminants and a normalized exhaustive search for prompts."""
from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool

from .errors import (WrongCharacteristic, FieldTooSmall, NonSplitPencil, RepeatedRoot,
                     PrecondViolation, InterpolationShortfall, InsufficientSamples,
                     SearchSpaceTooLarge, InternalInconsistency, InputError,
                     SpecMismatch)
from .ff import FieldElem, parse_field_spec, default_field, embedding
from .poly import (Poly, gcd, gcd_ext, disc, roots_in_field, interpolate)
from .moore import _Ring, _moore_raw, span
from .lspace import (Prompt, build_space, criterion_value_coeff, criterion_value_det,
                     solve_scaling, verify_prompt_det,
                     change_basis, frobenius_twist, equivalence_witness, standard_space,
                     etale_pullback)

F27_SPEC = "3^3/1,2,0,1"
F81_SPEC = "3^4/2,2,2,1,1"

# (exponent of mu or None for 0, res_1, res_2), in the order printed alongside the examples
F27_TABLE = [
    (4, 1, 0), (9, 1, 0), (19, 1, 0), (1, -1, 0), (None, -1, 0),
    (5, 1, -1), (15, -1, 1), (24, -1, 1), (8, -1, 1), (21, -1, 1),
    (25, -1, -1), (13, 1, 1), (18, -1, -1), (12, 1, 1), (17, -1, -1),
    (10, 0, 1), (3, 0, 1), (2, 0, -1), (7, 0, -1), (22, 0, 1),
]
F81_TABLE = [
    (7, -1, 0), (30, -1, 0), (51, -1, 0), (59, -1, 0), (63, -1, 0),
    (26, -1, 1), (50, 1, -1), (52, 1, -1), (68, 1, -1), (74, -1, 1),
    (34, -1, -1), (60, 1, 1), (66, -1, -1), (70, 1, 1), (None, 1, 1),
    (10, 0, 1), (11, 0, 1), (19, 0, 1), (20, 0, 1), (40, 0, -1),
]
F27_SETS = {"0": [4, 9, 19, 1, None], "1": [5, 15, 24, 8, 21],
            "2": [25, 13, 18, 12, 17], "inf": [10, 3, 2, 7, 22]}
F81_SETS = {"0": [7, 30, 51, 59, 63], "1": [26, 50, 52, 68, 74],
            "2": [34, 60, 66, 70, None], "inf": [10, 11, 19, 20, 40]}

# the displayed bases are (-w2, w1) in terms of the basis built from (Q1, Q2)
PRINTED_BASIS = [[0, 1], [-1, 0]]


def _el(F, x):
    return x if isinstance(x, FieldElem) else FieldElem(F, x)


def _mu(F, e):
    return 0 if e is None else F.mu_pow(e)


# -- L_{12,2} --

def l12_pair(a):
    F = a.field
    if F.p != 3:
        raise WrongCharacteristic(f"characteristic {F.p}")
    X4 = Poly.monomial(F, 4)
    X2 = Poly.monomial(F, 2)
    one = Poly.const(F, 1)
    a2, a4, a8 = a ** 2, a ** 4, a ** 8
    Q1 = X4 - X2.scale((a4 + a2 - 1).v) + one
    Q2 = (X4 + X2.scale((a4 - a2 - 1).v) + Poly.const(F, a8.v)).scale(a.v)
    return Q1, Q2


def l12_expected(a):
    return -((a ** 3 - a) ** 10) * (a ** 2 + 1) ** 5


def l12_family(a):
    """The pair (Q_{1,a}, Q_{2,a}); its criterion value is asserted."""
    Q = Prompt(l12_pair(a))
    d = criterion_value_coeff(Q)
    if d != Poly.const(a.field, l12_expected(a).v):
        raise InternalInconsistency(f"criterion value {d!r} for a = {a!r}")
    if d != -criterion_value_det(Q):
        raise InternalInconsistency("coefficient and determinant criteria disagree")
    return Q


def l12_members(F):
    """All a in F with a^2 outside F_3, in int order."""
    out = []
    for v in range(F.q):
        a = FieldElem(F, v)
        if not F.in_prime_field((a * a).v):
            out.append(a)
    return out


def l12_replay(big=None, sub=81):
    """One row per a in the subfield F_sub of `big`: the scaled space's pole data,
    or the reason verification fails."""
    big = big or default_field(3, 8)
    rows = []
    for v in big.subfield(sub):
        a = FieldElem(big, v)
        row = {"a": a, "member": not big.in_prime_field((a * a).v)}
        try:
            Q = l12_family(a)
        except InputError as e:
            row.update(verified=False, reason=type(e).__name__)
            rows.append(row)
            continue
        d = criterion_value_coeff(Q)
        row["criterion"] = d.coeff(0)
        if not d:
            row.update(verified=False, reason="criterion vanishes")
            rows.append(row)
            continue
        c, Qs = solve_scaling(Q)
        if c is None:
            row.update(verified=False, reason="no scaling in the field")
            rows.append(row)
            continue
        s = build_space(Qs)
        w1, w2 = s.pole_set((1, 0)), s.pole_set((0, 1))
        fibers = {}
        for x in s.poles:
            h = s.res[x]
            lead = h[0] if h[0] else h[1]
            key = tuple(r * pow(lead, -1, 3) % 3 for r in h)
            fibers[key] = fibers.get(key, 0) + 1
        row.update(verified=verify_prompt_det(Qs), space=s, pole_count=len(s.poles),
                   fiber_sizes=sorted(fibers.values()), intersection=len(w1 & w2))
        rows.append(row)
    return rows


# -- L_{15,2} --

def _l15_data(which):
    if which == "F27":
        F = parse_field_spec(F27_SPEC)
        sets, table = F27_SETS, F27_TABLE
        mu = FieldElem(F, F.p)
        c1, c2 = -mu, mu * mu - mu - 1
    elif which == "F81":
        F = parse_field_spec(F81_SPEC)
        sets, table = F81_SETS, F81_TABLE
        a = -FieldElem(F, F.mu_pow(20))
        c1, c2 = -(a + 1), a
    else:
        raise InputError(f"unknown example {which!r}")
    return F, sets, table, c1, c2


def l15_prompt(which):
    F, sets, _, c1, c2 = _l15_data(which)
    P0 = Poly.from_roots(F, [_mu(F, e) for e in sets["0"]])
    Pinf = Poly.from_roots(F, [_mu(F, e) for e in sets["inf"]])
    return Prompt((Pinf.scale(c1.v), P0.scale(c2.v)))


def printed_table(which):
    """The printed table as sorted rows (pole int, res_1, res_2) of the example's field."""
    F, _, table, _, _ = _l15_data(which)
    return sorted((_mu(F, e), r1 % 3, r2 % 3) for e, r1, r2 in table)


def residue_rows(s):
    return sorted((x,) + tuple(s.res[x]) for x in s.poles)


def l15_examples(which, frob=0, field=None):
    """The example space over F27 or F81 with its printed basis, twisted `frob` times."""
    F0, sets, _, _, _ = _l15_data(which)
    if field is not None and (field.p != 3 or field.k % F0.k):
        raise FieldTooSmall(f"{field.spec} does not contain F_{F0.q}")
    Q = l15_prompt(which)
    d = criterion_value_coeff(Q)
    if d != Poly.const(F0, -1):
        raise InternalInconsistency(f"second derivative {d!r}, expected -1")
    s = change_basis(build_space(Q), PRINTED_BASIS)
    if residue_rows(s) != printed_table(which):
        raise InternalInconsistency(f"residue table of the {which} example")
    for key, es in sets.items():
        j = {"0": None, "1": 1, "2": 2, "inf": 0}[key]
        xs = sorted(_mu(F0, e) for e in es)
        got = sorted(x for x in s.poles if _fiber(s.res[x]) == j)
        if got != xs:
            raise InternalInconsistency(f"pole fiber {key}")
    for _ in range(frob):
        s = frobenius_twist(s)
    if field is not None and field is not F0:
        img = embedding(F0, field)
        s = build_space(Prompt(tuple(_embed_poly(q, img, field) for q in s.prompt.Q)),
                        audit=False)
    return s


def _fiber(h):
    # the points where w_1 + j w_2 is regular: None for w_2 regular
    r1, r2 = h
    if not r2:
        return None
    return (-r1 * pow(r2, -1, 3)) % 3


def _embed_poly(q, img, big):
    return Poly(big, [img[c] for c in q.c])


def l15_classes(big=None):
    """Pole sets of the five classes embedded in a common field, and the pairwise witnesses."""
    big = big or default_field(3, 12)
    spaces = {}
    for which, twists in (("F27", 3), ("F81", 2)):
        F0 = _l15_data(which)[0]
        img = embedding(F0, big)
        for k in range(twists):
            s = l15_examples(which, k)
            spaces[f"{which}/phi^{k}"] = [img[x] for x in s.poles]
    names = sorted(spaces)
    witnesses = {}
    for i, u in enumerate(names):
        for v in names[i + 1:]:
            witnesses[(u, v)] = equivalence_witness(spaces[u], spaces[v], big)
    return spaces, witnesses


# -- pencils and Newton sums --

@dataclass(frozen=True)
class PencilData:
    P0: Poly
    Pinf: Poly
    a: FieldElem
    c: FieldElem

    def __post_init__(self):
        F = self.P0.field
        if self.P0.deg != self.Pinf.deg or self.P0.deg < 1:
            raise PrecondViolation("P0 and Pinf need one degree >= 1")
        if self.P0.lc() != 1 or self.Pinf.lc() != 1:
            raise PrecondViolation("P0 and Pinf must be monic")
        if F.in_prime_field(self.a.v):
            raise PrecondViolation("a must lie outside F_p")
        if not self.c:
            raise PrecondViolation("c must be nonzero")

    @classmethod
    def from_prompt(cls, Q):
        """Q1 = -c Pinf, Q2 = a c P0."""
        Q1, Q2 = (Q.Q if isinstance(Q, Prompt) else Q)
        F = Q1.field
        c = -FieldElem(F, Q1.lc())
        a = FieldElem(F, Q2.lc()) / c
        return cls(Q2.monic(), Q1.monic(), a, c)

    @property
    def field(self):
        return self.P0.field

    @property
    def lam(self):
        return self.P0.deg

    @property
    def theta(self):
        return self.Pinf - self.P0

    def P(self, t):
        """P_t = (a P0 + t Pinf) / (a + t)."""
        F = self.field
        t = _el(F, t)
        s = self.a + t
        if not s:
            raise PrecondViolation("t = -a")
        return (self.P0.scale(self.a.v) + self.Pinf.scale(t.v)).scale((1 / s).v)

    def members(self):
        return [self.P(j) for j in range(self.field.p)]

    def prompt(self):
        return Prompt((self.Pinf.scale((-self.c).v), self.P0.scale((self.a * self.c).v)))

    def check(self):
        """Pairwise coprime members sharing the coefficient e_1."""
        Ps = self.members()
        lam = self.lam
        e1 = {P.coeff(lam - 1) for P in Ps}
        coprime = all(gcd(Ps[i], Ps[j]).deg == 0
                      for i in range(len(Ps)) for j in range(i + 1, len(Ps)))
        return {"coprime": coprime, "shared_e1": len(e1) == 1}


@dataclass
class NewtonSums:
    N: dict
    h: dict
    maxR: int


def _roots_of_member(P):
    roots, split = roots_in_field(P)
    if not split:
        raise NonSplitPencil("a pencil member does not split in " + P.field.spec)
    if any(m > 1 for _, m in roots):
        raise RepeatedRoot("a pencil member has a repeated root")
    return [x for x, _ in roots]


def newton_toolkit(d, maxR=None):
    """(NewtonSums, report) for a pencil whose members split with simple roots."""
    F = d.field
    p, lam = F.p, d.lam
    maxR = 3 * lam * p if maxR is None else maxR
    Th = d.theta
    if not Th:
        raise PrecondViolation("Theta = 0")
    a, c = d.a, d.c
    Q1, Q2 = d.Pinf.scale((-c).v), d.P0.scale((a * c).v)
    den = Q1 * Q2.pth_power() - Q1.pth_power() * Q2
    dden = den.derivative()
    pre = (a ** (p - 1)) ** -1 * (c ** p) ** -1
    N, H = {}, {}
    rep = {"sum_i": True, "sum_ii": True, "sum_iii": True, "sum_iv": True,
           "recursion": True, "frobenius": True, "residues_in_Fp": True}
    for j in range(p):
        Pj = d.P(j)
        xs = _roots_of_member(Pj)
        dP = Pj.derivative()
        aj = a + j
        hs = []
        for x in xs:
            th = FieldElem(F, Th.eval(x))
            if not th:
                raise PrecondViolation("Theta shares a root with a pencil member")
            h = pre * aj ** (p - 2) / (FieldElem(F, dP.eval(x)) * th ** (p - 1))
            direct = FieldElem(F, F.neg(Q1.eval(x))) / FieldElem(F, dden.eval(x))
            if h != direct:
                raise InternalInconsistency("residue formula for h_{j,i}")
            hs.append((FieldElem(F, x), h))
        H[j] = hs
        if any(not F.in_prime_field(h.v) or not h for _, h in hs):
            rep["residues_in_Fp"] = False
        zero = FieldElem(F, 0)
        for k in range(lam):
            s = sum((h * th_pow(Th, x, p - 1) * x ** k for x, h in hs), zero)
            if k <= lam - 2 and s:
                raise InternalInconsistency(f"partial fractions, k = {k}")
            if k == lam - 1 and s != aj ** (p - 2) * pre:
                raise InternalInconsistency("partial fractions, k = lambda - 1")
        if sum((h * th_pow(Th, x, 1) for x, h in hs), zero):
            rep["sum_iii"] = False
        s4 = sum((1 / (FieldElem(F, dP.eval(x.v)) * th_pow(Th, x, p - 2)) for x, _ in hs), zero)
        if s4:
            rep["sum_iv"] = False
        seq = []
        for r in range(maxR + 1):
            seq.append(sum((h * x ** r for x, h in hs), zero))
        N[j] = seq
        cs = [FieldElem(F, v) for v in Pj.c]
        for k in range(maxR + 1 - lam):
            if sum((cm * seq[k + m] for m, cm in enumerate(cs)), zero):
                rep["recursion"] = False
        for r in range(maxR // p + 1):
            if seq[p * r] != seq[r] ** p:
                rep["frobenius"] = False
    e = {}
    for j in range(p):
        Pj = d.P(j)
        e[j] = [(-1) ** i * FieldElem(F, Pj.coeff(lam - i)) for i in range(1, lam + 1)]
    rep["e"] = e
    rep["deg_theta"] = Th.deg
    rep["biquadratic"] = lam == 4 and all(not v[1] and not v[2] for v in e.values())
    return NewtonSums(N, H, maxR), rep


def th_pow(Th, x, k):
    F = Th.field
    return FieldElem(F, Th.eval(x.v if isinstance(x, FieldElem) else x)) ** k


def standard_pencil(a, field=None):
    """The pencil of the standard space on the independent tuple a (n = 2)."""
    s = standard_space(a, field)
    return s, PencilData.from_prompt(s.prompt)


def l20_replay(field=None):
    F = field or default_field(5, 2)
    if F.p != 5 or F.k < 2:
        raise FieldTooSmall("need a field containing F_25")
    s, d = standard_pencil((1, F.p), F)
    ns, rep = newton_toolkit(d, 60)
    return s, d, ns, rep


# -- discriminants --

def _rdeg(Q):
    if Q.deg <= 0:
        return 0
    return Q.deg - gcd(Q, Q.derivative()).deg


def pencil_disc(P, Q):
    """(D, report) with D(Z) the discriminant in degree deg P of P - Z Q."""
    F = P.field
    if not Q or gcd(P, Q).deg > 0:
        raise PrecondViolation("P and Q must be coprime")
    if not (0 <= Q.deg < P.deg < F.p):
        raise PrecondViolation("need 0 <= deg Q < deg P < p")
    n = P.deg + Q.deg + 1
    if F.q < n:
        raise InterpolationShortfall(f"{n} nodes needed, field has {F.q}")
    zs = list(range(n))
    ys = [disc(P - Q.scale(z), P.deg) for z in zs]
    D = interpolate(F, zs, ys)
    expected = P.deg + _rdeg(Q) - 1
    rep = {"deg": D.deg, "expected_deg": expected, "split": None, "roots_match": None}
    if D.deg != expected:
        raise InternalInconsistency(f"deg D = {D.deg}, expected {expected}")
    N = P.derivative() * Q - P * Q.derivative()
    A = N.exact_div(gcd(Q, Q.derivative())).monic() if Q.deg > 0 else N.monic()
    if A.deg != expected:
        raise InternalInconsistency("degree of the reduced numerator")
    if F.q <= 10 ** 6:
        roots, split = roots_in_field(A) if A.deg > 0 else ([], True)
        rep["split"] = split
        if split:
            prod = Poly.const(F, D.lc())
            for x, m in roots:
                z = F.div(P.eval(x), Q.eval(x))
                prod = prod * Poly(F, [F.neg(z), 1]) ** m
            rep["roots_match"] = prod == D
            if prod != D:
                raise InternalInconsistency("roots of D are not the critical values of P/Q")
    return D, rep


def disc_pencil_Pt(d, samples=None):
    """(R, report) with Disc(P_t) = R(t) / (a + t)^(2 lam - 3)."""
    F = d.field
    lam = d.lam
    if lam < 2:
        raise PrecondViolation("need lambda >= 2")
    need = 2 * lam - 1 if samples is None else samples
    if need <= 2 * lam - 2:
        raise InsufficientSamples(f"{need} samples cannot test deg R <= {2 * lam - 3}")
    ts = [t for t in range(F.q) if d.a + FieldElem(F, t)][:need]
    if len(ts) < need:
        raise InsufficientSamples(f"field has {len(ts)} usable nodes, {need} needed")
    ys = []
    for t in ts:
        w = (d.a + FieldElem(F, t)) ** (2 * lam - 3)
        ys.append(F.mul(disc(d.P(t), lam), w.v))
    R = interpolate(F, ts, ys)
    rep = {"deg": R.deg if R else None, "bound": 2 * lam - 3, "samples": len(ts)}
    if R and R.deg > 2 * lam - 3:
        raise InternalInconsistency(f"deg R = {R.deg} > {2 * lam - 3}")
    return R, rep


def gcdex_leading_check(A, B):
    """Top coefficient of the minimal Bezout U (A U + B V = 1) against a residue sum."""
    F = A.field
    g, U, _ = gcd_ext(A, B)
    if g.deg > 0:
        raise PrecondViolation("A and B must be coprime")
    roots, split = roots_in_field(B)
    if not split or any(m > 1 for _, m in roots):
        raise PrecondViolation("B must split with simple roots")
    b = B.deg
    if U.deg >= b:
        raise InternalInconsistency("Bezout cofactor is not reduced")
    dB = B.derivative()
    s = 0
    for x, _ in roots:
        s = F.add(s, F.inv(F.mul(A.eval(x), dB.eval(x))))
    return U.coeff(b - 1) == s


# -- exhaustive search --

NORMALIZATIONS = ("none", "monic", "s1t1zero", "s3one", "biquadratic")


def _not_in_fp(F):
    return [v for v in range(F.q) if not F.in_prime_field(v)]


def _axes(F, lam, norm):
    """Per-coordinate value lists; the first axis is the shard axis."""
    q = list(range(F.q))
    nz = list(range(1, F.q))
    if norm == "none":
        return [nz, nz] + [q] * (2 * lam)
    if norm == "monic":
        return [_not_in_fp(F)] + [q] * (2 * lam)
    if norm == "s1t1zero":
        return [_not_in_fp(F)] + [q] * (2 * lam - 2)
    if norm == "s3one":
        if lam < 3:
            raise PrecondViolation("s3one needs lambda >= 3")
        return [_not_in_fp(F)] + [q] * (2 * lam - 3)
    if norm == "biquadratic":
        if lam != 4:
            raise PrecondViolation("biquadratic needs lambda = 4")
        return [_not_in_fp(F)] + [q] * 2
    raise InputError(f"unknown normalization {norm!r}")


def _monic(F, lam, lower):
    # lower = [c_{lam-1}, ..., c_0]
    return Poly(F, list(reversed(lower)) + [1])


def _candidate(F, lam, norm, v):
    if norm == "none":
        a1, a2, rest = v[0], v[1], v[2:]
        Q1 = Poly(F, list(rest[:lam]) + [a1])
        Q2 = Poly(F, list(rest[lam:]) + [a2])
        return Q1, Q2
    a, rest = v[0], list(v[1:])
    if norm == "monic":
        t, s = rest[:lam], rest[lam:]
    elif norm == "s1t1zero":
        t, s = [0] + rest[:lam - 1], [0] + rest[lam - 1:]
    elif norm == "s3one":
        t = [0] + rest[:lam - 1]
        s = [0, rest[lam - 1], 1] + rest[lam:]
    elif norm == "biquadratic":
        tt, ss = rest
        Q1 = Poly(F, [1, 0, tt, 0, 1])
        a8 = F.pow(a, 8)
        Q2 = Poly(F, [a8, 0, ss, 0, 1]).scale(a)
        return Q1, Q2
    Q1 = _monic(F, lam, [_signed(F, i + 1, x) for i, x in enumerate(t)])
    Q2 = _monic(F, lam, [_signed(F, i + 1, x) for i, x in enumerate(s)]).scale(a)
    return Q1, Q2


def _signed(F, i, x):
    return F.neg(x) if i % 2 else x


def _is_hit(Q1, Q2):
    F = Q1.field
    lcs = [Q1.lc(), Q2.lc()]
    if not _moore_raw(_Ring([FieldElem(F, x) for x in lcs]), lcs):
        return None
    E = criterion_value_det(Prompt((Q1, Q2)))
    if E.is_const() and E:
        return E.coeff(0)
    return None


def _shard(args):
    spec, lam, norm, first = args
    F = parse_field_spec(spec)
    axes = _axes(F, lam, norm)
    hits, count = [], 0
    for rest in product(*axes[1:]):
        v = (first,) + rest
        count += 1
        Q1, Q2 = _candidate(F, lam, norm, v)
        E = _is_hit(Q1, Q2)
        if E is not None:
            hits.append((v, E))
    return hits, count


def search_space_size(F, lam, norm):
    n = 1
    for ax in _axes(F, lam, norm):
        n *= len(ax)
    return n


def brute_search(p, lam, n=2, field=None, normalization="monic", jobs=1, max_space=10 ** 8):
    """Hits (prompts whose determinant criterion is a nonzero constant) and a certificate."""
    F = field or default_field(p, 1)
    if F.p != p:
        raise SpecMismatch(f"field {F.spec} has characteristic {F.p}")
    if n != 2:
        raise PrecondViolation("the search covers n = 2")
    if lam < 1:
        raise PrecondViolation("lambda >= 1")
    if normalization in ("s1t1zero", "s3one") and (lam, p) == (1, 2):
        raise PrecondViolation("the s1 = t1 reduction needs (lambda, p) != (1, 2)")
    size = search_space_size(F, lam, normalization)
    if size > max_space:
        raise SearchSpaceTooLarge(f"{size} candidates > {max_space}")
    tasks = [(F.spec, lam, normalization, x) for x in _axes(F, lam, normalization)[0]]
    if jobs > 1:
        with Pool(jobs) as pool:
            parts = pool.map(_shard, tasks)
    else:
        parts = [_shard(t) for t in tasks]
    hits, count = [], 0
    for h, c in parts:
        hits.extend(h)
        count += c
    if count != size:
        raise InternalInconsistency("shards do not cover the search space")
    prompts = []
    for v, E in hits:
        Q1, Q2 = _candidate(F, lam, normalization, v)
        prompts.append({"params": [F.digits(x) for x in v], "Q": Prompt((Q1, Q2)),
                        "E": E, "exact": E == 1})
    where = f"F_{{{p}^{F.k}}}" if F.k > 1 else f"F_{p}"
    cert = {"schema": "lform.search/1", "p": p, "lambda": lam, "n": n, "field": F.spec,
            "normalization": normalization, "space_size": size, "checked": count,
            "hits": len(prompts)}
    if prompts:
        cert["statement"] = (f"{len(prompts)} prompt(s) with coefficients in {where} "
                             f"under normalization {normalization}")
    else:
        cert["statement"] = (f"no prompt with coefficients in {where} "
                             f"under normalization {normalization}")
    return prompts, cert


def match_standard(Q):
    """A translate b and an F_p-basis a with the space of Q equal to standard_space(a), or None."""
    F = Q.field
    s = build_space(Q)
    for b in range(F.q):
        t = etale_pullback(s, Poly(F, [F.neg(b), 1])) if b else s
        shifted = set(t.poles)
        pts = sorted(shifted)
        if 0 in shifted or len(pts) < s.n:
            continue
        basis = _basis_of(F, pts, s.n)
        if basis is None:
            continue
        std = standard_space(basis, F)
        if set(std.poles) == shifted and {w.f for _, w in std.forms()} == {w.f for _, w in t.forms()}:
            return b, basis
    return None


def _basis_of(F, pts, n):
    for cand in product(pts, repeat=n):
        items = [FieldElem(F, x) for x in cand]
        if _moore_raw(_Ring(items), list(cand)):
            if sorted(x for x in span(F, list(cand)) if x) == pts:
                return list(cand)
            return None
    return None


def match_l12(Q, members=None):
    """(a', u) with Delta(Q)(uX) proportional to Delta(l12 pair of a'), or None."""
    F = Q.field
    D = _moore_raw(_Ring(list(Q.Q)), list(Q.Q)).monic()
    members = l12_members(F) if members is None else members
    for a in members:
        Fam = l12_pair(a)
        Dfam = _moore_raw(_Ring(list(Fam)), list(Fam)).monic()
        for u in range(1, F.q):
            sc = Poly(F, [F.mul(c, F.pow(u, i)) for i, c in enumerate(D.c)]).monic()
            if sc == Dfam:
                return a, FieldElem(F, u)
    return None
