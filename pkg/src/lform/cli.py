"""Command-line front end."""
import argparse
import json
import random
import sys

from . import __version__
from .errors import InputError, InternalInconsistency, MalformedInput
from .ff import parse_field_spec, default_field, format_elem
from .poly import Poly, RatFun
from .cartier import poles_and_residues, is_logarithmic
from .lspace import (Prompt, NotASpace, build_space, verify_prompt_coeff, verify_prompt_det,
                     criterion_constant, solve_scaling, standard_space, etale_pullback,
                     frobenius_twist, equivalence_witnesses)
from .moore import check_identities, check_poly_identities
from . import char2, classify

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise MalformedInput(message)


def _load(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"not JSON: {text!r}") from e


def _poly(F, obj):
    if isinstance(obj, dict):
        return Poly.from_json(obj, F)
    if not isinstance(obj, list):
        raise MalformedInput(f"polynomial must be a coefficient list, got {obj!r}")
    return Poly.from_json({"coeffs": obj}, F)


def _polys(F, text):
    obj = _load(text)
    if isinstance(obj, dict):
        if "field" in obj and parse_field_spec(obj["field"]) is not F:
            raise MalformedInput("field of the document differs from --field")
        obj = obj.get("Q", obj.get("W"))
    if not isinstance(obj, list) or not obj:
        raise MalformedInput("expected a list of polynomials")
    return [_poly(F, x) for x in obj]


def _elem(F, x):
    return F.from_digits(x) if isinstance(x, list) else x % F.p


def _field(args):
    return parse_field_spec(args.field)


def _space_doc(s):
    F = s.field
    rows = []
    for x in s.poles:
        rows.append({"pole": F.digits(x), "res": [F.signed(r) for r in s.res[x]]})
    return {"n": s.n, "lambda": s.lam, "prompt": s.prompt.to_json(), "pole_count": len(s.poles),
            "poles": rows}


def _space_text(s):
    F = s.field
    head = "pole".ljust(16) + "".join(f"res_{i + 1}".rjust(7) for i in range(s.n))
    lines = [f"space L_{s.lam * F.p ** (s.n - 1)},{s.n} over {F.spec}: {len(s.poles)} poles", head]
    for x in s.poles:
        lines.append(format_elem(F, x).ljust(16)
                     + "".join(str(F.signed(r)).rjust(7) for r in s.res[x]))
    return "\n".join(lines)


def cmd_verify(args):
    F = _field(args)
    Q = Prompt(tuple(_polys(F, args.Q)))
    ok_c, diag = verify_prompt_coeff(Q)
    ok_d = verify_prompt_det(Q)
    if ok_c != ok_d:
        raise InternalInconsistency("coefficient and determinant verdicts disagree")
    doc = {"verdict": ok_c, "coeff_p_minus_1": diag["coeff_p_minus_1"],
           "nonzero_mu": diag["nonzero_mu"]}
    try:
        d = criterion_constant(Q)
        doc["criterion"] = F.digits(d)
        c, _ = solve_scaling(Q)
        doc["scaling"] = None if c is None else F.digits(c)
    except InputError as e:
        doc["criterion"] = None
        doc["reason"] = str(e)
    text = f"verdict: {'prompt' if ok_c else 'not a prompt'}"
    return (EXIT_OK if ok_c else EXIT_FALSE), doc, text


def cmd_build(args):
    F = _field(args)
    Q = Prompt(tuple(_polys(F, args.Q)))
    if args.scale:
        c, Q2 = solve_scaling(Q)
        if c is None:
            return EXIT_FALSE, {"verdict": False, "reason": Q2}, "no scaling in the field"
        Q = Q2
    s = build_space(Q)
    return EXIT_OK, _space_doc(s), _space_text(s)


def cmd_residues(args):
    F = _field(args)
    num, den = _polys(F, args.form)
    f = RatFun(num, den)
    t = poles_and_residues(f)
    verdict, wit = is_logarithmic(f)
    doc = {"logarithmic": verdict, "routes": wit, "residues": t.to_json()}
    lines = ["pole".ljust(16) + "res"]
    lines += [format_elem(F, x).ljust(16) + format_elem(F, r) for x, r in t.rows]
    lines.append(f"logarithmic: {verdict}")
    return (EXIT_OK if verdict else EXIT_FALSE), doc, "\n".join(lines)


def cmd_standard(args):
    F = _field(args)
    a = [_elem(F, x) for x in _load(args.a)]
    s = standard_space(a, F)
    return EXIT_OK, _space_doc(s), _space_text(s)


def cmd_pullback(args):
    F = _field(args)
    s = build_space(Prompt(tuple(_polys(F, args.Q))))
    S = _poly(F, _load(args.S))
    t = etale_pullback(s, S)
    return EXIT_OK, _space_doc(t), _space_text(t)


def cmd_twist(args):
    F = _field(args)
    s = build_space(Prompt(tuple(_polys(F, args.Q))))
    for _ in range(args.times):
        s = frobenius_twist(s)
    return EXIT_OK, _space_doc(s), _space_text(s)


def cmd_equiv(args):
    F = _field(args)
    s1 = build_space(Prompt(tuple(_polys(F, args.Q))))
    s2 = build_space(Prompt(tuple(_polys(F, args.Q2))))
    w = equivalence_witnesses(s1, s2)
    doc = {"equivalent": bool(w), "witnesses": [[F.digits(a), F.digits(b)] for a, b in w]}
    text = "equivalent: " + (f"a = {format_elem(F, w[0][0])}, b = {format_elem(F, w[0][1])}"
                             if w else "no")
    return (EXIT_OK if w else EXIT_FALSE), doc, text


def cmd_char2(args):
    F = _field(args)
    W = _polys(F, args.W)
    if args.n is not None and args.n != len(W):
        raise MalformedInput(f"--n {args.n} but {len(W)} polynomials given")
    R = _poly(F, _load(args.R)) if args.R else None
    Q, gamma, _ = char2.general_construct(W, R)
    doc = {"prompt": Q.to_json(), "gamma": gamma.to_json()["coeffs"],
           "lambda": Q.lam, "expected_lambda": char2.expected_lambda(len(W), W[0].deg, R)}
    lines = [f"Q_{i + 1} = {q.pretty()}" for i, q in enumerate(Q.Q)]
    try:
        s = build_space(Q)
        doc["space"] = _space_doc(s)
        lines.append(_space_text(s))
    except InputError as e:
        doc["space"] = None
        lines.append(f"space not built: {e}")
    return EXIT_OK, doc, "\n".join(lines)


def cmd_replay(args):
    which = args.which
    if which == "l12":
        F = parse_field_spec(args.field) if args.field else default_field(3, 8)
        rows, lines = [], []
        for r in classify.l12_replay(F):
            a = r["a"].v
            row = {"a": F.digits(a), "member": r["member"], "verified": r["verified"]}
            for k in ("pole_count", "fiber_sizes", "intersection", "reason"):
                if k in r:
                    row[k] = r[k]
            if "criterion" in r:
                row["criterion"] = F.digits(r["criterion"])
            rows.append(row)
            tail = (f"{r['pole_count']} poles, fibers {r['fiber_sizes']}, "
                    f"|P(w1) & P(w2)| = {r['intersection']}") if r["verified"] else r["reason"]
            lines.append(f"a = {format_elem(F, a)}: {tail}")
        ok = all(r["verified"] == r["member"] for r in rows)
        return (EXIT_OK if ok else EXIT_INTERNAL), {"members": rows, "field_used": F.spec}, "\n".join(lines)
    if which in ("l15-f27", "l15-f81"):
        s = classify.l15_examples("F27" if which == "l15-f27" else "F81", args.frob)
        doc = _space_doc(s)
        doc["field_used"] = s.field.spec
        return EXIT_OK, doc, _space_text(s)
    if which == "l20":
        F = parse_field_spec(args.field) if args.field else None
        s, d, ns, rep = classify.l20_replay(F)
        G = s.field
        keys = ("sum_i", "sum_ii", "sum_iii", "sum_iv", "recursion", "frobenius", "residues_in_Fp")
        doc = {"space": _space_doc(s), "field_used": G.spec, "deg_theta": rep["deg_theta"],
               "biquadratic": rep["biquadratic"], "checks": {k: rep[k] for k in keys},
               "N_head": {str(j): [G.digits(x.v) for x in ns.N[j][:4]] for j in ns.N}}
        ok = all(rep[k] for k in keys)
        text = _space_text(s) + "\n" + "\n".join(f"{k}: {rep[k]}" for k in keys)
        return (EXIT_OK if ok else EXIT_INTERNAL), doc, text
    raise MalformedInput(which)


def cmd_search(args):
    F = parse_field_spec(args.field) if args.field else default_field(args.p, 1)
    hits, cert = classify.brute_search(args.p, args.lam, 2, F, args.normalization,
                                       jobs=args.jobs, max_space=args.max_space)
    doc = {"certificate": cert,
           "hits": [{"params": h["params"], "Q": h["Q"].to_json()["Q"],
                     "E": F.digits(h["E"]), "exact": h["exact"]} for h in hits]}
    text = cert["statement"] + f" ({cert['checked']} candidates)"
    return EXIT_OK, doc, text


def cmd_identities(args):
    F = _field(args)
    rng = random.Random(args.seed)
    counts = {}
    for n in args.n:
        counts[str(n)] = check_identities(F, n, args.trials, rng)
        check_poly_identities(F, n, max(1, args.trials // 20), rng=rng)
    lines = [f"n = {n}: " + ", ".join(f"{k} {v}" for k, v in sorted(c.items()))
             for n, c in counts.items()]
    return EXIT_OK, {"counts": counts}, "\n".join(lines)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field", default=None)
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0)

    ap = _Parser(prog="lform", description="Spaces of logarithmic differential forms.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, *, field=True):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(fn=fn, need_field=field)
        return p

    p = add("verify", cmd_verify)
    p.add_argument("--Q", required=True)
    p = add("build", cmd_build)
    p.add_argument("--Q", required=True)
    p.add_argument("--scale", action="store_true")
    p = add("residues", cmd_residues)
    p.add_argument("--form", required=True, help="[num, den]")
    p = add("standard", cmd_standard)
    p.add_argument("--a", required=True)
    p = add("pullback", cmd_pullback)
    p.add_argument("--Q", required=True)
    p.add_argument("--S", required=True)
    p = add("twist", cmd_twist)
    p.add_argument("--Q", required=True)
    p.add_argument("--times", type=int, default=1)
    p = add("equiv", cmd_equiv)
    p.add_argument("--Q", required=True)
    p.add_argument("--Q2", required=True)
    p = add("char2", cmd_char2)
    p.add_argument("--W", required=True)
    p.add_argument("--R", default=None)
    p.add_argument("--n", type=int, default=None)
    p = add("replay", cmd_replay, field=False)
    p.add_argument("which", choices=["l12", "l15-f27", "l15-f81", "l20"])
    p.add_argument("--frob", type=int, default=0)
    p = add("search", cmd_search, field=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--normalization", default="monic", choices=classify.NORMALIZATIONS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-space", type=int, default=10 ** 8)
    p = add("identities", cmd_identities)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", type=int, nargs="+", default=[2, 3])
    return ap


def _emit(args, code, doc, text, out):
    if getattr(args, "json", False):
        doc = dict(doc)
        doc.setdefault("schema", f"lform.{args.cmd}/1")
        doc.setdefault("field", args.field if args.field else doc.get("field_used"))
        doc["exit"] = code
        doc["manifest"] = {"argv": args.argv, "seed": args.seed, "version": __version__}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def dispatch(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        args.argv = list(argv)
        if args.need_field and not args.field:
            raise MalformedInput("--field is required")
        code, doc, text = args.fn(args)
    except NotASpace as e:
        doc = {"verdict": False, "reason": str(e)}
        code = EXIT_FALSE
        if args is not None:
            _emit(args, code, doc, f"not a space: {e}", out)
        return code
    except InternalInconsistency as e:
        err.write(f"internal inconsistency: {e}\n")
        return EXIT_INTERNAL
    except (InputError, ValueError, KeyError, OSError) as e:
        err.write(f"input error: {e}\n")
        return EXIT_INPUT
    _emit(args, code, doc, text, out)
    return code


def main(argv=None):
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
