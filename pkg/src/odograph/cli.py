"""Command-line front end: ``odograph <subcommand> --n 2,3 ...``.

Exit status is 0 when everything checked passes, 1 when a verification fails
(the report carries the witness) and 2 for usage or spec errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import acceptance, brute, ideals, independence, kgraph, oper, psystem, selfsim, topo
from .errors import OdographError
from .kgraph import KGraphSpec, Word
from .scalar import ExactScalar

SAFE_INT = 2**53



def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= SAFE_INT else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, (Fraction, ExactScalar, Word)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    return str(obj)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/3, got {text!r}")


# -- subcommand handlers --------------------------------------------------------------
# each returns (payload, passed, human_text)

def _word(spec, text):
    return Word.parse(spec, text)


def cmd_normal_form(spec, a):
    w = _word(spec, a.word)
    rng = random.Random(a.seed) if a.random_schedule else None
    nf = kgraph.normal_form(w, rng)
    return {"normal_form": str(nf), "degree": list(nf.degree)}, True, str(nf)


def cmd_multiply(spec, a):
    w = kgraph.multiply(_word(spec, a.left), _word(spec, a.right))
    return {"product": str(w)}, True, str(w)


def cmd_encode(spec, a):
    if a.decode is not None:
        if a.word_degree is None:
            raise OdographError("--decode needs --word-degree")
        w = kgraph.decode(spec, a.word_degree, a.decode)
        return {"word": str(w)}, True, str(w)
    d, c = kgraph.encode(_word(spec, a.word))
    return {"degree": list(d), "code": str(c)}, True, f"degree {list(d)} code {c}"


def cmd_cubic_check(spec, a):
    rep = kgraph.cubic_check(spec)
    return rep, rep["passed"], None


def cmd_act(spec, a):
    res = selfsim.act(a.g, _word(spec, a.word), method=a.method)
    return {"image": str(res.image), "restriction": res.restriction}, True, \
        f"{res.image} | restriction {res.restriction}"


def cmd_restrict(spec, a):
    r = selfsim.restrict(a.g, _word(spec, a.word), method=a.method)
    return {"restriction": r}, True, str(r)


def cmd_zs_mul(spec, a):
    x = selfsim.ZSElement(_word(spec, a.u), a.g)
    y = selfsim.ZSElement(_word(spec, a.v), a.h)
    z = selfsim.zs_multiply(x, y)
    return {"word": str(z.word), "g": z.g}, True, str(z)


def cmd_check_axioms(spec, a):
    action = selfsim.LetterAction.reversed_odometer(spec.n) if a.reversed else None
    rep = selfsim.check_zs_axioms(spec, g_range=a.g_range, max_len=a.max_len, action=action)
    return rep, rep["passed"], None


def cmd_solve_restriction(spec, a):
    sol = selfsim.solve_restriction(_word(spec, a.word), a.l)
    return {"solution": sol}, True, str(sol)


def cmd_lcm(spec, a):
    if a.words:
        if len(a.words) != 2:
            raise OdographError("lcm takes zero or two words")
        mu, nu = (_word(spec, w) for w in a.words)
        try:
            w = ideals.right_lcm(mu, nu)
            return {"lcm": str(w)}, True, str(w)
        except (ideals.NoCommonMultiple, ideals.MultipleMinimal) as exc:
            return {"lcm": None, "reason": str(exc)}, True, f"no right LCM: {exc}"
    v = ideals.is_right_lcm_monoid(spec)
    return v.to_json(), True, None


def cmd_min_ext(spec, a):
    exts = ideals.min_common_extensions(_word(spec, a.mu), _word(spec, a.nu))
    payload = {"count": len(exts), "extensions": [[str(e.alpha), str(e.beta)] for e in exts]}
    text = "\n".join(f"alpha = {e.alpha or '1'}, beta = {e.beta or '1'}" for e in exts) or "none"
    return payload, True, text


def _ideal_report(spec, X, max_degree):
    out = X.to_json()
    out["generators"] = [str(w) for w in X.generators()]
    if max_degree is not None:
        out["members_checked_upto"] = list(max_degree)
    return out


def cmd_ideal_chain(spec, a):
    pairs = [(_word(spec, m), _word(spec, n)) for m, n in a.pair]
    X = ideals.chain_ideal(pairs)
    payload = _ideal_report(spec, X, a.max_degree)
    ok = True
    if a.max_degree is not None:
        window = list(kgraph.degrees_upto(a.max_degree))
        ok = brute.ideal_members(X, window) == brute.chain_members(spec, pairs, window)
        payload["brute_force_agrees"] = ok
    return payload, ok, None


def cmd_ideal_intersect(spec, a):
    X = ideals.ConstructibleIdeal.from_words(_word(spec, w) for w in a.x)
    Y = ideals.ConstructibleIdeal.from_words(_word(spec, w) for w in a.y)
    Z = ideals.intersect(X, Y)
    payload = _ideal_report(spec, Z, a.max_degree)
    ok = True
    if a.max_degree is not None:
        window = list(kgraph.degrees_upto(a.max_degree))
        ok = brute.ideal_members(Z, window) == brute.ideal_members(X, window) & brute.ideal_members(Y, window)
        payload["brute_force_agrees"] = ok
    return payload, ok, None


def cmd_exhaustive(spec, a):
    ws = [_word(spec, w) for w in a.words]
    res = ideals.is_exhaustive(ws)
    payload = {"exhaustive": res}
    if not res:
        D = ws[0].degree
        for w in ws[1:]:
            D = kgraph.deg_join(D, w.degree)
        payload["missed"] = str(kgraph.decode(spec, D, ideals.exhaustive_gap(ws)))
    return payload, True, None


def cmd_simplicity(spec, a):
    v = independence.is_simple(spec)
    return v.to_json(), True, None


def _suite(rep):
    return rep, rep["passed"], None


def cmd_verify_relations(spec, a):
    rep = oper.verify_universal_relations(spec)
    props = oper.verify_properties(spec, l_max=3, n_max=5)
    return {"passed": rep["passed"] and props["passed"], "relations": rep, "properties": props}, \
        rep["passed"] and props["passed"], None


def cmd_verify_qn(spec, a):
    return _suite(oper.verify_qn_homomorphism(spec))


def cmd_kernel_witness(spec, a):
    if a.p is not None or a.q is not None:
        if a.p is None or a.q is None:
            raise OdographError("give both --p and --q")
        cert = independence.DependenceCertificate(a.p, a.q)
    else:
        cert = independence.multiplicative_dependence(spec.n)
        if cert is None:
            return {"certificate": None, "note": "alphabet sizes are multiplicatively independent"}, True, None
    try:
        rep = oper.kernel_witness(spec, cert)
    except oper.InvalidCertificate as exc:
        raise OdographError(str(exc))
    rep["certificate"] = {"p": list(cert.p), "q": list(cert.q)}
    return rep, rep["passed"], None


def cmd_op_eval(spec, a):
    term = oper.OpTerm.parse(a.term)
    model = a.model
    op = oper.semantics(term, spec, model)
    payload = {"term": str(term), "modulus": op.modulus,
               "classes": {str(r): op.describe_class(r) for r in range(op.modulus) if op.classes[r]}}
    ok = True
    if a.m is not None:
        img = op.apply(a.m)
        direct = oper.eval_term(term, a.m, spec)
        ok = img == direct
        payload["image"] = [[str(w), y] for w, y in img]
        payload["direct_agrees"] = ok
    return payload, ok, None


def cmd_path(spec, a):
    n = spec.n
    x = topo.path(a.z, a.degree)
    payload = {
        "path": [str(x.angle), list(x.degree)],
        "range": str(topo.range_(x).angle),
        "source": str(topo.source(n, x).angle),
        "degree": list(x.degree),
    }
    if a.front is not None:
        h, t = topo.factorize_path(n, x, a.front)
        payload["factorization"] = [[str(h.angle), list(h.degree)], [str(t.angle), list(t.degree)]]
    if a.then is not None:
        y = topo.path(a.then[0], a.then[1])
        try:
            c = topo.compose(n, x, y)
            payload["composite"] = [str(c.angle), list(c.degree)]
        except topo.NotComposable as exc:
            payload["composite"] = None
            payload["not_composable"] = str(exc)
    return payload, True, None


def cmd_roots(spec, a):
    rs = topo.roots(spec.n, a.v, a.degree)
    return {"roots": [str(r) for r in rs]}, True, " ".join(str(r) for r in rs)


def cmd_orbit(spec, a):
    w = topo.orbit_approx(spec.n, a.v, a.target, a.eps)
    return {"p": w["p"], "root": str(w["root"]), "distance": str(w["distance"])}, True, None


def cmd_contracting(spec, a):
    rep = topo.contracting_witness(spec.n, a.delta)
    return rep, rep["passed"], None


def _degree_list(text):
    return [_ints(chunk) for chunk in text.split(";") if chunk.strip()]


def cmd_verify_psystem(spec, a):
    degrees = _degree_list(a.degrees) if a.degrees else None
    lo, hi = a.exp_range
    return _suite(psystem.verify_all(spec, degrees, (lo, hi)))


def cmd_verify_all(spec, a):
    results = acceptance.run_all(seed=a.seed)
    lines = "\n".join(acceptance.summary_line(r) for r in results)
    payload = {"passed": all(r["passed"] for r in results), "criteria": results}
    return payload, payload["passed"], lines


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_ints, help="alphabet sizes, e.g. 2,3")
    common.add_argument("--theta-file", help="JSON file with n and explicit theta tables")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized schedules")
    common.add_argument("--max-degree", type=_ints, default=None,
                        help="cross-check ideals against brute force up to this degree")

    p = argparse.ArgumentParser(prog="odograph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, needs_spec=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(handler=fn, needs_spec=needs_spec)
        return sp

    sp = add("normal-form", cmd_normal_form, "normal form of a word")
    sp.add_argument("word")
    sp.add_argument("--random-schedule", action="store_true", help="rewrite in a random order (uses --seed)")
    sp = add("multiply", cmd_multiply, "product of two words")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("encode", cmd_encode, "degree and integer code of a word")
    sp.add_argument("word", nargs="?", default="")
    sp.add_argument("--decode", type=int, default=None, help="decode this code instead")
    sp.add_argument("--word-degree", type=_ints, default=None)
    add("cubic-check", cmd_cubic_check, "check the cubic condition")
    for name, fn in (("act", cmd_act), ("restrict", cmd_restrict)):
        sp = add(name, fn, f"{name} of g on a word")
        sp.add_argument("g", type=int)
        sp.add_argument("word")
        sp.add_argument("--method", choices=["recursive", "closed"], default="recursive")
    sp = add("zs-mul", cmd_zs_mul, "Zappa-Szep product (u,g)(v,h)")
    sp.add_argument("u")
    sp.add_argument("g", type=int)
    sp.add_argument("v")
    sp.add_argument("h", type=int)
    sp = add("check-axioms", cmd_check_axioms, "exhaustive Zappa-Szep axiom check")
    sp.add_argument("--g-range", type=int, default=30)
    sp.add_argument("--max-len", type=int, default=4)
    sp.add_argument("--reversed", action="store_true", help="use the reversed odometer")
    sp = add("solve-restriction", cmd_solve_restriction, "least g with g|_mu = l")
    sp.add_argument("word")
    sp.add_argument("l", type=int)
    sp = add("lcm", cmd_lcm, "right LCM of two words, or the monoid verdict")
    sp.add_argument("words", nargs="*")
    sp = add("min-ext", cmd_min_ext, "minimal common extensions")
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp = add("ideal-chain", cmd_ideal_chain, "constructible ideal of a chain of pairs")
    sp.add_argument("--pair", nargs=2, action="append", required=True, metavar=("MU", "NU"))
    sp = add("ideal-intersect", cmd_ideal_intersect, "intersection of two ideals")
    sp.add_argument("--x", nargs="+", required=True, metavar="WORD")
    sp.add_argument("--y", nargs="+", required=True, metavar="WORD")
    sp = add("exhaustive", cmd_exhaustive, "is a word family exhaustive")
    sp.add_argument("words", nargs="+")
    add("simplicity", cmd_simplicity, "multiplicative independence verdict")
    add("verify-relations", cmd_verify_relations, "generator relations in the l^2 model")
    add("verify-qn", cmd_verify_qn, "Q_N relations and the substitution map")
    sp = add("kernel-witness", cmd_kernel_witness, "distinct words with equal l^2 semantics")
    sp.add_argument("--p", type=_ints, default=None)
    sp.add_argument("--q", type=_ints, default=None)
    sp = add("op-eval", cmd_op_eval, "canonical form of an operator term")
    sp.add_argument("term")
    sp.add_argument("--m", type=int, default=None, help="also apply to delta_m")
    sp.add_argument("--model", choices=[oper.QFZ, oper.QN], default=oper.QFZ)
    sp = add("path", cmd_path, "range, source and factorization of a path")
    sp.add_argument("z", type=_fraction)
    sp.add_argument("degree", type=_ints)
    sp.add_argument("--front", type=_ints, default=None)
    sp.add_argument("--then", nargs=2, default=None, metavar=("Z", "DEG"))
    sp = add("roots", cmd_roots, "preimages of v under the degree-p source map")
    sp.add_argument("v", type=_fraction)
    sp.add_argument("degree", type=_ints)
    sp = add("orbit", cmd_orbit, "approximate a target by the forward orbit of v")
    sp.add_argument("v", type=_fraction)
    sp.add_argument("target", type=_fraction)
    sp.add_argument("eps", type=_fraction)
    sp = add("contracting", cmd_contracting, "contracting-set witness")
    sp.add_argument("delta", type=_fraction)
    sp = add("verify-psystem", cmd_verify_psystem, "product-system identities")
    sp.add_argument("--degrees", default=None, help="e.g. '1,0;0,1;1,1'")
    sp.add_argument("--exp-range", type=_ints, default=(-6, 6))
    add("verify-all", cmd_verify_all, "run every acceptance check", needs_spec=False)
    return p


def _load_spec(a):
    if a.theta_file:
        with open(a.theta_file) as fh:
            doc = json.load(fh)
        spec = KGraphSpec.from_json(doc)
        if a.n is not None and tuple(a.n) != spec.n:
            raise OdographError(f"--n {a.n} disagrees with the theta file ({spec.n})")
        return spec
    if a.n is None:
        raise OdographError("--n is required")
    return KGraphSpec.standard(a.n)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(a, "then", None) is not None:
            a.then = (_fraction(a.then[0]), _ints(a.then[1]))
        spec = _load_spec(a) if a.needs_spec else None
        if spec is not None and not spec.is_standard and spec.k >= 3 and a.command != "cubic-check":
            print("warning: explicit theta tables have not been checked; run cubic-check first",
                  file=err)
        payload, passed, text = a.handler(spec, a)
    except (OdographError, ValueError, KeyError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"odograph: error: {exc}", file=err)
        return 2
    if a.json or text is None:
        if a.json:
            print(json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":")), file=out)
        else:
            print(json.dumps(_jsonable(payload), sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)
    return 0 if passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
