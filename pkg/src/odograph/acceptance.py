"""The ten end-to-end acceptance checks, each with its own time budget.

Every check returns a dict with ``passed``, ``seconds``, ``budget`` and a
``details`` payload.  ``passed`` already accounts for the time budget.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from . import brute
from .ideals import (
    ConstructibleIdeal,
    chain_ideal,
    intersect,
    is_right_lcm_monoid,
    min_common_extensions,
)
from .independence import DependenceCertificate, multiplicative_dependence
from .kgraph import (
    KGraphSpec,
    Word,
    all_letter_sequences,
    cubic_check,
    decode,
    degrees_upto,
    encode,
    normal_form,
    random_word,
    words_upto_length,
)
from .oper import (
    Generator,
    InvalidCertificate,
    PartialMap,
    QFZ,
    QN,
    eval_term,
    kernel_witness,
    random_term,
    semantics,
    verify_properties,
    verify_qn_homomorphism,
    verify_universal_relations,
)
from .psystem import verify_all as verify_psystem
from .selfsim import check_zs_axioms
from .topo import (
    DeltaTooLarge,
    circle_distance,
    compose,
    contracting_witness,
    factorize_path,
    orbit_approx,
    path,
    source,
)


def c1_rewriting_coding():
    spec = KGraphSpec.standard((2, 3, 5))
    checked = 0
    bad = None
    for w in all_letter_sequences(spec, 5):
        checked += 1
        d, c = encode(w)
        if normal_form(w).letters != decode(spec, d, c).letters:
            bad = str(w)
            break
    return bad is None, {"sequences": checked, "counterexample": bad}


def _perturbed_swap_tables():
    base = KGraphSpec.swap_tables(2, 3)
    tables = {key: dict(tab) for key, tab in base.tables.items()}
    # transpose two cells of theta_13
    t = tables[(0, 2)]
    t[(0, 0)], t[(0, 1)] = t[(0, 1)], t[(0, 0)]
    return KGraphSpec.explicit((2, 2, 2), tables)


def c2_cubic():
    std = cubic_check(KGraphSpec.standard((2, 3, 5)))
    swap = cubic_check(KGraphSpec.swap_tables(2, 3))
    bad = cubic_check(_perturbed_swap_tables())
    ok = std["passed"] and swap["passed"] and not bad["passed"] and "triple" in bad
    return ok, {"standard_235": std, "swap_222": swap, "perturbed": bad}


def c3_zappa_szep():
    rep = check_zs_axioms(KGraphSpec.standard((2, 3)), g_range=30, max_len=4)
    ok = rep["passed"] and rep["closed_form"]["mismatches"] == 0 and rep["closed_form"]["checked"] > 0
    return ok, {
        "axioms": {k: v["checked"] for k, v in rep["axioms"].items()},
        "closed_form": rep["closed_form"],
        "passed": rep["passed"],
    }


def c4_lcm():
    spec = KGraphSpec.standard((2, 3))
    words = list(words_upto_length(spec, 3))
    pairs = with_ext = 0
    problems = []
    for mu in words:
        for nu in words:
            pairs += 1
            fast = min_common_extensions(mu, nu)
            slow = brute.min_extensions(mu, nu)
            if set(fast) != slow:
                problems.append(("disagree", str(mu), str(nu)))
            if slow:
                with_ext += 1
                if len(fast) != 1:
                    problems.append(("not unique", str(mu), str(nu)))
    s24 = KGraphSpec.standard((2, 4))
    a, b = Word.parse(s24, "x1:0"), Word.parse(s24, "x2:0")
    exts = min_common_extensions(a, b)
    verdict = is_right_lcm_monoid(s24)
    rel_ok = all(normal_form(l) == normal_form(r) for l, r in verdict.relations)
    ok = (not problems and len(exts) == 2 and len(brute.min_extensions(a, b)) == 2
          and not verdict.is_lcm and verdict.relations and rel_ok
          and is_right_lcm_monoid(spec).is_lcm)
    return ok, {
        "pairs_23": pairs,
        "pairs_with_extension_23": with_ext,
        "problems": problems[:5],
        "extensions_24": [[str(e.alpha), str(e.beta)] for e in exts],
        "lcm_24": verdict.to_json(),
    }


def _random_chain(spec, rng):
    length = rng.randint(1, 2)
    return [(random_word(spec, rng, rng.randint(0, 2)), random_word(spec, rng, rng.randint(0, 2)))
            for _ in range(length)]


def c5_ideals(chains_per_spec=60, seed=5):
    rng = random.Random(seed)
    details = {}
    ok = True
    for n in ((2, 3), (2, 4)):
        spec = KGraphSpec.standard(n)
        window = list(degrees_upto((2, 2)))
        corpus = []
        disagreements = 0
        for _ in range(chains_per_spec):
            pairs = _random_chain(spec, rng)
            ideal = chain_ideal(pairs)
            members = brute.ideal_members(ideal, window)
            if members != brute.chain_members(spec, pairs, window):
                disagreements += 1
            corpus.append((ideal, members))
        algebra_bad = 0
        checks = 0
        sample = corpus[:20]
        for (X, mx), (Y, my) in itertools.product(sample, repeat=2):
            checks += 1
            XY = intersect(X, Y)
            if XY != intersect(Y, X) or brute.ideal_members(XY, window) != mx & my:
                algebra_bad += 1
        for X, _ in corpus:
            checks += 1
            if intersect(X, X) != X:
                algebra_bad += 1
        for (X, _), (Y, _), (Z, _) in itertools.product(sample[:8], repeat=3):
            checks += 1
            if intersect(intersect(X, Y), Z) != intersect(X, intersect(Y, Z)):
                algebra_bad += 1
        details[str(n)] = {
            "chains": len(corpus),
            "membership_disagreements": disagreements,
            "nonempty": sum(not X.is_empty() for X, _ in corpus),
            "algebra_checks": checks,
            "algebra_failures": algebra_bad,
        }
        ok &= disagreements == 0 and algebra_bad == 0
    return ok, details


def c6_simplicity():
    expected = {(2, 3): True, (2, 4): False, (6, 10, 15): True, (5, 5): False, (12, 12): False}
    verdicts = {}
    ok = True
    for n, indep in expected.items():
        cert = multiplicative_dependence(n)
        verdicts[str(n)] = None if cert is None else [list(cert.p), list(cert.q)]
        ok &= (cert is None) == indep and (cert is None or cert.verify(n))
    ok &= multiplicative_dependence((2, 4)) == DependenceCertificate((2, 0), (0, 1))
    brute_cache = {}
    compared = mismatches = 0
    for k in (1, 2, 3):
        for n in itertools.product(range(1, 21), repeat=k):
            key = tuple(sorted(n))
            if key not in brute_cache:
                brute_cache[key] = brute.exponent_search(key) is not None
            cert = multiplicative_dependence(n)
            compared += 1
            if (cert is not None) != brute_cache[key] or (cert is not None and not cert.verify(n)):
                mismatches += 1
    ok &= mismatches == 0
    return ok, {"verdicts": verdicts, "compared": compared, "mismatches": mismatches}


def c7_relations(terms=100, seed=7, window=200):
    details = {}
    ok = True
    for n in ((2, 3), (2, 4)):
        spec = KGraphSpec.standard(n)
        u = verify_universal_relations(spec)
        p = verify_properties(spec, l_max=3, n_max=5)
        q = verify_qn_homomorphism(spec)
        details[str(n)] = {"universal": u["checked"], "properties": p["checked"], "qn": q["checked"],
                           "failures": (u["failures"] + p["failures"] + q["failures"])[:3]}
        ok &= u["passed"] and p["passed"] and q["passed"]
    # negative control: a wrong generator must be caught by the sum relation
    spec = KGraphSpec.standard((2, 3))
    broken = verify_universal_relations(
        spec, overrides={Generator("g", (0, 1)): PartialMap(1, 0, Fraction(2), Fraction(0))})
    caught = any(f["family"].startswith("(i)") for f in broken["failures"])
    details["corrupted_model_caught"] = caught
    ok &= caught
    rng = random.Random(seed)
    specs = [KGraphSpec.standard((2, 3)), KGraphSpec.standard((2, 4))]
    bad = 0
    for t in range(terms):
        spec = specs[t % 2]
        model = QFZ if t % 4 < 2 else QN
        term = random_term(rng, spec, model)
        op = semantics(term, spec, model)
        for m in range(-window, window + 1):
            if op.apply(m) != eval_term(term, m, spec):
                bad += 1
                break
    details["window_terms"] = terms
    details["window_mismatches"] = bad
    ok &= bad == 0
    return ok, details


def c8_kernel():
    s24 = KGraphSpec.standard((2, 4))
    rep = kernel_witness(s24, multiplicative_dependence((2, 4)))
    none_23 = multiplicative_dependence((2, 3)) is None
    try:
        kernel_witness(KGraphSpec.standard((2, 3)), DependenceCertificate((1, 0), (0, 1)))
        rejected = False
    except InvalidCertificate:
        rejected = True
    ok = (rep["passed"] and rep["words"] == ["x1:0 x1:0", "x2:0"] and rep["map"] == "m -> 4*m"
          and none_23 and rejected)
    return ok, {"witness_24": rep, "no_certificate_23": none_23, "bogus_certificate_rejected": rejected}


def c9_psystem():
    spec = KGraphSpec.standard((2, 3))
    rep = verify_psystem(spec, degrees=[(1, 0), (0, 1), (1, 1)], exp_range=(-6, 6))
    return rep["passed"], {k: {"checked": v["checked"], "failures": v["failures"][:2]}
                           for k, v in rep["parts"].items()}


def c10_topology(paths=100, seed=10):
    n = (2, 3)
    rng = random.Random(seed)
    round_trips = 0
    for _ in range(paths):
        z = Fraction(rng.randrange(0, 97), rng.randint(1, 97))
        d = (rng.randint(0, 4), rng.randint(0, 4))
        x = path(z, d)
        front = (rng.randint(0, d[0]), rng.randint(0, d[1]))
        head, tail = factorize_path(n, x, front)
        if compose(n, head, tail) != x or factorize_path(n, compose(n, head, tail), front) != (head, tail):
            break
        round_trips += 1
    eps = Fraction(1, 128)
    targets = sorted({Fraction(a, b) for b in range(1, 65) for a in range(b)})
    orbit_bad = []
    max_deg = 0
    for t in targets:
        w = orbit_approx(n, 0, t, eps)
        root, p = w["root"], w["p"]
        max_deg = max(max_deg, sum(p))
        if circle_distance(root, t) != w["distance"] or w["distance"] > eps or source(n, path(root, p)).angle != 0:
            orbit_bad.append(str(t))
    cw = contracting_witness(n, Fraction(1, 32))
    try:
        contracting_witness(n, Fraction(1, 4))
        guard = False
    except DeltaTooLarge:
        guard = True
    ok = round_trips == paths and not orbit_bad and cw["passed"] and guard
    return ok, {"round_trips": round_trips, "targets": len(targets), "orbit_failures": orbit_bad[:5],
                "max_total_degree": max_deg, "contracting": cw, "delta_guard": guard}


CRITERIA = [
    (1, "rewriting-coding equivalence", c1_rewriting_coding, 10),
    (2, "cubic condition", c2_cubic, 5),
    (3, "Zappa-Szep axioms", c3_zappa_szep, 30),
    (4, "LCM dichotomy", c4_lcm, 30),
    (5, "ideal oracle", c5_ideals, 60),
    (6, "simplicity oracle", c6_simplicity, 30),
    (7, "relation suite", c7_relations, 60),
    (8, "kernel witness", c8_kernel, 5),
    (9, "product-system identities", c9_psystem, 60),
    (10, "topological graph", c10_topology, 10),
]


SEEDED = {5, 7, 10}


def run_criterion(num: int, seed: int | None = None) -> dict:
    for cid, name, fn, budget in CRITERIA:
        if cid == num:
            t0 = time.perf_counter()
            ok, details = fn(seed=seed) if seed is not None and cid in SEEDED else fn()
            secs = time.perf_counter() - t0
            return {"id": cid, "name": name, "passed": bool(ok) and secs < budget,
                    "checks_passed": bool(ok), "seconds": round(secs, 3), "budget": budget,
                    "details": details}
    raise KeyError(num)


def run_all(seed: int | None = None) -> list[dict]:
    return [run_criterion(cid, seed) for cid, *_ in CRITERIA]


def summary_line(res: dict) -> str:
    mark = "PASS" if res["passed"] else "FAIL"
    return f"[{mark}] C{res['id']:<2} {res['name']:<30} {res['seconds']:7.2f}s / {res['budget']}s"
