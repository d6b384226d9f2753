"""Verification suites behind ``matgroup-interp verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from . import cohom, defsets, deform, interp, matgroup, wordcalc
from .errors import AlgebraError, CharTwo, NotCoboundary, TooLarge
from .matgroup import DEFAULT_CAP, enumerate_group, predicted_order, random_element
from .report import Report
from .ring import PRIME_FIELD, RingSpec

SUITES = ("steinberg", "decompose", "interp", "definable", "a4", "cohom", "deform")


@dataclass
class SuiteOptions:
    spec: RingSpec
    n: int
    seed: int = 0
    cap: int = DEFAULT_CAP
    pairs: int = 1000
    samples: int = 100


def _params(o: SuiteOptions) -> dict:
    return {"ring": str(o.spec), "n": o.n, "seed": o.seed, "cap": o.cap}


def _error_record(rep: Report, name: str, err: AlgebraError) -> None:
    rep.add(name, "precondition", "runs", f"{err.code}: {err}", passed=False)


def run_steinberg(o: SuiteOptions) -> Report:
    rep = matgroup.steinberg_suite(o.spec, o.n)
    rep.parameters.update(_params(o))
    return rep


def run_decompose(o: SuiteOptions) -> Report:
    spec, n = o.spec, o.n
    rep = Report("decompose", _params(o))
    rng = random.Random(o.seed)
    if not spec.is_field:
        rep.add("field", "decomposition needs a field", True, False)
        return rep.finish()
    sched = wordcalc.elimination_schedule(n)
    rep.parameters["schedule"] = {"name": sched.name, "slots": sched.m}
    if spec.is_finite and predicted_order(spec, n, "SL") <= o.cap:
        w = wordcalc.width_report(spec, n, cap=o.cap)
        rep.add("sl_round_trip", "eval_word(decompose_sl(g)) = g on all of SL_n", {"failures": 0},
                {"failures": w.round_trip_failures, "elements": w.elements}, passed=w.round_trip_failures == 0)
        rep.add("width_bound", "max word length <= (n-1)(n+3)", {"bound": w.bound},
                {"max_length": w.max_length}, passed=w.max_length <= w.bound)
        rep.add("schedule_embedding", "every word embeds into the fixed schedule", 0, w.schedule_failures)
        rep.add("length_histogram", "empirical word lengths", None, w.length_histogram, passed=True)
    else:
        els = [random_element(spec, n, "SL", rng) for _ in range(o.samples)]
        bad = sum(wordcalc.eval_word(wordcalc.decompose_sl(g)) != g for g in els)
        rep.add("sl_round_trip_sampled", "eval_word(decompose_sl(g)) = g", {"failures": 0},
                {"failures": bad, "samples": len(els)}, passed=bad == 0)
    gl = [random_element(spec, n, "GL", rng) for _ in range(o.samples)]
    bad_rt = bad_beta = 0
    for a in gl:
        w = wordcalc.decompose_gl(a)
        bad_rt += wordcalc.eval_word(w) != a
        bad_beta += w.diag[1] != matgroup.det(a)
    rep.add("gl_round_trip", "eval_word(decompose_gl(a)) = a", 0, bad_rt)
    rep.add("gl_beta_is_det", "beta = det(a)", 0, bad_beta)
    polys = wordcalc.entry_polynomials(sched, n)
    bad_pad = bad_poly = 0
    for a in gl[: min(len(gl), 50)]:
        core = wordcalc.decompose_sl(matgroup.mat_mul(a, matgroup.diag_elem(spec, n, n, spec.inv(matgroup.det(a)))))
        padded = wordcalc.sigma_pad(core, sched)
        m = wordcalc.eval_word(padded)
        bad_pad += m != wordcalc.eval_word(core)
        vals = padded.alphas
        bad_poly += any(polys[(i, j)].evaluate(spec, vals) != m[i, j] for i in range(1, n + 1) for j in range(1, n + 1))
    rep.add("sigma_pad_preserves_value", "eval_word(sigma_pad(w, s)) = eval_word(w)", 0, bad_pad)
    rep.add("entry_polynomials", "P_ij(a) = entry (i, j) of the scheduled product", 0, bad_poly)
    if spec.is_finite and predicted_order(spec, n, "UT") <= 1000:
        try:
            series = wordcalc.lower_central_series(spec, n, cap=o.cap)
            g = series[0]
            ok = all(s.elements == wordcalc.ut_level(g, k) for k, s in enumerate(series, start=1))
            rep.add("lower_central_series", "gamma_k(UT_n) = UT_n^k", [len(wordcalc.ut_level(g, k)) for k in range(1, len(series) + 1)],
                    [len(s) for s in series], passed=ok)
            tables = {tuple(sorted(wordcalc.ut_normal_form(x).items())) for x in g.elements}
            rep.add("ut_normal_form_bijective", "distinct UT elements give distinct tables", len(g), len(tables))
        except TooLarge as e:
            _error_record(rep, "lower_central_series", e)
    return rep.finish()


def _alt_carriers(n: int) -> list[tuple[int, int]]:
    return [(2, 1), (n, 1), (2, 3) if n > 3 else (3, 2), (1, 2)]


def run_interp(o: SuiteOptions) -> Report:
    spec, n = o.spec, o.n
    rep = Report("interp", _params(o))
    if spec.is_finite:
        for car in [(1, n)] + _alt_carriers(n):
            r = interp.InterpretedRing(spec, n, "SL", car)
            rep.extend(interp.ring_iso_check(r), prefix=f"carrier_{car[0]}{car[1]}")
        rt = interp.InterpretedRing(spec, n, "T", (1, n))
        R = spec.elements()
        bad = 0
        for a in R:
            for b in R:
                x, y = rt.encode(a), rt.encode(b)
                prods = interp.tn_witness_products(rt, x, y, limit=16, seed=o.seed)
                bad += any(p != rt.encode(spec.mul(a, b)) for p in prods)
        rep.add("triangular_witness_independence", "every enlarged witness pair gives t(ab)", 0, bad)
    r = interp.InterpretedRing(spec, n, "SL", (1, n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    rng = random.Random(o.seed)
    vals = spec.elements() if spec.is_finite else [spec.elem(rng.randint(-9, 9)) for _ in range(5)]
    bad_iso = bad_comp = 0
    for src in pairs:
        for dst in pairs:
            for a in vals:
                x = matgroup.transvection(spec, n, *src, a)
                y = interp.connecting_iso(r, src, dst, x)
                bad_iso += y != matgroup.transvection(spec, n, *dst, a)
                if src[0] != dst[1]:
                    mid = (src[0], dst[1])
                    z = interp.connecting_iso(r, mid, dst, interp.connecting_iso(r, src, mid, x))
                    bad_comp += z != y
    rep.add("connecting_iso", "f(t_ij(a)) = t_km(a)", 0, bad_iso)
    rep.add("connecting_iso_composition", "f_ijkm = f_imkm o f_ijim", 0, bad_comp)
    if spec.is_field:
        if spec.is_finite and predicted_order(spec, n, "SL") <= 200:
            lam = interp.lambda_check(spec, n)
        else:
            count = o.pairs if spec.is_finite else max(1, o.pairs // 100)
            lam = interp.lambda_check(spec, n, pairs=count, seed=o.seed)
        rep.extend(lam, prefix="lambda")
        if spec.is_finite:
            rep.extend(interp.mu_check(spec, n), prefix="mu")
    return rep.finish()


def run_definable(o: SuiteOptions) -> Report:
    spec, n = o.spec, o.n
    rep = Report("definable", _params(o))
    if spec.kind != PRIME_FIELD:
        rep.add("prime_field", "definable-set checks run over GF(p)", True, False)
        return rep.finish()
    try:
        T = enumerate_group(spec, n, "T", cap=o.cap)
        D = enumerate_group(spec, n, "D", cap=o.cap).elements
        try:
            got = defsets.dn_formula(T)
            rep.add("dn_formula", "{x : [x, d_i(-1)] = 1} = D_n", len(D), len(got), passed=got.elements == D)
        except CharTwo:
            rep.add("dn_formula_char_two", "CharTwo when -1 = 1", "CharTwo", "CharTwo")
        K = enumerate_group(spec, n, "K", cap=o.cap)
        try:
            bn = defsets.bn_formula(K)
            rep.add("bn_formula", "B_n formula = prod d_i(F^x)", len(defsets.analytic_bn(spec, n)), len(bn),
                    passed=bn.elements == defsets.analytic_bn(spec, n))
            for k in range(1, n):
                dk = defsets.dk_formula(K, k)
                rep.add(f"dk_formula_{k}", "d_k formula = d_k(F^x)", spec.modulus - 1, len(dk),
                        passed=dk.elements == defsets.analytic_dk(spec, n, k))
            rep.add("center_K_trivial", "Z(K_n) = 1", 1, len(defsets.center(K)))
        except CharTwo:
            rep.add("bn_formula_char_two", "CharTwo when -1 = 1", "CharTwo", "CharTwo")
    except TooLarge as e:
        _error_record(rep, "triangular_hosts", e)
    d1 = defsets.delta1_formula(spec=spec, n=n, cap=o.cap)
    if d1.note:
        rep.parameters["delta1_restriction"] = d1.note
    expect = defsets.analytic_delta1(spec, n)
    rep.add("delta1_formula", "Delta_1 = d_1(F^x) Z", len(expect), len(d1), passed=d1.elements == expect)
    rep.add("delta1_subgroup", "Delta_1 is closed", True, d1.is_subgroup())
    if predicted_order(spec, n, "GL") <= o.cap:
        G = enumerate_group(spec, n, "GL", cap=o.cap)
        der = defsets.derived_subgroup(G)
        sl = frozenset(x for x in G.elements if matgroup.det(x) == spec.one)
        rep.add("derived_subgroup", "G' = SL_n", len(sl), len(der), passed=der.elements == sl)
        rep.add("derived_width", "commutator width until stable", None, der.extra, passed=der.extra["stable"])
    else:
        rep.parameters["derived_subgroup"] = "skipped: GL_n exceeds the enumeration cap"
    return rep.finish()


def run_a4(o: SuiteOptions) -> Report:
    rep = Report("a4", _params(o))
    if o.spec.kind != PRIME_FIELD:
        rep.add("prime_field", "index computations run over GF(p)", True, False)
        return rep.finish()
    rep.extend(defsets.a4_sequence_report(o.spec, o.n, cap=o.cap))
    rep.extend(defsets.d1_power_identity(o.spec, o.n), prefix="d1_power")
    return rep.finish()


def run_cohom(o: SuiteOptions) -> Report:
    rep = Report("cohom", {"seed": o.seed})
    FA = cohom.FinAbGroup
    bad = []
    for m in range(1, 5):
        for k in range(1, 5):
            e = cohom.ext_group(FA((m,)), FA((k,)))
            if e.order != gcd(m, k):
                bad.append((m, k, e.order))
    rep.add("ext_orders", "|Ext(Z/m, Z/n)| = gcd(m, n), m, n <= 4", [], bad)
    Z2 = FA((2,))
    f = cohom.carry_cocycle(2, Z2)
    rep.add("z4_cocycle_valid", "carry cocycle is a 2-cocycle", True, cohom.is_valid(f))
    try:
        cohom.is_coboundary(f)
        verdict = "coboundary"
    except NotCoboundary:
        verdict = "NotCoboundary"
    rep.add("z4_not_coboundary", "carry cocycle is not a coboundary", "NotCoboundary", verdict)
    rep.add("z4_extension", "E(f) = Z/4 by order multiset", {1: 1, 2: 1, 4: 2}, cohom.extension_group(f).order_multiset())
    rng = random.Random(o.seed)
    B, A = FA((2, 4)), FA((4,))
    bad_rt = 0
    for _ in range(100):
        psi = {x: (rng.randrange(4),) for x in B.elements()}
        psi[B.zero] = A.zero
        g = cohom.coboundary_from(B, A, psi)
        w = cohom.is_coboundary(g)
        bad_rt += cohom.coboundary_from(B, A, w) != g
    rep.add("coboundary_round_trip", "is_coboundary(d psi) finds a witness", {"failures": 0},
            {"failures": bad_rt, "samples": 100}, passed=bad_rt == 0)
    B2 = FA((2, 2))
    f1 = cohom.carry_cocycle(2, Z2, factor=0, domain=B2)
    fac = cohom.bn_factorize(f1, seed=o.seed)
    rep.add("bn_product", "f ~ prod f_i", True, fac.product_cohomologous)
    rep.add("bn_fn_inverse", "f_n ~ f^-1", True, fac.fn_cohomologous_to_inverse)
    cot_t = cohom.cot_check(f1, [(1, 0)], [(0, 1)])
    cot_b = cohom.cot_check(f1, [(0, 1)], [(1, 0)])
    rep.add("cot_torsion_support", "f supported on T is not CoT", False, cot_t.is_cot)
    rep.add("cot_free_support", "f supported on the complement is CoT", True, cot_b.is_cot)
    return rep.finish()


def _deformation_pair(spec: RingSpec, n: int):
    lg = deform.UnitLog(spec)
    B = lg.group(n - 1)
    Z = cohom.FinAbGroup((2,))
    trivial = deform.TnDeformation.trivial(spec, n, Z)
    twisted = deform.TnDeformation(spec, n, Z, cohom.carry_cocycle(lg.m, Z, factor=0, domain=B))
    return trivial, twisted


def run_deform(o: SuiteOptions) -> Report:
    spec, n = o.spec, o.n
    rep = Report("deform", _params(o))
    if spec.kind != PRIME_FIELD or spec.modulus == 2:
        rep.add("odd_prime_field", "deformations use GF(p), p odd", True, False)
        return rep.finish()
    d0, d1 = _deformation_pair(spec, n)
    if d0.order <= 1000:
        for name, d in (("trivial", d0), ("twisted", d1)):
            rep.extend(deform.group_axiom_report(d), prefix=name)
        rep.add("twisted_is_not_coboundary", "carry cocycle on B_n is not a coboundary", False,
                cohom.cohomologous(d1.f, d0.f)[0])
        verdict = deform.deformation_distinguisher(d0, d1)
        rep.add("distinguisher", "order multisets separate the deformations",
                "group-nonisomorphic via element-order multiset", verdict["verdict"])
    else:
        rep.parameters["tn_mode"] = f"order {d0.order} exceeds exhaustive budget; sampled associativity"
        rng = random.Random(o.seed)
        lg = d1.units

        def rnd():
            u = matgroup.Matrix.identity(spec, n)
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    u = matgroup.mat_mul(u, matgroup.transvection(spec, n, i, j, rng.randrange(spec.modulus)))
            b = tuple(rng.choice(lg.exp) for _ in range(n - 1))
            return deform.DeformedTnElem(u, deform.DeformedTorusElem((rng.randrange(2),), b))

        bad = 0
        for _ in range(o.pairs):
            x, y, z = rnd(), rnd(), rnd()
            bad += deform.tn_product(d1, deform.tn_product(d1, x, y), z) != deform.tn_product(d1, x, deform.tn_product(d1, y, z))
        rep.add("twisted/associativity_sampled", "(xy)z = x(yz)", 0, bad)
    Zs = cohom.FinAbGroup((spec.modulus - 1,))
    dc = deform.TnDeformation.trivial(spec, n, Zs)
    if dc.order <= 1000:
        rep.extend(deform.collapse_report(dc), prefix="collapse")
    m = deform.UnitLog(spec).m
    samples = max(100, o.pairs // 5)
    dims = [n] if n == 2 or spec.modulus > 3 else [2, n]
    for k in dims:
        r = gcd(k, m)
        Q, B1, B2 = cohom.FinAbGroup((r,)), cohom.FinAbGroup((1,)), cohom.FinAbGroup((2,))
        plain = deform.GlDeformContext(spec, k, B1, cohom.Cocycle.trivial(Q, B1))
        twisted = deform.GlDeformContext(spec, k, B2, cohom.carry_cocycle(r, B2))
        rep.extend(deform.gl_deform_report(plain, samples=samples, seed=o.seed), prefix=f"gl{k}_foundation")
        rep.extend(deform.gl_deform_report(twisted, samples=samples, seed=o.seed), prefix=f"gl{k}_twisted")
    return rep.finish()


RUNNERS = {
    "steinberg": run_steinberg,
    "decompose": run_decompose,
    "interp": run_interp,
    "definable": run_definable,
    "a4": run_a4,
    "cohom": run_cohom,
    "deform": run_deform,
}


def run_suite(name: str, o: SuiteOptions) -> Report:
    if name == "all":
        rep = Report("all", _params(o))
        for s in SUITES:
            try:
                sub = RUNNERS[s](o)
            except AlgebraError as e:
                sub = Report(s)
                _error_record(sub, "suite", e)
            rep.extend(sub, prefix=s)
        return rep.finish()
    return RUNNERS[name](o)
