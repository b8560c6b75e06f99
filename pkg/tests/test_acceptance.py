"""One test per acceptance criterion, each printing a PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction

import pytest

from oreext.algebra import builtin, convert, normal_order, weyl_commutator_check
from oreext.expr import parse
from oreext.ore import (
    commute_zn_element,
    jordanian_ore,
    lift,
    snk_enumerate,
    snk_pascal,
    snk_summands,
    uq_a1_lowering_first,
    uq_delta_bruteforce,
    uq_delta_closed_form,
    uq_tower,
)
from oreext.rep import irrep, relations_hold
from oreext.seminorm import (
    SeminormSpec,
    check_equivalence_PQ,
    check_isometry_samples,
    check_stability_samples,
    random_element,
    uq_delta_constant,
    weyl_obstruction_report,
)
from oreext.suites import associativity_fuzz, envelope_homomorphism, jordanian_submult

from conftest import ACCEPTANCE_LINES, Q, Q2


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_jordanian_delta_powers():
    d = jordanian_ore()
    R = d.base
    start = time.perf_counter()
    value, ok = R.gen("y"), True
    for j in range(1, 21):
        value = d.delta(value)
        ok &= value == R.gen("y", j + 1).scale((-1) ** j * math.factorial(j))
    elapsed = time.perf_counter() - start
    record(1, "delta^j(y) = (-1)^j j! y^(j+1), j <= 20", ok and elapsed < 1, f"{elapsed:.3f}s")


def test_02_jordanian_delta_stability():
    d = jordanian_ore()
    rng = random.Random(0)
    start = time.perf_counter()
    worst, ok = 0.0, True
    for rho in (Fraction(1, 2), Fraction(1), Fraction(3)):
        samples = [random_element(rng, d.base, {"y": (0, 12)}, max_terms=6) for _ in range(500)]
        report = check_stability_samples(SeminormSpec("jordanian_P", rho), d.delta, lambda r: r, samples, 1e-9)
        ok &= report.passed and report.trials == 500
        worst = max(worst, report.max_ratio)
    elapsed = time.perf_counter() - start
    record(2, "||delta a||_rho <= rho ||a||_rho", ok and elapsed < 5, f"max ratio {worst:.12g}, {elapsed:.2f}s")


def test_03_jordanian_submultiplicativity():
    report = jordanian_submult(seed=0, tol=1e-9, trials=500)
    parts = report.parameters["parts"]
    random_trials = [p["trials"] for p in parts if p["suite"] == "random_pairs"]
    monomial_trials = [p["trials"] for p in parts if p["suite"] == "monomial_pairs"]
    exact = [p for p in parts if p["suite"] == "factorial_submultiplicativity"]
    ok = (
        report.passed
        and report.max_ratio <= 1 + 1e-9
        and random_trials == [500] * 4
        and monomial_trials == [49] * 4
        and len(exact) == 4
        and all(p["parameters"]["kmax"] == 20 and p["passed"] for p in exact)
    )
    record(3, "submultiplicativity on C[y], rho in {1/2,1,2,5}", ok, f"max ratio {report.max_ratio:.12g}")


def test_04_pq_equivalence():
    report = check_equivalence_PQ([Fraction(1, 10), Fraction(1), Fraction(10)], 30)
    record(4, "Q_rho <= P_rho <= Q_2rho on y^i, i <= 30", report.passed and report.trials == 93)


def _tower_cases():
    t1, t2 = uq_tower(Q)
    jd = jordanian_ore()
    return [
        ("jordanian", jd, [jd.base.gen("y", j) for j in range(5)] + [jd.base("1 - 2*y + y^3")]),
        ("A1/A0", t1, [t1.base.gen("K", i) for i in range(-3, 4)]),
        ("A2/A1", t2, [t2.base.monomial({"K": i, "F": m}) for m in range(5) for i in range(-3, 4)]),
    ]


def test_05_snk_two_ways():
    start = time.perf_counter()
    ok, checks = True, 0
    for _, d, bases in _tower_cases():
        for r in bases:
            for n in range(11):
                for k in range(n + 1):
                    ok &= len(snk_summands(n, k, r, d)) == math.comb(n, k)
                    ok &= snk_enumerate(n, k, r, d) == snk_pascal(n, k, r, d)
                    checks += 1
    elapsed = time.perf_counter() - start
    record(5, "S_{n,k} by enumeration equals recursion, n <= 10", ok and elapsed < 30, f"{checks} cases, {elapsed:.1f}s")


def test_06_commutation_formula():
    t1, t2 = uq_tower(Q)
    jd = jordanian_ore()
    cases = [
        (jd, [jd.base.gen("y", j) for j in range(5)]),
        (t2, [t2.base.monomial({"K": i, "F": m}) for m in range(5) for i in range(-3, 4)]),
    ]
    ok, checks = True, 0
    for d, bases in cases:
        z = d.presentation.gen(d.z)
        for r in bases:
            for n in range(9):
                ok &= commute_zn_element(n, r, d) == normal_order((z**n * lift(r, d)).to_term(), d.presentation)
                ok &= commute_zn_element(n, r, d) == z**n * lift(r, d)
                checks += 1
    J = builtin("jordanian")
    for j in range(5):
        for n in range(9):
            lhs = convert(commute_zn_element(n, jd.base.gen("y", j), jd), J)
            ok &= lhs == normal_order(parse(f"x^{n}*y^{j}", J), J)
    record(6, "sum_k S_{n,k}(r) z^(n-k) equals the rewritten z^n r, n <= 8", ok, f"{checks} cases")


def test_07_uq_qpower_law():
    FK = uq_a1_lowering_first(Q)
    U = builtin("uq_sl2", Q)
    ok = True
    for i in range(-6, 7):
        for n in range(9):
            c = Q ** (-2 * i * n)
            ok &= normal_order(parse(f"K^{i}*F^{n}", FK), FK) == FK.monomial({"F": n, "K": i}, c)
            ok &= normal_order(parse(f"F^{n}*K^{i}", U), U) == U.monomial({"K": i, "F": n}, c.inverse())
    record(7, "K^i F^n = q^(-2in) F^n K^i, |i| <= 6, n <= 8", ok)


def test_08_uq_delta_closed_form():
    ok, checks = True, 0
    for q in (Q, Q2):
        _, t2 = uq_tower(q)
        U = builtin("uq_sl2", q)
        E = U.gen("E")
        for i in range(-5, 6):
            for n in range(16):
                closed, brute = uq_delta_closed_form(i, n, q), uq_delta_bruteforce(i, n, q)
                mono = t2.base.monomial({"K": i, "F": n})
                rewritten = E * convert(mono, U) - convert(t2.alpha(mono), U) * E
                ok &= closed == brute and convert(closed, U) == rewritten
                checks += 1
    record(8, "closed form for delta(K^i F^n) against summation and rewriting", ok, f"{checks} cases")


def test_09_alpha_isometries():
    t1, t2 = uq_tower(Q)
    rng = random.Random(9)
    ok, mismatches = True, 0
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
        s0 = [random_element(rng, t1.base, {"K": (-6, 6)}) for _ in range(500)]
        s1 = [random_element(rng, t2.base, {"K": (-4, 4), "F": (0, 6)}) for _ in range(500)]
        for spec, alpha, samples in (
            (SeminormSpec("a0_laurent", rho), t1.alpha, s0),
            (SeminormSpec("a1_laurent", rho), t2.alpha, s1),
        ):
            report = check_isometry_samples(spec, alpha, samples, 1e-12)
            ok &= report.passed and report.trials == 500
            mismatches += report.parameters["exact_mismatches"]
    record(9, "alpha_0 and alpha_1 preserve every coefficient modulus", ok, f"{mismatches} exact mismatches")


def test_10_uq_delta_bound():
    _, t2 = uq_tower(Q)
    C = uq_delta_constant(Q)
    rng = random.Random(10)
    ok, worst = True, 0.0
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
        samples = [
            random_element(rng, t2.base, {"K": (-8, 8), "F": (0, 8)}, max_terms=5, total=(("K", "F"), 8))
            for _ in range(500)
        ]
        report = check_stability_samples(SeminormSpec("a1_laurent", rho), t2.delta, lambda r: C + C / r**2, samples, 1e-9)
        ok &= report.passed and report.trials == 500
        worst = max(worst, report.max_ratio)
    record(10, "||delta b||_rho <= (C + C/rho^2) ||b||_rho", ok, f"C = {C:.6g}, max normalised ratio {worst:.6g}")


def test_11_irreps_and_envelope():
    ok = all(relations_hold(irrep(d)) for d in range(1, 11))
    report = envelope_homomorphism(seed=11, trials=200, lambda_max=6)
    ok &= report.passed and report.trials >= 200
    record(11, "sl2 irreps d <= 10 and multiplicative envelope map", ok, f"{report.trials} checks")


def test_12_weyl():
    W = builtin("weyl")
    ok = all(weyl_commutator_check(n) == W.gen("x", n - 1).scale(n) for n in range(1, 31))
    found = []
    for (nx, nd), expected in (((1, 1), 3), ((10, 10), 201), ((Fraction(1, 10), Fraction(1, 10)), 1)):
        report = weyl_obstruction_report(nx, nd)
        found.append(report.witness["n"])
        ok &= report.passed and report.witness["n"] == expected
    record(12, "[d, x^n] = n x^(n-1) for n <= 30 and minimal obstruction n", ok, f"n = {found}")


def test_13_engine_self_consistency():
    report = associativity_fuzz(q=Q, seed=13, trials=1000, roundtrips=200)
    parts = {p["suite"]: p for p in report.parameters["parts"]}
    presentations = len(report.parameters["presentations"])
    ok = (
        report.passed
        and parts["associativity"]["trials"] == 1000 * presentations
        and parts["parse_render_roundtrip"]["trials"] >= 1000
    )
    record(
        13,
        "associativity, idempotence and parse/render round trip",
        ok,
        f"{presentations} presentations, {parts['parse_render_roundtrip']['trials']} round trips",
    )
