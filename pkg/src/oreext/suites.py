"""Named verification suites.

Each suite is deterministic given its seed and returns one
:class:`VerificationReport`.  Inequality suites report the largest observed
ratio (1 is the bound).  Identity suites report
``max_ratio = discrepancies / trials``, so 0 means every identity held.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from .algebra import (
    AlgebraError,
    PBWElement,
    Presentation,
    builtin,
    convert,
    normal_order,
    weyl_commutator_check,
)
from .coeff import GaussianRational, Scalar, as_scalar
from .expr import FreeTerm, parse, render
from . import ore
from .ore import (
    commute_zn_element,
    jordanian_ore,
    lift,
    snk_enumerate,
    snk_pascal,
    snk_summands,
    uq_a1_lowering_first,
    uq_delta_bruteforce,
    uq_tower,
)
from .rep import (
    casimir,
    envelope_map,
    eval_k_poly,
    irrep,
    is_scalar_matrix,
    k_poly_mul,
    relations_hold,
)
from .seminorm import (
    COEFF_POOL,
    SeminormSpec,
    VerificationReport,
    check_equivalence_PQ,
    check_factorial_submultiplicativity,
    check_isometry_samples,
    check_stability_samples,
    check_submultiplicative_pairs,
    evaluate_exact,
    random_element,
    uq_delta_constant,
    weyl_obstruction_report,
)

__all__ = ["SUITES", "DEFAULT_Q", "run_suite"]

DEFAULT_Q = GaussianRational(Fraction(3, 5), Fraction(4, 5))
SECOND_Q = GaussianRational(Fraction(5, 13), Fraction(12, 13))


def _combine(suite: str, reports: list[VerificationReport], **params) -> VerificationReport:
    witness = next((r.witness for r in reports if not r.passed and r.witness), None)
    return VerificationReport(
        suite,
        sum(r.trials for r in reports),
        all(r.passed for r in reports),
        max(r.max_ratio for r in reports),
        witness,
        {**params, "parts": [r.to_dict() for r in reports]},
    )


class _Tally:
    """Counts exact identity checks and keeps the first failure."""

    def __init__(self):
        self.trials = 0
        self.bad = 0
        self.witness = None

    def check(self, ok: bool, **witness) -> None:
        self.trials += 1
        if not ok:
            self.bad += 1
            if self.witness is None:
                self.witness = {k: str(v) for k, v in witness.items()}

    def report(self, suite: str, **params) -> VerificationReport:
        ratio = self.bad / self.trials if self.trials else 0.0
        return VerificationReport(
            suite, self.trials, self.bad == 0, ratio, self.witness, {**params, "discrepancies": self.bad}
        )


# -- Jordanian plane -------------------------------------------------------------


def jordanian_submult(*, seed: int = 0, tol: float = 1e-9, trials: int = 500, **_) -> VerificationReport:
    """||ab|| <= ||a|| ||b|| for the factorial weights on C[y]."""
    R = jordanian_ore().base
    rng = random.Random(seed)
    reports = []
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5)):
        spec = SeminormSpec("jordanian_P", rho)
        monos = [(R.gen("y", k), R.gen("y", l)) for k in range(7) for l in range(7)]
        reports.append(check_submultiplicative_pairs(spec, monos, tol, "monomial_pairs"))

        def pair(rng=rng):
            return (random_element(rng, R, {"y": (0, 6)}), random_element(rng, R, {"y": (0, 6)}))

        reports.append(check_submultiplicative_pairs(spec, (pair() for _ in range(trials)), tol, "random_pairs"))
        reports.append(check_factorial_submultiplicativity(rho, 20))
    return _combine("jordanian_submult", reports, seed=seed, tol=tol)


def jordanian_stability(*, seed: int = 0, tol: float = 1e-9, trials: int = 500, **_) -> VerificationReport:
    """||delta(a)|| <= rho ||a|| on C[y], with equality on monomials."""
    d = jordanian_ore()
    R = d.base
    rng = random.Random(seed)
    reports = []
    for rho in (Fraction(1, 2), Fraction(1), Fraction(3)):
        spec = SeminormSpec("jordanian_P", rho)
        samples = (random_element(rng, R, {"y": (0, 12)}, max_terms=6) for _ in range(trials))
        reports.append(check_stability_samples(spec, d.delta, lambda r: r, samples, tol, "random_elements"))
        tally = _Tally()
        for i in range(1, 31):
            y = R.gen("y", i)
            tally.check(evaluate_exact(spec, d.delta(y)) == rho * evaluate_exact(spec, y), i=i, rho=rho)
        reports.append(tally.report("monomial_ratio_equals_rho", rho=str(rho)))
    return _combine("jordanian_stability", reports, seed=seed, tol=tol)


def pq_equivalence(**_) -> VerificationReport:
    return check_equivalence_PQ([Fraction(1, 10), Fraction(1), Fraction(10)], 30)


# -- S_{n,k} ---------------------------------------------------------------------------


def _jordanian_bases():
    R = jordanian_ore().base
    return [R.gen("y", j) for j in range(5)]


def _a0_bases(q):
    t1, _ = uq_tower(q)
    return [t1.base.gen("K", i) for i in range(-3, 4)]


def _a1_bases(q):
    t1, _ = uq_tower(q)
    a1 = t1.presentation
    return [a1.monomial({"K": i, "F": m}) for m in range(5) for i in range(-3, 4)]


def snk_consistency(*, q: Scalar | None = None, nmax: int = 10, commute_nmax: int = 8, **_) -> VerificationReport:
    """Word enumeration against the Pascal recursion, then z^n r against the rewriter."""
    q = as_scalar(q) if q is not None else DEFAULT_Q
    t1, t2 = uq_tower(q)
    cases = [("jordanian", jordanian_ore(), _jordanian_bases()), ("A1/A0", t1, _a0_bases(q)), ("A2/A1", t2, _a1_bases(q))]
    snk = _Tally()
    for label, d, bases in cases:
        for r in bases:
            for n in range(nmax + 1):
                for k in range(n + 1):
                    summands = snk_summands(n, k, r, d)
                    snk.check(len(summands) == math.comb(n, k), ext=label, r=r, n=n, k=k, what="count")
                    snk.check(
                        snk_enumerate(n, k, r, d) == snk_pascal(n, k, r, d), ext=label, r=r, n=n, k=k, what="value"
                    )
    comm = _Tally()
    jordan = builtin("jordanian")
    for label, d, bases in (cases[0], cases[2]):
        z = d.presentation.gen(d.z)
        for r in bases:
            lifted = lift(r, d)
            for n in range(commute_nmax + 1):
                formula = commute_zn_element(n, r, d)
                comm.check(formula == z**n * lifted, ext=label, r=r, n=n)
                if label == "jordanian":
                    comm.check(convert(formula, jordan) == jordan.gen("x", n) * convert(r, jordan), ext=label, r=r, n=n)
    return _combine(
        "snk_consistency",
        [snk.report("enumerate_vs_pascal", nmax=nmax), comm.report("commutation_vs_rewriting", nmax=commute_nmax)],
        q=str(q),
    )


# -- U_q(sl2) -------------------------------------------------------------------------


def uq_qpower(*, q: Scalar | None = None, **_) -> VerificationReport:
    """K^i F^n = q^(-2in) F^n K^i, read in both PBW orders."""
    q = as_scalar(q) if q is not None else DEFAULT_Q
    U = builtin("uq_sl2", q)
    FK = uq_a1_lowering_first(q)
    tally = _Tally()
    for i in range(-6, 7):
        for n in range(9):
            c = q ** (-2 * i * n)
            got = normal_order(parse(f"K^{i}*F^{n}", FK), FK)
            tally.check(got == FK.monomial({"F": n, "K": i}, c) and c.abs_sq() == 1, i=i, n=n, got=got)
            got = normal_order(parse(f"F^{n}*K^{i}", U), U)
            tally.check(got == U.monomial({"K": i, "F": n}, c.inverse()), i=i, n=n, got=got)
    return tally.report("uq_qpower", q=str(q))


def uq_delta_closed_form(*, q: Scalar | None = None, nmax: int = 15, imax: int = 5, **_) -> VerificationReport:
    """Closed form for delta(K^i F^n) against term-by-term summation and the rewriter."""
    qs = [as_scalar(q)] if q is not None else [DEFAULT_Q, SECOND_Q]
    tally = _Tally()
    errors = []
    for qq in qs:
        _, t2 = uq_tower(qq)
        a1 = t2.base
        U = builtin("uq_sl2", qq)
        E = U.gen("E")
        for i in range(-imax, imax + 1):
            for n in range(nmax + 1):
                brute = uq_delta_bruteforce(i, n, qq)
                try:
                    closed = ore.uq_delta_closed_form(i, n, qq)
                except AlgebraError as exc:
                    tally.check(False, q=qq, i=i, n=n, error=exc)
                    errors.append(str(exc))
                    continue
                tally.check(closed == brute, q=qq, i=i, n=n, closed=closed, brute=brute)
                mono = a1.monomial({"K": i, "F": n})
                rewritten = E * convert(mono, U) - convert(t2.alpha(mono), U) * E
                tally.check(rewritten == convert(brute, U), q=qq, i=i, n=n, rewritten=rewritten)
    params = {"q": [str(x) for x in qs], "nmax": nmax, "imax": imax}
    if errors:
        params["error"] = errors[0]
    return tally.report("uq_delta_closed_form", **params)


def uq_alpha_isometry(*, q: Scalar | None = None, seed: int = 0, tol: float = 1e-12, trials: int = 500, **_) -> VerificationReport:
    q = as_scalar(q) if q is not None else DEFAULT_Q
    t1, t2 = uq_tower(q)
    rng = random.Random(seed)
    reports = []
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
        samples = (random_element(rng, t1.base, {"K": (-6, 6)}) for _ in range(trials))
        reports.append(check_isometry_samples(SeminormSpec("a0_laurent", rho), t1.alpha, samples, tol, "alpha0"))
        samples = (random_element(rng, t2.base, {"K": (-4, 4), "F": (0, 6)}) for _ in range(trials))
        reports.append(check_isometry_samples(SeminormSpec("a1_laurent", rho), t2.alpha, samples, tol, "alpha1"))
    return _combine("uq_alpha_isometry", reports, q=str(q), seed=seed, tol=tol)


def uq_delta_bound(*, q: Scalar | None = None, seed: int = 0, tol: float = 1e-9, trials: int = 500, **_) -> VerificationReport:
    """||delta(b)|| <= (C + C/rho^2) ||b|| on A1 with C = 2/|(q - 1/q)(1 - q^-2)|."""
    q = as_scalar(q) if q is not None else DEFAULT_Q
    _, t2 = uq_tower(q)
    C = uq_delta_constant(q)
    rng = random.Random(seed)
    reports = []
    for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
        samples = (
            random_element(rng, t2.base, {"K": (-8, 8), "F": (0, 8)}, max_terms=5, total=(("K", "F"), 8))
            for _ in range(trials)
        )
        spec = SeminormSpec("a1_laurent", rho)
        reports.append(check_stability_samples(spec, t2.delta, lambda r: C + C / r**2, samples, tol, "delta_hat"))
    return _combine("uq_delta_bound", reports, q=str(q), seed=seed, tol=tol, C=C)


# -- U(sl2) representations -------------------------------------------------------------


def sl2_irreps(*, dmax: int = 10, **_) -> VerificationReport:
    tally = _Tally()
    for d in range(1, dmax + 1):
        rep = irrep(d)
        tally.check(relations_hold(rep), d=d, what="relations")
        tally.check(all(rep.H[k, k] == d - 1 - 2 * k for k in range(d)), d=d, what="weights")
    image = envelope_map(casimir(), dmax - 1)
    for lam, block in enumerate(image.blocks):
        tally.check(is_scalar_matrix(block), lam=lam, what="casimir")
    return tally.report("sl2_irreps", dmax=dmax)


def _random_usl2(rng: random.Random, degree: int) -> PBWElement:
    U = builtin("usl2")
    terms = {}
    for _ in range(rng.randint(1, 4)):
        a = rng.randint(0, degree)
        b = rng.randint(0, degree - a)
        c = rng.randint(0, degree - a - b)
        terms[(a, b, c)] = rng.choice(COEFF_POOL)
    return PBWElement(U, terms)


def envelope_homomorphism(*, seed: int = 0, trials: int = 200, lambda_max: int = 6, **_) -> VerificationReport:
    rng = random.Random(seed)
    U = builtin("usl2")
    tally = _Tally()
    for _ in range(trials):
        u, v = _random_usl2(rng, 4), _random_usl2(rng, 4)
        ku = [rng.choice(COEFF_POOL) for _ in range(rng.randint(1, 3))]
        kv = [rng.choice(COEFF_POOL) for _ in range(rng.randint(1, 3))]
        lhs = envelope_map(u * v, lambda_max, k_poly_mul(ku, kv))
        rhs = envelope_map(u, lambda_max, ku) * envelope_map(v, lambda_max, kv)
        tally.check(lhs == rhs, u=u, v=v)
        pu, pv = eval_k_poly(ku), eval_k_poly(kv)
        tally.check(eval_k_poly(k_poly_mul(ku, kv)) == (pu[0] * pv[0], pu[1] * pv[1]), ku=ku, kv=kv)
    for rel in ("E*F - F*E - H", "H*E - E*H - 2*E", "H*F - F*H + 2*F"):
        image = envelope_map(U.parse(rel), 8)
        tally.check(all(not x for b in image.blocks for x in b.flat), relation=rel)
    return tally.report("envelope_homomorphism", seed=seed, lambda_max=lambda_max)


# -- Weyl algebra ------------------------------------------------------------------------

WEYL_OBSTRUCTION_CASES = ((1, 1), (10, 10), (Fraction(1, 10), Fraction(1, 10)))


def weyl_identity(*, nmax: int = 30, **_) -> VerificationReport:
    tally = _Tally()
    for n in range(1, nmax + 1):
        try:
            weyl_commutator_check(n)
            tally.check(True)
        except AlgebraError as exc:
            tally.check(False, n=n, error=exc)
    reports = [tally.report("commutator_identity", nmax=nmax)]
    reports += [weyl_obstruction_report(a, b) for a, b in WEYL_OBSTRUCTION_CASES]
    return _combine("weyl_identity", reports)


# -- engine self-consistency ----------------------------------------------------------------


def _fuzz_presentations(q: GaussianRational) -> list[Presentation]:
    return [
        builtin("free(2)"),
        builtin("free(3)"),
        builtin("quantum_plane", q),
        builtin("jordanian"),
        builtin("ug_solvable"),
        builtin("uq_sl2", q),
        builtin("weyl"),
        builtin("usl2"),
    ]


def _random_word(rng: random.Random, p: Presentation, max_len: int) -> tuple:
    runs = []
    for _ in range(rng.randint(0, max_len)):
        g = rng.randrange(p.ngens)
        s = rng.choice((1, -1)) if p.generators[g].laurent else 1
        runs.append((g, s))
    return tuple(runs)


def _random_term(rng: random.Random, p: Presentation) -> FreeTerm:
    terms = [(_random_word(rng, p, 5), rng.choice(COEFF_POOL) * rng.choice((1, 2, Fraction(1, 3)))) for _ in range(rng.randint(0, 4))]
    return FreeTerm(p, terms)


def associativity_fuzz(*, q: Scalar | None = None, seed: int = 0, trials: int = 1000, roundtrips: int = 200, **_) -> VerificationReport:
    """(uv)w = u(vw) = NF(uvw), idempotence of normal forms, and parse(render(t)) = t."""
    q = as_scalar(q) if q is not None else DEFAULT_Q
    rng = random.Random(seed)
    assoc, idem, trip = _Tally(), _Tally(), _Tally()
    for p in _fuzz_presentations(q):
        for _ in range(trials):
            words = [_random_word(rng, p, 6) for _ in range(3)]
            u, v, w = (normal_order(FreeTerm(p, [(x, 1)]), p) for x in words)
            left, right = (u * v) * w, u * (v * w)
            whole = normal_order(FreeTerm(p, [(words[0] + words[1] + words[2], 1)]), p)
            assoc.check(left == right == whole, presentation=p.name, left=left, right=right)
            idem.check(normal_order(left.to_term(), p) == left, presentation=p.name, element=left)
        for _ in range(roundtrips):
            t = _random_term(rng, p)
            text = render(t)
            trip.check(parse(text, p) == t, presentation=p.name, text=text)
    return _combine(
        "associativity_fuzz",
        [assoc.report("associativity"), idem.report("idempotence"), trip.report("parse_render_roundtrip")],
        q=str(q),
        seed=seed,
        presentations=[p.name for p in _fuzz_presentations(q)],
    )


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "jordanian_submult": jordanian_submult,
    "jordanian_stability": jordanian_stability,
    "pq_equivalence": pq_equivalence,
    "snk_consistency": snk_consistency,
    "uq_qpower": uq_qpower,
    "uq_delta_closed_form": uq_delta_closed_form,
    "uq_alpha_isometry": uq_alpha_isometry,
    "uq_delta_bound": uq_delta_bound,
    "sl2_irreps": sl2_irreps,
    "envelope_homomorphism": envelope_homomorphism,
    "weyl_identity": weyl_identity,
    "associativity_fuzz": associativity_fuzz,
}


def run_suite(name: str, *, q: Scalar | None = None, seed: int = 0, tol: float | None = None) -> VerificationReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}") from None
    kwargs = {"q": q, "seed": seed}
    if tol is not None:
        kwargs["tol"] = tol
    return fn(**kwargs)
