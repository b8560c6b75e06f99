"""Weighted l1 seminorms on PBW bases and sampled inequality checks.

A seminorm here is ``||a|| = sum |c_m| w(m)`` over the PBW expansion of
``a`` with a weight ``w`` from one of the families below.  Weights are kept
exact (``Fraction``) so single-monomial inequalities can be decided over
the rationals; sums of moduli are floats.

============== ============================ =======================
family         weight of a basis monomial   algebra
============== ============================ =======================
free_rho       rho^|w|                      free(n)
qplane_big     rho^(i+j)                    quantum plane, |q| >= 1
qplane_small   |q|^(ij) rho^(i+j)           quantum plane, |q| <= 1
ug_level       [j <= n] rho^i               U(g), [x, y] = y
jordanian_P    rho^i / (i-1)!, (-1)! = 1    C[y]
jordanian_Q    rho^i / i!                   C[y]
jordanian_full rho^(i+j) / j!               Jordanian plane x^i y^j
a0_laurent     rho^i, i in Z                C[K, K^-1]
a1_laurent     rho^(i+n)                    K^i F^n
uq_full        rho^(i+n+m)                  K^i F^n E^m
============== ============================ =======================
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import AlgebraError, PBWElement, Presentation, weyl_commutator_check
from .coeff import GaussianRational

__all__ = [
    "FAMILIES",
    "SeminormSpec",
    "VerificationReport",
    "COEFF_POOL",
    "random_element",
    "weight",
    "weight_exact",
    "evaluate",
    "evaluate_exact",
    "check_submultiplicative",
    "check_submultiplicative_pairs",
    "check_stability",
    "check_stability_samples",
    "check_isometry_samples",
    "check_factorial_submultiplicativity",
    "check_equivalence_PQ",
    "check_domination_constants",
    "weyl_obstruction_report",
    "uq_delta_constant",
]

_XY = frozenset({"x", "y"})

# family -> (required generator symbols, accepted built-in names or None)
_SHAPES: dict[str, tuple[frozenset | None, frozenset | None]] = {
    "free_rho": (None, None),
    "qplane_big": (_XY, frozenset({"quantum_plane"})),
    "qplane_small": (_XY, frozenset({"quantum_plane"})),
    "ug_level": (_XY, frozenset({"ug_solvable"})),
    "jordanian_P": (frozenset({"y"}), None),
    "jordanian_Q": (frozenset({"y"}), None),
    "jordanian_full": (_XY, frozenset({"jordanian", "jordanian_ore"})),
    "a0_laurent": (frozenset({"K"}), None),
    "a1_laurent": (frozenset({"K", "F"}), None),
    "uq_full": (frozenset({"K", "F", "E"}), None),
}
FAMILIES = tuple(_SHAPES)
_BUILTIN_NAMES = frozenset({"quantum_plane", "jordanian", "ug_solvable", "uq_sl2", "weyl", "usl2", "jordanian_ore"})


def _positive_fraction(x, what: str) -> Fraction:
    if isinstance(x, float):
        # decimal reading, so 0.1 means 1/10
        x = repr(x)
    value = Fraction(x)
    if value <= 0:
        raise ValueError(f"{what} must be positive")
    return value


@dataclass(frozen=True)
class SeminormSpec:
    """A family name with its parameters; ``rho`` is stored exactly."""

    family: str
    rho: Fraction
    q_abs: Fraction | None = None
    level_n: int | None = None

    def __init__(self, family: str, rho, q_abs=None, level_n: int | None = None):
        if family not in _SHAPES:
            raise ValueError(f"unknown seminorm family {family!r}; expected one of {', '.join(FAMILIES)}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "rho", _positive_fraction(rho, "rho"))
        if (family == "ug_level") != (level_n is not None):
            raise ValueError("level_n is required for ug_level and only for it")
        if level_n is not None and level_n < 0:
            raise ValueError("level_n must be nonnegative")
        object.__setattr__(self, "level_n", level_n)
        if (family == "qplane_small") != (q_abs is not None):
            raise ValueError("q_abs is required for qplane_small and only for it")
        if q_abs is not None:
            q_abs = Fraction(q_abs) if not isinstance(q_abs, str) else Fraction(q_abs)
            if q_abs < 0:
                raise ValueError("q_abs must be nonnegative")
        object.__setattr__(self, "q_abs", q_abs)

    def with_rho(self, rho) -> SeminormSpec:
        return SeminormSpec(self.family, rho, self.q_abs, self.level_n)

    def to_dict(self) -> dict:
        out = {"family": self.family, "rho": str(self.rho)}
        if self.q_abs is not None:
            out["q_abs"] = str(self.q_abs)
        if self.level_n is not None:
            out["level_n"] = self.level_n
        return out


@dataclass
class VerificationReport:
    suite: str
    trials: int
    passed: bool
    max_ratio: float
    witness: dict | None = None
    parameters: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "passed": self.passed,
            "max_ratio": _json_float(self.max_ratio),
            "parameters": self.parameters,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.suite}: trials={self.trials} max_ratio={self.max_ratio:.12g}"


def _json_float(x: float):
    if math.isinf(x):
        return "inf"
    if math.isnan(x):
        return "nan"
    return x


# -- weights ----------------------------------------------------------------------


def _check_shape(spec: SeminormSpec, p: Presentation) -> None:
    symbols, names = _SHAPES[spec.family]
    if spec.family == "free_rho":
        if not p.free:
            raise AlgebraError(f"free_rho needs a free presentation, got {p.name!r}")
        return
    if p.free or frozenset(p.symbols) != symbols:
        raise AlgebraError(f"family {spec.family} does not fit presentation {p.name!r} {list(p.symbols)}")
    if names is not None and p.name in _BUILTIN_NAMES and p.name not in names:
        raise AlgebraError(f"family {spec.family} does not fit presentation {p.name!r}")


def _inv_factorial_shifted(i: int) -> Fraction:
    # 1/(i-1)! with (-1)! := 1
    return Fraction(1, math.factorial(max(i - 1, 0)))


@lru_cache(maxsize=1 << 16)
def _weight_exact(spec: SeminormSpec, exps: tuple[tuple[str, int], ...]) -> Fraction:
    e = dict(exps)
    rho = spec.rho
    fam = spec.family
    if fam == "free_rho":
        return rho ** sum(e.values())
    if fam == "qplane_big":
        return rho ** (e.get("x", 0) + e.get("y", 0))
    if fam == "qplane_small":
        i, j = e.get("x", 0), e.get("y", 0)
        return spec.q_abs ** (i * j) * rho ** (i + j)
    if fam == "ug_level":
        if e.get("y", 0) > spec.level_n:
            return Fraction(0)
        return rho ** e.get("x", 0)
    if fam == "jordanian_P":
        i = e.get("y", 0)
        return rho**i * _inv_factorial_shifted(i)
    if fam == "jordanian_Q":
        i = e.get("y", 0)
        return rho**i / math.factorial(i)
    if fam == "jordanian_full":
        i, j = e.get("x", 0), e.get("y", 0)
        return rho ** (i + j) / math.factorial(j)
    if fam == "a0_laurent":
        return rho ** e.get("K", 0)
    if fam == "a1_laurent":
        return rho ** (e.get("K", 0) + e.get("F", 0))
    if fam == "uq_full":
        return rho ** (e.get("K", 0) + e.get("F", 0) + e.get("E", 0))
    raise AssertionError(fam)


def _exps_of(p: Presentation, key) -> tuple[tuple[str, int], ...]:
    acc: dict[str, int] = {}
    for g, e in p.word_of(key):
        sym = p.generators[g].symbol
        acc[sym] = acc.get(sym, 0) + e
    return tuple(sorted(acc.items()))


def weight_exact(spec: SeminormSpec, monomial: Mapping[str, int]) -> Fraction:
    """Exact weight of the basis monomial with exponents ``{symbol: e}``."""
    for s, e in monomial.items():
        if e < 0 and spec.family not in ("a0_laurent", "a1_laurent", "uq_full"):
            raise AlgebraError(f"negative exponent of {s!r} has no weight in family {spec.family}")
    symbols, _ = _SHAPES[spec.family]
    if symbols is not None and not set(monomial) <= symbols:
        raise AlgebraError(f"monomial {dict(monomial)} does not fit family {spec.family}")
    return _weight_exact(spec, tuple(sorted((s, e) for s, e in monomial.items() if e)))


def weight(spec: SeminormSpec, monomial: Mapping[str, int]) -> float:
    return float(weight_exact(spec, monomial))


@lru_cache(maxsize=1 << 16)
def _weight_float(spec: SeminormSpec, exps) -> float:
    return float(_weight_exact(spec, exps))


def evaluate(spec: SeminormSpec, a: PBWElement) -> float:
    """``sum |c| * weight`` over the PBW expansion of ``a``."""
    p = a.presentation
    _check_shape(spec, p)
    return math.fsum(c.abs_approx() * _weight_float(spec, _exps_of(p, k)) for k, c in a.terms.items())


def evaluate_exact(spec: SeminormSpec, a: PBWElement) -> Fraction | None:
    """The value as a ``Fraction``, or None when some ``|c|`` is irrational."""
    p = a.presentation
    _check_shape(spec, p)
    total = Fraction(0)
    for k, c in a.terms.items():
        s = c.abs_sq()
        rn, rd = math.isqrt(s.numerator), math.isqrt(s.denominator)
        if rn * rn != s.numerator or rd * rd != s.denominator:
            return None
        total += Fraction(rn, rd) * _weight_exact(spec, _exps_of(p, k))
    return total


def evaluate_exact_sq_terms(spec: SeminormSpec, a: PBWElement) -> dict:
    """Per-monomial ``(|c|^2, weight)`` pairs, both exact."""
    p = a.presentation
    _check_shape(spec, p)
    return {k: (c.abs_sq(), _weight_exact(spec, _exps_of(p, k))) for k, c in a.terms.items()}


# -- sampling ---------------------------------------------------------------------------

COEFF_POOL: tuple[GaussianRational, ...] = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(1, 1),
    GaussianRational(Fraction(3, 5), Fraction(4, 5)),
)


def random_element(
    rng: random.Random,
    p: Presentation,
    bounds: Mapping[str, tuple[int, int]],
    *,
    max_terms: int = 4,
    total: tuple[Sequence[str], int] | None = None,
) -> PBWElement:
    """A random nonzero element with exponents drawn uniformly from ``bounds``.

    ``total=(symbols, m)`` additionally requires the absolute exponents of
    ``symbols`` to sum to at most ``m``.  Coefficients come from
    :data:`COEFF_POOL`.
    """
    terms = {}
    nterms = rng.randint(1, max_terms)
    while len(terms) < nterms:
        exps = {s: rng.randint(lo, hi) for s, (lo, hi) in bounds.items()}
        if total is not None and sum(abs(exps[s]) for s in total[0]) > total[1]:
            continue
        (key, _), = p.monomial(exps).items()
        terms[key] = rng.choice(COEFF_POOL)
    return PBWElement(p, terms)


# -- checks -----------------------------------------------------------------------------


def _ratio(num: float, den: float) -> float:
    if den == 0:
        return 0.0 if num == 0 else math.inf
    return num / den


def check_submultiplicative_pairs(
    spec: SeminormSpec,
    pairs: Iterable[tuple[PBWElement, PBWElement]],
    tol: float = 1e-9,
    suite: str = "submultiplicative",
) -> VerificationReport:
    max_ratio, witness, trials = 0.0, None, 0
    for a, b in pairs:
        trials += 1
        lhs = evaluate(spec, a * b)
        rhs = evaluate(spec, a) * evaluate(spec, b)
        r = _ratio(lhs, rhs)
        if r > max_ratio:
            max_ratio = r
            if r > 1 + tol:
                witness = {"a": str(a), "b": str(b), "norm_ab": lhs, "norm_a_norm_b": rhs}
    return VerificationReport(
        suite, trials, max_ratio <= 1 + tol, max_ratio, witness, {**spec.to_dict(), "tol": tol}
    )


def check_submultiplicative(
    spec: SeminormSpec,
    sampler: Callable[[random.Random], tuple[PBWElement, PBWElement]],
    trials: int,
    tol: float = 1e-9,
    *,
    seed: int = 0,
    suite: str = "submultiplicative",
) -> VerificationReport:
    """Check ``||ab|| <= ||a|| ||b||`` on ``trials`` sampled pairs."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    report = check_submultiplicative_pairs(spec, (sampler(rng) for _ in range(trials)), tol, suite)
    report.parameters["seed"] = seed
    return report


def check_stability_samples(
    spec: SeminormSpec,
    op: Callable[[PBWElement], PBWElement],
    bound: Callable[[float], float],
    samples: Iterable[PBWElement],
    tol: float = 1e-9,
    suite: str = "stability",
) -> VerificationReport:
    c = bound(float(spec.rho))
    max_ratio, max_raw, witness, trials = 0.0, 0.0, None, 0
    for a in samples:
        trials += 1
        before = evaluate(spec, a)
        after = evaluate(spec, op(a))
        max_raw = max(max_raw, _ratio(after, before))
        r = _ratio(after, c * before)
        if r > max_ratio:
            max_ratio = r
            if r > 1 + tol:
                witness = {"a": str(a), "norm_op_a": after, "norm_a": before}
    params = {**spec.to_dict(), "tol": tol, "bound": c, "max_raw_ratio": max_raw}
    return VerificationReport(suite, trials, max_ratio <= 1 + tol, max_ratio, witness, params)


def check_stability(
    spec: SeminormSpec,
    op: Callable[[PBWElement], PBWElement],
    bound: Callable[[float], float],
    sampler: Callable[[random.Random], PBWElement],
    trials: int,
    tol: float = 1e-9,
    *,
    seed: int = 0,
    suite: str = "stability",
) -> VerificationReport:
    """Check ``||op(a)|| <= bound(rho) ||a||`` on sampled ``a``.

    ``max_ratio`` is normalised by the bound; the raw ratio is reported
    under ``parameters['max_raw_ratio']``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    report = check_stability_samples(spec, op, bound, (sampler(rng) for _ in range(trials)), tol, suite)
    report.parameters["seed"] = seed
    return report


def check_isometry_samples(
    spec: SeminormSpec,
    op: Callable[[PBWElement], PBWElement],
    samples: Iterable[PBWElement],
    tol: float = 1e-12,
    suite: str = "isometry",
) -> VerificationReport:
    """``op`` rescales each basis monomial by a unit scalar.

    Checked exactly: same support and equal ``|c|^2`` per monomial.  Then
    the float values must agree to relative ``tol``.
    """
    max_dev, witness, trials, exact_bad = 0.0, None, 0, 0
    for a in samples:
        trials += 1
        b = op(a)
        if set(a.terms) != set(b.terms) or any(
            a.terms[k].abs_sq() != b.terms[k].abs_sq() for k in a.terms
        ):
            exact_bad += 1
            if witness is None:
                witness = {"a": str(a), "op_a": str(b)}
        na, nb = evaluate(spec, a), evaluate(spec, b)
        dev = abs(nb - na) / na if na else abs(nb)
        if dev > max_dev:
            max_dev = dev
            if dev > tol and witness is None:
                witness = {"a": str(a), "norm_a": na, "norm_op_a": nb}
    params = {**spec.to_dict(), "tol": tol, "exact_mismatches": exact_bad, "max_relative_deviation": max_dev}
    return VerificationReport(suite, trials, exact_bad == 0 and max_dev <= tol, 1.0 + max_dev, witness, params)


def check_factorial_submultiplicativity(rho, kmax: int = 20) -> VerificationReport:
    """Exact ``||y^(k+l)|| <= ||y^k|| ||y^l||`` for the jordanian_P weights."""
    spec = SeminormSpec("jordanian_P", rho)
    max_ratio, witness = Fraction(0), None
    for k in range(kmax + 1):
        wk = weight_exact(spec, {"y": k})
        for l in range(kmax + 1):
            lhs = weight_exact(spec, {"y": k + l})
            rhs = wk * weight_exact(spec, {"y": l})
            r = lhs / rhs
            if r > max_ratio:
                max_ratio = r
                if r > 1:
                    witness = {"k": k, "l": l}
    return VerificationReport(
        "factorial_submultiplicativity",
        (kmax + 1) ** 2,
        max_ratio <= 1,
        float(max_ratio),
        witness,
        {**spec.to_dict(), "kmax": kmax, "exact": True},
    )


def check_equivalence_PQ(rho_grid: Sequence, degree: int) -> VerificationReport:
    """Exact check of ``Q_rho <= P_rho`` and ``P_rho <= Q_(2 rho)`` on y^i."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    max_ratio, witness, trials = Fraction(0), None, 0
    for rho in rho_grid:
        rho = _positive_fraction(rho, "rho")
        P = SeminormSpec("jordanian_P", rho)
        Q = SeminormSpec("jordanian_Q", rho)
        Q2 = SeminormSpec("jordanian_Q", 2 * rho)
        for i in range(degree + 1):
            trials += 1
            m = {"y": i}
            wp, wq, wq2 = weight_exact(P, m), weight_exact(Q, m), weight_exact(Q2, m)
            for name, r in (("Q<=P", wq / wp), ("P<=Q(2rho)", wp / wq2)):
                if r > max_ratio:
                    max_ratio = r
                    if r > 1:
                        witness = {"i": i, "rho": str(rho), "inequality": name}
    return VerificationReport(
        "pq_equivalence",
        trials,
        max_ratio <= 1,
        float(max_ratio),
        witness,
        {"rho_grid": [str(Fraction(r)) for r in rho_grid], "degree": degree, "exact": True},
    )


def check_domination_constants(C, norm_y, jmax: int = 30) -> VerificationReport:
    """The two inequalities behind dominating a delta-stable seminorm.

    For ``C >= 1`` and ``rho = C * max(norm_y, 1)``:
    ``C^j norm_y / j! <= rho^j / j! <= rho^(j+1) / j!`` for ``1 <= j <= jmax``,
    and ``norm_y <= D * rho`` with ``D = max(norm_y / rho, 1)``.
    """
    C = Fraction(C)
    ny = Fraction(norm_y)
    if C < 1 or ny < 0:
        raise ValueError("need C >= 1 and norm_y >= 0")
    rho = C * max(ny, Fraction(1))
    max_ratio, witness = Fraction(0), None
    for j in range(1, jmax + 1):
        f = math.factorial(j)
        a, b, c = C**j * ny / f, rho**j / f, rho ** (j + 1) / f
        for r in (a / b if b else Fraction(0), b / c):
            if r > max_ratio:
                max_ratio = r
                if r > 1:
                    witness = {"j": j}
    D = max(ny / rho, Fraction(1))
    r0 = ny / (D * rho)
    max_ratio = max(max_ratio, r0)
    return VerificationReport(
        "domination_constants",
        jmax + 1,
        max_ratio <= 1,
        float(max_ratio),
        witness,
        {"C": str(C), "norm_y": str(ny), "rho": str(rho), "D": str(D), "jmax": jmax},
    )


def weyl_obstruction_report(norm_x, norm_d, *, verify_limit: int = 1000) -> VerificationReport:
    """Smallest n with n > 2 ||x|| ||d||.

    With ``[d, x^n] = n x^(n-1)`` a submultiplicative seminorm would give
    ``n ||x^(n-1)|| <= 2 ||d|| ||x|| ||x^(n-1)||``, impossible for this n
    unless ``||x^(n-1)|| = 0``.  The identity itself is re-derived by the
    rewriting engine when ``n <= verify_limit``.
    """
    nx = _positive_fraction(norm_x, "norm_x")
    nd = _positive_fraction(norm_d, "norm_d")
    bound = 2 * nx * nd
    n = math.floor(bound) + 1
    identity_checked = n <= verify_limit
    if identity_checked:
        weyl_commutator_check(n)
    passed = n > bound and (n - 1) <= bound
    return VerificationReport(
        "weyl_obstruction",
        1,
        passed,
        float(bound / n),
        {"n": n},
        {"norm_x": str(norm_x), "norm_d": str(norm_d), "bound": str(bound), "identity_checked": identity_checked},
    )


def uq_delta_constant(q) -> float:
    """``C = 2 / |(q - q^-1)(1 - q^-2)|``."""
    z = complex(q)
    return 2.0 / abs((z - 1 / z) * (1 - z**-2))
