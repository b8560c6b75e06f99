"""Ore extensions R[z; alpha, delta] and the S_{n,k} calculus.

Elements of an Ore extension are written with coefficients on the left,
``sum r_j z^j``, so :func:`combined_presentation` orders the base
generators before ``z``.  For the Jordanian plane this is the opposite of
the ``x^i y^j`` display basis used by ``builtin('jordanian')``;
:func:`oreext.algebra.convert` moves between the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .algebra import (
    AlgebraError,
    Derivation,
    Endomorphism,
    PBWElement,
    Presentation,
    laurent_ring,
    polynomial_ring,
)
from .coeff import GaussianRational, Scalar, as_scalar
from .expr import Generator

__all__ = [
    "OreData",
    "TruncatedSeries",
    "combined_presentation",
    "lift",
    "snk_words",
    "snk_summands",
    "snk_enumerate",
    "snk_pascal",
    "snk_row",
    "commute_zn",
    "commute_zn_element",
    "jordanian_ore",
    "uq_tower",
    "uq_a1_lowering_first",
    "uq_delta_closed_form",
    "uq_delta_bruteforce",
    "truncate",
    "series_mul",
    "endomorphism_defect",
    "leibniz_defect",
]


@dataclass(eq=False)
class OreData:
    """Base algebra, new variable ``z``, and the pair (alpha, delta)."""

    base: Presentation
    z: str
    alpha: Endomorphism
    delta: Derivation
    name: str | None = None
    _combined: Presentation | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.alpha.presentation != self.base or self.delta.presentation != self.base:
            raise AlgebraError("alpha and delta must act on the base presentation")
        if self.delta.alpha is not self.alpha:
            raise AlgebraError("delta must be an alpha-derivation for this alpha")
        if self.base.free:
            raise AlgebraError("the base of an Ore extension must have a PBW order")
        if self.z in self.base.symbols:
            raise AlgebraError(f"{self.z!r} already names a base generator")

    @property
    def presentation(self) -> Presentation:
        if self._combined is None:
            self._combined = combined_presentation(self)
        return self._combined


def lift(a: PBWElement, d: OreData, z_power: int = 0) -> PBWElement:
    """``a * z^z_power`` in the extension, for ``a`` in the base."""
    if a.presentation != d.base:
        raise AlgebraError("element is not in the base algebra")
    return PBWElement._raw(d.presentation, {k + (z_power,): c for k, c in a.terms.items()})


def combined_presentation(d: OreData) -> Presentation:
    """R[z; alpha, delta] as a rewriting system with ``z r -> alpha(r) z + delta(r)``."""
    base = d.base
    zi = base.ngens
    rules = {}
    for (a, b), rhs in base.rules.items():
        rules[(a, b)] = [(k + (0,), c) for k, c in rhs]
    for g, gen in enumerate(base.generators):
        for s in ((1, -1) if gen.laurent else (1,)):
            letter = (g, s)
            rhs = [(k + (1,), c) for k, c in d.alpha.on_letter(letter).items()]
            rhs += [(k + (0,), c) for k, c in d.delta.on_letter(letter).items()]
            rules[((zi, 1), letter)] = rhs
    name = d.name or f"{base.name}[{d.z}]"
    return Presentation(
        name,
        [*base.generators, Generator(d.z)],
        rules,
        q=base.q,
        grading=(*base.grading, 1),
    )


# -- S_{n,k} ----------------------------------------------------------------------


def _check_nk(n: int, k: int) -> None:
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")


def snk_words(n: int, k: int) -> Iterator[tuple[str, ...]]:
    """All words of length n over {'a', 'd'} with exactly k letters 'd'."""
    _check_nk(n, k)
    for positions in itertools.combinations(range(n), k):
        word = ["a"] * n
        for p in positions:
            word[p] = "d"
        yield tuple(word)


def snk_summands(n: int, k: int, r: PBWElement, d: OreData) -> list[tuple[tuple[str, ...], PBWElement]]:
    """Each composition ``w1 o ... o wn`` applied to ``r``, uncollected.

    The rightmost letter acts first.
    """
    out = []
    for word in snk_words(n, k):
        value = r
        for letter in reversed(word):
            value = d.alpha(value) if letter == "a" else d.delta(value)
        out.append((word, value))
    return out


def snk_enumerate(n: int, k: int, r: PBWElement, d: OreData) -> PBWElement:
    total = d.base.zero()
    for _, value in snk_summands(n, k, r, d):
        total = total + value
    return total


def snk_row(n: int, r: PBWElement, d: OreData) -> list[PBWElement]:
    """``[S_{n,0}(r), ..., S_{n,n}(r)]`` by the first-letter recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [r]
    for m in range(1, n + 1):
        zero = d.base.zero()
        nxt = []
        for k in range(m + 1):
            term = d.alpha(row[k]) if k < m else zero
            if k > 0:
                term = term + d.delta(row[k - 1])
            nxt.append(term)
        row = nxt
    return row


def snk_pascal(n: int, k: int, r: PBWElement, d: OreData) -> PBWElement:
    _check_nk(n, k)
    return snk_row(n, r, d)[k]


def commute_zn(n: int, r: PBWElement, d: OreData) -> list[tuple[PBWElement, int]]:
    """``z^n r`` as ``[(S_{n,k}(r), n - k) for k in 0..n]``."""
    return [(s, n - k) for k, s in enumerate(snk_row(n, r, d))]


def commute_zn_element(n: int, r: PBWElement, d: OreData) -> PBWElement:
    total = d.presentation.zero()
    for s, power in commute_zn(n, r, d):
        total = total + lift(s, d, power)
    return total


# -- sampled structural checks ------------------------------------------------------


def endomorphism_defect(alpha: Endomorphism, a: PBWElement, b: PBWElement) -> PBWElement:
    return alpha(a * b) - alpha(a) * alpha(b)


def leibniz_defect(delta: Derivation, a: PBWElement, b: PBWElement) -> PBWElement:
    return delta(a * b) - (delta(a) * b + delta.alpha(a) * delta(b))


# -- concrete towers ------------------------------------------------------------------


@lru_cache(maxsize=None)
def jordanian_ore() -> OreData:
    """C[y][x; id, -y^2 d/dy]."""
    base = polynomial_ring("y")
    alpha = Endomorphism(base)
    delta = Derivation(base, alpha, {"y": base.gen("y", 2).scale(-1)})
    return OreData(base, "x", alpha, delta, name="jordanian_ore")


def _uq_q(q: Scalar | str) -> GaussianRational:
    q = as_scalar(q)
    if not q.is_unit():
        raise AlgebraError(f"q must satisfy |q| = 1 exactly, got |q|^2 = {q.abs_sq()}")
    if q == 1 or q == -1:
        raise AlgebraError("q = 1 and q = -1 are excluded")
    return q


@lru_cache(maxsize=None)
def _uq_tower(q: GaussianRational) -> tuple[OreData, OreData]:
    a0 = laurent_ring("K")
    q2, qm2 = q**2, q**-2
    alpha0 = Endomorphism(a0, {"K": a0.gen("K").scale(q2), "K^-1": a0.gen("K", -1).scale(qm2)})
    delta0 = Derivation(a0, alpha0, {"K": 0, "K^-1": 0})
    t1 = OreData(a0, "F", alpha0, delta0, name="A1")
    a1 = t1.presentation
    c = (q - q.inverse()).inverse()
    alpha1 = Endomorphism(
        a1,
        {"K": a1.gen("K").scale(qm2), "K^-1": a1.gen("K", -1).scale(q2), "F": a1.gen("F")},
    )
    delta_f = (a1.gen("K") - a1.gen("K", -1)).scale(c)
    delta1 = Derivation(a1, alpha1, {"K": 0, "K^-1": 0, "F": delta_f})
    t2 = OreData(a1, "E", alpha1, delta1, name="A2")
    return t1, t2


def uq_tower(q: Scalar | str) -> tuple[OreData, OreData]:
    """(A1 over A0, A2 over A1) with A0 = C[K, K^-1] and A2 = U_q(sl2)."""
    return _uq_tower(_uq_q(q))


@lru_cache(maxsize=None)
def _uq_a1_lowering_first(q: GaussianRational) -> Presentation:
    gens = [Generator("F"), Generator("K", True)]
    F, K, Ki = (0, 1), (1, 1), (1, -1)
    rules = {
        (K, F): [((1, 1), q**-2)],
        (Ki, F): [((1, -1), q**2)],
        (K, Ki): [((0, 0), 1)],
        (Ki, K): [((0, 0), 1)],
    }
    return Presentation("A1_FK", gens, rules, q=q)


def uq_a1_lowering_first(q: Scalar | str) -> Presentation:
    """A1 with the opposite PBW order, basis F^n K^i."""
    return _uq_a1_lowering_first(_uq_q(q))


def _require_q4(q: GaussianRational) -> None:
    if q**4 == 1:
        raise AlgebraError(
            "closed form divides by 1 - q^(+-2), which vanishes for q^4 = 1; "
            "use uq_delta_bruteforce instead"
        )


def uq_delta_closed_form(i: int, n: int, q: Scalar | str) -> PBWElement:
    """delta(K^i F^n) in A1 from the summed geometric series."""
    q = _uq_q(q)
    t1, _ = uq_tower(q)
    a1 = t1.presentation
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return a1.zero()
    _require_q4(q)
    qi = q.inverse()
    c = (q - qi).inverse()
    plus = (1 - q ** (-2 * n)) / (1 - q**-2)
    minus = (1 - q ** (2 * n)) / (1 - q**2)
    bracket = a1.gen("K").scale(plus) - a1.gen("K", -1).scale(minus)
    prefix = a1.gen("F", n - 1) * a1.gen("K", i)
    return (prefix * bracket).scale(q ** (-2 * i * n) * c)


def uq_delta_bruteforce(i: int, n: int, q: Scalar | str) -> PBWElement:
    """delta(K^i F^n) summed term by term, valid for every admissible q."""
    q = _uq_q(q)
    t1, _ = uq_tower(q)
    a1 = t1.presentation
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = (q - q.inverse()).inverse()
    total = a1.zero()
    for j in range(n):
        shift = q ** (-2 * j)
        # delta_{q^-2j K}(F) = (q^-2j K - q^2j K^-1) / (q - q^-1)
        d_f = (a1.gen("K").scale(shift) - a1.gen("K", -1).scale(shift.inverse())).scale(c)
        total = total + a1.gen("F", n - 1) * d_f * a1.gen("K", i)
    return total.scale(q ** (-2 * i * n))


# -- truncated series -------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """A finite section of a power series: terms of grade <= ``cap``.

    ``exact`` is True when ``element`` is a polynomial known in full.
    """

    element: PBWElement
    cap: int
    exact: bool = True

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")
        p = self.element.presentation
        if any(p.grade(k) > self.cap for k in self.element.terms):
            raise ValueError("element has terms above the cap")


def truncate(a: PBWElement, cap: int, exact: bool = True) -> TruncatedSeries:
    p = a.presentation
    kept = {k: c for k, c in a.terms.items() if p.grade(k) <= cap}
    return TruncatedSeries(PBWElement._raw(p, kept), cap, exact and len(kept) == len(a.terms))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Multiply and keep grades up to ``min(cap_a, cap_b)``.

    Rules never raise the grade, so every retained term of the product of two
    exact polynomials is exact.  When a rule lowers the grade (``E*F`` in
    U_q(sl2)) terms already cut from a non-exact input could have
    contributed, which is why ``exact`` is propagated.
    """
    product = a.element * b.element
    return truncate(product, min(a.cap, b.cap), a.exact and b.exact)
