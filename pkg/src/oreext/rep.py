"""Finite-dimensional sl2 irreducibles and the truncated envelope map.

Matrices are numpy object arrays of :class:`GaussianRational`, so every
product is exact.  The irreducible of dimension ``d`` uses the basis
``e_0, ..., e_(d-1)`` with

    H e_k = (d - 1 - 2k) e_k,   E e_k = k (d - k) e_(k-1),   F e_k = e_(k+1).

:func:`envelope_map` sends an element of U(sl2), in the basis F^a H^b E^c,
to its images in the irreducibles of highest weight 0..lambda_max.  An
optional polynomial in K is sent to its values at K = 1 and K = -1, the two
characters of C[K]/(K^2 - 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import AlgebraError, PBWElement, Presentation, builtin
from .coeff import ONE, ZERO, GaussianRational, Scalar, as_scalar

__all__ = [
    "Irrep",
    "EnvelopeImage",
    "irrep",
    "relation_defects",
    "relations_hold",
    "envelope_map",
    "monomial_entries",
    "eval_k_poly",
    "k_poly_mul",
    "casimir",
    "is_scalar_matrix",
    "zero_matrix",
    "identity_matrix",
]


def zero_matrix(d: int) -> np.ndarray:
    return np.full((d, d), ZERO, dtype=object)


def identity_matrix(d: int) -> np.ndarray:
    m = zero_matrix(d)
    for k in range(d):
        m[k, k] = ONE
    return m


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b


def _equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _is_zero(a: np.ndarray) -> bool:
    return all(not x for x in a.flat)


def is_scalar_matrix(a: np.ndarray) -> bool:
    d = a.shape[0]
    return _equal(a, identity_matrix(d) * a[0, 0]) if d else True


@dataclass(frozen=True, eq=False)
class Irrep:
    dim: int
    E: np.ndarray
    F: np.ndarray
    H: np.ndarray

    def matrix(self, symbol: str) -> np.ndarray:
        return {"E": self.E, "F": self.F, "H": self.H}[symbol]


@lru_cache(maxsize=None)
def irrep(d: int) -> Irrep:
    """The irreducible sl2 representation of dimension ``d``."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    E, F, H = zero_matrix(d), zero_matrix(d), zero_matrix(d)
    for k in range(d):
        H[k, k] = GaussianRational(d - 1 - 2 * k)
        if k >= 1:
            E[k - 1, k] = GaussianRational(k * (d - k))
        if k + 1 < d:
            F[k + 1, k] = ONE
    for m in (E, F, H):
        m.flags.writeable = False
    return Irrep(d, E, F, H)


def relation_defects(rep: Irrep) -> dict[str, np.ndarray]:
    """``[E,F] - H``, ``[H,E] - 2E`` and ``[H,F] + 2F``; all zero for an sl2 rep."""
    E, F, H = rep.E, rep.F, rep.H

    def br(a, b):
        return _matmul(a, b) - _matmul(b, a)

    return {"[E,F]-H": br(E, F) - H, "[H,E]-2E": br(H, E) - 2 * E, "[H,F]+2F": br(H, F) + 2 * F}


def relations_hold(rep: Irrep) -> bool:
    return all(_is_zero(m) for m in relation_defects(rep).values())


# -- envelope map ------------------------------------------------------------------


@lru_cache(maxsize=1 << 14)
def monomial_entries(d: int, a: int, b: int, c: int) -> tuple[tuple[int, int, int], ...]:
    """Nonzero entries ``(row, col, value)`` of F^a H^b E^c in dimension ``d``.

    On ``e_k`` the word acts as ``E^c`` (down to ``e_(k-c)``), then ``H^b``,
    then ``F^a``, so each column holds at most one entry.
    """
    out = []
    for k in range(c, d):
        value = 1
        for t in range(c):
            value *= (k - t) * (d - k + t)
        j = k - c
        value *= (d - 1 - 2 * j) ** b
        if value and j + a < d:
            out.append((j + a, k, value))
    return tuple(out)


def _check_usl2(p: Presentation) -> None:
    if p.free or p.symbols != ("F", "H", "E"):
        raise AlgebraError(f"envelope_map needs U(sl2) in the basis F^a H^b E^c, got {p.name!r}")


def eval_k_poly(coeffs: Sequence[Scalar]) -> tuple[GaussianRational, GaussianRational]:
    """``(p(1), p(-1))`` for ``p = sum coeffs[j] K^j``."""
    cs = [as_scalar(c) for c in coeffs]
    plus = sum(cs, ZERO)
    minus = sum((c if j % 2 == 0 else -c for j, c in enumerate(cs)), ZERO)
    return plus, minus


def k_poly_mul(a: Sequence[Scalar], b: Sequence[Scalar]) -> list[GaussianRational]:
    """Product of two polynomials in K, reduced modulo K^2 - 1 to ``[c0, c1]``."""
    out = [ZERO, ZERO]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[(i + j) % 2] = out[(i + j) % 2] + as_scalar(x) * as_scalar(y)
    return out


@dataclass(frozen=True, eq=False)
class EnvelopeImage:
    lambda_max: int
    blocks: tuple[np.ndarray, ...]
    k_component: tuple[GaussianRational, GaussianRational] | None = None

    def __post_init__(self):
        if len(self.blocks) != self.lambda_max + 1:
            raise ValueError("need one block per highest weight 0..lambda_max")
        for lam, b in enumerate(self.blocks):
            if b.shape != (lam + 1, lam + 1):
                raise ValueError(f"block {lam} has shape {b.shape}")

    def __eq__(self, other):
        if not isinstance(other, EnvelopeImage):
            return NotImplemented
        return (
            self.lambda_max == other.lambda_max
            and self.k_component == other.k_component
            and all(_equal(a, b) for a, b in zip(self.blocks, other.blocks))
        )

    def __mul__(self, other: EnvelopeImage) -> EnvelopeImage:
        if self.lambda_max != other.lambda_max:
            raise ValueError("lambda_max differs")
        if (self.k_component is None) != (other.k_component is None):
            raise ValueError("only one side carries a K component")
        k = None
        if self.k_component is not None:
            k = tuple(x * y for x, y in zip(self.k_component, other.k_component))
        return EnvelopeImage(self.lambda_max, tuple(_matmul(a, b) for a, b in zip(self.blocks, other.blocks)), k)

    def to_dict(self) -> dict:
        out = {
            "lambda_max": self.lambda_max,
            "blocks": [[[str(x) for x in row] for row in b] for b in self.blocks],
        }
        if self.k_component is not None:
            out["k_component"] = [str(x) for x in self.k_component]
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def envelope_map(u: PBWElement, lambda_max: int, k_poly: Sequence[Scalar] | None = None) -> EnvelopeImage:
    """Images of ``u`` (times ``k_poly`` when given) in the irreducibles up to ``lambda_max``."""
    if not isinstance(lambda_max, int) or lambda_max < 0:
        raise ValueError("lambda_max must be a nonnegative integer")
    if not isinstance(u, PBWElement):
        raise AlgebraError("envelope_map needs a PBWElement")
    p = u.presentation
    _check_usl2(p)
    if any(min(key) < 0 for key in u.terms):
        raise AlgebraError("negative exponent in U(sl2)")
    blocks = []
    for lam in range(lambda_max + 1):
        d = lam + 1
        acc = zero_matrix(d)
        for (a, b, c), coeff in u.terms.items():
            for row, col, value in monomial_entries(d, a, b, c):
                acc[row, col] = acc[row, col] + coeff * value
        blocks.append(acc)
    k = eval_k_poly(k_poly) if k_poly is not None else None
    return EnvelopeImage(lambda_max, tuple(blocks), k)


def casimir() -> PBWElement:
    """``EF + FE + H^2/2`` in U(sl2)."""
    return builtin("usl2").parse("E*F + F*E + 1/2*H^2")
