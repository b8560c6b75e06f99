"""Presentations, PBW normal ordering and exact PBW arithmetic.

A :class:`Presentation` lists generators in their PBW order together with
rewrite rules ``b*a -> sum c_w w`` for every pair of letters that occurs out
of order.  Ordered presentations store basis monomials as exponent vectors
(one signed slot per Laurent generator); the free algebra stores plain words.

Normal ordering works letter by letter: a normal monomial is extended by one
letter, and when the junction is out of order the rule for that pair is
applied and the right-hand side is fed back in.  This is the leftmost
reducible pair strategy, since everything to the left of the junction is
already normal, and it lets results be cached per ``(monomial, letter)``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .coeff import ONE, ZERO, GaussianRational, Scalar, as_scalar
from .expr import (
    FreeTerm,
    Generator,
    ParseError,
    canonical_word,
    join_signed,
    parse,
    parse_scalar,
    render_scalar_factor,
    render_word,
    word_sort_key,
)

__all__ = [
    "AlgebraError",
    "RewriteError",
    "FuelExhausted",
    "Presentation",
    "PBWElement",
    "Endomorphism",
    "Derivation",
    "DEFAULT_FUEL",
    "builtin",
    "BUILTIN_NAMES",
    "polynomial_ring",
    "laurent_ring",
    "normal_order",
    "mul",
    "add",
    "scalar_mul",
    "apply_linear_map",
    "convert",
    "weyl_commutator_check",
    "load_presentation",
    "presentation_from_json",
    "presentation_to_json",
]

DEFAULT_FUEL = 10**6

Letter = tuple[int, int]  # (generator index, +1 or -1)
Key = tuple  # exponent vector, or a word of runs for free presentations
Rhs = tuple[tuple[Key, GaussianRational], ...]


class AlgebraError(ValueError):
    pass


class RewriteError(AlgebraError):
    pass


class FuelExhausted(RewriteError):
    pass


class _Fuel:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        if limit <= 0:
            raise ValueError("fuel must be positive")
        self.left = limit
        self.limit = limit

    def burn(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted(f"rewriting did not terminate within {self.limit} rule applications")


def _sign(e: int) -> int:
    return 1 if e > 0 else -1


class Presentation:
    """Generators, their order, and the rewrite rules of an algebra.

    Instances are immutable; the only mutable state is an internal cache of
    normal forms, which is safe because results depend only on the rules.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Generator | tuple[str, bool] | str],
        rules: Mapping[tuple[Letter, Letter], Iterable[tuple[Key, Scalar]]] | None = None,
        *,
        q: Scalar | None = None,
        grading: Sequence[int] | None = None,
        free: bool = False,
    ):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = Generator(g)
            gens.append(Generator(*g))
        symbols = [g.symbol for g in gens]
        if len(set(symbols)) != len(symbols):
            raise AlgebraError(f"duplicate generator symbols in {symbols}")
        if free and any(g.laurent for g in gens):
            raise AlgebraError("free presentations cannot have Laurent generators")
        self.name = name
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.q = None if q is None else as_scalar(q)
        self.free = free
        if grading is None:
            grading = (1,) * len(gens)
        if len(grading) != len(gens) or any(w < 0 for w in grading):
            raise AlgebraError("grading needs one nonnegative weight per generator")
        self.grading: tuple[int, ...] = tuple(int(w) for w in grading)
        self.rules: dict[tuple[Letter, Letter], Rhs] = {}
        for (a, b), rhs in (rules or {}).items():
            self.rules[(a, b)] = tuple(
                (tuple(k), as_scalar(c)) for k, c in rhs if as_scalar(c)
            )
        if free and self.rules:
            raise AlgebraError("free presentations carry no rules")
        self._index = {g.symbol: k for k, g in enumerate(self.generators)}
        self._cache: dict[tuple[Key, Letter], Rhs] = {}
        self._mono_cache: dict[tuple[Key, Key], Rhs] = {}
        for (a, b), rhs in self.rules.items():
            for k, _ in rhs:
                if not self.is_normal_key(k):
                    raise AlgebraError(f"rule {self.letter_text(a)}*{self.letter_text(b)} has a non-normal right-hand side")

    # -- identity -------------------------------------------------------------

    def _ident(self):
        return (self.name, self.generators, self.q, self.free)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self is other or self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        q = f", q={self.q}" if self.q is not None else ""
        return f"Presentation({self.name!r}, {[g.symbol for g in self.generators]}{q})"

    # -- letters and keys -----------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(g.symbol for g in self.generators)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlgebraError(f"unknown generator {symbol!r} in presentation {self.name!r}") from None

    def letter(self, text: str) -> Letter:
        """``'K'`` -> (k, 1); ``'K^-1'`` -> (k, -1)."""
        text = text.replace(" ", "")
        if text.endswith("^-1"):
            g = self.index(text[:-3])
            if not self.generators[g].laurent:
                raise AlgebraError(f"{text!r}: generator is not Laurent")
            return (g, -1)
        return (self.index(text), 1)

    def letter_text(self, letter: Letter) -> str:
        sym = self.generators[letter[0]].symbol
        return sym if letter[1] > 0 else f"{sym}^-1"

    @property
    def unit_key(self) -> Key:
        return () if self.free else (0,) * self.ngens

    def letters(self, key: Key) -> tuple[Letter, ...]:
        out: list[Letter] = []
        if self.free:
            for g, e in key:
                out.extend([(g, 1)] * e)
        else:
            for g, e in enumerate(key):
                if e:
                    out.extend([(g, _sign(e))] * abs(e))
        return tuple(out)

    def word_of(self, key: Key):
        """The key as a word of runs, as used by :mod:`oreext.expr`."""
        if self.free:
            return tuple(key)
        return tuple((g, e) for g, e in enumerate(key) if e)

    def key_of_normal_letters(self, letters: Iterable[Letter]) -> Key:
        if self.free:
            return canonical_word(letters)
        vec = [0] * self.ngens
        for g, s in letters:
            vec[g] += s
        return tuple(vec)

    def is_normal_key(self, key: Key) -> bool:
        if self.free:
            return all(e > 0 for _, e in key)
        if len(key) != self.ngens:
            return False
        return all(e >= 0 or g.laurent for e, g in zip(key, self.generators))

    def grade(self, key: Key) -> int:
        if self.free:
            return sum(self.grading[g] * e for g, e in key)
        return sum(w * abs(e) for w, e in zip(self.grading, key))

    def exponents(self, key: Key) -> dict[str, int]:
        return {self.generators[g].symbol: e for g, e in self.word_of(key)}

    # -- audits ---------------------------------------------------------------

    def required_pairs(self) -> list[tuple[Letter, Letter]]:
        """Every letter pair that is out of order and so needs a rule."""
        if self.free:
            return []
        letters = []
        for g, gen in enumerate(self.generators):
            letters.append((g, 1))
            if gen.laurent:
                letters.append((g, -1))
        pairs = []
        for a in letters:
            for b in letters:
                if a[0] > b[0] or (a[0] == b[0] and a[1] != b[1]):
                    pairs.append((a, b))
        return pairs

    def missing_rules(self) -> list[str]:
        return [
            f"{self.letter_text(a)}*{self.letter_text(b)}"
            for a, b in self.required_pairs()
            if (a, b) not in self.rules
        ]

    def grading_violations(self) -> list[str]:
        bad = []
        for (a, b), rhs in self.rules.items():
            lhs = self.grading[a[0]] + self.grading[b[0]]
            for k, _ in rhs:
                if self.grade(k) > lhs:
                    bad.append(f"{self.letter_text(a)}*{self.letter_text(b)}")
                    break
        return bad

    # -- the rewriting engine -------------------------------------------------

    def times_letter(self, key: Key, letter: Letter, fuel: _Fuel) -> Rhs:
        """Normal form of ``monomial(key) * letter``."""
        cached = self._cache.get((key, letter))
        if cached is not None:
            return cached
        g, s = letter
        if self.free:
            result = ((canonical_word(key + ((g, 1),)), ONE),)
            self._cache[(key, letter)] = result
            return result
        last = self.ngens - 1
        while last >= 0 and key[last] == 0:
            last -= 1
        if last < g or (last == g and _sign(key[last]) == s):
            new = list(key)
            new[g] += s
            result = ((tuple(new), ONE),)
        else:
            top = (last, _sign(key[last]))
            rhs = self.rules.get((top, letter))
            if rhs is None:
                raise RewriteError(
                    f"no rule for {self.letter_text(top)}*{self.letter_text(letter)} in {self.name!r}"
                )
            fuel.burn()
            prefix = list(key)
            prefix[last] -= top[1]
            prefix = tuple(prefix)
            acc: dict[Key, GaussianRational] = {}
            for rk, rc in rhs:
                for k, c in self.times_letters(prefix, self.letters(rk), fuel):
                    _accumulate(acc, k, rc * c)
            result = tuple(acc.items())
        self._cache[(key, letter)] = result
        return result

    def times_letters(self, key: Key, letters: Sequence[Letter], fuel: _Fuel) -> Rhs:
        current: dict[Key, GaussianRational] = {key: ONE}
        for letter in letters:
            nxt: dict[Key, GaussianRational] = {}
            for k, c in current.items():
                for k2, c2 in self.times_letter(k, letter, fuel):
                    _accumulate(nxt, k2, c * c2)
            current = nxt
        return tuple(current.items())

    def mono_mul(self, k1: Key, k2: Key, fuel: _Fuel) -> Rhs:
        cached = self._mono_cache.get((k1, k2))
        if cached is None:
            cached = self.times_letters(k1, self.letters(k2), fuel)
            self._mono_cache[(k1, k2)] = cached
        return cached

    # -- element constructors -------------------------------------------------

    def zero(self) -> PBWElement:
        return PBWElement(self, {})

    def one(self) -> PBWElement:
        return PBWElement(self, {self.unit_key: ONE})

    def scalar(self, c: Scalar) -> PBWElement:
        return PBWElement(self, {self.unit_key: c})

    def gen(self, symbol: str, power: int = 1) -> PBWElement:
        return self.monomial({symbol: power})

    def monomial(self, exponents: Mapping[str, int] | Sequence[int], c: Scalar = 1) -> PBWElement:
        """A basis monomial from ``{'K': -2, 'F': 1}`` or an exponent vector."""
        if isinstance(exponents, Mapping):
            if self.free:
                key = canonical_word((self.index(s), e) for s, e in exponents.items())
            else:
                vec = [0] * self.ngens
                for s, e in exponents.items():
                    vec[self.index(s)] = e
                key = tuple(vec)
        else:
            key = tuple(exponents)
        return PBWElement(self, {key: c})

    def parse(self, text: str, fuel: int = DEFAULT_FUEL) -> PBWElement:
        return normal_order(parse(text, self), self, fuel=fuel)

    def __call__(self, text: str) -> PBWElement:
        return self.parse(text)


def _accumulate(acc: dict, key, c) -> None:
    total = acc.get(key, ZERO) + c
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


class PBWElement:
    """A finite linear combination of PBW basis monomials."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: Mapping[Key, Scalar] | Iterable[tuple[Key, Scalar]] = ()):
        self.presentation = presentation
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, GaussianRational] = {}
        for k, c in items:
            k = tuple(k)
            if not presentation.is_normal_key(k):
                raise AlgebraError(f"{k} is not a basis monomial of {presentation.name!r}")
            _accumulate(acc, k, as_scalar(c))
        self.terms = acc

    @classmethod
    def _raw(cls, presentation: Presentation, terms: dict) -> PBWElement:
        obj = cls.__new__(cls)
        obj.presentation = presentation
        obj.terms = terms
        return obj

    # -- container protocol ---------------------------------------------------

    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator[tuple[Key, GaussianRational]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, key: Key | Mapping[str, int]) -> GaussianRational:
        if isinstance(key, Mapping):
            (key, _), = self.presentation.monomial(key).items()
        return self.terms.get(tuple(key), ZERO)

    def support(self) -> list[Key]:
        return list(self.terms)

    def max_grade(self) -> int:
        return max((self.presentation.grade(k) for k in self.terms), default=0)

    def is_scalar(self) -> bool:
        return all(k == self.presentation.unit_key for k in self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: PBWElement) -> None:
        if self.presentation != other.presentation:
            raise AlgebraError(
                f"presentation mismatch: {self.presentation.name!r} vs {other.presentation.name!r}"
            )

    def _lift(self, other) -> PBWElement:
        if isinstance(other, PBWElement):
            self._check(other)
            return other
        return self.presentation.scalar(as_scalar(other))

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return PBWElement._raw(self.presentation, acc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return PBWElement._raw(self.presentation, {k: -c for k, c in self.terms.items()})

    def scale(self, c: Scalar) -> PBWElement:
        c = as_scalar(c)
        if not c:
            return self.presentation.zero()
        return PBWElement._raw(self.presentation, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> PBWElement:
        if n < 0:
            raise AlgebraError("negative powers of PBW elements are not defined")
        result = self.presentation.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.presentation == other.presentation and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)):
            return self.terms == self.presentation.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.presentation, frozenset(self.terms.items())))

    # -- rendering ------------------------------------------------------------

    def to_term(self) -> FreeTerm:
        p = self.presentation
        return FreeTerm(p, [(p.word_of(k), c) for k, c in self.terms.items()])

    def sorted_items(self) -> list[tuple[Key, GaussianRational]]:
        p = self.presentation
        return sorted(self.terms.items(), key=lambda kc: word_sort_key(p.word_of(kc[0])))

    def __str__(self):
        p = self.presentation
        return join_signed(
            [render_scalar_factor(c, render_word(p.word_of(k), p), p) for k, c in self.sorted_items()]
        )

    def __repr__(self):
        return f"PBWElement({self.presentation.name!r}, {str(self)!r})"


# -- operations -----------------------------------------------------------------


def normal_order(term: FreeTerm, p: Presentation, *, fuel: int = DEFAULT_FUEL) -> PBWElement:
    """Rewrite ``term`` into the PBW basis of ``p``."""
    gens = term.alphabet.generators
    if tuple(g.symbol for g in gens) == p.symbols:
        remap = list(range(p.ngens))
    else:
        remap = [p.index(g.symbol) for g in gens]
    budget = _Fuel(fuel)
    acc: dict[Key, GaussianRational] = {}
    try:
        for word, c in term.items():
            letters = []
            for g, e in word:
                g2 = remap[g]
                if e < 0 and not p.generators[g2].laurent:
                    raise AlgebraError(f"negative power of non-Laurent generator {p.generators[g2].symbol!r}")
                letters.extend([(g2, _sign(e))] * abs(e))
            for k, v in p.times_letters(p.unit_key, letters, budget):
                _accumulate(acc, k, c * v)
    except RecursionError:
        raise FuelExhausted("rewriting recursion too deep; the rule set may not terminate") from None
    return PBWElement._raw(p, acc)


def mul(a: PBWElement, b: PBWElement, *, fuel: int = DEFAULT_FUEL) -> PBWElement:
    a._check(b)
    p = a.presentation
    budget = _Fuel(fuel)
    acc: dict[Key, GaussianRational] = {}
    try:
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                c12 = c1 * c2
                for k, v in p.mono_mul(k1, k2, budget):
                    _accumulate(acc, k, c12 * v)
    except RecursionError:
        raise FuelExhausted("rewriting recursion too deep; the rule set may not terminate") from None
    return PBWElement._raw(p, acc)


def add(a: PBWElement, b: PBWElement) -> PBWElement:
    return a + b


def scalar_mul(c: Scalar, a: PBWElement) -> PBWElement:
    return a.scale(c)


def convert(a: PBWElement, target: Presentation, *, fuel: int = DEFAULT_FUEL) -> PBWElement:
    """Re-express ``a`` in ``target``, matching generators by symbol.

    Each basis monomial of ``a`` is read as a word and normal-ordered in
    ``target``; this both embeds subalgebras and switches PBW orientation.
    """
    src = a.presentation
    terms = [(src.word_of(k), c) for k, c in a.terms.items()]
    return normal_order(FreeTerm(src, terms), target, fuel=fuel)


# -- linear maps given on generators ------------------------------------------


def _image_table(p: Presentation, images: Mapping) -> dict[Letter, PBWElement]:
    table = {}
    for key, img in images.items():
        letter = p.letter(key) if isinstance(key, str) else tuple(key)
        if isinstance(img, str):
            img = p.parse(img)
        elif not isinstance(img, PBWElement):
            img = p.scalar(img)
        if img.presentation != p:
            raise AlgebraError("image lies in a different presentation")
        table[letter] = img
    return table


class Endomorphism:
    """An algebra endomorphism fixed by its values on letters.

    ``images`` maps ``'K'``/``'K^-1'`` (or letters) to elements; letters left
    out are fixed.  With no images this is the identity.
    """

    def __init__(self, presentation: Presentation, images: Mapping | None = None):
        self.presentation = presentation
        self.images = _image_table(presentation, images or {})
        self._memo: dict[Key, PBWElement] = {}

    def on_letter(self, letter: Letter) -> PBWElement:
        img = self.images.get(letter)
        if img is None:
            return self.presentation.monomial(self.presentation.key_of_normal_letters([letter]))
        return img

    def on_monomial(self, key: Key) -> PBWElement:
        out = self._memo.get(key)
        if out is None:
            p = self.presentation
            if self.images:
                out = p.one()
                for letter in p.letters(key):
                    out = out * self.on_letter(letter)
            else:
                out = p.monomial(key)
            self._memo[key] = out
        return out

    def __call__(self, a: PBWElement) -> PBWElement:
        return _apply(self, a)


class Derivation:
    """An ``alpha``-derivation fixed by its values on letters.

    Extended to monomials by ``d(uv) = d(u) v + alpha(u) d(v)``.  Every letter
    that occurs must have an image; a missing one is an error.
    """

    def __init__(self, presentation: Presentation, alpha: Endomorphism, images: Mapping):
        if alpha.presentation != presentation:
            raise AlgebraError("alpha acts on a different presentation")
        self.presentation = presentation
        self.alpha = alpha
        self.images = _image_table(presentation, images)
        self._memo: dict[Key, PBWElement] = {}

    def on_letter(self, letter: Letter) -> PBWElement:
        try:
            return self.images[letter]
        except KeyError:
            raise AlgebraError(
                f"derivation undefined on {self.presentation.letter_text(letter)}"
            ) from None

    def on_monomial(self, key: Key) -> PBWElement:
        out = self._memo.get(key)
        if out is None:
            p = self.presentation
            letters = p.letters(key)
            out = p.zero()
            prefix_alpha = p.one()
            for t, letter in enumerate(letters):
                suffix = p.monomial(p.key_of_normal_letters(letters[t + 1:]))
                out = out + prefix_alpha * self.on_letter(letter) * suffix
                prefix_alpha = prefix_alpha * self.alpha.on_letter(letter)
            self._memo[key] = out
        return out

    def __call__(self, a: PBWElement) -> PBWElement:
        return _apply(self, a)


def _apply(m, a: PBWElement) -> PBWElement:
    if a.presentation != m.presentation:
        raise AlgebraError("linear map and element live in different presentations")
    acc: dict[Key, GaussianRational] = {}
    for k, c in a.terms.items():
        for k2, c2 in m.on_monomial(k).terms.items():
            _accumulate(acc, k2, c * c2)
    return PBWElement._raw(a.presentation, acc)


def apply_linear_map(m: Endomorphism | Derivation, a: PBWElement) -> PBWElement:
    return m(a)


# -- built-in presentations ---------------------------------------------------

BUILTIN_NAMES = ("free", "quantum_plane", "jordanian", "ug_solvable", "uq_sl2", "weyl", "usl2")


def _rules(p_gens: Sequence[str], laurent: Sequence[str], table: Mapping[tuple[str, str], Sequence[tuple[Scalar, Mapping[str, int]]]]):
    """Build a rule dict from symbolic pairs and ``(coeff, {sym: exp})`` terms."""
    idx = {s: k for k, s in enumerate(p_gens)}

    def letter(text):
        if text.endswith("^-1"):
            return (idx[text[:-3]], -1)
        return (idx[text], 1)

    rules = {}
    for (a, b), rhs in table.items():
        terms = []
        for c, exps in rhs:
            vec = [0] * len(p_gens)
            for s, e in exps.items():
                vec[idx[s]] = e
            terms.append((tuple(vec), c))
        rules[(letter(a), letter(b))] = terms
    return rules


def _check_q(name: str, q, *, unit: bool, forbid: Sequence[int] = ()) -> GaussianRational:
    if q is None:
        raise AlgebraError(f"{name} requires a deformation parameter q")
    if isinstance(q, float):
        raise AlgebraError("q must be an exact Gaussian rational, not a float")
    q = as_scalar(q)
    if not q:
        raise AlgebraError("q must be nonzero")
    if unit and not q.is_unit():
        raise AlgebraError(f"{name} requires |q| = 1 exactly, got |q|^2 = {q.abs_sq()}")
    if any(q == v for v in forbid):
        raise AlgebraError(f"{name} is undefined for q = {q}")
    return q


def _free(n: int) -> Presentation:
    if n < 1:
        raise AlgebraError("free algebra needs at least one generator")
    symbols = list("xyz")[:n] if n <= 3 else [f"x{k}" for k in range(1, n + 1)]
    return Presentation(f"free({n})", symbols, free=True)


def _quantum_plane(q: GaussianRational) -> Presentation:
    gens = ["x", "y"]
    # xy = q yx
    rules = _rules(gens, [], {("y", "x"): [(q.inverse(), {"x": 1, "y": 1})]})
    return Presentation("quantum_plane", gens, rules, q=q)


def _jordanian() -> Presentation:
    gens = ["x", "y"]
    rules = _rules(gens, [], {("y", "x"): [(1, {"x": 1, "y": 1}), (1, {"y": 2})]})
    return Presentation("jordanian", gens, rules)


def _ug_solvable() -> Presentation:
    gens = ["x", "y"]
    # [x, y] = y
    rules = _rules(gens, [], {("y", "x"): [(1, {"x": 1, "y": 1}), (-1, {"y": 1})]})
    return Presentation("ug_solvable", gens, rules)


def _uq_sl2(q: GaussianRational) -> Presentation:
    gens = [Generator("K", True), Generator("F"), Generator("E")]
    syms = ["K", "F", "E"]
    q2, qm2 = q**2, q**-2
    c = (q - q.inverse()).inverse()
    rules = _rules(
        syms,
        ["K"],
        {
            ("K", "K^-1"): [(1, {})],
            ("K^-1", "K"): [(1, {})],
            ("F", "K"): [(q2, {"K": 1, "F": 1})],
            ("F", "K^-1"): [(qm2, {"K": -1, "F": 1})],
            ("E", "K"): [(qm2, {"K": 1, "E": 1})],
            ("E", "K^-1"): [(q2, {"K": -1, "E": 1})],
            ("E", "F"): [(1, {"F": 1, "E": 1}), (c, {"K": 1}), (-c, {"K": -1})],
        },
    )
    return Presentation("uq_sl2", gens, rules, q=q, grading=(0, 1, 1))


def _weyl() -> Presentation:
    gens = ["x", "d"]
    # [d, x] = 1
    rules = _rules(gens, [], {("d", "x"): [(1, {"x": 1, "d": 1}), (1, {})]})
    return Presentation("weyl", gens, rules)


def _usl2() -> Presentation:
    gens = ["F", "H", "E"]
    rules = _rules(
        gens,
        [],
        {
            ("H", "F"): [(1, {"F": 1, "H": 1}), (-2, {"F": 1})],
            ("E", "F"): [(1, {"F": 1, "E": 1}), (1, {"H": 1})],
            ("E", "H"): [(1, {"H": 1, "E": 1}), (-2, {"E": 1})],
        },
    )
    return Presentation("usl2", gens, rules)


def _split_name(name: str) -> tuple[str, int | None]:
    name = name.strip()
    if name.startswith("free"):
        rest = name[4:].strip("() ")
        return "free", int(rest) if rest else 2
    return name, None


@lru_cache(maxsize=None)
def _builtin_cached(name: str, n: int | None, q: GaussianRational | None) -> Presentation:
    if name == "free":
        return _free(n)
    if name == "quantum_plane":
        return _quantum_plane(q)
    if name == "jordanian":
        return _jordanian()
    if name == "ug_solvable":
        return _ug_solvable()
    if name == "uq_sl2":
        return _uq_sl2(q)
    if name == "weyl":
        return _weyl()
    if name == "usl2":
        return _usl2()
    raise AssertionError(name)


def builtin(name: str, q: Scalar | str | None = None) -> Presentation:
    """Look up a built-in presentation.

    Names: ``free(n)`` (also ``freeN``), ``quantum_plane``, ``jordanian``,
    ``ug_solvable``, ``uq_sl2``, ``weyl`` and ``usl2`` (U(sl2) in the basis
    F^a H^b E^c).  ``quantum_plane`` needs a nonzero q; ``uq_sl2`` needs an
    exact unit q other than 1 and -1.  Other presentations ignore q.
    """
    base, n = _split_name(name)
    if base not in BUILTIN_NAMES:
        raise AlgebraError(f"unknown presentation {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    if isinstance(q, str):
        q = parse_scalar(q)
    if base == "quantum_plane":
        q = _check_q(base, q, unit=False)
    elif base == "uq_sl2":
        q = _check_q(base, q, unit=True, forbid=(1, -1))
    else:
        q = None
    return _builtin_cached(base, n, q)


def polynomial_ring(*symbols: str) -> Presentation:
    """The commutative polynomial ring on ``symbols`` (in that order)."""
    rules = {}
    for j in range(len(symbols)):
        for i in range(j):
            key = [0] * len(symbols)
            key[i] = key[j] = 1
            rules[((j, 1), (i, 1))] = [(tuple(key), 1)]
    return Presentation("C[" + ",".join(symbols) + "]", list(symbols), rules)


def laurent_ring(symbol: str = "K") -> Presentation:
    zero = (0,)
    rules = {((0, 1), (0, -1)): [(zero, 1)], ((0, -1), (0, 1)): [(zero, 1)]}
    return Presentation(f"C[{symbol},{symbol}^-1]", [Generator(symbol, True)], rules)


# -- JSON presentations -------------------------------------------------------


def _word_key(p: Presentation, word, q) -> Key:
    if isinstance(word, str):
        text = word.strip()
        if text in ("", "1"):
            return p.unit_key
        term = parse(text, p)
        if len(term) != 1:
            raise AlgebraError(f"rule word {word!r} must be a single monomial")
        (w, c), = term.items()
        if c != ONE:
            raise AlgebraError(f"rule word {word!r} must not carry a coefficient")
    else:
        w = canonical_word((p.index(s), int(e)) for s, e in word)
    letters = []
    for g, e in w:
        letters.extend([(g, _sign(e))] * abs(e))
    if p.free:
        return canonical_word(w)
    for (g1, s1), (g2, s2) in zip(letters, letters[1:]):
        if g1 > g2 or (g1 == g2 and s1 != s2):
            raise AlgebraError(f"rule word {word!r} is not normal-ordered")
    return p.key_of_normal_letters(letters)


def presentation_from_json(doc: Mapping) -> Presentation:
    """Build a presentation from the documented JSON shape.

    ``{name, q, generators: [{symbol, laurent}], rules: [{lhs: [a, b],
    rhs: [{coeff, word}]}], grading: {symbol: weight}}``.  Coefficients are
    scalar expressions and may use ``q``.  Missing ``K*K^-1`` contraction
    rules for Laurent generators are added.
    """
    try:
        name = str(doc.get("name", "custom"))
        q_raw = doc.get("q")
        q = None
        if q_raw is not None:
            q = parse_scalar(str(q_raw)) if not isinstance(q_raw, int) else as_scalar(q_raw)
        gens = [Generator(g["symbol"], bool(g.get("laurent", False))) for g in doc["generators"]]
        grading_doc = doc.get("grading") or {}
        grading = [int(grading_doc.get(g.symbol, 1)) for g in gens]
        shell = Presentation(name, gens, q=q, grading=grading)
        rules: dict = {}
        for rule in doc.get("rules", []):
            a, b = (shell.letter(s) for s in rule["lhs"])
            rhs = []
            for t in rule["rhs"]:
                c_raw = t.get("coeff", 1)
                c = as_scalar(c_raw) if isinstance(c_raw, int) else parse_scalar(str(c_raw), q)
                rhs.append((_word_key(shell, t.get("word", ""), q), c))
            rules[(a, b)] = rhs
        for g, gen in enumerate(gens):
            if gen.laurent:
                rules.setdefault(((g, 1), (g, -1)), [(shell.unit_key, 1)])
                rules.setdefault(((g, -1), (g, 1)), [(shell.unit_key, 1)])
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed presentation document: {exc}") from None
    except ParseError as exc:
        raise AlgebraError(f"malformed expression in presentation document: {exc}") from None
    p = Presentation(name, gens, rules, q=q, grading=grading)
    for (a, b) in p.rules:
        if not (a[0] > b[0] or (a[0] == b[0] and a[1] != b[1])):
            raise AlgebraError(f"rule {p.letter_text(a)}*{p.letter_text(b)} does not rewrite an out-of-order pair")
    missing = p.missing_rules()
    if missing:
        raise AlgebraError(f"presentation {name!r} lacks rules for: {', '.join(missing)}")
    return p


def load_presentation(source: str | Path, q: Scalar | str | None = None) -> Presentation:
    """A built-in name, or a path to a JSON presentation document.

    ``q`` is passed to built-ins; a JSON document carries its own.
    """
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        return presentation_from_json(json.loads(path.read_text()))
    return builtin(str(source), q)


def presentation_to_json(p: Presentation) -> dict:
    rules = []
    for (a, b), rhs in p.rules.items():
        rules.append(
            {
                "lhs": [p.letter_text(a), p.letter_text(b)],
                "rhs": [
                    {"coeff": str(c), "word": render_word(p.word_of(k), p) or "1"} for k, c in rhs
                ],
            }
        )
    return {
        "name": p.name,
        "q": None if p.q is None else str(p.q),
        "generators": [{"symbol": g.symbol, "laurent": g.laurent} for g in p.generators],
        "rules": rules,
        "grading": {g.symbol: w for g, w in zip(p.generators, p.grading)},
    }


# -- Weyl algebra identity -------------------------------------------------------


def weyl_commutator_check(n: int) -> PBWElement:
    """Return ``[d, x^n]`` normal-ordered, checking it equals ``n x^(n-1)``."""
    if n < 1:
        raise AlgebraError("n must be positive")
    w = builtin("weyl")
    x, d = w.gen("x"), w.gen("d")
    xn = x**n
    comm = d * xn - xn * d
    expected = w.gen("x", n - 1).scale(n)
    if comm != expected:
        raise AlgebraError(f"[d, x^{n}] = {comm}, expected {expected}")
    return comm
