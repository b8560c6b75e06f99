"""Noncommutative expressions over a generator alphabet.

Grammar (whitespace is insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := scalar | gen ['^' int] | 'q' ['^' int] | '(' expr ')'
    scalar := rational ['i'] | 'i'

Juxtaposition and ``*`` are the same noncommutative product.  A complex
literal such as ``3/5+4/5i`` is read as the sum of its two scalar parts, so
it has to be parenthesised when it multiplies a word: ``(3/5+4/5i)*E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .coeff import ONE, ZERO, GaussianRational, Scalar, as_scalar

__all__ = [
    "Generator",
    "Word",
    "FreeTerm",
    "ParseError",
    "parse",
    "parse_scalar",
    "render",
    "render_word",
    "render_scalar_factor",
    "join_signed",
]


class Generator(NamedTuple):
    symbol: str
    laurent: bool = False


# A word is a tuple of runs (generator index, nonzero exponent).
Word = tuple[tuple[int, int], ...]


class ParseError(ValueError):
    """Raised for malformed input; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


def canonical_word(runs: Iterable[tuple[int, int]]) -> Word:
    """Drop zero exponents and merge adjacent runs of the same sign."""
    out: list[list[int]] = []
    for g, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
            out[-1][1] += e
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


class FreeTerm:
    """A finite sum of scalar-weighted words in the free algebra.

    Like terms are collected and zero coefficients dropped on construction,
    so two FreeTerms are equal exactly when they have the same summands.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        self.alphabet = alphabet
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Word, GaussianRational] = {}
        gens = alphabet.generators
        for word, c in items:
            w = canonical_word(word)
            for g, e in w:
                if not 0 <= g < len(gens):
                    raise ValueError(f"generator index {g} out of range")
                if e < 0 and not gens[g].laurent:
                    raise ValueError(f"negative power of non-Laurent generator {gens[g].symbol!r}")
            c = as_scalar(c)
            total = collected.get(w, ZERO) + c
            if total:
                collected[w] = total
            else:
                collected.pop(w, None)
        self.terms = collected

    @classmethod
    def scalar(cls, alphabet, c: Scalar) -> FreeTerm:
        return cls(alphabet, {(): c})

    @classmethod
    def word(cls, alphabet, word: Sequence[tuple[int, int]], c: Scalar = 1) -> FreeTerm:
        return cls(alphabet, [(tuple(word), c)])

    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator[tuple[Word, GaussianRational]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FreeTerm):
            return NotImplemented
        return self.terms == other.terms and _same_alphabet(self.alphabet, other.alphabet)

    def __add__(self, other: FreeTerm) -> FreeTerm:
        return FreeTerm(self.alphabet, [*self.terms.items(), *other.terms.items()])

    def __sub__(self, other: FreeTerm) -> FreeTerm:
        return self + (-other)

    def __neg__(self) -> FreeTerm:
        return FreeTerm(self.alphabet, [(w, -c) for w, c in self.terms.items()])

    def __mul__(self, other):
        if isinstance(other, FreeTerm):
            return FreeTerm(
                self.alphabet,
                [
                    (w1 + w2, c1 * c2)
                    for w1, c1 in self.terms.items()
                    for w2, c2 in other.terms.items()
                ],
            )
        c = as_scalar(other)
        return FreeTerm(self.alphabet, [(w, c * v) for w, v in self.terms.items()])

    def __rmul__(self, other):
        c = as_scalar(other)
        return FreeTerm(self.alphabet, [(w, c * v) for w, v in self.terms.items()])

    def __pow__(self, n: int) -> FreeTerm:
        if n < 0:
            raise ValueError("negative power of a free term")
        out = FreeTerm.scalar(self.alphabet, 1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"FreeTerm({render(self)!r})"


def _same_alphabet(a, b) -> bool:
    return a is b or tuple(a.generators) == tuple(b.generators)


# -- tokenizer ---------------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'scalar', 'gen', 'q', 'op', 'int', 'end'
    value: object
    pos: int


def _scan_int(text: str, i: int) -> tuple[int, int]:
    j = i
    while j < len(text) and text[j].isdigit():
        j += 1
    return int(text[i:j]), j


def _tokenize(text: str, alphabet) -> list[_Tok]:
    symbols = sorted((g.symbol for g in alphabet.generators), key=len, reverse=True)
    has_q = getattr(alphabet, "q", None) is not None and "q" not in symbols
    toks: list[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            num, i = _scan_int(text, i)
            value = Fraction(num)
            if i < n and text[i] == "/":
                if i + 1 >= n or not text[i + 1].isdigit():
                    raise ParseError("expected denominator after '/'", i + 1)
                den, i = _scan_int(text, i + 1)
                if den == 0:
                    raise ParseError("zero denominator", start)
                value = Fraction(num, den)
            if toks and toks[-1].kind == "op" and toks[-1].value == "^":
                if value.denominator != 1:
                    raise ParseError("exponent must be an integer", start)
                toks.append(_Tok("int", int(value), start))
                continue
            if i < n and text[i] == "i" and not _symbol_at(text, i, symbols):
                i += 1
                toks.append(_Tok("scalar", GaussianRational(0, value), start))
            else:
                toks.append(_Tok("scalar", GaussianRational(value), start))
            continue
        if ch in "+-*^()":
            toks.append(_Tok("op", ch, i))
            i += 1
            continue
        sym = _symbol_at(text, i, symbols)
        if sym is not None:
            toks.append(_Tok("gen", sym, i))
            i += len(sym)
            continue
        if ch == "q" and has_q:
            toks.append(_Tok("q", "q", i))
            i += 1
            continue
        if ch == "i":
            toks.append(_Tok("scalar", GaussianRational(0, 1), i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            raise ParseError(f"unknown generator {text[i:j]!r}", i)
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


def _symbol_at(text: str, i: int, symbols: Sequence[str]) -> str | None:
    for s in symbols:
        if text.startswith(s, i):
            return s
    return None


# -- recursive descent -------------------------------------------------------


class _Parser:
    def __init__(self, text: str, alphabet):
        self.alphabet = alphabet
        self.index = {g.symbol: k for k, g in enumerate(alphabet.generators)}
        self.toks = _tokenize(text, alphabet)
        self.k = 0

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def at_op(self, ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.value in ops

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok.kind != "op" or tok.value != op:
            raise ParseError(f"expected {op!r}", tok.pos)

    def parse(self) -> FreeTerm:
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected token {tok.value!r}", tok.pos)
        return result

    def expr(self) -> FreeTerm:
        negate = False
        if self.at_op("+-"):
            negate = self.take().value == "-"
        result = self.term()
        if negate:
            result = -result
        while self.at_op("+-"):
            op = self.take().value
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def starts_factor(self) -> bool:
        tok = self.peek()
        return tok.kind in ("scalar", "gen", "q") or (tok.kind == "op" and tok.value == "(")

    def term(self) -> FreeTerm:
        if not self.starts_factor():
            tok = self.peek()
            what = "end of input" if tok.kind == "end" else repr(tok.value)
            raise ParseError(f"expected a factor, found {what}", tok.pos)
        result = self.factor()
        while True:
            if self.at_op("*"):
                self.take()
                if not self.starts_factor():
                    raise ParseError("expected a factor after '*'", self.peek().pos)
            elif not self.starts_factor():
                return result
            result = result * self.factor()

    def exponent(self) -> int | None:
        if not self.at_op("^"):
            return None
        self.take()
        sign = 1
        paren = self.at_op("(")
        if paren:
            self.take()
        if self.at_op("+-"):
            sign = -1 if self.take().value == "-" else 1
        tok = self.take()
        if tok.kind == "scalar" and tok.value.is_real() and tok.value.re.denominator == 1:
            value = int(tok.value.re)
        elif tok.kind == "int":
            value = tok.value
        else:
            raise ParseError("expected an integer exponent", tok.pos)
        if paren:
            self.expect_op(")")
        return sign * value

    def factor(self) -> FreeTerm:
        tok = self.take()
        if tok.kind == "scalar":
            return FreeTerm.scalar(self.alphabet, tok.value)
        if tok.kind == "q":
            e = self.exponent()
            return FreeTerm.scalar(self.alphabet, as_scalar(self.alphabet.q) ** (1 if e is None else e))
        if tok.kind == "gen":
            g = self.index[tok.value]
            e = self.exponent()
            e = 1 if e is None else e
            if e < 0 and not self.alphabet.generators[g].laurent:
                raise ParseError(f"negative power of non-Laurent generator {tok.value!r}", tok.pos)
            return FreeTerm.word(self.alphabet, [(g, e)])
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {tok.value!r}", tok.pos)


def parse(text: str, alphabet) -> FreeTerm:
    """Parse ``text`` into a :class:`FreeTerm` over ``alphabet``.

    ``alphabet`` is anything with a ``generators`` sequence of
    :class:`Generator` and an optional ``q`` (usually a Presentation).
    """
    return _Parser(text, alphabet).parse()


class _ScalarAlphabet:
    generators: tuple[Generator, ...] = ()

    def __init__(self, q=None):
        self.q = q


def parse_scalar(text: str, q: Scalar | None = None) -> GaussianRational:
    """Evaluate a generator-free expression such as ``q^2 - q^-2``.

    Only the grammar's scalar subset is accepted; a literal like ``3/5+4/5i``
    is the common case.
    """
    try:
        return GaussianRational.parse(text)
    except ValueError:
        pass
    term = parse(text, _ScalarAlphabet(q))
    if not term:
        return ZERO
    (word, c), = term.items()
    assert word == ()
    return c


# -- rendering ---------------------------------------------------------------


def render_word(word: Word, alphabet) -> str:
    parts = []
    for g, e in word:
        sym = alphabet.generators[g].symbol
        parts.append(sym if e == 1 else f"{sym}^{e}")
    return "*".join(parts)


def render_scalar_factor(c: GaussianRational, word_text: str, alphabet=None) -> str:
    """Render ``c * word`` with the word already rendered (empty for 1)."""
    imag_unit_clash = alphabet is not None and any(g.symbol == "i" for g in alphabet.generators)
    if not word_text:
        text = str(c)
        if c.re and c.im:
            return f"({text})"
        if imag_unit_clash and c.im and not c.re and abs(c.im) == 1:
            return "-1i" if c.im < 0 else "1i"
        return text
    if c == ONE:
        return word_text
    if c == -ONE:
        return f"-{word_text}"
    if c.re and c.im:
        return f"({c})*{word_text}"
    text = str(c)
    if imag_unit_clash and text in ("i", "-i"):
        text = text.replace("i", "1i")
    return f"{text}*{word_text}"


def join_signed(pieces: Sequence[str]) -> str:
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def word_sort_key(word: Word):
    return (-sum(abs(e) for _, e in word), tuple((g, -e) for g, e in word))


def render(term: FreeTerm) -> str:
    """Render in the parser's syntax; ``parse(render(t)) == t``."""
    words = sorted(term.terms, key=word_sort_key)
    return join_signed(
        [render_scalar_factor(term.terms[w], render_word(w, term.alphabet), term.alphabet) for w in words]
    )
