"""Free group words and their expansions in truncated tensor algebras.

A word over generators y_1..y_m maps to a noncommutative power series in
x_1..x_m via y_i -> 1 + x_i. Truncating the series ring makes everything
finite: either by total degree, or by discarding monomials with a repeated
variable (the square-free quotient, where inverses expand to exactly 1 - x_i).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# words


def _free_reduce(letters: Iterable[int]) -> tuple:
    stack: list[int] = []
    for l in letters:
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the free group of the given rank.

    Letters are nonzero signed ints: +i is the i-th generator, -i its
    inverse, 1 <= i <= rank. Reduction happens on construction, so equal
    group elements compare equal.
    """

    rank: int
    letters: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for l in self.letters:
            if not isinstance(l, int) or l == 0 or abs(l) > self.rank:
                raise ValueError(f"letter {l!r} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int) -> "Word":
        return cls(rank, (i,))

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-l for l in reversed(self.letters)))

    def conjugate(self, by: "Word") -> "Word":
        return by * self * by.inverse()

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __repr__(self) -> str:
        if not self.letters:
            return "Word.identity"
        def fmt(l):
            return f"y{l}" if l > 0 else f"y{-l}^-1"
        return "*".join(fmt(l) for l in self.letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


# ---------------------------------------------------------------------------
# truncations


@dataclass(frozen=True)
class Truncation:
    """Which monomials survive in the truncated series ring."""

    kind: str
    q: int | None = None

    @classmethod
    def degree(cls, q: int) -> "Truncation":
        if q < 0:
            raise ValueError("degree cutoff must be nonnegative")
        return cls("degree", q)

    @classmethod
    def square_free(cls) -> "Truncation":
        return cls("square_free", None)

    def keeps(self, mono: tuple) -> bool:
        if self.kind == "degree":
            return len(mono) <= self.q
        return len(set(mono)) == len(mono)

    def degree_limit(self, rank: int) -> int:
        return self.q if self.kind == "degree" else rank


# ---------------------------------------------------------------------------
# polynomials


class TruncatedPolynomial:
    """Noncommutative polynomial with integer coefficients, modulo a truncation.

    Immutable by convention: arithmetic returns fresh objects, terms maps
    monomial tuples (variable indices) to nonzero int coefficients.
    """

    __slots__ = ("rank", "trunc", "terms")

    def __init__(self, rank: int, trunc: Truncation, terms: dict | None = None):
        self.rank = rank
        self.trunc = trunc
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff and trunc.keeps(mono):
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def unit(cls, rank: int, trunc: Truncation) -> "TruncatedPolynomial":
        return cls(rank, trunc, {(): 1})

    @classmethod
    def variable(cls, rank: int, trunc: Truncation, i: int) -> "TruncatedPolynomial":
        if not 1 <= i <= rank:
            raise ValueError(f"variable index {i} out of range")
        return cls(rank, trunc, {(i,): 1})

    def coefficient(self, mono: Sequence[int]) -> int:
        return self.terms.get(tuple(mono), 0)

    def _check_compat(self, other: "TruncatedPolynomial"):
        if self.rank != other.rank or self.trunc != other.trunc:
            raise ValueError("mixing polynomials from different rings")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, self.trunc, frozenset(self.terms.items())))

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check_compat(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = terms.get(mono, 0) + coeff
            if c:
                terms[mono] = c
            else:
                terms.pop(mono, None)
        out = TruncatedPolynomial.__new__(TruncatedPolynomial)
        out.rank, out.trunc, out.terms = self.rank, self.trunc, terms
        return out

    def __neg__(self) -> "TruncatedPolynomial":
        out = TruncatedPolynomial.__new__(TruncatedPolynomial)
        out.rank, out.trunc = self.rank, self.trunc
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        return self + (-other)

    def __mul__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check_compat(other)
        trunc = self.trunc
        limit = trunc.degree_limit(self.rank)
        by_deg_a: dict[int, list] = defaultdict(list)
        for m, c in self.terms.items():
            by_deg_a[len(m)].append((m, c))
        by_deg_b: dict[int, list] = defaultdict(list)
        for m, c in other.terms.items():
            by_deg_b[len(m)].append((m, c))
        square_free = trunc.kind == "square_free"
        terms: dict[tuple, int] = {}
        for da, items_a in by_deg_a.items():
            for db, items_b in by_deg_b.items():
                if da + db > limit:
                    continue
                for ma, ca in items_a:
                    for mb, cb in items_b:
                        mono = ma + mb
                        if square_free and len(set(mono)) != len(mono):
                            continue
                        c = terms.get(mono, 0) + ca * cb
                        if c:
                            terms[mono] = c
                        else:
                            del terms[mono]
        out = TruncatedPolynomial.__new__(TruncatedPolynomial)
        out.rank, out.trunc, out.terms = self.rank, self.trunc, terms
        return out

    def is_unit(self) -> bool:
        return self.terms == {(): 1}

    def min_positive_degree(self) -> int | None:
        degs = [len(m) for m in self.terms if m]
        return min(degs) if degs else None

    def render(self) -> str:
        """Human-readable form, monomials in lexicographic order."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            body = "*".join(f"x{i}" for i in mono)
            mag = abs(coeff)
            if not mono:
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = f"{mag}*{body}"
            if not parts:
                parts.append(chunk if coeff > 0 else f"-{chunk}")
            else:
                parts.append(f"+ {chunk}" if coeff > 0 else f"- {chunk}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<TruncatedPolynomial {self.render()}>"


# ---------------------------------------------------------------------------
# the expansion homomorphism


def _letter_factor(rank: int, trunc: Truncation, letter: int) -> TruncatedPolynomial:
    i = abs(letter)
    if letter > 0:
        return TruncatedPolynomial(rank, trunc, {(): 1, (i,): 1})
    if trunc.kind == "square_free":
        return TruncatedPolynomial(rank, trunc, {(): 1, (i,): -1})
    terms = {(): 1}
    for k in range(1, trunc.q + 1):
        terms[(i,) * k] = (-1) ** k
    return TruncatedPolynomial(rank, trunc, terms)


def expansion(word: Word, trunc: Truncation) -> TruncatedPolynomial:
    """Image of the word under y_i -> 1 + x_i in the truncated ring."""
    acc = TruncatedPolynomial.unit(word.rank, trunc)
    for letter in word.letters:
        acc = acc * _letter_factor(word.rank, trunc, letter)
    return acc


def series_coefficient(word: Word, mono: Sequence[int], trunc: Truncation) -> int:
    """Coefficient of the given monomial in the expansion of the word."""
    mono = tuple(mono)
    if trunc.kind == "degree" and len(mono) > trunc.q:
        raise ValueError("monomial degree exceeds truncation")
    return expansion(word, trunc).coefficient(mono)


def lcs_depth(word: Word, q_max: int) -> int:
    """Lower central series depth detected up to q_max.

    Returns the minimal degree of a nonzero nonconstant term of the
    expansion (the word then lies in that layer and no deeper), or
    q_max + 1 when every term up to q_max vanishes; q_max + 1 is a
    sentinel meaning "deeper than this probe", not an exact depth.
    """
    if word.is_identity():
        return q_max + 1
    poly = expansion(word, Truncation.degree(q_max))
    d = poly.min_positive_degree()
    return d if d is not None else q_max + 1
