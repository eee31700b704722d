"""Higher linking invariants extracted from longitude expansions.

For a multi-index I = (i_1, ..., i_q) the raw invariant mu(I) is the
coefficient of x_{i_1} ... x_{i_{q-1}} in the expansion of the reduced
longitude of component i_q. Raw values are only well defined modulo the
indeterminacy delta(I), the gcd of raw values over all shorter indices
obtained by deleting entries and rotating cyclically; mu_bar is the
canonical residue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .diagram import PDCode, reduced_longitude
from .magnus import Truncation, expansion


@dataclass(frozen=True)
class MilnorValue:
    index: tuple
    raw: int
    delta: int
    bar: int

    @property
    def nonzero(self) -> bool:
        return self.bar != 0


def _check_index(pd: PDCode, index) -> tuple:
    index = tuple(int(i) for i in index)
    if len(index) < 2:
        raise ValueError("need a multi-index with at least two entries")
    for i in index:
        if not 1 <= i <= pd.num_components:
            raise ValueError(f"component {i} out of range (diagram has {pd.num_components})")
    return index


@lru_cache(maxsize=4096)
def _mu_cached(pd: PDCode, index: tuple) -> int:
    q = len(index)
    word = reduced_longitude(pd, index[-1], q)
    return expansion(word, Truncation.degree(q)).coefficient(index[:-1])


def mu(pd: PDCode, index) -> int:
    """Raw longitude coefficient for the multi-index. Not invariant on its
    own once delta(index) is nonzero; see mu_bar."""
    return _mu_cached(pd, _check_index(pd, index))


def delta(pd: PDCode, index) -> int:
    """Indeterminacy of mu(index): gcd of raw values over every index
    obtained by deleting at least one entry (keeping order) and then
    rotating cyclically, down to length two. Empty family gives 0."""
    index = _check_index(pd, index)
    q = len(index)
    family = set()
    for length in range(2, q):
        for positions in combinations(range(q), length):
            sub = tuple(index[p] for p in positions)
            for r in range(length):
                family.add(sub[r:] + sub[:r])
    g = 0
    for j in sorted(family):
        g = math.gcd(g, abs(_mu_cached(pd, j)))
        if g == 1:
            break
    return g


def mu_bar(pd: PDCode, index) -> MilnorValue:
    index = _check_index(pd, index)
    raw = _mu_cached(pd, index)
    d = delta(pd, index)
    bar = raw % d if d > 0 else raw
    return MilnorValue(index=index, raw=raw, delta=d, bar=bar)


def linking_number(pd: PDCode, i: int, j: int) -> int:
    if i == j:
        raise ValueError("linking number needs two distinct components")
    return mu(pd, (i, j))


def linking_matrix(pd: PDCode) -> list[list[int]]:
    m = pd.num_components
    out = [[0] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i != j:
                out[i - 1][j - 1] = mu(pd, (i, j))
    return out


def first_nonvanishing_order(pd: PDCode, q_max: int) -> MilnorValue | None:
    """Smallest order q <= q_max at which some mu_bar is nonzero, with the
    lexicographically first witnessing index; None if everything vanishes."""
    m = pd.num_components
    for q in range(2, q_max + 1):
        for index in product(range(1, m + 1), repeat=q):
            value = mu_bar(pd, index)
            if value.nonzero:
                return value
    return None


def homotopy_nontriviality_certificate(pd: PDCode) -> MilnorValue | None:
    """A nonzero mu_bar over a repeat-free index, if one exists up to length
    equal to the component count.

    Repeat-free values are invariant under link homotopy, so any hit
    certifies the link is not homotopically split. No hit proves nothing:
    this searches one finite family, it is not a completeness check.
    Coefficients are extracted in the square-free quotient, where they
    agree with the full expansion but cost far less at high rank.
    """
    m = pd.num_components
    sf = Truncation.square_free()
    for length in range(2, m + 1):
        for index in product(range(1, m + 1), repeat=length):
            if len(set(index)) != length:
                continue
            word = reduced_longitude(pd, index[-1], length)
            raw = expansion(word, sf).coefficient(index[:-1])
            if raw == 0:
                continue
            d = delta(pd, index)
            bar = raw % d if d > 0 else raw
            if bar != 0:
                return MilnorValue(index=index, raw=raw, delta=d, bar=bar)
    return None


def invariant_report(pd: PDCode, q_max: int) -> dict:
    """All mu_bar values up to the given order, JSON-ready and deterministic."""
    m = pd.num_components
    values = []
    for q in range(2, q_max + 1):
        for index in product(range(1, m + 1), repeat=q):
            v = mu_bar(pd, index)
            values.append(
                {
                    "index": list(v.index),
                    "mu": v.raw,
                    "delta": v.delta,
                    "mu_bar": v.bar,
                }
            )
    first = first_nonvanishing_order(pd, q_max)
    return {
        "components": m,
        "crossings": len(pd.crossings),
        "linking_matrix": linking_matrix(pd),
        "max_order": q_max,
        "values": values,
        "first_nonvanishing": None
        if first is None
        else {
            "index": list(first.index),
            "mu": first.raw,
            "delta": first.delta,
            "mu_bar": first.bar,
        },
    }
