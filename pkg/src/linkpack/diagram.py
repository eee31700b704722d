"""Planar diagram codes for oriented links.

A diagram is a list of crossings X[a,b,c,d]: arc labels read counterclockwise
starting from the incoming under-strand, so a enters under, c leaves under,
and b, d carry the over-strand. Over-strand directions are not stored; they
are recovered by the global constraint that every label enters exactly one
crossing and leaves exactly one. Split crossingless circles ride along as a
bare count.

On top of the combinatorics this module derives what the invariant layer
needs: oriented components, crossing signs, over-arcs with their meridian
relations, longitudes read off along each component, and the conjugator
rewrite that pushes arc meridians down to component meridians inside the
nilpotent quotients of the link group.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .magnus import Word


class DiagramError(ValueError):
    """Malformed or non-orientable crossing data."""


# ---------------------------------------------------------------------------
# PD codes


class PDCode:
    __slots__ = (
        "crossings",
        "free_components",
        "edges",
        "over_in_slot",
        "signs",
        "successor",
        "component_edges",
        "num_components",
        "edge_component",
        "arc_of_edge",
        "arc_component",
        "arcs",
        "_hash",
    )

    def __init__(self, crossings: Sequence[Sequence[int]], free_components: int = 0):
        crossings = tuple(tuple(int(v) for v in x) for x in crossings)
        if free_components < 0:
            raise DiagramError("free component count must be nonnegative")
        if not crossings and free_components == 0:
            raise DiagramError("empty input: no crossings and no split circles")
        for x in crossings:
            if len(x) != 4 or any(v < 1 for v in x):
                raise DiagramError(f"crossing {x} is not four positive arc labels")
            if len(set(x)) != 4:
                raise DiagramError(
                    f"arc continuation inconsistent: crossing {x} repeats a label"
                )
        self.crossings = crossings
        self.free_components = int(free_components)
        self._hash = hash((crossings, self.free_components))

        occ: dict[int, list[tuple[int, int]]] = {}
        for xi, x in enumerate(crossings):
            for slot, lab in enumerate(x):
                occ.setdefault(lab, []).append((xi, slot))
        for lab, apps in occ.items():
            if len(apps) != 2:
                raise DiagramError(
                    f"arc label multiplicity: label {lab} appears {len(apps)} times, need 2"
                )
        self.edges = tuple(sorted(occ))

        self._orient(occ)
        self._derive_components()
        self._derive_arcs()

    # -- orientation ------------------------------------------------------

    def _orient(self, occ):
        n = len(self.crossings)
        over_in = [None] * n  # 1 or 3: which over slot is the incoming one

        def role(xi, slot):
            if slot == 0:
                return "in"
            if slot == 2:
                return "out"
            if over_in[xi] is None:
                return None
            return "in" if over_in[xi] == slot else "out"

        def propagate():
            progress = True
            while progress:
                progress = False
                for lab, apps in occ.items():
                    (x1, s1), (x2, s2) = apps
                    r1, r2 = role(x1, s1), role(x2, s2)
                    if r1 is not None and r2 is not None:
                        if r1 == r2:
                            raise DiagramError(
                                f"inconsistent orientation: arc {lab} is '{r1}' at both ends"
                            )
                    elif r1 is not None:
                        want_in = r1 == "out"
                        over_in[x2] = s2 if want_in else 4 - s2
                        progress = True
                    elif r2 is not None:
                        want_in = r2 == "out"
                        over_in[x1] = s1 if want_in else 4 - s1
                        progress = True

        propagate()
        # components that never pass under leave a free orientation choice;
        # resolve lowest-index crossings to "over runs d -> b" deterministically
        while any(v is None for v in over_in):
            x0 = next(x for x in range(n) if over_in[x] is None)
            over_in[x0] = 3
            propagate()

        self.over_in_slot = tuple(over_in)
        self.signs = tuple(1 if v == 3 else -1 for v in over_in)

        succ: dict[int, int] = {}
        for xi, (a, b, c, d) in enumerate(self.crossings):
            succ[a] = c
            if over_in[xi] == 1:
                succ[b] = d
            else:
                succ[d] = b
        self.successor = succ

    # -- components -------------------------------------------------------

    def _derive_components(self):
        seen = set()
        comps: list[tuple[int, ...]] = []
        for e in self.edges:
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            nxt = self.successor[e]
            while nxt != e:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.successor[nxt]
            comps.append(tuple(cyc))
        comps.sort(key=lambda c: c[0])
        comps.extend(() for _ in range(self.free_components))
        self.component_edges = tuple(comps)
        self.num_components = len(comps)
        self.edge_component = {
            e: ci + 1 for ci, cyc in enumerate(comps) for e in cyc
        }

    # -- over-arcs --------------------------------------------------------

    def _derive_arcs(self):
        parent = {e: e for e in self.edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for _, b, _, d in self.crossings:
            ra, rb = find(b), find(d)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra
        canon = {e: find(e) for e in self.edges}
        # name each arc by its smallest member
        rep_min: dict[int, int] = {}
        for e, r in canon.items():
            rep_min[r] = min(rep_min.get(r, e), e)
        self.arc_of_edge = {e: rep_min[canon[e]] for e in self.edges}
        self.arcs = tuple(sorted(set(self.arc_of_edge.values())))
        self.arc_component = {
            arc: self.edge_component[arc] for arc in self.arcs
        }

    # -- queries ----------------------------------------------------------

    def sign(self, xi: int) -> int:
        return self.signs[xi]

    def over_arc(self, xi: int) -> int:
        return self.arc_of_edge[self.crossings[xi][1]]

    def base_arc(self, component: int) -> int:
        cyc = self.component_edges[component - 1]
        if not cyc:
            raise DiagramError(f"component {component} is a split circle; no arcs")
        return self.arc_of_edge[cyc[0]]

    def self_writhe(self, component: int) -> int:
        w = 0
        for xi, (a, b, _, _) in enumerate(self.crossings):
            if (
                self.edge_component[a] == component
                and self.edge_component[b] == component
            ):
                w += self.signs[xi]
        return w

    def underpass_crossing(self, edge: int) -> int | None:
        """Index of the crossing this edge enters as the under-strand, if any."""
        for xi, x in enumerate(self.crossings):
            if x[0] == edge:
                return xi
        return None

    def to_json_obj(self) -> dict:
        return {
            "components": self.num_components,
            "crossings": [list(x) for x in self.crossings],
        }

    def to_text(self) -> str:
        return " ".join("X[%d,%d,%d,%d]" % x for x in self.crossings)

    def __eq__(self, other):
        if not isinstance(other, PDCode):
            return NotImplemented
        return (
            self.crossings == other.crossings
            and self.free_components == other.free_components
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        extra = f" +{self.free_components} circles" if self.free_components else ""
        return f"<PDCode {len(self.crossings)} crossings, {self.num_components} components{extra}>"


# ---------------------------------------------------------------------------
# parsing


_CROSSING_RE = re.compile(
    r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]"
)


def parse_pd(text: str) -> PDCode:
    """Parse either 'X[a,b,c,d] ...' or a JSON object with a crossing list.

    The JSON form {"components": m, "crossings": [[a,b,c,d], ...]} may
    declare more components than the crossings generate; the surplus are
    split crossingless circles.
    """
    s = text.strip()
    if not s:
        raise DiagramError("empty input")
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"bad JSON diagram: {exc}") from exc
        crossings = obj.get("crossings")
        if crossings is None or not isinstance(crossings, list):
            raise DiagramError("JSON diagram needs a 'crossings' list")
        declared = obj.get("components")
        if not crossings and declared is None:
            raise DiagramError("empty input: JSON diagram with no content")
        if not crossings:
            return PDCode((), free_components=int(declared))
        pd = PDCode(tuple(tuple(c) for c in crossings))
        if declared is None:
            return pd
        declared = int(declared)
        derived = pd.num_components
        if declared < derived:
            raise DiagramError(
                f"declared component count {declared} below the {derived} the crossings generate"
            )
        if declared > derived:
            pd = PDCode(pd.crossings, free_components=declared - derived)
        return pd
    matches = list(_CROSSING_RE.finditer(s))
    leftover = _CROSSING_RE.sub("", s).replace(",", " ").strip()
    if leftover:
        raise DiagramError(f"could not parse diagram text near {leftover[:30]!r}")
    if not matches:
        raise DiagramError("empty input: no crossings found")
    return PDCode(tuple(tuple(int(g) for g in m.groups()) for m in matches))


# ---------------------------------------------------------------------------
# braid closures and the builtin corpus


def braid_closure(strands: int, letters: Sequence[tuple[int, int]]) -> PDCode:
    """Close a braid word into a diagram.

    letters are (position, sign) with 1 <= position < strands; sign +1 crosses
    the left strand over the right, which comes out as a positive crossing.
    Strand positions that never cross close into split circles.
    """
    if strands < 1:
        raise DiagramError("braid needs at least one strand")
    nxt = strands
    current = list(range(strands))
    raw: list[tuple[int, int, int, int, int]] = []  # provisional crossing + sign
    for pos, sign in letters:
        if not 1 <= pos < strands:
            raise DiagramError(f"braid letter position {pos} out of range")
        if sign not in (1, -1):
            raise DiagramError(f"braid letter sign must be +1 or -1, got {sign}")
        left, right = current[pos - 1], current[pos]
        out1, out2 = nxt, nxt + 1
        nxt += 2
        if sign == 1:
            # left passes over: under-in right, over-out, under-out, over-in
            raw.append((right, out2, out1, left))
        else:
            # right passes over: under-in left, over-in, under-out, over-out
            raw.append((left, right, out2, out1))
        current[pos - 1], current[pos] = out1, out2

    # closure identifies each strand's final edge with its initial edge
    parent = list(range(nxt))

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for p in range(strands):
        ra, rb = find(p), find(current[p])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    used = set()
    for x in raw:
        used.update(find(v) for v in x)
    label = {}
    for e in sorted(used):
        label[e] = len(label) + 1
    crossings = tuple(tuple(label[find(v)] for v in x) for x in raw)
    for x in crossings:
        if len(set(x)) != 4:
            raise DiagramError(
                "braid word closes into a kinked diagram: some strand meets "
                "only one crossing"
            )
    free = sum(1 for p in range(strands) if find(p) not in used)
    if not crossings:
        return PDCode((), free_components=strands)
    return PDCode(crossings, free_components=free)


def hopf_link() -> PDCode:
    return braid_closure(2, [(1, 1), (1, 1)])


def trefoil() -> PDCode:
    return braid_closure(2, [(1, 1), (1, 1), (1, 1)])


def borromean() -> PDCode:
    return braid_closure(3, [(1, 1), (2, -1)] * 3)


def whitehead() -> PDCode:
    return braid_closure(3, [(1, 1), (2, -1), (1, 1), (2, -1), (1, 1)])


def unlink(m: int) -> PDCode:
    if m < 1:
        raise DiagramError("unlink needs at least one circle")
    return PDCode((), free_components=m)


def trefoil_plus_circle() -> PDCode:
    t = trefoil()
    return PDCode(t.crossings, free_components=1)


def hopf_fibers_diagram(n: int) -> PDCode:
    """Diagram of n pairwise once-linked circles (all pairwise linking +1).

    Realized as the closure of the full twist on n strands: every pair of
    strands crosses exactly twice, positively.
    """
    if n < 1:
        raise DiagramError("need at least one fiber")
    word = [(i, 1) for _ in range(n) for i in range(1, n)]
    return braid_closure(n, word)


BUILTIN_DIAGRAMS = {
    "hopf": lambda n=None: hopf_link(),
    "trefoil": lambda n=None: trefoil(),
    "borromean": lambda n=None: borromean(),
    "whitehead": lambda n=None: whitehead(),
    "unlink": lambda n=None: unlink(2 if n is None else n),
    "trefoil-plus-circle": lambda n=None: trefoil_plus_circle(),
    "hopf-fibers": lambda n=None: hopf_fibers_diagram(3 if n is None else n),
}


# ---------------------------------------------------------------------------
# meridian presentation


@dataclass(frozen=True)
class WirtingerData:
    """Meridian generators (one per over-arc) and crossing relations.

    Each relation (out_arc, over_arc, sign, in_arc) says the meridian of
    out_arc equals over^-sign * in * over^sign, with meridians oriented to
    link their arcs positively. base_arcs picks, per edge-bearing
    component, the arc containing its smallest edge.
    """

    num_components: int
    generators: tuple
    relations: tuple
    base_arcs: tuple  # (component, arc) pairs

    @property
    def base_arc_map(self) -> dict:
        return dict(self.base_arcs)


def wirtinger(pd: PDCode) -> WirtingerData:
    rels = []
    for xi, (a, b, c, d) in enumerate(pd.crossings):
        rels.append(
            (pd.arc_of_edge[c], pd.arc_of_edge[b], pd.signs[xi], pd.arc_of_edge[a])
        )
    bases = tuple(
        (ci + 1, pd.arc_of_edge[cyc[0]])
        for ci, cyc in enumerate(pd.component_edges)
        if cyc
    )
    return WirtingerData(
        num_components=pd.num_components,
        generators=pd.arcs,
        relations=tuple(rels),
        base_arcs=bases,
    )


# ---------------------------------------------------------------------------
# longitudes


@dataclass(frozen=True)
class Longitude:
    """Reading of a component's parallel pushoff in the meridian generators.

    letters lists (over_arc, sign) for each crossing passed under, in
    traversal order from the base arc; the pushoff is their product times
    base-meridian^(-framing), with framing the component's self-writhe.
    """

    component: int
    letters: tuple
    framing: int


def _component_chain(pd: PDCode, component: int):
    """Under-pass transitions (in_arc, over_arc, sign, out_arc) along the component."""
    cyc = pd.component_edges[component - 1]
    chain = []
    for e in cyc:
        xi = pd.underpass_crossing(e)
        if xi is None:
            continue
        a, b, c, _ = pd.crossings[xi]
        chain.append(
            (pd.arc_of_edge[a], pd.arc_of_edge[b], pd.signs[xi], pd.arc_of_edge[c])
        )
    return chain


def longitude(pd: PDCode, component: int) -> Longitude:
    if not 1 <= component <= pd.num_components:
        raise DiagramError(f"no component {component}")
    cyc = pd.component_edges[component - 1]
    if not cyc:
        return Longitude(component, (), 0)
    letters = tuple((ov, s) for _, ov, s, _ in _component_chain(pd, component))
    return Longitude(component, letters, pd.self_writhe(component))


# ---------------------------------------------------------------------------
# pushing meridians into the nilpotent quotient


@lru_cache(maxsize=128)
def arc_conjugators(pd: PDCode, q: int) -> dict:
    """Words u_arc with meridian(arc) = u * y_component * u^-1 mod the q-th
    lower central subgroup.

    Built by q rounds of substitution: each round rewrites every arc's
    conjugator by walking the component from its base arc and applying the
    crossing relations, with over-arc conjugators taken from the previous
    round. Base arcs keep the empty conjugator throughout.
    """
    if q < 1:
        raise ValueError("need at least one round")
    m = pd.num_components
    u: dict[int, Word] = {arc: Word.identity(m) for arc in pd.arcs}
    chains = {
        ci + 1: _component_chain(pd, ci + 1)
        for ci, cyc in enumerate(pd.component_edges)
        if cyc
    }
    for _ in range(q):
        new_u: dict[int, Word] = {}
        for comp, chain in chains.items():
            base = pd.base_arc(comp)
            new_u[base] = Word.identity(m)
            for in_arc, over_arc, s, out_arc in chain:
                if out_arc == base:
                    continue
                w_over = u[over_arc]
                # crossing relation: out = over^-s * in * over^s
                gen = Word.generator(m, pd.arc_component[over_arc])
                if s > 0:
                    gen = gen.inverse()
                new_u[out_arc] = w_over * gen * w_over.inverse() * new_u[in_arc]
        u = new_u
    return u


@lru_cache(maxsize=256)
def reduced_longitude(pd: PDCode, component: int, q: int) -> Word:
    """Longitude of the component written in component meridians, valid for
    coefficient extraction up to degree q - 1."""
    m = pd.num_components
    lon = longitude(pd, component)
    if not lon.letters and lon.framing == 0:
        return Word.identity(m)
    u = arc_conjugators(pd, q)
    word = Word.identity(m)
    for over_arc, s in lon.letters:
        conj = u[over_arc]
        gen = Word.generator(m, pd.arc_component[over_arc])
        if s < 0:
            gen = gen.inverse()
        word = word * conj * gen * conj.inverse()
    w = lon.framing
    if w:
        mer = Word.generator(m, component)
        step = mer.inverse() if w > 0 else mer
        for _ in range(abs(w)):
            word = word * step
    return word
