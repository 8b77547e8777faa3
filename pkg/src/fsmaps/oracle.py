"""Exhaustive map census in the permutational model.

A gluing of polygons is encoded by permutations on half-edge labels
0..|H|-1: ``phi`` rotates once around each face, ``alpha`` is the
fixed-point-free pairing of half-edges into edges, and the vertex
permutation is recovered as sigma = (alpha o phi)^(-1), so that
sigma o alpha o phi = id.  Cycles of sigma are the vertices; the Euler
characteristic |C(sigma)| - |C(alpha)| + |C(phi)| fixes the genus.

Boundary faces are labeled and rooted: their half-edge labels stay fixed,
so connected counts come out as plain integers.  Internal faces are
unlabeled; enumerating with a fixed ``phi`` overcounts each map by
r! (relabeling the r internal faces) times prod(k_m) (rotating each one),
hence the weight 1/(r! * prod k_m) per gluing.

Boundary classification:
  * simple: within each single boundary, no vertex is visited twice;
  * fully simple: no vertex is visited twice by the union of all
    boundaries, so distinct boundaries are also vertex-disjoint.
With one boundary the two notions coincide.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

ORDINARY = "ordinary"
SIMPLE = "simple"
FULLY_SIMPLE = "fully-simple"
CONNECTED = "connected"
BOUNDARY_CONNECTED = "boundary-connected"

_CLASS_ORDER = {ORDINARY: 0, SIMPLE: 1, FULLY_SIMPLE: 2}
_CONN_ORDER = {CONNECTED: 0, BOUNDARY_CONNECTED: 1}


class HalfEdgeStructure:
    """Half-edge labels with the face rotation fixed by the degree data.

    Boundary faces come first: boundary i of length L_i occupies a
    consecutive block of labels, then each internal face of degree k_m
    gets its own block.  ``phi`` shifts cyclically inside every block.
    """

    __slots__ = ("boundary_lengths", "internal_degrees", "phi", "phi_inv",
                 "boundary_slices", "n_half", "n_boundary_half")

    def __init__(self, boundary_lengths: Sequence[int],
                 internal_degrees: Sequence[int] = ()) -> None:
        lengths = tuple(int(v) for v in boundary_lengths)
        degrees = tuple(int(v) for v in internal_degrees)
        if not lengths:
            raise ValueError("at least one boundary face is required")
        if any(v < 1 for v in lengths):
            raise ValueError("boundary lengths must be positive")
        if any(v < 1 for v in degrees):
            raise ValueError("internal face degrees must be positive")
        self.boundary_lengths = lengths
        self.internal_degrees = degrees
        self.n_boundary_half = sum(lengths)
        self.n_half = self.n_boundary_half + sum(degrees)
        phi = [0] * self.n_half
        slices = []
        start = 0
        for size in lengths + degrees:
            for i in range(size):
                phi[start + i] = start + (i + 1) % size
            if len(slices) < len(lengths):
                slices.append((start, start + size))
            start += size
        self.phi = phi
        self.phi_inv = [0] * self.n_half
        for h, img in enumerate(phi):
            self.phi_inv[img] = h
        self.boundary_slices = tuple(slices)


def _analyze(structure: HalfEdgeStructure, alpha: Sequence[int]):
    """Genus, boundary class and connectivity of one gluing.

    Returns (genus, simple, fully_simple, n_components, boundary_connected).
    For a disconnected gluing the genus key follows the additive Euler
    bookkeeping g = 1 - #components + sum of component genera, which can
    be negative; for connected gluings it is the usual genus.
    """
    phi = structure.phi
    phi_inv = structure.phi_inv
    n_half = structure.n_half
    nb_half = structure.n_boundary_half
    nb = len(structure.boundary_lengths)
    r = len(structure.internal_degrees)

    # vertices: cycles of sigma = phi_inv o alpha
    cyc = [-1] * n_half
    ncyc = 0
    for h0 in range(n_half):
        if cyc[h0] < 0:
            j = h0
            while cyc[j] < 0:
                cyc[j] = ncyc
                j = phi_inv[alpha[j]]
            ncyc += 1
    chi = ncyc - n_half // 2 + r
    genus2 = 2 - nb - chi
    assert genus2 % 2 == 0
    genus = genus2 // 2

    simple = True
    for s, e in structure.boundary_slices:
        if len(set(cyc[s:e])) != e - s:
            simple = False
            break
    fully_simple = simple and len(set(cyc[:nb_half])) == nb_half

    comp = [-1] * n_half
    ncomp = 0
    for h0 in range(n_half):
        if comp[h0] < 0:
            comp[h0] = ncomp
            stack = [h0]
            while stack:
                j = stack.pop()
                a = alpha[j]
                if comp[a] < 0:
                    comp[a] = ncomp
                    stack.append(a)
                p = phi[j]
                if comp[p] < 0:
                    comp[p] = ncomp
                    stack.append(p)
            ncomp += 1
    boundary_connected = len(set(comp[:nb_half])) == ncomp
    return genus, simple, fully_simple, ncomp, boundary_connected


class CombMap:
    """One gluing: a fixed-point-free pairing of the half-edges."""

    __slots__ = ("structure", "alpha", "genus", "map_class",
                 "n_components", "connected", "boundary_connected")

    def __init__(self, structure: HalfEdgeStructure,
                 alpha: Sequence[int]) -> None:
        pairing = tuple(int(a) for a in alpha)
        n_half = structure.n_half
        if len(pairing) != n_half:
            raise ValueError("pairing length does not match the half-edge count")
        for h, a in enumerate(pairing):
            if not 0 <= a < n_half or a == h or pairing[a] != h:
                raise ValueError("alpha must be a fixed-point-free involution")
        self.structure = structure
        self.alpha = pairing
        genus, simple, fs, ncomp, bconn = _analyze(structure, pairing)
        self.genus = genus
        self.map_class = FULLY_SIMPLE if fs else (SIMPLE if simple else ORDINARY)
        self.n_components = ncomp
        self.connected = ncomp == 1
        self.boundary_connected = bconn

    def sigma(self) -> tuple[int, ...]:
        phi_inv = self.structure.phi_inv
        return tuple(phi_inv[self.alpha[h]] for h in range(self.structure.n_half))


def classify(m: CombMap) -> str:
    """Finest class of the map: ordinary < simple < fully-simple."""
    return m.map_class


class Census:
    """Weighted map counts keyed by (genus, class, connectivity).

    Class bins are cumulative: a fully simple map contributes to all
    three, a simple one to simple and ordinary.  Connectivity bins:
    ``connected`` needs a single component, ``boundary-connected`` only
    that every component carries a boundary; gluings with a closed
    component appear in neither.
    """

    __slots__ = ("table",)

    def __init__(self, table: dict | None = None) -> None:
        self.table = dict(table or {})

    def count(self, genus: int, map_class: str = ORDINARY,
              connectivity: str = CONNECTED) -> Fraction:
        if map_class not in _CLASS_ORDER:
            raise ValueError(f"unknown map class {map_class!r}")
        if connectivity not in _CONN_ORDER:
            raise ValueError(f"unknown connectivity {connectivity!r}")
        return self.table.get((genus, map_class, connectivity), Fraction(0))

    def genus_table(self, map_class: str = ORDINARY,
                    connectivity: str = CONNECTED) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (g, cls, conn), w in self.table.items():
            if cls == map_class and conn == connectivity and w:
                out[g] = w
        return out

    def to_csv(self) -> str:
        lines = ["genus,class,connectivity,weight"]
        keys = sorted(self.table,
                      key=lambda k: (k[0], _CLASS_ORDER[k[1]], _CONN_ORDER[k[2]]))
        for key in keys:
            g, cls, conn = key
            lines.append(f"{g},{cls},{conn},{self.table[key]}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Census):
            return NotImplemented
        return self.table == other.table

    def __repr__(self) -> str:
        return f"Census({self.table!r})"


def _pairings(structure: HalfEdgeStructure) -> Iterator[list[int]]:
    """Yield every fixed-point-free involution, smallest-unmatched-first.

    The yielded list is reused in place; callers must not hold on to it.
    """
    n_half = structure.n_half
    alpha = [-1] * n_half

    def walk(lo: int) -> Iterator[list[int]]:
        while lo < n_half and alpha[lo] >= 0:
            lo += 1
        if lo == n_half:
            yield alpha
            return
        for h1 in range(lo + 1, n_half):
            if alpha[h1] < 0:
                alpha[lo] = h1
                alpha[h1] = lo
                yield from walk(lo + 1)
                alpha[h1] = -1
        alpha[lo] = -1

    yield from walk(0)


def enumerate_maps(boundary_lengths: Sequence[int],
                   internal_degrees: Sequence[int] = (),
                   cap: int = 16) -> Census:
    """Census of all gluings of the given boundary and internal faces.

    Nonzero only for even |H|; raises when |H| exceeds ``cap`` since the
    walk visits (|H|-1)!! pairings.
    """
    structure = HalfEdgeStructure(boundary_lengths, internal_degrees)
    n_half = structure.n_half
    if n_half > cap:
        raise ValueError(
            f"half-edge count {n_half} exceeds cap {cap}; "
            "pass a larger cap to force the enumeration")
    if n_half % 2:
        return Census()

    counts: dict[tuple[int, str, str], int] = {}
    for alpha in _pairings(structure):
        genus, simple, fs, ncomp, bconn = _analyze(structure, alpha)
        if ncomp == 1:
            conns = (CONNECTED, BOUNDARY_CONNECTED)
        elif bconn:
            conns = (BOUNDARY_CONNECTED,)
        else:
            continue
        if fs:
            classes = (ORDINARY, SIMPLE, FULLY_SIMPLE)
        elif simple:
            classes = (ORDINARY, SIMPLE)
        else:
            classes = (ORDINARY,)
        for cls in classes:
            for conn in conns:
                key = (genus, cls, conn)
                counts[key] = counts.get(key, 0) + 1

    weight = Fraction(1, factorial(len(structure.internal_degrees))
                      * prod(structure.internal_degrees))
    return Census({key: weight * n for key, n in counts.items()})


def gue_census(boundary_lengths: Sequence[int], cap: int = 16) -> dict[int, Fraction]:
    """Connected ordinary counts per genus for gluings with no internal faces."""
    census = enumerate_maps(boundary_lengths, (), cap)
    return census.genus_table(ORDINARY, CONNECTED)
