"""Simple graphs: exact spectra, distance partitions, and regularity checks.

Characteristic polynomials of adjacency matrices are computed with integer
arithmetic only (Bareiss determinants at interpolation nodes), so spectra
come out as exact algebraic numbers and every classification below is a
sign decision, never a tolerance.

The per-vertex machinery builds the distance partition around a vertex,
averages the adjacency counts into a rational quotient matrix, and feeds
regular graphs into the tridiagonal checks: the vertex pair bound
(theta_1+1)(theta_D+1) <= -beta_1(x) whose all-vertex equality case is
exactly strong regularity, the diameter->=3 triple bound on intersection
arrays, and the fundamental bound with its tightness test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebraics import AlgebraicReal, compare, isolate_real_roots_with_multiplicity
from .polynomials import RationalPoly
from . import tridiagonal
from .tridiagonal import (
    TridiagonalSystem,
    TripleBoundResult,
    _report_value,
    compare_shifted_product,
)


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_edge_count")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        count = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
            count += 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_edge_count", count)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_regular(self) -> bool:
        degs = {len(s) for s in self.adj}
        return len(degs) == 1

    def is_complete(self) -> bool:
        return all(len(s) == self.n - 1 for s in self.adj)

    def is_empty_graph(self) -> bool:
        return self._edge_count == 0

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._edge_count})"

    # -- traversal -----------------------------------------------------------

    def bfs_distances(self, x: int) -> list[int]:
        dist = [-1] * self.n
        dist[x] = 0
        frontier = [x]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def is_connected(self) -> bool:
        return all(d >= 0 for d in self.bfs_distances(0))

    def is_bipartite(self) -> tuple[bool, tuple[int, ...]]:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False, tuple()
        return True, tuple(color)

    def girth(self) -> int | None:
        """Length of a shortest cycle, None for forests."""
        best: int | None = None
        for s in range(self.n):
            dist = [-1] * self.n
            parent = [-1] * self.n
            dist[s] = 0
            queue = [s]
            qi = 0
            while qi < len(queue):
                u = queue[qi]
                qi += 1
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif w != parent[u]:
                        cycle = dist[u] + dist[w] + 1
                        if best is None or cycle < best:
                            best = cycle
        return best

    def diameter(self) -> int:
        best = 0
        for x in range(self.n):
            dist = self.bfs_distances(x)
            if min(dist) < 0:
                raise GraphError("diameter of a disconnected graph")
            best = max(best, max(dist))
        return best

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Graph":
        if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
            raise GraphError("graph JSON needs fields 'n' and 'edges'")
        n = obj["n"]
        if not isinstance(n, int):
            raise GraphError("'n' must be an integer")
        edges = []
        for e in obj["edges"]:
            if not (isinstance(e, (list, tuple)) and len(e) == 2):
                raise GraphError(f"malformed edge entry {e!r}")
            edges.append((int(e[0]), int(e[1])))
        return cls(n, edges)


# -- graph6 -------------------------------------------------------------------------


def parse_graph6(data: bytes | str) -> Graph:
    """Strict graph6 decoder: rejects range, truncation and padding faults."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<") :]
    if not data:
        raise GraphError("empty graph6 input")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphError(f"graph6 byte out of range at offset {off}: {byte}")
    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise GraphError("truncated graph6 size block")
        n = 0
        for byte in data[1:4]:
            n = (n << 6) | (byte - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise GraphError("truncated graph6 size block")
        n = 0
        for byte in data[2:8]:
            n = (n << 6) | (byte - 63)
        pos = 8
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphError(f"truncated graph6 bit stream: need {nbytes} bytes, got {len(body)}")
    if len(body) > nbytes:
        raise GraphError("trailing bytes after graph6 bit stream")
    if n == 0:
        raise GraphError("graph6 input encodes an empty vertex set")
    bits = []
    for byte in body:
        v = byte - 63
        for k in range(5, -1, -1):
            bits.append((v >> k) & 1)
    if any(bits[nbits:]):
        raise GraphError("nonzero padding bits in graph6 stream")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    n = g.n
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        out.extend(((n >> shift) & 63) + 63 for shift in (12, 6, 0))
    else:
        out.append(126)
        out.append(126)
        out.extend(((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0))
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if v in g.adj[u] else 0)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        v = 0
        for b in bits[i : i + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return out.decode("ascii")


# -- distance partitions and quotient matrices ------------------------------------------


@dataclass(frozen=True)
class DistancePartition:
    base: int
    cells: tuple[tuple[int, ...], ...]
    eccentricity: int


def bfs_partition(g: Graph, x: int) -> DistancePartition:
    dist = g.bfs_distances(x)
    if min(dist) < 0:
        raise GraphError("distance partition of a disconnected graph")
    ecc = max(dist)
    cells = [[] for _ in range(ecc + 1)]
    for v, d in enumerate(dist):
        cells[d].append(v)
    return DistancePartition(x, tuple(tuple(sorted(c)) for c in cells), ecc)


@dataclass(frozen=True)
class QuotientMatrix:
    base: int
    entries: tuple[tuple[Fraction, ...], ...]
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]  # beta_0..beta_{D_x - 1}
    gamma: tuple[Fraction, ...]  # gamma_1..gamma_{D_x}
    equitable: bool

    def to_tridiagonal(self, kappa: Fraction) -> TridiagonalSystem:
        return TridiagonalSystem.from_entries(self.alpha, self.beta, self.gamma, kappa)


def quotient_matrix(g: Graph, part: DistancePartition) -> QuotientMatrix:
    """Cell-averaged adjacency counts over the distance partition.

    Entry (i, j) is the average number of neighbours in cell j over the
    vertices of cell i, an exact rational; the partition is equitable when
    every vertex of each cell realizes the average exactly.
    """
    cells = part.cells
    k = len(cells)
    cell_of = {}
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    entries = []
    equitable = True
    for i, cell in enumerate(cells):
        counts = []
        for v in cell:
            row = [0] * k
            for w in g.adj[v]:
                row[cell_of[w]] += 1
            counts.append(row)
        avg = []
        for j in range(k):
            col = [c[j] for c in counts]
            if any(c != col[0] for c in col):
                equitable = False
            avg.append(Fraction(sum(col), len(cell)))
        entries.append(tuple(avg))
    alpha = tuple(entries[i][i] for i in range(k))
    beta = tuple(entries[i][i + 1] for i in range(k - 1))
    gamma = tuple(entries[i][i - 1] for i in range(1, k))
    qm = QuotientMatrix(part.base, tuple(entries), alpha, beta, gamma, equitable)
    if g.is_regular() and k >= 3:
        # a regular graph's distance quotient always meets the row-sum condition
        rep = tridiagonal.validate(qm.to_tridiagonal(Fraction(g.degree(0))))
        if not rep.ok:
            raise AssertionError(
                "regular-graph quotient violates the row-sum condition: " + "; ".join(rep.violations)
            )
    return qm


def quotient_system(g: Graph, x: int) -> TridiagonalSystem:
    """The quotient matrix around x as a row-sum tridiagonal system (g regular)."""
    if not g.is_regular():
        raise GraphError("quotient system requires a regular graph")
    part = bfs_partition(g, x)
    qm = quotient_matrix(g, part)
    k = Fraction(g.degree(0))
    system = qm.to_tridiagonal(k)
    rep = tridiagonal.validate(system)
    if not rep.ok:
        raise AssertionError(
            "quotient of a regular graph must satisfy the row-sum condition: "
            + "; ".join(rep.violations)
        )
    return system


# -- exact adjacency spectra --------------------------------------------------------------


def _int_matrix_det(m: list[list[int]]) -> int:
    from .algebraics import _int_det_bareiss

    return _int_det_bareiss(m)


def adjacency_charpoly(g: Graph) -> RationalPoly:
    """det(xI - A) computed from integer determinants at n+1 nodes.

    Evaluating at integers keeps all arithmetic in Z; the monic degree-n
    polynomial is recovered by exact interpolation.
    """
    n = g.n
    from .algebraics import _newton_interpolate

    xs = list(range(n + 1))
    ys = []
    for t in xs:
        m = [[t if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in g.adj[i]:
                m[i][j] = -1
        ys.append(_int_matrix_det(m))
    return _newton_interpolate(xs, ys)


@dataclass(frozen=True)
class GraphSpectrum:
    charpoly: RationalPoly
    distinct: tuple[AlgebraicReal, ...]  # descending
    multiplicities: tuple[int, ...]

    @property
    def d(self) -> int:
        """Number of distinct eigenvalues minus one."""
        return len(self.distinct) - 1


def spectrum_graph(g: Graph) -> GraphSpectrum:
    cp = adjacency_charpoly(g)
    pairs = isolate_real_roots_with_multiplicity(cp)
    if sum(m for _, m in pairs) != g.n:
        raise AssertionError("adjacency spectrum must be totally real")
    pairs.reverse()
    return GraphSpectrum(cp, tuple(r for r, _ in pairs), tuple(m for _, m in pairs))


# -- interlacing ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InterlaceReport:
    passed: bool
    theta1_eq_tau1: bool
    thetamin_eq_taumin: bool


def interlace_check(g: Graph, x: int, spec: GraphSpectrum | None = None) -> InterlaceReport:
    """theta_1 >= tau_1 and tau_last >= theta_min, exactly."""
    if not g.is_connected():
        raise GraphError("interlacing check requires a connected graph")
    if not g.is_regular():
        raise GraphError("interlacing check requires a regular graph")
    spec = spec or spectrum_graph(g)
    system = quotient_system(g, x)
    rep = tridiagonal.spectrum(system)
    tau = rep.eigenvalues
    theta1, thetamin = spec.distinct[1], spec.distinct[-1]
    c_top = compare(theta1, tau[1])
    c_bot = compare(tau[-1], thetamin)
    return InterlaceReport(c_top >= 0 and c_bot >= 0, c_top == 0, c_bot == 0)


# -- regularity classification ----------------------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    degree: int | None
    diameter: int
    bipartite: bool
    distance_regular_around: tuple[bool, ...]
    distance_regularised: bool
    distance_regular: bool
    distance_biregular: bool
    strongly_regular: bool

    def to_json_dict(self) -> dict:
        return {
            "regular": self.regular,
            "degree": self.degree,
            "diameter": self.diameter,
            "bipartite": self.bipartite,
            "distance_regularised": self.distance_regularised,
            "distance_regular": self.distance_regular,
            "distance_biregular": self.distance_biregular,
            "strongly_regular": self.strongly_regular,
        }


def _local_parameters(g: Graph, x: int) -> list[tuple[int, int, int]] | None:
    """(gamma_i, alpha_i, beta_i) around x when constant per distance, else None."""
    dist = g.bfs_distances(x)
    ecc = max(dist)
    params: list[tuple[int, int, int] | None] = [None] * (ecc + 1)
    for y in range(g.n):
        i = dist[y]
        down = sum(1 for w in g.adj[y] if dist[w] == i - 1)
        same = sum(1 for w in g.adj[y] if dist[w] == i)
        up = sum(1 for w in g.adj[y] if dist[w] == i + 1)
        trio = (down, same, up)
        if params[i] is None:
            params[i] = trio
        elif params[i] != trio:
            return None
    return [p for p in params if p is not None]


def classify_regularity(g: Graph) -> RegularityReport:
    if not g.is_connected():
        raise GraphError("classification requires a connected graph")
    regular = g.is_regular()
    degree = g.degree(0) if regular else None
    diameter = g.diameter()
    bip, _ = g.is_bipartite()
    around = []
    local: list[list[tuple[int, int, int]] | None] = []
    for x in range(g.n):
        p = _local_parameters(g, x)
        local.append(p)
        around.append(p is not None)
    regularised = all(around)
    dr = regularised and all(local[x] == local[0] for x in range(g.n))
    biregular = regularised and not dr
    if biregular and not bip:
        raise AssertionError("distance-regularised but neither distance-regular nor bipartite")
    sr = dr and diameter == 2
    return RegularityReport(
        regular, degree, diameter, bip, tuple(around), regularised, dr, biregular, sr
    )


# -- the vertex pair bound -----------------------------------------------------------------


@dataclass(frozen=True)
class VertexBound:
    vertex: int
    rhs: Fraction  # -beta_1(x)
    holds: bool
    equality: bool


@dataclass(frozen=True)
class PairBoundReport:
    lhs: object  # exact value of (theta_1+1)(theta_min+1)
    per_vertex: tuple[VertexBound, ...]
    all_hold: bool
    equality_everywhere: bool
    strongly_regular_verdict: bool
    cross_check_ok: bool

    def to_json_dict(self) -> dict:
        from .serialize import rat_str, value_json

        return {
            "lhs": value_json(self.lhs),
            "per_vertex": [
                {"vertex": v.vertex, "rhs": rat_str(v.rhs), "holds": v.holds, "equality": v.equality}
                for v in self.per_vertex
            ],
            "all_hold": self.all_hold,
            "equality_everywhere": self.equality_everywhere,
            "strongly_regular_verdict": self.strongly_regular_verdict,
            "cross_check_ok": self.cross_check_ok,
        }


def pair_bound_all_vertices(
    g: Graph,
    spec: GraphSpectrum | None = None,
    classification: RegularityReport | None = None,
) -> PairBoundReport:
    """(theta_1+1)(theta_min+1) <= -beta_1(x) at every vertex.

    Equality at every vertex is equivalent to strong regularity; the report
    cross-checks that equivalence against the combinatorial classification
    and flags a mismatch (cross_check_ok False), which callers treat as a
    soundness alarm.
    """
    if not g.is_connected():
        raise GraphError("pair bound requires a connected graph")
    if not g.is_regular():
        raise GraphError("pair bound requires a regular graph")
    if g.is_complete():
        raise GraphError("pair bound is not defined for complete graphs")
    if g.is_empty_graph():
        raise GraphError("pair bound is not defined for empty graphs")
    spec = spec or spectrum_graph(g)
    sf = _squarefree(spec.charpoly)
    roots_asc = _ascending(spec.distinct)
    n_roots = len(roots_asc)
    subset = [n_roots - 2, 0]  # theta_1 and theta_min (theta_0 = k is index n-1)
    lhs = _report_value(sf, roots_asc, subset, 1)
    per_vertex = []
    for x in range(g.n):
        part = bfs_partition(g, x)
        qm = quotient_matrix(g, part)
        rhs = -qm.beta[1]
        cmp = compare_shifted_product(sf, roots_asc, subset, 1, rhs)
        per_vertex.append(VertexBound(x, rhs, cmp <= 0, cmp == 0))
    all_hold = all(v.holds for v in per_vertex)
    eq_all = all(v.equality for v in per_vertex)
    classification = classification or classify_regularity(g)
    cross = eq_all == classification.strongly_regular
    return PairBoundReport(lhs, tuple(per_vertex), all_hold, eq_all, eq_all, cross)


def _squarefree(p: RationalPoly) -> RationalPoly:
    from .polynomials import squarefree_part

    return squarefree_part(p)


def _ascending(distinct_desc: Sequence[AlgebraicReal]) -> list[AlgebraicReal]:
    return list(reversed(list(distinct_desc)))


# -- intersection arrays ------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]  # b_0..b_{D-1}
    c: tuple[int, ...]  # c_1..c_D

    @property
    def k(self) -> int:
        return self.b[0]

    @property
    def diameter(self) -> int:
        return len(self.b)

    @property
    def a(self) -> tuple[int, ...]:
        d = self.diameter
        out = [0]
        for i in range(1, d):
            out.append(self.k - self.b[i] - self.c[i - 1])
        out.append(self.k - self.c[d - 1])
        return tuple(out)

    def to_system(self) -> TridiagonalSystem:
        return TridiagonalSystem.from_intersection_numbers(self.b, self.c)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


def intersection_array(g: Graph, classification: RegularityReport | None = None) -> IntersectionArray:
    classification = classification or classify_regularity(g)
    if not classification.distance_regular:
        raise GraphError("intersection array requires a distance-regular graph")
    params = _local_parameters(g, 0)
    assert params is not None
    b = tuple(p[2] for p in params[:-1])
    c = tuple(p[0] for p in params[1:])
    arr = IntersectionArray(b, c)
    # cell sizes k_{i+1} = k_i b_i / c_{i+1} must come out integral
    k_i = 1
    for i in range(arr.diameter):
        nxt = Fraction(k_i * arr.b[i], arr.c[i])
        if nxt.denominator != 1:
            raise AssertionError("inconsistent intersection array: k_i not integral")
        k_i = int(nxt)
    return arr


def triple_bound_graph(g: Graph, spec: GraphSpectrum | None = None) -> TripleBoundResult:
    """The triple-product bound on a distance-regular graph of diameter >= 3."""
    classification = classify_regularity(g)
    if not classification.distance_regular:
        raise GraphError("triple bound requires a distance-regular graph")
    arr = intersection_array(g, classification)
    if arr.diameter < 3:
        raise GraphError("triple bound requires diameter >= 3")
    return tridiagonal.triple_bound(arr.to_system())


# -- fundamental bound ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FundamentalBoundReport:
    lhs: object
    rhs: Fraction
    holds: bool
    equality: bool
    bipartite: bool
    tight: bool

    def to_json_dict(self) -> dict:
        from .serialize import rat_str, value_json

        return {
            "lhs": value_json(self.lhs),
            "rhs": rat_str(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
            "bipartite": self.bipartite,
            "tight": self.tight,
        }


def fundamental_bound(g: Graph, spec: GraphSpectrum | None = None) -> FundamentalBoundReport:
    """(theta_1 + k/(a_1+1))(theta_min + k/(a_1+1)) >= -k a_1 b_1/(a_1+1)^2.

    Tight means nonbipartite with exact equality.
    """
    classification = classify_regularity(g)
    if not classification.distance_regular:
        raise GraphError("fundamental bound requires a distance-regular graph")
    arr = intersection_array(g, classification)
    if arr.diameter < 2:
        raise GraphError("fundamental bound requires diameter >= 2")
    k = Fraction(arr.k)
    a1 = Fraction(arr.a[1])
    b1 = Fraction(arr.b[1])
    shift = k / (a1 + 1)
    rhs = -k * a1 * b1 / (a1 + 1) ** 2
    spec = spec or spectrum_graph(g)
    sf = _squarefree(spec.charpoly)
    roots_asc = _ascending(spec.distinct)
    subset = [len(roots_asc) - 2, 0]
    cmp = compare_shifted_product(sf, roots_asc, subset, shift, rhs)
    lhs = _report_value(sf, roots_asc, subset, shift)
    equality = cmp == 0
    return FundamentalBoundReport(
        lhs, rhs, cmp >= 0, equality, classification.bipartite, equality and not classification.bipartite
    )


# -- random regular graphs -----------------------------------------------------------------------


def random_regular_graph(rng: random.Random, n: int, k: int, max_tries: int = 4000) -> Graph:
    """Pairing-model sample, rejecting until simple and connected."""
    if n * k % 2 != 0 or k >= n:
        raise GraphError("no k-regular graph on n vertices with these parameters")
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(k)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if not ok:
            continue
        g = Graph(n, sorted(edges))
        if g.is_connected():
            return g
    raise RuntimeError("pairing model failed to produce a simple connected graph")
