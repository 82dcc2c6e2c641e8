"""Bipartite graphs with a fixed bipartition, plus file I/O and instance generators.

Vertices are dense integer ids: side X occupies 0..x_size-1 and side Y occupies
x_size..x_size+y_size-1, so side membership is a single comparison. Neighborhoods
are stored as integer bitmasks over the whole id range, which makes degree
counting inside a vertex subset a masked popcount.
"""
from __future__ import annotations

import random
from typing import Iterable, Iterator

from .profiles import make_profile

VertexSet = int  # dense bitmask over vertex ids


class GraphError(ValueError):
    """Invalid graph construction or query."""


class ParseError(GraphError):
    """Malformed graph file; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for v in ids:
        m |= 1 << v
    return m


class BipartiteGraph:
    """Immutable bipartite graph; all edges join side X to side Y."""

    __slots__ = ("x_size", "y_size", "adjacency")

    def __init__(self, x_size: int, y_size: int, edges: Iterable[tuple[int, int]]):
        if x_size < 0 or y_size < 0:
            raise GraphError("side sizes must be nonnegative")
        self.x_size = x_size
        self.y_size = y_size
        n = x_size + y_size
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for {x_size}+{y_size} vertices")
            if (u < x_size) == (v < x_size):
                raise GraphError(f"edge ({u},{v}) does not cross the bipartition")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u},{v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adjacency = tuple(adj)

    # -- basic structure ---------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.x_size + self.y_size

    @property
    def full_mask(self) -> int:
        return (1 << self.num_vertices) - 1

    @property
    def x_mask(self) -> int:
        return (1 << self.x_size) - 1

    @property
    def y_mask(self) -> int:
        return self.full_mask ^ self.x_mask

    def is_x(self, v: int) -> bool:
        return v < self.x_size

    def side_mask(self, v: int) -> int:
        """Bitmask of the side containing ``v``."""
        return self.x_mask if v < self.x_size else self.y_mask

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.num_vertices):
            raise GraphError(f"invalid vertex id {v!r}")

    def _check_subset(self, s: int) -> None:
        if s < 0 or s & ~self.full_mask:
            raise GraphError(f"vertex set {bin(s)} is not a subset of the graph")

    # -- queries -----------------------------------------------------------

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adjacency[v].bit_count()

    def degree_in(self, v: int, s: VertexSet) -> int:
        """Number of neighbors of ``v`` inside the vertex set ``s``."""
        self._check_vertex(v)
        self._check_subset(s)
        return (self.adjacency[v] & s).bit_count()

    def neighbors_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self.adjacency[v]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(bits(self.adjacency[v]))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adjacency[u] >> v & 1)

    def min_degree(self) -> int:
        if self.num_vertices == 0:
            raise GraphError("minimum degree of an empty graph is undefined")
        return min(a.bit_count() for a in self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as (x_id, y_id) in ascending lexicographic order."""
        for u in range(self.x_size):
            for v in bits(self.adjacency[u]):
                yield (u, v)

    def induced(self, s: VertexSet) -> "GraphView":
        self._check_subset(s)
        return GraphView(self, s)

    def view(self) -> "GraphView":
        return GraphView(self, self.full_mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and self.x_size == other.x_size
            and self.y_size == other.y_size
            and self.adjacency == other.adjacency
        )

    def __hash__(self) -> int:
        return hash((self.x_size, self.y_size, self.adjacency))

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.x_size}+{self.y_size}, {self.edge_count} edges)"


class GraphView:
    """Read-only view of a graph restricted to a vertex subset.

    Degree and neighborhood queries see only member vertices; side labels are
    inherited from the base graph.
    """

    __slots__ = ("graph", "mask")

    def __init__(self, graph: BipartiteGraph, mask: VertexSet):
        graph._check_subset(mask)
        self.graph = graph
        self.mask = mask

    @property
    def num_vertices(self) -> int:
        return self.mask.bit_count()

    def vertices(self) -> Iterator[int]:
        return bits(self.mask)

    def contains(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def _check_member(self, v: int) -> None:
        self.graph._check_vertex(v)
        if not self.contains(v):
            raise GraphError(f"vertex {v} is not in the view")

    def degree(self, v: int) -> int:
        self._check_member(v)
        return (self.graph.adjacency[v] & self.mask).bit_count()

    def neighbors_mask(self, v: int) -> int:
        self._check_member(v)
        return self.graph.adjacency[v] & self.mask

    def has_edge(self, u: int, v: int) -> bool:
        self._check_member(u)
        self._check_member(v)
        return bool(self.graph.adjacency[u] >> v & 1)

    @property
    def x_vertices(self) -> int:
        return self.mask & self.graph.x_mask

    @property
    def y_vertices(self) -> int:
        return self.mask & self.graph.y_mask

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in bits(self.x_vertices):
            for v in bits(self.graph.adjacency[u] & self.mask):
                yield (u, v)


# -- file format -----------------------------------------------------------
#
#   p bip <x_size> <y_size> <edge_count>
#   c free-form comment
#   e <x_id> <y_id>
#
# ASCII, LF line separator. Edge ids are 0-based with Y ids offset by x_size.


def parse_graph(text: str | bytes) -> BipartiteGraph:
    """Parse the line-oriented graph format; raise :class:`ParseError` on bad input."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"not ASCII: {exc}") from None
    x_size = y_size = declared = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if declared is not None:
                raise ParseError(line_no, "duplicate header")
            if len(fields) != 5 or fields[1] != "bip":
                raise ParseError(line_no, f"malformed header {line!r}")
            try:
                x_size, y_size, declared = (int(f) for f in fields[2:])
            except ValueError:
                raise ParseError(line_no, f"non-integer header field in {line!r}") from None
            if x_size < 0 or y_size < 0 or declared < 0:
                raise ParseError(line_no, "negative count in header")
        elif fields[0] == "e":
            if declared is None:
                raise ParseError(line_no, "edge before header")
            if len(fields) != 3:
                raise ParseError(line_no, f"malformed edge line {line!r}")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(line_no, f"non-integer vertex id in {line!r}") from None
            if not (0 <= u < x_size):
                raise ParseError(line_no, f"x-side id {u} out of range [0,{x_size})")
            if not (x_size <= v < x_size + y_size):
                raise ParseError(line_no, f"y-side id {v} out of range [{x_size},{x_size + y_size})")
            if (u, v) in seen:
                raise ParseError(line_no, f"duplicate edge ({u},{v})")
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise ParseError(line_no, f"unrecognized line {line!r}")
    if declared is None:
        raise ParseError(0, "missing header")
    if len(edges) != declared:
        raise ParseError(0, f"header declares {declared} edges, found {len(edges)}")
    return BipartiteGraph(x_size, y_size, edges)


def serialize_graph(g: BipartiteGraph) -> str:
    """Inverse of :func:`parse_graph`; edges emitted in ascending (x, y) order."""
    lines = [f"p bip {g.x_size} {g.y_size} {g.edge_count}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- generators ------------------------------------------------------------


def gen_complete(m: int) -> BipartiteGraph:
    """Complete bipartite graph K_{m,m}."""
    if m < 1:
        raise GraphError("gen_complete requires m >= 1")
    return BipartiteGraph(m, m, [(u, m + v) for u in range(m) for v in range(m)])


def gen_random_mindeg(
    x_size: int, y_size: int, delta: int, seed: int, fill_p: float = 0.5
) -> BipartiteGraph:
    """Seeded random bipartite graph with minimum degree at least ``delta``.

    Builds a base of ``delta`` rounds of random perfect matchings between the
    sides (the smaller side padded to the larger by virtual aliases of its own
    vertices), each round avoiding edges already present, then adds every
    remaining non-edge independently with probability ``fill_p``. With equal
    side sizes the matching base alone guarantees the floor; with unequal sides
    an occasional round can wedge, so the build rejects-and-retries and, after
    a bounded number of rejections, tops deficient vertices up directly.
    """
    if delta < 0 or delta > min(x_size, y_size):
        raise GraphError(f"delta {delta} infeasible for sides {x_size}+{y_size}")
    if x_size < 1 or y_size < 1:
        raise GraphError("sides must be nonempty")
    rng = random.Random(seed)
    for _ in range(50):
        present = _base_plus_fill(x_size, y_size, delta, fill_p, rng)
        if present is not None and _mindeg_ok(present, x_size, y_size, delta):
            break
    else:
        present = None
        while present is None:
            present = _base_plus_fill(x_size, y_size, delta, fill_p, rng, best_effort=True)
        _repair(present, x_size, y_size, delta, rng)
    edges = [(u, x_size + w) for u in range(x_size) for w in bits(present[u])]
    return BipartiteGraph(x_size, y_size, edges)


def _mindeg_ok(present: list[int], x_size: int, y_size: int, delta: int) -> bool:
    if any(row.bit_count() < delta for row in present):
        return False
    return all(
        sum(present[u] >> w & 1 for u in range(x_size)) >= delta for w in range(y_size)
    )


def _base_plus_fill(x_size, y_size, delta, fill_p, rng, best_effort=False):
    present = [0] * x_size  # per-x bitmask of chosen y offsets
    for _ in range(delta):
        if not _add_matching_round(present, x_size, y_size, rng) and not best_effort:
            return None
    for u in range(x_size):
        for w in range(y_size):
            if not present[u] >> w & 1 and rng.random() < fill_p:
                present[u] |= 1 << w
    return present


def _add_matching_round(present: list[int], x_size: int, y_size: int, rng) -> bool:
    """Add one random perfect matching between padded sides, avoiding present edges.

    The smaller side is padded to the larger with virtual slots aliasing its
    real vertices (slot i stands for vertex i mod side size), so a full round
    hands every vertex on both sides at least one new distinct neighbor.
    Augmenting-path search with shuffled scan order keeps the sample
    seeded-reproducible. Returns False if the round cannot be completed.
    """
    size = max(x_size, y_size)
    x_of = [i % x_size for i in range(size)]
    y_of = [i % y_size for i in range(size)]
    match_l = [-1] * size
    match_r = [-1] * size

    def augment(l: int, visited: list[bool]) -> bool:
        cands = [
            r
            for r in range(size)
            if not visited[r] and not present[x_of[l]] >> y_of[r] & 1
        ]
        rng.shuffle(cands)
        for r in cands:
            visited[r] = True
            if match_r[r] == -1 or augment(match_r[r], visited):
                match_l[l] = r
                match_r[r] = l
                return True
        return False

    order = list(range(size))
    rng.shuffle(order)
    complete = True
    for l in order:
        if not augment(l, [False] * size):
            complete = False
    for l in range(size):
        r = match_l[l]
        if r != -1:
            present[x_of[l]] |= 1 << y_of[r]
    return complete


def _repair(present: list[int], x_size: int, y_size: int, delta: int, rng) -> None:
    """Top up any still-deficient vertex with random missing edges."""
    for u in range(x_size):
        missing = [w for w in range(y_size) if not present[u] >> w & 1]
        rng.shuffle(missing)
        while present[u].bit_count() < delta:
            present[u] |= 1 << missing.pop()
    for w in range(y_size):
        col = [u for u in range(x_size) if present[u] >> w & 1]
        if len(col) >= delta:
            continue
        missing = [u for u in range(x_size) if not present[u] >> w & 1]
        rng.shuffle(missing)
        while len(col) < delta:
            u = missing.pop()
            present[u] |= 1 << w
            col.append(u)


def gen_sharpness(k: int):
    """Tight example showing the degree bound cannot drop: 4k+2 vertices, delta = k+1.

    Sides are X1|X2|{u} and Y1|Y2|{v} with |X1|=|X2|=|Y1|=|Y2|=k. X1-Y1 and
    X2-Y2 are complete, u joins all of Y1 and v, v joins all of X2 and u, and
    X1 is matched to Y2 by the i-th-to-i-th perfect matching. Returns the graph
    paired with its target profile of k-1 four-cycles and one six-cycle.
    """
    if k < 2 or k % 2:
        raise GraphError("gen_sharpness requires an even k >= 2")
    x_size = 2 * k + 1
    u = 2 * k
    y1 = [x_size + i for i in range(k)]
    y2 = [x_size + k + i for i in range(k)]
    v = x_size + 2 * k
    edges = []
    for i in range(k):  # X1 = 0..k-1, X2 = k..2k-1
        edges.extend((i, y) for y in y1)
        edges.extend((k + i, y) for y in y2)
        edges.append((i, y2[i]))
        edges.append((k + i, v))
    edges.extend((u, y) for y in y1)
    edges.append((u, v))
    g = BipartiteGraph(x_size, x_size, edges)
    profile = make_profile([4] * (k - 1) + [6], mode="conjecture")
    return g, profile
