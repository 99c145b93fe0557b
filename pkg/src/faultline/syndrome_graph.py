"""3D syndrome lattice: defect sites, single-fault edges, chain algebra.

One graph covers one error type; the X- and Z-error lattices are
isomorphic (transposes of each other), so simulations run on a single
graph and per-type rates are reported. Vertices live at (x, y, t):

    x in [0, L-1)  spanning axis; the two relevant boundary faces sit
                   beyond x = 0 (WEST) and x = L-2 (EAST)
    y in [0, L)    non-spanning spatial axis
    t in [0, N)    syndrome-measurement round

For the Z-error lattice, vertex (x, y, t) is X ancilla ("X", c=y, r=x)
measured in round t; WEST/EAST exits correspond to the rough-boundary
stubs of the code lattice.

Edge templates:

    phenomenological6: +-x, +-y spatial edges (data errors) and +-t
        temporal edges (measurement errors); interior degree 6.
    circuit12: phenomenological6 plus three space-time diagonal classes
        (+1,0,+1), (0,+1,+1), (+1,+1,+1) in (dx,dy,dt), i.e. faults that
        corrupt a data qubit and a measurement together; interior
        degree 12. The exact gate-level fault-to-edge map is
        device-specific; this template is the documented fixed choice.

Boundary edges are the +-x stubs that leave the lattice through the two
relevant faces (one per (y, t) on each side). A chain is a set of edge
ids; its boundary is the set of interior vertices with odd incidence
(face endpoints absorb parity). Logical class is the mod-2 number of
chain edges crossing a fixed cut plane transverse to x.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

from .code_lattice import _require_odd_size

WEST = -1
EAST = -2
FACES = ("west", "east")

TEMPLATES = ("phenomenological6", "circuit12")

# (dx, dy, dt) offsets of the circuit-level diagonal edge classes.
DIAGONAL_OFFSETS = ((1, 0, 1), (0, 1, 1), (1, 1, 1))

Chain = frozenset[int]
DefectSet = frozenset[int]


class Edge(NamedTuple):
    """One single-fault mechanism: an undirected edge of the syndrome lattice.

    ``v`` is WEST or EAST for edges leaving the lattice. ``displacement``
    is the signed x-offset traversing u -> v; 0 for temporal and pure-y
    edges, +-1 for anything that moves along the spanning axis.
    """

    u: int
    v: int
    kind: str
    displacement: int


class SyndromeGraph:
    """Immutable-after-construction syndrome lattice for one error type."""

    def __init__(self, L: int, N: int, template: str):
        _require_odd_size(L)
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            raise ValueError(f"round count N must be an integer >= 1, got {N!r}")
        if template not in TEMPLATES:
            raise ValueError(
                f"unknown edge template {template!r}; expected one of {TEMPLATES}"
            )
        self.L = L
        self.N = N
        self.template = template
        self.X = L - 1  # extent of the spanning axis
        self.Y = L
        self.n_vertices = self.X * self.Y * N
        self.cut_plane = (L - 1) // 2  # default cut position, see logical_class
        self.edges: list[Edge] = []
        self._build_edges()
        self._adjacency: list[list[tuple[int, int]]] | None = None
        self._bfs_cache: dict[int, tuple[list[int], list[int]]] = {}
        self._face_cache: dict[str, tuple[list[int], list[int]]] = {}

    # -- construction -------------------------------------------------

    def vertex_id(self, x: int, y: int, t: int) -> int:
        if not (0 <= x < self.X and 0 <= y < self.Y and 0 <= t < self.N):
            raise ValueError(f"vertex ({x}, {y}, {t}) outside the lattice")
        return (t * self.X + x) * self.Y + y

    def vertex_coords(self, vid: int) -> tuple[int, int, int]:
        if not (0 <= vid < self.n_vertices):
            raise ValueError(f"vertex id {vid} outside the lattice")
        t, rem = divmod(vid, self.X * self.Y)
        x, y = divmod(rem, self.Y)
        return x, y, t

    def _build_edges(self) -> None:
        X, Y, N = self.X, self.Y, self.N
        vid = self.vertex_id
        add = self.edges.append
        for t in range(N):
            for x in range(X - 1):
                for y in range(Y):
                    add(Edge(vid(x, y, t), vid(x + 1, y, t), "spatial", 1))
        for t in range(N):
            for y in range(Y):
                add(Edge(vid(0, y, t), WEST, "spatial", -1))
        for t in range(N):
            for y in range(Y):
                add(Edge(vid(X - 1, y, t), EAST, "spatial", 1))
        for t in range(N):
            for x in range(X):
                for y in range(Y - 1):
                    add(Edge(vid(x, y, t), vid(x, y + 1, t), "spatial", 0))
        for t in range(N - 1):
            for x in range(X):
                for y in range(Y):
                    add(Edge(vid(x, y, t), vid(x, y, t + 1), "temporal", 0))
        if self.template == "circuit12":
            for dx, dy, dt in DIAGONAL_OFFSETS:
                for t in range(N - dt):
                    for x in range(X - dx):
                        for y in range(Y - dy):
                            add(
                                Edge(
                                    vid(x, y, t),
                                    vid(x + dx, y + dy, t + dt),
                                    "diagonal",
                                    dx,
                                )
                            )

    # -- basic structure ----------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex sorted list of (neighbor, edge id); faces appear as WEST/EAST."""
        if self._adjacency is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
            for eid, e in enumerate(self.edges):
                adj[e.u].append((e.v, eid))
                if e.v >= 0:
                    adj[e.v].append((e.u, eid))
            for lst in adj:
                lst.sort()
            self._adjacency = adj
        return self._adjacency

    def degree(self, vid: int) -> int:
        return len(self.adjacency()[vid])

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for lst in self.adjacency():
            hist[len(lst)] = hist.get(len(lst), 0) + 1
        return dict(sorted(hist.items()))

    def face_vertices(self, face: str) -> list[int]:
        """Vertices on the x = 0 (west) or x = X-1 (east) plane, sorted."""
        x = {"west": 0, "east": self.X - 1}[face]
        return sorted(
            self.vertex_id(x, y, t) for y in range(self.Y) for t in range(self.N)
        )

    def interior_vertices(self) -> list[int]:
        """Vertices whose full template neighborhood lies inside the lattice.

        The boundary stubs keep the x-degree of face-plane vertices at 2,
        so under phenomenological6 only the y and t extremes are
        deficient; the circuit12 diagonals have no boundary counterparts,
        so there the x extremes are deficient too.
        """
        xs = range(self.X) if self.template == "phenomenological6" else range(1, self.X - 1)
        return [
            self.vertex_id(x, y, t)
            for t in range(1, self.N - 1)
            for x in xs
            for y in range(1, self.Y - 1)
        ]

    def _check_chain(self, chain: Iterable[int]) -> list[int]:
        ids = sorted(set(int(e) for e in chain))
        if ids and (ids[0] < 0 or ids[-1] >= self.n_edges):
            raise ValueError("chain contains edge ids outside the graph")
        return ids

    # -- chain algebra ------------------------------------------------

    def boundary(self, chain: Iterable[int]) -> DefectSet:
        """Interior vertices incident to an odd number of chain edges."""
        odd: set[int] = set()
        for eid in self._check_chain(chain):
            e = self.edges[eid]
            odd ^= {e.u}
            if e.v >= 0:
                odd ^= {e.v}
        return frozenset(odd)

    def logical_class(self, chain: Iterable[int], cut: int | None = None) -> int:
        """Parity of chain crossings of the cut plane transverse to x.

        The cut at position k separates {faces west of x=k} from the rest;
        valid positions are 0..L-1 and the result is independent of the
        choice for any relatively closed chain. Rejects open chains.
        """
        ids = self._check_chain(chain)
        if self.boundary(ids):
            raise ValueError("logical_class requires a chain with empty boundary")
        k = self.cut_plane if cut is None else cut
        if not (0 <= k <= self.X):
            raise ValueError(f"cut position {k} outside [0, {self.X}]")
        crossings = 0
        for eid in ids:
            e = self.edges[eid]
            xu = self.vertex_coords(e.u)[0]
            if e.v == WEST:
                xv = -1
            elif e.v == EAST:
                xv = self.X
            else:
                xv = self.vertex_coords(e.v)[0]
            if min(xu, xv) < k <= max(xu, xv):
                crossings += 1
        return crossings % 2

    # -- distances ----------------------------------------------------

    def _bfs(self, src: int) -> tuple[list[int], list[int]]:
        """Distances and parent edges from src; parents point back toward src."""
        cached = self._bfs_cache.get(src)
        if cached is not None:
            return cached
        dist = [-1] * self.n_vertices
        parent = [-1] * self.n_vertices
        dist[src] = 0
        queue = deque([src])
        adj = self.adjacency()
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for w, eid in adj[v]:
                if w >= 0 and dist[w] < 0:
                    dist[w] = dv + 1
                    parent[w] = eid
                    queue.append(w)
        self._bfs_cache[src] = (dist, parent)
        return dist, parent

    def _face_bfs(self, face: str) -> tuple[list[int], list[int]]:
        """Distances to a relevant face; parent edges point toward the face."""
        cached = self._face_cache.get(face)
        if cached is not None:
            return cached
        marker = WEST if face == "west" else EAST
        dist = [-1] * self.n_vertices
        parent = [-1] * self.n_vertices
        queue = deque()
        for eid, e in enumerate(self.edges):
            if e.v == marker and dist[e.u] < 0:
                dist[e.u] = 1
                parent[e.u] = eid
        for v in sorted(v for v in range(self.n_vertices) if dist[v] == 1):
            queue.append(v)
        adj = self.adjacency()
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for w, eid in adj[v]:
                if w >= 0 and dist[w] < 0:
                    dist[w] = dv + 1
                    parent[w] = eid
                    queue.append(w)
        self._face_cache[face] = (dist, parent)
        return dist, parent

    def path_to_face(self, vid: int, face: str) -> list[int]:
        """Edge ids of a shortest path from vid out through the given face."""
        dist, parent = self._face_bfs(face)
        if dist[vid] < 0:
            raise ValueError(f"no path from vertex {vid} to the {face} face")
        path = []
        v = vid
        while True:
            eid = parent[v]
            path.append(eid)
            e = self.edges[eid]
            if e.v < 0:
                return path
            v = e.u if e.v == v else e.v

    def path_between(self, a: int, b: int) -> list[int]:
        """Edge ids of a shortest path between two vertices."""
        dist, parent = self._bfs(a)
        if dist[b] < 0:
            raise ValueError(f"no path between vertices {a} and {b}")
        path = []
        v = b
        while v != a:
            eid = parent[v]
            path.append(eid)
            e = self.edges[eid]
            v = e.u if e.v == v else e.v
        return path


def build_syndrome_graph(L: int, N: int | None = None, template: str = "circuit12") -> SyndromeGraph:
    """Build the L x L x N syndrome lattice; N defaults to L."""
    return SyndromeGraph(L, L if N is None else N, template)


def edge_count(L: int, N: int, template: str) -> int:
    """Closed-form edge count of build_syndrome_graph(L, N, template).

    Used to extrapolate lattice volumes past desk scale; the tests pin it
    against constructed graphs.
    """
    _require_odd_size(L)
    if template not in TEMPLATES:
        raise ValueError(f"unknown edge template {template!r}")
    X, Y = L - 1, L
    total = (X - 1) * Y * N + 2 * Y * N          # spatial x, stubs included
    total += X * (Y - 1) * N                     # spatial y
    total += X * Y * (N - 1)                     # temporal
    if template == "circuit12":
        for dx, dy, dt in DIAGONAL_OFFSETS:
            total += (X - dx) * (Y - dy) * (N - dt)
    return total


def boundary(graph: SyndromeGraph, chain: Iterable[int]) -> DefectSet:
    return graph.boundary(chain)


def logical_class(graph: SyndromeGraph, chain: Iterable[int], cut: int | None = None) -> int:
    return graph.logical_class(chain, cut)


def graph_distance(graph: SyndromeGraph, a: int | str, b: int | str) -> int:
    """Unit-weight shortest-path distance between vertices and/or faces."""
    if isinstance(a, str) and isinstance(b, str):
        if a not in FACES or b not in FACES:
            raise ValueError(f"face names must be in {FACES}")
        if a == b:
            return 0
        vals = [graph._face_bfs("east")[0][v] + 1 for v in graph.face_vertices("west")]
        return min(vals)
    if isinstance(a, str):
        a, b = b, a
    if not (isinstance(a, int) and 0 <= a < graph.n_vertices):
        raise ValueError(f"vertex {a!r} not in graph")
    if isinstance(b, str):
        if b not in FACES:
            raise ValueError(f"face names must be in {FACES}")
        d = graph._face_bfs(b)[0][a]
    else:
        if not (0 <= b < graph.n_vertices):
            raise ValueError(f"vertex {b!r} not in graph")
        d = graph._bfs(a)[0][b]
    if d < 0:
        raise ValueError("vertices are not connected")
    return d


def xor_chains(*chains: Iterable[int]) -> Chain:
    """Symmetric difference of chains (the chain group operation)."""
    acc: set[int] = set()
    for c in chains:
        acc ^= set(int(e) for e in c)
    return frozenset(acc)


def chain_weight(chain: Iterable[int]) -> int:
    return len(set(chain))
