"""Bar-joint framework rigidity: rank tests, 2D combinatorics, randomized GGR."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .exceptions import DomainError, InputError
from .geometry import PointCloud, as_point_cloud, rigidity_matrix, spans_ambient_space
from .linalg import RANK_RTOL, left_null_space, numerical_rank
from .validation import check_edges


class Graph:
    """Simple undirected graph on ``range(n)`` with a fixed edge order."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges=()):
        n = int(n)
        if n < 1:
            raise InputError("graph needs at least one vertex")
        self.n = n
        self.edges = tuple(check_edges(edges, n))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset:
        return frozenset(tuple(sorted(e)) for e in self.edges)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def without_edge(self, k: int) -> "Graph":
        return Graph(self.n, self.edges[:k] + self.edges[k + 1:])

    def relabel(self, perm) -> "Graph":
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.n, self.edge_set()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def as_graph(graph) -> Graph:
    """Accept a :class:`Graph`, anything with ``n`` and ``edges``, or ``(n, edges)``."""
    if isinstance(graph, Graph):
        return graph
    if hasattr(graph, "n") and hasattr(graph, "edges"):
        return Graph(graph.n, graph.edges)
    n, edges = graph
    return Graph(n, edges)


@dataclass(frozen=True)
class Framework:
    graph: Graph
    config: PointCloud

    def __post_init__(self):
        object.__setattr__(self, "graph", as_graph(self.graph))
        object.__setattr__(self, "config", as_point_cloud(self.config))
        if self.graph.n != self.config.n:
            raise InputError(f"graph has {self.graph.n} vertices but configuration has {self.config.n} points")

    @property
    def d(self) -> int:
        return self.config.d

    def rigidity_matrix(self) -> np.ndarray:
        return rigidity_matrix(self.config, self.graph.edges)


class RigidityStatus(str, enum.Enum):
    FLEXIBLE = "Flexible"
    RIGID = "Rigid"


@dataclass(frozen=True)
class RigidityVerdict:
    status: RigidityStatus
    rank: int
    target_rank: int

    @property
    def dof(self) -> int:
        return self.target_rank - self.rank

    @property
    def is_rigid(self) -> bool:
        return self.status is RigidityStatus.RIGID

    def to_json(self) -> dict:
        return {"status": self.status.value, "rank": self.rank,
                "target_rank": self.target_rank, "dof": self.dof}


def trivial_motion_count(d: int) -> int:
    return d * (d + 1) // 2


def rigidity_target_rank(n: int, d: int) -> int:
    return n * d - trivial_motion_count(d)


def check_rigidity_domain(P: PointCloud) -> None:
    """Reject configurations with ``n < d + 1`` or a degenerate affine span."""
    if P.n < P.d + 1:
        raise DomainError(f"need at least d + 1 = {P.d + 1} points, got {P.n}")
    if not spans_ambient_space(P):
        raise DomainError("configuration does not affinely span the ambient space")


def infinitesimal_rigidity_test(fw: Framework, rtol: float = RANK_RTOL) -> RigidityVerdict:
    """Rigid iff the rigidity matrix has rank ``nd - d(d+1)/2``."""
    P = fw.config
    check_rigidity_domain(P)
    target = rigidity_target_rank(P.n, P.d)
    rank = numerical_rank(fw.rigidity_matrix(), rtol)
    status = RigidityStatus.RIGID if rank == target else RigidityStatus.FLEXIBLE
    return RigidityVerdict(status, rank, target)


def _pebble_game(n: int, edges, k: int = 2, l: int = 3) -> int:
    """Size of a maximal (k, l)-sparse subset of ``edges`` (the independent edges)."""
    pebbles = [k] * n
    out = [[] for _ in range(n)]  # directed edges u -> v, pebble sits on u

    def find_pebble(root, blocked):
        # DFS along directed edges for a vertex with a free pebble; reverse the path
        seen = {root} | blocked
        stack = [(root, iter(out[root]))]
        parent = {}
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            if nxt in seen:
                continue
            seen.add(nxt)
            parent[nxt] = u
            if pebbles[nxt] > 0:
                v = nxt
                while v != root:
                    p = parent[v]
                    out[p].remove(v)
                    out[v].append(p)
                    v = p
                pebbles[nxt] -= 1
                pebbles[root] += 1
                return True
            stack.append((nxt, iter(out[nxt])))
        return False

    accepted = 0
    for u, v in edges:
        while pebbles[u] + pebbles[v] < l + 1:
            if pebbles[u] < k and find_pebble(u, {v}):
                continue
            if pebbles[v] < k and find_pebble(v, {u}):
                continue
            break
        if pebbles[u] + pebbles[v] >= l + 1:
            if pebbles[u] > 0:
                pebbles[u] -= 1
                out[u].append(v)
            else:
                pebbles[v] -= 1
                out[v].append(u)
            accepted += 1
    return accepted


def laman_rank_2d(graph) -> int:
    """Generic rank of the 2D rigidity matroid on the edges of ``graph``."""
    g = as_graph(graph)
    return _pebble_game(g.n, g.edges)


def laman_glr_2d(graph) -> bool:
    """Generic rigidity in the plane via the (2,3)-pebble game."""
    g = as_graph(graph)
    if g.n <= 1:
        return True
    return laman_rank_2d(g) == 2 * g.n - 3


def is_connected(n: int, adj, removed=frozenset()) -> bool:
    alive = [v for v in range(n) if v not in removed]
    if len(alive) <= 1:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


def is_3_connected(graph) -> bool:
    """More than 3 vertices and no set of at most 2 vertices disconnects the graph.

    Complete graphs on fewer than 4 vertices are not 3-connected under this
    convention; :func:`ggr_2d` treats complete graphs separately anyway.
    """
    g = as_graph(graph)
    if g.n < 4:
        return False
    adj = g.adjacency()
    if not is_connected(g.n, adj):
        return False
    for a in range(g.n):
        if not is_connected(g.n, adj, frozenset((a,))):
            return False
    for a, b in combinations(range(g.n), 2):
        if not is_connected(g.n, adj, frozenset((a, b))):
            return False
    return True


def is_redundantly_rigid_2d(graph) -> bool:
    """GLR after deleting any single edge."""
    g = as_graph(graph)
    if g.m == 0:
        return False
    return all(laman_glr_2d(g.without_edge(k)) for k in range(g.m))


def ggr_2d(graph) -> bool:
    """Generic global rigidity in the plane: complete, or 3-connected and redundantly rigid."""
    g = as_graph(graph)
    if g.is_complete():
        return True
    return is_3_connected(g) and is_redundantly_rigid_2d(g)


def stress_matrix(n: int, edges, omega) -> np.ndarray:
    """``Omega_ij = -omega_ij`` on edges, diagonal balancing the rows."""
    S = np.zeros((n, n))
    for (i, j), w in zip(edges, omega):
        S[i, j] -= w
        S[j, i] -= w
        S[i, i] += w
        S[j, j] += w
    return S


def _ggr_trial(g: Graph, d: int, rng: np.random.Generator, rtol: float) -> bool:
    P = PointCloud(rng.uniform(0.0, 1.0, size=(g.n, d)))
    R = rigidity_matrix(P, g.edges)
    if numerical_rank(R, rtol) < rigidity_target_rank(g.n, d):
        return False
    K = left_null_space(R, rtol)
    if K.shape[1] == 0:
        return False
    omega = K @ rng.standard_normal(K.shape[1])
    return numerical_rank(stress_matrix(g.n, g.edges, omega), rtol) == g.n - d - 1


def ggr_randomized(graph, d: int, trials: int = 3, seed: int = 0, rtol: float = RANK_RTOL) -> bool:
    """One-sided Monte Carlo test of generic global rigidity in dimension ``d``.

    Trial ``t`` draws from ``default_rng(seed + t)``. Graphs on at most
    ``d + 1`` vertices are globally rigid exactly when complete.
    """
    g = as_graph(graph)
    if d < 1:
        raise InputError("d must be at least 1")
    if trials < 1:
        raise InputError("trials must be at least 1")
    if g.n <= d + 1:
        return g.is_complete()
    return all(_ggr_trial(g, d, np.random.default_rng(seed + t), rtol) for t in range(trials))
