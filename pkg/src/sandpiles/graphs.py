"""Undirected multigraphs with a distinguished sink, and wired-tree builders.

A SinkedMultigraph is immutable after construction: parallel edges are kept
as multiplicities, self-loops are rejected, and every vertex must have a
path to the sink (otherwise chip-firing stabilization would not terminate).

Builders produce the wired trees this package is about. A regular tree of
degree d and height n has a root, d-1 children per internal vertex, and
every path from the root to a leaf has n-1 edges; wiring collapses all
leaves into the sink and adds one extra root-sink edge, which makes every
non-sink vertex degree d. A wired ball of parameter n has a root with d
principal branches, each isomorphic as a wired tree to the regular wired
tree of height n+1, and no root-sink edge.

Vertex order is BFS from the root with the sink last, so configurations
index non-sink vertices 0..N-2 and level-by-level reasoning is positional.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque

from .linalg import IntMatrix, det


class SinkedMultigraph:
    """Finite undirected multigraph with a distinguished sink vertex."""

    def __init__(self, vertex_count, sink_id, edges, labels=None,
                 tree_parents=None, regular_shape=None):
        if vertex_count < 1:
            raise ValueError("need at least the sink vertex")
        if not 0 <= sink_id < vertex_count:
            raise ValueError("sink_id out of range")
        merged = {}
        for u, v, m in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                key = (u, v) if u < v else (v, u)
                merged[key] = merged.get(key, 0) + m
        self.vertex_count = vertex_count
        self.sink_id = sink_id
        self.edges = tuple(sorted((u, v, m) for (u, v), m in merged.items()))
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != vertex_count:
            raise ValueError("labels length mismatch")
        self.tree_parents = tuple(tree_parents) if tree_parents is not None else None
        self.regular_shape = tuple(regular_shape) if regular_shape is not None else None
        self._adj = [dict() for _ in range(vertex_count)]
        for u, v, m in self.edges:
            self._adj[u][v] = m
            self._adj[v][u] = m
        self._check_connectivity()
        self.non_sink = tuple(v for v in range(vertex_count) if v != sink_id)
        self._cache = {}

    def _check_connectivity(self):
        seen = {self.sink_id}
        queue = deque([self.sink_id])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != self.vertex_count:
            missing = sorted(set(range(self.vertex_count)) - seen)
            raise ValueError(f"vertices {missing} have no path to the sink")

    # -- basic accessors --

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values())

    def multiplicity(self, u: int, v: int) -> int:
        return self._adj[u].get(v, 0)

    def neighbors(self, v: int):
        return self._adj[v].items()

    def sink_degree(self, v: int) -> int:
        """Number of edges from v to the sink."""
        return self._adj[v].get(self.sink_id, 0)

    @property
    def non_sink_count(self) -> int:
        return self.vertex_count - 1

    def sink_edge_vector(self) -> tuple:
        """Sink multiplicities indexed like configurations."""
        return tuple(self.sink_degree(v) for v in self.non_sink)

    def degree_vector(self) -> tuple:
        return tuple(self.degree(v) for v in self.non_sink)

    # -- serialization --

    def to_json_dict(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "sink": self.sink_id,
            "edges": [[u, v, m] for u, v, m in self.edges],
            "labels": list(self.labels) if self.labels is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SinkedMultigraph":
        try:
            vertices = obj["vertices"]
            sink = obj["sink"]
            edges = obj["edges"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: missing {exc}") from exc
        labels = obj.get("labels")
        return cls(vertices, sink, [tuple(e) for e in edges], labels=labels)

    @classmethod
    def from_json(cls, text: str) -> "SinkedMultigraph":
        return cls.from_json_dict(json.loads(text))

    def graph_hash(self) -> str:
        if "hash" not in self._cache:
            raw = self.to_json().encode()
            self._cache["hash"] = hashlib.sha256(raw).hexdigest()
        return self._cache["hash"]

    def __repr__(self):
        return (f"SinkedMultigraph(vertices={self.vertex_count}, "
                f"sink={self.sink_id}, edges={len(self.edges)})")


class RootedTree:
    """Rooted tree given by a parent list; parents[root] is None."""

    def __init__(self, parents):
        parents = list(parents)
        n = len(parents)
        roots = [i for i, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise ValueError("exactly one root required")
        self.root = roots[0]
        self.children = [[] for _ in range(n)]
        for i, p in enumerate(parents):
            if p is None:
                continue
            if not 0 <= p < n:
                raise ValueError(f"parent {p} out of range")
            self.children[p].append(i)
        # reachability from the root doubles as the acyclicity check
        seen = set()
        stack = [self.root]
        while stack:
            x = stack.pop()
            if x in seen:
                raise ValueError("parent list contains a cycle")
            seen.add(x)
            stack.extend(self.children[x])
        if len(seen) != n:
            raise ValueError("parent list is not a single tree")
        self.parents = tuple(parents)

    @property
    def size(self) -> int:
        return len(self.parents)

    def leaves(self) -> list:
        return [v for v in range(self.size) if not self.children[v] and v != self.root]

    @classmethod
    def from_json_dict(cls, obj: dict) -> "RootedTree":
        try:
            parents = obj["parents"]
        except (KeyError, TypeError) as exc:
            raise ValueError("malformed tree JSON: missing 'parents'") from exc
        return cls([None if p is None else int(p) for p in parents])


# ----------------------------------------------------------------------
# builders
# ----------------------------------------------------------------------

def build_wired_tree(tree: RootedTree) -> SinkedMultigraph:
    """Wire a rooted tree: collapse all leaves into the sink, add one
    root-sink edge. The root must have at least one non-leaf path, i.e.
    the tree needs at least one internal vertex besides lone leaves."""
    if tree.size < 2:
        raise ValueError("tree too small to wire")
    if not tree.children[tree.root]:
        raise ValueError("root must not be a leaf")
    leaves = set(tree.leaves())
    internal = [v for v in range(tree.size) if v not in leaves]
    # BFS order over internal vertices, root first
    order = []
    queue = deque([tree.root])
    while queue:
        x = queue.popleft()
        order.append(x)
        for c in tree.children[x]:
            if c not in leaves:
                queue.append(c)
    assert len(order) == len(internal)
    index = {v: i for i, v in enumerate(order)}
    sink = len(order)
    edges = [(index[tree.root], sink, 1)]
    parents = [None] * len(order)
    for v in order:
        for c in tree.children[v]:
            if c in leaves:
                edges.append((index[v], sink, 1))
            else:
                edges.append((index[v], index[c], 1))
                parents[index[c]] = index[v]
    return SinkedMultigraph(sink + 1, sink, edges, tree_parents=parents)


def build_wired_regular_tree(degree: int, height: int) -> SinkedMultigraph:
    """Wired regular tree: every internal vertex has degree-1 children and
    every root-to-leaf path has height-1 edges; leaves collapse into the
    sink and one extra root-sink edge is added, so every non-sink vertex
    ends up with the full degree."""
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if height < 2:
        raise ValueError("height must be at least 2")
    a = degree - 1
    words = [()]
    level = [()]
    for _ in range(height - 2):
        level = [w + (c,) for w in level for c in range(1, a + 1)]
        words.extend(level)
    index = {w: i for i, w in enumerate(words)}
    sink = len(words)
    edges = [(0, sink, 1)]
    parents = [None] * len(words)
    for w, i in index.items():
        if len(w) < height - 2:
            for c in range(1, a + 1):
                j = index[w + (c,)]
                edges.append((i, j, 1))
                parents[j] = i
        else:
            edges.append((i, sink, a))
    labels = ["".join(map(str, w)) for w in words] + ["sink"]
    return SinkedMultigraph(sink + 1, sink, edges, labels=labels,
                            tree_parents=parents, regular_shape=(degree, height))


def build_wired_ball(degree: int, radius: int) -> SinkedMultigraph:
    """Wired ball: a root of degree `degree` with that many principal
    branches, each isomorphic as a wired tree to the regular wired tree of
    height radius+1; the deepest vertices keep degree-1 sink edges and
    there is no root-sink edge."""
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if radius < 1:
        raise ValueError("radius must be at least 1")
    a = degree - 1
    words = [()]
    level = [(c,) for c in range(1, degree + 1)]  # root has `degree` children
    words.extend(level)
    for _ in range(radius - 1):
        level = [w + (c,) for w in level for c in range(1, a + 1)]
        words.extend(level)
    index = {w: i for i, w in enumerate(words)}
    sink = len(words)
    edges = []
    parents = [None] * len(words)
    for w, i in index.items():
        if len(w) == radius:
            edges.append((i, sink, a))
            continue
        branching = degree if len(w) == 0 else a
        for c in range(1, branching + 1):
            j = index[w + (c,)]
            edges.append((i, j, 1))
            parents[j] = i
    labels = ["".join(map(str, w)) for w in words] + ["sink"]
    return SinkedMultigraph(sink + 1, sink, edges, labels=labels,
                            tree_parents=parents)


def derive_tree_parents(g: SinkedMultigraph) -> tuple:
    """Parent array for a wired tree graph, rooted at the lowest-index
    non-sink vertex. Raises ValueError when the non-sink part is not a
    tree with all internal multiplicities 1."""
    if g.tree_parents is not None:
        return g.tree_parents
    if "tree_parents" in g._cache:
        return g._cache["tree_parents"]
    if g.non_sink_count == 0:
        raise ValueError("no non-sink vertices")
    pos = {v: i for i, v in enumerate(g.non_sink)}
    root = g.non_sink[0]
    parents = [None] * g.non_sink_count
    seen = {root}
    queue = deque([root])
    internal_edges = 0
    while queue:
        x = queue.popleft()
        for y, m in g.neighbors(x):
            if y == g.sink_id:
                continue
            internal_edges += m
            if y not in seen:
                if m != 1:
                    raise ValueError("parallel internal edge: not a wired tree")
                seen.add(y)
                parents[pos[y]] = pos[x]
                queue.append(y)
    if len(seen) != g.non_sink_count or internal_edges != 2 * (g.non_sink_count - 1):
        raise ValueError("non-sink subgraph is not a tree")
    g._cache["tree_parents"] = tuple(parents)
    return g._cache["tree_parents"]


def tree_children(g: SinkedMultigraph) -> tuple:
    """Children lists (configuration indexing) of a wired tree graph."""
    parents = derive_tree_parents(g)
    children = [[] for _ in parents]
    for i, p in enumerate(parents):
        if p is not None:
            children[p].append(i)
    return tuple(tuple(c) for c in children)


def tree_depths(g: SinkedMultigraph) -> tuple:
    parents = derive_tree_parents(g)
    depths = [None] * len(parents)
    for i, p in enumerate(parents):
        d = 0
        x = i
        while parents[x] is not None:
            x = parents[x]
            d += 1
        depths[i] = d
    return tuple(depths)


# ----------------------------------------------------------------------
# Laplacian and spanning trees
# ----------------------------------------------------------------------

def reduced_laplacian(g: SinkedMultigraph) -> IntMatrix:
    """Laplacian with the sink row and column deleted; diagonal entries
    are negated degrees, off-diagonal entries are edge multiplicities."""
    if "laplacian" not in g._cache:
        pos = {v: i for i, v in enumerate(g.non_sink)}
        n = g.non_sink_count
        m = [[0] * n for _ in range(n)]
        for v in g.non_sink:
            i = pos[v]
            m[i][i] = -g.degree(v)
            for w, mult in g.neighbors(v):
                if w != g.sink_id:
                    m[i][pos[w]] = mult
        g._cache["laplacian"] = IntMatrix(m)
    return g._cache["laplacian"]


def spanning_tree_count(g: SinkedMultigraph) -> int:
    """Number of spanning trees, as |det| of the reduced Laplacian."""
    if "st_count" not in g._cache:
        g._cache["st_count"] = abs(det(reduced_laplacian(g)))
    return g._cache["st_count"]
