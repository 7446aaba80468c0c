"""Chip-firing engine: stabilization, burning tests, and the sandpile monoid.

A configuration places a nonnegative (arbitrary-precision) chip count on
every non-sink vertex. A vertex with at least its degree in chips may
topple, sending one chip per edge to each neighbor; chips reaching the
sink vanish. Every configuration stabilizes to a unique stable state with
a unique odometer (how often each vertex toppled), independent of
scheduling; the engine exploits that by multi-toppling whole batches in
FIFO order.

Two kernels implement the loop: a compiled int64 fast path
(sandpiles._fire, built from Cython) and a pure-Python big-int fallback
(sandpiles._fire_py). Selection happens at import, per call the dispatcher
re-checks that the chip total fits the fast path, and SANDPILE_PURE=1
forces the fallback. Both produce identical output by construction.
"""

from __future__ import annotations

import json
import os
from array import array

from .graphs import SinkedMultigraph, spanning_tree_count

try:
    from . import _fire as _compiled
except ImportError:
    _compiled = None

from . import _fire_py as _pure

# sum-of-chips bound for the int64 fast path: intermediate chip counts
# never exceed the initial total, so this keeps the kernel overflow-free
_INT64_TOTAL_LIMIT = 2 ** 62

_FORCED_BACKEND = None  # None (auto) | "compiled" | "pure"
_RUNTIME_CHECKS = False


def set_runtime_checks(enabled: bool) -> None:
    """Verify the odometer identity on every stabilize call (test builds)."""
    global _RUNTIME_CHECKS
    _RUNTIME_CHECKS = bool(enabled)


def compiled_available() -> bool:
    return _compiled is not None


def force_backend(name) -> None:
    """Pin the kernel: 'compiled', 'pure', or None for automatic choice."""
    global _FORCED_BACKEND
    if name not in (None, "compiled", "pure"):
        raise ValueError("backend must be 'compiled', 'pure', or None")
    if name == "compiled" and _compiled is None:
        raise RuntimeError("compiled kernel not available")
    _FORCED_BACKEND = name


def active_backend() -> str:
    if _FORCED_BACKEND == "pure":
        return "pure"
    if _FORCED_BACKEND == "compiled":
        return "compiled"
    if os.environ.get("SANDPILE_PURE") == "1" or _compiled is None:
        return "pure"
    return "compiled"


def _csr(g: SinkedMultigraph):
    if "csr" not in g._cache:
        pos = {v: i for i, v in enumerate(g.non_sink)}
        deg, indptr, nbr, mult = [], [0], [], []
        for v in g.non_sink:
            deg.append(g.degree(v))
            for w, m in sorted(g.neighbors(v)):
                if w != g.sink_id:
                    nbr.append(pos[w])
                    mult.append(m)
            indptr.append(len(nbr))
        g._cache["csr"] = (deg, indptr, nbr, mult)
    return g._cache["csr"]


def _csr_arrays(g: SinkedMultigraph):
    if "csr_q" not in g._cache:
        g._cache["csr_q"] = tuple(array("q", xs) for xs in _csr(g))
    return g._cache["csr_q"]


class ChipConfig:
    """Immutable chip configuration bound to a graph."""

    __slots__ = ("graph", "chips")

    def __init__(self, graph: SinkedMultigraph, chips):
        chips = tuple(chips)
        if len(chips) != graph.non_sink_count:
            raise ValueError(
                f"expected {graph.non_sink_count} chip counts, got {len(chips)}"
            )
        for x in chips:
            if not isinstance(x, int):
                raise TypeError("chip counts must be ints")
            if x < 0:
                raise ValueError("chip counts must be nonnegative")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "chips", chips)

    def __setattr__(self, name, value):
        raise AttributeError("ChipConfig is immutable")

    # -- constructors --

    @classmethod
    def zero(cls, g: SinkedMultigraph) -> "ChipConfig":
        return cls(g, (0,) * g.non_sink_count)

    @classmethod
    def unit(cls, g: SinkedMultigraph, i: int) -> "ChipConfig":
        chips = [0] * g.non_sink_count
        chips[i] = 1
        return cls(g, chips)

    @classmethod
    def max_stable(cls, g: SinkedMultigraph) -> "ChipConfig":
        return cls(g, tuple(d - 1 for d in g.degree_vector()))

    @classmethod
    def sink_edges(cls, g: SinkedMultigraph) -> "ChipConfig":
        """One chip per edge into the sink (the burning configuration)."""
        return cls(g, g.sink_edge_vector())

    # -- arithmetic --

    def _require_same_graph(self, other: "ChipConfig") -> None:
        if self.graph is not other.graph and (
            self.graph.graph_hash() != other.graph.graph_hash()
        ):
            raise ValueError("configurations live on different graphs")

    def __add__(self, other: "ChipConfig") -> "ChipConfig":
        self._require_same_graph(other)
        return ChipConfig(self.graph, tuple(a + b for a, b in zip(self.chips, other.chips)))

    def scale(self, k: int) -> "ChipConfig":
        if k < 0:
            raise ValueError("negative scaling")
        return ChipConfig(self.graph, tuple(k * x for x in self.chips))

    def is_stable(self) -> bool:
        return all(x < d for x, d in zip(self.chips, self.graph.degree_vector()))

    def __eq__(self, other):
        return (
            isinstance(other, ChipConfig)
            and self.chips == other.chips
            and self.graph.graph_hash() == other.graph.graph_hash()
        )

    def __hash__(self):
        return hash(self.chips)

    def __repr__(self):
        return f"ChipConfig{self.chips!r}"

    # -- serialization --

    def to_json_dict(self) -> dict:
        return {"graph_hash": self.graph.graph_hash(), "chips": list(self.chips)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, g: SinkedMultigraph, obj: dict) -> "ChipConfig":
        try:
            chips = obj["chips"]
            ghash = obj["graph_hash"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed configuration JSON: missing {exc}") from exc
        if ghash != g.graph_hash():
            raise ValueError("configuration is bound to a different graph")
        return cls(g, [int(x) for x in chips])


class StabilizationResult:
    """Stable configuration plus the odometer that produced it."""

    __slots__ = ("stable", "odometer")

    def __init__(self, stable: ChipConfig, odometer):
        object.__setattr__(self, "stable", stable)
        object.__setattr__(self, "odometer", tuple(odometer))

    def __setattr__(self, name, value):
        raise AttributeError("StabilizationResult is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, StabilizationResult)
            and self.stable == other.stable
            and self.odometer == other.odometer
        )

    def __repr__(self):
        return f"StabilizationResult(stable={self.stable!r}, odometer={self.odometer!r})"


def _verify_odometer(g, before, stable, odo):
    deg, indptr, nbr, mult = _csr(g)
    n = len(deg)
    recv = [0] * n
    for x in range(n):
        t = odo[x]
        if t < 0:
            raise AssertionError("negative odometer entry (engine bug)")
        if t:
            for k in range(indptr[x], indptr[x + 1]):
                recv[nbr[k]] += t * mult[k]
    for i in range(n):
        if stable[i] != before[i] - deg[i] * odo[i] + recv[i]:
            raise AssertionError("odometer identity violated (engine bug)")
        if stable[i] >= deg[i]:
            raise AssertionError("stabilize returned an unstable vertex (engine bug)")


def stabilize(u: ChipConfig) -> StabilizationResult:
    """Stabilize u; returns the stable configuration and the odometer."""
    g = u.graph
    chips = list(u.chips)
    deg, indptr, nbr, mult = _csr(g)
    backend = active_backend()
    stable = odo = None
    if backend == "compiled" and sum(chips) < _INT64_TOTAL_LIMIT:
        try:
            stable, odo = _compiled.stabilize_csr(*_csr_arrays(g), chips)
        except OverflowError:
            stable = odo = None
    if stable is None:
        stable, odo = _pure.stabilize_csr(deg, indptr, nbr, mult, chips)
    if _RUNTIME_CHECKS:
        _verify_odometer(g, u.chips, stable, odo)
    return StabilizationResult(ChipConfig(g, stable), odo)


def stabilize_random_order(u: ChipConfig, rng) -> StabilizationResult:
    """Single-topple stabilization with rng-chosen order (test oracle).

    By the abelian property this must return exactly what stabilize does,
    whatever order rng picks.
    """
    g = u.graph
    deg, indptr, nbr, mult = _csr(g)
    n = len(deg)
    chips = list(u.chips)
    odo = [0] * n
    unstable = [i for i in range(n) if chips[i] >= deg[i]]
    while unstable:
        x = unstable[rng.randrange(len(unstable))]
        if chips[x] < deg[x]:
            unstable.remove(x)
            continue
        chips[x] -= deg[x]
        odo[x] += 1
        for k in range(indptr[x], indptr[x + 1]):
            chips[nbr[k]] += mult[k]
        unstable = [i for i in range(n) if chips[i] >= deg[i]]
    return StabilizationResult(ChipConfig(g, chips), odo)


def add_and_stabilize(u: ChipConfig, v: ChipConfig) -> ChipConfig:
    """The monoid operation: (u + v) stabilized."""
    return stabilize(u + v).stable


def is_recurrent_burning(u: ChipConfig) -> bool:
    """Burning test: u is recurrent iff adding one chip per sink edge
    makes every vertex topple exactly once."""
    if not u.is_stable():
        raise ValueError("burning test requires a stable configuration")
    res = stabilize(u + ChipConfig.sink_edges(u.graph))
    if all(t == 1 for t in res.odometer):
        assert res.stable == u, "burning fixed point mismatch (engine bug)"
        return True
    return False


def identity(g: SinkedMultigraph) -> ChipConfig:
    """Identity of the sandpile group (cached per graph)."""
    if "identity" not in g._cache:
        two_m = ChipConfig.max_stable(g).scale(2)
        first = stabilize(two_m).stable
        gap = ChipConfig(g, tuple(a - b for a, b in zip(two_m.chips, first.chips)))
        e = stabilize(gap).stable
        assert is_recurrent_burning(e), "identity is not recurrent (engine bug)"
        assert add_and_stabilize(e, e) == e, "identity not idempotent (engine bug)"
        g._cache["identity"] = e
    return g._cache["identity"]


def recurrent_rep(v: ChipConfig) -> ChipConfig:
    """The recurrent representative of v's equivalence class: (v + e)
    stabilized. Adding the representative to any recurrent u gives the
    same result as adding v itself."""
    rep = add_and_stabilize(v, identity(v.graph))
    assert is_recurrent_burning(rep), "representative not recurrent (engine bug)"
    return rep


def element_order(u: ChipConfig) -> int:
    """Order of a recurrent configuration in the sandpile group."""
    if not (u.is_stable() and is_recurrent_burning(u)):
        raise ValueError("element order is defined for recurrent configurations")
    e = identity(u.graph)
    bound = spanning_tree_count(u.graph)
    acc = u
    order = 1
    while acc != e:
        acc = add_and_stabilize(acc, u)
        order += 1
        if order > bound:
            raise AssertionError("order exceeds group order (engine bug)")
    return order


def enumerate_recurrent(g: SinkedMultigraph, bound: int = 10 ** 6) -> list:
    """All recurrent configurations in lexicographic chip order.

    Scans every stable configuration (product of degrees many), so the
    scan size is capped by `bound`.
    """
    degs = g.degree_vector()
    total = 1
    for d in degs:
        total *= d
    if total > bound:
        raise ValueError(f"{total} stable configurations exceed bound {bound}")
    out = []
    chips = [0] * len(degs)
    while True:
        u = ChipConfig(g, chips)
        if is_recurrent_burning(u):
            out.append(u)
        # increment the mixed-radix counter, rightmost digit fastest
        i = len(chips) - 1
        while i >= 0:
            chips[i] += 1
            if chips[i] < degs[i]:
                break
            chips[i] = 0
            i -= 1
        if i < 0:
            return out
