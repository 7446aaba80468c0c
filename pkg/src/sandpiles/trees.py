"""Structure theory on wired trees: criticality, branches, symmetries.

Critical vertices give a local recurrence test that avoids simulation: a
non-sink vertex is critical when its chip count is at most its number of
critical children (computed bottom-up), and a stable configuration is
recurrent exactly when every critical vertex meets that bound with
equality. Branch decompositions split a configuration into the root count
plus one configuration per principal branch, each branch being a wired
tree in its own right. Level automorphisms rotate the letters of regular
tree labels independently per depth; averaging over all of them retracts
any recurrent configuration onto the level-constant orbit.
"""

from __future__ import annotations

import random
from collections import deque

from .firing import (
    ChipConfig,
    add_and_stabilize,
    enumerate_recurrent,
    identity,
    is_recurrent_burning,
    recurrent_rep,
    stabilize,
)
from .graphs import (
    RootedTree,
    SinkedMultigraph,
    build_wired_regular_tree,
    build_wired_tree,
    derive_tree_parents,
    tree_children,
    tree_depths,
)


def critical_vertices(g: SinkedMultigraph, u: ChipConfig) -> frozenset:
    """Critical vertices of a stable configuration, bottom-up."""
    if u.graph is not g and u.graph.graph_hash() != g.graph_hash():
        raise ValueError("configuration belongs to a different graph")
    if not u.is_stable():
        raise ValueError("criticality is defined for stable configurations")
    children = tree_children(g)
    depths = tree_depths(g)
    critical = set()
    for x in sorted(range(len(depths)), key=lambda v: -depths[v]):
        crit_children = sum(1 for c in children[x] if c in critical)
        if u.chips[x] <= crit_children:
            critical.add(x)
    return frozenset(critical)


def is_recurrent_critical(g: SinkedMultigraph, u: ChipConfig) -> bool:
    """Local recurrence test: every critical vertex holds exactly as many
    chips as it has critical children."""
    children = tree_children(g)
    critical = critical_vertices(g, u)
    for x in critical:
        if u.chips[x] != sum(1 for c in children[x] if c in critical):
            return False
    return True


def counterexample_tree() -> SinkedMultigraph:
    """The wired tree whose root subgroup is not a direct summand: a root
    with two children, each carrying three leaf edges. Its group is cyclic
    of order 40 while the root chip generates only the subgroup of order
    10, and some x with (4x)° equal to that generator has full order 40.
    """
    return build_wired_tree(RootedTree([None, 0, 0, 1, 1, 1, 2, 2, 2]))


# ----------------------------------------------------------------------
# principal branches
# ----------------------------------------------------------------------

class BranchSplit:
    """A configuration split as (root chips; one configuration per branch)."""

    __slots__ = ("tree_graph", "root_chips", "branch_configs")

    def __init__(self, tree_graph, root_chips, branch_configs):
        object.__setattr__(self, "tree_graph", tree_graph)
        object.__setattr__(self, "root_chips", root_chips)
        object.__setattr__(self, "branch_configs", tuple(branch_configs))

    def __setattr__(self, name, value):
        raise AttributeError("BranchSplit is immutable")

    def __repr__(self):
        return (f"BranchSplit(root={self.root_chips}, "
                f"branches={[c.chips for c in self.branch_configs]!r})")


def principal_branches(g: SinkedMultigraph):
    """The wired trees hanging off the root's children, with vertex maps.

    Returns a tuple of (branch_graph, vertex_map) pairs where
    vertex_map[branch_index] is the corresponding index in g. Branches of
    a regular tree are built as regular trees one level shorter, so their
    hashes match freshly built ones. Cached.
    """
    if "branches" not in g._cache:
        parents = derive_tree_parents(g)
        children = tree_children(g)
        regular = None
        if g.regular_shape is not None and g.regular_shape[1] >= 3:
            regular = (g.regular_shape[0], g.regular_shape[1] - 1)
        out = []
        for r in children[0]:
            # collect the subtree under r in BFS order
            sub = [r]
            queue = deque([r])
            while queue:
                x = queue.popleft()
                for c in children[x]:
                    sub.append(c)
                    queue.append(c)
            sub_pos = {v: i for i, v in enumerate(sub)}
            if regular is not None:
                bg = build_wired_regular_tree(*regular)
            else:
                # wiring a subtree needs its leaf structure back: stand in
                # one placeholder leaf per collapsed sink edge
                tparents = [None] + [sub_pos[parents[v]] for v in sub[1:]]
                for v in sub:
                    tparents.extend([sub_pos[v]] * g.sink_degree(v))
                bg = build_wired_tree(RootedTree(tparents))
            # both builders order internal vertices by BFS from the branch
            # root, matching `sub`; check the degrees line up (the branch
            # root's former parent edge is replaced by its root-sink edge)
            assert bg.non_sink_count == len(sub)
            for i, v in enumerate(sub):
                assert bg.degree(i) == g.degree(v), "branch degree mismatch"
            out.append((bg, tuple(sub)))
        g._cache["branches"] = tuple(out)
    return g._cache["branches"]


def branch_split(g: SinkedMultigraph, u: ChipConfig) -> BranchSplit:
    """Split a configuration into root chips and per-branch restrictions."""
    if u.graph is not g and u.graph.graph_hash() != g.graph_hash():
        raise ValueError("configuration belongs to a different graph")
    configs = []
    for bg, vmap in principal_branches(g):
        configs.append(ChipConfig(bg, tuple(u.chips[v] for v in vmap)))
    return BranchSplit(g, u.chips[0], configs)


def branch_join(split: BranchSplit) -> ChipConfig:
    """Inverse of branch_split."""
    g = split.tree_graph
    chips = [0] * g.non_sink_count
    chips[0] = split.root_chips
    branches = principal_branches(g)
    if len(branches) != len(split.branch_configs):
        raise ValueError("branch count mismatch")
    for (bg, vmap), cfg in zip(branches, split.branch_configs):
        if cfg.graph.graph_hash() != bg.graph_hash():
            raise ValueError("branch configuration on the wrong branch graph")
        for i, v in enumerate(vmap):
            chips[v] = cfg.chips[i]
    return ChipConfig(g, chips)


# ----------------------------------------------------------------------
# level structure of regular trees
# ----------------------------------------------------------------------

def _require_regular(g: SinkedMultigraph) -> tuple:
    if g.regular_shape is None:
        raise ValueError("operation requires a regular wired tree")
    return g.regular_shape


def level_vector_to_config(g: SinkedMultigraph, vec) -> ChipConfig:
    """Configuration constant on depth levels: entry i at depth i-1."""
    degree, height = _require_regular(g)
    vec = tuple(int(x) for x in vec)
    if len(vec) != height - 1:
        raise ValueError(f"level vector must have {height - 1} entries")
    depths = tree_depths(g)
    return ChipConfig(g, tuple(vec[depths[i]] for i in range(g.non_sink_count)))


def config_to_level_vector(u: ChipConfig) -> tuple:
    """Inverse of level_vector_to_config; fails off the level-constant set."""
    degree, height = _require_regular(u.graph)
    depths = tree_depths(u.graph)
    vec = [None] * (height - 1)
    for i, x in enumerate(u.chips):
        d = depths[i]
        if vec[d] is None:
            vec[d] = x
        elif vec[d] != x:
            raise ValueError("configuration is not constant on levels")
    return tuple(vec)


def _word_index(g: SinkedMultigraph) -> dict:
    if "word_index" not in g._cache:
        g._cache["word_index"] = {
            g.labels[v]: i for i, v in enumerate(g.non_sink)
        }
    return g._cache["word_index"]


def level_automorphism(alpha, u: ChipConfig) -> ChipConfig:
    """Apply the graph symmetry that rotates letters at each depth.

    alpha has one entry per non-root level; letter w_i becomes
    w_i + alpha[i-1] modulo the branching factor (letters are 1-based).
    The chip count transported to a vertex comes from its preimage.
    """
    g = u.graph
    degree, height = _require_regular(g)
    a = degree - 1
    alpha = tuple(int(x) % a for x in alpha)
    if len(alpha) != max(height - 2, 0):
        raise ValueError(f"alpha must have {height - 2} entries")
    index = _word_index(g)
    out = [0] * g.non_sink_count
    for i, v in enumerate(g.non_sink):
        word = g.labels[v]
        # preimage of this vertex under the rotation
        pre = "".join(
            str((int(ch) - 1 - alpha[pos]) % a + 1) for pos, ch in enumerate(word)
        )
        out[i] = u.chips[index[pre]]
    return ChipConfig(g, out)


def all_level_shifts(g: SinkedMultigraph):
    """Every letter-rotation tuple for the regular tree (one per level)."""
    degree, height = _require_regular(g)
    a = degree - 1
    shifts = [()]
    for _ in range(height - 2):
        shifts = [s + (r,) for s in shifts for r in range(a)]
    return shifts


def symmetrize(u: ChipConfig) -> ChipConfig:
    """Average a recurrent configuration over all level rotations:
    stabilize((degree-1)^2 times the sum of all rotated copies). The
    result is recurrent, constant on levels, and fixed when u already is.
    """
    g = u.graph
    degree, height = _require_regular(g)
    a = degree - 1
    if not is_recurrent_burning(u):
        raise ValueError("symmetrize is defined for recurrent configurations")
    total = [0] * g.non_sink_count
    for alpha in all_level_shifts(g):
        rotated = level_automorphism(alpha, u)
        for i, x in enumerate(rotated.chips):
            total[i] += x
    scaled = ChipConfig(g, tuple(a * a * x for x in total))
    out = stabilize(scaled).stable
    assert is_recurrent_burning(out), "symmetrized configuration not recurrent"
    return out


# ----------------------------------------------------------------------
# branch quotient comparison
# ----------------------------------------------------------------------

def _cyclic_orbit(start: ChipConfig, step: ChipConfig) -> list:
    """Orbit of repeatedly adding `step` until the orbit closes at start."""
    orbit = [start]
    cur = add_and_stabilize(start, step)
    while cur != start:
        orbit.append(cur)
        cur = add_and_stabilize(cur, step)
    return orbit


def verify_branch_quotient(g: SinkedMultigraph, hom_samples: int = 200,
                           seed: int = 0, bound: int = 10 ** 6) -> dict:
    """Compare the group modulo its root subgroup with the direct sum of
    branch groups modulo the diagonal root subgroup.

    Enumerates both sides, checks the forgetful map (drop the root chip
    count) descends to a well-defined bijective homomorphism of quotients,
    and reports the orders. Returns a report dict with a "pass" flag.
    """
    rng = random.Random(seed)
    elems = enumerate_recurrent(g, bound=bound)
    e = identity(g)
    r_hat = recurrent_rep(ChipConfig.unit(g, 0))
    root_orbit = _cyclic_orbit(e, r_hat)
    left_order = len(elems) // len(root_orbit)
    assert len(elems) % len(root_orbit) == 0

    branches = principal_branches(g)
    branch_elems = [enumerate_recurrent(bg, bound=bound) for bg, _ in branches]
    branch_e = [identity(bg) for bg, _ in branches]
    branch_r = [recurrent_rep(ChipConfig.unit(bg, 0)) for bg, _ in branches]
    product_order = 1
    for es in branch_elems:
        product_order *= len(es)
    # order of the diagonal (r_1, ..., r_k) in the direct sum
    diag_order = 1
    cur = branch_r
    while any(c != e_i for c, e_i in zip(cur, branch_e)):
        cur = [add_and_stabilize(c, r) for c, r in zip(cur, branch_r)]
        diag_order += 1
    right_order = product_order // diag_order

    def coset_key(cfgs):
        # canonical representative of (cfgs) + <diagonal>
        best = tuple(c.chips for c in cfgs)
        cur = list(cfgs)
        for _ in range(diag_order - 1):
            cur = [add_and_stabilize(c, r) for c, r in zip(cur, branch_r)]
            key = tuple(c.chips for c in cur)
            if key < best:
                best = key
        return best

    def phi(u):
        return branch_split(g, u).branch_configs

    # well-definedness: u and u + r_hat land in the same coset
    well_defined = all(
        coset_key(phi(u)) == coset_key(phi(add_and_stabilize(u, r_hat)))
        for u in elems
    )
    image = {coset_key(phi(u)) for u in elems}
    bijective = len(image) == left_order == right_order
    hom_ok = True
    for _ in range(hom_samples):
        u = elems[rng.randrange(len(elems))]
        v = elems[rng.randrange(len(elems))]
        lhs = coset_key(phi(add_and_stabilize(u, v)))
        rhs = coset_key(
            [add_and_stabilize(cu, cv) for cu, cv in zip(phi(u), phi(v))]
        )
        if lhs != rhs:
            hom_ok = False
            break
    return {
        "left_order": left_order,
        "right_order": right_order,
        "root_subgroup_order": len(root_orbit),
        "diagonal_order": diag_order,
        "well_defined": well_defined,
        "bijective": bijective,
        "homomorphism_samples": hom_samples,
        "homomorphism_ok": hom_ok,
        "pass": well_defined and bijective and hom_ok and left_order == right_order,
    }
