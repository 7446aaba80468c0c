"""Reference implementations the test suite trusts.

Everything here is deliberately naive: single-chip toppling in a fixed
scan order, permutation-expansion and rational-elimination determinants,
spanning trees by subset enumeration, a textbook Smith reduction without
transforms. Slow but short enough to audit by eye; the package's real
routes are checked against these on small inputs and the agreed values
are frozen into the tests.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction


# ----------------------------------------------------------------------
# chip dynamics
# ----------------------------------------------------------------------

def oracle_stabilize(g, chips):
    """Topple the lowest-index unstable vertex, one firing at a time."""
    pos = {v: i for i, v in enumerate(g.non_sink)}
    c = list(chips)
    odo = [0] * len(c)
    while True:
        for i, v in enumerate(g.non_sink):
            if c[i] >= g.degree(v):
                c[i] -= g.degree(v)
                odo[i] += 1
                for w, mult in g.neighbors(v):
                    if w != g.sink_id:
                        c[pos[w]] += mult
                break
        else:
            return tuple(c), tuple(odo)


def oracle_is_recurrent(g, chips):
    """A stable u is recurrent iff adding one chip per sink edge and
    stabilizing returns u (the odometer is then forced to be all ones)."""
    stable, _ = oracle_stabilize(g, [c + g.sink_degree(v)
                                     for c, v in zip(chips, g.non_sink)])
    return stable == tuple(chips)


# ----------------------------------------------------------------------
# determinants and spanning trees
# ----------------------------------------------------------------------

def det_leibniz(rows):
    """Signed permutation expansion; fine up to about 7x7."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("not square")
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        # count transpositions via cycle decomposition
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def det_gauss_fractions(rows):
    """Gaussian elimination over exact rationals."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            for cc in range(col, n):
                a[r][cc] -= factor * a[col][cc]
    assert det.denominator == 1
    return int(det)


def spanning_trees_brute(g):
    """Sum over edge subsets: count skeleton trees weighted by the product
    of edge multiplicities. Exponential; keep below ~20 distinct edges."""
    n = g.vertex_count
    skeleton = [(u, v, m) for u, v, m in g.edges]
    count = 0
    for subset in itertools.combinations(skeleton, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        weight = 1
        acyclic = True
        for u, v, m in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
            weight *= m
        if acyclic:
            count += weight
    return count


# ----------------------------------------------------------------------
# Smith diagonal, no transforms
# ----------------------------------------------------------------------

def snf_diagonal_naive(rows):
    """Textbook reduction to a divisibility-chain diagonal."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            for i in range(t + 1, nr):
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(nc):
                        a[i][j] -= q * a[t][j]
            for j in range(t + 1, nc):
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(nr):
                        a[i][j] -= q * a[i][t]
            nonzero = ([(i, t) for i in range(t + 1, nr) if a[i][t]]
                       + [(t, j) for j in range(t + 1, nc) if a[t][j]])
            if not nonzero:
                break
            i, j = min(nonzero, key=lambda ij: abs(a[ij[0]][ij[1]]))
            if i != t:
                a[t], a[i] = a[i], a[t]
            else:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        # pull a non-multiple into the pivot row, if any
        offender = next(((i, j) for i in range(t + 1, nr)
                         for j in range(t + 1, nc) if a[i][j] % a[t][t]), None)
        if offender is not None:
            i, _ = offender
            for j in range(nc):
                a[t][j] += a[i][j]
            continue
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(nr, nc) - len(diag)))
    return diag


# ----------------------------------------------------------------------
# random instances
# ----------------------------------------------------------------------

def random_sinked_multigraph(rng: random.Random, max_nonsink=5, max_mult=3,
                             extra_edges=3):
    """Random multigraph with every vertex connected to the sink: a random
    spanning tree plus a few extra weighted edges."""
    from sandpiles import SinkedMultigraph

    n = rng.randint(1, max_nonsink)  # non-sink vertices 0..n-1, sink = n
    edges = []
    for v in range(n):
        other = rng.randrange(v + 1, n + 1)  # parent toward higher index
        edges.append((v, other, rng.randint(1, max_mult)))
    for _ in range(rng.randint(0, extra_edges)):
        u = rng.randrange(n + 1)
        v = rng.randrange(n + 1)
        if u != v:
            edges.append((u, v, rng.randint(1, max_mult)))
    return SinkedMultigraph(n + 1, n, edges)


def random_chips(rng: random.Random, g, max_chips=25):
    return tuple(rng.randint(0, max_chips) for _ in g.non_sink)
