"""Exact integer linear algebra: determinants and Smith normal form.

Everything here runs on arbitrary-precision Python ints. There is no
floating point anywhere in this module and no tolerance anywhere: every
division is an exact division whose exactness is a theorem (Bareiss) or is
checked (lazy stage scaling), and every transform matrix is verified
against the matrix it claims to transform.

Determinants come in two flavours:

* `det_dense` is textbook fraction-free Bareiss elimination with row
  swaps. Fine for anything small.
* `det_sparse_symmetric` is Bareiss on a sparse symmetric matrix with
  min-degree pivoting and per-entry lazy scaling. Entries are stored as
  (value, stage) pairs meaning "this is the step-`stage` Bareiss value";
  an entry untouched for a while is brought forward by multiplying with
  the current pivot and dividing by the pivot of its recorded stage, which
  is exact because every Bareiss entry is a minor of the input. On
  tree-structured matrices the min-degree order eliminates leaves first
  with zero fill-in, so the whole determinant costs O(n) big-int ops.

`det` dispatches between the two.
"""

from __future__ import annotations

import heapq
from math import gcd

# Above this dimension the SNF verification switches from full dense
# checks to the O(n^2) transform identities (see _verify_snf).
_FULL_CHECK_MAX_DIM = 60


class IntMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data):
        rows = []
        width = None
        for row in data:
            t = tuple(row)
            for x in t:
                if not isinstance(x, int):
                    raise TypeError(f"matrix entries must be ints, got {type(x).__name__}")
            if width is None:
                width = len(t)
            elif len(t) != width:
                raise ValueError("ragged rows")
            rows.append(t)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width if width is not None else 0)
        object.__setattr__(self, "_data", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None) -> "IntMatrix":
        entries = list(entries)
        r = rows if rows is not None else len(entries)
        c = cols if cols is not None else len(entries)
        m = [[0] * c for _ in range(r)]
        for i, x in enumerate(entries):
            m[i][i] = x
        return cls(m)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolists(self) -> list:
        return [list(r) for r in self._data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._data)) if self.rows else IntMatrix([[] for _ in range(self.cols)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_diagonal(self) -> bool:
        return all(
            self._data[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def diagonal_entries(self) -> tuple:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = list(zip(*other._data)) if other.cols else []
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self._data]
        )

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self._data]!r})"


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------

def det_dense(m: IntMatrix) -> int:
    """Fraction-free Bareiss determinant of a square matrix."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (piv * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


class _ZeroPivot(Exception):
    """Sparse symmetric elimination hit a zero diagonal pivot."""


def _det_sparse_symmetric(m: IntMatrix) -> int:
    # Entries are shared [value, stage] cells: rows[i][j] and rows[j][i]
    # point at the same list, so symmetric updates happen once.
    n = m.rows
    if n == 0:
        return 1
    rows: list[dict] = [dict() for _ in range(n)]
    for i in range(n):
        mrow = m.row(i)
        for j in range(i, n):
            x = mrow[j]
            if x:
                cell = [x, 0]
                rows[i][j] = cell
                if i != j:
                    rows[j][i] = cell
    pivots = [1]  # pivots[s] is the stage-s pivot; pivots[0] = 1
    alive = [True] * n
    offdeg = [sum(1 for j in rows[i] if j != i) for i in range(n)]
    heap = [(offdeg[i], i) for i in range(n)]
    heapq.heapify(heap)

    def bring(cell, stage):
        val, s = cell
        if s != stage:
            num = val * pivots[stage]
            q, r = divmod(num, pivots[s])
            if r:
                raise AssertionError("inexact stage scaling (engine bug)")
            cell[0] = q
            cell[1] = stage
        return cell[0]

    for step in range(1, n + 1):
        # min-degree pivot among alive vertices (lazy heap entries)
        while True:
            dx, x = heapq.heappop(heap)
            if alive[x] and dx == offdeg[x]:
                break
        prev_stage = step - 1
        row_x = rows[x]
        cell_xx = row_x.get(x)
        if cell_xx is None or bring(cell_xx, prev_stage) == 0:
            raise _ZeroPivot
        piv = cell_xx[0]
        prev = pivots[prev_stage]
        nbrs = [j for j in row_x if j != x and alive[j]]
        vals = {j: bring(row_x[j], prev_stage) for j in nbrs}
        for ii, i in enumerate(nbrs):
            a_ix = vals[i]
            row_i = rows[i]
            for j in nbrs[ii:]:
                cell = row_i.get(j)
                if cell is None:
                    new = (-a_ix * vals[j]) // prev
                    if new:
                        cell = [new, step]
                        row_i[j] = cell
                        if i != j:
                            rows[j][i] = cell
                            offdeg[i] += 1
                            offdeg[j] += 1
                            heapq.heappush(heap, (offdeg[i], i))
                            heapq.heappush(heap, (offdeg[j], j))
                else:
                    old = bring(cell, prev_stage)
                    new = (piv * old - a_ix * vals[j]) // prev
                    if new:
                        cell[0] = new
                        cell[1] = step
                    else:
                        del row_i[j]
                        if i != j:
                            del rows[j][i]
                            offdeg[i] -= 1
                            offdeg[j] -= 1
                            heapq.heappush(heap, (offdeg[i], i))
                            heapq.heappush(heap, (offdeg[j], j))
            del row_i[x]
            offdeg[i] -= 1
            heapq.heappush(heap, (offdeg[i], i))
        alive[x] = False
        pivots.append(piv)
    # symmetric permutation has even parity overall, so no sign correction
    return pivots[n]


def det(m: IntMatrix) -> int:
    """Exact determinant; sparse symmetric fast path, dense Bareiss otherwise."""
    if m.is_symmetric():
        try:
            return _det_sparse_symmetric(m)
        except _ZeroPivot:
            pass
    return det_dense(m)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

class _SnfWorkspace:
    """Sparse elimination workspace maintaining d = u * m * v.

    The working matrix is a dict-of-rows with a column index. Four dense
    transforms are maintained by mirrored elementary operations: every op
    applied to u (or v) has its inverse applied to uinv (or vinv), so
    u*uinv = I and v*vinv = I hold by construction and are re-checked in
    _verify_snf.
    """

    def __init__(self, m: IntMatrix):
        self.r = m.rows
        self.c = m.cols
        self.rows = [dict() for _ in range(self.r)]
        self.colsets = [set() for _ in range(self.c)]
        for i in range(self.r):
            for j, x in enumerate(m.row(i)):
                if x:
                    self.rows[i][j] = x
                    self.colsets[j].add(i)
        self.u = [[1 if i == j else 0 for j in range(self.r)] for i in range(self.r)]
        self.uinv = [[1 if i == j else 0 for j in range(self.r)] for i in range(self.r)]
        self.v = [[1 if i == j else 0 for j in range(self.c)] for i in range(self.c)]
        self.vinv = [[1 if i == j else 0 for j in range(self.c)] for i in range(self.c)]

    # -- elementary row ops (update u by the op, uinv by its inverse) --

    def row_swap(self, i, j):
        if i == j:
            return
        for col in set(self.rows[i]) | set(self.rows[j]):
            s = self.colsets[col]
            ini, inj = i in s, j in s
            if ini != inj:
                s.discard(i if ini else j)
                s.add(j if ini else i)
        self.rows[i], self.rows[j] = self.rows[j], self.rows[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def row_negate(self, i):
        for j in self.rows[i]:
            self.rows[i][j] = -self.rows[i][j]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]

    def row_addmul(self, i, k, q):
        # row_i += q * row_k
        if q == 0:
            return
        ri = self.rows[i]
        for j, x in self.rows[k].items():
            new = ri.get(j, 0) + q * x
            if new:
                ri[j] = new
                self.colsets[j].add(i)
            elif j in ri:
                del ri[j]
                self.colsets[j].discard(i)
        ui, uk = self.u[i], self.u[k]
        self.u[i] = [a + q * b for a, b in zip(ui, uk)]
        for row in self.uinv:
            row[k] -= q * row[i]

    def row_block2(self, i, j, block):
        # rows (i, j) <- block * (rows); block = [[p, q], [r, s]], det +/-1
        (p, q), (r, s) = block
        dt = p * s - q * r
        assert dt in (1, -1), "non-unimodular row block"
        ip, iq, ir, is_ = (s, -q, -r, p) if dt == 1 else (-s, q, r, -p)
        ri, rj = self.rows[i], self.rows[j]
        merged = set(ri) | set(rj)
        newi, newj = {}, {}
        for col in merged:
            a = ri.get(col, 0)
            b = rj.get(col, 0)
            x = p * a + q * b
            y = r * a + s * b
            cs = self.colsets[col]
            if x:
                newi[col] = x
                cs.add(i)
            else:
                cs.discard(i)
            if y:
                newj[col] = y
                cs.add(j)
            else:
                cs.discard(j)
        self.rows[i], self.rows[j] = newi, newj
        ui, uj = self.u[i], self.u[j]
        self.u[i] = [p * a + q * b for a, b in zip(ui, uj)]
        self.u[j] = [r * a + s * b for a, b in zip(ui, uj)]
        for row in self.uinv:
            a, b = row[i], row[j]
            row[i] = a * ip + b * ir
            row[j] = a * iq + b * is_

    # -- elementary column ops (update v by the op, vinv by its inverse) --

    def col_swap(self, i, j):
        if i == j:
            return
        for rown in self.colsets[i] | self.colsets[j]:
            row = self.rows[rown]
            a, b = row.get(i), row.get(j)
            if a is None:
                del row[j]
                row[i] = b
            elif b is None:
                del row[i]
                row[j] = a
            else:
                row[i], row[j] = b, a
        self.colsets[i], self.colsets[j] = self.colsets[j], self.colsets[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def col_negate(self, j):
        for i in self.colsets[j]:
            self.rows[i][j] = -self.rows[i][j]
        for row in self.v:
            row[j] = -row[j]
        self.vinv[j] = [-x for x in self.vinv[j]]

    def col_addmul(self, j, k, q):
        # col_j += q * col_k
        if q == 0:
            return
        for i in list(self.colsets[k]):
            row = self.rows[i]
            new = row.get(j, 0) + q * row[k]
            if new:
                row[j] = new
                self.colsets[j].add(i)
            elif j in row:
                del row[j]
                self.colsets[j].discard(i)
        for row in self.v:
            row[j] += q * row[k]
        vk = self.vinv[k]
        vj = self.vinv[j]
        self.vinv[k] = [a - q * b for a, b in zip(vk, vj)]

    def col_block2(self, i, j, block):
        # cols (i, j) <- (cols) * block with block columns giving the
        # combination: new_col_i = p*col_i + r*col_j, new_col_j = q*col_i + s*col_j
        (p, q), (r, s) = block
        dt = p * s - q * r
        assert dt in (1, -1), "non-unimodular column block"
        ip, iq, ir, is_ = (s, -q, -r, p) if dt == 1 else (-s, q, r, -p)
        for rown in self.colsets[i] | self.colsets[j]:
            row = self.rows[rown]
            a = row.get(i, 0)
            b = row.get(j, 0)
            x = p * a + r * b
            y = q * a + s * b
            if x:
                row[i] = x
                self.colsets[i].add(rown)
            else:
                row.pop(i, None)
                self.colsets[i].discard(rown)
            if y:
                row[j] = y
                self.colsets[j].add(rown)
            else:
                row.pop(j, None)
                self.colsets[j].discard(rown)
        for row in self.v:
            a, b = row[i], row[j]
            row[i] = p * a + r * b
            row[j] = q * a + s * b
        vi, vj = self.vinv[i], self.vinv[j]
        self.vinv[i] = [ip * a + iq * b for a, b in zip(vi, vj)]
        self.vinv[j] = [ir * a + is_ * b for a, b in zip(vi, vj)]

    # -- the reduction itself --

    def _pick_pivot(self, t):
        # smallest nonzero absolute value; ties broken by Markowitz count
        best = None
        for i in range(t, self.r):
            for j, x in self.rows[i].items():
                if j < t:
                    continue
                ax = abs(x)
                cost = (len(self.rows[i]) - 1) * (len(self.colsets[j]) - 1)
                key = (ax, cost)
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if ax == 1 and cost == 0:
                        return i, j
        return None if best is None else (best[1], best[2])

    def diagonalize(self):
        t = 0
        bound = min(self.r, self.c)
        while t < bound:
            picked = self._pick_pivot(t)
            if picked is None:
                break
            i, j = picked
            self.row_swap(t, i)
            self.col_swap(t, j)
            while True:
                if self.rows[t][t] < 0:
                    self.row_negate(t)
                piv = self.rows[t][t]
                # clear the pivot column with row ops; a nonzero remainder
                # becomes the new, strictly smaller pivot
                dirty = False
                for i2 in sorted(self.colsets[t] - {t}):
                    q = self.rows[i2][t] // piv
                    self.row_addmul(i2, t, -q)
                    if self.rows[i2].get(t, 0):
                        self.row_swap(t, i2)
                        dirty = True
                        break
                if dirty:
                    continue
                # clear the pivot row with column ops
                for j2 in sorted(set(self.rows[t]) - {t}):
                    q = self.rows[t][j2] // piv
                    self.col_addmul(j2, t, -q)
                    if self.rows[t].get(j2, 0):
                        self.col_swap(t, j2)
                        dirty = True
                        break
                if not dirty:
                    break
            t += 1
        return t

    def fix_divisibility(self, rank):
        # enforce d_1 | d_2 | ... | d_rank with unimodular 2x2 blocks
        changed = True
        while changed:
            changed = False
            for i in range(rank):
                a = self.rows[i][i]
                for j in range(i + 1, rank):
                    b = self.rows[j][j]
                    if b % a == 0:
                        continue
                    changed = True
                    g = gcd(a, b)
                    x, y = _bezout(a, b)
                    # rows (i,j) then cols (i,j); leaves diag (g, a*b//g)
                    self.row_block2(i, j, [[x, y], [-(b // g), a // g]])
                    self.col_block2(i, j, [[1, -(y * b) // g], [1, (x * a) // g]])
                    assert self.rows[i][i] == g and self.rows[j][j] == a * b // g, (
                        "divisibility block did not produce (gcd, lcm)"
                    )
                    a = g
        # normalize signs
        for i in range(rank):
            if self.rows[i][i] < 0:
                self.row_negate(i)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """x, y with x*a + y*b == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _mul_dense(a: list, b: list) -> list:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _verify_snf(m: IntMatrix, d: IntMatrix, u: IntMatrix, v: IntMatrix,
                uinv: list, vinv: list) -> None:
    r, c = m.rows, m.cols
    diag = d.diagonal_entries()
    assert d.is_diagonal(), "SNF result not diagonal"
    assert all(x >= 0 for x in diag), "SNF diagonal not nonnegative"
    nz = [x for x in diag if x]
    assert list(diag[: len(nz)]) == nz, "zero diagonal entries not trailing"
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0, "SNF divisibility chain broken"
    if max(r, c, 1) <= _FULL_CHECK_MAX_DIM:
        assert (u @ m) @ v == d, "u*m*v != d"
        assert u @ IntMatrix(uinv) == IntMatrix.identity(r), "u*uinv != I"
        assert IntMatrix(vinv) @ v == IntMatrix.identity(c), "vinv*v != I"
        assert abs(det_dense(u)) == 1, "u not unimodular"
        assert abs(det_dense(v)) == 1, "v not unimodular"
    else:
        # O(n^2)-flavoured identities (exact, sparse in m):
        #   u*m == d*vinv  and  m*v == uinv*d
        um = [[0] * c for _ in range(r)]
        mrows = [m.row(i) for i in range(r)]
        urows = u.tolists()
        for k in range(r):
            mk = mrows[k]
            nzcols = [(j, x) for j, x in enumerate(mk) if x]
            for i in range(r):
                uik = urows[i][k]
                if uik:
                    umi = um[i]
                    for j, x in nzcols:
                        umi[j] += uik * x
        dvinv = [
            [diag[i] * vinv[i][j] if i < len(diag) else 0 for j in range(c)]
            for i in range(r)
        ]
        assert um == dvinv, "u*m != d*vinv"
        vcols = list(zip(*v.tolists()))
        mv = [
            [sum(x * vcols[j][k] for k, x in rowk.items()) for j in range(c)]
            for rowk in [dict((j, x) for j, x in enumerate(m.row(i)) if x) for i in range(r)]
        ]
        uinvd = [
            [uinv[i][j] * diag[j] if j < len(diag) else 0 for j in range(c)]
            for i in range(r)
        ]
        assert mv == uinvd, "m*v != uinv*d"


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (d, u, v) with d = u*m*v.

    d is diagonal with nonnegative entries satisfying d_1 | d_2 | ... and
    trailing zeros; u and v are unimodular. The factorization is verified
    on every call and an AssertionError signals an engine bug.
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix(m)
    ws = _SnfWorkspace(m)
    rank = ws.diagonalize()
    ws.fix_divisibility(rank)
    dmat = [[0] * ws.c for _ in range(ws.r)]
    for i in range(rank):
        dmat[i][i] = ws.rows[i][i]
    d = IntMatrix(dmat)
    u = IntMatrix(ws.u)
    v = IntMatrix(ws.v)
    _verify_snf(m, d, u, v, ws.uinv, ws.vinv)
    return d, u, v


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal SNF entries greater than one, in divisibility order."""
    d, _, _ = smith_normal_form(m)
    return tuple(x for x in d.diagonal_entries() if x > 1)
