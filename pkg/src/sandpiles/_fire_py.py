"""Pure-Python stabilization kernel.

Reference implementation of the FIFO multi-topple loop. Chip counts are
arbitrary-precision ints; this is the fallback the compiled kernel must
agree with exactly.
"""

from collections import deque


def stabilize_csr(deg, indptr, nbr, mult, chips):
    """Stabilize `chips` on the CSR graph; return (stable, odometer).

    deg[i] is the full degree of non-sink vertex i; nbr/mult list only the
    non-sink neighbors, so chips sent to the sink simply vanish.
    """
    n = len(deg)
    c = list(chips)
    odo = [0] * n
    queue = deque(i for i in range(n) if c[i] >= deg[i])
    inq = [False] * n
    for i in queue:
        inq[i] = True
    while queue:
        x = queue.popleft()
        inq[x] = False
        d = deg[x]
        t = c[x] // d
        if t <= 0:
            continue
        odo[x] += t
        c[x] -= t * d
        for k in range(indptr[x], indptr[x + 1]):
            y = nbr[k]
            c[y] += t * mult[k]
            if c[y] >= deg[y] and not inq[y]:
                inq[y] = True
                queue.append(y)
    return c, odo
