"""Closed forms for wired regular trees and balls.

Conventions, used consistently across the package: `a = degree - 1` is the
branching factor, and q(k) below is the k-term geometric sum
1 + a + ... + a^(k-1). Level vectors describe configurations that are
constant on each depth level of a regular wired tree of height n; they
have n-1 entries, entry i giving the chip count at depth i-1 (entry 1 is
the root). A level vector is in recurrent form when every entry lies in
[0, degree-1] and any zero entry forces all earlier entries to equal
degree-1.
"""

from __future__ import annotations

from .groups import CyclicSummands, is_prime


class ClosedFormDecomposition:
    """Cyclic decomposition of a regular wired tree group, by closed form."""

    __slots__ = ("degree", "height", "summands")

    def __init__(self, degree, height, summands: CyclicSummands):
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "summands", summands)

    def __setattr__(self, name, value):
        raise AttributeError("ClosedFormDecomposition is immutable")

    def order(self) -> int:
        return self.summands.order()

    def __repr__(self):
        return (f"ClosedFormDecomposition(degree={self.degree}, "
                f"height={self.height}, {self.summands!r})")


def _check_degree(degree: int) -> int:
    if degree < 3:
        raise ValueError("degree must be at least 3")
    return degree - 1


def geometric_sum(a: int, k: int) -> int:
    """1 + a + ... + a^(k-1); the k-th cyclic modulus for branching a."""
    if k < 0:
        raise ValueError("negative length")
    if a == 1:
        return k
    return (a ** k - 1) // (a - 1)


def root_subgroup_order(degree: int, height: int) -> int:
    """Order of the cyclic subgroup generated by the root representative,
    which equals the number of recurrent level vectors:
    ((degree-1)^height - 1) / (degree - 2)."""
    a = _check_degree(degree)
    if height < 2:
        raise ValueError("height must be at least 2")
    return (a ** height - 1) // (degree - 2)


def spanning_tree_product(degree: int, height: int) -> int:
    """Spanning-tree count of the wired regular tree, product form:
    q(n) * prod over k in 1..n-2 of q(k+1)^(a^(n-2-k) * (a-1))."""
    a = _check_degree(degree)
    n = height
    if n < 2:
        raise ValueError("height must be at least 2")
    total = geometric_sum(a, n)
    for k in range(1, n - 1):
        total *= geometric_sum(a, k + 1) ** (a ** (n - 2 - k) * (a - 1))
    return total


def spanning_tree_recurrence(degree: int, height: int, t_prev: int, t_prev2: int) -> int:
    """Spanning-tree count via the two-step recurrence
    t_n = t_{n-1}^(d-2) * (d * t_{n-1} - (d-1) * t_{n-2}^(d-1)),
    valid for height >= 4; t_prev and t_prev2 are the counts at heights
    n-1 and n-2."""
    d = degree
    _check_degree(d)
    if height < 4:
        raise ValueError("the recurrence needs height at least 4")
    return t_prev ** (d - 2) * (d * t_prev - (d - 1) * t_prev2 ** (d - 1))


def spanning_tree_path_form(degree: int, height: int, counts) -> int:
    """Spanning-tree count via the additive identity
    t_n = t_{n-1}^(d-1) + (d-1)^(n-1) * prod over k in 1..n-1 of t_k^(d-2).
    `counts` maps heights 1..n-1 to their spanning-tree counts; the
    height-1 tree is degenerate and contributes a factor of 1."""
    d = degree
    a = _check_degree(d)
    n = height
    if n < 3:
        raise ValueError("the additive identity needs height at least 3")
    missing = [k for k in range(1, n) if k not in counts]
    if missing:
        raise ValueError(f"missing earlier counts for heights {missing}")
    prod = 1
    for k in range(1, n):
        prod *= counts[k] ** (d - 2)
    return counts[n - 1] ** (d - 1) + a ** (n - 1) * prod


def theorem_decomposition(degree: int, height: int) -> ClosedFormDecomposition:
    """Closed-form cyclic decomposition of the wired regular tree group:
    one summand of modulus q(n), plus q(k) with multiplicity
    a^(n-1-k) * (a-1) for k from n-1 down to 2."""
    a = _check_degree(degree)
    n = height
    if n < 2:
        raise ValueError("height must be at least 2")
    summands = [(geometric_sum(a, k), a ** (n - 1 - k) * (a - 1)) for k in range(2, n)]
    summands.append((geometric_sum(a, n), 1))
    return ClosedFormDecomposition(degree, n, CyclicSummands(summands))


def ball_quotient_decomposition(degree: int, radius: int) -> CyclicSummands:
    """Cyclic decomposition of the wired ball group modulo its root
    subgroup: q(n+1) with multiplicity a, then q(k) with multiplicity
    (a-1) * a^(n-k) * (a+1) for k from n down to 2."""
    a = _check_degree(degree)
    n = radius
    if n < 1:
        raise ValueError("radius must be at least 1")
    summands = [(geometric_sum(a, n + 1), a)]
    for k in range(n, 1, -1):
        summands.append((geometric_sum(a, k), (a - 1) * a ** (n - k) * (a + 1)))
    return CyclicSummands(summands)


def ball_root_subgroup_order(degree: int, radius: int) -> int:
    """Order of the root subgroup of the wired ball group: d * (d-1)^n."""
    a = _check_degree(degree)
    if radius < 1:
        raise ValueError("radius must be at least 1")
    return degree * a ** radius


def multiplicative_order(a: int, p: int) -> int:
    """Least k >= 1 with a^k = 1 mod p."""
    if a % p == 0:
        raise ValueError("argument divisible by the modulus")
    k = 1
    x = a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def modulus_period(degree: int, p: int) -> int:
    """Least n with p dividing q(n): p itself when a = 1 mod p, otherwise
    the multiplicative order of a mod p. Requires p prime to d(d-1)."""
    a = _check_degree(degree)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (degree * a) % p == 0:
        raise ValueError("prime must not divide degree * (degree - 1)")
    t = p if a % p == 1 else multiplicative_order(a, p)
    # tiny cross-check by direct search; the period is small at desk scale
    n = 1
    while geometric_sum(a, n) % p:
        n += 1
    assert n == t, "period formula disagrees with direct search (engine bug)"
    return t


def sylow_rank_ball_formula(degree: int, radius: int, p: int) -> int:
    """Closed-form rank of the Sylow p-subgroup of the wired ball group:
    d(d-2) * sum of (d-1)^m over m < n with m = n mod the period, plus an
    extra d-1 when n = -1 mod the period."""
    d = degree
    a = _check_degree(d)
    n = radius
    if n < 1:
        raise ValueError("radius must be at least 1")
    t = modulus_period(d, p)
    rank = d * (d - 2) * sum(a ** m for m in range(n % t, n, t))
    if (n + 1) % t == 0:
        rank += a
    return rank


# ----------------------------------------------------------------------
# level vectors
# ----------------------------------------------------------------------

def is_recurrent_form(vec, degree: int) -> bool:
    """Is a level vector in recurrent form (zero forces full prefix)?"""
    a = _check_degree(degree)
    vec = tuple(vec)
    if not vec:
        return False
    if any(not 0 <= x <= a for x in vec):
        return False
    for i, x in enumerate(vec):
        if x == 0 and any(y != a for y in vec[:i]):
            return False
    return True


def lex_successor(vec, degree: int) -> tuple:
    """Cyclic successor of a recurrent-form level vector.

    Increment the root entry when possible; otherwise the carry resets the
    maximal full prefix and bumps the first non-full entry. The orbit walks
    all recurrent-form vectors and closes into a cycle.
    """
    a = _check_degree(degree)
    vec = tuple(vec)
    if not is_recurrent_form(vec, degree):
        raise ValueError(f"{vec} is not in recurrent form")
    if vec[0] < a:
        return (vec[0] + 1,) + vec[1:]
    j = next((i for i, x in enumerate(vec) if x < a), len(vec))
    # positions before j hold a = degree-1; the carry leaves a full prefix
    # of length j-1, a zero, then the bumped entry
    if j == len(vec):
        return (a,) * (len(vec) - 1) + (0,)
    return (a,) * (j - 1) + (0, vec[j] + 1) + vec[j + 1:]
