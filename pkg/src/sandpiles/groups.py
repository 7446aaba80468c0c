"""Finite abelian group bookkeeping for sandpile groups.

The group of a graph is the cokernel of its reduced Laplacian; its
structure is read off the Smith normal form diagonal. Closed-form results
are stated as lists of cyclic summands with multiplicities, so comparing
the two routes means canonicalizing both to invariant-factor chains.
"""

from __future__ import annotations

import json
from math import gcd, isqrt

from .graphs import SinkedMultigraph, reduced_laplacian, spanning_tree_count
from .linalg import smith_normal_form


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond desk scale)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int) -> dict:
    """Prime factorization by trial division plus Pollard rho."""
    assert n >= 1
    out: dict[int, int] = {}

    def add(p, e=1):
        out[p] = out.get(p, 0) + e

    def rho(m):
        if m % 2 == 0:
            return 2
        x, c = 2, 1
        while True:
            y = x
            d = 1
            while d == 1:
                x = (x * x + c) % m
                y = (y * y + c) % m
                y = (y * y + c) % m
                d = gcd(abs(x - y), m)
            if d != m:
                return d
            c += 1

    def factor(m):
        if m == 1:
            return
        if is_prime(m):
            add(m)
            return
        for p in (2, 3, 5, 7, 11, 13):
            if m % p == 0:
                while m % p == 0:
                    add(p)
                    m //= p
                factor(m)
                return
        p = 7
        lim = min(isqrt(m), 10 ** 5)
        while p <= lim:
            if m % p == 0:
                while m % p == 0:
                    add(p)
                    m //= p
                factor(m)
                return
            p += 2
        d = rho(m)
        factor(d)
        factor(m // d)

    factor(n)
    return out


class CyclicSummands:
    """A finite abelian group as a list of (modulus, multiplicity) pairs."""

    __slots__ = ("summands",)

    def __init__(self, summands):
        cleaned = []
        for q, mult in summands:
            q, mult = int(q), int(mult)
            if q < 2:
                raise ValueError("cyclic summand modulus must be at least 2")
            if mult < 1:
                raise ValueError("summand multiplicity must be positive")
            cleaned.append((q, mult))
        object.__setattr__(self, "summands", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("CyclicSummands is immutable")

    def order(self) -> int:
        total = 1
        for q, mult in self.summands:
            total *= q ** mult
        return total

    def invariant_factors(self) -> tuple:
        """Canonical chain d_1 | d_2 | ... of the underlying group."""
        by_prime: dict[int, list] = {}
        for q, mult in self.summands:
            for p, e in _factorize(q).items():
                by_prime.setdefault(p, []).extend([e] * mult)
        if not by_prime:
            return ()
        rank = max(len(v) for v in by_prime.values())
        factors = [1] * rank
        for p, exps in by_prime.items():
            exps.sort(reverse=True)
            for i, e in enumerate(exps):
                factors[rank - 1 - i] *= p ** e
        return tuple(factors)

    def __eq__(self, other):
        return isinstance(other, CyclicSummands) and self.invariant_factors() == other.invariant_factors()

    def __repr__(self):
        return f"CyclicSummands({list(self.summands)!r})"


class GroupDecomposition:
    """Invariant-factor decomposition d_1 | d_2 | ... with the group order."""

    __slots__ = ("invariant_factors", "order")

    def __init__(self, invariant_factors):
        factors = tuple(int(x) for x in invariant_factors)
        for x in factors:
            if x < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        order = 1
        for x in factors:
            order *= x
        object.__setattr__(self, "invariant_factors", factors)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("GroupDecomposition is immutable")

    def to_json_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "order": str(self.order),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def __eq__(self, other):
        return (
            isinstance(other, GroupDecomposition)
            and self.invariant_factors == other.invariant_factors
        )

    def __repr__(self):
        return f"GroupDecomposition({list(self.invariant_factors)!r})"


def sandpile_group(g: SinkedMultigraph) -> GroupDecomposition:
    """Group structure from the Smith normal form of the reduced Laplacian.

    The order is cross-checked against the spanning-tree count, which is
    computed by an independent elimination route.
    """
    if "group" not in g._cache:
        d, _, _ = smith_normal_form(reduced_laplacian(g))
        diag = d.diagonal_entries()
        assert all(x != 0 for x in diag), "reduced Laplacian is singular (engine bug)"
        dec = GroupDecomposition(tuple(x for x in diag if x > 1))
        assert dec.order == spanning_tree_count(g), (
            "group order disagrees with the spanning-tree count (engine bug)"
        )
        g._cache["group"] = dec
    return g._cache["group"]


def sylow_rank(dec: GroupDecomposition, p: int) -> int:
    """Rank of the Sylow p-subgroup: invariant factors divisible by p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return sum(1 for x in dec.invariant_factors if x % p == 0)


def decomposition_equals(a: CyclicSummands, b: GroupDecomposition) -> bool:
    """Do a closed-form summand list and an SNF decomposition agree?"""
    return a.invariant_factors() == b.invariant_factors
