"""One-shot verification suites for the package's named claims.

Each suite returns a list of per-instance reports shaped like
{"claim": ..., "instance": ..., "expected": ..., "computed": ..., "pass": ...}
so the CLI can stream them as JSON lines. Sweeps run on a thread pool
capped by the SANDPILE_THREADS environment variable; report order follows
instance order regardless of completion order. Possibly huge integers
(orders, spanning-tree counts) are reported as decimal strings.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor

from .firing import (
    ChipConfig,
    add_and_stabilize,
    element_order,
    enumerate_recurrent,
    identity,
    is_recurrent_burning,
    recurrent_rep,
    stabilize,
)
from .formulas import (
    ball_quotient_decomposition,
    ball_root_subgroup_order,
    lex_successor,
    root_subgroup_order,
    spanning_tree_product,
    spanning_tree_recurrence,
    sylow_rank_ball_formula,
    theorem_decomposition,
)
from .graphs import (
    SinkedMultigraph,
    build_wired_ball,
    build_wired_regular_tree,
    spanning_tree_count,
)
from .groups import decomposition_equals, sandpile_group, sylow_rank
from .trees import (
    config_to_level_vector,
    counterexample_tree,
    is_recurrent_critical,
    verify_branch_quotient,
)


def _thread_cap(job_count: int) -> int:
    env = os.environ.get("SANDPILE_THREADS")
    if env is not None:
        try:
            width = int(env)
        except ValueError:
            raise ValueError(f"SANDPILE_THREADS must be an integer, got {env!r}")
    else:
        width = min(4, os.cpu_count() or 1)
    return max(1, min(width, job_count))


def _run_jobs(claim: str, jobs) -> list:
    """Run zero-argument report builders, preserving order."""
    if not jobs:
        return []
    width = _thread_cap(len(jobs))
    if width == 1:
        reports = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=width) as pool:
            reports = list(pool.map(lambda job: job(), jobs))
    return [{"claim": claim, **r} for r in reports]


# ----------------------------------------------------------------------
# spanning-tree counts
# ----------------------------------------------------------------------

def verify_lemma_1_1(degree: int = 3, max_height: int = 6) -> list:
    """Spanning-tree recurrence against the determinant, heights 4..max."""
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if max_height < 4:
        raise ValueError("the recurrence needs height at least 4")

    def job(n):
        def run():
            dets = [
                spanning_tree_count(build_wired_regular_tree(degree, m))
                for m in (n - 2, n - 1, n)
            ]
            value = spanning_tree_recurrence(degree, n, dets[1], dets[0])
            return {
                "instance": {"degree": degree, "height": n},
                "expected": str(dets[2]),
                "computed": str(value),
                "pass": value == dets[2],
            }
        return run

    return _run_jobs("lemma-1.1", [job(n) for n in range(4, max_height + 1)])


def verify_eq_1_2(degree: int = 3, max_height: int = 6) -> list:
    """Closed product formula against the determinant, heights 2..max."""
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if max_height < 2:
        raise ValueError("max height must be at least 2")

    def job(n):
        def run():
            det = spanning_tree_count(build_wired_regular_tree(degree, n))
            value = spanning_tree_product(degree, n)
            return {
                "instance": {"degree": degree, "height": n},
                "expected": str(det),
                "computed": str(value),
                "pass": value == det,
            }
        return run

    return _run_jobs("eq-1.2", [job(n) for n in range(2, max_height + 1)])


def verify_theorem_1_2(degree: int = 3, max_height: int = 6) -> list:
    """Closed-form group decomposition against the Smith normal form."""
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if max_height < 2:
        raise ValueError("max height must be at least 2")

    def job(n):
        def run():
            grp = sandpile_group(build_wired_regular_tree(degree, n))
            dec = theorem_decomposition(degree, n)
            return {
                "instance": {"degree": degree, "height": n},
                "expected": list(grp.invariant_factors),
                "computed": list(dec.summands.invariant_factors()),
                "pass": decomposition_equals(dec.summands, grp),
            }
        return run

    return _run_jobs("theorem-1.2", [job(n) for n in range(2, max_height + 1)])


# ----------------------------------------------------------------------
# recurrence tests
# ----------------------------------------------------------------------

def _stable_configs(g: SinkedMultigraph, bound: int):
    degs = g.degree_vector()
    total = 1
    for d in degs:
        total *= d
    if total > bound:
        raise ValueError(f"{total} stable configurations exceed bound {bound}")
    return (ChipConfig(g, chips) for chips in
            itertools.product(*[range(d) for d in degs]))


def _burning_critical_report(g, label, expected_recurrent, bound):
    agree = True
    count = 0
    for u in _stable_configs(g, bound):
        burning = is_recurrent_burning(u)
        if burning != is_recurrent_critical(g, u):
            agree = False
        if burning:
            count += 1
    return {
        "instance": label,
        "expected": {"agree": True, "recurrent": str(expected_recurrent)},
        "computed": {"agree": agree, "recurrent": str(count)},
        "pass": agree and count == expected_recurrent,
    }


def verify_burning_vs_critical(degree: int = None, height: int = None,
                               bound: int = 10 ** 6) -> list:
    """Exhaustive agreement of the burning and critical-vertex tests.

    Default instances are the two smallest ternary trees plus the
    order-40 counterexample tree, with their known recurrent counts.
    Passing degree and height checks one regular tree instead, with the
    spanning-tree count as the expected number of recurrents.
    """
    if (degree is None) != (height is None):
        raise ValueError("degree and height must be given together")
    jobs = []
    if degree is None:
        def canonical(make, label, expected):
            def run():
                return _burning_critical_report(make(), label, expected, bound)
            return run
        jobs.append(canonical(lambda: build_wired_regular_tree(3, 2),
                              {"tree": "regular", "degree": 3, "height": 2}, 3))
        jobs.append(canonical(lambda: build_wired_regular_tree(3, 3),
                              {"tree": "regular", "degree": 3, "height": 3}, 21))
        jobs.append(canonical(counterexample_tree,
                              {"tree": "counterexample"}, 40))
    else:
        def custom():
            g = build_wired_regular_tree(degree, height)
            return _burning_critical_report(
                g, {"tree": "regular", "degree": degree, "height": height},
                spanning_tree_count(g), bound)
        jobs.append(custom)
    return _run_jobs("burning-vs-critical", jobs)


# ----------------------------------------------------------------------
# root subgroup and lexicographic structure
# ----------------------------------------------------------------------

def verify_lemma_4_1(degree: int = 3, height: int = 4) -> list:
    """Chip-firing multiples of the root generator against lex successors.

    With the defaults this prints the full 15-column orbit of the ternary
    height-4 tree, one instance per multiple, ending at the identity.
    """
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if height < 2:
        raise ValueError("height must be at least 2")
    g = build_wired_regular_tree(degree, height)
    r_hat = recurrent_rep(ChipConfig.unit(g, 0))
    e = identity(g)
    period = root_subgroup_order(degree, height)

    reports = []
    vec = config_to_level_vector(r_hat)
    start = vec
    u = r_hat
    for k in range(1, period + 1):
        computed = list(config_to_level_vector(u))
        reports.append({
            "instance": {"degree": degree, "height": height, "k": k},
            "expected": list(vec),
            "computed": computed,
            "pass": computed == list(vec),
        })
        vec = lex_successor(vec, degree)
        u = add_and_stabilize(u, r_hat)
    closure = {
        "ends_at_identity": reports[-1]["computed"] == list(config_to_level_vector(e)),
        "returns_to_start": list(vec) == list(start),
    }
    reports.append({
        "instance": {"degree": degree, "height": height, "k": "closure"},
        "expected": {"ends_at_identity": True, "returns_to_start": True},
        "computed": closure,
        "pass": all(closure.values()),
    })
    return [{"claim": "lemma-4.1", **r} for r in reports]


def verify_prop_4_2(degree: int = None, max_height: int = 5) -> list:
    """Order of the root generator against the closed form."""
    degrees = (3, 4) if degree is None else (degree,)
    if any(d < 3 for d in degrees):
        raise ValueError("degree must be at least 3")
    if max_height < 2:
        raise ValueError("max height must be at least 2")

    def job(d, n):
        def run():
            g = build_wired_regular_tree(d, n)
            order = element_order(recurrent_rep(ChipConfig.unit(g, 0)))
            formula = root_subgroup_order(d, n)
            return {
                "instance": {"degree": d, "height": n},
                "expected": str(formula),
                "computed": str(order),
                "pass": order == formula,
            }
        return run

    jobs = [job(d, n) for d in degrees for n in range(2, max_height + 1)]
    return _run_jobs("prop-4.2", jobs)


def verify_prop_4_3_counterexample() -> list:
    """The root subgroup can fail to split off: the order-40 tree.

    The group is cyclic of order 40 and the root generator has order 10,
    yet some recurrent x with (4x)° equal to the generator has order 40,
    so no complement of the order-10 subgroup exists.
    """
    g = counterexample_tree()
    grp = sandpile_group(g)
    r_hat = recurrent_rep(ChipConfig.unit(g, 0))
    r_order = element_order(r_hat)
    witness = None
    for u in enumerate_recurrent(g):
        if stabilize(u.scale(4)).stable == r_hat:
            witness = u
            break
    w_order = element_order(witness) if witness is not None else None
    reports = [
        {
            "instance": {"check": "group"},
            "expected": [40],
            "computed": list(grp.invariant_factors),
            "pass": list(grp.invariant_factors) == [40],
        },
        {
            "instance": {"check": "root-order"},
            "expected": "10",
            "computed": str(r_order),
            "pass": r_order == 10,
        },
        {
            "instance": {"check": "witness"},
            "expected": {"exists": True, "order": "40"},
            "computed": {
                "exists": witness is not None,
                "order": None if w_order is None else str(w_order),
                "chips": None if witness is None else list(witness.chips),
            },
            "pass": witness is not None and w_order == 40,
        },
    ]
    return [{"claim": "prop-4.3-counterexample", **r} for r in reports]


# ----------------------------------------------------------------------
# branch quotients and ball Sylow ranks
# ----------------------------------------------------------------------

def verify_theorem_3_4(degree: int = None, height: int = None,
                       hom_samples: int = 200, seed: int = 0,
                       bound: int = 10 ** 6) -> list:
    """Quotient by the root subgroup against the branch-sum quotient."""
    if (degree is None) != (height is None):
        raise ValueError("degree and height must be given together")
    if degree is None:
        instances = [
            ({"tree": "regular", "degree": 3, "height": 3},
             lambda: build_wired_regular_tree(3, 3)),
            ({"tree": "regular", "degree": 3, "height": 4},
             lambda: build_wired_regular_tree(3, 4)),
            ({"tree": "counterexample"}, counterexample_tree),
        ]
    else:
        instances = [
            ({"tree": "regular", "degree": degree, "height": height},
             lambda: build_wired_regular_tree(degree, height)),
        ]

    def job(label, make):
        def run():
            report = verify_branch_quotient(
                make(), hom_samples=hom_samples, seed=seed, bound=bound)
            ok = report.pop("pass")
            report["left_order"] = str(report["left_order"])
            report["right_order"] = str(report["right_order"])
            return {
                "instance": label,
                "expected": {
                    "equal_orders": True, "well_defined": True,
                    "bijective": True, "homomorphism_ok": True,
                },
                "computed": report,
                "pass": ok,
            }
        return run

    return _run_jobs("theorem-3.4", [job(lb, mk) for lb, mk in instances])


_BALL_GRID = [(3, n) for n in (1, 2, 3)] + [(4, n) for n in (1, 2)]
_BALL_PRIMES = (5, 7, 13)


def verify_theorem_5_1(degree: int = None, n: int = None,
                       prime: int = None) -> list:
    """Sylow rank formula for balls against the Smith normal form, plus
    an order consistency check for the ball quotient decomposition."""
    if (degree is None) != (n is None):
        raise ValueError("degree and n must be given together")
    pairs = _BALL_GRID if degree is None else [(degree, n)]
    primes = _BALL_PRIMES if prime is None else (prime,)
    for d, radius in pairs:
        if d < 3 or radius < 1:
            raise ValueError("need degree at least 3 and n at least 1")
        for p in primes:
            if d * (d - 1) % p == 0:
                raise ValueError(f"prime {p} divides {d}({d}-1)")

    def rank_job(d, radius, p):
        def run():
            grp = sandpile_group(build_wired_ball(d, radius))
            rank = sylow_rank(grp, p)
            formula = sylow_rank_ball_formula(d, radius, p)
            return {
                "instance": {"degree": d, "n": radius, "prime": p,
                             "check": "rank"},
                "expected": rank,
                "computed": formula,
                "pass": formula == rank,
            }
        return run

    def order_job(d, radius):
        def run():
            g = build_wired_ball(d, radius)
            det = spanning_tree_count(g)
            value = (ball_root_subgroup_order(d, radius)
                     * ball_quotient_decomposition(d, radius).order())
            return {
                "instance": {"degree": d, "n": radius, "check": "order"},
                "expected": str(det),
                "computed": str(value),
                "pass": value == det,
            }
        return run

    jobs = [rank_job(d, radius, p) for d, radius in pairs for p in primes]
    jobs.extend(order_job(d, radius) for d, radius in pairs)
    return _run_jobs("theorem-5.1", jobs)


CLAIMS = {
    "lemma-1.1": verify_lemma_1_1,
    "eq-1.2": verify_eq_1_2,
    "theorem-1.2": verify_theorem_1_2,
    "burning-vs-critical": verify_burning_vs_critical,
    "lemma-4.1": verify_lemma_4_1,
    "prop-4.2": verify_prop_4_2,
    "prop-4.3-counterexample": verify_prop_4_3_counterexample,
    "theorem-3.4": verify_theorem_3_4,
    "theorem-5.1": verify_theorem_5_1,
}
