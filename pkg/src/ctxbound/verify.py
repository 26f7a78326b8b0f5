"""Built-in fixture suite behind ``ctxbound verify``.

Every check is deterministic for a given seed and needs no external data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .bounds import bound_report, count_states
from .contextuality import ncva_exists, peres_mermin_square
from .partition import (
    certify_disjoint,
    check_certificate,
    find_orthogonal_pair,
    find_partitioning,
    is_partitioning,
    make_state_set,
    five_state_family,
    pbr_set,
)
from .tableau import enumerate_states, is_orthogonal, product_state


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _counts() -> Check:
    got = {n: len(enumerate_states(n)) for n in (1, 2, 3)}
    want = {n: count_states(n) for n in (1, 2, 3)}
    return Check("enumeration-counts", got == want, f"enumerated {got}, formula {want}")


def _pbr() -> Check:
    s = pbr_set()
    v = is_partitioning(s, "YY")
    idx = {product_state(x): i for i, x in enumerate(("00", "0+", "+0", "++"))}
    want = {1: {idx[product_state("00")], idx[product_state("++")]},
            -1: {idx[product_state("0+")], idx[product_state("+0")]}}
    ok = v.partitioning and all(v.evidence[k] and set(v.evidence[k]) == want[k] for k in (1, -1))
    return Check("pbr-yy-partitioning", bool(ok), f"YY partitioning={v.partitioning}, evidence={v.evidence}")


def _five_set() -> Check:
    s = five_state_family()
    orth = find_orthogonal_pair(s.states)
    hit = find_partitioning(s)
    ok = len(s) == 5 and orth is None and hit is None
    return Check("five-state-family", ok, f"size={len(s)}, orthogonal pair={orth}, partitioning={hit and str(hit.observable)}")


def _peres_mermin() -> Check:
    pm = peres_mermin_square()
    full = ncva_exists(pm).feasible
    subsets = [ncva_exists(c).feasible for c in combinations(pm, 8)]
    ok = len(pm) == 9 and not full and all(subsets)
    return Check("peres-mermin", ok, f"full square feasible={full}, 8-subsets feasible={sum(subsets)}/{len(subsets)}")


def _bounds() -> Check:
    (row,) = bound_report([2])
    ok = row.state_count == 60 and row.overlap_cap == 5 and row.gk_bits == 10 and abs(row.lower_bound_bits - 3.584962500721156) < 1e-9
    return Check("bound-report-n2", ok, f"log2(|S|/m)={row.lower_bound_bits:.6f}, GK bits={row.gk_bits}")


def random_nonorthogonal_set(rng: random.Random, states, size: int):
    """Random pairwise non-orthogonal subset of ``states`` (greedy over a shuffle, retried)."""
    for _ in range(1000):
        order = list(range(len(states)))
        rng.shuffle(order)
        chosen = []
        for i in order:
            if all(not is_orthogonal(states[i], states[j]) for j in chosen):
                chosen.append(i)
                if len(chosen) == size:
                    return make_state_set(states[i] for i in chosen)
    raise RuntimeError(f"no pairwise non-orthogonal set of size {size} found")


def _n3_certificate(seed: int) -> Check:
    rng = random.Random(seed)
    s = random_nonorthogonal_set(rng, enumerate_states(3), 16)
    cert = certify_disjoint(s, 2)
    ok = cert is not None and check_certificate(s, cert)
    return Check("n3-sixteen-set-certificate", ok, f"seed={seed}, certificate={type(cert).__name__}")


def run_fixtures(seed: int = 0) -> list[Check]:
    return [_counts(), _pbr(), _five_set(), _peres_mermin(), _bounds(), _n3_certificate(seed)]
