"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import hashlib
import itertools
import math
import random
import time
from fractions import Fraction

from ctxbound.bounds import bound_report, count_states
from ctxbound.cli import main
from ctxbound.contextuality import ncva_exists, ncva_exists_bruteforce, peres_mermin_square
from ctxbound.partition import (
    certify_disjoint,
    check_certificate,
    commuting_products,
    eigen_observables,
    find_orthogonal_pair,
    find_partitioning,
    is_partitioning,
    make_state_set,
    five_state_family,
    pbr_set,
    contextuality_bridge,
)
from ctxbound.pauli import all_observables
from ctxbound.tableau import _enumerate, enumerate_states, is_orthogonal, measure_update, product_state
from ctxbound.verify import random_nonorthogonal_set
from oracle import born, same_ray, statevector


def test_01_enumeration_counts(criterion):
    _enumerate.cache_clear()
    t0 = time.perf_counter()
    got = {n: len(enumerate_states(n)) for n in (1, 2, 3)}
    elapsed = time.perf_counter() - t0
    want = {n: count_states(n) for n in (1, 2, 3)}
    ok = got == want == {1: 6, 2: 60, 3: 1080} and elapsed < 60
    criterion(1, ok, f"enumerated {got} vs formula {want} in {elapsed:.1f}s")
    assert ok


def test_02_born_rule_oracle(criterion):
    t0 = time.perf_counter()
    checked = mismatches = 0
    for s in enumerate_states(2):
        v = statevector(s)
        for o in all_observables(2):
            for k in (1, -1):
                r = measure_update(s, o, k)
                p, post = born(v, o.letters, k)
                checked += 1
                exact = r.probability in (Fraction(0), Fraction(1, 2), Fraction(1))
                if not exact or abs(float(r.probability) - p) > 1e-12:
                    mismatches += 1
                elif post is not None and not same_ray(statevector(r.post_state), post):
                    mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = checked == 60 * 15 * 2 and mismatches == 0 and elapsed < 60
    criterion(2, ok, f"{checked} cases, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_03_pbr_yy(criterion):
    t0 = time.perf_counter()
    s = pbr_set()
    v = is_partitioning(s, "YY", "literal")
    pos = {x: s.states.index(product_state(x)) for x in ("00", "0+", "+0", "++")}
    plus_ok = set(v.evidence[1] or ()) == {pos["00"], pos["++"]}
    minus_ok = set(v.evidence[-1] or ()) == {pos["0+"], pos["+0"]}
    elapsed = time.perf_counter() - t0
    ok = v.partitioning and plus_ok and minus_ok and elapsed < 1
    criterion(3, ok, f"YY partitioning={v.partitioning}, +1 pair |00>,|++>: {plus_ok}, -1 pair |0+>,|+0>: {minus_ok}")
    assert ok


def test_04_five_state_family(criterion):
    t0 = time.perf_counter()
    s = five_state_family()
    nonorth = all(not is_orthogonal(a, b) for a, b in itertools.combinations(s.states, 2))
    hit = find_partitioning(s, "all", "literal")
    elapsed = time.perf_counter() - t0
    ok = len(s) == 5 and nonorth and hit is None and elapsed < 1
    criterion(4, ok, f"pairwise non-orthogonal={nonorth}, partitioning observable={hit and str(hit.observable)}")
    assert ok


def test_05_brute_force_bound(criterion, literal_search_timed):
    r, elapsed = literal_search_timed
    five = five_state_family()
    others = [x for x in enumerate_states(2) if x not in five.states]
    partitioned = sum(find_partitioning(five.add(x), "all", "literal") is not None for x in others)
    ok = r.exhaustive and r.m == 5 and len(others) == 55 and partitioned == 55 and elapsed <= 600
    criterion(
        5, ok,
        f"literal search m={r.m} (want 5, {len(r.witnesses)} witnesses, {elapsed:.0f}s); "
        f"six-element supersets partitioned {partitioned}/{len(others)}",
    )
    assert ok


def test_06_contextuality(criterion):
    t0 = time.perf_counter()
    pm = peres_mermin_square()
    full = ncva_exists(pm).feasible
    eights = [ncva_exists(list(c)).feasible for c in itertools.combinations(pm, 8)]
    rng = random.Random(606)
    pool = all_observables(2)
    disagreements = 0
    for _ in range(200):
        sub = rng.sample(pool, rng.randint(1, 12))
        if ncva_exists(sub).feasible != ncva_exists_bruteforce(sub):
            disagreements += 1
    elapsed = time.perf_counter() - t0
    ok = not full and all(eights) and len(eights) == 9 and disagreements == 0 and elapsed < 60
    criterion(6, ok, f"square feasible={full}, 8-subsets feasible {sum(eights)}/9, "
                     f"solver/brute-force disagreements {disagreements}/200")
    assert ok


def test_07_contextuality_bridge(criterion):
    t0 = time.perf_counter()
    s2 = enumerate_states(2)
    pool = s2[::3]
    sets = [make_state_set(c) for size in range(2, 5) for c in itertools.combinations(pool, size)]
    rng = random.Random(707)
    sets += [make_state_set(rng.sample(s2, rng.randint(5, 12))) for _ in range(200)]
    checked = violations = 0
    first = None
    for s in sets:
        for o in commuting_products(eigen_observables(s)):
            b = contextuality_bridge(s, o, "literal")
            checked += 1
            if b.violation:
                violations += 1
                if first is None:
                    first = ([str(x) for x in s], str(o))
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 600
    detail = f"{len(sets)} sets, {checked} (set, O_P) pairs, {violations} violations, {elapsed:.0f}s"
    if first:
        detail += f"; first: s={first[0]} O_P={first[1]}"
    criterion(7, ok, detail)
    assert ok


def test_08_disjointness_certificates(criterion):
    t0 = time.perf_counter()
    s3 = enumerate_states(3)
    rng = random.Random(808)
    certified = 0
    kinds = {}
    for _ in range(50):
        s = random_nonorthogonal_set(rng, s3, 16)
        assert len(s) == 16 and find_orthogonal_pair(s.states) is None
        cert = certify_disjoint(s, 2, "literal")
        if cert is not None and check_certificate(s, cert, "literal"):
            certified += 1
            kinds[type(cert).__name__] = kinds.get(type(cert).__name__, 0) + 1
    elapsed = time.perf_counter() - t0
    ok = certified == 50 and 16 > 3 ** (3 - 2) * 5 and elapsed <= 1800
    criterion(8, ok, f"{certified}/50 sixteen-state sets certified {kinds}, {elapsed:.1f}s")
    assert ok


def test_09_bound_report(criterion):
    t0 = time.perf_counter()
    (row2,) = bound_report([2])
    (row50,) = bound_report([50])
    elapsed = time.perf_counter() - t0
    ok = (
        abs(row2.lower_bound_bits - math.log2(12)) < 1e-9
        and abs(row2.lower_bound_bits - 3.585) < 5e-4
        and row2.gk_bits == 10 == 2 * (2 * 2 + 1)
        and abs(row50.lower_bound_bits / (0.5 * 50 * 49) - 1) <= 0.05
        and elapsed < 1
    )
    criterion(9, ok, f"n=2: {row2.lower_bound_bits:.6f} bits vs GK {row2.gk_bits}; n=50 ratio {row50.ratio:.4f}")
    assert ok


def test_10_verify_determinism(criterion, tmp_path, capsys):
    digests = []
    codes = []
    for i in range(2):
        out = tmp_path / f"verify{i}.json"
        codes.append(main(["verify", "--seed", "10", "--out", str(out)]))
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    capsys.readouterr()
    ok = codes == [0, 0] and digests[0] == digests[1]
    criterion(10, ok, f"exit codes {codes}, sha256 {digests[0][:16]} == {digests[1][:16]}")
    assert ok
