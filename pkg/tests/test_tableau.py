import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctxbound.pauli import PauliObservable, all_observables, multiply, parse
from ctxbound.tableau import (
    StabilizerError,
    canonicalize,
    enumerate_states,
    expectation,
    group_elements,
    is_orthogonal,
    measure_update,
    product_state,
    sample_measurement,
    state_equals,
)
from oracle import born, group_from_matrix, overlap, same_ray, statevector

STATES2 = enumerate_states(2)
OBS2 = all_observables(2)


def test_canonical_form_ignores_generator_choice():
    assert canonicalize(["+ZZ", "+ZI"]) == canonicalize(["+IZ", "+ZI"])
    assert canonicalize(["+ZI", "+IZ"]) == product_state("00")


def test_xx_minus_zz_differs_from_xx_minus_yy():
    # (+XX)(-ZZ) = +YY, so the two groups are {XX, -ZZ, +YY} and {XX, -YY, +ZZ}
    a = canonicalize(["+XX", "-ZZ"])
    b = canonicalize(["+XX", "-YY"])
    assert group_from_matrix(a) != group_from_matrix(b)
    assert not state_equals(a, b)
    assert is_orthogonal(a, b)


@pytest.mark.parametrize(
    "gens",
    [["+XI", "-XI"], ["+XI", "+XI"], ["+XI", "+ZI"], ["+XI"], ["+X", "+XX"], ["+XI", "+QI"]],
)
def test_canonicalize_rejects(gens):
    with pytest.raises(StabilizerError):
        canonicalize(gens)


def test_canonical_form_is_stored_form():
    for s in STATES2:
        assert canonicalize(list(s.gens)) == s
        assert canonicalize(list(s.gens)).gens == s.gens


def test_equality_classes_over_generator_lists():
    signed = [o for base in OBS2 for o in (base, -base)]
    classes = set()
    for a, b in itertools.combinations(signed, 2):
        try:
            classes.add(canonicalize([a, b]))
        except StabilizerError:
            continue
    assert len(classes) == 60


def test_state_equals_matches_statevectors():
    vecs = [statevector(s) for s in STATES2]
    for i, j in itertools.combinations(range(60), 2):
        assert not same_ray(vecs[i], vecs[j])
    assert state_equals(product_state("0"), canonicalize(["+Z"]))
    assert not state_equals(product_state("0"), product_state("+"))
    with pytest.raises(StabilizerError):
        state_equals(product_state("0"), product_state("00"))


def test_group_elements_examples():
    assert {str(p) for p in group_elements(product_state("00"))} == {"+II", "+ZI", "+IZ", "+ZZ"}
    assert "-ZZ" in {str(p) for p in group_elements(canonicalize(["+XX", "+YY"]))}
    assert {str(p) for p in group_elements(product_state("+"))} == {"+I", "+X"}


def test_group_elements_match_matrix_oracle():
    for s in STATES2:
        elems = group_elements(s)
        assert len(elems) == 4
        assert {p.letters: p.sign for p in elems} == group_from_matrix(s)


def test_orthogonality_examples():
    assert is_orthogonal(product_state("0"), product_state("1"))
    assert not is_orthogonal(product_state("0"), product_state("+"))
    a, b = canonicalize(["+XX", "+YY"]), canonicalize(["+XX", "-YY"])
    assert is_orthogonal(a, b)
    assert overlap(statevector(a), statevector(b)) < 1e-12


def test_orthogonality_matches_oracle_n2_exhaustive():
    vecs = [statevector(s) for s in STATES2]
    for i in range(60):
        for j in range(60):
            assert is_orthogonal(STATES2[i], STATES2[j]) == (overlap(vecs[i], vecs[j]) < 1e-9)


@pytest.mark.slow
def test_orthogonality_matches_oracle_n3_random():
    states = enumerate_states(3)
    vecs = [statevector(s) for s in states]
    rng = random.Random(3)
    for _ in range(10_000):
        i, j = rng.randrange(1080), rng.randrange(1080)
        assert is_orthogonal(states[i], states[j]) == (overlap(vecs[i], vecs[j]) < 1e-9)


def test_measure_examples():
    r = measure_update(product_state("+"), parse("Z"), 1)
    assert r.probability == Fraction(1, 2) and r.post_state == product_state("0")
    r = measure_update(product_state("0"), parse("Z"), -1)
    assert r.probability == 0 and r.post_state is None
    a = measure_update(product_state("00"), parse("YY"), 1)
    b = measure_update(product_state("++"), parse("YY"), 1)
    assert a.probability == b.probability == Fraction(1, 2)
    assert a.post_state.group["YY"] == 1 and a.post_state.group["ZZ"] == 1
    assert b.post_state.group["YY"] == 1 and b.post_state.group["XX"] == 1
    assert is_orthogonal(a.post_state, b.post_state)
    assert overlap(statevector(a.post_state), statevector(b.post_state)) < 1e-12


def test_measure_matches_born_oracle_exhaustive():
    mismatches = 0
    for s in STATES2:
        v = statevector(s)
        for o in OBS2:
            for k in (1, -1):
                r = measure_update(s, o, k)
                p, post = born(v, o.letters, k)
                assert r.probability in (0, Fraction(1, 2), 1)
                if abs(float(r.probability) - p) > 1e-9:
                    mismatches += 1
                elif post is not None and not same_ray(statevector(r.post_state), post):
                    mismatches += 1
    assert mismatches == 0


def test_negative_observable_flips_outcome():
    s = product_state("0+")
    for o in OBS2:
        for k in (1, -1):
            assert measure_update(s, -o, k) == measure_update(s, o, -k)


def test_repeat_measurement_is_deterministic():
    for s in STATES2:
        for o in OBS2:
            for k in (1, -1):
                r = measure_update(s, o, k)
                if r.probability:
                    again = measure_update(r.post_state, o, k)
                    assert again.probability == 1 and again.post_state == r.post_state
                    assert r.post_state.group[o.letters] == k


def test_measure_dimension_mismatch():
    with pytest.raises(StabilizerError):
        measure_update(product_state("0"), parse("ZZ"), 1)
    with pytest.raises(StabilizerError):
        measure_update(product_state("0"), parse("Z"), 0)


@settings(max_examples=200)
@given(st.integers(0, 1079), st.lists(st.integers(1, 7), min_size=3, max_size=3))
def test_canonicalize_constant_on_regenerated_groups(idx, masks):
    s = enumerate_states(3)[idx]
    gens = list(s.gens)
    new = []
    for m in masks:
        p = None
        for b in range(3):
            if m >> b & 1:
                p = gens[b] if p is None else multiply(p, gens[b])
        new.append(PauliObservable.from_operator(p))
    try:
        t = canonicalize(new)
    except StabilizerError:
        return  # dependent choice of products
    assert t == s
    assert canonicalize(list(t.gens)) == t


def test_expectation():
    assert expectation(product_state("0"), parse("Z")) == 1
    assert expectation(product_state("0"), parse("-Z")) == -1
    assert expectation(product_state("+"), parse("Z")) == 0
    assert expectation(product_state("0+"), parse("YY")) == 0
    v = statevector(product_state("0+"))
    from oracle import matrix

    assert abs(np.vdot(v, matrix("YY") @ v)) < 1e-12


def test_sampling_deterministic_case():
    for seed in range(20):
        outcome, r = sample_measurement(product_state("0"), parse("Z"), seed)
        assert outcome == 1 and r.probability == 1


def test_sampling_reproducible_and_fair():
    def trace(seed, k):
        rng = random.Random(seed)
        return [sample_measurement(product_state("+"), parse("Z"), rng)[0] for _ in range(k)]

    assert trace(42, 50) == trace(42, 50)
    freq = trace(7, 10_000).count(1) / 10_000
    assert 0.48 <= freq <= 0.52


@pytest.mark.parametrize("n,count", [(1, 6), (2, 60), (3, 1080)])
def test_enumeration_counts(n, count):
    states = enumerate_states(n)
    assert len(states) == count == len(set(states))
    assert states == sorted(states)


@pytest.mark.parametrize("n", [0, 4, -1])
def test_enumeration_range(n):
    with pytest.raises(StabilizerError):
        enumerate_states(n)


def test_json_round_trip():
    from ctxbound.tableau import StabilizerState

    for s in STATES2:
        assert StabilizerState.from_json(s.to_json()) == s
    assert product_state("++").to_json() == {"n": 2, "generators": ["+XI", "+IX"]}
