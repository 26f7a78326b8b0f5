"""Pure stabilizer states: canonical form, orthogonality and Pauli measurement.

Canonical form: each generator is read as a binary row over the columns
``X_0 .. X_{n-1} Z_0 .. Z_{n-1}`` (X bit set for X and Y, Z bit set for Z
and Y). Rows are brought to reduced row echelon form over GF(2), pivoting
column by column in that order, with every row operation carried out as an
exact Pauli product so signs follow along. The RREF basis of a subspace is
unique, and the sign of each basis element is fixed by the group, so the
resulting generator tuple identifies the state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .pauli import (
    PauliError,
    PauliObservable,
    PauliOperator,
    all_observables,
    commutes,
    multiply,
    parse,
)

MAX_ENUMERATION_QUBITS = 3


class StabilizerError(ValueError):
    pass


def _row_bits(p: PauliOperator) -> int:
    n = p.n
    v = 0
    for q, c in enumerate(p.letters):
        if c in "XY":
            v |= 1 << (2 * n - 1 - q)
        if c in "ZY":
            v |= 1 << (n - 1 - q)
    return v


def _reduce(gens, n: int) -> tuple[PauliObservable, ...]:
    """RREF of a commuting, independent, consistent generator list."""
    rows = list(gens)
    for a, b in combinations(rows, 2):
        if not commutes(a, b):
            raise StabilizerError(f"generators {a} and {b} do not commute")
    pending = [(_row_bits(r), r) for r in rows]
    done: list[tuple[int, PauliOperator]] = []
    for col in range(2 * n - 1, -1, -1):
        mask = 1 << col
        idx = next((i for i, (b, _) in enumerate(pending) if b & mask), None)
        if idx is None:
            continue
        pb, pr = pending.pop(idx)

        def elim(row):
            b, r = row
            return (b ^ pb, multiply(r, pr)) if b & mask else row

        pending = [elim(x) for x in pending]
        done = [elim(x) for x in done]
        done.append((pb, pr))
    for _, r in pending:
        # leftover rows are products of generators equal to +I or -I
        if r.phase_exp == 2:
            raise StabilizerError("inconsistent generators: a product equals -I")
        raise StabilizerError("generators are not independent")
    return tuple(PauliObservable.from_operator(r) for _, r in done)


def _coerce(g, n=None) -> PauliObservable:
    if isinstance(g, str):
        g = parse(g)
    elif not isinstance(g, PauliObservable):
        if not isinstance(g, PauliOperator):
            raise StabilizerError(f"not a Pauli: {g!r}")
        try:
            g = PauliObservable.from_operator(g)
        except PauliError as e:
            raise StabilizerError(str(e)) from None
    if n is not None and g.n != n:
        raise StabilizerError(f"generator {g} has {g.n} qubits, expected {n}")
    return g


@dataclass(frozen=True, eq=False)
class StabilizerState:
    """The +1 joint eigenstate of ``n`` independent commuting signed Paulis.

    Instances are always canonical; build them with :func:`canonicalize`
    or :meth:`from_strings`.
    """

    n: int
    gens: tuple[PauliObservable, ...]
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", tuple((g.letters, g.phase_exp) for g in self.gens))

    def __eq__(self, other):
        if not isinstance(other, StabilizerState):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: StabilizerState) -> bool:
        return self._key < other._key

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.gens)) + "]"

    @classmethod
    def from_strings(cls, *gens: str) -> StabilizerState:
        return canonicalize(list(gens))

    @cached_property
    def group(self) -> dict[str, int]:
        """Map from letter string to sign for every element of the stabilizer group."""
        elems = {"I" * self.n: 0}
        for g in self.gens:
            for letters, k in list(elems.items()):
                p = multiply(PauliOperator(letters, k), g)
                elems[p.letters] = p.phase_exp
        return {k: (1 if v == 0 else -1) for k, v in elems.items()}

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [str(g) for g in self.gens]}

    @classmethod
    def from_json(cls, obj) -> StabilizerState:
        if not isinstance(obj, dict) or "generators" not in obj:
            raise StabilizerError(f"state record needs 'generators': {obj!r}")
        gens = obj["generators"]
        if not isinstance(gens, list):
            raise StabilizerError("'generators' must be a list")
        state = canonicalize(gens)
        if "n" in obj and obj["n"] != state.n:
            raise StabilizerError(f"declared n={obj['n']} but generators act on {state.n} qubits")
        return state


def canonicalize(gens) -> StabilizerState:
    """Canonical state for a generator list (strings or observables)."""
    if not gens:
        raise StabilizerError("empty generator list")
    try:
        obs = [_coerce(g) for g in gens]
    except PauliError as e:
        raise StabilizerError(str(e)) from None
    n = obs[0].n
    for g in obs:
        if g.n != n:
            raise StabilizerError("generators act on different numbers of qubits")
    if len(obs) != n:
        raise StabilizerError(f"need {n} generators for a pure {n}-qubit state, got {len(obs)}")
    return StabilizerState(n, _reduce(obs, n))


def state_equals(s1: StabilizerState, s2: StabilizerState) -> bool:
    _check_dims(s1.n, s2.n)
    return s1 == s2


def group_elements(s: StabilizerState) -> list[PauliOperator]:
    return [PauliOperator(k, 0 if v == 1 else 2) for k, v in sorted(s.group.items())]


def is_orthogonal(s1: StabilizerState, s2: StabilizerState) -> bool:
    """Tr(rho sigma) == 0: some Pauli is in one group with the opposite sign in the other."""
    _check_dims(s1.n, s2.n)
    g2 = s2.group
    return any(g2.get(k, v) != v for k, v in s1.group.items())


@dataclass(frozen=True)
class MeasurementResult:
    probability: Fraction
    post_state: StabilizerState | None


def _check_dims(a: int, b: int):
    if a != b:
        raise StabilizerError(f"dimension mismatch: {a} vs {b}")


def measure_update(s: StabilizerState, o: PauliOperator, outcome: int) -> MeasurementResult:
    """Probability of ``outcome`` for observable ``o`` and the post-measurement state."""
    o = _coerce(o)
    _check_dims(s.n, o.n)
    if outcome not in (1, -1):
        raise StabilizerError(f"outcome must be +1 or -1, got {outcome!r}")
    return _measure(s, o.letters, o.sign * outcome)


@lru_cache(maxsize=1 << 18)
def _measure(s: StabilizerState, letters: str, sign: int) -> MeasurementResult:
    have = s.group.get(letters)
    if have is not None:
        if have == sign:
            return MeasurementResult(Fraction(1), s)
        return MeasurementResult(Fraction(0), None)
    target = PauliObservable(letters, 0 if sign == 1 else 2)
    pivot = None
    gens = []
    for g in s.gens:
        if commutes(g, target):
            gens.append(g)
        elif pivot is None:
            pivot = g
        else:
            gens.append(PauliObservable.from_operator(multiply(g, pivot)))
    gens.append(target)
    return MeasurementResult(Fraction(1, 2), StabilizerState(s.n, _reduce(gens, s.n)))


def expectation(s: StabilizerState, o: PauliOperator) -> int:
    o = _coerce(o)
    _check_dims(s.n, o.n)
    v = s.group.get(o.letters)
    return 0 if v is None else v * o.sign


def sample_measurement(s: StabilizerState, o: PauliOperator, rng_seed=None):
    """Draw an outcome with Born probabilities; returns ``(outcome, result)``.

    ``rng_seed`` may be an int seed or a ``random.Random`` to continue a stream.
    """
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    plus = measure_update(s, o, 1)
    u = rng.random()
    if u < plus.probability:
        return 1, plus
    return -1, measure_update(s, o, -1)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[StabilizerState, ...]:
    candidates = [o for base in all_observables(n) for o in (base, -base)]
    level = {()}
    for _ in range(n):
        nxt = set()
        for gens in level:
            span = _span_letters(gens, n)
            for c in candidates:
                if c.letters in span or not all(commutes(c, g) for g in gens):
                    continue
                nxt.add(_reduce((*gens, c), n))
        level = nxt
    return tuple(sorted(StabilizerState(n, g) for g in level))


def _span_letters(gens, n: int) -> set[str]:
    span = {"I" * n}
    for g in gens:
        span |= {multiply(PauliOperator(x), g).letters for x in span}
    return span


def enumerate_states(n: int) -> list[StabilizerState]:
    """All pure ``n``-qubit stabilizer states, sorted by generator tuple."""
    if not isinstance(n, int) or not 1 <= n <= MAX_ENUMERATION_QUBITS:
        raise StabilizerError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_QUBITS}, got {n!r}")
    return list(_enumerate(n))


def product_state(labels: str) -> StabilizerState:
    """Product state from single-qubit labels ``0 1 + - i j`` (``i``/``j`` = +/-Y eigenstates)."""
    table = {"0": ("Z", 0), "1": ("Z", 2), "+": ("X", 0), "-": ("X", 2), "i": ("Y", 0), "j": ("Y", 2)}
    n = len(labels)
    gens = []
    for q, c in enumerate(labels):
        if c not in table:
            raise StabilizerError(f"unknown single-qubit label {c!r}")
        letter, k = table[c]
        gens.append(PauliObservable("I" * q + letter + "I" * (n - q - 1), k))
    return canonicalize(gens)
