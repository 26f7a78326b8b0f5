"""Non-contextual value assignments over sets of Pauli observables.

Values +1/-1 are encoded as bits 0/1. For each commuting pair ``A, B`` in
the set whose product is ``(-1)**beta * C`` with ``C`` also in the set, an
assignment must satisfy ``x_A + x_B + x_C = beta (mod 2)``. Feasibility is
decided by Gaussian elimination over GF(2); when the system is infeasible
the solver returns the equations whose sum reads ``0 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .pauli import PauliObservable, canonical_sign, commutes, multiply, parse


class ContextualityError(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    variables: tuple[int, int, int]
    constant: int


@dataclass(frozen=True)
class ConstraintSystem:
    observables: tuple[PauliObservable, ...]
    equations: tuple[Equation, ...]

    def describe(self, eq: Equation) -> str:
        a, b, c = (str(self.observables[i]) for i in eq.variables)
        return f"{a} * {b} = {'-' if eq.constant else '+'}{c[1:]}"


@dataclass(frozen=True)
class NCVAResult:
    feasible: bool
    assignment: dict[PauliObservable, int] | None = None
    witness: tuple[Equation, ...] | None = None


def _normalize(obs) -> tuple[PauliObservable, ...]:
    out = []
    seen = set()
    for o in obs:
        if isinstance(o, str):
            o = parse(o)
        o = canonical_sign(o)
        if o not in seen:
            seen.add(o)
            out.append(o)
    if len({o.n for o in out}) > 1:
        raise ContextualityError("observables act on different numbers of qubits")
    return tuple(sorted(out))


def build_constraints(obs) -> ConstraintSystem:
    """One equation per line ``{A, B, A*B}`` of commuting observables inside the set.

    The three pairs of a line give the same equation, so it is recorded once.
    """
    items = _normalize(obs)
    index = {o.letters: i for i, o in enumerate(items)}
    eqs = {}
    for i, j in combinations(range(len(items)), 2):
        a, b = items[i], items[j]
        if not commutes(a, b):
            continue
        p = multiply(a, b)
        k = index.get(p.letters)
        if k is None:
            continue
        key = tuple(sorted((i, j, k)))
        eqs.setdefault(key, Equation(key, 0 if p.phase_exp == 0 else 1))
    return ConstraintSystem(items, tuple(eqs[k] for k in sorted(eqs)))


def solve_gf2(system: ConstraintSystem):
    """Return ``(solution_bits, None)`` or ``(None, witness_equation_indices)``."""
    nvars = len(system.observables)
    # each row: (coefficient bitmask, constant, bitmask of source equations)
    rows = []
    for e, eq in enumerate(system.equations):
        mask = 0
        for v in eq.variables:
            mask ^= 1 << v
        rows.append((mask, eq.constant, 1 << e))
    pivots = []
    for col in range(nvars):
        bit = 1 << col
        idx = next((i for i, r in enumerate(rows) if r[0] & bit), None)
        if idx is None:
            continue
        pm, pc, ps = rows.pop(idx)
        rows = [(m ^ pm, c ^ pc, s ^ ps) if m & bit else (m, c, s) for m, c, s in rows]
        pivots = [(col2, (m ^ pm, c ^ pc, s ^ ps)) if m & bit else (col2, (m, c, s))
                  for col2, (m, c, s) in pivots]
        pivots.append((col, (pm, pc, ps)))
    for m, c, s in rows:
        if m == 0 and c == 1:
            return None, [e for e in range(len(system.equations)) if s >> e & 1]
    x = 0
    for col, (m, c, _) in pivots:
        # fully reduced: free variables are 0, so x_col = c
        if c:
            x |= 1 << col
    return x, None


def ncva_exists(obs) -> NCVAResult:
    system = build_constraints(obs)
    x, witness = solve_gf2(system)
    if witness is not None:
        return NCVAResult(False, witness=tuple(system.equations[e] for e in witness))
    assignment = {o: (-1 if x >> i & 1 else 1) for i, o in enumerate(system.observables)}
    return NCVAResult(True, assignment=assignment)


def check_assignment(obs, assignment) -> bool:
    """True iff ``assignment`` (observable -> +/-1) satisfies every line constraint."""
    system = build_constraints(obs)
    vals = [assignment[o] for o in system.observables]
    for eq in system.equations:
        a, b, c = (vals[i] for i in eq.variables)
        if a * b * c != (-1) ** eq.constant:
            return False
    return True


def ncva_exists_bruteforce(obs) -> bool:
    """Exhaustive +/-1 search; independent of the elimination path."""
    items = _normalize(obs)
    if len(items) > 20:
        raise ContextualityError("brute force limited to 20 observables")
    lines = []
    for a, b in combinations(items, 2):
        if commutes(a, b):
            p = multiply(a, b)
            c = PauliObservable(p.letters) if not set(p.letters) <= {"I"} else None
            if c is not None and c in items:
                lines.append((a, b, c, 1 if p.phase_exp == 0 else -1))
    for signs in product((1, -1), repeat=len(items)):
        val = dict(zip(items, signs))
        if all(val[a] * val[b] == s * val[c] for a, b, c, s in lines):
            return True
    return False


PERES_MERMIN_GRID = (
    ("ZI", "IZ", "ZZ"),
    ("IX", "XI", "XX"),
    ("ZX", "XZ", "YY"),
)


def peres_mermin_square() -> tuple[PauliObservable, ...]:
    return tuple(sorted(PauliObservable(p) for row in PERES_MERMIN_GRID for p in row))
