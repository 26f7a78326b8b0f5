"""Partitioning measurements, overlap searches and disjoint-support certificates.

Branch semantics. Measuring ``O`` with outcome ``k`` sends each input state
with nonzero probability of ``k`` to one post-measurement state; states for
which ``k`` is impossible drop out of that branch.

* ``literal``: both branches must be nonempty and each must contain an
  orthogonal pair of post-measurement states.
* ``refined``: a branch whose outcome is impossible for at least one input
  state needs no pair (a common internal state could never produce it).

Literal is the default everywhere.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Union

from .contextuality import ncva_exists
from .pauli import (
    PauliObservable,
    all_observables,
    canonical_sign,
    commutes,
    multiply,
    parse,
    single_qubit_observables,
)
from .tableau import StabilizerState, enumerate_states, is_orthogonal, measure_update, product_state

LITERAL = "literal"
REFINED = "refined"
MODES = (LITERAL, REFINED)


class PartitionError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _check_mode(mode: str):
    if mode not in MODES:
        raise PartitionError(f"mode must be one of {MODES}, got {mode!r}")


@dataclass(frozen=True)
class StateSet:
    n: int
    states: tuple[StabilizerState, ...]

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def add(self, state: StabilizerState) -> StateSet:
        return make_state_set([*self.states, state])

    def to_json(self) -> list:
        return [s.to_json() for s in self.states]


def make_state_set(states: Iterable[StabilizerState], n: int | None = None) -> StateSet:
    """Deduplicate ``states`` keeping first occurrences in order."""
    out = []
    seen = set()
    for s in states:
        if s not in seen:
            seen.add(s)
            out.append(s)
    if n is None:
        if not out:
            raise PartitionError("cannot infer n of an empty state set")
        n = out[0].n
    if any(s.n != n for s in out):
        raise PartitionError("states act on different numbers of qubits")
    return StateSet(n, tuple(out))


@dataclass(frozen=True)
class OutcomeBranch:
    observable: PauliObservable
    outcome: int
    post_states: StateSet
    # input index -> index into post_states, for inputs with nonzero probability
    image: dict[int, int] = field(hash=False)
    n_inputs: int = 0

    @property
    def impossible_for(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n_inputs) if i not in self.image)


def _obs(o) -> PauliObservable:
    if isinstance(o, str):
        o = parse(o)
    return canonical_sign(o)


def eigen_observables(s: StateSet) -> tuple[PauliObservable, ...]:
    """Observables with at least one eigenstate in ``s`` (canonical sign, no identity)."""
    if not len(s):
        raise PartitionError("empty state set")
    ident = "I" * s.n
    letters = {p for st in s for p in st.group if p != ident}
    return tuple(PauliObservable(p) for p in sorted(letters))


def commuting_products(obs) -> tuple[PauliObservable, ...]:
    """Input observables plus ``canonical_sign(A*B)`` over commuting pairs, identity dropped."""
    items = sorted({_obs(o) for o in obs})
    out = set(items)
    for a, b in combinations(items, 2):
        if commutes(a, b):
            p = multiply(a, b)
            if set(p.letters) != {"I"}:
                out.add(PauliObservable(p.letters))
    return tuple(sorted(out))


def post_measurement_sets(s: StateSet, o) -> tuple[OutcomeBranch, OutcomeBranch]:
    o = _obs(o)
    if o.n != s.n:
        raise PartitionError(f"dimension mismatch: {o.n} vs {s.n}")
    branches = []
    for k in (1, -1):
        posts = []
        where = {}
        image = {}
        for i, st in enumerate(s):
            r = measure_update(st, o, k)
            if r.post_state is None:
                continue
            j = where.get(r.post_state)
            if j is None:
                j = where[r.post_state] = len(posts)
                posts.append(r.post_state)
            image[i] = j
        branches.append(OutcomeBranch(o, k, StateSet(s.n, tuple(posts)), image, len(s)))
    return tuple(branches)


def find_orthogonal_pair(states) -> tuple[int, int] | None:
    for i, j in combinations(range(len(states)), 2):
        if is_orthogonal(states[i], states[j]):
            return i, j
    return None


@dataclass(frozen=True)
class PartitionVerdict:
    partitioning: bool
    observable: PauliObservable
    branches: tuple[OutcomeBranch, OutcomeBranch]
    # outcome -> (input i, input j) whose post states are orthogonal; None if
    # no pair, "exempt" if the branch is excused under refined semantics
    evidence: dict[int, object]
    mode: str = LITERAL

    def __bool__(self):
        return self.partitioning


def _branch_pair(branch: OutcomeBranch):
    pair = find_orthogonal_pair(branch.post_states.states)
    if pair is None:
        return None
    a, b = pair
    inv = {}
    for i, j in sorted(branch.image.items()):
        inv.setdefault(j, i)
    return inv[a], inv[b]


def is_partitioning(s: StateSet, o, mode: str = LITERAL) -> PartitionVerdict:
    _check_mode(mode)
    if len(s) < 2:
        raise PartitionError("need at least two states")
    branches = post_measurement_sets(s, o)
    evidence = {}
    ok = True
    for br in branches:
        if mode == REFINED and br.impossible_for:
            evidence[br.outcome] = "exempt"
            continue
        pair = _branch_pair(br) if len(br.post_states) >= 2 else None
        evidence[br.outcome] = pair
        if pair is None:
            ok = False
    return PartitionVerdict(ok, branches[0].observable, branches, evidence, mode)


def _candidates(s: StateSet, candidates) -> list[PauliObservable]:
    if candidates == "all":
        return all_observables(s.n)
    if candidates == "eigenclosure":
        return list(commuting_products(eigen_observables(s)))
    if candidates == "single":
        return single_qubit_observables(s.n)
    return sorted({_obs(o) for o in candidates})


def partitioning_observables(s: StateSet, candidates="all", mode: str = LITERAL) -> list[PartitionVerdict]:
    return [v for o in _candidates(s, candidates) if (v := is_partitioning(s, o, mode))]


def find_partitioning(s: StateSet, candidates="all", mode: str = LITERAL) -> PartitionVerdict | None:
    """First partitioning observable in lexicographic order, or None."""
    for o in _candidates(s, candidates):
        v = is_partitioning(s, o, mode)
        if v:
            return v
    return None


# -- maximum overlap search -------------------------------------------------


@dataclass
class SearchResult:
    n: int
    mode: str
    m: int
    witnesses: list[StateSet]
    exhaustive: bool
    nodes: int
    note: str = ""


def _nonorth_masks(states) -> list[int]:
    masks = []
    for i, a in enumerate(states):
        m = 0
        for j, b in enumerate(states):
            if i != j and not is_orthogonal(a, b):
                m |= 1 << j
        masks.append(m)
    return masks


def max_overlap_set_search(
    n: int,
    mode: str = LITERAL,
    *,
    allow_nonexhaustive: bool = False,
    node_budget: int | None = None,
    time_budget: float | None = None,
    workers: int = 1,
    roots: Iterable[int] | None = None,
) -> SearchResult:
    """Largest pairwise non-orthogonal sets that no single Pauli partitions.

    Having a partitioning observable is inherited by supersets, so the
    admissible sets are closed under taking subsets. A depth-first search
    grows sets in increasing state index and prunes at the first
    partitionable set. ``n = 1`` and ``n = 2`` run exhaustively; ``n = 3``
    needs ``allow_nonexhaustive`` plus a budget and is labelled as partial.
    """
    _check_mode(mode)
    if n == 3 and not allow_nonexhaustive:
        raise PartitionError("n=3 search is not exhaustive; pass allow_nonexhaustive with a budget")
    if n not in (1, 2, 3):
        raise PartitionError(f"unsupported n={n}")
    if n == 3 and node_budget is None and time_budget is None:
        raise PartitionError("n=3 search needs a node or time budget")
    states = enumerate_states(n)
    masks = _nonorth_masks(states)
    root_list = list(range(len(states))) if roots is None else list(roots)

    if workers > 1 and len(root_list) > 1:
        return _parallel_search(n, mode, root_list, workers, node_budget, time_budget)

    best = [0]
    wits: list[tuple[int, ...]] = []
    nodes = [0]
    complete = [True]
    deadline = None if time_budget is None else time.monotonic() + time_budget

    def admissible(idx):
        if len(idx) < 2:
            return True
        return find_partitioning(StateSet(n, tuple(states[i] for i in idx)), "all", mode) is None

    def dfs(idx, cand):
        nodes[0] += 1
        if node_budget is not None and nodes[0] > node_budget:
            complete[0] = False
            raise BudgetExceeded
        if deadline is not None and nodes[0] % 64 == 0 and time.monotonic() > deadline:
            complete[0] = False
            raise BudgetExceeded
        size = len(idx)
        if size > best[0]:
            best[0] = size
            wits.clear()
        if size == best[0]:
            wits.append(tuple(idx))
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            nxt = (*idx, j)
            if admissible(nxt):
                dfs(nxt, cand & masks[j])

    try:
        for r in root_list:
            higher = masks[r] & ~((1 << (r + 1)) - 1)
            dfs((r,), higher)
    except BudgetExceeded:
        pass
    witnesses = [StateSet(n, tuple(states[i] for i in w)) for w in wits]
    note = ""
    if n == 1:
        note = "n=1 lies outside the n >= 2 scope of the recursive bound; no observable partitions a one-qubit set"
    if not complete[0]:
        note = (note + "; " if note else "") + "budget exhausted: result is a lower bound, not exhaustive"
    return SearchResult(n, mode, best[0], witnesses, complete[0] and roots is None, nodes[0], note)


def _search_chunk(args):
    n, mode, roots, node_budget, time_budget = args
    r = max_overlap_set_search(
        n, mode, allow_nonexhaustive=True, node_budget=node_budget,
        time_budget=time_budget, roots=roots,
    ) if n == 3 else max_overlap_set_search(n, mode, roots=roots)
    return r.m, [s.states for s in r.witnesses], r.nodes, r.note


def _parallel_search(n, mode, roots, workers, node_budget, time_budget) -> SearchResult:
    from concurrent.futures import ProcessPoolExecutor

    chunks = [roots[i::workers] for i in range(workers)]
    args = [(n, mode, c, node_budget, time_budget) for c in chunks if c]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_search_chunk, args))
    m = max(p[0] for p in parts)
    wits = sorted({w for p in parts if p[0] == m for w in p[1]})
    nodes = sum(p[2] for p in parts)
    partial = any("budget" in p[3] for p in parts)
    note = "; ".join(sorted({p[3] for p in parts if p[3]}))
    return SearchResult(n, mode, m, [StateSet(n, w) for w in wits], not partial, nodes, note)


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalPair:
    i: int
    j: int


@dataclass(frozen=True)
class PartitioningObservable:
    observable: PauliObservable
    pairs: dict  # outcome -> (i, j) input indices, or "exempt"


@dataclass(frozen=True)
class RecursiveBranch:
    observable: PauliObservable
    children: dict  # outcome -> Certificate | "exempt" | "empty"


Certificate = Union[OrthogonalPair, PartitioningObservable, RecursiveBranch]


def certify_disjoint(s: StateSet, depth_budget: int = 2, mode: str = LITERAL) -> Certificate | None:
    """Proof that ``s`` has no common internal state, or None within the budget.

    Order of attempts: an orthogonal pair, a partitioning observable, then
    (while ``depth_budget > 0``) an observable every live branch of which
    certifies with one less level of budget.
    """
    _check_mode(mode)
    if len(s) < 2:
        return None
    pair = find_orthogonal_pair(s.states)
    if pair is not None:
        return OrthogonalPair(*pair)
    v = find_partitioning(s, "all", mode)
    if v is not None:
        return PartitioningObservable(v.observable, dict(v.evidence))
    if depth_budget <= 0:
        return None
    for o in all_observables(s.n):
        children = {}
        for br in post_measurement_sets(s, o):
            if mode == REFINED and br.impossible_for:
                children[br.outcome] = "exempt"
                continue
            if not len(br.post_states):
                children[br.outcome] = "empty"
                continue
            c = certify_disjoint(br.post_states, depth_budget - 1, mode)
            if c is None:
                break
            children[br.outcome] = c
        else:
            return RecursiveBranch(o, children)
    return None


def check_certificate(s: StateSet, cert, mode: str = LITERAL) -> bool:
    """Re-verify a certificate against ``s`` without any search."""
    _check_mode(mode)
    if isinstance(cert, OrthogonalPair):
        ok_idx = 0 <= cert.i < len(s) and 0 <= cert.j < len(s) and cert.i != cert.j
        return ok_idx and is_orthogonal(s[cert.i], s[cert.j])
    if isinstance(cert, PartitioningObservable):
        if len(s) < 2:
            return False
        branches = post_measurement_sets(s, cert.observable)
        for br in branches:
            ev = cert.pairs.get(br.outcome)
            if ev == "exempt":
                if mode != REFINED or not br.impossible_for:
                    return False
                continue
            if not _pair_ok(br, ev):
                return False
        return True
    if isinstance(cert, RecursiveBranch):
        for br in post_measurement_sets(s, cert.observable):
            child = cert.children.get(br.outcome)
            if child == "exempt":
                if mode != REFINED or not br.impossible_for:
                    return False
            elif child == "empty":
                if len(br.post_states):
                    return False
            elif child is None or not check_certificate(br.post_states, child, mode):
                return False
        return True
    return False


def _pair_ok(br: OutcomeBranch, ev) -> bool:
    if not ev or len(ev) != 2:
        return False
    i, j = ev
    if i not in br.image or j not in br.image:
        return False
    posts = br.post_states
    return is_orthogonal(posts[br.image[i]], posts[br.image[j]])


# -- contextuality bridge ---------------------------------------------------


@dataclass(frozen=True)
class BridgeReport:
    observable: PauliObservable
    contextual: bool
    partitioning: bool
    has_orthogonal_pair: bool
    mode: str

    @property
    def violation(self) -> bool:
        # sets with an orthogonal pair are already disjoint by SSD
        return self.contextual and not self.partitioning and not self.has_orthogonal_pair


def contextuality_bridge(s: StateSet, o, mode: str = LITERAL) -> BridgeReport:
    """Check "contextual => partitioning" for ``o`` drawn from the commuting products."""
    o = _obs(o)
    eig = eigen_observables(s)
    if o not in commuting_products(eig):
        raise PartitionError(f"{o} is not a product of commuting eigen-observables of the set")
    contextual = not ncva_exists([*eig, o]).feasible
    partitioning = bool(is_partitioning(s, o, mode)) if len(s) >= 2 else False
    return BridgeReport(o, contextual, partitioning, find_orthogonal_pair(s.states) is not None, mode)


# -- fixtures ---------------------------------------------------------------


def pbr_set() -> StateSet:
    return make_state_set(product_state(x) for x in ("00", "0+", "+0", "++"))


FIVE_STATE_FAMILY = (
    ("XI", "IX", "XX"),
    ("ZI", "IZ", "ZZ"),
    ("XI", "IZ", "XZ"),
    ("YI", "IX", "YX"),
    ("ZZ", "YX", "XY"),
)


def five_state_family() -> StateSet:
    """The five-state two-qubit family listed by its stabilizer groups (all signs +)."""
    from .tableau import canonicalize

    return make_state_set(canonicalize(list(g[:2])) for g in FIVE_STATE_FAMILY)
