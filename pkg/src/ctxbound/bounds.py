"""State counts and the memory lower bound versus the Gottesman-Knill tableau."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

N1_OVERLAP_CAP = 3  # largest pairwise non-orthogonal one-qubit family


def count_states(n: int) -> int:
    """Number of pure n-qubit stabilizer states, ``2**n * prod(2**j + 1)``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    total = 2**n
    for j in range(1, n + 1):
        total *= 2**j + 1
    return total


def overlap_cap(n: int) -> int:
    """Most states one internal state can support: ``5 * 3**(n - 2)``."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"overlap cap is defined for n >= 2 (n=1 gives {N1_OVERLAP_CAP}), got {n!r}")
    return 5 * 3 ** (n - 2)


def gottesman_knill_bits(n: int) -> int:
    return n * (2 * n + 1)


@dataclass(frozen=True)
class BoundReport:
    n: int
    state_count: int
    overlap_cap: int
    lower_bound_bits: float
    gk_bits: int
    asymptote_bits: float
    ratio: float
    source: str

    def to_json(self) -> dict:
        return asdict(self)


def lower_bound_bits(n: int, m: int | None = None) -> float:
    m = overlap_cap(n) if m is None else m
    # log of big ints directly; |S| overflows a float near n = 40
    return math.log2(count_states(n)) - math.log2(m)


def bound_report(n_values, search_caps: dict[int, int] | None = None) -> list[BoundReport]:
    """One row per n. ``search_caps`` maps n to an m certified by exhaustive search."""
    search_caps = search_caps or {}
    rows = []
    for n in n_values:
        if n < 2:
            raise ValueError(f"bound report needs n >= 2, got {n}")
        formula = overlap_cap(n)
        m = search_caps.get(n, formula)
        if n in search_caps and m != formula:
            raise ValueError(f"search cap {m} disagrees with formula {formula} at n={n}")
        lb = lower_bound_bits(n, m)
        asym = n * (n - 1) / 2
        rows.append(BoundReport(
            n=n,
            state_count=count_states(n),
            overlap_cap=m,
            lower_bound_bits=lb,
            gk_bits=gottesman_knill_bits(n),
            asymptote_bits=asym,
            ratio=lb / asym,
            source="search" if n in search_caps else "formula",
        ))
    return rows


def format_table(rows: list[BoundReport]) -> str:
    head = f"{'n':>3}  {'|S|':>14}  {'m':>8}  {'log2(|S|/m)':>12}  {'n(n-1)/2':>9}  {'ratio':>7}  {'GK bits':>8}  source"
    lines = [head, "-" * len(head)]
    for r in rows:
        s, m = (str(v) if v < 10**12 else f"~2^{math.log2(v):.1f}" for v in (r.state_count, r.overlap_cap))
        lines.append(
            f"{r.n:>3}  {s:>14}  {m:>8}  {r.lower_bound_bits:>12.3f}  "
            f"{r.asymptote_bits:>9.1f}  {r.ratio:>7.4f}  {r.gk_bits:>8}  {r.source}"
        )
    return "\n".join(lines)
