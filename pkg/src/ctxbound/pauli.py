"""Exact n-qubit Pauli group algebra.

A Pauli operator is stored as a letter string over ``IXYZ`` together with a
phase exponent ``k`` so that the operator equals ``i**k`` times the tensor
product of the letters. Y is a native letter, so Hermiticity is simply
``k in (0, 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

LETTERS = "IXYZ"

# (a, b) -> (letter of a*b, exponent of i)
_TABLE = {
    ("I", "I"): ("I", 0), ("I", "X"): ("X", 0), ("I", "Y"): ("Y", 0), ("I", "Z"): ("Z", 0),
    ("X", "I"): ("X", 0), ("X", "X"): ("I", 0), ("X", "Y"): ("Z", 1), ("X", "Z"): ("Y", 3),
    ("Y", "I"): ("Y", 0), ("Y", "X"): ("Z", 3), ("Y", "Y"): ("I", 0), ("Y", "Z"): ("X", 1),
    ("Z", "I"): ("Z", 0), ("Z", "X"): ("Y", 1), ("Z", "Y"): ("X", 3), ("Z", "Z"): ("I", 0),
}


class PauliError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PauliOperator:
    letters: str
    phase_exp: int = 0

    def __post_init__(self):
        if not self.letters or any(c not in LETTERS for c in self.letters):
            raise PauliError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    def __eq__(self, other):
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.letters == other.letters and self.phase_exp == other.phase_exp

    def __hash__(self):
        return hash((self.letters, self.phase_exp))

    def __lt__(self, other: PauliOperator) -> bool:
        return (self.letters, self.phase_exp) < (other.letters, other.phase_exp)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp in (0, 2)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise PauliError("sign is only defined for Hermitian Paulis")
        return 1 if self.phase_exp == 0 else -1

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.letters, self.phase_exp + 2)

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase_exp]
        return prefix + self.letters

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls("I" * n)


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Group product ``a * b`` with the phase tracked exactly."""
    if a.n != b.n:
        raise PauliError(f"dimension mismatch: {a.n} vs {b.n}")
    k = a.phase_exp + b.phase_exp
    out = []
    for x, y in zip(a.letters, b.letters):
        c, e = _TABLE[x, y]
        out.append(c)
        k += e
    return PauliOperator("".join(out), k)


def anticommuting_positions(a: PauliOperator, b: PauliOperator) -> int:
    if a.n != b.n:
        raise PauliError(f"dimension mismatch: {a.n} vs {b.n}")
    return sum(1 for x, y in zip(a.letters, b.letters) if x != y and x != "I" and y != "I")


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return anticommuting_positions(a, b) % 2 == 0


class PauliObservable(PauliOperator):
    """A Hermitian, non-identity Pauli; eigenvalues are exactly +1 and -1."""

    def __post_init__(self):
        super().__post_init__()
        if self.phase_exp not in (0, 2):
            raise PauliError(f"observable must be Hermitian, got phase i^{self.phase_exp}")
        if self.is_identity:
            raise PauliError("identity is not an observable")

    @classmethod
    def from_operator(cls, op: PauliOperator) -> PauliObservable:
        return cls(op.letters, op.phase_exp)

    def __neg__(self) -> PauliObservable:
        return PauliObservable(self.letters, self.phase_exp + 2)


def parse(text: str) -> PauliObservable:
    """Parse ``"+YY"`` / ``"-XZ"``; a bare letter string means sign +1."""
    if not isinstance(text, str) or not text:
        raise PauliError("empty Pauli string")
    s = text.strip()
    phase = 0
    if s[:1] in "+-":
        phase = 0 if s[0] == "+" else 2
        s = s[1:]
    if not s:
        raise PauliError(f"no Pauli letters in {text!r}")
    bad = [c for c in s if c not in LETTERS]
    if bad:
        raise PauliError(f"bad character {bad[0]!r} in {text!r}")
    return PauliObservable(s, phase)


def format_observable(o: PauliOperator) -> str:
    return str(o)


def canonical_sign(o: PauliObservable) -> PauliObservable:
    """The sign +1 representative of ``{o, -o}``."""
    return o if o.phase_exp == 0 else PauliObservable(o.letters, 0)


def all_observables(n: int) -> list[PauliObservable]:
    """Every canonical non-identity Pauli on ``n`` qubits, in lexicographic order."""
    return [
        PauliObservable("".join(w))
        for w in product(LETTERS, repeat=n)
        if set(w) != {"I"}
    ]


def single_qubit_observables(n: int) -> list[PauliObservable]:
    out = []
    for q in range(n):
        for c in "XYZ":
            out.append(PauliObservable("I" * q + c + "I" * (n - q - 1)))
    return sorted(out)
