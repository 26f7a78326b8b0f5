"""JSON encodings for states, state sets, certificates and reports.

State sets are plain JSON arrays of ``{"n": .., "generators": [..]}``
records. Documents that wrap more than a state list (certificates, search
summaries, bound rows) carry a ``"schema"`` field checked on load.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .contextuality import NCVAResult, build_constraints
from .partition import (
    OrthogonalPair,
    PartitioningObservable,
    PartitionVerdict,
    RecursiveBranch,
    SearchResult,
    StateSet,
    make_state_set,
)
from .pauli import PauliError, parse
from .tableau import StabilizerError, StabilizerState

SCHEMA = "ctxbound/1"


class SchemaError(ValueError):
    pass


def _outcome_key(k: int) -> str:
    return "+1" if k == 1 else "-1"


def _outcome(key: str) -> int:
    if key not in ("+1", "-1"):
        raise SchemaError(f"outcome key must be '+1' or '-1', got {key!r}")
    return 1 if key == "+1" else -1


def check_schema(doc: dict, kind: str | None = None):
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    version = doc.get("schema")
    if version != SCHEMA:
        raise SchemaError(f"schema version mismatch: expected {SCHEMA!r}, got {version!r}")
    if kind is not None and doc.get("kind") != kind:
        raise SchemaError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


def state_set_to_json(s: StateSet) -> list:
    return s.to_json()


def state_set_from_json(obj) -> StateSet:
    if isinstance(obj, dict):
        check_schema(obj, "state-set")
        obj = obj.get("states")
    if not isinstance(obj, list) or not obj:
        raise SchemaError("state set must be a nonempty JSON array of state records")
    try:
        states = [StabilizerState.from_json(r) for r in obj]
        return make_state_set(states)
    except (StabilizerError, PauliError, ValueError) as e:
        raise SchemaError(f"bad state record: {e}") from None


def observables_from_json(obj):
    if not isinstance(obj, list):
        raise SchemaError("expected a JSON array of observable strings")
    try:
        return [parse(x) for x in obj]
    except PauliError as e:
        raise SchemaError(str(e)) from None


def certificate_to_json(cert) -> dict:
    if isinstance(cert, OrthogonalPair):
        return {"type": "orthogonal_pair", "pair": [cert.i, cert.j]}
    if isinstance(cert, PartitioningObservable):
        return {
            "type": "partitioning_observable",
            "observable": str(cert.observable),
            "pairs": {_outcome_key(k): (v if v == "exempt" else list(v)) for k, v in sorted(cert.pairs.items(), reverse=True)},
        }
    if isinstance(cert, RecursiveBranch):
        return {
            "type": "recursive_branch",
            "observable": str(cert.observable),
            "children": {
                _outcome_key(k): (v if isinstance(v, str) else certificate_to_json(v))
                for k, v in sorted(cert.children.items(), reverse=True)
            },
        }
    raise TypeError(f"not a certificate: {cert!r}")


def certificate_from_json(obj):
    if not isinstance(obj, dict):
        raise SchemaError("certificate must be an object")
    kind = obj.get("type")
    try:
        if kind == "orthogonal_pair":
            i, j = obj["pair"]
            return OrthogonalPair(int(i), int(j))
        if kind == "partitioning_observable":
            pairs = {}
            for key, v in obj["pairs"].items():
                pairs[_outcome(key)] = v if v == "exempt" else tuple(int(x) for x in v)
            return PartitioningObservable(parse(obj["observable"]), pairs)
        if kind == "recursive_branch":
            children = {}
            for key, v in obj["children"].items():
                children[_outcome(key)] = v if v in ("exempt", "empty") else certificate_from_json(v)
            return RecursiveBranch(parse(obj["observable"]), children)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed certificate: {e}") from None
    raise SchemaError(f"unknown certificate type {kind!r}")


def certificate_document(s: StateSet, cert, mode: str, depth: int) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "certificate",
        "mode": mode,
        "depth_budget": depth,
        "states": s.to_json(),
        "certificate": None if cert is None else certificate_to_json(cert),
    }


def load_certificate_document(doc: dict):
    check_schema(doc, "certificate")
    s = state_set_from_json(doc.get("states"))
    cert = doc.get("certificate")
    return s, (None if cert is None else certificate_from_json(cert)), doc.get("mode", "literal")


def verdict_to_json(v: PartitionVerdict) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "partition-check",
        "observable": str(v.observable),
        "mode": v.mode,
        "partitioning": v.partitioning,
        "branches": [
            {
                "outcome": br.outcome,
                "post_states": br.post_states.to_json(),
                "image": {str(i): j for i, j in sorted(br.image.items())},
                "evidence": _evidence(v.evidence[br.outcome]),
            }
            for br in v.branches
        ],
    }


def _evidence(e):
    return e if e is None or e == "exempt" else list(e)


def ncva_to_json(obs, r: NCVAResult) -> dict:
    if r.feasible:
        return {"feasible": True, "assignment": {str(o): v for o, v in r.assignment.items()}}
    system = build_constraints(obs)
    return {
        "feasible": False,
        "witness": [
            {
                "observables": [str(system.observables[i]) for i in eq.variables],
                "constant": eq.constant,
                "relation": system.describe(eq),
            }
            for eq in r.witness
        ],
    }


def search_to_json(r: SearchResult, max_witnesses: int | None = None) -> dict:
    wits = r.witnesses if max_witnesses is None else r.witnesses[:max_witnesses]
    return {
        "schema": SCHEMA,
        "kind": "max-set",
        "n": r.n,
        "mode": r.mode,
        "m": r.m,
        "exhaustive": r.exhaustive,
        "nodes": r.nodes,
        "note": r.note,
        "witness_count": len(r.witnesses),
        "witnesses": [w.to_json() for w in wits],
    }


def bound_rows_to_json(rows) -> list:
    return [{"schema": SCHEMA, **r.to_json()} for r in rows]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def read_json(path) -> object:
    text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
