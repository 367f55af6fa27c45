"""Canonical JSON serialization for graphs, cocycles, and reports.

Files are UTF-8 JSON.  Canonical form is sorted-key, two-space-indented
JSON with a trailing newline; parse and serialize round-trip to identical
bytes on canonical input.  Graph references on the command line accept
either a file path or "builtin:NAME".

Reports are deterministic: tool version, input digests, bounds, verdicts
and certificates, never timestamps.
"""

from __future__ import annotations

import hashlib
import json

from .cocycles import (
    BicharacterTable,
    CocycleSpec,
    OneCocyclePhi,
    PhiOmegaCocycle,
    PullbackCocycle,
    TableCocycle,
)
from .kgraph import Edge, KGraph, Square, builtin, validate_kgraph
from .phases import PhaseExponent, PhaseSyntaxError, format_phase, parse_phase

TOOL_VERSION = "0.1.0"


class FileFormatError(ValueError):
    """Malformed input file; the message carries field context."""


# --- helpers ----------------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise FileFormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _as_str_list(x, where: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(s, str) for s in x):
        raise FileFormatError(f"{where}: expected a list of strings")
    return x


# --- graphs -----------------------------------------------------------------


def graph_to_jsonable(g: KGraph) -> dict:
    return {
        "k": g.k,
        "vertices": sorted(g.vertices),
        "edges": [
            {"id": e.id, "color": e.color, "range": e.range, "source": e.source}
            for e in sorted(g.edges, key=lambda e: e.id)
        ],
        "squares": [
            {"ij": [s.i, s.j], "from": [s.f, s.g], "to": [s.gp, s.fp]}
            for s in sorted(g.squares, key=lambda s: (s.i, s.j, s.f, s.g))
        ],
        "name": g.name,
    }


def graph_from_jsonable(obj) -> KGraph:
    if not isinstance(obj, dict):
        raise FileFormatError("graph: expected a JSON object")
    k = _need(obj, "k", "graph")
    if not isinstance(k, int) or k < 1:
        raise FileFormatError("graph.k: expected a positive integer")
    vertices = tuple(_as_str_list(_need(obj, "vertices", "graph"), "graph.vertices"))
    vset = set(vertices)
    edges = []
    for idx, e in enumerate(_need(obj, "edges", "graph")):
        where = f"graph.edges[{idx}]"
        if not isinstance(e, dict):
            raise FileFormatError(f"{where}: expected an object")
        eid = _need(e, "id", where)
        color = _need(e, "color", where)
        rng = _need(e, "range", where)
        src = _need(e, "source", where)
        if not isinstance(color, int) or not 1 <= color <= k:
            raise FileFormatError(f"{where} (edge {eid!r}): color {color!r} outside 1..{k}")
        if rng not in vset:
            raise FileFormatError(f"{where} (edge {eid!r}): unknown range vertex {rng!r}")
        if src not in vset:
            raise FileFormatError(f"{where} (edge {eid!r}): unknown source vertex {src!r}")
        edges.append(Edge(eid, color, rng, src))
    eset = {e.id for e in edges}
    squares = []
    for idx, s in enumerate(obj.get("squares", [])):
        where = f"graph.squares[{idx}]"
        if not isinstance(s, dict):
            raise FileFormatError(f"{where}: expected an object")
        ij = _need(s, "ij", where)
        frm = _need(s, "from", where)
        to = _need(s, "to", where)
        if not (isinstance(ij, list) and len(ij) == 2 and all(isinstance(x, int) for x in ij)):
            raise FileFormatError(f"{where}.ij: expected two colors")
        if not (isinstance(frm, list) and len(frm) == 2 and isinstance(to, list) and len(to) == 2):
            raise FileFormatError(f"{where}: 'from' and 'to' must be edge pairs")
        for eid in frm + to:
            if eid not in eset:
                raise FileFormatError(f"{where}: unknown edge {eid!r}")
        squares.append(Square(ij[0], ij[1], frm[0], frm[1], to[0], to[1]))
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise FileFormatError("graph.name: expected a string")
    try:
        return KGraph(k, vertices, tuple(edges), tuple(squares), name)
    except ValueError as err:
        raise FileFormatError(f"graph: {err}") from err


def serialize_graph(g: KGraph) -> str:
    return canonical_json(graph_to_jsonable(g))


def loads_graph(text: str, validate: bool = True) -> KGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"graph: invalid JSON ({err})") from err
    g = graph_from_jsonable(obj)
    if validate:
        report = validate_kgraph(g)
        if not report.ok:
            raise FileFormatError(
                "graph fails validation: " + "; ".join(report.problems[:5])
            )
    return g


def resolve_graph(ref: str, validate: bool = True) -> tuple[KGraph, str]:
    """A graph from "builtin:NAME" or a file path, plus its content digest."""
    if ref.startswith("builtin:"):
        g = builtin(ref.split(":", 1)[1])
        return g, digest_text(serialize_graph(g))
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise FileFormatError(f"cannot read graph file {ref!r}: {err}") from err
    return loads_graph(text, validate), digest_text(text)


# --- cocycles ---------------------------------------------------------------


def _collect_symbols(phases) -> list[str]:
    out = set()
    for p in phases:
        out.update(p.symbols())
    return sorted(out)


def _phase_matrix_to_strings(rows) -> list[list[str]]:
    return [[format_phase(x) for x in row] for row in rows]


def cocycle_to_jsonable(c: CocycleSpec) -> dict:
    if isinstance(c, PullbackCocycle):
        flat = [x for row in c.theta for x in row]
        return {
            "variant": "pullback",
            "symbols": _collect_symbols(flat),
            "theta_matrix": _phase_matrix_to_strings(c.theta),
        }
    if isinstance(c, PhiOmegaCocycle):
        flat = [x for row in c.omega.rows for x in row]
        for _, vec in c.phi.entries:
            flat.extend(vec)
        return {
            "variant": "phi_omega",
            "symbols": _collect_symbols(flat),
            "l": c.l,
            "phi": {eid: [format_phase(x) for x in vec] for eid, vec in c.phi.entries},
            "omega": _phase_matrix_to_strings(c.omega.rows),
        }
    if isinstance(c, TableCocycle):
        flat = [val for _, _, val in c.entries]
        return {
            "variant": "table",
            "symbols": _collect_symbols(flat),
            "bound": list(c.bound),
            "entries": [
                {
                    "mu": {"range": mu[0], "word": list(mu[1])},
                    "nu": {"range": nu[0], "word": list(nu[1])},
                    "value": format_phase(val),
                }
                for mu, nu, val in c.entries
            ],
        }
    raise TypeError(f"unknown cocycle spec {type(c).__name__}")


def _parse_phase_checked(text, symbols, where: str) -> PhaseExponent:
    if not isinstance(text, str):
        raise FileFormatError(f"{where}: expected a phase literal string")
    try:
        return parse_phase(text, symbols)
    except PhaseSyntaxError as err:
        raise FileFormatError(f"{where}: {err}") from err


def _parse_phase_matrix(rows, n: int, m: int, symbols, where: str):
    if not isinstance(rows, list) or len(rows) != n:
        raise FileFormatError(f"{where}: expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise FileFormatError(f"{where}[{i}]: expected {m} entries")
        out.append(tuple(_parse_phase_checked(x, symbols, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(out)


def cocycle_from_jsonable(obj, g: KGraph) -> CocycleSpec:
    if not isinstance(obj, dict):
        raise FileFormatError("cocycle: expected a JSON object")
    symbols = _as_str_list(obj.get("symbols", []), "cocycle.symbols")
    variant = _need(obj, "variant", "cocycle")
    if variant == "pullback":
        theta = _parse_phase_matrix(
            _need(obj, "theta_matrix", "cocycle"), g.k, g.k, symbols, "cocycle.theta_matrix"
        )
        return PullbackCocycle(theta)
    if variant == "phi_omega":
        l = _need(obj, "l", "cocycle")
        if not isinstance(l, int) or not 1 <= l <= g.k:
            raise FileFormatError(f"cocycle.l: expected an integer in 1..{g.k}")
        phi_obj = _need(obj, "phi", "cocycle")
        if not isinstance(phi_obj, dict):
            raise FileFormatError("cocycle.phi: expected an object")
        eids = {e.id for e in g.edges}
        entries = {}
        for eid in sorted(phi_obj):
            if eid not in eids:
                raise FileFormatError(f"cocycle.phi: unknown edge {eid!r}")
            vec = phi_obj[eid]
            if not isinstance(vec, list) or len(vec) != l:
                raise FileFormatError(f"cocycle.phi[{eid!r}]: expected {l} phase literals")
            entries[eid] = tuple(
                _parse_phase_checked(x, symbols, f"cocycle.phi[{eid!r}][{i}]")
                for i, x in enumerate(vec)
            )
        omega_rows = _parse_phase_matrix(
            _need(obj, "omega", "cocycle"), l, l, symbols, "cocycle.omega"
        )
        return PhiOmegaCocycle(l, OneCocyclePhi(l, entries), BicharacterTable(l, omega_rows))
    if variant == "table":
        bound = _need(obj, "bound", "cocycle")
        if not (isinstance(bound, list) and len(bound) == g.k and all(isinstance(x, int) for x in bound)):
            raise FileFormatError(f"cocycle.bound: expected {g.k} integers")
        rows = []
        for idx, ent in enumerate(_need(obj, "entries", "cocycle")):
            where = f"cocycle.entries[{idx}]"
            if not isinstance(ent, dict):
                raise FileFormatError(f"{where}: expected an object")
            pair = []
            for key in ("mu", "nu"):
                side = _need(ent, key, where)
                rng = _need(side, "range", f"{where}.{key}")
                word = tuple(_as_str_list(_need(side, "word", f"{where}.{key}"), f"{where}.{key}.word"))
                try:
                    g.make_path(rng, list(word))
                except (KeyError, ValueError) as err:
                    raise FileFormatError(f"{where}.{key}: not a path ({err})") from err
                pair.append((rng, word))
            val = _parse_phase_checked(_need(ent, "value", where), symbols, f"{where}.value")
            rows.append((pair[0], pair[1], val))
        return TableCocycle(tuple(bound), tuple(rows))
    raise FileFormatError(f"cocycle.variant: unknown variant {variant!r}")


def serialize_cocycle(c: CocycleSpec) -> str:
    return canonical_json(cocycle_to_jsonable(c))


def loads_cocycle(text: str, g: KGraph) -> CocycleSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"cocycle: invalid JSON ({err})") from err
    return cocycle_from_jsonable(obj, g)


def load_cocycle(path: str, g: KGraph) -> tuple[CocycleSpec, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise FileFormatError(f"cannot read cocycle file {path!r}: {err}") from err
    return loads_cocycle(text, g), digest_text(text)


# --- reports ----------------------------------------------------------------


def report_document(command: str, inputs: dict[str, str], body: dict) -> dict:
    return {
        "tool": "ktwist",
        "version": TOOL_VERSION,
        "command": command,
        "inputs": dict(sorted(inputs.items())),
        **body,
    }


def serialize_report(doc: dict) -> str:
    return canonical_json(doc)
