"""Structural tests on k-colored graphs: cofinality and shift periodicity.

Cofinality asks whether every infinite path eventually meets the forward
reach of every vertex.  Strong connectivity settles it immediately; for
one-color graphs the general case reduces to finding a cycle avoiding the
reach of some vertex, which gives a checkable NO certificate.  With two or
more colors and a disconnected reach relation we return UNKNOWN rather
than guess.

Periodicity of the shift action is decided exactly per vertex by a finite
automaton on sliding windows: a window of degree join(a, b) determines
both compared slices of every one-step extension, so a BFS over reachable
windows either proves T^a x = T^b x for all x from the vertex or finds a
finite witness path where the slices differ.  The group of periods is the
lattice of integer vectors accepted at every vertex, computed over a box
of candidates and canonicalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .degrees import Degree
from .kgraph import KGraph, Path
from .lattices import LatticeBasis

YES = "YES_CERTIFIED"
NO = "NO_CERTIFIED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    status: str  # YES_CERTIFIED | NO_CERTIFIED | UNKNOWN
    certificate: dict | None = None
    bound: Degree | None = None
    reason: str = ""

    def to_jsonable(self) -> dict:
        out: dict = {"status": self.status}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.bound is not None:
            out["bound"] = list(self.bound)
        if self.reason:
            out["reason"] = self.reason
        return out


# --- reachability -----------------------------------------------------------


def reach_set(g: KGraph, v: str) -> frozenset[str]:
    """Vertices u such that some path has range v and source u."""
    seen = {v}
    frontier = [v]
    while frontier:
        cur = frontier.pop()
        for c in range(1, g.k + 1):
            for e in g.in_edges(cur, c):
                if e.source not in seen:
                    seen.add(e.source)
                    frontier.append(e.source)
    return frozenset(seen)


def is_strongly_connected(g: KGraph) -> bool:
    return all(reach_set(g, v) == frozenset(g.vertices) for v in g.vertices)


# --- cofinality -------------------------------------------------------------


def _find_cycle(vertices: frozenset[str], arcs: dict[str, list[tuple[str, str]]]) -> list[str] | None:
    """A cycle (as an edge id list) in the sub-digraph on the given vertices."""
    color = {v: 0 for v in vertices}
    stack_edges: list[str] = []
    stack_vs: list[str] = []

    def visit(v: str) -> list[str] | None:
        color[v] = 1
        stack_vs.append(v)
        for (u, eid) in arcs.get(v, ()):
            if u not in vertices:
                continue
            if color[u] == 1:
                t = stack_vs.index(u)
                return stack_edges[t:] + [eid]
            if color[u] == 0:
                stack_edges.append(eid)
                got = visit(u)
                if got is not None:
                    return got
                stack_edges.pop()
        stack_vs.pop()
        color[v] = 2
        return None

    for v in sorted(vertices):
        if color[v] == 0:
            got = visit(v)
            if got is not None:
                return got
    return None


def is_cofinal(g: KGraph) -> Verdict:
    if is_strongly_connected(g):
        return Verdict(YES, {"kind": "strongly_connected"})
    if g.k == 1:
        arcs: dict[str, list[tuple[str, str]]] = {}
        for e in g.edges:
            arcs.setdefault(e.range, []).append((e.source, e.id))
        for v in sorted(g.vertices):
            outside = frozenset(g.vertices) - reach_set(g, v)
            if not outside:
                continue
            cyc = _find_cycle(outside, arcs)
            if cyc is not None:
                return Verdict(
                    NO,
                    {"kind": "unreachable_cycle", "vertex": v, "cycle": cyc},
                    reason=f"a cycle avoids the forward reach of {v!r}",
                )
        return Verdict(YES, {"kind": "k1_tail_check"})
    return Verdict(
        UNKNOWN,
        reason="not strongly connected and more than one color; no decision procedure",
    )


def verify_cofinality(g: KGraph, res: Verdict) -> bool:
    """Independent recheck of a cofinality certificate."""
    cert = res.certificate
    if res.status == YES and cert is not None and cert.get("kind") == "strongly_connected":
        return is_strongly_connected(g)
    if res.status == YES and cert is not None and cert.get("kind") == "k1_tail_check":
        return g.k == 1 and is_cofinal(g).status == YES
    if res.status == NO and cert is not None and cert.get("kind") == "unreachable_cycle":
        v = cert["vertex"]
        cyc = list(cert["cycle"])
        if v not in g.vertices or not cyc:
            return False
        reach = reach_set(g, v)
        cur = g.edge(cyc[0]).range
        if cur in reach:
            return False
        for eid in cyc:
            e = g.edge(eid)
            if e.range != cur or e.source in reach:
                return False
            cur = e.source
        return cur == g.edge(cyc[0]).range
    return False


# --- shift periodicity ------------------------------------------------------


@dataclass(frozen=True)
class PeriodicityWitness:
    vertex: str
    word: tuple[str, ...]
    offset: Degree
    color: int

    def to_jsonable(self) -> dict:
        return {
            "vertex": self.vertex,
            "word": list(self.word),
            "offset": list(self.offset),
            "color": self.color,
        }


def periodic_at_offsets(g: KGraph, v: str, a: Degree, b: Degree) -> tuple[bool, PeriodicityWitness | None]:
    """Does every infinite path x from v satisfy T^a x = T^b x?

    Explores windows w = x(u, u+c) with c = join(a, b); on each one-step
    extension the two compared slices both sit inside the extended window,
    so a reachable mismatch is exactly a violation, returned as a finite
    witness path with the violating offset and color.
    """
    if a == b:
        return True, None
    c = dg.join(a, b)
    # parent[state] = (previous state, extension edge id) for witness recovery
    start = {p: None for p in g.paths_from(v, c)}
    parent: dict[Path, tuple[Path, str] | None] = dict(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, g.k + 1):
                ei = dg.unit(g.k, i)
                for e in g.in_edges(w.source, i):
                    lam = g.compose(w, g.edge_path(e.id))
                    if g.segment(lam, a, dg.add(a, ei)) != g.segment(lam, b, dg.add(b, ei)):
                        word = [e.id]
                        cur = w
                        while parent[cur] is not None:
                            cur, eid = parent[cur]
                            word.append(eid)
                        word.reverse()
                        full = g.make_path(v, list(cur.word) + word)
                        steps = dg.sub(dg.sub(full.degree, c), ei)
                        return False, PeriodicityWitness(v, full.word, steps, i)
                    new = g.segment(lam, ei, dg.add(c, ei))
                    if new not in parent:
                        parent[new] = (w, e.id)
                        nxt.append(new)
        frontier = nxt
    return True, None


def periodic_at(g: KGraph, p: Degree, v: str) -> bool:
    """Is the integer vector p a shift period for every infinite path from v?"""
    ok, _ = periodic_at_offsets(g, v, dg.pos_part(p), dg.neg_part(p))
    return ok


def verify_periodicity_witness(g: KGraph, a: Degree, b: Degree, wit: PeriodicityWitness) -> bool:
    """Recheck that the witness path breaks T^a x = T^b x at its offset."""
    try:
        p = g.make_path(wit.vertex, wit.word)
    except Exception:
        return False
    ei = dg.unit(g.k, wit.color)
    u = wit.offset
    if not dg.leq(dg.add(dg.add(u, dg.join(a, b)), ei), p.degree):
        return False
    return g.segment(p, dg.add(u, a), dg.add(dg.add(u, a), ei)) != g.segment(
        p, dg.add(u, b), dg.add(dg.add(u, b), ei)
    )


def periodic_everywhere(g: KGraph, p: Degree) -> tuple[bool, PeriodicityWitness | None]:
    """Is p a period of the shift at every vertex?"""
    a, b = dg.pos_part(p), dg.neg_part(p)
    for v in g.vertices:
        ok, wit = periodic_at_offsets(g, v, a, b)
        if not ok:
            return False, wit
    return True, None


@dataclass(frozen=True)
class PeriodicityResult:
    lattice: LatticeBasis
    exhaustive_up_to: Degree
    per_vertex_agreement: bool
    generators: tuple[Degree, ...] = ()
    candidates_checked: int = 0


def default_period_bound(g: KGraph) -> Degree:
    """Candidate box radius per color: vertex count times max edge fan-in, at least 2."""
    out = []
    for c in range(1, g.k + 1):
        fan = max(len(g.in_edges(v, c)) for v in g.vertices)
        out.append(max(2, len(g.vertices) * fan))
    return tuple(out)


def _as_bound(g: KGraph, bound) -> Degree:
    if bound is None:
        return default_period_bound(g)
    if isinstance(bound, int):
        return (bound,) * g.k
    bound = tuple(bound)
    if len(bound) != g.k:
        raise ValueError(f"bound {bound} has wrong length for {g.k} colors")
    return bound


def per_group(g: KGraph, bound: Degree | int | None = None) -> PeriodicityResult:
    """Lattice of shift periods holding at every vertex, over a candidate box.

    Only defined for cofinal graphs; refuses otherwise.
    """
    if is_cofinal(g).status != YES:
        raise ValueError("period group is only computed for certified-cofinal graphs")
    bound = _as_bound(g, bound)
    accepted = []
    per_vertex: dict[str, set[Degree]] = {v: set() for v in g.vertices}
    checked = 0
    for p in dg.signed_box(bound):
        if dg.is_zero(p):
            continue
        checked += 1
        a, b = dg.pos_part(p), dg.neg_part(p)
        hits = [v for v in g.vertices if periodic_at_offsets(g, v, a, b)[0]]
        for v in hits:
            per_vertex[v].add(p)
        if len(hits) == len(g.vertices):
            accepted.append(p)
    sets = list(per_vertex.values())
    agreement = all(s == sets[0] for s in sets)
    return PeriodicityResult(
        LatticeBasis.from_rows(accepted, g.k), bound, agreement, tuple(accepted), checked
    )


def is_aperiodic(g: KGraph, bound: Degree | int | None = None) -> Verdict:
    """NO with a witness period if some vertex admits one; YES up to the bound."""
    bound = _as_bound(g, bound)
    for p in dg.signed_box(bound):
        if dg.is_zero(p):
            continue
        a, b = dg.pos_part(p), dg.neg_part(p)
        for v in g.vertices:
            ok, _ = periodic_at_offsets(g, v, a, b)
            if ok:
                return Verdict(
                    NO,
                    {"kind": "period_witness", "p": list(p), "vertex": v},
                    bound,
                )
    return Verdict(YES, {"kind": "bounded_exhaustive"}, bound)


# --- cross-checks on the periodicity notion ---------------------------------


def pair_relation(g: KGraph, mu: Path, nu: Path) -> bool:
    """Do mu and nu satisfy mu.x = nu.x for every infinite x from their source?

    Decided exactly: with n0 = join(d(mu), d(nu)), the infinite equality is
    equivalent to prefix agreement over all test paths w of degree
    join(n0-d(mu), n0-d(nu)) together with shift periodicity at the source
    with offsets (n0-d(mu), n0-d(nu)).
    """
    if mu.source != nu.source or mu.range != nu.range:
        return False
    n0 = dg.join(mu.degree, nu.degree)
    a = dg.sub(n0, mu.degree)
    b = dg.sub(n0, nu.degree)
    for w in g.paths_from(mu.source, dg.join(a, b)):
        left = g.compose(mu, g.factorize(w, a)[0])
        right = g.compose(nu, g.factorize(w, b)[0])
        if left != right:
            return False
    return periodic_at_offsets(g, mu.source, a, b)[0]


def local_periodicity_pair(g: KGraph, bound: Degree | int | None = None):
    """Search for mu != nu with equal endpoints, meet-zero degrees, and the
    property that every bounded extension of the two still has a common
    extension.  Finding one is evidence against aperiodicity; used as an
    independent cross-check of the window automaton.
    """
    bound = _as_bound(g, bound)
    for v in g.vertices:
        for m in dg.box(bound):
            for n in dg.box(bound):
                if not dg.is_zero(dg.meet(m, n)):
                    continue
                if dg.is_zero(m) and dg.is_zero(n):
                    continue
                for mu in g.paths_from(v, m):
                    for nu in g.paths_from(v, n):
                        if mu != nu and mu.source == nu.source:
                            if _always_commonly_extendable(g, mu, nu, bound):
                                return mu, nu
    return None


def _always_commonly_extendable(g: KGraph, mu: Path, nu: Path, bound: Degree) -> bool:
    for da in dg.box(bound):
        for alpha in g.paths_from(mu.source, da):
            ma = g.compose(mu, alpha)
            na = g.compose(nu, alpha)
            n = dg.join(ma.degree, na.degree)
            ok = False
            for ext in g.paths_from(ma.range, dg.sub(n, ma.degree)):
                cand = g.compose(ma, ext)
                if g.factorize(cand, na.degree)[0] == na:
                    ok = True
                    break
            if not ok:
                return False
    return True
