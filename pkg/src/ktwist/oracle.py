"""Exact brute-force layer over the path groupoid of a k-colored graph.

Elements of the groupoid are represented as (mu, nu, tail): two finite
paths with a common source and an eventually periodic infinite tail; the
element is (mu.tail, d(mu)-d(nu), nu.tail).  Equality, inversion and
composition are computed exactly through eventually periodic path
arithmetic, so every identity asserted here is checked on the nose.

A depth-truncated partition of the groupoid into cylinder cells supports
the central construction: a groupoid 2-cocycle induced by a categorical
cocycle on the graph.  Its value on a composable pair is resolved through
the unique cells of the two factors and their product via common
extensions; the helpers then restrict it to isotropy, build conjugation
phases, inductive coboundaries, and the bicharacter used by the
simplicity decider.  Everything raises DepthError (not wrong answers)
when the truncation is too shallow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import degrees as dg
from .degrees import Degree
from .cocycles import BicharacterTable, CocycleSpec, cocycle_value
from .kgraph import EventuallyPeriodicPath, KGraph, Path, canonical_tail
from .phases import PhaseExponent, phase_is_trivial
from .structure import periodic_at


class DepthError(RuntimeError):
    """The truncation depth cannot resolve the request; increase depth."""


# --- groupoid elements ------------------------------------------------------


@dataclass(eq=False)
class GroupoidElement:
    mu: Path
    nu: Path
    tail: EventuallyPeriodicPath

    def __post_init__(self):
        if self.mu.source != self.nu.source:
            raise ValueError("pair must share a source vertex")
        if self.tail.range != self.mu.source:
            raise ValueError("tail must begin at the pair's source vertex")

    @property
    def graph(self) -> KGraph:
        return self.tail.graph

    @property
    def degree(self) -> Degree:
        return dg.sub(self.mu.degree, self.nu.degree)

    def range_path(self) -> EventuallyPeriodicPath:
        return self.tail.prepend(self.mu)

    def source_path(self) -> EventuallyPeriodicPath:
        return self.tail.prepend(self.nu)

    def inverse(self) -> "GroupoidElement":
        return GroupoidElement(self.nu, self.mu, self.tail)

    def is_unit(self) -> bool:
        return dg.is_zero(self.degree) and self.range_path() == self.source_path()

    def cancelled(self) -> "GroupoidElement":
        """Strip common source-end edges of mu and nu into the tail."""
        g = self.graph
        mu, nu, tail = self.mu, self.nu, self.tail
        changed = True
        while changed:
            changed = False
            for i in range(1, g.k + 1):
                ei = dg.unit(g.k, i)
                if mu.degree[i - 1] and nu.degree[i - 1]:
                    m0, e1 = g.factorize(mu, dg.sub(mu.degree, ei))
                    n0, e2 = g.factorize(nu, dg.sub(nu.degree, ei))
                    if e1 == e2:
                        mu, nu, tail = m0, n0, tail.prepend(e1)
                        changed = True
        return GroupoidElement(mu, nu, tail)

    def __eq__(self, other):
        if not isinstance(other, GroupoidElement):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.range_path() == other.range_path()
            and self.source_path() == other.source_path()
        )

    __hash__ = None

    def __repr__(self):
        return f"GElt[{'.'.join(self.mu.word) or '*'}|{'.'.join(self.nu.word) or '*'};{self.degree}]"


def unit_at(x: EventuallyPeriodicPath) -> GroupoidElement:
    v = x.graph.vertex_path(x.range)
    return GroupoidElement(v, v, x)


def compose_elements(g1: GroupoidElement, g2: GroupoidElement) -> GroupoidElement:
    if g1.source_path() != g2.range_path():
        raise ValueError("elements are not composable")
    g = g1.graph
    z = g2.range_path()
    n1, m2 = g1.nu.degree, g2.mu.degree
    n = dg.join(n1, m2)
    return GroupoidElement(
        g.compose(g1.mu, z.at(n1, n)),
        g.compose(g2.nu, z.at(m2, n)),
        z.shift(n),
    )


def isotropy_element(x: EventuallyPeriodicPath, p: Degree) -> GroupoidElement:
    """The element (x, p, x); requires p to be a shift period along x."""
    a, b = dg.pos_part(p), dg.neg_part(p)
    if x.shift(a) != x.shift(b):
        raise ValueError(f"{p} is not a period along the given path")
    return GroupoidElement(x.segment_to(a), x.segment_to(b), x.shift(a))


# --- the cylinder partition -------------------------------------------------


def cylinders_intersect(g: KGraph, a: tuple[Path, Path], b: tuple[Path, Path]) -> bool:
    """Exact emptiness test for the intersection of two cylinder cells.

    Cells with different degree differences are disjoint.  Otherwise the
    intersection is nonempty iff some common extension witnesses it, and
    the minimal witness degree is the positive part of the degree gap.
    """
    mu1, nu1 = a
    mu2, nu2 = b
    if dg.sub(mu1.degree, nu1.degree) != dg.sub(mu2.degree, nu2.degree):
        return False
    delta = dg.sub(mu2.degree, mu1.degree)
    for alpha in g.paths_from(mu1.source, dg.pos_part(delta)):
        ma = g.compose(mu1, alpha)
        head, alpha2 = g.factorize(ma, mu2.degree)
        if head != mu2:
            continue
        if g.compose(nu1, alpha) == g.compose(nu2, alpha2):
            return True
    return False


@dataclass(eq=False)
class PartitionP:
    graph: KGraph
    depth: Degree
    cells: tuple[tuple[Path, Path], ...]
    _by_p: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        by_p: dict[Degree, list[tuple[Path, Path]]] = {}
        for mu, nu in self.cells:
            by_p.setdefault(dg.sub(mu.degree, nu.degree), []).append((mu, nu))
        self._by_p = by_p

    def member(self, gelt: GroupoidElement) -> tuple[Path, Path]:
        """The unique cell whose cylinder contains the element."""
        x = gelt.range_path()
        y = gelt.source_path()
        hits = []
        for mu, nu in self._by_p.get(gelt.degree, ()):
            if (
                x.segment_to(mu.degree) == mu
                and y.segment_to(nu.degree) == nu
                and x.shift(mu.degree) == y.shift(nu.degree)
            ):
                hits.append((mu, nu))
        if not hits:
            raise DepthError("no partition cell contains the element; increase depth")
        if len(hits) > 1:
            raise RuntimeError("partition cells overlap; internal invariant broken")
        return hits[0]


def _as_degree(g: KGraph, depth) -> Degree:
    if isinstance(depth, int):
        return (depth,) * g.k
    depth = tuple(depth)
    if len(depth) != g.k:
        raise ValueError(f"depth {depth} has wrong length for {g.k} colors")
    return depth


def _is_reduced(g: KGraph, mu: Path, nu: Path) -> bool:
    for i in range(1, g.k + 1):
        ei = dg.unit(g.k, i)
        if mu.degree[i - 1] and nu.degree[i - 1]:
            if g.factorize(mu, dg.sub(mu.degree, ei))[1] == g.factorize(nu, dg.sub(nu.degree, ei))[1]:
                return False
    return True


def build_partition(g: KGraph, depth, pinned: tuple[tuple[Path, Path], ...] = ()) -> PartitionP:
    """Greedy cylinder partition of the groupoid truncated at a degree box.

    Starts from the diagonal cells (lambda, source vertex) for every path
    within the box plus any pinned pairs, then sweeps all reduced
    source-matched pairs in graded lexicographic order, keeping each one
    whose cylinder misses everything kept so far.
    """
    depth = _as_degree(g, depth)
    paths_by_degree: dict[Degree, list[Path]] = {}
    for n in dg.box(depth):
        bucket = []
        for v in g.vertices:
            bucket.extend(g.paths_from(v, n))
        bucket.sort(key=lambda p: (p.range, p.word))
        paths_by_degree[n] = bucket

    cells: list[tuple[Path, Path]] = []
    for n in sorted(paths_by_degree, key=lambda n: (dg.total(n), n)):
        for lam in paths_by_degree[n]:
            cells.append((lam, g.vertex_path(lam.source)))

    for mu, nu in pinned:
        if mu.source != nu.source:
            raise ValueError(f"pinned pair ({mu!r}, {nu!r}) does not share a source")
        if any(mu == m and nu == n for m, n in cells):
            continue
        for other in cells:
            if cylinders_intersect(g, (mu, nu), other):
                raise ValueError(f"pinned pair ({mu!r}, {nu!r}) overlaps {other}")
        cells.append((mu, nu))

    degree_pairs = sorted(
        ((m, n) for m in paths_by_degree for n in paths_by_degree),
        key=lambda mn: (dg.total(mn[0]) + dg.total(mn[1]), mn[0], mn[1]),
    )
    part = PartitionP(g, depth, tuple(cells))
    for m, n in degree_pairs:
        for mu in paths_by_degree[m]:
            for nu in paths_by_degree[n]:
                if nu.source != mu.source:
                    continue
                if not _is_reduced(g, mu, nu):
                    continue
                same_p = part._by_p.get(dg.sub(m, n), [])
                if any(cylinders_intersect(g, (mu, nu), cell) for cell in same_p):
                    continue
                same_p = part._by_p.setdefault(dg.sub(m, n), [])
                same_p.append((mu, nu))
                cells.append((mu, nu))
    return PartitionP(g, depth, tuple(cells))


# --- the induced groupoid cocycle -------------------------------------------


def sigma_c(
    c: CocycleSpec,
    P: PartitionP,
    gelt: GroupoidElement,
    helt: GroupoidElement,
    paddings: tuple[int, ...] = (0, 1),
) -> PhaseExponent:
    """Value of the induced groupoid 2-cocycle on a composable pair.

    Resolves both factors and their product through their partition cells,
    picks common extensions out of the shared infinite path, and combines
    six categorical cocycle values.  The result is independent of the
    resolution; every padding in `paddings` re-derives it with a larger
    extension and the agreement is asserted.
    """
    if gelt.source_path() != helt.range_path():
        raise ValueError("elements are not composable")
    prod = compose_elements(gelt, helt)
    mu_g, nu_g = P.member(gelt)
    mu_h, nu_h = P.member(helt)
    mu_gh, nu_gh = P.member(prod)
    pg = gelt.degree
    u = gelt.source_path()
    z = gelt.range_path()
    base = dg.join(dg.join(nu_g.degree, mu_h.degree), dg.sub(mu_gh.degree, pg))
    g = P.graph
    ones = (1,) * g.k
    vals = []
    for pad in paddings:
        n = dg.add(base, dg.scale(pad, ones))
        alpha = u.at(nu_g.degree, n)
        beta = u.at(mu_h.degree, n)
        gamma = z.at(mu_gh.degree, dg.add(n, pg))
        val = (
            cocycle_value(c, mu_g, alpha)
            - cocycle_value(c, nu_g, alpha)
            + cocycle_value(c, mu_h, beta)
            - cocycle_value(c, nu_h, beta)
            - cocycle_value(c, mu_gh, gamma)
            + cocycle_value(c, nu_gh, gamma)
        )
        vals.append(val)
    for other in vals[1:]:
        if not phase_is_trivial(vals[0] - other):
            raise RuntimeError("cocycle value depended on the resolution choice")
    return vals[0]


def isotropy_restriction(
    c: CocycleSpec, P: PartitionP, x: EventuallyPeriodicPath, p: Degree, q: Degree
) -> PhaseExponent:
    """sigma on the isotropy pair ((x,p,x), (x,q,x))."""
    return sigma_c(c, P, isotropy_element(x, p), isotropy_element(x, q))


def r_sigma(c: CocycleSpec, P: PartitionP, alpha: GroupoidElement, p: Degree) -> PhaseExponent:
    """Conjugation phase of the period p across the element alpha."""
    iso = isotropy_element(alpha.source_path(), p)
    ai = alpha.inverse()
    t1 = sigma_c(c, P, alpha, iso)
    t2 = sigma_c(c, P, compose_elements(alpha, iso), ai)
    t3 = sigma_c(c, P, alpha, ai)
    return (t1 + t2) - t3


# --- bicharacter extraction -------------------------------------------------


def ambient(per_basis: tuple[Degree, ...], m) -> Degree:
    """The integer vector sum(m_i * basis_i)."""
    k = len(per_basis[0])
    out = dg.zero(k)
    for coef, gen in zip(m, per_basis):
        out = dg.add(out, dg.scale(coef, gen))
    return out


def periodic_base_vertex(g: KGraph, per_basis: tuple[Degree, ...]) -> str:
    for v in sorted(g.vertices):
        if all(periodic_at(g, p, v) for p in per_basis):
            return v
    raise ValueError("no vertex is locally periodic for every period generator")


def initial_oracle_depth(g: KGraph, per_basis: tuple[Degree, ...]) -> Degree:
    total = dg.zero(g.k)
    for p in per_basis:
        total = dg.add(total, dg.add(dg.pos_part(p), dg.neg_part(p)))
    return dg.add(total, (1,) * g.k)


def omega_from_oracle(
    g: KGraph,
    c: CocycleSpec,
    per_basis: tuple[Degree, ...],
    v: str | None = None,
    depth: Degree | int | None = None,
    retries: int = 3,
) -> BicharacterTable:
    """Bicharacter with the isotropy cocycle's antisymmetrization.

    Evaluates the induced cocycle on generator pairs along one eventually
    periodic path and stores the pair differences in a strictly lower
    triangular matrix.  Only the antisymmetrization (hence the annihilator
    lattice) is meaningful; the triangular choice is a canonical gauge.
    """
    l = len(per_basis)
    if l == 0:
        return BicharacterTable.zero(0)
    if v is None:
        v = periodic_base_vertex(g, per_basis)
    elif not all(periodic_at(g, p, v) for p in per_basis):
        raise ValueError(f"vertex {v!r} is not locally periodic for every generator")
    x = canonical_tail(g, v)
    d = _as_degree(g, depth) if depth is not None else initial_oracle_depth(g, per_basis)
    last: Exception | None = None
    for _ in range(retries + 1):
        part = build_partition(g, d)
        try:
            sig = {}
            for i in range(l):
                for j in range(l):
                    if i != j:
                        sig[(i, j)] = isotropy_restriction(c, part, x, per_basis[i], per_basis[j])
            zero = PhaseExponent.zero()
            rows = [
                [sig[(i, j)] - sig[(j, i)] if i > j else zero for j in range(l)]
                for i in range(l)
            ]
            return BicharacterTable(l, tuple(tuple(r) for r in rows))
        except DepthError as err:
            last = err
            d = dg.add(d, d)
    raise DepthError(f"depth escalation exhausted: {last}")


def omega_closedform(
    g: KGraph, c: CocycleSpec, per_basis: tuple[Degree, ...], v: str | None = None
) -> BicharacterTable:
    """The printed single-path product formula for the bicharacter.

    Kept as a cross-check target only: the expression is symmetric under
    swapping the two generators, so its antisymmetrization always
    vanishes, which disagrees with the oracle on some twisted fixtures.
    The comparison is reported by callers; the oracle is authoritative.
    """
    l = len(per_basis)
    if l == 0:
        return BicharacterTable.zero(0)
    if v is None:
        v = periodic_base_vertex(g, per_basis)
    big = dg.zero(g.k)
    for p in per_basis:
        big = dg.add(big, dg.add(dg.pos_part(p), dg.neg_part(p)))
    lam = g.paths_from(v, big)[0]

    def split(m: Degree) -> tuple[Path, Path]:
        return g.factorize(lam, m)

    zero = PhaseExponent.zero()
    rows = []
    for i in range(l):
        row = []
        for j in range(l):
            if i == j:
                row.append(zero)
                continue
            gi, gj = per_basis[i], per_basis[j]
            mu_i, tau_i = split(dg.pos_part(gi))
            nu_i, rho_i = split(dg.neg_part(gi))
            mu_j, tau_j = split(dg.pos_part(gj))
            nu_j, rho_j = split(dg.neg_part(gj))
            mu_ij, tau_ij = split(dg.pos_part(dg.add(gi, gj)))
            nu_ij, rho_ij = split(dg.neg_part(dg.add(gi, gj)))
            val = (
                cocycle_value(c, mu_i, tau_i)
                - cocycle_value(c, nu_i, rho_i)
                + cocycle_value(c, mu_j, tau_j)
                - cocycle_value(c, nu_j, rho_j)
                - cocycle_value(c, mu_ij, tau_ij)
                + cocycle_value(c, nu_ij, rho_ij)
            )
            row.append(val)
        rows.append(tuple(row))
    return BicharacterTable(l, tuple(rows))


# --- coboundary reconstruction ----------------------------------------------


class IsotropyTable:
    """Memoized generator-coordinate view of the isotropy cocycle at x."""

    def __init__(self, c: CocycleSpec, P: PartitionP, x: EventuallyPeriodicPath, per_basis):
        self.c = c
        self.P = P
        self.x = x
        self.per_basis = tuple(per_basis)
        self._memo: dict = {}

    def sigma(self, m: Degree, n: Degree) -> PhaseExponent:
        key = (tuple(m), tuple(n))
        if key not in self._memo:
            self._memo[key] = isotropy_restriction(
                self.c, self.P, self.x, ambient(self.per_basis, m), ambient(self.per_basis, n)
            )
        return self._memo[key]


class CoboundaryBx:
    """Inductive 1-cochain b with delta b = (isotropy cocycle) - (target).

    Built on the generator filtration: b(0) = b(g_i) = 0, and each step in
    the top nonzero coordinate peels one generator off.
    """

    def __init__(self, omega_target: BicharacterTable, c, P, x, per_basis):
        per_basis = tuple(per_basis)
        l = len(per_basis)
        if omega_target.rank != l:
            raise ValueError("target rank does not match the generator count")
        self.table = IsotropyTable(c, P, x, per_basis)
        self.omega = omega_target
        self.l = l
        self._memo: dict[Degree, PhaseExponent] = {dg.zero(l): PhaseExponent.zero()}
        for i in range(l):
            for j in range(l):
                if i >= j:
                    continue
                ei, ej = dg.unit(l, i + 1), dg.unit(l, j + 1)
                diff = (self.ctilde(ei, ej) - self.ctilde(ej, ei))
                if not phase_is_trivial(diff):
                    raise ValueError(
                        "target bicharacter has a different antisymmetrization; not cohomologous"
                    )

    def ctilde(self, m: Degree, n: Degree) -> PhaseExponent:
        return self.table.sigma(m, n) - self.omega.value(m, n)

    def value(self, m: Degree) -> PhaseExponent:
        m = tuple(m)
        if m in self._memo:
            return self._memo[m]
        i = max(t for t in range(self.l) if m[t])
        gi = dg.unit(self.l, i + 1)
        if m[i] > 0:
            prev = dg.sub(m, gi)
            out = self.value(prev) - self.ctilde(gi, prev)
        else:
            out = self.value(dg.add(m, gi)) + self.ctilde(gi, m)
        self._memo[m] = out
        return out

    def verify_box(self, radius: int) -> tuple[int, list[str]]:
        """Check delta b = ctilde on all pairs inside the box."""
        checked = 0
        bad = []
        for p in dg.signed_box((radius,) * self.l):
            for q in dg.signed_box((radius,) * self.l):
                checked += 1
                lhs = (self.value(p) + self.value(q)) - self.value(dg.add(p, q))
                if not phase_is_trivial(lhs - self.ctilde(p, q)):
                    bad.append(f"delta b != ctilde at ({p}, {q})")
        return checked, bad


def coboundary_bx(
    omega_target: BicharacterTable,
    c: CocycleSpec,
    P: PartitionP,
    x: EventuallyPeriodicPath,
    per_basis: tuple[Degree, ...],
) -> CoboundaryBx:
    return CoboundaryBx(omega_target, c, P, x, per_basis)


# --- property suites --------------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_jsonable(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "violations": list(self.violations),
        }


def composable_triples(g: KGraph, depth, shift_cap: int = 1):
    """Deterministic stream of composable element triples (a, b, c).

    The middle element is built from a source-matched pair over a
    canonical tail; the outer two are grafted onto its boundary paths at
    small shifts, so all three compositions exist by construction.
    """
    d = _as_degree(g, depth)
    shifts = [dg.scale(t, (1,) * g.k) for t in range(shift_cap + 1)]
    for v in sorted(g.vertices):
        z = canonical_tail(g, v)
        inner: list[GroupoidElement] = []
        for m in dg.box(d):
            for n in dg.box(d):
                for mu in g.paths_from(v, m):
                    for nu in g.paths_from(v, n):
                        inner.append(GroupoidElement(mu, nu, z))
        for b in inner:
            u = b.range_path()
            w = b.source_path()
            for s in shifts:
                us = u.shift(s)
                ws = w.shift(s)
                for m in dg.box(d):
                    for mu in g.paths_from(us.range, m):
                        a = GroupoidElement(mu, u.segment_to(s), us)
                        for n in dg.box(d):
                            for nu in g.paths_from(ws.range, n):
                                cc = GroupoidElement(w.segment_to(s), nu, ws)
                                yield a, b, cc


def suite_cocycle_identity(
    g: KGraph,
    c: CocycleSpec,
    P: PartitionP,
    depth=1,
    shift_cap: int = 1,
    max_triples: int | None = None,
) -> SuiteResult:
    """sigma(a,b) + sigma(ab,c) = sigma(b,c) + sigma(a,bc) on sampled triples.

    Values and compositions involving the shared middle element are hoisted
    so each extra triple costs two cocycle evaluations.
    """
    d = _as_degree(g, depth)
    shifts = [dg.scale(t, (1,) * g.k) for t in range(shift_cap + 1)]
    checked = 0
    bad = []
    for v in sorted(g.vertices):
        z = canonical_tail(g, v)
        inner: list[GroupoidElement] = []
        for m in dg.box(d):
            for n in dg.box(d):
                for mu in g.paths_from(v, m):
                    for nu in g.paths_from(v, n):
                        inner.append(GroupoidElement(mu, nu, z))
        for b in inner:
            u = b.range_path()
            w = b.source_path()
            lefts = []
            for s in shifts:
                us = u.shift(s)
                mid = u.segment_to(s)
                for m in dg.box(d):
                    for mu in g.paths_from(us.range, m):
                        a = GroupoidElement(mu, mid, us)
                        lefts.append((a, sigma_c(c, P, a, b), compose_elements(a, b)))
            rights = []
            for s in shifts:
                ws = w.shift(s)
                mid = w.segment_to(s)
                for n in dg.box(d):
                    for nu in g.paths_from(ws.range, n):
                        cc = GroupoidElement(mid, nu, ws)
                        rights.append((cc, sigma_c(c, P, b, cc), compose_elements(b, cc)))
            for a, s_ab, ab in lefts:
                for cc, s_bc, bc in rights:
                    lhs = s_ab + sigma_c(c, P, ab, cc)
                    rhs = s_bc + sigma_c(c, P, a, bc)
                    if not phase_is_trivial(lhs - rhs):
                        bad.append(f"identity fails on ({a!r}, {b!r}, {cc!r})")
                    checked += 1
                    if max_triples is not None and checked >= max_triples:
                        return SuiteResult("cocycle_identity", checked, tuple(bad))
    return SuiteResult("cocycle_identity", checked, tuple(bad))


def suite_resolution_independence(
    g: KGraph, c: CocycleSpec, P: PartitionP, depth=1, max_pairs: int = 200
) -> SuiteResult:
    """Recompute sampled values with three paddings; sigma_c asserts agreement."""
    checked = 0
    bad = []
    for a, b, _ in composable_triples(g, depth, shift_cap=0):
        try:
            sigma_c(c, P, a, b, paddings=(0, 1, 2))
        except RuntimeError as err:
            bad.append(str(err))
        checked += 1
        if checked >= max_pairs:
            break
    return SuiteResult("resolution_independence", checked, tuple(bad))


def _period_samples(per_basis: tuple[Degree, ...], radius: int):
    l = len(per_basis)
    for coeffs in dg.signed_box((radius,) * l):
        yield ambient(per_basis, coeffs)


def suite_conjugation_formula(
    g: KGraph,
    c: CocycleSpec,
    P: PartitionP,
    per_basis: tuple[Degree, ...],
    depth=1,
    radius: int = 1,
    max_checks: int | None = None,
) -> SuiteResult:
    """r(a, p+q) = sigma_r(p,q) - sigma_s(p,q) + r(a,p) + r(a,q) on samples.

    Elements a run over source-matched pairs at vertices that carry every
    period generator; p and q run over small integer combinations.
    """
    if not per_basis:
        return SuiteResult("conjugation_formula", 0, ())
    checked = 0
    bad = []
    d = _as_degree(g, depth)
    periods = [p for p in _period_samples(per_basis, radius)]
    for v in sorted(g.vertices):
        if not all(periodic_at(g, p, v) for p in per_basis):
            continue
        z = canonical_tail(g, v)
        elements = []
        for m in dg.box(d):
            for n in dg.box(d):
                for mu in g.paths_from(v, m):
                    for nu in g.paths_from(v, n):
                        elements.append(GroupoidElement(mu, nu, z))
        for a in elements:
            xr = a.range_path()
            xs = a.source_path()
            r_at: dict[Degree, PhaseExponent] = {}

            def r_cached(p: Degree) -> PhaseExponent:
                if p not in r_at:
                    r_at[p] = r_sigma(c, P, a, p)
                return r_at[p]

            iso_r = {p: isotropy_element(xr, p) for p in periods}
            iso_s = {p: isotropy_element(xs, p) for p in periods}
            for p in periods:
                for q in periods:
                    lhs = r_cached(dg.add(p, q))
                    rhs = (
                        sigma_c(c, P, iso_r[p], iso_r[q])
                        - sigma_c(c, P, iso_s[p], iso_s[q])
                        + r_cached(p)
                        + r_cached(q)
                    )
                    if not phase_is_trivial(lhs - rhs):
                        bad.append(f"conjugation additivity fails at ({a!r}, {p}, {q})")
                    checked += 1
                    if max_checks is not None and checked >= max_checks:
                        return SuiteResult("conjugation_formula", checked, tuple(bad))
    return SuiteResult("conjugation_formula", checked, tuple(bad))


def suite_centre_phase_triviality(
    g: KGraph,
    c: CocycleSpec,
    P: PartitionP,
    per_basis: tuple[Degree, ...],
    zbasis: tuple[tuple[int, ...], ...],
    depth=1,
    radius: int = 1,
) -> SuiteResult:
    """Conjugation phases of isotropy elements vanish on central periods.

    zbasis rows are generator coordinates of periods annihilated by the
    bicharacter commutator.  Across isotropy elements (x, q, x), with x
    ranging over dressed canonical tails, the r-phase of every central
    period must be trivial.  Non-isotropy elements are exempt: their
    phases are exactly what moves orbits.
    """
    checked = 0
    bad = []
    d = _as_degree(g, depth)
    central = [ambient(per_basis, row) for row in zbasis] if per_basis else []
    if not central:
        return SuiteResult("centre_phase_triviality", 0, ())
    for v in sorted(g.vertices):
        if not all(periodic_at(g, p, v) for p in per_basis):
            continue
        base = canonical_tail(g, v)
        tails = [base]
        for m in dg.box(d):
            if dg.is_zero(m):
                continue
            for w in sorted(g.vertices):
                for mu in g.paths_from(w, m):
                    if mu.source == v:
                        tails.append(base.prepend(mu))
        for x in tails:
            for q in _period_samples(per_basis, radius):
                gamma = isotropy_element(x, q)
                for p in central:
                    val = r_sigma(c, P, gamma, p)
                    if not phase_is_trivial(val):
                        bad.append(f"nontrivial phase {val!r} at ({gamma!r}, {p})")
                    checked += 1
    return SuiteResult("centre_phase_triviality", checked, tuple(bad))
