"""Integer lattices and density of phase subgroups, all exact.

Lattices of Z^n are kept as canonical row Hermite normal forms so that
equality is structural.  The two consumers are:

* annihilator_lattice: integer vectors pairing integrally with every column
  of an antisymmetrized bicharacter matrix (the degeneracy subgroup), and
* kronecker_dense: is the subgroup of T^d generated by finitely many exact
  phase vectors dense?

Density bookkeeping.  Write each generator entry as q0 + sum q_s * xi_s.
An integer vector n annihilates all generators iff n kills every symbol
coefficient column exactly over Q and pairs the rational columns into Z.
If the symbol coefficient matrix R (one row per dimension, one column per
generator/symbol pair) has rank < d, a primitive rational kernel vector n0
scaled by the common congruence modulus lies in the annihilator, so the
annihilator is {0} iff rank(R) = d.  Rational parts never help density:
they only cut the annihilator down to a finite-index sublattice, never to
{0}.  Hence a density certificate is a choice of d columns of R together
with a nonzero determinant, which a verifier can recheck by cofactor
expansion without trusting any of the elimination code here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .phases import PhaseExponent, PhaseVector, pair_int

IntRow = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(rows) -> tuple[IntRow, ...]:
    """Canonical row Hermite normal form, zero rows dropped.

    Pivots positive, strictly increasing pivot columns, entries above each
    pivot reduced into [0, pivot).
    """
    M = [list(r) for r in rows if any(r)]
    if not M:
        return ()
    m = len(M[0])
    if any(len(r) != m for r in M):
        raise ValueError("ragged matrix")
    fixed = 0
    for col in range(m):
        piv = next((r for r in range(fixed, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[fixed], M[piv] = M[piv], M[fixed]
        for r in range(fixed + 1, len(M)):
            if M[r][col] == 0:
                continue
            a, b = M[fixed][col], M[r][col]
            g, s, t = xgcd(a, b)
            # [[s, t], [b/g, -a/g]] is unimodular and sends (a, b) to (g, 0)
            row_f = [s * x + t * y for x, y in zip(M[fixed], M[r])]
            row_r = [(b // g) * x - (a // g) * y for x, y in zip(M[fixed], M[r])]
            M[fixed], M[r] = row_f, row_r
        if M[fixed][col] < 0:
            M[fixed] = [-x for x in M[fixed]]
        p = M[fixed][col]
        for r in range(fixed):
            q = M[r][col] // p
            if q:
                M[r] = [x - q * y for x, y in zip(M[r], M[fixed])]
        fixed += 1
    return tuple(tuple(r) for r in M[:fixed] if any(r))


def kernel(rows, width: int) -> tuple[IntRow, ...]:
    """Basis of {x in Z^t : x * M = 0} for M given as t rows of length width.

    Saturated by construction (it is the full integer kernel).
    """
    t = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(t)] for i in range(t)]
    # eliminate over the M-columns only; identity tail records the combos
    fixed = 0
    for col in range(width):
        piv = next((r for r in range(fixed, t) if aug[r][col]), None)
        if piv is None:
            continue
        aug[fixed], aug[piv] = aug[piv], aug[fixed]
        for r in range(fixed + 1, t):
            if aug[r][col] == 0:
                continue
            a, b = aug[fixed][col], aug[r][col]
            g, s, tt = xgcd(a, b)
            row_f = [s * x + tt * y for x, y in zip(aug[fixed], aug[r])]
            row_r = [(b // g) * x - (a // g) * y for x, y in zip(aug[fixed], aug[r])]
            aug[fixed], aug[r] = row_f, row_r
        fixed += 1
    gens = [tuple(row[width:]) for row in aug[fixed:]]
    return hnf(gens) if gens else ()


def snf_invariants(rows) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of the integer matrix (nonzero ones)."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return ()
    out: list[int] = []
    while M and any(any(r) for r in M):
        # move a nonzero entry of minimal magnitude to (0, 0)
        while True:
            best = None
            for i, row in enumerate(M):
                for j, x in enumerate(row):
                    if x and (best is None or abs(x) < abs(best[2])):
                        best = (i, j, x)
            if best is None:
                return tuple(out)
            i, j, _ = best
            M[0], M[i] = M[i], M[0]
            for row in M:
                row[0], row[j] = row[j], row[0]
            p = M[0][0]
            dirty = False
            for r in range(1, len(M)):
                q = M[r][0] // p
                if q:
                    M[r] = [x - q * y for x, y in zip(M[r], M[0])]
                if M[r][0]:
                    dirty = True
            for c in range(1, len(M[0])):
                q = M[0][c] // p
                if q:
                    for row in M:
                        row[c] -= q * row[0]
                if M[0][c]:
                    dirty = True
            if not dirty:
                # p must also divide the rest of the matrix
                bad = next(((r, c) for r in range(1, len(M)) for c in range(1, len(M[0])) if M[r][c] % p), None)
                if bad is None:
                    break
                M[0] = [x + y for x, y in zip(M[0], M[bad[0]])]
        out.append(abs(M[0][0]))
        M = [row[1:] for row in M[1:]]
    return tuple(out)


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of Z^dim in canonical HNF row form."""

    dim: int
    rows: tuple[IntRow, ...]

    @staticmethod
    def from_rows(rows, dim: int) -> "LatticeBasis":
        rows = tuple(tuple(r) for r in rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("row length does not match dim")
        return LatticeBasis(dim, hnf(rows))

    @staticmethod
    def full(dim: int) -> "LatticeBasis":
        return LatticeBasis(dim, tuple(tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)))

    @staticmethod
    def trivial(dim: int) -> "LatticeBasis":
        return LatticeBasis(dim, ())

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_trivial(self) -> bool:
        return not self.rows

    def member(self, v) -> bool:
        v = list(v)
        if len(v) != self.dim:
            raise ValueError("vector length does not match dim")
        for row in self.rows:
            c = next(j for j, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def to_jsonable(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def lattice_sum(a: LatticeBasis, b: LatticeBasis) -> LatticeBasis:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return LatticeBasis.from_rows(a.rows + b.rows, a.dim)


def lattice_intersection(a: LatticeBasis, b: LatticeBasis) -> LatticeBasis:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.is_trivial() or b.is_trivial():
        return LatticeBasis.trivial(a.dim)
    stacked = list(a.rows) + [tuple(-x for x in r) for r in b.rows]
    ker = kernel(stacked, a.dim)
    rows = []
    for x in ker:
        u = x[: len(a.rows)]
        vec = [0] * a.dim
        for coef, row in zip(u, a.rows):
            for j in range(a.dim):
                vec[j] += coef * row[j]
        rows.append(tuple(vec))
    return LatticeBasis.from_rows(rows, a.dim)


def _ortho(rows, dim: int) -> tuple[IntRow, ...]:
    """{x in Z^dim : x . r = 0 for all rows r}."""
    if not rows:
        return LatticeBasis.full(dim).rows
    cols = [tuple(r[j] for r in rows) for j in range(dim)]
    # x . r = 0 for all r  <=>  x * M = 0 with M[j] = (r1[j], r2[j], ...)
    return kernel(cols, len(rows))


def lattice_saturation(a: LatticeBasis) -> LatticeBasis:
    """Largest sublattice with the same Q-span (integer points of the span)."""
    return LatticeBasis(a.dim, hnf(_ortho(_ortho(a.rows, a.dim), a.dim)))


# --- phase pairing lattices -------------------------------------------------


def _symbol_columns(gens: list[PhaseVector], d: int):
    """Columns (one per generator/symbol pair) of symbol coefficients in Q^d."""
    cols: list[tuple[int, str, tuple[Fraction, ...]]] = []
    for i, v in enumerate(gens):
        if len(v) != d:
            raise ValueError(f"generator {i} has length {len(v)}, expected {d}")
        syms = sorted({s for entry in v for s in entry.symbols()})
        for s in syms:
            cols.append((i, s, tuple(entry.coeff(s) for entry in v)))
    return cols


def integral_pairing_lattice(gens: list[PhaseVector], d: int) -> LatticeBasis:
    """{n in Z^d : <n, v> is an integer for every generator v}."""
    if d == 0:
        return LatticeBasis.trivial(0)
    cols = _symbol_columns(gens, d)
    if cols:
        int_cols = []
        for _, _, col in cols:
            den = lcm(*(c.denominator for c in col)) if col else 1
            int_cols.append(tuple(int(c * den) for c in col))
        rows = [tuple(col[j] for col in int_cols) for j in range(d)]
        K = kernel(rows, len(int_cols))
    else:
        K = LatticeBasis.full(d).rows
    if not K:
        return LatticeBasis.trivial(d)
    # congruences from the rational parts, inside the span of K
    t = len(K)
    C: list[list[Fraction]] = [[Fraction(0)] * len(gens) for _ in range(t)]
    for a, krow in enumerate(K):
        for i, v in enumerate(gens):
            C[a][i] = sum((Fraction(krow[j]) * v[j].rat for j in range(d)), Fraction(0))
    dens = [c.denominator for row in C for c in row]
    D = lcm(*dens) if dens else 1
    if D == 1:
        U = LatticeBasis.full(t).rows
    else:
        Ci = [tuple(int(c * D) for c in row) for row in C]
        stacked = list(Ci) + [tuple(D if j == i else 0 for j in range(len(gens))) for i in range(len(gens))]
        ker = kernel(stacked, len(gens))
        U = hnf([x[:t] for x in ker])
    rows = []
    for u in U:
        vec = [0] * d
        for coef, krow in zip(u, K):
            for j in range(d):
                vec[j] += coef * krow[j]
        rows.append(tuple(vec))
    return LatticeBasis.from_rows(rows, d)


def annihilator_lattice(A, dim: int) -> LatticeBasis:
    """Degeneracy lattice {p : p^T A q in Z for all q} of an antisymmetric A.

    A is a dim x dim matrix of PhaseExponent, antisymmetric up to integers;
    anything else is rejected.
    """
    A = tuple(tuple(A[i][j] for j in range(dim)) for i in range(dim))
    for i in range(dim):
        for j in range(i, dim):
            if not (A[i][j] + A[j][i]).is_trivial():
                raise ValueError(f"matrix not antisymmetric mod Z at ({i + 1},{j + 1})")
    cols: list[PhaseVector] = [tuple(A[i][j] for i in range(dim)) for j in range(dim)]
    return integral_pairing_lattice(cols, dim)


# --- Kronecker density with certificates ------------------------------------


def _det_gauss(M: list[list[Fraction]]) -> Fraction:
    n = len(M)
    M = [row[:] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def det_cofactor(M: list[list[Fraction]]) -> Fraction:
    """Cofactor-expansion determinant; the independent recheck route."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return M[0][0]
    acc = Fraction(0)
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in M[1:]]
        term = M[0][j] * det_cofactor(minor)
        acc += term if j % 2 == 0 else -term
    return acc


@dataclass(frozen=True)
class KroneckerResult:
    dense: bool
    dim: int
    annihilator: LatticeBasis
    certificate: dict


def kronecker_dense(gens: list[PhaseVector], d: int) -> KroneckerResult:
    """Decide density in T^d of the subgroup generated by the given vectors.

    Dense iff the only integer annihilator is 0.  The result always carries
    a machine-checkable certificate: a nonzero annihilating vector when not
    dense, a full-rank witness on the symbol-coefficient matrix when dense.
    """
    ann = integral_pairing_lattice(gens, d)
    if d == 0:
        return KroneckerResult(True, 0, ann, {"kind": "zero_dimensional"})
    if not ann.is_trivial():
        n = ann.rows[0]
        return KroneckerResult(False, d, ann, {"kind": "annihilator_vector", "n": list(n)})
    # dense: exhibit d independent columns of the symbol coefficient matrix
    cols = _symbol_columns(gens, d)
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for idx, (_, _, col) in enumerate(cols):
        if len(chosen) == d:
            break
        trial = basis + [list(col)]
        square = [row[:] for row in trial]
        # rank probe: eliminate; keep the column iff it enlarges the rank
        if _rank_frac(square) > len(basis):
            basis.append(list(col))
            chosen.append(idx)
    if len(chosen) != d:
        raise AssertionError("annihilator trivial but full-rank witness not found")
    minor = [[basis[r][c] for r in range(d)] for c in range(d)]
    det = _det_gauss(minor)
    cert = {
        "kind": "irrational_full_rank",
        "columns": [[cols[i][0], cols[i][1]] for i in chosen],
        "det": str(det),
    }
    return KroneckerResult(True, d, ann, cert)


def _rank_frac(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def verify_kronecker(gens: list[PhaseVector], d: int, result: KroneckerResult) -> bool:
    """Recheck a KroneckerResult certificate by independent means."""
    cert = result.certificate
    if not result.dense:
        n = cert.get("n")
        if not n or len(n) != d or not any(n):
            return False
        return all(pair_int(n, v).is_trivial() for v in gens)
    if cert.get("kind") == "zero_dimensional":
        return d == 0
    pairs = cert.get("columns", [])
    if len(pairs) != d:
        return False
    by_key = {(i, s): col for i, s, col in _symbol_columns(gens, d)}
    minor: list[list[Fraction]] = [[Fraction(0)] * d for _ in range(d)]
    for c, (gi, sym) in enumerate(pairs):
        col = by_key.get((gi, sym))
        if col is None:
            return False
        for r in range(d):
            minor[r][c] = col[r]
    det = det_cofactor(minor)
    return det != 0 and det == Fraction(cert.get("det", "0"))
