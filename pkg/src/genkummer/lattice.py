"""Integral quadratic lattices.

A lattice is a symmetric integer Gram matrix on Z^r. Root lattices follow
the (-2)-curve convention and are negative definite.
"""

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional

from .exact_core import (
    Inertia,
    IntegerMatrix,
    as_matrix,
    block_diagonal,
    determinant,
    smith_normal_form,
    symmetric_inertia,
    unimodular_inverse,
)

DEFAULT_SEARCH_BOUND = 5
MAX_ISOMETRY_RANK = 8


class LatticeError(ValueError):
    pass


class DegenerateLatticeError(LatticeError):
    pass


class NotDefiniteError(LatticeError):
    pass


class IsometryUndecidable(NotDefiniteError):
    """Isometry of indefinite lattices is outside what this package decides."""


class WrongInertiaError(LatticeError):
    pass


class GramFormatError(LatticeError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class IntegralLattice:
    gram: IntegerMatrix

    def __post_init__(self):
        g = as_matrix(self.gram)
        if not g.is_symmetric():
            raise LatticeError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self):
        return self.gram.nrows

    def inertia(self) -> Inertia:
        return symmetric_inertia(self.gram)

    def dot(self, u, v):
        g = self.gram
        return sum(u[i] * g[i, j] * v[j] for i in range(self.rank) for j in range(self.rank))

    def norm(self, v):
        return self.dot(v, v)

    def is_degenerate(self):
        return determinant(self.gram) == 0

    def definiteness(self):
        """+1 positive definite, -1 negative definite, 0 otherwise."""
        pos, neg, zero = self.inertia()
        if zero or not self.rank:
            return 0
        if neg == 0:
            return 1
        if pos == 0:
            return -1
        return 0

    def tolist(self):
        return self.gram.tolist()

    def to_json(self):
        return {"rank": self.rank, "gram": self.tolist()}

    def __repr__(self):
        return f"IntegralLattice({self.tolist()!r})"


def lattice(gram) -> IntegralLattice:
    return gram if isinstance(gram, IntegralLattice) else IntegralLattice(as_matrix(gram))


# --- standard lattices ------------------------------------------------------


def _dynkin_edges(kind, k):
    if kind == "A":
        return [(i, i + 1) for i in range(k - 1)]
    if kind == "D":
        return [(i, i + 1) for i in range(k - 2)] + [(k - 3, k - 1)]
    # E_k: chain of k-1 nodes, extra node on the third
    return [(i, i + 1) for i in range(k - 2)] + [(2, k - 1)]


def make_standard(name) -> IntegralLattice:
    """U, or a negative definite root lattice A_k, D_k, E_6, E_7, E_8."""
    if name == "U":
        return IntegralLattice(IntegerMatrix([[0, 1], [1, 0]]))
    m = re.fullmatch(r"([ADE])_?(\d+)", str(name))
    if not m:
        raise LatticeError(f"unknown lattice name {name!r}")
    kind, k = m.group(1), int(m.group(2))
    if (kind == "A" and k < 1) or (kind == "D" and k < 4) or (kind == "E" and k not in (6, 7, 8)):
        raise LatticeError(f"invalid parameter for {kind}_k: {k}")
    g = [[-2 if i == j else 0 for j in range(k)] for i in range(k)]
    for i, j in _dynkin_edges(kind, k):
        g[i][j] = g[j][i] = 1
    return IntegralLattice(IntegerMatrix(g))


# --- basic operations -------------------------------------------------------


def twist(L, n) -> IntegralLattice:
    """L(n): the same module with the form multiplied by n."""
    if n == 0:
        raise LatticeError("twist by 0 degenerates the form")
    return IntegralLattice(lattice(L).gram.scale(n))


def direct_sum(*lattices) -> IntegralLattice:
    return IntegralLattice(block_diagonal(*(lattice(L).gram for L in lattices)))


def discriminant(L) -> int:
    return determinant(lattice(L).gram)


def is_even(L) -> bool:
    g = lattice(L).gram
    return all(g[i, i] % 2 == 0 for i in range(g.nrows))


def discriminant_group(L) -> list:
    """Invariant factors > 1 of the discriminant group L*/L."""
    L = lattice(L)
    if L.is_degenerate():
        raise DegenerateLatticeError("discriminant group needs a nondegenerate lattice")
    return [d for d in smith_normal_form(L.gram).factors if d != 1]


# --- definite lattices: reduction and short vectors ------------------------


def _gso(g):
    """Gram-Schmidt data (mu, squared lengths) from a positive definite Gram."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(g[i][j]) - sum(mu[j][k] * mu[i][k] * b[k] for k in range(j))
            mu[i][j] = s / b[j]
        b[i] = g[i][i] - sum(mu[i][k] ** 2 * b[k] for k in range(i))
    return mu, b


def lll_reduce(gram, delta=Fraction(3, 4)):
    """LLL-reduce a positive definite Gram matrix.

    Returns (reduced, t) with ``t`` unimodular and ``reduced = t^T gram t``.
    """
    g0 = as_matrix(gram)
    n = g0.nrows
    t = IntegerMatrix.identity(n).tolist()

    def current():
        tm = IntegerMatrix(t, ncols=n)
        return (tm.T @ g0 @ tm).tolist()

    g = current()
    k = 1
    while k < n:
        mu, b = _gso(g)
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                for row in t:
                    row[k] -= q * row[j]
                g = current()
                mu, b = _gso(g)
        if b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            for row in t:
                row[k], row[k - 1] = row[k - 1], row[k]
            g = current()
            k = max(k - 1, 1)
        else:
            k += 1
    return IntegerMatrix(g, ncols=n), IntegerMatrix(t, ncols=n)


def _cholesky_form(g):
    """Coefficients with x^T g x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(g)
    q = [[Fraction(x) for x in row] for row in g]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _enumerate_positive(g, bound):
    """All x != 0 with x^T g x <= bound for positive definite g, both signs."""
    n = len(g)
    q = _cholesky_form(g)
    x = [0] * n
    out = []

    def rec(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        qi = q[i][i]
        s = math.isqrt(math.floor(remaining / qi)) + 1
        for v in range(math.floor(c) - s, math.ceil(c) + s + 1):
            used = qi * (v - c) ** 2
            if used <= remaining:
                x[i] = v
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def _canonical_sign(v):
    for c in v:
        if c:
            return c > 0
    return False


def short_vectors(L, bound):
    """Vectors v with 0 < |v.v| <= bound, one per +-pair, as (vector, norm).

    Sorted by |norm|, then by vector.
    """
    L = lattice(L)
    if bound <= 0:
        raise LatticeError("bound must be positive")
    sign = L.definiteness()
    if sign == 0:
        raise NotDefiniteError("short_vectors needs a definite lattice")
    g = L.gram.scale(sign).tolist()
    vecs = [v for v in _enumerate_positive(g, bound) if _canonical_sign(v)]
    res = [(v, L.norm(v)) for v in vecs]
    res.sort(key=lambda p: (abs(p[1]), p[0]))
    return res


def norm_histogram(L, bound):
    hist = {}
    for _, nrm in short_vectors(L, bound):
        hist[nrm] = hist.get(nrm, 0) + 1
    return dict(sorted(hist.items(), key=lambda kv: abs(kv[0])))


# --- isometry ---------------------------------------------------------------


class IsometryResult(NamedTuple):
    isometric: bool
    certificate: Optional[IntegerMatrix] = None

    def __bool__(self):
        return self.isometric


def _check_definite_pair(L1, L2, max_rank):
    s1, s2 = L1.definiteness(), L2.definiteness()
    if s1 == 0 or s2 == 0:
        raise IsometryUndecidable(
            "isometry of indefinite or degenerate lattices is undecidable by this operation"
        )
    if s1 != s2:
        raise NotDefiniteError("lattices must be definite of the same sign")
    if max(L1.rank, L2.rank) > max_rank:
        raise LatticeError(f"isometry testing is limited to rank <= {max_rank}")
    return s1


def is_isometric_definite(L1, L2, max_rank=MAX_ISOMETRY_RANK) -> IsometryResult:
    """Decide whether s^T gram1 s = gram2 for some s in GL_r(Z).

    Columns of s are chosen by backtracking over short vectors of L1 whose
    norms and mutual products match an LLL-reduced basis of L2.
    """
    L1, L2 = lattice(L1), lattice(L2)
    sign = _check_definite_pair(L1, L2, max_rank)
    if L1.rank != L2.rank or discriminant(L1) != discriminant(L2) or is_even(L1) != is_even(L2):
        return IsometryResult(False)
    n = L1.rank
    if L1.gram == L2.gram:
        return IsometryResult(True, IntegerMatrix.identity(n))
    p1 = L1.gram.scale(sign)
    red, t = lll_reduce(L2.gram.scale(sign))
    target = red.tolist()
    top = max(target[i][i] for i in range(n))
    g1 = p1.tolist()

    by_norm = {}
    for v in _enumerate_positive(g1, top):
        gv = [sum(g1[i][j] * v[j] for j in range(n)) for i in range(n)]
        nrm = sum(a * b for a, b in zip(v, gv))
        by_norm.setdefault(nrm, []).append((v, gv))
    for lst in by_norm.values():
        lst.sort()

    chosen = []

    def rec(i):
        if i == n:
            return True
        for v, gv in by_norm.get(target[i][i], ()):
            if i == 0 and not _canonical_sign(v):
                continue
            if all(sum(a * b for a, b in zip(v, gw)) == target[i][j]
                   for j, (_, gw) in enumerate(chosen)):
                chosen.append((v, gv))
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if not rec(0):
        return IsometryResult(False)
    s_red = IntegerMatrix([[chosen[j][0][i] for j in range(n)] for i in range(n)])
    s = s_red @ unimodular_inverse(t)
    if s.T @ L1.gram @ s != L2.gram:
        raise AssertionError("isometry certificate failed verification")
    return IsometryResult(True, s)


def compare_invariants(L1, L2):
    """Invariant agreement for lattices where isometry is not decided here."""
    L1, L2 = lattice(L1), lattice(L2)
    rows = {
        "rank": (L1.rank, L2.rank),
        "inertia": (tuple(L1.inertia()), tuple(L2.inertia())),
        "even": (is_even(L1), is_even(L2)),
        "discriminant": (discriminant(L1), discriminant(L2)),
    }
    if discriminant(L1) and discriminant(L2):
        rows["discriminant_group"] = (discriminant_group(L1), discriminant_group(L2))
    agree = all(a == b for a, b in rows.values())
    return {
        "invariants": {k: {"first": a, "second": b, "agree": a == b} for k, (a, b) in rows.items()},
        "agree": agree,
        # matching invariants do not prove isometry for indefinite forms
        "inconclusive": agree,
    }


# --- hyperbolic summands ----------------------------------------------------


class HyperbolicSplit(NamedTuple):
    e: tuple
    f: tuple
    complement: IntegralLattice
    complement_basis: tuple


def _box_shells(n, bound):
    """Nonzero integer vectors with max |coord| <= bound, shell by shell,
    first nonzero coordinate positive."""
    for r in range(1, bound + 1):
        for v in product(range(-r, r + 1), repeat=n):
            if max(map(abs, v)) == r and _canonical_sign(v):
                yield v


def _ext_gcd_solution(w):
    """x with sum w_i x_i = gcd(w)."""
    g, x = 0, [0] * len(w)
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        if g == 0:
            g, x = abs(wi), [0] * len(w)
            x[i] = 1 if wi > 0 else -1
            continue
        # combine: a*g + b*wi = gcd
        a, b, d = _egcd(g, wi)
        x = [a * c for c in x]
        x[i] += b
        g = d
    return g, x


def _egcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return x0, y0, a


def _complement_basis(L, e, f):
    n = L.rank
    rows = []
    for i in range(n):
        b = [int(i == j) for j in range(n)]
        be, bf = L.dot(b, e), L.dot(b, f)
        rows.append([b[j] - bf * e[j] - be * f[j] for j in range(n)])
    snf = smith_normal_form(IntegerMatrix(rows, ncols=n))
    r = sum(1 for d in snf.factors if d)
    mixed = snf.left @ IntegerMatrix(rows, ncols=n)
    return [list(mixed[i]) for i in range(r)]


def find_hyperbolic_summand(L, search_bound=DEFAULT_SEARCH_BOUND):
    """Look for e, f with e.e = f.f = 0 and e.f = 1, so that L = U + U^perp.

    The isotropic vector e is searched in the box |coords| <= search_bound;
    f is then built from e. Returns a HyperbolicSplit or None. None means
    "not found within the bound", not "no such summand".
    """
    L = lattice(L)
    if L.is_degenerate():
        raise DegenerateLatticeError("hyperbolic summand search needs a nondegenerate lattice")
    if search_bound < 1:
        raise LatticeError("search_bound must be positive")
    n = L.rank
    if n < 2 or L.definiteness() != 0:
        return None
    g = L.gram.tolist()
    for e in _box_shells(n, search_bound):
        if L.norm(e):
            continue
        ge = [sum(g[i][j] * e[j] for j in range(n)) for i in range(n)]
        d, x = _ext_gcd_solution(ge)
        if d != 1:
            continue
        if L.norm(x) % 2:
            y = next(
                (y for y in _box_shells(n, search_bound)
                 if L.dot(y, e) == 0 and L.norm(y) % 2),
                None,
            )
            if y is None:
                continue
            x = [a + b for a, b in zip(x, y)]
        c = L.norm(x) // 2
        f = tuple(a - c * b for a, b in zip(x, e))
        assert L.norm(f) == 0 and L.dot(e, f) == 1
        basis = _complement_basis(L, e, f)
        comp_gram = IntegerMatrix([[L.dot(u, v) for v in basis] for u in basis], ncols=len(basis))
        comp = IntegralLattice(comp_gram)
        sign = comp.definiteness()
        if sign and comp.rank > 1:
            red, t = lll_reduce(comp.gram.scale(sign))
            comp = IntegralLattice(red.scale(sign))
            bm = IntegerMatrix(basis, ncols=n)
            basis = (t.T @ bm).tolist()
        return HyperbolicSplit(tuple(e), f, comp, tuple(tuple(b) for b in basis))
    return None


# --- Morrison's criterion ---------------------------------------------------


class MorrisonVerdict(enum.Enum):
    CASE_I_RHO19 = "Case_i_rho19"
    CASE_I_RHO20 = "Case_i_rho20"
    CASE_II_U_SUMMAND = "Case_ii_U_summand"
    CASE_III_U2_SUMMAND = "Case_iii_U2_summand"
    NOT_CLASSIFIED = "NotClassified"


@dataclass(frozen=True)
class MorrisonClass:
    verdict: MorrisonVerdict
    rho: int
    search_bound: int
    complement: Optional[IntegralLattice] = None
    k3_signature: bool = True

    def describe(self):
        v = self.verdict
        if v in (MorrisonVerdict.CASE_I_RHO19, MorrisonVerdict.CASE_I_RHO20):
            text = f"Case (i): ρ(X) = {self.rho}"
        elif v is MorrisonVerdict.CASE_II_U_SUMMAND:
            text = f"Case (ii): T = U ⊕ T', T' = {self.complement.tolist()}"
        elif v is MorrisonVerdict.CASE_III_U2_SUMMAND:
            text = f"Case (iii): T = U^2 ⊕ T', T' = {self.complement.tolist()}"
        else:
            text = f"NotClassified(bound={self.search_bound})"
        return text

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "rho": self.rho,
            "search_bound": self.search_bound,
            "complement": self.complement.to_json() if self.complement is not None else None,
            "k3_signature": self.k3_signature,
            "text": self.describe(),
        }


def morrison_classify(T, search_bound=DEFAULT_SEARCH_BOUND) -> MorrisonClass:
    """Sort a transcendental lattice into the cases of Morrison's criterion.

    rho = 22 - rank(T). Ranks 2 and 3 are case (i); rank 4 needs one
    hyperbolic plane split off, rank 5 two. Larger ranks and failed bounded
    searches give NOT_CLASSIFIED.

    T must be nondegenerate with one or two positive directions and rank
    between 2 and 22; ``k3_signature`` records whether it has exactly two.
    """
    T = lattice(T)
    pos, neg, zero = T.inertia()
    if zero or pos not in (1, 2) or not 2 <= T.rank <= 22:
        raise WrongInertiaError(
            f"inertia ({pos},{neg},{zero}) of rank {T.rank} is not that of a transcendental lattice"
        )
    rho = 22 - T.rank
    k3 = pos == 2

    def result(verdict, complement=None):
        return MorrisonClass(verdict, rho, search_bound, complement, k3)

    if rho == 20:
        return result(MorrisonVerdict.CASE_I_RHO20)
    if rho == 19:
        return result(MorrisonVerdict.CASE_I_RHO19)
    if rho in (17, 18):
        split = find_hyperbolic_summand(T, search_bound)
        if split is None:
            return result(MorrisonVerdict.NOT_CLASSIFIED)
        if rho == 18:
            return result(MorrisonVerdict.CASE_II_U_SUMMAND, split.complement)
        inner = find_hyperbolic_summand(split.complement, search_bound)
        if inner is None:
            return result(MorrisonVerdict.NOT_CLASSIFIED)
        return result(MorrisonVerdict.CASE_III_U2_SUMMAND, inner.complement)
    return result(MorrisonVerdict.NOT_CLASSIFIED)


def transcendental_consistency(T, surface, rho) -> bool:
    """Rank and signature check for a transcendental lattice.

    Abelian surfaces: rank 6 - rho, K3 surfaces: rank 22 - rho; the
    signature must be (2, rank - 2) in both cases.
    """
    T = lattice(T)
    surface = surface.lower()
    if surface == "abelian":
        if not 1 <= rho <= 4:
            raise LatticeError("abelian surfaces have 1 <= rho <= 4")
        expected_rank = 6 - rho
    elif surface == "k3":
        if not 1 <= rho <= 20:
            raise LatticeError("algebraic K3 surfaces have 1 <= rho <= 20")
        expected_rank = 22 - rho
    else:
        raise LatticeError(f"unknown surface kind {surface!r}")
    return T.rank == expected_rank and tuple(T.inertia()) == (2, expected_rank - 2, 0)


# --- text format ------------------------------------------------------------


def parse_gram(text) -> IntegralLattice:
    """Parse the Gram text format: a rank line, then that many rows.

    Everything after '#' on a line is ignored, as are blank lines.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise GramFormatError("empty Gram file", 1)
    lineno, first = lines[0]
    try:
        r = int(first)
    except ValueError:
        raise GramFormatError(f"expected the rank, got {first!r}", lineno) from None
    if r < 0:
        raise GramFormatError("rank must be nonnegative", lineno)
    rows = []
    for lineno, body in lines[1:]:
        if len(rows) == r:
            raise GramFormatError("more rows than the stated rank", lineno)
        try:
            row = [int(tok) for tok in body.split()]
        except ValueError:
            raise GramFormatError(f"non-integer entry in {body!r}", lineno) from None
        if len(row) != r:
            raise GramFormatError(f"expected {r} entries, got {len(row)}", lineno)
        rows.append((lineno, row))
    if len(rows) != r:
        last = lines[-1][0]
        raise GramFormatError(f"expected {r} rows, got {len(rows)}", last)
    for i in range(r):
        for j in range(i):
            if rows[i][1][j] != rows[j][1][i]:
                raise GramFormatError(f"Gram matrix not symmetric at ({j + 1},{i + 1})", rows[i][0])
    return IntegralLattice(IntegerMatrix([row for _, row in rows], ncols=r))


def format_gram(L) -> str:
    L = lattice(L)
    g = L.tolist()
    width = max((len(str(x)) for row in g for x in row), default=1)
    lines = [str(L.rank)] + [" ".join(str(x).rjust(width) for x in row) for row in g]
    return "\n".join(lines) + "\n"


def read_gram(path) -> IntegralLattice:
    with open(path, encoding="utf-8") as fh:
        return parse_gram(fh.read())
