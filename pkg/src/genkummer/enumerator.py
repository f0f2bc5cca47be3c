"""Singularity configurations on quotients A/G of abelian surfaces.

A configuration is the vector (n1, ..., n7) counting singular points of
types A1, A2, A3, A5, D4, D5, E6 on A/G. A configuration is admissible for G
when it satisfies

* the Euler equation ``|G| * (24 - sum chi_i n_i) + sum m_i n_i = 0``,
* the rank bound ``sum rank_i n_i <= 19`` on the (-2)-curve lattice, and
* one Lefschetz equation per nontrivial conjugacy class [g] of G: the
  points of A fixed by g, counted orbit by orbit through the coset action
  on G/H_i, must add up to ``|det(I - M_k)|`` for k = ord(g).
"""

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .exact_core import IntegerMatrix, block_diagonal, determinant
from .groups import (
    CATALOG,
    GroupError,
    build_group,
    class_label,
    conjugacy_classes,
    fixed_cosets,
    stabilizer_classes,
)

RANK_BOUND = 19
CONSTRAINTS = frozenset({"euler", "rank", "lefschetz"})
FULL = CONSTRAINTS


@dataclass(frozen=True)
class SingularityType:
    index_i: int
    label: str
    rank: int
    stabilizer_kind: str

    @property
    def euler_chi(self):
        # exceptional locus is a tree of `rank` rational curves
        return self.rank + 1


SINGULARITY_TYPES = (
    SingularityType(1, "A1", 1, "Z2"),
    SingularityType(2, "A2", 2, "Z3"),
    SingularityType(3, "A3", 3, "Z4"),
    SingularityType(4, "A5", 5, "Z6"),
    SingularityType(5, "D4", 4, "Q8"),
    SingularityType(6, "D5", 5, "Q12"),
    SingularityType(7, "E6", 6, "T24"),
)
RANKS = tuple(t.rank for t in SINGULARITY_TYPES)
EULER_CHI = tuple(t.euler_chi for t in SINGULARITY_TYPES)
LABELS = tuple(t.label for t in SINGULARITY_TYPES)
_KIND_TO_TYPE = {t.stabilizer_kind: t.index_i - 1 for t in SINGULARITY_TYPES}

assert RANKS == (1, 2, 3, 5, 4, 5, 6)
assert EULER_CHI == (2, 3, 4, 6, 5, 6, 7)


@dataclass(frozen=True, order=True)
class SingularityConfiguration:
    counts: tuple = (0,) * 7

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 7:
            raise ValueError("a configuration has exactly 7 counts")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def parse(cls, text):
        """Parse a formal sum like ``"A1 + 2A2 + 3A3 + D5"``."""
        counts = [0] * 7
        text = text.strip()
        if text in ("", "0"):
            return cls(tuple(counts))
        for term in text.split("+"):
            m = re.fullmatch(r"\s*(\d*)\s*([ADE]\d)\s*", term)
            if not m or m.group(2) not in LABELS:
                raise ValueError(f"cannot parse term {term.strip()!r}")
            counts[LABELS.index(m.group(2))] += int(m.group(1) or 1)
        return cls(tuple(counts))

    @property
    def formal_sum(self):
        terms = [
            (f"{n}" if n > 1 else "") + label
            for n, label in zip(self.counts, LABELS)
            if n
        ]
        return " + ".join(terms) if terms else "0"

    def __str__(self):
        return self.formal_sum


@dataclass
class ConstraintReport:
    euler_residual: int
    n_total: int
    rank_sum: int
    lefschetz_residuals: dict = field(default_factory=dict)

    @property
    def satisfied(self):
        return (
            self.euler_residual == 0
            and self.rank_sum <= RANK_BOUND
            and all(v == 0 for v in self.lefschetz_residuals.values())
        )


def _as_config(config):
    if isinstance(config, SingularityConfiguration):
        return config
    if isinstance(config, str):
        return SingularityConfiguration.parse(config)
    return SingularityConfiguration(tuple(config))


def _as_group(G):
    return build_group(G) if isinstance(G, str) else G


# --- fixed-point counts -----------------------------------------------------


def companion_cyclotomic(k):
    """2x2 companion matrix of the k-th cyclotomic polynomial, k in {3, 4, 6}."""
    # Phi_3 = x^2 + x + 1, Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1
    c1 = {3: 1, 4: 0, 6: -1}[k]
    return IntegerMatrix([[0, -1], [1, -c1]])


def homology_action(k):
    """Integral 4x4 model of an order-k symplectic automorphism on H_1(A)."""
    if k == 2:
        return IntegerMatrix.identity(4).scale(-1)
    if k in (3, 4, 6):
        c = companion_cyclotomic(k)
        return block_diagonal(c, c)
    raise ValueError(f"no symplectic automorphism of order {k} in the catalog")


@lru_cache(maxsize=None)
def lefschetz_number(k):
    """Fixed points on A of a symplectic automorphism of order k: |det(I - M_k)|."""
    m = homology_action(k)
    eye = IntegerMatrix.identity(4)
    return abs(determinant([[eye[i, j] - m[i, j] for j in range(4)] for i in range(4)]))


# --- per-group data ---------------------------------------------------------


@dataclass(frozen=True)
class _GroupData:
    order: int
    present: tuple          # type indices realised by some stabilizer class
    index_m: tuple          # m_i per type (0 if absent)
    class_labels: tuple     # nontrivial conjugacy classes
    class_orders: tuple
    coeff: tuple            # coeff[c][i] = fixed_cosets(G, g_c, H_i), representative H_i
    split: tuple            # per type: tuple of per-class coefficient columns


@lru_cache(maxsize=None)
def _group_data(name):
    G = build_group(name)
    stabs = stabilizer_classes(G)
    by_type = {}
    for s in stabs:
        by_type.setdefault(_KIND_TO_TYPE[s.kind], []).append(s)
    classes = [c for c in conjugacy_classes(G) if c[0] != G.identity]
    index_m = [0] * 7
    coeff = [[0] * 7 for _ in classes]
    split = [() for _ in range(7)]
    for i, group_stabs in by_type.items():
        index_m[i] = group_stabs[0].index_m
        cols = []
        for s in group_stabs:
            cols.append(tuple(fixed_cosets(G, c[0], s.subgroup) for c in classes))
        split[i] = tuple(cols)
        # a type with several subgroup classes is charged to the first one
        for ci in range(len(classes)):
            coeff[ci][i] = cols[0][ci]
    return _GroupData(
        order=G.order,
        present=tuple(sorted(by_type)),
        index_m=tuple(index_m),
        class_labels=tuple(class_label(G, c) for c in classes),
        class_orders=tuple(G.element_order(c[0]) for c in classes),
        coeff=tuple(tuple(r) for r in coeff),
        split=tuple(split),
    )


def _check_compatible(data, counts, name):
    for i, n in enumerate(counts):
        if n and i not in data.present:
            raise ValueError(
                f"type {LABELS[i]} needs a {SINGULARITY_TYPES[i].stabilizer_kind} "
                f"stabilizer, which {name} does not have"
            )


def n_total(G, config):
    """Total number of points of A with nontrivial stabilizer: sum m_i n_i."""
    G = _as_group(G)
    counts = _as_config(config).counts
    data = _group_data(G.name)
    _check_compatible(data, counts, G.name)
    return sum(m * n for m, n in zip(data.index_m, counts))


def euler_residual(G, config):
    """|G| * (24 - sum chi_i n_i) + sum m_i n_i; zero for admissible configurations."""
    G = _as_group(G)
    counts = _as_config(config).counts
    chi = sum(c * n for c, n in zip(EULER_CHI, counts))
    return G.order * (24 - chi) + n_total(G, counts)


def rank_sum(config):
    return sum(r * n for r, n in zip(RANKS, _as_config(config).counts))


def lefschetz_residuals(G, config):
    """Fixed-point defect per nontrivial conjugacy class, keyed by representative name.

    When several subgroup classes share a type (the three Z4 classes of Q8),
    all points of that type are charged to the first class in canonical order.
    """
    G = _as_group(G)
    counts = _as_config(config).counts
    data = _group_data(G.name)
    _check_compatible(data, counts, G.name)
    return {
        label: sum(c * n for c, n in zip(row, counts)) - lefschetz_number(k)
        for label, k, row in zip(data.class_labels, data.class_orders, data.coeff)
    }


def lefschetz_split_feasible(G, config):
    """Whether the points of each type can be spread over that type's subgroup
    classes so that every Lefschetz equation holds."""
    G = _as_group(G)
    counts = _as_config(config).counts
    data = _group_data(G.name)
    _check_compatible(data, counts, G.name)
    targets = [lefschetz_number(k) for k in data.class_orders]
    choices = []
    for i, n in enumerate(counts):
        cols = data.split[i]
        if not n:
            continue
        choices.append([
            [sum(part[j] * cols[j][c] for j in range(len(cols))) for c in range(len(targets))]
            for part in _compositions(n, len(cols))
        ])
    for combo in product(*choices):
        if all(sum(v[c] for v in combo) == targets[c] for c in range(len(targets))):
            return True
    return not choices and all(t == 0 for t in targets)


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def check_constraints(G, config):
    G = _as_group(G)
    config = _as_config(config)
    return ConstraintReport(
        euler_residual=euler_residual(G, config),
        n_total=n_total(G, config),
        rank_sum=rank_sum(config),
        lefschetz_residuals=lefschetz_residuals(G, config),
    )


def picard_lower_bound(config):
    """Exceptional curve classes plus one polarization class."""
    return 1 + rank_sum(config)


# --- enumeration ------------------------------------------------------------


def _parse_constraints(constraints):
    if isinstance(constraints, str):
        constraints = {"full": FULL, "euler+rank": {"euler", "rank"}}.get(
            constraints, constraints.split("+")
        )
    cs = frozenset(constraints)
    if not cs:
        raise ValueError("at least one constraint is required")
    unknown = cs - CONSTRAINTS
    if unknown:
        raise ValueError(f"unknown constraints: {sorted(unknown)}")
    return cs


def _scan(name, constraints, split_classes, first_values):
    data = _group_data(name)
    present = data.present
    caps = [RANK_BOUND // RANKS[i] for i in present]
    use_rank = "rank" in constraints
    use_euler = "euler" in constraints
    use_lef = "lefschetz" in constraints
    targets = [lefschetz_number(k) for k in data.class_orders]
    # euler residual is linear: |G|*24 - sum w_i n_i
    weights = [data.order * EULER_CHI[i] - data.index_m[i] for i in range(7)]
    base = 24 * data.order
    out = []
    counts = [0] * 7

    def rec(pos, rank_acc):
        if pos == len(present):
            if use_euler and base - sum(w * n for w, n in zip(weights, counts)):
                return
            if use_lef:
                if split_classes:
                    if not lefschetz_split_feasible(name, counts):
                        return
                else:
                    for row, t in zip(data.coeff, targets):
                        if sum(c * n for c, n in zip(row, counts)) != t:
                            return
            out.append(tuple(counts))
            return
        i = present[pos]
        values = first_values if pos == 0 else range(caps[pos] + 1)
        for v in values:
            r = rank_acc + RANKS[i] * v
            if use_rank and r > RANK_BOUND:
                break
            counts[i] = v
            rec(pos + 1, r)
        counts[i] = 0

    rec(0, 0)
    return out


def enumerate_configurations(G, constraints=FULL, *, split_classes=False, workers=1):
    """All configurations in the box 0 <= n_i <= 19 // rank_i meeting ``constraints``.

    ``constraints`` is a subset of {"euler", "rank", "lefschetz"} or one of
    the strings "full", "euler+rank", "euler". With ``split_classes`` the
    Lefschetz test asks for some distribution of each type over its subgroup
    classes instead of charging the first class. Results are sorted and do
    not depend on ``workers``.
    """
    G = _as_group(G)
    if G.name not in CATALOG:
        raise GroupError(f"{G.name!r} is not a catalog group")
    cs = _parse_constraints(constraints)
    data = _group_data(G.name)
    first_cap = RANK_BOUND // RANKS[data.present[0]]
    firsts = list(range(first_cap + 1))
    if workers <= 1:
        found = _scan(G.name, cs, split_classes, firsts)
    else:
        chunks = [firsts[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan, *zip(*[(G.name, cs, split_classes, c) for c in chunks if c]))
            found = [x for part in parts for x in part]
    return [SingularityConfiguration(c) for c in sorted(found)]


# --- reproduction report ----------------------------------------------------

EXPECTED = {
    "Z2": ("16A1",),
    "Z3": ("9A2",),
    "Z4": ("6A1 + 4A3",),
    "Z6": ("5A1 + 4A2 + A5",),
    "Q8": ("3A1 + 4D4",),
    "Q12": ("A1 + 2A2 + 3A3 + D5",),
    "T24": ("4A2 + 2A3 + A5", "A1 + 4A2 + D4 + E6"),
}
NONCYCLIC = ("Q8", "Q12", "T24")


def solution_record(G, config):
    config = _as_config(config)
    return {
        "counts": list(config.counts),
        "formal_sum": config.formal_sum,
        "rank_sum": rank_sum(config),
        "n_total": n_total(G, config),
        "picard_lower_bound": picard_lower_bound(config),
    }


def verify_proposition3(constraints=FULL, *, split_classes=False, workers=1):
    """Enumerate every catalog group and compare with the expected lists.

    Returns ``{"groups": [...], "ok": bool}``; each group row follows the
    report schema (group, solutions, expected, match) plus the Picard check.
    """
    rows = []
    ok = True
    for name in CATALOG:
        G = build_group(name)
        sols = enumerate_configurations(G, constraints, split_classes=split_classes, workers=workers)
        got = sorted(s.counts for s in sols)
        expected = sorted(SingularityConfiguration.parse(e).counts for e in EXPECTED[name])
        bounds = [picard_lower_bound(s) for s in sols]
        if name in NONCYCLIC:
            picard_ok = bool(bounds) and all(b == 20 for b in bounds)
        elif name == "Z2":
            picard_ok = True
        else:
            picard_ok = bool(bounds) and all(b >= 19 for b in bounds)
        match = got == expected
        ok = ok and match and picard_ok
        rows.append({
            "group": name,
            "solutions": [solution_record(G, s) for s in sols],
            "expected": [SingularityConfiguration(c).formal_sum for c in expected],
            "match": match,
            "picard_ok": picard_ok,
        })
    return {"groups": rows, "ok": ok}
