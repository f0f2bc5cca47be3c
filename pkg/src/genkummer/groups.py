"""Finite groups from explicit multiplication tables.

Only the seven groups that can produce generalized Kummer surfaces are in
the catalog: Z2, Z3, Z4, Z6, Q8, Q12 and T24. Every query is a plain table
scan, which is cheap at order <= 24.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from collections import Counter
from itertools import product

CATALOG = ("Z2", "Z3", "Z4", "Z6", "Q8", "Q12", "T24")

# subgroup kinds that occur as point stabilizers, in singularity-index order
STABILIZER_KINDS = ("Z2", "Z3", "Z4", "Z6", "Q8", "Q12", "T24")

SING_TYPE = {
    "Z2": "A1",
    "Z3": "A2",
    "Z4": "A3",
    "Z6": "A5",
    "Q8": "D4",
    "Q12": "D5",
    "T24": "E6",
}

# element-order census (order -> count) identifying each kind up to isomorphism
_CENSUS = {
    "Z2": {1: 1, 2: 1},
    "Z3": {1: 1, 3: 2},
    "Z4": {1: 1, 2: 1, 4: 2},
    "Z6": {1: 1, 2: 1, 3: 2, 6: 2},
    "Q8": {1: 1, 2: 1, 4: 6},
    "Q12": {1: 1, 2: 1, 3: 2, 4: 6, 6: 2},
    "T24": {1: 1, 2: 1, 3: 8, 4: 6, 6: 8},
}


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group as a Cayley table on element indices.

    ``table[a][b]`` is the index of ``a * b``. The group axioms are checked
    on construction.
    """

    name: str
    names: tuple
    table: tuple
    identity: int = 0

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupError("table must be order x order")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise GroupError("table entry out of range")
        e = self.identity
        if any(self.table[e][a] != a or self.table[a][e] != a for a in range(n)):
            raise GroupError("identity axiom fails")
        for a in range(n):
            if e not in self.table[a]:
                raise GroupError(f"element {self.names[a]} has no inverse")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                tab = t[ab]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError("table is not associative")

    @property
    def order(self):
        return len(self.names)

    def mul(self, a, b):
        return self.table[a][b]

    @cached_property
    def inverses(self):
        return tuple(self.table[a].index(self.identity) for a in range(self.order))

    def inv(self, a):
        return self.inverses[a]

    def conj(self, g, x):
        """x^-1 g x."""
        return self.table[self.table[self.inverses[x]][g]][x]

    @cached_property
    def element_orders(self):
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a):
        return self.element_orders[a]

    def index_of(self, name):
        return self.names.index(name)

    def is_subgroup(self, subset):
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.table[a][self.inverses[b]] in s for a in s for b in s)

    def generated(self, gens):
        """Subgroup generated by ``gens`` as a sorted tuple of indices."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))


@dataclass(frozen=True)
class StabilizerClass:
    subgroup: tuple
    kind: str
    index_m: int
    sing_type: str
    class_size: int = 1


@dataclass(frozen=True)
class CyclicSubgroupClass:
    subgroup: tuple
    generator: int
    kind: str
    class_size: int
    normalizer_order: int


@dataclass(frozen=True)
class SubgroupClass:
    subgroup: tuple
    kind: object  # catalog kind name, or None for other isomorphism types
    members: tuple = field(default=())

    @property
    def order(self):
        return len(self.subgroup)


# --- construction ---------------------------------------------------------


def _cyclic(k):
    names = ["1"] + ["g" if i == 1 else f"g^{i}" for i in range(1, k)]
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    return FiniteGroupTable(f"Z{k}", tuple(names), table)


def _dicyclic(m):
    """Q_{4m} = <a, b | a^{2m} = 1, b^2 = a^m, b a b^-1 = a^-1>.

    Element a^i b^s has index i + 2m*s.
    """
    n2 = 2 * m

    def idx(i, s):
        return i % n2 + n2 * s

    def mul(x, y):
        i, s = x % n2, x // n2
        j, t = y % n2, y // n2
        if s == 0:
            return idx(i + j, t)
        # b a^j = a^-j b
        if t == 0:
            return idx(i - j, 1)
        return idx(i - j + m, 0)

    def label(i, s):
        a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if s == 0:
            return a or "1"
        return a + "b"

    names = [label(i % n2, i // n2) for i in range(2 * n2)]
    table = [[mul(x, y) for y in range(2 * n2)] for x in range(2 * n2)]
    return FiniteGroupTable(f"Q{4 * m}", tuple(names), table)


def _quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _quat_label(q):
    if all(x.denominator == 1 for x in q):
        for coef, unit in zip(q, ("1", "i", "j", "k")):
            if coef:
                return ("-" if coef < 0 else "") + unit
    signs = "".join("+" if x > 0 else "-" for x in q)
    return "({}1{}i{}j{}k)/2".format(*signs).replace("(+", "(")


def hurwitz_units():
    """The 24 unit Hurwitz quaternions as 4-tuples of Fractions."""
    half = Fraction(1, 2)
    units = []
    for pos in range(4):
        for sgn in (1, -1):
            q = [Fraction(0)] * 4
            q[pos] = Fraction(sgn)
            units.append(tuple(q))
    for signs in product((1, -1), repeat=4):
        units.append(tuple(s * half for s in signs))
    return units


def _binary_tetrahedral():
    units = hurwitz_units()
    lookup = {q: i for i, q in enumerate(units)}
    table = [[lookup[_quat_mul(p, q)] for q in units] for p in units]
    names = tuple(_quat_label(q) for q in units)
    return FiniteGroupTable("T24", names, table, identity=lookup[(1, 0, 0, 0)])


def build_group(name) -> FiniteGroupTable:
    if name not in CATALOG:
        raise GroupError(f"unknown group {name!r}; expected one of {', '.join(CATALOG)}")
    if name.startswith("Z"):
        return _cyclic(int(name[1:]))
    if name == "Q8":
        return _dicyclic(2)
    if name == "Q12":
        return _dicyclic(3)
    return _binary_tetrahedral()


# --- structure queries ----------------------------------------------------


def conjugacy_classes(G):
    """Conjugacy classes as sorted index tuples, ordered by element order, then size."""
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        cls = tuple(sorted({G.conj(g, x) for x in range(G.order)}))
        seen.update(cls)
        classes.append(cls)
    classes.sort(key=lambda c: (G.element_order(c[0]), len(c), c))
    return classes


def subgroup_kind(G, subgroup):
    """Catalog isomorphism type of a subgroup, or None."""
    census = dict(Counter(G.element_order(a) for a in subgroup))
    for kind, expected in _CENSUS.items():
        if census == expected:
            return kind
    return None


def normalizer(G, subgroup):
    s = set(subgroup)
    return tuple(
        x for x in range(G.order) if all(G.conj(h, x) in s for h in subgroup)
    )


def conjugates(G, subgroup):
    return sorted({tuple(sorted(G.conj(h, x) for h in subgroup)) for x in range(G.order)})


def all_subgroups(G):
    """Every subgroup, found by closing cyclic subgroups under joins."""
    subs = {G.generated([g]) for g in range(G.order)}
    frontier = set(subs)
    while frontier:
        new = set()
        for H in frontier:
            hs = set(H)
            for g in range(G.order):
                if g not in hs:
                    K = G.generated(list(H) + [g])
                    if K not in subs:
                        new.add(K)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda s: (len(s), s))


def subgroup_classes(G):
    """Conjugacy classes of subgroups, each keyed by its smallest member."""
    out = []
    seen = set()
    for H in all_subgroups(G):
        if H in seen:
            continue
        members = tuple(conjugates(G, H))
        seen.update(members)
        out.append(SubgroupClass(members[0], subgroup_kind(G, members[0]), members))
    return out


def cyclic_subgroup_classes(G):
    """Conjugacy classes of nontrivial cyclic subgroups with normalizer orders."""
    reps = {}
    for g in range(G.order):
        if g == G.identity:
            continue
        H = G.generated([g])
        rep = conjugates(G, H)[0]
        if rep not in reps:
            gen = next(x for x in rep if G.element_order(x) == len(rep))
            reps[rep] = CyclicSubgroupClass(
                subgroup=rep,
                generator=gen,
                kind=f"Z{len(rep)}",
                class_size=len(conjugates(G, rep)),
                normalizer_order=len(normalizer(G, rep)),
            )
    return sorted(reps.values(), key=lambda c: (len(c.subgroup), c.subgroup))


def stabilizer_classes(G):
    """Subgroup classes whose type can be a point stabilizer, with ADE labels.

    Sorted in singularity-index order (A1, A2, A3, A5, D4, D5, E6), ties
    broken by the sorted index tuple of the class representative.
    """
    if G.name not in CATALOG:
        raise GroupError(f"{G.name!r} is not a catalog group")
    out = []
    for sc in subgroup_classes(G):
        if len(sc.subgroup) == 1:
            continue
        if sc.kind is None:
            # Klein four and friends never occur inside catalog groups
            raise GroupError(f"non-catalog subgroup of order {sc.order} in {G.name}")
        out.append(
            StabilizerClass(
                subgroup=sc.subgroup,
                kind=sc.kind,
                index_m=G.order // sc.order,
                sing_type=SING_TYPE[sc.kind],
                class_size=len(sc.members),
            )
        )
    out.sort(key=lambda s: (STABILIZER_KINDS.index(s.kind), s.subgroup))
    return out


def left_cosets(G, H):
    seen = set()
    reps = []
    for x in range(G.order):
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.mul(x, h) for h in H)
    return reps


def fixed_cosets(G, g, H):
    """Number of cosets xH fixed by left multiplication with g, i.e. x^-1 g x in H."""
    if not G.is_subgroup(H):
        raise GroupError("H is not a subgroup")
    hs = set(H)
    return sum(1 for x in left_cosets(G, H) if G.conj(g, x) in hs)


def class_label(G, cls):
    return G.names[cls[0]]


def group_info(G):
    """Summary used by the CLI ``group info`` command."""
    classes = conjugacy_classes(G)
    return {
        "group": G.name,
        "order": G.order,
        "class_sizes": [len(c) for c in classes],
        "classes": [
            {"representative": class_label(G, c), "order": G.element_order(c[0]), "size": len(c)}
            for c in classes
        ],
        "stabilizer_classes": [
            {
                "kind": s.kind,
                "m": s.index_m,
                "sing_type": s.sing_type,
                "conjugates": s.class_size,
                "elements": [G.names[i] for i in s.subgroup],
            }
            for s in stabilizer_classes(G)
        ],
    }
