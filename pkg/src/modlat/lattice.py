"""Finite lattices as explicit combinatorial objects.

A lattice is built from its cover relation on dense integer element ids
0..n-1.  The full order, join/meet tables and ranks are derived and cached
at construction time; instances are immutable afterwards and safe to share
between threads.  Everything here targets desk scale (a few hundred
elements) and favours clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class LatticeError(Exception):
    """Base class for lattice construction and validation failures."""


class CycleInCovers(LatticeError):
    pass


class NotTransitivelyReduced(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class NotModular(LatticeError):
    pass


class SizeCapExceeded(LatticeError):
    pass


class CapExceeded(LatticeError):
    """Some enumeration outgrew its configured cap."""


@dataclass(frozen=True)
class JoinIrreducible:
    """An element with exactly one lower cover, which is `lower_star`."""

    elem: int
    lower_star: int


class Lattice:
    """A finite lattice given by its cover relation.

    `covers` is a set of (lower, upper) pairs that must already be the
    transitive reduction of the order.  Construction validates acyclicity,
    reducedness and existence of all joins and meets.
    """

    def __init__(self, n, covers, names=None):
        if n <= 0:
            raise NotALattice("a lattice needs at least one element")
        covers = sorted(set((int(a), int(b)) for a, b in covers))
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise NotALattice(f"cover ({a},{b}) out of range for n={n}")
            if a == b:
                raise CycleInCovers(f"self-loop at {a}")
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n:
                raise NotALattice("names length does not match element count")
        self.n = n
        self.names = names
        self.covers = tuple(covers)
        self._upcov = [[] for _ in range(n)]
        self._lowcov = [[] for _ in range(n)]
        for a, b in covers:
            self._upcov[a].append(b)
            self._lowcov[b].append(a)

        topo = self._topo_order()
        # inclusive up-sets, computed top-down
        up = [None] * n
        for v in reversed(topo):
            s = {v}
            for w in self._upcov[v]:
                s |= up[w]
            up[v] = frozenset(s)
        self._up = up
        down = [set() for _ in range(n)]
        for v in range(n):
            for w in up[v]:
                down[w].add(v)
        self._down = [frozenset(s) for s in down]

        for a, b in covers:
            # a shortcut through a third element means (a,b) is redundant
            if len(self._up[a] & self._down[b]) > 2:
                raise NotTransitivelyReduced(f"cover ({a},{b}) is implied")

        self._join = [[0] * n for _ in range(n)]
        self._meet = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                j = self._bound(self._up[x] & self._up[y], self._up, x, y, "upper")
                m = self._bound(self._down[x] & self._down[y], self._down, x, y, "lower")
                self._join[x][y] = self._join[y][x] = j
                self._meet[x][y] = self._meet[y][x] = m

        self.rank = [0] * n
        for v in topo:
            if self._lowcov[v]:
                self.rank[v] = 1 + max(self.rank[u] for u in self._lowcov[v])
        self.rank = tuple(self.rank)
        self.bottom = min(range(n), key=lambda v: len(self._down[v]))
        self.top = min(range(n), key=lambda v: len(self._up[v]))

    def _topo_order(self):
        indeg = [len(self._lowcov[v]) for v in range(self.n)]
        order = [v for v in range(self.n) if indeg[v] == 0]
        i = 0
        while i < len(order):
            for w in self._upcov[order[i]]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
            i += 1
        if len(order) != self.n:
            raise CycleInCovers("cover relation contains a directed cycle")
        return order

    @staticmethod
    def _bound(common, cone, x, y, side):
        for u in common:
            if all(v in cone[u] for v in common):
                return u
        raise NotALattice(f"elements {x},{y} have no least {side} bound")

    # -- basic queries ------------------------------------------------

    def leq(self, x, y):
        return y in self._up[x]

    def join(self, x, y):
        return self._join[x][y]

    def meet(self, x, y):
        return self._meet[x][y]

    def join_all(self, xs):
        acc = self.bottom
        for x in xs:
            acc = self._join[acc][x]
        return acc

    def meet_all(self, xs):
        acc = self.top
        for x in xs:
            acc = self._meet[acc][x]
        return acc

    def upper_covers(self, x):
        return tuple(self._upcov[x])

    def lower_covers(self, x):
        return tuple(self._lowcov[x])

    def up_set(self, x):
        return self._up[x]

    def down_set(self, x):
        return self._down[x]

    def name(self, x):
        return self.names[x] if self.names else str(x)

    @cached_property
    def atoms(self):
        return tuple(self._upcov[self.bottom])

    @cached_property
    def coatoms(self):
        return tuple(self._lowcov[self.top])

    @cached_property
    def height(self):
        return self.rank[self.top]

    @cached_property
    def modular(self):
        # x <= z  =>  x + (y*z) = (x+y)*z
        for z in range(self.n):
            for x in self._down[z]:
                jx, mz = self._join[x], self._meet[z]
                for y in range(self.n):
                    if jx[self._meet[y][z]] != mz[jx[y]]:
                        return False
        return True

    @cached_property
    def cover_set(self):
        return frozenset(self.covers)

    @cached_property
    def join_irreducible_list(self):
        out = []
        for v in range(self.n):
            if len(self._lowcov[v]) == 1:
                out.append(JoinIrreducible(v, self._lowcov[v][0]))
        return tuple(out)

    def __repr__(self):
        return f"Lattice(n={self.n}, covers={len(self.covers)})"


def build_lattice(elements, covers, names=None):
    """Build and validate a lattice.

    `elements` is either an element count or a sequence of names.
    """
    if isinstance(elements, int):
        return Lattice(elements, covers, names)
    names = [str(e) for e in elements]
    return Lattice(len(names), covers, names)


def join(L, x, y):
    return L.join(x, y)


def meet(L, x, y):
    return L.meet(x, y)


def is_modular(L):
    return L.modular


def require_modular(L):
    if not L.modular:
        raise NotModular("operation requires a modular lattice")


def join_irreducibles(L):
    """All elements with exactly one lower cover, paired with that cover."""
    return L.join_irreducible_list


def ji_elements(L):
    return tuple(j.elem for j in L.join_irreducible_list)


def ji_below(L, a):
    """The join-irreducibles p with p <= a."""
    return tuple(j.elem for j in L.join_irreducible_list if L.leq(j.elem, a))


def ji_between(L, a, b):
    """The join-irreducibles p with p <= b but p not<= a."""
    return tuple(
        j.elem
        for j in L.join_irreducible_list
        if L.leq(j.elem, b) and not L.leq(j.elem, a)
    )


def lower_star(L, p):
    """The unique lower cover of a join-irreducible element."""
    lows = L.lower_covers(p)
    if len(lows) != 1:
        raise LatticeError(f"element {p} is not join-irreducible")
    return lows[0]


def transposes_up(L, quot1, quot2):
    """Whether the quotient quot1 = [a,b] transposes up to quot2 = [c,d].

    Defined for arbitrary quotients, not only prime ones: true iff
    d = b + c and a = b * c.
    """
    a, b = quot1
    c, d = quot2
    if not (L.leq(a, b) and L.leq(c, d)):
        raise LatticeError("transposes_up expects quotients a<=b, c<=d")
    return L.join(b, c) == d and L.meet(b, c) == a


def projectivity_classes(L):
    """Partition of the prime quotients under the transposition closure.

    Two covering pairs land in one class iff a chain of up/down
    transpositions links them.
    """
    quots = list(L.covers)
    idx = {q: i for i, q in enumerate(quots)}
    parent = list(range(len(quots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, q1 in enumerate(quots):
        for q2 in quots[i + 1 :]:
            if transposes_up(L, q1, q2) or transposes_up(L, q2, q1):
                ri, rj = find(i), find(idx[q2])
                if ri != rj:
                    parent[ri] = rj
    classes = {}
    for i, q in enumerate(quots):
        classes.setdefault(find(i), []).append(q)
    return [frozenset(v) for _, v in sorted((min(v), v) for v in classes.values())]


def is_isomorphic(L1, L2, cap=200):
    """Exact order-isomorphism test by backtracking.

    Candidates are pruned by (rank, cover degrees, cone sizes); no
    canonical-form hashing, so keep inputs at desk scale (`cap`).
    """
    if max(L1.n, L2.n) > cap:
        raise SizeCapExceeded(f"isomorphism test capped at {cap} elements")
    if L1.n != L2.n or len(L1.covers) != len(L2.covers):
        return False

    def invariant(L, v):
        return (
            L.rank[v],
            len(L.lower_covers(v)),
            len(L.upper_covers(v)),
            len(L.down_set(v)),
            len(L.up_set(v)),
        )

    inv1 = [invariant(L1, v) for v in range(L1.n)]
    inv2 = [invariant(L2, v) for v in range(L2.n)]
    if sorted(inv1) != sorted(inv2):
        return False
    cands = {v: [w for w in range(L2.n) if inv2[w] == inv1[v]] for v in range(L1.n)}
    order = sorted(range(L1.n), key=lambda v: len(cands[v]))
    assigned = {}
    used = set()

    def compatible(v, w):
        for v2, w2 in assigned.items():
            if L1.leq(v, v2) != L2.leq(w, w2) or L1.leq(v2, v) != L2.leq(w2, w):
                return False
            if ((v, v2) in L1.cover_set) != ((w, w2) in L2.cover_set):
                return False
            if ((v2, v) in L1.cover_set) != ((w2, w) in L2.cover_set):
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        for w in cands[v]:
            if w not in used and compatible(v, w):
                assigned[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del assigned[v]
                used.remove(w)
        return False

    return extend(0)


# -- serialization ----------------------------------------------------


def lattice_to_json(L):
    return {
        "names": [L.name(v) for v in range(L.n)],
        "covers": [[a, b] for a, b in L.covers],
    }


def lattice_from_json(data):
    names = data.get("names")
    covers = data["covers"]
    if names is None:
        n = 1 + max((max(a, b) for a, b in covers), default=0)
        return Lattice(n, covers)
    return Lattice(len(names), covers, names)


def lattice_to_dot(L, graph_name="lattice"):
    """Hasse diagram in DOT form, edges drawn bottom-to-top."""
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for v in range(L.n):
        lines.append(f'  n{v} [label="{L.name(v)}"];')
    for a, b in L.covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
