"""Rebuilding a lattice from its join-irreducible data.

A finite lattice is recovered, up to isomorphism, from the poset of its
join-irreducibles plus a base of lines: the map a -> {p join-irreducible,
p <= a} is an isomorphism onto the family of order ideals closed under
the line constraints, ordered by inclusion.  This module turns such
families back into lattices and provides the implication-base view of the
same closure system (Horn clauses over the points).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bol import canonical_bol
from .lattice import build_lattice, is_isomorphic, ji_below, ji_elements
from .wildcard import GroundPoset, enumerate_ideals, rowset_bitstrings


class NotAClosureSystem(Exception):
    pass


def _skey(x):
    return (x.__class__.__name__, str(x))


def _member_name(s):
    return "{" + ",".join(str(e) for e in sorted(s, key=_skey)) + "}"


def closed_ideals_lattice(members):
    """The lattice an intersection-closed family forms under inclusion.

    The family must contain the empty set and be closed under pairwise
    intersection; joins exist whenever the family has a top, which the
    lattice constructor verifies.  The canonical member order is attached
    to the result as `member_sets`."""
    canon = sorted({frozenset(m) for m in members},
                   key=lambda s: (len(s), tuple(sorted(map(str, s)))))
    if not canon or canon[0] != frozenset():
        raise NotAClosureSystem("the empty set must be a member")
    index = {s: i for i, s in enumerate(canon)}
    for i, a in enumerate(canon):
        for b in canon[i + 1 :]:
            if a & b not in index:
                raise NotAClosureSystem(
                    f"intersection of {_member_name(a)} and {_member_name(b)} is missing"
                )
    covers = []
    for i, a in enumerate(canon):
        for j, b in enumerate(canon):
            if a >= b or a == b:
                continue
            if a < b and not any(a < c < b for c in canon):
                covers.append((i, j))
    L = build_lattice([_member_name(s) for s in canon], covers)
    L.member_sets = tuple(canon)
    return L


def ji_ground_poset(L):
    """The join-irreducibles of L as a ground poset (their inclusion
    order, transitively reduced), plus the element ids in position order."""
    points = sorted(ji_elements(L))
    pos = {p: i for i, p in enumerate(points)}
    covers = []
    for p in points:
        for q in points:
            if p == q or not L.leq(p, q):
                continue
            if not any(r != p and r != q and L.leq(p, r) and L.leq(r, q) for r in points):
                covers.append((pos[p], pos[q]))
    poset = GroundPoset(len(points), tuple(covers), tuple(L.name(p) for p in points))
    return poset, tuple(points)


def roundtrip_check(L):
    """Rebuild L from its join-irreducible poset and canonical base of
    lines; true when the closed-ideal family matches the ideal map a ->
    {p <= a} and the rebuilt lattice is isomorphic to L."""
    B = canonical_bol(L)
    poset, points = ji_ground_poset(L)
    pos = {p: i for i, p in enumerate(points)}
    lines = [tuple(sorted(pos[p] for p in ln)) for ln in B.lines]
    rows = enumerate_ideals(poset, lines)
    members = {
        frozenset(points[i] for i in range(poset.width) if bits[i])
        for bits in rowset_bitstrings(rows)
    }
    ideal_map = {frozenset(ji_below(L, a)) for a in range(L.n)}
    if members != ideal_map or len(members) != L.n:
        return False
    return is_isomorphic(L, closed_ideals_lattice(members))


# -- implication view ---------------------------------------------------


@dataclass(frozen=True)
class Implication:
    premise: frozenset
    conclusion: frozenset


def natural_implication_base(B, poset=None):
    """The stock Horn base for the closure system of closed ideals.

    One implication {p} -> (strict down-set of p) per non-minimal point,
    and one {p,q} -> l per unordered pair of a line l.  The point order
    comes from the lattice behind B, or from `poset` (positions resolved
    against sorted points) when B was built externally."""
    pts = sorted(B.points, key=_skey)
    if poset is not None:
        downs = {
            p: frozenset(pts[q] for q in poset.strict_down[i])
            for i, p in enumerate(pts)
        }
    else:
        L = B.lattice
        downs = {
            p: frozenset(q for q in pts if q != p and L.leq(q, p)) for p in pts
        }
    out = []
    for p in pts:
        if downs[p]:
            out.append(Implication(frozenset([p]), downs[p]))
    for ln in B.lines:
        mem = sorted(ln, key=_skey)
        for i, p in enumerate(mem):
            for q in mem[i + 1 :]:
                out.append(Implication(frozenset([p, q]), frozenset(ln)))
    return tuple(out)


def horn_closure(implications, xs):
    """Least superset of xs stable under every implication."""
    closed = set(xs)
    changed = True
    while changed:
        changed = False
        for imp in implications:
            if imp.premise <= closed and not imp.conclusion <= closed:
                closed |= imp.conclusion
                changed = True
    return frozenset(closed)


def implication_base_size(implications):
    """s(Sigma) = sum of premise and conclusion cardinalities."""
    return sum(len(i.premise) + len(i.conclusion) for i in implications)


def implications_to_json(implications):
    return [
        {"if": sorted(i.premise, key=_skey), "then": sorted(i.conclusion, key=_skey)}
        for i in implications
    ]


def implications_from_json(data):
    return tuple(
        Implication(frozenset(d["if"]), frozenset(d["then"])) for d in data
    )
