"""Partial linear spaces: point-line structures where two distinct lines
share at most one point.

Lines are index-addressed (position in the `lines` tuple); points may be
ints or strings.  Point ids of the form "+k" are reserved for the points
that `split_point` mints, so inputs should avoid that shape.

The cyclomatic number of the bipartite point-line incidence graph,
`rstar`, counts the independent cycles.  `acyclifier` removes them one by
one by splitting a point off a line that lies on a cycle; each split keeps
the incidence count and the component count, adds one point, and therefore
lowers the cyclomatic number by exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass


class PlsError(Exception):
    pass


class TwoPointIntersection(PlsError):
    pass


class LineTooSmall(PlsError):
    pass


class UnknownPoint(PlsError):
    pass


class PointNotOnLine(PlsError):
    pass


def _pkey(p):
    # stable sort key for heterogeneous point ids
    return (p.__class__.__name__, str(p))


@dataclass(frozen=True)
class Pls:
    points: frozenset
    lines: tuple

    def sorted_points(self):
        return sorted(self.points, key=_pkey)

    def line_list(self, i):
        return sorted(self.lines[i], key=_pkey)


@dataclass(frozen=True)
class PlsCycle:
    """A simple cycle: lines[i] and lines[i+1] meet in junctions[i]
    (indices mod the length).  At least three lines are involved."""

    lines: tuple
    junctions: tuple


def validate_pls(points, lines):
    """Check the partial-linear-space axioms and freeze the structure."""
    pts = frozenset(points)
    frozen = []
    for i, line in enumerate(lines):
        fs = frozenset(line)
        if len(fs) < 2:
            raise LineTooSmall(f"line {i} has fewer than two points")
        stray = fs - pts
        if stray:
            raise UnknownPoint(f"line {i} uses unknown points {sorted(stray, key=_pkey)}")
        frozen.append(fs)
    for i in range(len(frozen)):
        for j in range(i + 1, len(frozen)):
            common = frozen[i] & frozen[j]
            if len(common) > 1:
                raise TwoPointIntersection(
                    f"lines {i} and {j} share {sorted(common, key=_pkey)}"
                )
    return Pls(pts, tuple(frozen))


def components(P):
    """Connected components of the point set; isolated points count.

    Returned as a list of frozensets in a deterministic order.
    """
    parent = {p: p for p in P.points}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for line in P.lines:
        pts = sorted(line, key=_pkey)
        for q in pts[1:]:
            rp, rq = find(pts[0]), find(q)
            if rp != rq:
                parent[rq] = rp
    groups = {}
    for p in P.points:
        groups.setdefault(find(p), set()).add(p)
    comps = [frozenset(g) for g in groups.values()]
    return sorted(comps, key=lambda c: _pkey(min(c, key=_pkey)))


def find_cycle(P):
    """Some simple cycle of the incidence graph, or None.

    The result alternates lines and junction points; a cycle always
    involves at least three lines because two lines meet at most once.
    """
    adj = {}
    for p in P.sorted_points():
        adj[("p", p)] = []
    for i, line in enumerate(P.lines):
        key = ("l", i)
        adj[key] = [("p", p) for p in sorted(line, key=_pkey)]
        for p in adj[key]:
            adj[p].append(key)

    depth = {}
    parent = {}
    for root in adj:
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent[v]:
                    continue
                if w in depth:
                    # back edge: walk v up to w
                    walk = [v]
                    u = v
                    while u != w:
                        u = parent[u]
                        walk.append(u)
                    return _as_cycle(walk)
                depth[w] = depth[v] + 1
                parent[w] = v
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
    return None


def _as_cycle(walk):
    # walk alternates point/line vertices; rotate so a line comes first
    if walk[0][0] == "p":
        walk = walk[1:] + walk[:1]
    lines = tuple(v[1] for v in walk[0::2])
    junctions = tuple(v[1] for v in walk[1::2])
    return PlsCycle(lines, junctions)


def cycle_is_valid(P, cyc):
    """Sanity predicate used by tests: consecutive lines really meet in
    the stated junction and nothing repeats."""
    k = len(cyc.lines)
    if k < 3 or len(cyc.junctions) != k:
        return False
    if len(set(cyc.lines)) != k or len(set(cyc.junctions)) != k:
        return False
    for i in range(k):
        a, b = cyc.lines[i], cyc.lines[(i + 1) % k]
        p = cyc.junctions[i]
        if p not in P.lines[a] or p not in P.lines[b]:
            return False
    return True


def fresh_point(P):
    """Next unused id from the reserved "+k" namespace."""
    used = -1
    for p in P.points:
        if isinstance(p, str) and p.startswith("+") and p[1:].isdigit():
            used = max(used, int(p[1:]))
    return f"+{used + 1}"


def split_point(P, line_index, point):
    """Detach `point` from one line, replacing it there by a fresh point.

    Every other incidence is untouched, so the total incidence count is
    preserved and the component count cannot change when the split edge
    lay on a cycle.
    """
    if point not in P.lines[line_index]:
        raise PointNotOnLine(f"point {point!r} is not on line {line_index}")
    new = fresh_point(P)
    lines = list(P.lines)
    lines[line_index] = (lines[line_index] - {point}) | {new}
    return Pls(P.points | {new}, tuple(lines))


def rstar(P):
    """Cyclomatic number of the incidence graph: E - V + c."""
    e = sum(len(line) for line in P.lines)
    v = len(P.points) + len(P.lines)
    c = len(components(P)) if P.points else 0
    return e - v + c


def acyclifier(P):
    """A minimum splitting sequence that makes P acyclic.

    Returns [(line_index, point), ...] of length exactly rstar(P); each
    listed point lies on a cycle of the structure current at that step.
    """
    out = []
    cur = P
    while True:
        cyc = find_cycle(cur)
        if cyc is None:
            break
        li, pt = cyc.lines[0], cyc.junctions[0]
        out.append((li, pt))
        cur = split_point(cur, li, pt)
    return out


# -- serialization -----------------------------------------------------


def pls_to_json(P):
    return {
        "points": [p for p in P.sorted_points()],
        "lines": [sorted(line, key=_pkey) for line in P.lines],
    }


def pls_from_json(d):
    return validate_pls(d["points"], [frozenset(l) for l in d["lines"]])
