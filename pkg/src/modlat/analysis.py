"""Structural profile of a modular lattice and checks of the counting
identities tying it to its bases of lines.

The profile collects

  j      number of join-irreducibles (points of every base of lines)
  delta  height of the lattice
  s      connected components of a base of lines, which is also the
         number of congruence-simple factors
  i      number of line intervals
  o      largest n - 1 over the M_n line intervals, 1 when there are none
  mu     sum of all n over the line intervals
  r*     splittings needed to acyclify the canonical base

and evaluates the identities and bounds that relate them, each reported
as a named pass/fail verdict with the concrete numbers filled in.  The
module also houses the triangle machinery that manufactures a covering
with a cyclic localization, and the cycles-of-line-tops vocabulary
(tightly below, tightly comparable, clean cycles).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bol import all_bols, canonical_bol, line_intervals, localize
from .lattice import (
    CapExceeded,
    LatticeError,
    NotModular,
    ji_below,
    ji_between,
    ji_elements,
    lower_star,
    projectivity_classes,
    require_modular,
    transposes_up,
)
from .pls import components, find_cycle, rstar


class ClaimViolated(LatticeError):
    """An assertion inside the cyclic-localization construction failed."""


class NotALineTop(LatticeError):
    pass


# -- parameter profile -------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str

    def __str__(self):
        flag = "pass" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.detail}"


@dataclass(frozen=True)
class ParamsReport:
    j: int
    delta: int
    s: int
    i: int
    o: int
    mu: int
    rstar_canonical: int
    acyclic: bool
    locally_acyclic: bool | None
    verdicts: tuple

    @property
    def ok(self):
        return all(v.passed for v in self.verdicts)


def component_count(L, B):
    """Number of connected components of the base of lines.

    Cross-computed as the number of projectivity classes met by the
    prime quotients (p_*, p) of join-irreducibles p; the two counts must
    agree, and their common value is the number of congruence-simple
    factors of the lattice.
    """
    from_pls = len(components(B.pls))
    ji_quots = {(lower_star(L, p), p) for p in ji_elements(L)}
    from_classes = sum(1 for cls in projectivity_classes(L) if cls & ji_quots)
    if from_pls != from_classes:
        raise LatticeError(
            f"component count {from_pls} disagrees with "
            f"projectivity-class count {from_classes}"
        )
    return from_pls


def params(L, bols_cap=1000):
    """Profile the lattice; modularity is required.

    `locally_acyclic` is decided by exhausting all bases of lines up to
    `bols_cap` and is None when the cap is hit.  The verdicts bundle the
    point-count and interval-bound checks for the canonical base.
    """
    require_modular(L)
    B = canonical_bol(L)
    ivs = line_intervals(L)
    i = len(ivs)
    o = max((iv.n - 1 for iv in ivs), default=1)
    mu = sum(iv.n for iv in ivs)
    j = len(ji_elements(L))
    delta = L.height
    s = component_count(L, B)
    acyclic = find_cycle(B.pls) is None
    try:
        loc_acyclic = is_locally_acyclic(L, mode="all-bols-capped", cap=bols_cap)
    except CapExceeded:
        loc_acyclic = None
    verdicts = check_point_count(L, bols_cap=bols_cap) + check_interval_bounds(
        L, B, acyclic=acyclic, locally_acyclic=loc_acyclic
    )
    return ParamsReport(
        j=j,
        delta=delta,
        s=s,
        i=i,
        o=o,
        mu=mu,
        rstar_canonical=rstar(B.pls),
        acyclic=acyclic,
        locally_acyclic=loc_acyclic,
        verdicts=verdicts,
    )


def params_to_json(report):
    return {
        "j": report.j,
        "delta": report.delta,
        "s": report.s,
        "i": report.i,
        "o": report.o,
        "mu": report.mu,
        "rstar_canonical": report.rstar_canonical,
        "acyclic": report.acyclic,
        "locally_acyclic": report.locally_acyclic,
        "verdicts": [
            {"name": v.name, "passed": v.passed, "detail": v.detail}
            for v in report.verdicts
        ],
    }


def _bol_sample(L, cap):
    """Up to `cap` distinct bases of lines plus a truncation flag."""
    out = []
    truncated = False
    try:
        for B in all_bols(L, cap=cap):
            out.append(B)
    except CapExceeded:
        truncated = True
    return out, truncated


def check_point_count(L, bols_cap=1000):
    """j <= mu - i + s, with equality exactly for acyclic lattices.

    Acyclicity of a finite modular lattice does not depend on the chosen
    base of lines, so all sampled bases must agree with the canonical one.
    """
    require_modular(L)
    B = canonical_bol(L)
    ivs = line_intervals(L)
    i, mu = len(ivs), sum(iv.n for iv in ivs)
    j = len(ji_elements(L))
    s = component_count(L, B)
    rhs = mu - i + s
    acyclic = find_cycle(B.pls) is None
    sample, truncated = _bol_sample(L, bols_cap)
    agree = all((find_cycle(Bk.pls) is None) == acyclic for Bk in sample)
    note = f"{len(sample)} bases" + (", truncated" if truncated else "")
    return (
        Verdict("point count bound", j <= rhs, f"j={j} <= mu-i+s={rhs}"),
        Verdict(
            "point count equality iff acyclic",
            (j == rhs) == acyclic,
            f"j={j}, mu-i+s={rhs}, acyclic={acyclic}",
        ),
        Verdict("acyclicity agrees across bases", agree, note),
    )


def check_interval_bounds(L, B, acyclic=None, locally_acyclic=None, bols_cap=1000):
    """Bounds linking i, j, delta, s and the splitting number of B.

    Every clause whose hypothesis (o <= 2, acyclic, locally acyclic)
    holds is evaluated; the rest are skipped.  `acyclic` and
    `locally_acyclic` may be passed in to avoid recomputation; a None
    `locally_acyclic` that cannot be decided within `bols_cap` bases
    skips the clauses that need it.
    """
    require_modular(L)
    ivs = line_intervals(L)
    i, mu = len(ivs), sum(iv.n for iv in ivs)
    o = max((iv.n - 1 for iv in ivs), default=1)
    j = len(ji_elements(L))
    delta = L.height
    s = component_count(L, B)
    r = rstar(B.pls)
    if acyclic is None:
        acyclic = find_cycle(B.pls) is None
    if locally_acyclic is None:
        if acyclic:
            locally_acyclic = True
        else:
            try:
                locally_acyclic = is_locally_acyclic(
                    L, mode="all-bols-capped", cap=bols_cap
                )
            except CapExceeded:
                locally_acyclic = None

    out = [
        Verdict(
            "interval count lower bound",
            i >= delta - s,
            f"i={i} >= delta-s={delta - s}",
        ),
        Verdict(
            "point count lower bound",
            j >= 2 * delta - s,
            f"j={j} >= 2delta-s={2 * delta - s}",
        ),
    ]
    if o <= 2:
        mid = 2 * i + s - r
        out.append(
            Verdict(
                "split-adjusted point bound",
                j >= mid >= 2 * delta - s,
                f"j={j} >= 2i+s-r*={mid} >= 2delta-s={2 * delta - s}",
            )
        )
        lo, hi = 2 * i + s - j, 2 * i + 2 * s - 2 * delta
        out.append(
            Verdict(
                "split count range",
                lo <= r <= hi,
                f"{lo} <= r*={r} <= {hi}",
            )
        )
    if locally_acyclic:
        out.append(
            Verdict(
                "locally acyclic interval identity",
                i == delta - s + r,
                f"i={i} = delta-s+r*={delta - s + r}",
            )
        )
        out.append(
            Verdict(
                "locally acyclic point bound",
                j >= i + delta,
                f"j={j} >= i+delta={i + delta}",
            )
        )
        if o <= 2:
            out.append(
                Verdict(
                    "locally acyclic point identity",
                    j == i + delta,
                    f"j={j} = i+delta={i + delta}",
                )
            )
    if acyclic:
        out.append(
            Verdict(
                "acyclic interval identity",
                i == delta - s,
                f"i={i} = delta-s={delta - s}",
            )
        )
        if o <= 2:
            out.append(
                Verdict(
                    "acyclic point identity",
                    j == 2 * delta - s,
                    f"j={j} = 2delta-s={2 * delta - s}",
                )
            )
    return tuple(out)


def is_locally_acyclic(L, mode="canonical-bol", cap=1000):
    """Whether every localization of the selected bases is acyclic.

    mode "canonical-bol" inspects only the canonical base; mode
    "all-bols-capped" exhausts all bases and raises CapExceeded past
    `cap`.  An acyclic lattice is locally acyclic either way.
    """
    require_modular(L)
    if mode == "canonical-bol":
        bases = [canonical_bol(L)]
    elif mode == "all-bols-capped":
        bases = all_bols(L, cap=cap)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for B in bases:
        for u, v in L.covers:
            if find_cycle(localize(B, u, v)) is not None:
                return False
    return True


# -- triangle configurations -------------------------------------------


@dataclass(frozen=True)
class TriangleConfig:
    """Three mutually meeting lines plus a transversal.

    l1 and l2 meet in s, l3 meets them in p1 and p2, and the transversal
    l4 touches l1, l2, l3 in q, r, p3, none of which is a corner of the
    triangle s, p1, p2.
    """

    l1: frozenset
    l2: frozenset
    l3: frozenset
    l4: frozenset
    s: object
    p1: object
    p2: object
    q: object
    r: object
    p3: object


def _single_meet(a, b):
    common = a & b
    if len(common) == 1:
        return next(iter(common))
    return None


def triangle_configurations(B):
    """All triangle configurations of the base, in a deterministic order.

    Each unordered triangle with a qualifying transversal contributes
    three configurations, one per choice of which triangle line plays the
    role of l3 (the side opposite the corner s).
    """
    lines = list(B.lines)
    out = []
    for ia, ib, ic in combinations(range(len(lines)), 3):
        tri = (lines[ia], lines[ib], lines[ic])
        corners = (
            _single_meet(tri[0], tri[1]),
            _single_meet(tri[0], tri[2]),
            _single_meet(tri[1], tri[2]),
        )
        if any(c is None for c in corners) or len(set(corners)) != 3:
            continue
        corner_set = set(corners)
        for it, transversal in enumerate(lines):
            if it in (ia, ib, ic):
                continue
            contacts = tuple(_single_meet(transversal, side) for side in tri)
            if any(c is None or c in corner_set for c in contacts):
                continue
            # one configuration per choice of the side opposite s
            for x, y, z in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
                out.append(
                    TriangleConfig(
                        l1=tri[x],
                        l2=tri[y],
                        l3=tri[z],
                        l4=transversal,
                        s=_single_meet(tri[x], tri[y]),
                        p1=_single_meet(tri[x], tri[z]),
                        p2=_single_meet(tri[y], tri[z]),
                        q=contacts[x],
                        r=contacts[y],
                        p3=contacts[z],
                    )
                )
    return out


def cyclic_localization_witness(L, B, config):
    """A covering (a, b) whose localization of B contains a cycle.

    Builds u = q + r, requires s not under u, and returns
    (u + s_*, u + s).  Every intermediate fact is checked and a failure
    raises ClaimViolated, which signals a bug or non-modular input.
    """
    s, p1, p2 = config.s, config.p1, config.p2
    q, r, p3 = config.q, config.r, config.p3
    u = L.join(q, r)
    if not (u == L.join(q, p3) == L.join(r, p3)):
        raise ClaimViolated("transversal contacts do not share their join")
    if L.leq(s, u):
        raise ClaimViolated("corner s lies under u = q + r")
    a = L.join(u, lower_star(L, s))
    b = L.join(u, s)
    if b not in L.upper_covers(a):
        raise ClaimViolated(f"{b} does not cover {a}")
    for point in (s, p1, p2):
        if not L.leq(point, b) or L.leq(point, a):
            raise ClaimViolated(f"corner {point} is not in J({a}, {b})")
    if find_cycle(localize(B, a, b)) is None:
        raise ClaimViolated("localization has no cycle")
    return a, b


# -- cycles of line-tops -----------------------------------------------


@dataclass(frozen=True)
class TopCycle:
    """Cyclic sequence of at least three distinct line-tops.

    Consecutive entries, wrapping around, are tightly comparable;
    directions[k] is "up" when tops[k] is tightly below its successor
    and "down" otherwise.
    """

    tops: tuple
    directions: tuple

    def __len__(self):
        return len(self.tops)


def _top_map(L):
    return {iv.top: iv for iv in line_intervals(L)}

def _require_top(tops, x):
    if x not in tops:
        raise NotALineTop(f"{x} is not the top of a line interval")

def _tight_below(L, tops, x, y):
    # strictly below y, but not below the bottom of y's interval
    return x != y and L.leq(x, y) and not L.leq(x, tops[y].bottom)


def tight_below(L, x, y):
    """Whether line-top x sits strictly below y but not below y's bottom."""
    tops = _top_map(L)
    _require_top(tops, x)
    _require_top(tops, y)
    return _tight_below(L, tops, x, y)


def tight_comparable(L, x, y):
    """Whether one of the two line-tops is tightly below the other."""
    tops = _top_map(L)
    _require_top(tops, x)
    _require_top(tops, y)
    return _tight_below(L, tops, x, y) or _tight_below(L, tops, y, x)


def top_cycles(L, maxlen=8):
    """Cycles of line-tops up to rotation and reflection.

    Simple cycles of length 3..maxlen in the tight-comparability graph,
    each reported once, anchored at its smallest top.
    """
    require_modular(L)
    tops = _top_map(L)
    verts = sorted(tops)
    nbr = {
        x: [y for y in verts if y != x and (
            _tight_below(L, tops, x, y) or _tight_below(L, tops, y, x))]
        for x in verts
    }
    found = []

    def walk(path):
        for w in nbr[path[-1]]:
            if w == path[0] and len(path) >= 3:
                if path[1] < path[-1]:
                    found.append(tuple(path))
            elif w > path[0] and w not in path and len(path) < maxlen:
                walk(path + [w])

    for start in verts:
        walk([start])
    out = []
    for seq in found:
        dirs = tuple(
            "up" if _tight_below(L, tops, seq[k], seq[(k + 1) % len(seq)]) else "down"
            for k in range(len(seq))
        )
        out.append(TopCycle(tops=seq, directions=dirs))
    return out


def _comparable(L, x, y):
    return L.leq(x, y) or L.leq(y, x)


def _blocked_peak(L, tops, v, u, z):
    """v <* u >* z: mutually comparable and sharing the entry into u."""
    if not (_comparable(L, v, z) and _comparable(L, v, u) and _comparable(L, u, z)):
        return False
    u0 = tops[u].bottom
    for uj in tops[u].atoms:
        for vi in tops[v].atoms:
            if not transposes_up(L, (vi, v), (u0, uj)):
                continue
            for zk in tops[z].atoms:
                if transposes_up(L, (zk, z), (u0, uj)):
                    return True
    return False


def _blocked_valley(L, tops, v, u, z):
    """v >* u <* z: mutually comparable and sharing the exit out of u."""
    if not (_comparable(L, v, z) and _comparable(L, v, u) and _comparable(L, u, z)):
        return False
    for uj in tops[u].atoms:
        for vi in tops[v].atoms:
            if not transposes_up(L, (uj, u), (tops[v].bottom, vi)):
                continue
            for zk in tops[z].atoms:
                if transposes_up(L, (uj, u), (tops[z].bottom, zk)):
                    return True
    return False


def is_clean_cycle(L, cycle):
    """Whether a cycle of line-tops avoids the blocked local patterns.

    Around every peak v <* u >* z and every valley v >* u <* z the three
    tops must not be simultaneously mutually comparable and wired to a
    single covering of u's interval; repeated tops are never clean.
    """
    seq = tuple(cycle.tops) if isinstance(cycle, TopCycle) else tuple(cycle)
    if len(seq) < 3:
        raise ValueError("a cycle needs at least three line-tops")
    tops = _top_map(L)
    for x in seq:
        _require_top(tops, x)
    if len(set(seq)) != len(seq):
        return False
    k = len(seq)
    for idx in range(k):
        v, u, z = seq[idx - 1], seq[idx], seq[(idx + 1) % k]
        for a, b in ((v, u), (u, z)):
            if not (_tight_below(L, tops, a, b) or _tight_below(L, tops, b, a)):
                raise ValueError(f"{a} and {b} are not tightly comparable")
        into = _tight_below(L, tops, v, u)
        outof = _tight_below(L, tops, u, z)
        if into and not outof and _blocked_peak(L, tops, v, u, z):
            return False
        if not into and outof and _blocked_valley(L, tops, v, u, z):
            return False
    return True


# -- whole-lattice verdict suite ---------------------------------------


def _perspective(L, covers, p, q):
    """Distinct join-irreducibles with a common upper transpose."""
    pq = (lower_star(L, p), p)
    qq = (lower_star(L, q), q)
    return p != q and any(
        transposes_up(L, pq, c) and transposes_up(L, qq, c) for c in covers
    )


def check_components_match_projectivity(L, B):
    """Two points share a base component iff their quotients are projective."""
    comp_of = {}
    for k, comp in enumerate(components(B.pls)):
        for p in comp:
            comp_of[p] = k
    class_of = {}
    for k, cls in enumerate(projectivity_classes(L)):
        for quot in cls:
            class_of[quot] = k
    pts = sorted(comp_of)
    for p, q in combinations(pts, 2):
        same_comp = comp_of[p] == comp_of[q]
        same_class = class_of[(lower_star(L, p), p)] == class_of[
            (lower_star(L, q), q)
        ]
        if same_comp != same_class:
            return Verdict(
                "components match projectivity",
                False,
                f"points {p}, {q}: component {same_comp}, class {same_class}",
            )
    return Verdict(
        "components match projectivity", True, f"{len(pts)} points agree"
    )


def check_localizations_connected(L, B):
    """Every localization of the base is a single component."""
    for u, v in L.covers:
        n = len(components(localize(B, u, v)))
        if n != 1:
            return Verdict(
                "localizations connected",
                False,
                f"covering ({u},{v}) has {n} components",
            )
    return Verdict(
        "localizations connected", True, f"{len(L.covers)} coverings checked"
    )


def check_line_feet(L, B):
    """On every line, each point pair is perspective and p_* + q_* is
    the bottom of the line's interval."""
    covers = L.covers
    pairs = 0
    for line in B.lines:
        foot = B.bottom_of[line]
        for p, q in combinations(sorted(line), 2):
            pairs += 1
            if L.join(lower_star(L, p), lower_star(L, q)) != foot:
                return Verdict(
                    "line feet", False, f"p_*+q_* misses the foot for {p},{q}"
                )
            if not _perspective(L, covers, p, q):
                return Verdict(
                    "line feet", False, f"{p},{q} on a line but not perspective"
                )
    return Verdict("line feet", True, f"{pairs} point pairs checked")


def check_triangle_tops(L, B):
    """The tops of a three-line cycle are never mutually comparable."""
    lines = list(B.lines)
    tried = 0
    for a, b, c in combinations(lines, 3):
        corners = {_single_meet(a, b), _single_meet(a, c), _single_meet(b, c)}
        if None in corners or len(corners) != 3:
            continue
        tried += 1
        ta, tb, tc = (B.top_of[x] for x in (a, b, c))
        if (
            _comparable(L, ta, tb)
            and _comparable(L, ta, tc)
            and _comparable(L, tb, tc)
        ):
            return Verdict(
                "triangle tops incomparable",
                False,
                f"tops {ta},{tb},{tc} are mutually comparable",
            )
    return Verdict("triangle tops incomparable", True, f"{tried} triangles")


def check_perspective_intervals(L):
    """Perspective pairs p, q land in the line interval [p_*+q_*, p+q]."""
    ivs = {iv.top: iv for iv in line_intervals(L)}
    covers = L.covers
    pts = ji_elements(L)
    tried = 0
    for p, q in combinations(pts, 2):
        if not _perspective(L, covers, p, q):
            continue
        tried += 1
        top = L.join(p, q)
        iv = ivs.get(top)
        msg = None
        if iv is None:
            msg = f"join {top} of {p},{q} is not a line-top"
        elif iv.bottom != L.join(lower_star(L, p), lower_star(L, q)):
            msg = f"interval at {top} does not start at p_*+q_*"
        elif L.join(iv.bottom, p) not in iv.atoms or L.join(iv.bottom, q) not in iv.atoms:
            msg = f"{p} or {q} misses the middle layer at {top}"
        if msg:
            return Verdict("perspective pairs span line intervals", False, msg)
    return Verdict(
        "perspective pairs span line intervals", True, f"{tried} pairs"
    )


def check_join_witness(L):
    """r in J(a, a+q) with q, r incomparable forces some p in J(a) with
    p + q = r + q."""
    pts = ji_elements(L)
    tried = 0
    for a in range(L.n):
        below = ji_below(L, a)
        for q in pts:
            if L.leq(q, a):
                continue
            between = ji_between(L, a, L.join(a, q))
            for r in between:
                if _comparable(L, q, r):
                    continue
                tried += 1
                want = L.join(r, q)
                if not any(L.join(p, q) == want for p in below):
                    return Verdict(
                        "join witness below a",
                        False,
                        f"a={a}, q={q}, r={r}: no witness",
                    )
    return Verdict("join witness below a", True, f"{tried} triples checked")


def check_clean_cycles(L, maxlen=8):
    """A clean cycle of line-tops forces cycles in the bases of lines."""
    cycles = top_cycles(L, maxlen=maxlen)
    clean = [c for c in cycles if is_clean_cycle(L, c)]
    if not clean:
        return Verdict(
            "clean cycles force base cycles",
            True,
            f"untriggered ({len(cycles)} cycles, none clean)",
        )
    cyclic = find_cycle(canonical_bol(L).pls) is not None
    return Verdict(
        "clean cycles force base cycles",
        cyclic,
        f"{len(clean)} clean of {len(cycles)} cycles; base cyclic={cyclic}",
    )


def _merge_runs(runs, note):
    """Collapse per-base verdict tuples into one verdict per name."""
    merged = []
    for idx, first in enumerate(runs[0]):
        bad = next((run[idx] for run in runs if not run[idx].passed), None)
        merged.append(
            bad or Verdict(first.name, True, f"{first.detail}; {note}")
        )
    return merged


def verdict_suite(L, bols_cap=1000, maxlen=8):
    """Every check the module knows, aggregated over sampled bases."""
    require_modular(L)
    B = canonical_bol(L)
    sample, truncated = _bol_sample(L, bols_cap)
    note = f"{len(sample)} bases" + (" (truncated)" if truncated else "")
    acyclic = find_cycle(B.pls) is None
    if acyclic:
        loc_acyclic = True
    else:
        try:
            loc_acyclic = is_locally_acyclic(L, mode="all-bols-capped", cap=bols_cap)
        except CapExceeded:
            loc_acyclic = None

    out = list(check_point_count(L, bols_cap=bols_cap))
    out += _merge_runs(
        [
            check_interval_bounds(
                L, Bk, acyclic=acyclic, locally_acyclic=loc_acyclic
            )
            for Bk in sample
        ],
        note,
    )
    observed = sorted({rstar(Bk.pls) for Bk in sample})
    out.append(
        Verdict("split counts observed", True, f"r* values {observed}; {note}")
    )
    out += _merge_runs(
        [
            (
                check_components_match_projectivity(L, Bk),
                check_localizations_connected(L, Bk),
                check_line_feet(L, Bk),
                check_triangle_tops(L, Bk),
            )
            for Bk in sample
        ],
        note,
    )
    out.append(check_perspective_intervals(L))
    out.append(check_join_witness(L))
    out.append(check_clean_cycles(L, maxlen=maxlen))
    return tuple(out)
