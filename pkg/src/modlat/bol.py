"""Bases of lines of a modular lattice.

A line interval is an interval [x0, x] of length two whose middle layer
has at least three elements, all of them lower covers of x.  A line picks
one join-irreducible witness per middle element; joining the bottom back
onto a witness recovers the middle element, and any two witnesses join to
x.  A base of lines carries one line per line interval, together with the
point-line structure the lines form on the set of all join-irreducibles.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .lattice import (
    CapExceeded,
    LatticeError,
    ji_below,
    ji_between,
    ji_elements,
    require_modular,
)
from .pls import Pls, validate_pls


class EmptyChoice(LatticeError):
    pass


class NotACovering(LatticeError):
    pass


@dataclass(frozen=True)
class LineInterval:
    bottom: int
    top: int
    atoms: tuple  # the middle layer = all lower covers of top

    @property
    def n(self):
        return len(self.atoms)


@dataclass(frozen=True, eq=False)
class BaseOfLines:
    """Points are all join-irreducibles; lines are frozensets of points.

    `lattice` is None when the base was built from an external join
    oracle; in that case `bottom_of`/`interval_of` stay empty and
    `top_of` maps to whatever objects the oracle produced."""

    pls: Pls
    lattice: object
    top_of: dict
    bottom_of: dict
    interval_of: dict

    @property
    def lines(self):
        return self.pls.lines

    @property
    def points(self):
        return self.pls.points


def line_intervals(L):
    """All line intervals, sorted by top element."""
    require_modular(L)
    out = []
    for x in range(L.n):
        lows = L.lower_covers(x)
        if len(lows) < 3:
            continue
        x0 = L.meet_all(lows)
        if L.rank[x] - L.rank[x0] != 2:
            continue
        between = [v for v in L.down_set(x) if L.leq(x0, v) and v not in (x0, x)]
        if sorted(between) == sorted(lows):
            out.append(LineInterval(x0, x, tuple(sorted(lows))))
    return tuple(sorted(out, key=lambda iv: iv.top))


def interval_candidates(L, interval):
    """Per middle element, the join-irreducibles that can represent it."""
    cands = []
    for a in interval.atoms:
        opts = ji_between(L, interval.bottom, a)
        if not opts:
            raise EmptyChoice(f"no join-irreducible witness for {a} over {interval.bottom}")
        cands.append(tuple(sorted(opts)))
    return tuple(cands)


def extract_line(L, interval, chooser=None):
    """One line for the interval: a witness per middle element.

    The default chooser takes the smallest element id.  The returned set
    maps bijectively onto the middle layer via p -> bottom + p."""
    chosen = []
    for a, opts in zip(interval.atoms, interval_candidates(L, interval)):
        p = chooser(interval, a, opts) if chooser else opts[0]
        if p not in opts:
            raise EmptyChoice(f"chooser returned {p}, not a witness for {a}")
        chosen.append(p)
    line = frozenset(chosen)
    rejoined = sorted(L.join(interval.bottom, p) for p in chosen)
    assert len(line) == len(interval.atoms)
    assert rejoined == sorted(interval.atoms), "witnesses must recover the middle layer"
    return line


def _assemble(L, lines, intervals):
    top_of, bottom_of, interval_of = {}, {}, {}
    for line, iv in zip(lines, intervals):
        top_of[line] = iv.top
        bottom_of[line] = iv.bottom
        interval_of[line] = iv
    pls = validate_pls(ji_elements(L), lines)
    return BaseOfLines(pls, L, top_of, bottom_of, interval_of)


def canonical_bol(L):
    """The base of lines under the default witness choice.

    Distributive lattices have no line intervals, so the line family is
    empty and the structure is just the join-irreducibles."""
    ivs = line_intervals(L)
    lines = [extract_line(L, iv) for iv in ivs]
    return _assemble(L, lines, ivs)


def all_bols(L, cap=1000):
    """Yield every base of lines (deduplicated), capped.

    Raises CapExceeded once a (cap+1)-th distinct base shows up, so a
    consumer that completes without the error has seen them all."""
    ivs = line_intervals(L)
    per_interval = []
    for iv in ivs:
        seen = []
        for combo in product(*interval_candidates(L, iv)):
            fs = frozenset(combo)
            if len(fs) == len(iv.atoms) and fs not in seen:
                seen.append(fs)
            if len(seen) > cap:
                raise CapExceeded(f"more than {cap} line choices for one interval")
        per_interval.append(seen)
    emitted = set()
    for combo in product(*per_interval):
        key = frozenset(combo)
        if key in emitted:
            continue
        if len(emitted) >= cap:
            raise CapExceeded(f"more than {cap} distinct bases of lines")
        emitted.add(key)
        yield _assemble(L, list(combo), ivs)


def lines_from_joins(points, join_oracle):
    """Build a base of lines from raw points and a join function.

    Scans pairs in a canonical order; a pair whose join x admits a third
    point with the same pairwise joins seeds a line, which is then
    extended to a maximal set with all pairwise joins equal to x.  One
    line per join value."""
    pts = sorted(points, key=lambda p: (p.__class__.__name__, str(p)))
    done = {}
    for i, p in enumerate(pts):
        for q in pts[i + 1 :]:
            x = join_oracle(p, q)
            if x in done:
                continue
            third = None
            for r in pts:
                if r in (p, q):
                    continue
                if join_oracle(p, r) == x and join_oracle(q, r) == x:
                    third = r
                    break
            if third is None:
                continue
            line = [p, q, third]
            for r in pts:
                if r in line:
                    continue
                if all(join_oracle(r, s) == x for s in line):
                    line.append(r)
            done[x] = frozenset(line)
    lines = [done[x] for x in sorted(done, key=lambda v: (v.__class__.__name__, str(v)))]
    pls = validate_pls(pts, lines)
    top_of = {line: x for x, line in done.items()}
    return BaseOfLines(pls, None, top_of, {}, {})


def induced(B, a):
    """The base of lines of the ideal below `a`: points under a, lines
    whose top is under a."""
    L = B.lattice
    pts = [p for p in ji_below(L, a)]
    lines = [ln for ln in B.lines if L.leq(B.top_of[ln], a)]
    pls = validate_pls(pts, lines)
    return BaseOfLines(
        pls,
        L,
        {ln: B.top_of[ln] for ln in lines},
        {ln: B.bottom_of[ln] for ln in lines if ln in B.bottom_of},
        {ln: B.interval_of[ln] for ln in lines if ln in B.interval_of},
    )


def qualifying_lines(B, a, b):
    """Lines with top under b but not under a."""
    L = B.lattice
    return [
        ln
        for ln in B.lines
        if L.leq(B.top_of[ln], b) and not L.leq(B.top_of[ln], a)
    ]


def localize(B, a, b):
    """The localization of the base at a covering a -< b.

    Points are the join-irreducibles under b but not a; every qualifying
    line loses exactly one point and the trimmed lines (deduplicated) form
    a point-line structure on them."""
    L = B.lattice
    if b not in L.upper_covers(a):
        raise NotACovering(f"{b} does not cover {a}")
    pts = set(ji_between(L, a, b))
    trimmed = []
    for ln in qualifying_lines(B, a, b):
        rest = ln & pts
        assert len(rest) == len(ln) - 1, "a qualifying line must lose exactly one point"
        if rest not in trimmed:
            trimmed.append(rest)
    return validate_pls(pts, trimmed)


# -- serialization ----------------------------------------------------


def bol_to_json(B):
    lines = list(B.lines)
    return {
        "points": sorted(B.points, key=lambda p: (p.__class__.__name__, str(p))),
        "lines": [sorted(ln, key=lambda p: (p.__class__.__name__, str(p))) for ln in lines],
        "tops": [B.top_of.get(ln) for ln in lines],
        "bottoms": [B.bottom_of.get(ln) for ln in lines],
    }
