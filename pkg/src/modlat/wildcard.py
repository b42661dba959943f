"""Compressed enumeration of constrained order ideals.

A Row denotes a set of bitstrings of a fixed width.  Every cell is fixed
("0"/"1"), free ("2"), or holds the integer id of a wildcard group:

    imp  premise/conclusion cells: any premise 1 forces all conclusions 1
    d    all members equal
    eps  at most one member is 1
    g    exactly one member is 1
    ell  at most one member is 1, or all of them are

Constraints arrive in two shapes.  Cover constraints of a poset are seeded
as imp groups; line constraints ("at most one 1 on these positions, or all
1") are imposed on existing rows by `impose_line`, which splits a row into
at most lambda+2 pairwise disjoint rows when the line meets no group and
stays close to that bound otherwise.  `enumerate_ideals` drives a LIFO
stack of rows, each carrying the list of lines still pending, and
compresses complementary final rows into d groups.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product

FIXED0 = "0"
FIXED1 = "1"
FREE = "2"


class WildcardError(Exception):
    pass


class ExpansionCapExceeded(WildcardError):
    pass


class OverlapFound(WildcardError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class GroupSpec:
    """One wildcard group.  `premise`/`conclusion` are used by imp only."""

    kind: str
    members: tuple
    premise: tuple = ()
    conclusion: tuple = ()

    def __post_init__(self):
        assert self.kind in ("imp", "d", "eps", "g", "ell"), self.kind
        if self.kind == "imp":
            assert self.premise and self.conclusion
            assert not set(self.premise) & set(self.conclusion)
            assert tuple(sorted(self.premise + self.conclusion)) == self.members
        else:
            assert not self.premise and not self.conclusion
            assert len(self.members) >= 2
        assert self.members == tuple(sorted(self.members))

    def count(self):
        lam = len(self.members)
        if self.kind == "imp":
            return 2 ** len(self.conclusion) + 2 ** len(self.premise) - 1
        if self.kind == "d":
            return 2
        if self.kind == "eps":
            return lam + 1
        if self.kind == "g":
            return lam
        return lam + 2  # ell

    def assignments(self):
        """All member valuations the group admits, as dicts."""
        m = self.members
        if self.kind == "d":
            return [dict.fromkeys(m, 0), dict.fromkeys(m, 1)]
        if self.kind in ("eps", "g", "ell"):
            out = [] if self.kind == "g" else [dict.fromkeys(m, 0)]
            for p in m:
                one = dict.fromkeys(m, 0)
                one[p] = 1
                out.append(one)
            if self.kind == "ell" and len(m) > 1:
                out.append(dict.fromkeys(m, 1))
            return out
        out = []
        for pa in product((0, 1), repeat=len(self.premise)):
            for pb in product((0, 1), repeat=len(self.conclusion)):
                if any(pa) and not all(pb):
                    continue
                d = dict(zip(self.premise, pa))
                d.update(zip(self.conclusion, pb))
                out.append(d)
        return out

    def admits(self, value_at):
        vals = [value_at(p) for p in self.members]
        if self.kind == "d":
            return len(set(vals)) == 1
        if self.kind == "eps":
            return sum(vals) <= 1
        if self.kind == "g":
            return sum(vals) == 1
        if self.kind == "ell":
            return sum(vals) <= 1 or all(vals)
        if any(value_at(p) for p in self.premise):
            return all(value_at(p) for p in self.conclusion)
        return True


@dataclass(frozen=True)
class Row:
    """A compressed set of bitstrings plus the lines still to impose."""

    width: int
    cells: tuple
    groups: tuple = ()
    pending: tuple = ()

    def cell(self, p):
        return self.cells[p]

    def same_content(self, other):
        return self.cells == other.cells and self.groups == other.groups


def make_row(width, cells, groups=(), pending=()):
    """Normalize and sanity-check a row; groups are renumbered by their
    smallest member so equal contents compare equal."""
    cells = list(cells)
    assert len(cells) == width
    order = sorted(range(len(groups)), key=lambda i: groups[i].members[0])
    remap = {old: new for new, old in enumerate(order)}
    out_cells = []
    for c in cells:
        if c in (FIXED0, FIXED1, FREE):
            out_cells.append(c)
        else:
            out_cells.append(remap[c])
    out_groups = tuple(groups[i] for i in order)
    for gid, spec in enumerate(out_groups):
        for p in spec.members:
            assert out_cells[p] == gid, f"cell {p} does not point at group {gid}"
    referenced = {c for c in out_cells if not isinstance(c, str)}
    assert referenced == set(range(len(out_groups)))
    return Row(width, tuple(out_cells), out_groups, tuple(pending))


def all_free_row(width, pending=()):
    return Row(width, (FREE,) * width, (), tuple(pending))


def row_count(row):
    n = 1
    for c in row.cells:
        if c == FREE:
            n *= 2
    for spec in row.groups:
        n *= spec.count()
    return n


def expand(row, cap=1_000_000):
    """All bitstrings the row denotes, sorted.  Guarded by `cap`."""
    if cap is not None and row_count(row) > cap:
        raise ExpansionCapExceeded(f"row denotes {row_count(row)} > cap {cap}")
    base = [0] * row.width
    choice_sets = []
    for p, c in enumerate(row.cells):
        if c == FIXED1:
            base[p] = 1
        elif c == FREE:
            choice_sets.append([{p: 0}, {p: 1}])
    for spec in row.groups:
        choice_sets.append(spec.assignments())
    out = []
    for combo in product(*choice_sets):
        bits = base[:]
        for d in combo:
            for p, v in d.items():
                bits[p] = v
        out.append(tuple(bits))
    out.sort()
    assert len(out) == row_count(row)
    return out


def contains(row, bits):
    if len(bits) != row.width:
        return False
    for p, c in enumerate(row.cells):
        if c == FIXED0 and bits[p] != 0:
            return False
        if c == FIXED1 and bits[p] != 1:
            return False
    return all(spec.admits(lambda p: bits[p]) for spec in row.groups)


# -- forcing ----------------------------------------------------------


def force(row, assignments):
    """Fix cells to 0/1 and propagate through groups.

    Returns the rewritten Row, or None when the assignment contradicts the
    row.  Group rewrites follow the wildcard semantics: a d member carries
    the others with it, a 1 in an eps/g zeroes its mates, an ell collapses
    to d (hit by 1) or eps (hit by 0), an imp premise 1 fires the
    conclusions while a conclusion 0 kills the premises.
    """
    cells = list(row.cells)
    groups = dict(enumerate(row.groups))
    queue = [(int(p), 1 if v else 0) for p, v in assignments.items()]

    def free_and_push(ps, val=None):
        for q in ps:
            cells[q] = FREE
            if val is not None:
                queue.append((q, val))

    while queue:
        pos, val = queue.pop()
        sym = FIXED1 if val else FIXED0
        cur = cells[pos]
        if cur == sym:
            continue
        if cur in (FIXED0, FIXED1):
            return None
        if cur == FREE:
            cells[pos] = sym
            continue
        gid, spec = cur, groups[cur]
        cells[pos] = sym
        rest = tuple(q for q in spec.members if q != pos and cells[q] == gid)
        if spec.kind == "d":
            del groups[gid]
            free_and_push(rest, val)
        elif spec.kind == "eps":
            if val:
                del groups[gid]
                free_and_push(rest, 0)
            elif len(rest) >= 2:
                groups[gid] = GroupSpec("eps", rest)
            else:
                del groups[gid]
                free_and_push(rest)
        elif spec.kind == "g":
            if val:
                del groups[gid]
                free_and_push(rest, 0)
            elif len(rest) >= 2:
                groups[gid] = GroupSpec("g", rest)
            elif len(rest) == 1:
                del groups[gid]
                free_and_push(rest, 1)
            else:
                return None
        elif spec.kind == "ell":
            if len(rest) < 2:
                del groups[gid]
                free_and_push(rest)  # a lone survivor is unconstrained
            elif val:
                groups[gid] = GroupSpec("d", rest)
            else:
                groups[gid] = GroupSpec("eps", rest)
        else:  # imp
            prem = tuple(q for q in spec.premise if q != pos and cells[q] == gid)
            conc = tuple(q for q in spec.conclusion if q != pos and cells[q] == gid)
            if pos in spec.premise:
                if val:
                    del groups[gid]
                    free_and_push(conc, 1)
                    free_and_push(prem)
                elif prem:
                    groups[gid] = GroupSpec(
                        "imp", tuple(sorted(prem + conc)), prem, conc
                    )
                else:
                    del groups[gid]
                    free_and_push(conc)
            else:
                if not val:
                    del groups[gid]
                    free_and_push(prem, 0)
                    free_and_push(conc)
                elif conc:
                    groups[gid] = GroupSpec(
                        "imp", tuple(sorted(prem + conc)), prem, conc
                    )
                else:
                    del groups[gid]
                    free_and_push(prem)
    keys = sorted(groups)
    renum = {k: i for i, k in enumerate(keys)}
    cells = [renum[c] if isinstance(c, int) else c for c in cells]
    return make_row(row.width, cells, tuple(groups[k] for k in keys), row.pending)


def with_group(row, kind, positions, premise=(), conclusion=()):
    """Attach a new group over currently free cells."""
    positions = tuple(sorted(positions))
    assert all(row.cells[p] == FREE for p in positions)
    gid = len(row.groups)
    cells = list(row.cells)
    for p in positions:
        cells[p] = gid
    spec = GroupSpec(kind, positions, tuple(sorted(premise)), tuple(sorted(conclusion)))
    return make_row(row.width, cells, row.groups + (spec,), row.pending)


def _retype_to_g(row, members):
    members = tuple(sorted(members))
    groups = []
    hit = False
    for spec in row.groups:
        if spec.members == members:
            assert spec.kind in ("eps", "ell", "g")
            groups.append(GroupSpec("g", members))
            hit = True
        else:
            groups.append(spec)
    assert hit
    return make_row(row.width, row.cells, tuple(groups), row.pending)


# -- line imposition ---------------------------------------------------


def impose_line(row, positions):
    """Split a row so that every output satisfies "at most one 1 on
    `positions`, or all of them 1".

    Outputs are pairwise disjoint and their union is exactly the
    constrained input set.  The general shape is a case split: no 1 on the
    line, exactly one (one sub-row per group or free block touching the
    line), all 1.  Lines lying on free groupless cells compress to a
    single eps or ell row instead.
    """
    pos = sorted(set(int(p) for p in positions))
    if len(pos) < 2:
        raise ValueError("a line needs at least two positions")
    ones = [p for p in pos if row.cells[p] == FIXED1]
    zeros = [p for p in pos if row.cells[p] == FIXED0]
    undet = [p for p in pos if row.cells[p] not in (FIXED0, FIXED1)]

    if not undet:
        ok = len(ones) <= 1 or len(ones) == len(pos)
        return [row] if ok else []
    if len(ones) >= 2:
        if zeros:
            return []  # two 1s demand all 1s, but a fixed 0 forbids that
        r = force(row, {p: 1 for p in undet})
        return [r] if r else []
    if len(ones) == 1:
        if not zeros and len(undet) == 1:
            return [row]  # two-point case: the undetermined cell may go either way
        out = [force(row, {p: 0 for p in undet})]
        if not zeros:
            out.append(force(row, {p: 1 for p in undet}))
        return [r for r in out if r is not None]

    # no fixed 1 yet
    if len(undet) <= 1:
        return [row]  # at most one 1 is guaranteed
    free_u = [p for p in undet if row.cells[p] == FREE]
    if len(free_u) == len(undet):
        if not zeros:
            return [with_group(row, "ell", undet)]
        return [with_group(row, "eps", undet)]

    out = [force(row, {p: 0 for p in undet})]
    for mem in _line_units(row, undet):
        out.append(_one_hot_row(row, undet, mem))
    if not zeros:
        out.append(force(row, {p: 1 for p in undet}))
    return [r for r in out if r is not None]


def _line_units(row, undet):
    """Blocks of line positions that can share one "exactly one 1 here"
    sub-row: free cells merge, as do same-group eps/ell/g/d members; imp
    cells stay individual because premise and conclusion react
    differently."""
    blocks = {}
    for p in undet:
        c = row.cells[p]
        if c == FREE:
            key = ("free",)
        elif row.groups[c].kind == "imp":
            key = ("pos", p)
        else:
            key = ("grp", c)
        blocks.setdefault(key, []).append(p)
    return sorted(blocks.values(), key=min)


def _one_hot_row(row, undet, mem):
    """The sub-row whose strings have their single line-1 inside `mem`."""
    if len(mem) == 1:
        return force(row, {mem[0]: 1, **{p: 0 for p in undet if p != mem[0]}})
    others = {p: 0 for p in undet if p not in mem}
    c = row.cells[mem[0]]
    if c == FREE:
        base = force(row, others)
        return with_group(base, "g", mem) if base is not None else None
    spec = row.groups[c]
    if spec.kind == "d":
        return None  # d members are all-equal; a single 1 among >= 2 is impossible
    offline = {p: 0 for p in spec.members if p not in mem}
    base = force(row, {**others, **offline})
    if base is None:
        return None
    return _retype_to_g(base, mem)


# -- ground posets and seeding -----------------------------------------


@dataclass(frozen=True)
class GroundPoset:
    """The point poset lines live on, given by its cover relation."""

    width: int
    covers: tuple
    labels: tuple = None

    def __post_init__(self):
        covers = tuple(sorted((int(a), int(b)) for a, b in self.covers))
        object.__setattr__(self, "covers", covers)
        for a, b in covers:
            if not (0 <= a < self.width and 0 <= b < self.width) or a == b:
                raise ValueError(f"bad cover ({a},{b})")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
            assert len(self.labels) == self.width
        # reject cycles right away
        up = [[] for _ in range(self.width)]
        indeg = [0] * self.width
        for a, b in covers:
            up[a].append(b)
            indeg[b] += 1
        order = [v for v in range(self.width) if indeg[v] == 0]
        i = 0
        while i < len(order):
            for w in up[order[i]]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
            i += 1
        if len(order) != self.width:
            raise ValueError("cover relation contains a cycle")

    def label(self, p):
        return self.labels[p] if self.labels else f"p{p + 1}"

    @cached_property
    def strict_up(self):
        up = [set() for _ in range(self.width)]
        for a, b in self.covers:
            up[a].add(b)
        changed = True
        while changed:
            changed = False
            for a, b in self.covers:
                new = up[b] - up[a]
                if new:
                    up[a] |= new
                    changed = True
        return tuple(frozenset(s) for s in up)

    @cached_property
    def strict_down(self):
        down = [set() for _ in range(self.width)]
        for p in range(self.width):
            for q in self.strict_up[p]:
                down[q].add(p)
        return tuple(frozenset(s) for s in down)

    def is_down_closed(self, bits):
        return all(bits[a] >= bits[b] for a, b in self.covers)


@dataclass(frozen=True)
class RowSet:
    width: int
    rows: tuple
    labels: tuple = ()
    provenance: tuple = ()


def total_count(rowset):
    return sum(row_count(r) for r in rowset.rows)


def rowset_bitstrings(rowset, cap=1_000_000):
    out = set()
    for r in rowset.rows:
        out.update(expand(r, cap))
    return out


def seed_order_ideals(poset):
    """Rows jointly denoting all downward-closed subsets of the poset.

    Recursively branches on a pivot point lying on several unresolved
    covers (highest up+down degree, ties to the lowest index); membership
    propagates down-sets on 1 and up-sets on 0.  Covers left with both
    ends undetermined become pairwise imp groups.
    """
    rows, prov = [], []

    def emit(fixed, path):
        active = [
            (lo, hi)
            for lo, hi in poset.covers
            if lo not in fixed and hi not in fixed
        ]
        deg = Counter()
        for lo, hi in active:
            deg[lo] += 1
            deg[hi] += 1
        conflicted = [p for p, d in deg.items() if d >= 2]
        if not conflicted:
            cells = [FREE] * poset.width
            for p, v in fixed.items():
                cells[p] = FIXED1 if v else FIXED0
            groups = []
            for gid, (lo, hi) in enumerate(active):
                cells[lo] = gid
                cells[hi] = gid
                groups.append(
                    GroupSpec("imp", tuple(sorted((lo, hi))), (hi,), (lo,))
                )
            rows.append(make_row(poset.width, cells, tuple(groups)))
            prov.append("seed" + (path or ""))
            return
        pivot = max(
            conflicted,
            key=lambda p: (len(poset.strict_up[p]) + len(poset.strict_down[p]), -p),
        )
        one = dict(fixed)
        one[pivot] = 1
        for q in poset.strict_down[pivot]:
            one[q] = 1
        emit(one, f"{path};{poset.label(pivot)}=1")
        zero = dict(fixed)
        zero[pivot] = 0
        for q in poset.strict_up[pivot]:
            zero[q] = 0
        emit(zero, f"{path};{poset.label(pivot)}=0")

    emit({}, "")
    labels = tuple(f"r{i + 1}" for i in range(len(rows)))
    return RowSet(poset.width, tuple(rows), labels, tuple(prov))


def _try_merge(a, b):
    """Merge rows differing only on a block where one is all-0 and the
    other all-1 (block of length 1 becomes a free cell, longer ones a d
    group).  Returns the merged row or None."""
    if a.width != b.width or a.groups != b.groups or a.pending != b.pending:
        return None
    diff = [p for p in range(a.width) if a.cells[p] != b.cells[p]]
    if not diff:
        return None
    lo = {a.cells[p] for p in diff}
    hi = {b.cells[p] for p in diff}
    if not (lo <= {FIXED0, FIXED1} and hi <= {FIXED0, FIXED1}):
        return None
    if len(lo) != 1 or len(hi) != 1:
        return None
    cells = list(a.cells)
    if len(diff) == 1:
        cells[diff[0]] = FREE
        return make_row(a.width, cells, a.groups, a.pending)
    gid = len(a.groups)
    for p in diff:
        cells[p] = gid
    return make_row(
        a.width, cells, a.groups + (GroupSpec("d", tuple(diff)),), a.pending
    )


def enumerate_ideals(poset, lines):
    """All order ideals closed under the line constraints, as a RowSet.

    Lines are imposed LIFO: the top row of the working stack gets its next
    pending line; exhausted rows land in the final store, where rows
    differing by one complementary 0/1 block are compressed into d rows.
    """
    line_sets = [tuple(sorted(set(int(p) for p in line))) for line in lines]
    seeds = seed_order_ideals(poset)
    counter = len(seeds.rows)
    all_pending = tuple(range(len(line_sets)))
    stack = [
        (replace(row, pending=all_pending), lab)
        for row, lab in zip(seeds.rows, seeds.labels)
    ]
    stack.reverse()
    finals, flabels, fprov = [], [], []

    def store(row, label, why):
        row = replace(row, pending=())
        i = 0
        while i < len(finals):
            merged = _try_merge(finals[i], row)
            if merged is None:
                merged = _try_merge(row, finals[i])
            if merged is not None:
                why = f"merge({flabels[i]},{label})"
                del finals[i], flabels[i], fprov[i]
                row = merged
                i = 0
                continue
            i += 1
        finals.append(row)
        flabels.append(label)
        fprov.append(why)

    while stack:
        row, label = stack.pop()
        if not row.pending:
            store(row, label, "exhausted")
            continue
        li, rest = row.pending[0], row.pending[1:]
        parts = impose_line(replace(row, pending=rest), line_sets[li])
        tagged = []
        for part in parts:
            if len(parts) == 1 and part.same_content(row):
                tagged.append((part, label))
                continue
            counter += 1
            tagged.append((part, f"r{counter}"))
        stack.extend(reversed(tagged))
    return RowSet(poset.width, tuple(finals), tuple(flabels), tuple(fprov))


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class RowSetReport:
    total: int
    rows: int
    pairs: int
    certified: int
    expanded: int
    unverified: tuple


def validate_rowset(rowset, expand_cap=100_000):
    """Check pairwise disjointness.

    A 0-vs-1 clash on some position certifies a pair cheaply; remaining
    pairs are compared by expansion when small enough, otherwise reported
    as unverified.  Raises OverlapFound with a witness bitstring."""
    rows = rowset.rows
    certified = expanded = 0
    unverified = []
    cache = {}

    def strings(i):
        if i not in cache:
            cache[i] = set(expand(rows[i], expand_cap))
        return cache[i]

    pairs = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            pairs += 1
            a, b = rows[i], rows[j]
            clash = any(
                (a.cells[p], b.cells[p]) in ((FIXED0, FIXED1), (FIXED1, FIXED0))
                for p in range(a.width)
            )
            if clash:
                certified += 1
                continue
            if row_count(a) > expand_cap or row_count(b) > expand_cap:
                unverified.append((i, j))
                continue
            common = strings(i) & strings(j)
            expanded += 1
            if common:
                w = min(common)
                raise OverlapFound(
                    f"rows {i} and {j} share {''.join(map(str, w))}", witness=w
                )
    return RowSetReport(
        total_count(rowset), len(rows), pairs, certified, expanded, tuple(unverified)
    )


# -- text and JSON forms -------------------------------------------------


def _symbols(row):
    syms = []
    for p, c in enumerate(row.cells):
        if isinstance(c, str):
            syms.append(c)
        else:
            spec = row.groups[c]
            k = c + 1
            if spec.kind == "imp":
                syms.append(f"a{k}" if p in spec.premise else f"b{k}")
            else:
                syms.append({"d": "d", "eps": "e", "g": "g", "ell": "l"}[spec.kind] + str(k))
    return syms


def row_to_text(row, label=None):
    syms = _symbols(row)
    head = f"{label}: " if label else ""
    tag = "final" if not row.pending else "pending " + ",".join(
        f"l{i + 1}" for i in row.pending
    )
    return f"{head}{' '.join(f'{s:>2}' for s in syms)}  ; {tag} ; count={row_count(row)}"


def rowset_to_text(rowset):
    lines = []
    for row, lab in zip(rowset.rows, rowset.labels or [None] * len(rowset.rows)):
        lines.append(row_to_text(row, lab))
    lines.append(f"total {total_count(rowset)} in {len(rowset.rows)} rows")
    return "\n".join(lines) + "\n"


def group_to_json(spec):
    d = {"kind": spec.kind, "members": list(spec.members)}
    if spec.kind == "imp":
        d["premise"] = list(spec.premise)
        d["conclusion"] = list(spec.conclusion)
    return d


def group_from_json(d):
    return GroupSpec(
        d["kind"],
        tuple(sorted(d["members"])),
        tuple(sorted(d.get("premise", ()))),
        tuple(sorted(d.get("conclusion", ()))),
    )


def row_to_json(row):
    return {
        "cells": list(row.cells),
        "groups": [group_to_json(g) for g in row.groups],
        "pending": list(row.pending),
    }


def row_from_json(d, width=None):
    cells = tuple(c if isinstance(c, str) else int(c) for c in d["cells"])
    if width is None:
        width = len(cells)
    return make_row(
        width,
        cells,
        tuple(group_from_json(g) for g in d.get("groups", ())),
        tuple(d.get("pending", ())),
    )


def rowset_to_json(rowset):
    return {
        "width": rowset.width,
        "rows": [row_to_json(r) for r in rowset.rows],
        "labels": list(rowset.labels),
        "provenance": list(rowset.provenance),
        "total": str(total_count(rowset)),
    }


def rowset_from_json(d):
    rows = tuple(row_from_json(r, d["width"]) for r in d["rows"])
    labels = tuple(d.get("labels", ()))
    prov = tuple(d.get("provenance", ()))
    return RowSet(d["width"], rows, labels, prov)


def poset_to_json(poset):
    return {
        "points": [poset.label(p) for p in range(poset.width)],
        "covers": [[poset.label(a), poset.label(b)] for a, b in poset.covers],
    }


def poset_from_json(d):
    points = [str(p) for p in d["points"]]
    index = {p: i for i, p in enumerate(points)}

    def resolve(x):
        if isinstance(x, int):
            return x
        return index[str(x)]

    covers = [(resolve(a), resolve(b)) for a, b in d.get("covers", ())]
    return GroundPoset(len(points), tuple(covers), tuple(points))


def lines_from_json(d, poset=None):
    raw = d["lines"] if isinstance(d, dict) else d
    index = {}
    if poset is not None and poset.labels:
        index = {lab: i for i, lab in enumerate(poset.labels)}

    def resolve(x):
        if isinstance(x, int):
            return x
        return index[str(x)]

    return [tuple(sorted(resolve(p) for p in line)) for line in raw]
