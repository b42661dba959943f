"""Command line front end.

Subcommands chain through JSON files: `enumerate` emits row sets,
`rebuild` turns enumerations into lattices, `analyze`, `bol`,
`localize`, `rstar` and `witness-triangle` consume lattice files, and
`verify` runs the verdict suite over the stock corpus.  Exit status is
0 for success, 1 for a verification failure, 2 for usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .algebra import (
    distributive_ji,
    distributive_lattice,
    parse_group,
    parse_set_system,
    subgroup_lattice,
)
from .analysis import (
    cyclic_localization_witness,
    params,
    params_to_json,
    triangle_configurations,
    verdict_suite,
)
from .bol import all_bols, bol_to_json, canonical_bol, line_intervals, localize
from .corpus import standard_corpus
from .lattice import (
    CapExceeded,
    LatticeError,
    ji_elements,
    lattice_from_json,
    lattice_to_dot,
    lattice_to_json,
)
from .pls import PlsError, components, find_cycle, pls_from_json, pls_to_json, rstar
from .rebuild import NotAClosureSystem, closed_ideals_lattice, roundtrip_check
from .wildcard import (
    WildcardError,
    enumerate_ideals,
    lines_from_json,
    poset_from_json,
    rowset_bitstrings,
    rowset_to_json,
    rowset_to_text,
    total_count,
)


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=2, default=str) + "\n")


def _resolve_elem(L, token):
    if L.names and token in L.names:
        return L.names.index(token)
    try:
        x = int(token)
    except ValueError:
        raise ValueError(f"no element named {token!r}") from None
    if not 0 <= x < L.n:
        raise ValueError(f"element index {x} out of range 0..{L.n - 1}")
    return x


def _members(rows):
    return [
        frozenset(k for k, bit in enumerate(bits) if bit)
        for bits in rowset_bitstrings(rows)
    ]


def _params_table(rep):
    lines = [
        f"j (join-irreducibles) {rep.j}",
        f"delta (height)        {rep.delta}",
        f"s (components)        {rep.s}",
        f"i (line intervals)    {rep.i}",
        f"o (max n-1)           {rep.o}",
        f"mu (sum of n)         {rep.mu}",
        f"r* (canonical base)   {rep.rstar_canonical}",
        f"acyclic               {'yes' if rep.acyclic else 'no'}",
        "locally acyclic       "
        + ("unknown" if rep.locally_acyclic is None else "yes" if rep.locally_acyclic else "no"),
    ]
    lines.extend(str(v) for v in rep.verdicts)
    return "\n".join(lines)


# -- subcommands --------------------------------------------------------


def cmd_enumerate(args):
    poset = poset_from_json(_load(args.poset))
    lines = lines_from_json(_load(args.lines), poset) if args.lines else []
    rows = enumerate_ideals(poset, lines)
    if args.out:
        _write_json(args.out, rowset_to_json(rows))
    if args.count:
        print(total_count(rows))
    elif args.expand:
        for bits in sorted(rowset_bitstrings(rows)):
            print("".join(str(b) for b in bits))
    else:
        print(rowset_to_text(rows))
    return 0


def cmd_rebuild(args):
    poset = poset_from_json(_load(args.poset))
    lines = lines_from_json(_load(args.lines), poset) if args.lines else []
    L = closed_ideals_lattice(_members(enumerate_ideals(poset, lines)))
    ok = roundtrip_check(L)
    if args.out:
        _write_json(args.out, lattice_to_json(L))
    if args.dot:
        print(lattice_to_dot(L))
    else:
        print(
            f"{L.n} elements, {len(ji_elements(L))} join-irreducibles, "
            f"{len(line_intervals(L))} line intervals, "
            f"roundtrip {'ok' if ok else 'FAILED'}"
        )
    return 0 if ok else 1


def cmd_analyze(args):
    L = lattice_from_json(_load(args.lattice))
    rep = params(L, bols_cap=args.cap)
    print(_params_table(rep))
    if args.out:
        _write_json(args.out, params_to_json(rep))
    return 0 if rep.ok else 1


def cmd_verify(args):
    corpus = standard_corpus()
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [(name, pool.submit(verdict_suite, L, args.cap)) for name, L in corpus]
            results = [(name, fut.result()) for name, fut in futures]
    else:
        results = [(name, verdict_suite(L, bols_cap=args.cap)) for name, L in corpus]
    failures = 0
    for name, verdicts in results:
        bad = [v for v in verdicts if not v.passed]
        failures += len(bad)
        print(f"{'FAIL' if bad else 'ok':4s} {name} ({len(verdicts)} checks)")
        for v in bad:
            print(f"     {v}")
    print(f"{len(results)} lattices, {failures} failing checks")
    return 1 if failures else 0


def cmd_bol(args):
    L = lattice_from_json(_load(args.lattice))
    if args.all_bols:
        seen = 0
        stars = set()
        truncated = False
        try:
            for B in all_bols(L, cap=args.cap):
                seen += 1
                stars.add(rstar(B.pls))
        except CapExceeded:
            truncated = True
        note = f"{seen} bases" + (" (truncated)" if truncated else "")
        print(f"{note}; r* values {sorted(stars)}")
        return 0
    B = canonical_bol(L)
    if args.out:
        _write_json(args.out, bol_to_json(B))
    for line in B.lines:
        pts = ", ".join(L.name(p) for p in sorted(line))
        print(f"{{{pts}}} top {L.name(B.top_of[line])}")
    print(f"{len(B.points)} points, {len(B.lines)} lines, "
          f"{len(components(B.pls))} components")
    return 0


def cmd_localize(args):
    L = lattice_from_json(_load(args.lattice))
    a = _resolve_elem(L, args.a)
    b = _resolve_elem(L, args.b)
    P = localize(canonical_bol(L), a, b)
    if args.out:
        _write_json(args.out, pls_to_json(P))
    for line in P.lines:
        print("{" + ", ".join(L.name(p) for p in sorted(line)) + "}")
    cyc = find_cycle(P)
    print(
        f"{len(P.points)} points, {len(P.lines)} lines, "
        f"{len(components(P))} components, "
        + ("cyclic" if cyc else "acyclic")
    )
    return 0


def cmd_subgroup_lattice(args):
    G = parse_group(args.group)
    L = subgroup_lattice(G)
    if args.out:
        _write_json(args.out, lattice_to_json(L))
    if args.count:
        print(L.n)
        return 0
    if args.dot:
        print(lattice_to_dot(L))
        return 0
    print(f"{G}: {L.n} subgroups")
    if args.analyze:
        print(_params_table(params(L, bols_cap=args.cap)))
    return 0


def cmd_distributive(args):
    system = parse_set_system(Path(args.sets).read_text())
    L = distributive_lattice(system)
    if args.out:
        _write_json(args.out, lattice_to_json(L))
    if args.count:
        print(L.n)
        return 0
    if args.dot:
        print(lattice_to_dot(L))
        return 0
    gens = distributive_ji(system)
    print(
        f"{len(system.sets)} generators, {len(gens)} join-irreducibles, "
        f"{L.n} elements"
    )
    return 0


def cmd_rstar(args):
    if args.lattice:
        P = canonical_bol(lattice_from_json(_load(args.lattice))).pls
    elif args.structure:
        P = pls_from_json(_load(args.structure))
    else:
        print("rstar needs --lattice or a point-line JSON file", file=sys.stderr)
        return 2
    print(rstar(P))
    return 0


def cmd_witness_triangle(args):
    L = lattice_from_json(_load(args.lattice))
    B = canonical_bol(L)
    configs = triangle_configurations(B)
    if args.count:
        print(len(configs))
        return 0
    if not configs:
        print("no triangle configurations")
        return 0
    cfg = configs[0]
    a, b = cyclic_localization_witness(L, B, cfg)
    print("triangle lines:")
    for line in (cfg.l1, cfg.l2, cfg.l3, cfg.l4):
        print("  {" + ", ".join(L.name(p) for p in sorted(line)) + "}")
    print(
        "corners "
        + ", ".join(L.name(p) for p in (cfg.s, cfg.p1, cfg.p2))
        + "; contacts "
        + ", ".join(L.name(p) for p in (cfg.q, cfg.r, cfg.p3))
    )
    print(f"cyclic localization at covering ({L.name(a)}, {L.name(b)})")
    return 0


# -- parser -------------------------------------------------------------


def _build_parser():
    p = argparse.ArgumentParser(
        prog="modlat",
        description="modular lattices, bases of lines, wildcard enumeration",
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="closed order ideals as wildcard rows")
    e.add_argument("--poset", required=True, help="ground poset JSON")
    e.add_argument("--lines", help="line sets JSON")
    e.add_argument("--count", action="store_true", help="print only the total")
    e.add_argument("--expand", action="store_true", help="print every bitstring")
    e.add_argument("--out", help="write the row set as JSON")
    e.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("rebuild", help="lattice of the closed order ideals")
    r.add_argument("--poset", required=True)
    r.add_argument("--lines")
    r.add_argument("--dot", action="store_true", help="print DOT instead of a summary")
    r.add_argument("--out", help="write the lattice as JSON")
    r.set_defaults(func=cmd_rebuild)

    a = sub.add_parser("analyze", help="parameter profile and verdicts")
    a.add_argument("--lattice", required=True, help="lattice JSON")
    a.add_argument("--cap", type=int, default=1000, help="bases-of-lines cap")
    a.add_argument("--out", help="write the report as JSON")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run every check over the stock corpus")
    v.add_argument("--cap", type=int, default=1000)
    v.add_argument("--jobs", type=int, default=1, help="parallel lattices")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bol", help="canonical base of lines")
    b.add_argument("--lattice", required=True)
    b.add_argument("--all-bols", action="store_true", help="count all bases")
    b.add_argument("--cap", type=int, default=1000)
    b.add_argument("--out", help="write the base as JSON")
    b.set_defaults(func=cmd_bol)

    lo = sub.add_parser("localize", help="restrict the base to a covering")
    lo.add_argument("--lattice", required=True)
    lo.add_argument("a", help="lower element (name or index)")
    lo.add_argument("b", help="upper element (name or index)")
    lo.add_argument("--out", help="write the point-line structure as JSON")
    lo.set_defaults(func=cmd_localize)

    g = sub.add_parser("subgroup-lattice", help="subgroups of a finite abelian group")
    g.add_argument("--group", required=True, help="moduli, e.g. 2,2,2 or 4,4")
    g.add_argument("--count", action="store_true")
    g.add_argument("--analyze", action="store_true")
    g.add_argument("--dot", action="store_true")
    g.add_argument("--cap", type=int, default=1000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_subgroup_lattice)

    d = sub.add_parser("distributive", help="lattice generated by a set system")
    d.add_argument("--sets", required=True, help="0/1 matrix text file")
    d.add_argument("--count", action="store_true")
    d.add_argument("--dot", action="store_true")
    d.add_argument("--out")
    d.set_defaults(func=cmd_distributive)

    s = sub.add_parser("rstar", help="splittings needed to acyclify")
    s.add_argument("structure", nargs="?", help="point-line JSON file")
    s.add_argument("--lattice", help="use the canonical base of this lattice")
    s.set_defaults(func=cmd_rstar)

    w = sub.add_parser("witness-triangle", help="covering with a cyclic localization")
    w.add_argument("--lattice", required=True)
    w.add_argument("--count", action="store_true", help="print configuration count")
    w.set_defaults(func=cmd_witness_triangle)

    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(exc, file=sys.stderr)
        return 2
    except (LatticeError, PlsError, WildcardError, NotAClosureSystem, ValueError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
