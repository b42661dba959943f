from __future__ import annotations

import json

import pytest

from modlat.algebra import parse_group, subgroup_lattice
from modlat.cli import main
from modlat.corpus import (
    fano_pls,
    m_n,
    seven_point_lattice,
    seven_point_lines,
    seven_point_poset,
)
from modlat.lattice import lattice_from_json, lattice_to_json
from modlat.pls import pls_from_json, pls_to_json
from modlat.wildcard import poset_to_json, rowset_from_json, total_count


@pytest.fixture
def files(tmp_path):
    """The stock input files, written once per test."""
    poset = seven_point_poset()
    labels = poset.labels
    out = {
        "poset": tmp_path / "poset.json",
        "lines": tmp_path / "lines.json",
        "m3": tmp_path / "m3.json",
        "seven": tmp_path / "seven.json",
        "z2cubed": tmp_path / "z2cubed.json",
        "fano": tmp_path / "fano.json",
        "sets": tmp_path / "sets.txt",
    }
    out["poset"].write_text(json.dumps(poset_to_json(poset)))
    out["lines"].write_text(
        json.dumps({"lines": [[labels[p] for p in ln] for ln in seven_point_lines()]})
    )
    out["m3"].write_text(json.dumps(lattice_to_json(m_n(3))))
    out["seven"].write_text(json.dumps(lattice_to_json(seven_point_lattice())))
    out["z2cubed"].write_text(
        json.dumps(lattice_to_json(subgroup_lattice(parse_group("2,2,2"))))
    )
    out["fano"].write_text(json.dumps(pls_to_json(fano_pls())))
    out["sets"].write_text("100\n010\n001\n")
    return {k: str(v) for k, v in out.items()}


# -- enumerate -------------------------------------------------------------


def test_enumerate_count(files, capsys):
    assert main(["enumerate", "--poset", files["poset"], "--lines", files["lines"], "--count"]) == 0
    assert capsys.readouterr().out.strip() == "13"


def test_enumerate_expand(files, capsys):
    assert main(["enumerate", "--poset", files["poset"], "--lines", files["lines"], "--expand"]) == 0
    rows = capsys.readouterr().out.split()
    assert len(rows) == 13
    assert rows == sorted(rows)
    assert all(len(r) == 7 and set(r) <= {"0", "1"} for r in rows)


def test_enumerate_text_and_out(files, capsys, tmp_path):
    out = str(tmp_path / "rows.json")
    assert main(["enumerate", "--poset", files["poset"], "--lines", files["lines"], "--out", out]) == 0
    text = capsys.readouterr().out
    assert "total 13 in 6 rows" in text
    rows = rowset_from_json(json.loads(open(out).read()))
    assert total_count(rows) == 13


def test_enumerate_without_lines(files, capsys):
    assert main(["enumerate", "--poset", files["poset"], "--count"]) == 0
    assert capsys.readouterr().out.strip() == "45"


# -- rebuild ---------------------------------------------------------------


def test_rebuild_summary(files, capsys, tmp_path):
    out = str(tmp_path / "lat.json")
    rc = main(["rebuild", "--poset", files["poset"], "--lines", files["lines"], "--out", out])
    assert rc == 0
    got = capsys.readouterr().out.strip()
    assert got == "13 elements, 7 join-irreducibles, 3 line intervals, roundtrip ok"
    assert lattice_from_json(json.loads(open(out).read())).n == 13


def test_rebuild_dot(files, capsys):
    assert main(["rebuild", "--poset", files["poset"], "--lines", files["lines"], "--dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


# -- analyze and verify -----------------------------------------------------


def test_analyze_m3(files, capsys, tmp_path):
    out = str(tmp_path / "report.json")
    assert main(["analyze", "--lattice", files["m3"], "--out", out]) == 0
    text = capsys.readouterr().out
    assert "j (join-irreducibles) 3" in text
    assert "[FAIL]" not in text
    data = json.loads(open(out).read())
    assert data["j"] == 3 and data["acyclic"] is True


def test_verify_runs_clean(capsys):
    assert main(["verify"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-1] == "33 lattices, 0 failing checks"
    assert all(line.startswith("ok") for line in lines[:-1])


def test_verify_parallel_matches(capsys):
    assert main(["verify", "--jobs", "4"]) == 0
    assert capsys.readouterr().out.strip().endswith("33 lattices, 0 failing checks")


# -- bases of lines -----------------------------------------------------------


def test_bol_m3(files, capsys):
    assert main(["bol", "--lattice", files["m3"]]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "{m1, m2, m3} top 1"
    assert lines[1] == "3 points, 1 lines, 1 components"


def test_bol_all_bases(files, capsys):
    assert main(["bol", "--lattice", files["seven"], "--all-bols"]) == 0
    assert capsys.readouterr().out.strip() == "4 bases; r* values [0]"


def test_bol_all_bases_truncates(files, capsys):
    assert main(["bol", "--lattice", files["seven"], "--all-bols", "--cap", "2"]) == 0
    assert "(truncated)" in capsys.readouterr().out


def test_bol_out_feeds_rstar(files, capsys, tmp_path):
    out = str(tmp_path / "bol.json")
    assert main(["bol", "--lattice", files["z2cubed"], "--out", out]) == 0
    capsys.readouterr()
    assert main(["rstar", out]) == 0
    assert capsys.readouterr().out.strip() == "8"


# -- localize -----------------------------------------------------------------


def test_localize_by_name(files, capsys):
    assert main(["localize", "--lattice", files["m3"], "m1", "1"]) == 0
    got = capsys.readouterr().out.strip().splitlines()
    assert got == ["{m2, m3}", "2 points, 1 lines, 1 components, acyclic"]


def test_localize_coatom_covering_is_cyclic(files, capsys, tmp_path):
    out = str(tmp_path / "loc.json")
    assert main(["localize", "--lattice", files["z2cubed"], "--out", out, "8", "15"]) == 0
    summary = capsys.readouterr().out.strip().splitlines()[-1]
    assert summary == "4 points, 6 lines, 1 components, cyclic"
    P = pls_from_json(json.loads(open(out).read()))
    assert len(P.points) == 4 and len(P.lines) == 6
    assert main(["rstar", out]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_localize_rejects_bad_elements(files, capsys):
    assert main(["localize", "--lattice", files["m3"], "nope", "1"]) == 2
    assert "ValueError: no element named 'nope'" in capsys.readouterr().err
    assert main(["localize", "--lattice", files["m3"], "99", "1"]) == 2
    assert "out of range" in capsys.readouterr().err


def test_localize_rejects_non_covering(files, capsys):
    assert main(["localize", "--lattice", files["m3"], "0", "1"]) == 2
    assert "NotACovering" in capsys.readouterr().err


# -- algebra commands ----------------------------------------------------------


def test_subgroup_lattice_outputs(files, capsys, tmp_path):
    assert main(["subgroup-lattice", "--group", "2,2,2"]) == 0
    assert capsys.readouterr().out.strip() == "Z2xZ2xZ2: 16 subgroups"

    assert main(["subgroup-lattice", "--group", "2,2,2", "--count"]) == 0
    assert capsys.readouterr().out.strip() == "16"

    assert main(["subgroup-lattice", "--group", "2,2,2", "--analyze"]) == 0
    text = capsys.readouterr().out
    assert "j (join-irreducibles) 7" in text
    assert "acyclic               no" in text
    assert "[FAIL]" not in text

    out = str(tmp_path / "grp.json")
    assert main(["subgroup-lattice", "--group", "4,4", "--out", out, "--count"]) == 0
    capsys.readouterr()
    assert lattice_from_json(json.loads(open(out).read())).n == 15


def test_subgroup_lattice_dot(capsys):
    assert main(["subgroup-lattice", "--group", "8", "--dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_distributive_command(files, capsys):
    assert main(["distributive", "--sets", files["sets"]]) == 0
    assert capsys.readouterr().out.strip() == "3 generators, 3 join-irreducibles, 8 elements"
    assert main(["distributive", "--sets", files["sets"], "--count"]) == 0
    assert capsys.readouterr().out.strip() == "8"


# -- rstar and witnesses -----------------------------------------------------


def test_rstar_of_fano(files, capsys):
    assert main(["rstar", files["fano"]]) == 0
    assert capsys.readouterr().out.strip() == "8"
    assert main(["rstar", "--lattice", files["z2cubed"]]) == 0
    assert capsys.readouterr().out.strip() == "8"


def test_rstar_needs_an_input(capsys):
    assert main(["rstar"]) == 2
    assert "needs --lattice or a point-line JSON" in capsys.readouterr().err


def test_witness_triangle(files, capsys):
    assert main(["witness-triangle", "--lattice", files["z2cubed"], "--count"]) == 0
    assert capsys.readouterr().out.strip() == "84"

    assert main(["witness-triangle", "--lattice", files["z2cubed"]]) == 0
    text = capsys.readouterr().out
    assert text.startswith("triangle lines:")
    assert "corners " in text and "; contacts " in text
    assert "cyclic localization at covering" in text

    assert main(["witness-triangle", "--lattice", files["m3"]]) == 0
    assert capsys.readouterr().out.strip() == "no triangle configurations"


# -- error handling -------------------------------------------------------


def test_missing_file_is_a_usage_error(capsys):
    assert main(["analyze", "--lattice", "/nonexistent/lat.json"]) == 2
    assert capsys.readouterr().err


def test_malformed_json_is_a_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", "--lattice", str(bad)]) == 2
    assert capsys.readouterr().err


def test_bad_group_spec(capsys):
    assert main(["subgroup-lattice", "--group", "0"]) == 2
    assert "ValueError" in capsys.readouterr().err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
