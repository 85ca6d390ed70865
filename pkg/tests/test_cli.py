import json
import os

import macaulay as M
from macaulay.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_check_poset_macaulay(capsys):
    rc, out, _ = run(capsys, "check-poset", "--poset", "multiset:2,2,2", "--order", "lex")
    assert rc == 0 and "Macaulay" in out


def test_check_poset_failure_exit_and_witness(capsys):
    rc, out, _ = run(capsys, "check-poset", "--poset", "multiset:4,3", "--order", "lex")
    assert rc == 1
    assert "NOT Macaulay" in out and "(3, 0)" in out


def test_check_poset_builtin_family_default(capsys):
    rc, _, _ = run(capsys, "check-poset", "--poset", "builtin:diamond:2", "--order", "family-default")
    assert rc == 0


def test_check_poset_usage_error(capsys):
    rc, _, err = run(capsys, "check-poset", "--poset", "multiset:3,4", "--order", "zigzag")
    assert rc == 2 and "zigzag" in err


def test_check_poset_resource_cap(capsys):
    rc, _, err = run(
        capsys,
        "check-poset", "--poset", "multiset:2,2,2,2,2,2", "--order", "lex",
        "--max-subsets", "1024",
    )
    assert rc == 3 and "resource limit" in err


def test_check_ring_modes_agree(capsys):
    rc, out, _ = run(capsys, "check-ring", "--spec", "cl:3,4", "--order", "lex", "--mode", "both")
    assert rc == 0 and "modes agree: True" in out


def test_check_ring_failure(capsys):
    rc, _, _ = run(capsys, "check-ring", "--spec", "cl:4,3", "--order", "lex")
    assert rc == 1


def test_check_ring_hypothesis_failure(tmp_path, capsys):
    spec = {
        "d": 3,
        "field": "q",
        "generators": [
            [{"exp": [2, 0, 0], "coef": "1"}, {"exp": [1, 1, 0], "coef": "1"},
             {"exp": [1, 0, 1], "coef": "-1"}]
        ],
        "D": 2,
    }
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(spec))
    rc, out, _ = run(capsys, "check-ring", "--spec", str(path), "--order", "lex", "--json")
    assert rc == 4
    report = json.loads(out)
    assert report["verdict"]["hypotheses"]["lli_failing_degree"] == 2


def test_check_ring_mixed_order_not_monomial(tmp_path, capsys):
    spec = {"d": 2, "field": "q", "generators": [], "D": 2}
    spec_path = tmp_path / "free.json"
    spec_path.write_text(json.dumps(spec))
    recipe = {"kind": "degree-major", "per_rank": {"1": {"kind": "lex"}}, "default": {"kind": "colex"}}
    rec_path = tmp_path / "order.json"
    rec_path.write_text(json.dumps(recipe))
    rc, out, _ = run(
        capsys,
        "check-ring", "--spec", str(spec_path), "--order", f"recipe:{rec_path}",
        "--mode", "poset", "--json",
    )
    report = json.loads(out)
    # a monomial order exists (the default candidate verifies), but the
    # supplied mixed order is not one, and it is not Macaulay either
    assert report["verdict"]["hypotheses"]["monomial_order_verified"] is True
    assert report["verdict"]["order_is_monomial"] is False
    assert rc == 1


def test_export_roundtrip(tmp_path, capsys):
    rc, out, _ = run(
        capsys,
        "export", "--poset", "multiset:2,2", "--order", "lex",
        "--what", "poset-json,poset-dot,cubes,order", "--out", str(tmp_path),
    )
    assert rc == 0
    poset = M.parse_json((tmp_path / "poset.json").read_text())
    assert poset == M.multiset_lattice([2, 2])
    dot = (tmp_path / "poset.dot").read_text()
    assert dot.count("->") == 4
    cubes = json.loads((tmp_path / "cubes.json").read_text())
    assert len(cubes) == 4
    order = json.loads((tmp_path / "order.json").read_text())
    assert order["labels"][0] == [0, 0]


def test_export_star_roundtrip(tmp_path, capsys):
    rc, _, _ = run(capsys, "export", "--poset", "star:3", "--what", "poset-json", "--out", str(tmp_path))
    assert rc == 0
    poset = M.parse_json((tmp_path / "poset.json").read_text())
    from macaulay.families import star

    assert poset == star(3)


def test_report_determinism(tmp_path, capsys):
    args = [
        "check-poset", "--poset", "multiset:3,4", "--order", "lex", "--json",
    ]
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("timing")
    r2.pop("timing")
    assert r1 == r2
    assert r1["inputs"]["content_hash"].startswith("sha256:")


def test_ring_subcommands(tmp_path, capsys):
    rc, out, _ = run(capsys, "ring", "build", "--spec", "torus:3,1", "--field", "q")
    assert rc == 0
    data = json.loads(out)
    assert data["hilbert"] == [1, 2, 2, 1]

    rc, out, _ = run(capsys, "ring", "lli", "--spec", "torus:3,1")
    assert rc == 0 and json.loads(out)["level_linearly_independent"]

    rc, out, _ = run(capsys, "ring", "recognize-tree", "--spec", "be-ring:3,2,1")
    assert rc == 0
    assert json.loads(out)["legs"] == [
        {"variable": 1, "cap": 2},
        {"variable": 2, "cap": 2},
    ]

    rc, out, _ = run(capsys, "ring", "recognize-tree", "--spec", "torus:3,1")
    assert rc == 1

    rc, out, _ = run(capsys, "ring", "poset", "--spec", "cl:3,4", "--format", "json")
    assert rc == 0
    assert M.parse_json(out) == M.multiset_lattice([3, 4])


def test_ring_hilbert_and_ims(tmp_path, capsys):
    spec = {"d": 2, "field": "q", "generators": [], "D": 2}
    spec_path = tmp_path / "free.json"
    spec_path.write_text(json.dumps(spec))
    ideal = {"generators": [[{"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "1"}]]}
    ideal_path = tmp_path / "ideal.json"
    ideal_path.write_text(json.dumps(ideal))
    rc, out, _ = run(capsys, "ring", "hilbert", "--spec", str(spec_path), "--ideal", str(ideal_path))
    assert rc == 0
    assert json.loads(out)["hilbert"] == {"0": 0, "1": 1, "2": 2}
    rc, out, _ = run(
        capsys, "ring", "ims", "--spec", str(spec_path), "--ideal", str(ideal_path),
        "--order", "rep-lex",
    )
    assert rc == 0
    data = json.loads(out)
    assert data["imv_dims"] == [0, 1, 2] and data["imi_dims"] == [0, 1, 2]


def test_ring_check_macaulay_alias(capsys):
    rc, _, _ = run(capsys, "ring", "check-macaulay", "--spec", "cl:3,4", "--order", "lex")
    assert rc == 0


def test_leck_family_default_is_usage_error(capsys):
    rc, _, err = run(capsys, "check-poset", "--poset", "leck:2,1", "--order", "family-default")
    assert rc == 2 and "no published order" in err


def test_check_poset_from_file_and_upper_direction(tmp_path, capsys):
    path = tmp_path / "poset.json"
    path.write_text(M.export_json(M.multiset_lattice([3, 4])))
    rc, _, _ = run(capsys, "check-poset", "--poset", str(path), "--order", "lex",
                   "--direction", "upper")
    assert rc == 0
    rc, _, _ = run(capsys, "check-poset", "--poset", str(path), "--order", "family-default")
    assert rc == 2  # no family attached to a plain file


def test_check_poset_writes_report(tmp_path, capsys):
    out = tmp_path / "reports"
    rc, _, _ = run(capsys, "check-poset", "--poset", "multiset:2,2", "--order", "lex",
                   "--out", str(out))
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["verdict"]["holds"] is True
    assert report["field"] is None


def test_check_poset_all_failures(capsys):
    rc, out, _ = run(capsys, "check-poset", "--poset", "multiset:4,3", "--order", "lex",
                     "--all-failures", "--json")
    assert rc == 1
    failures = json.loads(out)["verdict"]["failures"]
    assert len(failures) > 1
    assert {f["level"] for f in failures} >= {3}


def test_check_ring_field_flag(capsys):
    rc, out, _ = run(capsys, "check-ring", "--spec", "torus:3,1", "--order", "family-default",
                     "--field", "q", "--json")
    assert rc == 0
    assert json.loads(out)["inputs"]["field"] == "q"
