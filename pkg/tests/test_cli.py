import csv
import io
import json

import pytest

from quadcover.cli import main
from quadcover.designs import fileformat
from quadcover.designs.fileformat import Design
from quadcover.designs.steiner import construct_sts
from quadcover.designs.system import BlockSystem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_f(capsys):
    code, out, _ = run(capsys, "bounds", "f", "6", "7")
    assert code == 0
    assert out.startswith("lower=39 upper=39 exact=yes (")


def test_bounds_f_json(capsys):
    code, out, _ = run(capsys, "bounds", "f", "7", "6", "--json")
    data = json.loads(out)
    assert code == 0 and data["exact"] and data["upper"] == 42


def test_bounds_L(capsys):
    code, out, _ = run(capsys, "bounds", "L", "21")
    assert code == 0 and out.startswith("147 (") and "3 mod 18" in out


def test_bounds_usage_error(capsys):
    code, _, err = run(capsys, "bounds", "f", "6")
    assert code == 2 and "usage" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_construct_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "f76.design"
    code, _, err = run(capsys, "construct", "ab", "--a", "7", "--b", "6", "-o", str(path))
    assert code == 0 and "42 blocks" in err
    first = path.read_text()
    code, out, _ = run(capsys, "verify", "--kind", "ab", str(path))
    assert code == 0 and out.startswith("valid")
    again = fileformat.dumps(fileformat.read(path))
    assert again == first


def test_verify_reports_uncovered_triple(capsys, tmp_path):
    path = tmp_path / "missing-block.design"
    run(capsys, "construct", "ab", "--a", "3", "--b", "2", "-o", str(path))
    d = fileformat.read(path)
    short = Design("ab_system", BlockSystem.from_blocks(5, 4, d.system.blocks[:-1]), d.fields)
    fileformat.write(path, short)
    code, out, _ = run(capsys, "verify", "--kind", "ab", str(path))
    assert code == 1 and out.startswith("invalid: uncovered ")


def test_construct_method(capsys, tmp_path):
    code, _, err = run(capsys, "construct", "ab", "--a", "6", "--b", "7", "--method", "doubling",
                       "-o", str(tmp_path / "x.design"))
    assert code == 0 and "doubling" in err
    code, _, err = run(capsys, "construct", "ab", "--a", "8", "--b", "3", "--method", "mod12")
    assert code == 3


def test_construct_missing_ingredient(capsys):
    code, _, err = run(capsys, "construct", "r", "--a", "6", "--b", "6", "--r", "5")
    assert code == 4 and "error" in err


def test_construct_lottery(capsys, tmp_path):
    path = tmp_path / "l10.design"
    code, _, err = run(capsys, "construct", "lottery", "--n", "10", "--partition", "3,3,4", "-o", str(path))
    assert code == 0 and "15 blocks" in err
    code, out, _ = run(capsys, "verify", "--kind", "lottery", str(path))
    assert code == 0
    code, _, _ = run(capsys, "construct", "lottery", "--n", "10", "--partition", "3,3,3")
    assert code == 2


def test_verify_sts_and_family(capsys, tmp_path):
    path = tmp_path / "sts.design"
    fileformat.write(path, Design("sts", construct_sts(9)))
    assert run(capsys, "verify", "--kind", "sts", str(path))[0] == 0
    assert run(capsys, "verify", "--kind", "sqs", str(path))[0] == 1
    assert run(capsys, "verify", "--kind", "packing", str(path))[0] == 0
    assert run(capsys, "verify", "--kind", "covering", str(path))[0] == 0
    code, _, _ = run(capsys, "verify", "--kind", "family", "--family-kind", "LargeSetSTS", str(path))
    assert code == 1


def test_oracle_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle", "f", "4", "3", "-o", str(tmp_path / "w.design"))
    assert (code, out.strip()) == (0, "optimal 8")
    assert run(capsys, "verify", "--kind", "ab", str(tmp_path / "w.design"))[0] == 0
    assert run(capsys, "oracle", "f", "2", "1")[:2] == (1, "infeasible\n")
    code, out, _ = run(capsys, "oracle", "L", "9", "--budget-nodes", "100")
    assert code == 3 and out.startswith("bounds ")
    assert run(capsys, "oracle", "covering", "7")[1].strip() == "optimal 7"


def test_table(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "L", "--from", "8", "--to", "16", "--csv", str(target))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert list(rows[0]) == ["n", "residue", "bound", "partition", "size", "verified"]
    assert [int(r["n"]) for r in rows] == list(range(8, 17))
    for r in rows:
        assert r["verified"] in ("yes", "formula-only")
        if r["verified"] == "yes":
            assert int(r["size"]) <= int(r["bound"])
    code, out, _ = run(capsys, "table", "L", "--from", "9", "--to", "10", "--no-verify")
    assert "formula-only" in out


def test_ingredients(capsys, tmp_path):
    code, out, _ = run(capsys, "ingredients", "list")
    assert code == 0 and "lts9" in out
    reg = tmp_path / "reg"
    src = tmp_path / "sts13.design"
    fileformat.write(src, Design("sts", construct_sts(13)))
    code, out, _ = run(capsys, "ingredients", "add", str(src), "--registry", str(reg), "--kind", "STS")
    assert code == 0 and "verified" in out
    code, out, _ = run(capsys, "ingredients", "verify", "--registry", str(reg))
    assert code == 0
    stored = next(reg.glob("STS-*.design"))
    stored.write_text(stored.read_text() + "\n")
    code, out, _ = run(capsys, "ingredients", "verify", "--registry", str(reg))
    assert code == 1 and "digest mismatch" in out
    assert "verify" in (reg / "registry.log").read_text()


def test_ingredients_add_rejects_bad_design(capsys, tmp_path):
    src = tmp_path / "bad.design"
    fileformat.write(src, Design("sts", BlockSystem.from_blocks(7, 3, [(0, 1, 2)])))
    code, _, err = run(capsys, "ingredients", "add", str(src), "--registry", str(tmp_path / "r"), "--kind", "STS")
    assert code == 1 and "error" in err
