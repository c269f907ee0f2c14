import csv
import io
import json
import subprocess
import sys

import pytest

from selfideal.cli import ATLAS_HEADER, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def test_classify_examples():
    r = run_json("classify", "--ring", "z", "4 ; 3")
    assert r["classification"] == "RegularNonunit"
    assert r["irreducible"] == "CoprimePrimePower"
    assert r["prime"] is False
    r = run_json("classify", "--ring", "z", "0 ; 1")
    assert r["irreducible"] == "ZeroDivisorPrime" and r["prime"] is True
    r = run_json("classify", "--ring", "fp", "--char", "2", "0 1 ; 1")
    assert r["irreducible"] == "PrimeNorm"
    assert r["local_profile"] == {"p": "0 1", "n": 1, "k": 0}


def test_classify_profile_infinite_k():
    r = run_json("classify", "16 ; 0")
    assert r["local_profile"] == {"p": "2", "n": 4, "k": "inf"}
    assert r["canonical"] == {"a": "16", "b": "0"}


def test_factor_examples():
    r = run_json("factor", "--ring", "z", "0 ; 12")
    assert [(f["a"], f["b"]) for f in r["factors"]] == [("0", "1"), ("2", "0"), ("2", "0"), ("3", "0")]
    assert r["length"] == 4
    assert run_json("factor", "--mode", "count", "4 ; 0")["count"] == 2
    r = run_json("factor", "--mode", "all", "8 ; 3")
    assert r["count"] == 1
    assert r["factorizations"] == [[{"a": "8", "b": "3"}]]


def test_factor_all_sorted():
    r = run_json("factor", "--mode", "all", "0 ; 4")
    assert r["count"] == 5
    assert r["factorizations"][0][0] == {"a": "0", "b": "1"}


def test_invariants_examples():
    r = run_json("invariants", "--ring", "z", "16 ; 0")
    assert r["lengths"] == [2, 4] and r["delta"] == [2] and r["catenary"] == 4
    assert r["elasticity"] == "2/1" and r["oracle_agrees"] is True
    assert r["family"] == {"clause": "interval_plus_two", "m": 2, "n": 2}
    assert run_json("invariants", "0 ; 12")["lengths"] == [3, 4]
    r = run_json("invariants", "1 ; 9")
    assert r["lengths"] == [0] and r["catenary"] == 0


def test_invariants_oracle_modes():
    assert run_json("invariants", "--oracle", "off", "64 ; 16")["oracle_agrees"] is None
    assert run_json("invariants", "--oracle", "on", "64 ; 16")["oracle_agrees"] is True
    assert run_json("invariants", "--oracle", "auto", "128 ; 0")["oracle_agrees"] is None


def test_witness_examples():
    r = run_json("witness", "--family", '{"clause":"interval","m":2,"n":5}')
    assert r["lengths"] == [2, 3, 4, 5] and r["verified"] and r["oracle_agrees"]
    r = run_json("witness", "--family", '{"clause":"interval_plus_two","m":2,"n":2}')
    assert r["lengths"] == [2, 4]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["classify", "4 3"], 2),
        (["classify", "--ring", "q", "4 ; 3"], 2),
        (["classify", "--ring", "fp", "--char", "4", "1 ; 1"], 2),
        (["factor", "1 ; 5"], 3),
        (["factor", "0 ; 0"], 3),
        (["invariants", "0 ; 0"], 3),
        (["witness", "--family", "{not json"], 2),
        (["witness", "--family", '{"clause":"interval","m":1,"n":3}'], 3),
        (["witness", "--ring", "fp", "--char", "3", "--family", '{"clause":"interval_plus_two","m":3,"n":4}'], 3),
        (["atlas", "--prime", "4", "--max-n", "2"], 2),
        (["atlas", "--prime", "5", "--max-n", "8"], 4),
        (["invariants", "--budget", "10", "0 ; 720"], 4),
        (["atlas", "--prime", "2", "--max-n", "2", "--out", "/nonexistent/dir/a.csv"], 5),
        ([], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code
    if code != 0:
        assert capsys.readouterr().err


def test_atlas_rows_and_header(tmp_path):
    path = tmp_path / "atlas.csv"
    code, _ = run("atlas", "--ring", "z", "--prime", "2", "--max-n", "4", "--out", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ATLAS_HEADER
    assert len(rows) - 1 == sum(2 ** n + 1 for n in range(1, 5)) == 34
    by_key = {(r[1], r[2]): r for r in rows[1:]}
    assert by_key[("4", "0")][4:] == ["2", "4", "2", "4", "4", "interval_plus_two:2:2"]


def test_atlas_stdout_polynomial():
    code, text = run("atlas", "--ring", "fp", "--char", "2", "--prime", "0 1", "--max-n", "3", "--out", "-")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ATLAS_HEADER and len(rows) - 1 == 2 + 4 + 8 + 3


def test_atlas_deterministic_across_jobs():
    a = run("atlas", "--prime", "3", "--max-n", "4")[1]
    b = run("atlas", "--prime", "3", "--max-n", "4", "--jobs", "3")[1]
    assert a == b and a


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "selfideal", "classify", "0 ; 1"], capture_output=True, text=True
    )
    assert p.returncode == 0
    assert json.loads(p.stdout)["prime"] is True
