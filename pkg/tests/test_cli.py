import csv
import io
import json

from pytest import raises

from qzeta import cli
from qzeta.cli import RECORD_FIELDS


def run(argv, capsys):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_eval_qzeta(capsys):
    rc, out, err = run(
        ["eval", "--comp", "2", "--q", "1/2", "--tol", "1e-6", "--digits", "6"], capsys
    )
    assert rc == 0
    assert "target  zeta_q[2]" in out
    assert "q       1/2" in out
    assert "0.686008" in out
    assert "(6 digits)" in out


def test_eval_inadmissible(capsys):
    rc, out, err = run(["eval", "--comp", "1,2", "--q", "1/2"], capsys)
    assert rc == 2
    assert out == ""
    assert "error:" in err
    assert "inadmissible" in err


def test_eval_classical(capsys):
    rc, out, err = run(
        ["eval", "--comp", "2", "--classical", "--tol", "1e-8", "--digits", "10"],
        capsys,
    )
    assert rc == 0
    assert "target  zeta(2)" in out
    assert "1.64493406" in out
    assert "q " not in out.splitlines()[1]


def test_eval_phi(capsys):
    rc, out, err = run(
        ["eval", "--phi", "3", "--q", "1/2", "--tol", "1e-10", "--digits", "8"], capsys
    )
    assert rc == 0
    assert "target  phi_q[3]" in out
    assert "0.02688994" in out


def test_eval_dyadic_engine(capsys):
    rc, out, err = run(
        ["eval", "--comp", "2,1", "--q", "3/4", "--engine", "dyadic", "--digits", "8"],
        capsys,
    )
    assert rc == 0
    rc2, out2, err2 = run(
        ["eval", "--comp", "2,1", "--q", "3/4", "--digits", "8"], capsys
    )
    mid = [l for l in out.splitlines() if l.startswith("mid")][0]
    mid2 = [l for l in out2.splitlines() if l.startswith("mid")][0]
    assert mid == mid2


def test_eval_flag_conflicts(capsys):
    bad = [
        ["eval", "--comp", "2", "--phi", "3", "--q", "1/2"],
        ["eval", "--q", "1/2"],
        ["eval", "--comp", "2", "--classical", "--q", "1/2"],
        ["eval", "--comp", "2"],
        ["eval", "--comp", "2", "--q", "1/2", "--digits", "-1"],
        ["eval", "--phi", "3", "--classical"],
        ["eval", "--comp", "2", "--q", "0"],
        ["eval", "--comp", "2", "--q", "1"],
        ["eval", "--comp", "2", "--q", "3/2"],
        ["eval", "--comp", "2", "--q", "1/2", "--tol", "0"],
    ]
    for argv in bad:
        rc, out, err = run(argv, capsys)
        assert rc == 2, argv
        assert "error:" in err


def test_eval_truncation_cap(capsys):
    rc, out, err = run(
        ["eval", "--comp", "2", "--q", "999/1000", "--tol", "1e-30",
         "--max-terms", "50"],
        capsys,
    )
    assert rc == 3
    assert "inconclusive" in err


def test_argparse_rejections(capsys):
    for argv in (
        [],
        ["eval", "--engine", "bogus"],
        ["verify"],
        ["verify", "nonsense", "--s", "2", "--t", "2"],
        ["sweep", "--format", "xml"],
    ):
        with raises(SystemExit):
            cli.main(argv)


def test_version_flag(capsys):
    with raises(SystemExit):
        cli.main(["--version"])
    out = capsys.readouterr().out
    assert out.startswith("qzeta ")


def test_verify_symbolic_kinds(capsys):
    for kind in ("lemma", "operator", "parfrac"):
        rc, out, err = run(["verify", kind, "--s", "3", "--t", "2"], capsys)
        assert rc == 0
        assert "status: verified" in out


def test_verify_lemma_json(capsys):
    rc, out, err = run(
        ["verify", "lemma", "--s", "2", "--t", "2", "--json"], capsys
    )
    assert rc == 0
    payload = json.loads(out)
    assert payload["config"]["command"] == "verify lemma"
    (record,) = payload["records"]
    assert record["identity"] == "lemma"
    assert record["status"] == "verified"
    assert record["lhs_lo"] is None  # symbolic checks carry no enclosures
    assert set(record) == set(RECORD_FIELDS)


def test_verify_qdecomp_json(capsys):
    rc, out, err = run(
        ["verify", "qdecomp", "--s", "2", "--t", "2", "--q", "1/2",
         "--tol", "1e-20", "--json"],
        capsys,
    )
    assert rc == 0
    payload = json.loads(out)
    assert set(payload) == {"tool_version", "config", "records"}
    assert payload["config"]["tol"] == f"1/{10**20}"
    (record,) = payload["records"]
    assert record["status"] == "verified"
    assert record["q"] == "1/2"
    # exact endpoints ride along as rational strings
    assert "/" in record["lhs_lo"] and "/" in record["rhs_hi"]
    assert set(record) == set(RECORD_FIELDS)


def test_verify_human_output(capsys):
    rc, out, err = run(
        ["verify", "stuffle", "--s", "2", "--t", "3", "--q", "1/2",
         "--tol", "1e-12"],
        capsys,
    )
    assert rc == 0
    assert "stuffle(2,3) at q = 1/2" in out
    assert "lhs in [" in out
    assert "digits, outward)" in out
    assert "status: verified" in out


def test_verify_euler(capsys):
    rc, out, err = run(
        ["verify", "euler", "--s", "2", "--t", "2", "--tol", "1e-6"], capsys
    )
    assert rc == 0
    assert "euler(2,2), tol" in out
    assert "status: verified" in out


def test_verify_cross(capsys):
    rc, out, err = run(
        ["verify", "cross", "--s", "2", "--t", "2", "--q", "1/2",
         "--tol", "1e-15"],
        capsys,
    )
    assert rc == 0
    assert "status: verified" in out


def test_verify_rejects_bad_indices(capsys):
    rc, out, err = run(
        ["verify", "qdecomp", "--s", "1", "--t", "2", "--q", "1/2"], capsys
    )
    assert rc == 2
    assert "error:" in err


def test_verify_proof_sums(capsys):
    rc, out, err = run(
        ["verify", "proof-sums", "--s", "2", "--t", "2", "--q", "1/2",
         "--N", "60"],
        capsys,
    )
    assert rc == 0
    assert "S[2,2,0,0] vs zeta_q[2,2]" in out
    assert "T[2,2,1] vs phi_q[3]" in out
    assert "status: verified" in out

    rc, out, err = run(
        ["verify", "proof-sums", "--s", "3", "--t", "2", "--q", "1/2",
         "--N", "60", "--a", "1", "--j", "2", "--json"],
        capsys,
    )
    assert rc == 0
    payload = json.loads(out)
    names = [r["identity"] for r in payload["records"]]
    assert names == ["proof-sum-S", "proof-sum-T"]
    for record in payload["records"]:
        assert record["status"] == "verified"
        assert record["rhs_lo"] == record["rhs_hi"]  # the exact truncated sum


def test_sweep_stdout_json_sorted_and_deterministic(capsys):
    argv = [
        "sweep", "--s-min", "2", "--s-max", "3", "--t-min", "2", "--t-max", "2",
        "--q", "3/4,1/2", "--identities", "stuffle,qdecomp", "--tol", "1e-10",
    ]
    rc, out, err = run(argv, capsys)
    assert rc == 0
    assert "8 records: 8 verified" in err
    payload = json.loads(out)
    records = payload["records"]
    assert len(records) == 8
    keys = [(r["identity"], r["s"], r["t"], r["q"]) for r in records]
    assert keys == [
        ("qdecomp", 2, 2, "1/2"),
        ("qdecomp", 2, 2, "3/4"),
        ("qdecomp", 3, 2, "1/2"),
        ("qdecomp", 3, 2, "3/4"),
        ("stuffle", 2, 2, "1/2"),
        ("stuffle", 2, 2, "3/4"),
        ("stuffle", 3, 2, "1/2"),
        ("stuffle", 3, 2, "3/4"),
    ]
    assert all(r["status"] == "verified" for r in records)
    rc2, out2, err2 = run(argv, capsys)
    assert out2 == out  # byte-identical report for identical invocations


def test_sweep_csv_matches_json(capsys):
    base = [
        "sweep", "--s-min", "2", "--s-max", "2", "--t-min", "2", "--t-max", "3",
        "--q", "1/2", "--identities", "stuffle", "--tol", "1e-10",
    ]
    rc, out_json, err = run(base, capsys)
    assert rc == 0
    records = json.loads(out_json)["records"]
    rc, out_csv, err = run(base + ["--format", "csv"], capsys)
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out_csv)))
    assert rows[0] == list(RECORD_FIELDS)
    assert len(rows) == len(records) + 1
    for record, row in zip(records, rows[1:]):
        for field, cell in zip(RECORD_FIELDS, row):
            value = record[field]
            assert cell == ("" if value is None else str(value))


def test_sweep_workers_agree(capsys):
    base = [
        "sweep", "--s-min", "2", "--s-max", "3", "--t-min", "2", "--t-max", "3",
        "--q", "1/2", "--identities", "cross", "--tol", "1e-12",
    ]
    rc1, out1, _ = run(base + ["--workers", "1"], capsys)
    rc4, out4, _ = run(base + ["--workers", "4"], capsys)
    assert rc1 == rc4 == 0
    assert json.loads(out1)["records"] == json.loads(out4)["records"]


def test_sweep_euler_rows_have_no_q(capsys):
    rc, out, err = run(
        ["sweep", "--s-min", "2", "--s-max", "2", "--t-min", "2", "--t-max", "3",
         "--q", "1/2", "--identities", "euler", "--tol", "1e-6"],
        capsys,
    )
    assert rc == 0
    records = json.loads(out)["records"]
    assert [r["q"] for r in records] == [None, None]
    assert all(r["status"] == "verified" for r in records)


def test_sweep_config_file(tmp_path, capsys):
    report = tmp_path / "report.json"
    config = tmp_path / "sweep.cfg"
    config.write_text(
        "# small smoke grid\n"
        "s_min = 2\n"
        "s_max = 2   # inline comment\n"
        "t_min=2\n"
        "t_max=2\n"
        "q_values=1/2,3/4\n"
        "identities=stuffle\n"
        "tol=1e-10\n"
        f"output={report}\n"
    )
    rc, out, err = run(["sweep", "--config", str(config)], capsys)
    assert rc == 0
    assert out == ""  # report went to the file
    assert f"-> {report}" in err
    payload = json.loads(report.read_text())
    assert len(payload["records"]) == 2
    # command-line flags override file settings
    rc, out, err = run(
        ["sweep", "--config", str(config), "--identities", "qdecomp",
         "--output", "-"],
        capsys,
    )
    assert rc == 0
    assert all(r["identity"] == "qdecomp" for r in json.loads(out)["records"])


def test_sweep_config_file_errors(tmp_path, capsys):
    bad_key = tmp_path / "bad_key.cfg"
    bad_key.write_text("bogus=3\n")
    rc, out, err = run(["sweep", "--config", str(bad_key)], capsys)
    assert rc == 2 and "unknown config key" in err

    bad_line = tmp_path / "bad_line.cfg"
    bad_line.write_text("identities\n")
    rc, out, err = run(["sweep", "--config", str(bad_line)], capsys)
    assert rc == 2 and "expected key=value" in err

    rc, out, err = run(["sweep", "--config", str(tmp_path / "missing.cfg")], capsys)
    assert rc == 2 and "cannot read config file" in err


def test_sweep_argument_errors(capsys):
    cases = [
        (["sweep", "--q", "1/2"], "empty identity set"),
        (["sweep", "--identities", "stuffle", "--s-min", "1"], "2 <= min <= max <= 12"),
        (["sweep", "--identities", "stuffle", "--s-max", "13"], "2 <= min <= max <= 12"),
        (["sweep", "--identities", "euler,bogus"], "unknown identities"),
        (["sweep", "--identities", "stuffle", "--q", " "], "at least one q"),
        (["sweep", "--identities", "stuffle", "--workers", "0"], "workers"),
    ]
    for argv, fragment in cases:
        rc, out, err = run(argv, capsys)
        assert rc == 2, argv
        assert fragment in err


def test_sweep_cap_yields_inconclusive_exit(capsys):
    rc, out, err = run(
        ["sweep", "--s-min", "2", "--s-max", "2", "--t-min", "2", "--t-max", "2",
         "--q", "9/10", "--identities", "qdecomp", "--max-terms", "10"],
        capsys,
    )
    assert rc == 3
    records = json.loads(out)["records"]
    assert [r["status"] for r in records] == ["inconclusive"]


def test_limit_small_run(capsys):
    rc, out, err = run(
        ["limit", "--s", "2", "--t", "2", "--steps", "4", "--tol", "1e-4"], capsys
    )
    assert rc == 0
    lines = out.splitlines()
    # mid is only pinned to ~tol here, so check a prefix well inside that
    assert lines[0].startswith("classical zeta(2)*zeta(2) ~ 2.7058")
    rows = [l for l in lines if l.lstrip().startswith(("1 ", "2 ", "3 ", "4 "))]
    assert len(rows) == 4
    gaps = [float(row.split()[-1]) for row in rows]
    assert gaps[-1] < gaps[0]
    assert "shrinking" in lines[-1]


def test_limit_argument_errors(capsys):
    rc, out, err = run(["limit", "--s", "2", "--t", "2", "--steps", "0"], capsys)
    assert rc == 2 and "--steps" in err
    rc, out, err = run(["limit", "--s", "1", "--t", "2", "--steps", "3"], capsys)
    assert rc == 2 and "error:" in err
