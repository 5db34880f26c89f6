import json

import pytest

from modverify.verify.cli import build_parser, main, read_config


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\neps = 1e-9\ncoeff-count=2048\n")
    assert read_config(str(cfg)) == {"eps": "1e-9", "coeff_count": "2048"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("eps 1e-9\n")
    with pytest.raises(ValueError):
        read_config(str(bad))


def test_verbs_registered():
    ap = build_parser()
    verbs = ap._subparsers._group_actions[0].choices
    assert set(verbs) == {"forms", "maass", "norm", "eis", "watson", "localzeta", "arch", "thirdmoment", "report"}


def test_localzeta_writes_reports(tmp_path, capsys):
    out = tmp_path / "o"
    code = main(["--out", str(out), "--threads", "2", "localzeta", "--trials", "4"])
    assert code == 0
    lines = (out / "reports.jsonl").read_text().splitlines()
    assert len(lines) == 4 and all(json.loads(x)["pass"] for x in lines)
    head = (out / "summary.csv").read_text().splitlines()[0]
    assert head == "identity_id,inputs,lhs,rhs,rel_disc,pass"


def test_config_overridden_by_flag(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"out = {tmp_path / 'from_cfg'}\n")
    main(["--config", str(cfg), "localzeta", "--trials", "1"])
    assert (tmp_path / "from_cfg" / "reports.jsonl").exists()
    main(["--config", str(cfg), "--out", str(tmp_path / "flag"), "localzeta", "--trials", "1"])
    assert (tmp_path / "flag" / "reports.jsonl").exists()


def test_report_verb_reevaluates(tmp_path):
    out = tmp_path / "o"
    main(["--out", str(out), "arch", "--which", "gk"])
    rec = out / "reports.jsonl"
    # tamper with one stored value: the verdict is recomputed from the fields
    rows = [json.loads(x) for x in rec.read_text().splitlines()]
    rows[0]["lhs"] = [rows[0]["lhs"][0] * 2, 0.0]
    bad = tmp_path / "tampered.jsonl"
    bad.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    assert main(["--out", str(tmp_path / "r"), "report", str(bad)]) == 1
    assert main(["--out", str(tmp_path / "r2"), "report", str(rec)]) == 0


def test_forms_verb(tmp_path, capsys):
    main(["--out", str(tmp_path), "--coeff-count", "64", "forms", "24"])
    assert (tmp_path / "form_24.1.json").exists() and (tmp_path / "form_24.2.json").exists()
    assert "24.1" in capsys.readouterr().out


def test_exit_code_on_failure(tmp_path):
    # an s too close to the pole is rejected, which counts as a failure
    assert main(["--out", str(tmp_path), "eis", "12", "--s", "1.01"]) == 1
