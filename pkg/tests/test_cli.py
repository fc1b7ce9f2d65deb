import json

import pandas as pd
import pytest

from config.fixture_config import FixtureConfig
from services.engine_service import TaskOutcome
from snk import batch_exit_code, certificate_path, main


def fixture(name):
    return FixtureConfig.path(name)


def test_regulous_check_writes_a_verifiable_certificate(tmp_path, capsys):
    out = tmp_path / "cusp.cert.json"
    assert main(["regulous-check", fixture("cusp_yx"), "--out", str(out), "-q"]) == 0
    assert "Regulous" in capsys.readouterr().out
    certificate = json.loads(out.read_text(encoding="utf-8"))
    assert certificate["verdict"] == "Regulous"
    assert main(["verify", str(out), "-q"]) == 0
    assert "verified (Regulous)" in capsys.readouterr().out


def test_negative_verdicts_still_exit_zero():
    assert main(["run", fixture("sextic_yx2"), "-q"]) == 0


def test_task_must_match_the_file(capsys):
    assert main(["member", fixture("cusp_yx"), "-q"]) == 1
    assert "regulous-check" in capsys.readouterr().err


def test_budget_overrun_exits_two(capsys):
    assert main(["run", fixture("cusp_yx"), "--budget", "1", "-q"]) == 2
    assert "Undecided" in capsys.readouterr().out


def test_input_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.problem"
    bad.write_text("task: gb\nvars: x, y\n---\nx + z\n", encoding="utf-8")
    assert main(["gb", str(bad), "-q"]) == 1
    assert "line 4, column 5" in capsys.readouterr().err
    assert main(["gb", str(tmp_path / "absent.problem"), "-q"]) == 1


def test_batch_writes_one_certificate_per_file_and_a_summary(tmp_path):
    out = tmp_path / "certs"
    summary = tmp_path / "summary.csv"
    files = [fixture("member_cusp"), fixture("quotient_axes"), fixture("cusp_subintegral")]
    assert main(["run", *files, "--out", str(out), "--summary", str(summary), "-q"]) == 0
    assert sorted(p.name for p in out.iterdir()) == [
        "cusp_subintegral.cert.json", "member_cusp.cert.json", "quotient_axes.cert.json",
    ]
    frame = pd.read_csv(summary)
    assert frame["verdict"].tolist() == ["Member", "Computed", "Subintegral"]
    assert (frame["exit_code"] == 0).all()
    assert main(["verify", *sorted(str(p) for p in out.iterdir()), "-q"]) == 0


def test_summary_needs_a_known_extension(tmp_path):
    assert main(["run", fixture("member_zero"), "--summary", str(tmp_path / "summary.txt"), "-q"]) == 1


def test_verify_rejects_tampered_and_malformed_files(tmp_path, capsys):
    out = tmp_path / "member.cert.json"
    assert main(["member", fixture("member_cusp"), "--out", str(out), "-q"]) == 0
    certificate = json.loads(out.read_text(encoding="utf-8"))
    certificate["verdict"] = "NotMember"
    out.write_text(json.dumps(certificate), encoding="utf-8")
    assert main(["verify", str(out), "-q"]) == 1
    assert "verification failed" in capsys.readouterr().err

    broken = tmp_path / "broken.json"
    broken.write_text("[]", encoding="utf-8")
    assert main(["verify", str(broken), "-q"]) == 1
    assert "malformed" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "snk 0.3.0" in capsys.readouterr().out


def test_certificate_paths():
    assert certificate_path(None, "a/cusp.problem", batch=True) is None
    assert certificate_path("c.json", "a/cusp.problem", batch=False) == "c.json"
    assert certificate_path("certs", "a/cusp.problem", batch=True).endswith("cusp.cert.json")


@pytest.mark.parametrize("statuses, code", [
    (["ok", "ok"], 0),
    (["ok", "undecided"], 2),
    (["undecided", "error"], 1),
    ([], 0),
])
def test_batch_exit_code(statuses, code):
    assert batch_exit_code([TaskOutcome(None, None, s) for s in statuses]) == code
