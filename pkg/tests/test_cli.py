import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gop.cli import build_parser, main, run, RunConfig

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
LOG_SYSTEM = str(HERE / "data" / "log.json")


def invoke(*argv):
    cfg = RunConfig(**vars(build_parser().parse_args(list(argv))))
    out, err = io.StringIO(), io.StringIO()
    rc = run(cfg, out, err)
    return rc, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,golden", [
    (["fuchs", "(1-z)*D^2 - D"], "fuchs_log.json"),
    (["galochkin", "--system", LOG_SYSTEM, "--S", "20", "--format", "csv"], "galochkin_log_S20.csv"),
    (["flaplace", "(z-1)*D + 1"], "flaplace.txt"),
])
def test_golden_bytes(argv, golden):
    proc = subprocess.run([sys.executable, "-m", "gop.cli", *argv], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / golden).read_bytes()


def test_galochkin_csv_is_exact():
    rc, out, _ = invoke("galochkin", "--system", LOG_SYSTEM, "--S", "20", "--format", "csv")
    rows = [r.split(",") for r in out.splitlines()[1:]]
    assert rows[9][1] == "2520" and rows[19][1] == "232792560"


def test_galochkin_json_includes_growth():
    rc, out, _ = invoke("galochkin", "--system", LOG_SYSTEM, "--S", "12")
    d = json.loads(out)
    assert rc == 0 and d["growth"]["flag"] == "consistent-with-strict"
    rc, out, _ = invoke("galochkin", "--system", LOG_SYSTEM, "--S", "4")
    assert "growth" not in json.loads(out)


@pytest.mark.parametrize("expr", ["D^-1", "1/(1-z)*D", "z +", "2z", "(z"])
def test_parse_errors_exit_2(expr):
    rc, out, err = invoke("fuchs", expr)
    assert rc == 2 and out == "" and "parse error" in err


def test_domain_errors_exit_1(tmp_path):
    assert invoke("galochkin", "--system", str(tmp_path / "missing.json"))[0] == 1
    assert invoke("galochkin", "--system", LOG_SYSTEM, "--S", "0")[0] == 1
    assert invoke("divide", "--series", "exp", "--xi", "1")[0] == 1
    assert invoke("pade", "--series", "exp", "--N", "1", "--M", "4")[0] == 1
    assert invoke("profile", "--series", "nonsense")[0] == 1
    assert invoke("guess")[0] == 1
    assert invoke("fuchs", "0")[0] == 1


def test_max_terms_env(monkeypatch):
    monkeypatch.setenv("GOP_MAX_TERMS", "10")
    rc, _, err = invoke("profile", "--series", "log", "--terms", "20")
    assert rc == 1 and "GOP_MAX_TERMS" in err
    assert invoke("profile", "--series", "log", "--terms", "10")[0] == 0


def test_profile_csv():
    rc, out, _ = invoke("profile", "--series", "log", "--terms", "10", "--format", "csv")
    assert rc == 0 and out.splitlines()[7].startswith("6,1/6,60,")


def test_guess_and_divide():
    rc, out, _ = invoke("guess", "--series", "log", "--terms", "20", "--max-degree", "1")
    d = json.loads(out)
    assert rc == 0 and d["order"] == 2 and d["exhausted_orders"] == [0, 1]
    rc, out, _ = invoke("divide", "--series", "expmul:1-z", "--terms", "12")
    d = json.loads(out)
    assert rc == 0 and d["coeffs"][3] == "-1/6" and d["mode"] == "checked"
    rc, out, _ = invoke("divide", "--series", "exp", "--mode", "assert-zero", "--terms", "6")
    assert rc == 0 and json.loads(out)["residual"] is None


def test_pade_with_witness():
    rc, out, _ = invoke("pade", "--series", "log", "--series", "geometric", "--N", "4", "--M", "3",
                        "--system", LOG_SYSTEM)
    d = json.loads(out)
    assert rc == 0 and d["Q"] == "5 - 10*z + 6*z^2 - z^3"
    assert d["detR0_nonzero"] is True and d["contact"] >= 7


def test_pade_preset():
    rc, out, _ = invoke("pade", "--series", "log", "--series", "geometric", "--system", LOG_SYSTEM, "--preset", "1")
    d = json.loads(out)
    assert rc == 0 and (d["N"], d["M"]) == (16, 4)


def test_output_file(tmp_path):
    target = tmp_path / "out.txt"
    rc, out, _ = invoke("flaplace", "(z-1)*D + 1", "--output", str(target))
    assert rc == 0 and out == "" and target.read_bytes() == b"-1*z*D + z\n"


def test_main_returns_code():
    assert main(["flaplace", "D"]) == 0
    with pytest.raises(SystemExit) as e:
        main(["nonexistent"])
    assert e.value.code == 2


def test_series_from_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('["1", "1/2", "1/3", "1/4", "1/5", "1/6", "1/7"]')
    rc, out, _ = invoke("profile", "--series", f"file:{path}", "--terms", "6", "--format", "json")
    d = json.loads(out)
    assert rc == 0 and d["dens"] == ["1", "2", "6", "12", "60", "60"]
