import json
import subprocess
import sys

import pytest

from seczeta import errors
from seczeta.cli import RunConfig, main
from seczeta.zeros import ZeroStore, reference_store


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zvalue_z1(capsys):
    code, out, _ = run(capsys, "zvalue", "--formula", "z1", "--m", "1", "--precision", "100")
    assert code == 0
    assert out.startswith("0.0231049931154189707889")


def test_zvalue_json(capsys):
    code, out, _ = run(capsys, "zvalue", "--formula", "z2", "--m", "3", "--output", "json")
    assert code == 0
    d = json.loads(out)
    assert d["family"] == "Z2" and d["method"] == "closed_form"
    assert d["value"].startswith("-0.000111158231452105922762668238")
    assert d["claimed_digits"] >= 30


def test_zvalue_stieltjes_route(capsys):
    code, out, _ = run(capsys, "zvalue", "--formula", "z2", "--m", "4", "--method", "stieltjes")
    assert code == 0 and out.startswith("0.000073627221261689518326771307")


def test_zvalue_odd_fixture(capsys):
    code, out, _ = run(capsys, "zvalue", "--formula", "z1odd", "--s", "3")
    assert code == 0 and out.strip().startswith("0.000729")
    code, _, err = run(capsys, "zvalue", "--formula", "z1odd", "--s", "4")
    assert code == errors.NotAFixture.exit_code and "NotAFixture" in err


def test_usage_errors(capsys):
    assert run(capsys, "zvalue", "--formula", "z1", "--m", "0")[0] == 2
    assert run(capsys, "zvalue", "--formula", "z1", "--m", "1", "--precision", "10")[0] == 2
    assert run(capsys, "zero", "--formula", "shifted", "--n", "1", "--m", "5")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["zvalue", "--formula", "nope"])
    assert exc.value.code == 2


def test_run_config_validation():
    with pytest.raises(errors.UsageError):
        RunConfig("zero", formula="shifted")
    with pytest.raises(errors.UsageError):
        RunConfig("zero", formula="z1", shift_a="2")
    RunConfig("zero", formula="shifted", shift_a="15", precision_digits=30, limit_m=1)


def test_distinct_exit_codes():
    codes = {c.exit_code for c in (errors.SelfCancellation, errors.LadderViolation,
                                   errors.PrecisionExhausted, errors.AmbiguousRounding)}
    assert len(codes) == 4 and 0 not in codes and 2 not in codes


def test_zero_matsuoka(capsys):
    # m=2 supports no decimals, so the value is cut to claimed + 5 = 5 places
    code, out, _ = run(capsys, "zero", "--formula", "matsuoka", "--n", "1", "--m", "2", "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["ordinate"] == "5.56189" and d["digits"] == 0


def test_zero_beta(capsys):
    code, out, _ = run(capsys, "zero", "--formula", "beta", "--n", "1", "--m", "10", "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "beta" and d["ordinate"].startswith("6.0209")


def test_zero_self_cancellation_exit(capsys, tmp_path):
    path = tmp_path / "z.jsonl"
    path.write_text("")
    code, _, _ = run(capsys, "zero", "--formula", "z1", "--n", "1", "--m", "10", "--zeros-file", str(path),
                     "--append")
    assert code == 0
    code, _, err = run(capsys, "zero", "--formula", "z1", "--n", "2", "--m", "10", "--zeros-file", str(path))
    assert code == errors.SelfCancellation.exit_code and "SelfCancellation" in err


def test_zero_append_round_trip(capsys, tmp_path):
    path = tmp_path / "z.jsonl"
    reference_store("zeta").first(1).save(path)
    code, out, _ = run(capsys, "zero", "--formula", "z1", "--n", "2", "--m", "15", "--zeros-file", str(path),
                       "--append", "--output", "json")
    assert code == 0
    store = ZeroStore.load(path)
    assert len(store) == 2
    assert store.records[0].text == reference_store("zeta").records[0].text
    assert store.records[1].source == "recurrence_z1" and store.records[1].params == {"m": 15}
    assert json.loads(out)["index"] == 2


def test_table_csv_header(capsys):
    code, out, _ = run(capsys, "table", "--id", "4", "--ms", "1,2", "--precision", "60")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "m,value,matched_digits"
    assert lines[1] == "1,3.580234150633150009323781248620,0"


def test_prime_commands(capsys):
    assert run(capsys, "prime", "--next", "--known", "2,3", "--s", "128")[1].strip() == "5"
    assert run(capsys, "prime", "--next", "--known", "", "--s", "128")[1].strip() == "2"
    code, out, _ = run(capsys, "prime", "--next", "--count", "6")
    assert out.split() == ["2", "3", "5", "7", "11", "13"]
    code, out, _ = run(capsys, "prime", "--next", "--from-zeros", "bundled", "--count", "2")
    assert code == 0 and out.split() == ["2", "3"]
    code, _, err = run(capsys, "prime", "--next", "--from-zeros", "bundled", "--s", "30")
    assert code == errors.TruncationDominates.exit_code


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--kind", "zeta", "--near", "14.13", "--digits", "40")
    assert code == 0 and out.startswith("14.1347251417346937904572519835624702707")
    code, _, err = run(capsys, "oracle", "--kind", "zeta", "--near", "17.5")
    assert code in (errors.BasinEscape.exit_code, errors.NoConvergence.exit_code)


def test_deterministic_output(capsys):
    argv = ["zvalue", "--formula", "z3", "--m", "5", "--output", "json"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "seczeta", "zvalue", "--formula", "beta", "--m", "1"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0
    assert p.stdout.startswith("0.07801")
