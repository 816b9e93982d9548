import json

import pytest

from votopes.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, read_volume_cache, run_cli
from constants import PROBABILITIES, VOLUMES


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse(out):
    return dict(line.split(": ", 1) for line in out.splitlines())


def test_volume_event(capsys):
    code, out, _ = run(capsys, "volume", "--event", "C")
    assert code == EXIT_OK
    assert parse(out)["volume"] == "1717/8192"


def test_ehrhart_unit_simplex(capsys):
    code, out, _ = run(capsys, "ehrhart", "--event", "U", "--closed")
    assert code == EXIT_OK
    assert parse(out)["series"] == "(1) / (1-t)^24"


def test_count_and_oracle_agree(capsys):
    _, a, _ = run(capsys, "count", "--event", "C", "--candidates", "3", "--voters", "7")
    _, b, _ = run(capsys, "oracle", "--event", "C", "--candidates", "3", "--voters", "7")
    assert parse(a)["count"] == parse(b)["count"]


def test_input_file_writes_out_file(tmp_path, capsys):
    src = tmp_path / "half.in"
    src.write_text("amb_space 2\ninequalities 1\n1 -1\nnonnegative\ntotal_degree\n")
    code, out, _ = run(capsys, "volume", "--input", str(src))
    assert code == EXIT_OK
    assert parse(out)["volume"] == "1/2"
    assert (tmp_path / "half.out").read_text() == out


def test_parse_error_exit_code(tmp_path, capsys):
    src = tmp_path / "bad.in"
    src.write_text("amb_space 3\ninequalities 1\n1 00\ntotal_degree\n")
    code, _, err = run(capsys, "volume", "--input", str(src))
    assert code == EXIT_PARSE and "line 3" in err
    assert run(capsys, "frobnicate")[0] == EXIT_PARSE
    assert run(capsys, "volume", "--event", "nonsense")[0] == EXIT_PARSE


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "volume", "--event", "T", "--max-cones", "100")
    assert code == EXIT_BUDGET and "budget" in err
    code, _, _ = run(capsys, "oracle", "--event", "C", "--voters", "20", "--budget", "1000")
    assert code == EXIT_BUDGET


def test_output_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.out", tmp_path / "b.out"
    run(capsys, "volume", "--event", "Q", "--out", str(a))
    run(capsys, "volume", "--event", "Q", "--out", str(b), "--threads", "2")
    assert a.read_bytes() == b.read_bytes()


def test_json_output(capsys):
    code, out, _ = run(capsys, "oracle", "--event", "K", "--voters", "3", "--json")
    assert json.loads(out)["count"] == "20"


def test_probability_from_cached_volumes(tmp_path, capsys):
    cache = tmp_path / "volumes.txt"
    cache.write_text("".join(f"{k} = {v}  # exact\n" for k, v in VOLUMES.items()))
    assert read_volume_cache(str(cache)) == VOLUMES
    code, out, _ = run(capsys, "probability", "--all", "--volumes", str(cache))
    assert code == EXIT_OK
    d = parse(out)
    for name, value in PROBABILITIES.items():
        assert d[name] == str(value)


def test_probability_skip(capsys):
    code, out, _ = run(capsys, "probability", "--name", "p_CW", "--name", "strict_borda", "--skip", "BSt",
                       "--skip", "T")
    d = parse(out)
    assert d["p_CW"] == "1717/2048" and d["p_CW_decimal"] == "0.8384"
    assert d["strict_borda"].startswith("skipped")
