import json
import re

import pytest

from efgsolve.cli import main

SOLVE_SMALL = ("solve --game asym --hands 5 --pot 1 --bet 1 --alg gxfp "
               "--eps 0.01 --iters 2000 --snapshot-interval 500").split()


def solve(tmp_path, extra=(), base=SOLVE_SMALL):
    tmp_path.mkdir(exist_ok=True)
    args = list(base) + ["--metrics", str(tmp_path / "m.csv"),
                         "--strategy", str(tmp_path / "s.json")] + list(extra)
    assert main(args) == 0
    return tmp_path / "m.csv", tmp_path / "s.json"


def test_solve_writes_expected_rows(tmp_path):
    metrics, strategy = solve(tmp_path)
    lines = metrics.read_text().splitlines()
    assert lines[0] == "iteration,value,exploitability"
    assert len(lines) == 1 + 2000 // 500
    doc = json.loads(strategy.read_text())
    assert doc["metadata"]["algorithm"] == "gxfp"
    assert doc["metadata"]["epsilon"] == 0.01
    assert len(doc["strategy"]) == 10  # 2N infosets


def test_metrics_have_full_precision(tmp_path):
    metrics, _ = solve(tmp_path)
    row = metrics.read_text().splitlines()[1].split(",")
    # at least 12 significant digits on the value column
    digits = re.sub(r"[^0-9]", "", row[1])
    assert len(digits.lstrip("0")) >= 12


def test_solve_deterministic_given_seed(tmp_path):
    a = solve(tmp_path / "a", ["--seed", "7", "--init", "random"])
    b = solve(tmp_path / "b", ["--seed", "7", "--init", "random"])
    assert a[0].read_bytes() == b[0].read_bytes()
    assert a[1].read_bytes() == b[1].read_bytes()


def test_eval_round_trips_final_row(tmp_path, capsys):
    metrics, strategy = solve(tmp_path)
    final = metrics.read_text().splitlines()[-1].split(",")
    assert main(["eval", "--game", "asym", "--hands", "5", "--pot", "1",
                 "--bet", "1", str(strategy)]) == 0
    out = capsys.readouterr().out
    value = float(re.search(r"value \(player 1\):\s+(\S+)", out).group(1))
    expl = float(re.search(r"exploitability:\s+(\S+)", out).group(1))
    assert value == pytest.approx(float(final[1]), abs=1e-9)
    assert expl == pytest.approx(float(final[2]), abs=1e-9)


def test_eval_uniform_strategy_matches_library(tmp_path, capsys):
    from efgsolve.analysis import exploitability
    from efgsolve.games import GameParams, build_asymmetric
    from efgsolve.tree import BehaviorProfile

    tree = build_asymmetric(GameParams(2, 0.5, 1.0))
    prof = BehaviorProfile.uniform(tree)
    path = tmp_path / "uniform.json"
    path.write_text(json.dumps({"strategy": prof.to_mapping()}))
    assert main(["eval", "--game", "asym", "--hands", "2", str(path)]) == 0
    out = capsys.readouterr().out
    expl = float(re.search(r"exploitability:\s+(\S+)", out).group(1))
    assert expl == pytest.approx(exploitability(tree, prof), abs=1e-12)


def test_eval_gap_table(tmp_path, capsys):
    _, strategy = solve(tmp_path)
    assert main(["eval", "--game", "asym", "--hands", "5", "--gaps",
                 str(strategy)]) == 0
    out = capsys.readouterr().out
    assert "P1|h=1|" in out and "gap" in out


def test_seeds_sweep_writes_suffixed_files(tmp_path):
    args = ("solve --game asym --hands 3 --alg xfp --iters 400 "
            "--snapshot-interval 200 --init random --seeds 4..6").split()
    args += ["--metrics", str(tmp_path / "m.csv"),
             "--strategy", str(tmp_path / "s.json")]
    assert main(args) == 0
    for k in (4, 5, 6):
        assert (tmp_path / f"m_seed{k}.csv").exists()
        assert json.loads((tmp_path / f"s_seed{k}.json").read_text())[
            "metadata"]["seed"] == k


class TestExitCodes:
    def test_cfr_with_epsilon_is_config_error(self, capsys):
        code = main("solve --game asym --alg cfr --eps 0.01 --iters 10".split())
        assert code == 2
        assert "perturbed" in capsys.readouterr().err

    def test_unsupported_reference_params(self, capsys):
        assert main("exact --game betraise --bet 2".split()) == 2

    def test_bad_seed_range(self):
        assert main("solve --game asym --alg gxfp --iters 10 --seeds x..y".split()) == 2

    def test_truncated_json_is_io_error(self, tmp_path, capsys):
        _, strategy = solve(tmp_path)
        trunc = tmp_path / "trunc.json"
        trunc.write_bytes(strategy.read_bytes()[:80])
        assert main(["eval", "--game", "asym", "--hands", "5", str(trunc)]) == 3
        assert "line" in capsys.readouterr().err

    def test_key_mismatch_is_validation_error(self, tmp_path, capsys):
        _, strategy = solve(tmp_path)  # 5-hand strategy
        code = main(["eval", "--game", "asym", "--hands", "7", str(strategy)])
        assert code == 4
        assert "missing" in capsys.readouterr().err

    def test_denormalized_row_is_validation_error(self, tmp_path, capsys):
        _, strategy = solve(tmp_path)
        doc = json.loads(strategy.read_text())
        doc["strategy"]["P1|h=1|"] = [0.9, 0.9]
        strategy.write_text(json.dumps(doc))
        assert main(["eval", "--game", "asym", "--hands", "5", str(strategy)]) == 4
        assert "sum" in capsys.readouterr().err


class TestExact:
    def test_asym_reference_table(self, capsys):
        assert main("exact --game asym --pot 1 --bet 1".split()) == 0
        out = capsys.readouterr().out
        assert "x1 = 1/9" in out
        assert "x2 = 7/9" in out
        assert "y1 = 5/9" in out

    def test_betraise_reference_table(self, capsys):
        assert main(["exact", "--game", "betraise"]) == 0
        out = capsys.readouterr().out
        assert "x1 = 64/1083" in out
        assert "x5, x8: free" in out
        assert "-44/1083" in out

    def test_json_output(self, capsys):
        assert main(["exact", "--game", "betraise", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["p2_thresholds"]["vs_bet"]["y1_bet"] == 0.5
        assert doc["free_thresholds"] == ["x5", "x8"]
