import json
import subprocess
import sys

import pytest

from modkhyper.cli import main
from modkhyper.decomp import Decomposition, verify_decomposition
from modkhyper.errors import ParameterError
from modkhyper.factor import Factor, verify_factor
from modkhyper.harness import CSV_COLUMNS, ExperimentConfig, render, run_experiment
from modkhyper.hypercore import Hypergraph, load_hypergraph, save_hypergraph
from modkhyper.oracle import binomial_mod_k
from modkhyper.rng import splitmix64, trial_seed


class TestSeeds:
    def test_splitmix_reference_values(self):
        # published SplitMix64 outputs for state 0 and 1234567
        assert splitmix64(0) == 0xE220A8397B1DCDAF
        assert splitmix64(1234567) == 0x599ED017FB08FC85

    def test_trial_seeds_distinct(self):
        seeds = {trial_seed(1, i) for i in range(1000)}
        assert len(seeds) == 1000


class TestExperiment:
    def test_trivial_run(self):
        records, summary = run_experiment(ExperimentConfig(n=10, r=2, k=3, p=0.0, trials=1, jobs=1))
        assert len(records) == 1 and records[0].classes_used == 0 and records[0].verified
        assert summary["success_rate"] == 1.0

    def test_invalid_config(self):
        with pytest.raises(ParameterError):
            run_experiment(ExperimentConfig(n=10, r=2, k=2, p=0.5, trials=0))
        with pytest.raises(ParameterError):
            run_experiment(ExperimentConfig(n=10, r=3, k=2, p=0.5, mode="factor"))

    def test_csv_shape_and_determinism(self):
        cfg = ExperimentConfig(n=30, r=2, k=2, p=0.4, trials=6, master_seed=4, jobs=1)
        first = render(run_experiment(cfg)[0], "csv")
        assert first.splitlines()[0] == ",".join(CSV_COLUMNS)
        assert first == render(run_experiment(cfg)[0], "csv")

    def test_worker_count_does_not_change_output(self):
        base = dict(n=24, r=3, k=3, p=0.6, trials=5, master_seed=9)
        serial = run_experiment(ExperimentConfig(**base, jobs=1))[0]
        pooled = run_experiment(ExperimentConfig(**base, jobs=2))[0]
        assert render(serial, "jsonl") == render(pooled, "jsonl")
        assert [r.trial for r in pooled] == list(range(5))

    def test_artifacts_reverify(self, tmp_path):
        cfg = ExperimentConfig(n=30, r=3, k=3, p=0.5, trials=3, master_seed=2, jobs=1, save_artifacts=str(tmp_path))
        records, _ = run_experiment(cfg)
        for rec in records:
            if rec.verified:
                h = load_hypergraph(tmp_path / f"trial{rec.trial:05d}.hyp")
                data = json.loads((tmp_path / f"trial{rec.trial:05d}.decomposition.json").read_text())
                assert verify_decomposition(h, Decomposition.from_json(data))

    @pytest.mark.parametrize("mode", ["factor", "matching", "binmod", "chi-exact"])
    def test_other_modes(self, mode):
        n, p = (9, 0.1) if mode == "chi-exact" else (12, 0.6)
        records, summary = run_experiment(ExperimentConfig(n=n, r=3, k=2, p=p, trials=3, jobs=1, mode=mode))
        assert summary["trials"] == 3 and all(rec.method for rec in records)
        if mode == "binmod":
            assert "mean_max_gap" in summary

    def test_timing_is_opt_in(self):
        records, _ = run_experiment(ExperimentConfig(n=10, r=2, k=2, p=0.5, trials=1, jobs=1, timing=True))
        assert records[0].elapsed_ms is not None


class TestCli:
    def test_gen_and_verify(self, tmp_path, capsys):
        hfile, dfile = tmp_path / "h.txt", tmp_path / "d.json"
        assert main(["gen", "--n", "30", "--r", "3", "--p", "0.5", "--seed", "42", "--out", str(hfile)]) == 0
        assert load_hypergraph(hfile).num_edges == 1970
        assert main(["decompose", "--hypergraph", str(hfile), "--k", "3", "--out", str(dfile)]) == 0
        assert main(["verify", "--hypergraph", str(hfile), "--decomposition", str(dfile)]) == 0
        data = json.loads(dfile.read_text())
        data["classes"][0] = data["classes"][0][1:]
        dfile.write_text(json.dumps(data))
        assert main(["verify", "--hypergraph", str(hfile), "--decomposition", str(dfile)]) == 1
        assert "edge not covered" in capsys.readouterr().out

    def test_factor_round_trip(self, tmp_path):
        hfile, ffile = tmp_path / "h.txt", tmp_path / "f.json"
        assert main(["gen", "--n", "30", "--r", "3", "--p", "0.5", "--seed", "1", "--out", str(hfile)]) == 0
        assert main(["factor", "--hypergraph", str(hfile), "--k", "2", "--seed", "3", "--out", str(ffile)]) == 0
        h = load_hypergraph(hfile)
        assert verify_factor(h, Factor.from_json(json.loads(ffile.read_text())))
        assert main(["verify", "--hypergraph", str(hfile), "--factor", str(ffile)]) == 0

    def test_binmod_matches_oracle(self, capsys):
        assert main(["binmod", "--n", "1000", "--p", "0.3", "--k", "3", "--format", "json"]) == 0
        out = json.loads(capsys.readouterr().out)
        dist = binomial_mod_k(1000, 0.3, 3)
        assert out["probs"] == list(dist.probs) and out["max_deviation"] == dist.max_deviation
        assert main(["binmod", "--n", "1000", "--p", "0.3", "--k", "3"]) == 0
        assert "max deviation" in capsys.readouterr().out

    def test_usage_errors(self, tmp_path, capsys):
        assert main(["decompose", "--bogus"]) == 2
        assert main(["nonsense"]) == 2
        assert main(["verify", "--hypergraph", str(tmp_path / "missing.txt"), "--factor", "x.json"]) == 2
        assert "missing.txt" in capsys.readouterr().err
        bad = tmp_path / "bad.txt"
        bad.write_text("3 2 1\n0 3\n")
        assert main(["chi-exact", "--hypergraph", str(bad), "--k", "2"]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_construction_failure(self, tmp_path):
        hfile = tmp_path / "h.txt"
        save_hypergraph(Hypergraph(6, 3, [(0, 1, 2), (0, 3, 4)]), hfile)
        assert main(["factor", "--hypergraph", str(hfile), "--k", "1"]) == 3

    def test_chi_exact(self, tmp_path, capsys):
        hfile = tmp_path / "h.txt"
        save_hypergraph(Hypergraph(3, 2, [(0, 1), (1, 2)]), hfile)
        assert main(["chi-exact", "--hypergraph", str(hfile), "--k", "2"]) == 0
        assert json.loads(capsys.readouterr().out)["chi"] == 2

    def test_experiment_files(self, tmp_path):
        out, summ = tmp_path / "r.csv", tmp_path / "s.json"
        argv = ["experiment", "--n", "20", "--r", "2", "--k", "2", "--p", "0.4", "--trials", "4", "--seed", "5",
                "--jobs", "1", "--out", str(out), "--summary", str(summ)]
        assert main(argv) == 0
        assert out.read_text().count("\n") == 5
        assert json.loads(summ.read_text())["trials"] == 4

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "modkhyper", "binmod", "--n", "2", "--p", "0.5", "--k", "2"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0 and "P(X = 0 mod 2) = 0.5" in proc.stdout
