import csv
import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from metabench import ALGORITHMS, ConfigError
from metabench.harness import ExperimentConfig, compare_origin_bias, list_algorithms, load_config, run_experiment
from metabench.harness.experiment import bias_ratio, summarize
from metabench.harness.svg import convergence_svg, nice_ticks

SVG_NS = "{http://www.w3.org/2000/svg}"


def small_config(tmp_path, **over):
    data = {
        "objective": {"name": "rastrigin", "dim": 3},
        "algorithms": list(ALGORITHMS),
        "pop_size": 8,
        "generations": 15,
        "repeats": 3,
        "base_seed": 42,
        "output_dir": str(tmp_path / "out"),
    }
    data.update(over)
    return ExperimentConfig.from_dict(data)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestConfig:
    def test_load(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({
            "objective": {"name": "peaks"},
            "algorithms": ["pso", {"id": "de", "params": {"cr": 0.5}}],
            "pop_size": 10, "generations": 5,
        }))
        config = load_config(path)
        assert [a.id for a in config.algorithms] == ["pso", "de"]
        assert config.algorithms[1].params == {"cr": 0.5}
        assert config.repeats == 10

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "none.json")

    @pytest.mark.parametrize(
        "over",
        [
            {"algorithms": ["ga", "bogus"]},
            {"algorithms": ["ga", "ga"]},
            {"algorithms": []},
            {"repeats": 0},
            {"pop_size": 3},
            {"extra": 1},
            {"objective": {"name": "peaks", "dim": 3}},
            {"objective": {"name": "rastrigin", "dim": 2, "shift": [5, 0]}},
            {"algorithms": [{"id": "pso", "params": {"c9": 1}}]},
        ],
    )
    def test_invalid(self, tmp_path, over):
        with pytest.raises(ConfigError):
            small_config(tmp_path, **over)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_invalid_id_lists_choices(self, tmp_path):
        with pytest.raises(ConfigError, match="ga, pso, gwo, de, sa"):
            small_config(tmp_path, algorithms=["cmaes"])

    def test_scalar_shift_broadcast(self, tmp_path):
        config = small_config(tmp_path, objective={"name": "rastrigin", "dim": 3, "shift": 1.5})
        assert config.objective.shift == (1.5, 1.5, 1.5)

    def test_resolved_is_complete(self, tmp_path):
        resolved = small_config(tmp_path).resolved()
        params = {a["id"]: a["params"] for a in resolved["algorithms"]}
        assert params["ga"]["mutation_prob"] == pytest.approx(1 / 3)
        assert params["sa"]["neighbors_per_gen"] == 8
        assert len(resolved["seeds"]) == 3


class TestRunExperiment:
    def test_outputs(self, tmp_path):
        config = small_config(tmp_path)
        report = run_experiment(config)
        out = tmp_path / "out"
        for name in ("aggregate.csv", "summary.csv", "resolved_config.json", "convergence.svg"):
            assert (out / name).exists()
        rows = read_csv(out / "runs" / "pso" / "repeat_002.csv")
        assert rows[0] == ["generation", "best_so_far", "gen_best", "evaluations"]
        assert len(rows) == 17
        agg = read_csv(out / "aggregate.csv")
        assert agg[0] == ["generation", "algorithm", "median", "mean", "std", "min", "max"]
        assert len(agg) == 1 + 16 * 5
        assert set(report.algorithms) == set(ALGORITHMS)

    def test_stats_recomputable_from_run_csvs(self, tmp_path):
        config = small_config(tmp_path)
        run_experiment(config)
        out = tmp_path / "out"
        agg = {(int(r[0]), r[1]): [float(v) for v in r[2:]] for r in read_csv(out / "aggregate.csv")[1:]}
        for algo in ALGORITHMS:
            curves = np.array([
                [float(r[1]) for r in read_csv(out / "runs" / algo / f"repeat_{k:03d}.csv")[1:]]
                for k in range(3)
            ])
            stats = summarize(curves)
            for g in range(16):
                np.testing.assert_allclose(agg[(g, algo)], stats[g], rtol=1e-15)

    def test_single_repeat_statistics(self, tmp_path):
        report = run_experiment(small_config(tmp_path, repeats=1))
        for algo in ALGORITHMS:
            s = report.stats[algo]
            assert np.all(s[:, 2] == 0.0)
            for col in (1, 3, 4):
                np.testing.assert_array_equal(s[:, 0], s[:, col])

    def test_stat_ordering(self, tmp_path):
        report = run_experiment(small_config(tmp_path, repeats=4))
        for s in report.stats.values():
            assert np.all(s[:, 3] <= s[:, 0]) and np.all(s[:, 0] <= s[:, 4])
            assert np.all(s[:, 2] >= 0)

    def test_equal_budgets(self, tmp_path):
        report = run_experiment(small_config(tmp_path))
        evals = {a: [t.evaluations for t in ts] for a, ts in report.traces.items()}
        ref = evals["ga"][0]
        for runs in evals.values():
            for e in runs:
                np.testing.assert_array_equal(e, ref)

    def test_workers_match_serial(self, tmp_path):
        serial = run_experiment(small_config(tmp_path / "a"))
        parallel = run_experiment(small_config(tmp_path / "b"), workers=2)
        for algo in ALGORITHMS:
            np.testing.assert_array_equal(serial.stats[algo], parallel.stats[algo])
        a, b = tmp_path / "a" / "out", tmp_path / "b" / "out"
        assert (a / "aggregate.csv").read_bytes() == (b / "aggregate.csv").read_bytes()

    def test_unwritable_output_fails_before_running(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(OSError):
            run_experiment(small_config(tmp_path, output_dir=str(blocker / "sub")))

    def test_sa_temperature_recorded(self, tmp_path):
        run_experiment(small_config(tmp_path))
        resolved = json.loads((tmp_path / "out" / "resolved_config.json").read_text())
        assert len(resolved["run_info"]["sa"]) == 3
        assert all(r["t_initial"] > 0 for r in resolved["run_info"]["sa"])


class TestSvg:
    def test_well_formed(self, tmp_path):
        run_experiment(small_config(tmp_path))
        root = ET.parse(tmp_path / "out" / "convergence.svg").getroot()
        lines = root.findall(f"{SVG_NS}polyline")
        assert sorted(l.get("data-algorithm") for l in lines) == sorted(ALGORITHMS)
        texts = [t.text for t in root.iter(f"{SVG_NS}text")]
        assert "generation" in texts
        assert any(t and t.startswith("median best-so-far") for t in texts)

    def test_log_scale_only_when_positive(self):
        pos = convergence_svg([0, 1, 2], {"ga": [10.0, 1.0, 0.1]})
        assert "(log scale)" in pos
        zero = convergence_svg([0, 1, 2], {"ga": [10.0, 1.0, 0.0]})
        assert "(log scale)" not in zero

    def test_escapes_text(self):
        svg = convergence_svg([0, 1], {"a<b": [1.0, 1.0]}, title="x & y")
        ET.fromstring(svg)

    def test_ticks(self):
        assert nice_ticks(0, 100) == [0, 20, 40, 60, 80, 100]


class TestBias:
    def test_ratio_rules(self):
        assert bias_ratio(2.0, 1.0) == 2.0
        assert bias_ratio(0.0, 0.0) == 1.0
        assert bias_ratio(1.0, 0.0) == math.inf

    def test_zero_shift_gives_unit_ratio(self, tmp_path):
        report = compare_origin_bias(small_config(tmp_path, repeats=2), [0.0, 0.0, 0.0])
        assert report.ratios == {a: 1.0 for a in ALGORITHMS}
        rows = read_csv(tmp_path / "out" / "bias.csv")
        assert rows[0] == ["algorithm", "unshifted_median", "shifted_median", "ratio"]
        assert len(rows) == 6

    def test_matched_seeds(self, tmp_path):
        report = compare_origin_bias(small_config(tmp_path, repeats=2), [1.0, 1.0, 1.0])
        assert report.unshifted.seeds == report.shifted.seeds
        assert (tmp_path / "out" / "shifted" / "aggregate.csv").exists()

    def test_shift_outside_bounds(self, tmp_path):
        with pytest.raises(ConfigError):
            compare_origin_bias(small_config(tmp_path), [4.0, 0.0, 0.0])

    def test_needs_rastrigin(self, tmp_path):
        config = small_config(tmp_path, objective={"name": "peaks"})
        with pytest.raises(ConfigError):
            compare_origin_bias(config, [0.5, 0.5])


class TestListing:
    def test_ids(self):
        assert set(list_algorithms()) == {"ga", "pso", "gwo", "de", "sa"}

    def test_ga_params(self):
        assert list(list_algorithms()["ga"]["params"]) == ["tournament_size", "crossover_prob", "mutation_prob"]

    def test_defaults(self):
        listing = list_algorithms()
        assert listing["pso"]["params"] == {"c1": 2.0, "c2": 2.0, "w_min": 0.4, "w_max": 0.9, "v_max_fraction": 0.5}
        assert listing["gwo"]["params"] == {"a_initial": 2.0, "a_final": 0.0}
        assert listing["de"]["params"] == {"f_weight": 0.5, "cr": 0.9}
        assert listing["sa"]["params"] == {
            "t_initial": "auto", "alpha": 0.95, "neighbors_per_gen": "pop_size", "step_fraction": 0.1,
        }
        assert listing["ga"]["params"]["mutation_prob"] == "1/dim"
        assert listing["ga"]["params"]["crossover_prob"] == 0.9
