import numpy as np
import pytest

from dcanum.dist import (
    TrainRunConfig, WorkerConfig, run_benchmark, run_training
)
from dcanum.errors import ConfigError
from dcanum.model import reconstruction_loss
from dcanum.write import csv_report

from helper_methods import cpu_count, make_signals, small_config


def test_benchmark_single():
    signals, _ = make_signals(n_signals=32)
    run_cfg = TrainRunConfig(debug=True, warmup_steps=1)
    results, standalone = run_benchmark(
        run_cfg, small_config(), signals, worker_counts=[1], step_budget=4,
        worker_cfg=WorkerConfig(batch_size=4))
    assert len(results) == 1
    assert results[0].worker_count == 1
    assert results[0].speedup_vs_1 == 1.0
    assert len(results[0].report.steps) == 4
    assert standalone is not None
    assert len(standalone.report.steps) == 4
    assert standalone.mean_batch_ms > 0


def test_benchmark_step_budget():
    signals, _ = make_signals(n_signals=32)
    run_cfg = TrainRunConfig(debug=True, warmup_steps=100)
    results, standalone = run_benchmark(
        run_cfg, small_config(), signals, worker_counts=[1, 2],
        step_budget=6, worker_cfg=WorkerConfig(batch_size=2),
        with_standalone=False)
    assert standalone is None
    assert [len(r.report.steps) for r in results] == [6, 6]
    assert all(np.isfinite(r.speedup_vs_1) for r in results)


def test_benchmark_per_worker_times():
    signals, _ = make_signals(n_signals=32)
    run_cfg = TrainRunConfig(debug=True, warmup_steps=1)
    results, standalone = run_benchmark(
        run_cfg, small_config(), signals, worker_counts=[2], step_budget=6,
        worker_cfg=WorkerConfig(batch_size=2))
    res = results[0]
    assert sorted(res.worker_batch_ms) == [0, 1]
    assert all(ms >= 0 for ms in res.worker_batch_ms.values())
    rows = res.worker_rows()
    assert [r[:3] for r in rows] == [(2, 0, 3), (2, 1, 3)]
    assert list(standalone.worker_batch_ms) == [0]
    assert standalone.worker_rows()[0][2] == 6


def test_benchmark_invalid():
    signals, _ = make_signals(n_signals=8)
    with pytest.raises(ConfigError):
        run_benchmark(TrainRunConfig(debug=True), small_config(), signals,
                      worker_counts=[], step_budget=4)
    with pytest.raises(ConfigError):
        run_benchmark(TrainRunConfig(debug=True), small_config(), signals,
                      worker_counts=[1], step_budget=0)


@pytest.mark.long
@pytest.mark.skipif(cpu_count() < 4, reason="Timing test, needs 4 CPUs")
def test_benchmark_processes_speedup():
    signals, _ = make_signals(n_signals=256, length=128)
    run_cfg = TrainRunConfig(warmup_steps=4)
    results, _ = run_benchmark(
        run_cfg, small_config(input_length=128), signals,
        worker_counts=[1, 2, 4], step_budget=96,
        worker_cfg=WorkerConfig(batch_size=16), with_standalone=False)
    speedup = {r.worker_count: r.speedup_vs_1 for r in results}
    # the parameter server must not serialize the workers
    assert speedup[2] > 1.3
    assert speedup[4] > 2.0


@pytest.mark.long
@pytest.mark.skipif(cpu_count() < 4, reason="Needs 4 CPUs")
def test_four_workers_match_single_worker_loss():
    """Asynchrony costs at most 10% final loss for most seeds"""
    passed = 0
    for seed in range(5):
        signals, _ = make_signals(n_signals=128, seed=seed)
        losses = []
        for wc in (1, 4):
            report = run_training(
                TrainRunConfig(worker_count=wc, epochs=4, seed=seed,
                               warmup_steps=8),
                small_config(), signals,
                worker_cfg=WorkerConfig(batch_size=4))
            assert report.total_samples == 4 * 128
            losses.append(reconstruction_loss(report.final_params, signals))
        if abs(losses[1] - losses[0]) <= 0.1 * losses[0]:
            passed += 1
    assert passed >= 3


def test_bench_csv(tmp_path):
    path = csv_report.write_bench_csv(
        tmp_path / "bench.csv",
        [(1, 10.0, 1.0), (2, 6.0, 10 / 6), ("standalone", 8.0, 1.25)])
    header, rows = csv_report.read_csv(path)
    assert header == ["worker_count", "mean_batch_ms", "speedup_vs_1"]
    assert rows[2][0] == "standalone"
    assert float(rows[1][2]) == pytest.approx(1.6667, abs=1e-4)
