"""Command line interface: ``dcanum <command> [options]``"""
from __future__ import annotations

import argparse
import logging
import pathlib
import sys

import numpy as np

from . import errors
from .data import (
    SyntheticConfig, design_regressors, generate_dataset, motor_design,
    normalize_batch
)
from .dist import run_benchmark, run_training
from .meta.config import load_run_config
from .model import (
    PUBLISHED_PARAM_COUNT, export_first_layer_filters, param_count,
    write_filters_csv
)
from .odl import run_validation
from .read import precision_to_dtype, read_dataset, read_model
from .write import csv_report, write_dataset, write_model


logger = logging.getLogger(__name__)

#: exit codes by failure class
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_PROTOCOL = 4
EXIT_NUMERIC = 5
EXIT_VALIDATION = 6


def exit_code_for(exc):
    if isinstance(exc, errors.ValidationError):
        return EXIT_VALIDATION
    elif isinstance(exc, errors.NumericError):
        return EXIT_NUMERIC
    elif isinstance(exc, (errors.ProtocolError, errors.FormatError,
                          errors.TransportError, errors.CorruptionError,
                          errors.LifecycleError)):
        return EXIT_PROTOCOL
    elif isinstance(exc, (errors.ConfigError, errors.ShapeError,
                          errors.DomainError)):
        return EXIT_CONFIG
    elif isinstance(exc, OSError):
        return EXIT_IO
    raise exc


def _prepare_out(path):
    out = pathlib.Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _add_log_file(out_dir):
    handler = logging.FileHandler(pathlib.Path(out_dir) / "run.log")
    handler.setFormatter(logging.Formatter(
        "%(asctime)s %(levelname)s %(name)s: %(message)s"))
    logging.getLogger().addHandler(handler)
    return handler


def _load_signals(data_dir, name, dtype):
    header, signals = read_dataset(pathlib.Path(data_dir) / name)
    return signals.astype(dtype, copy=False)


def cmd_gen_data(cfg):
    """Write train/eval datasets, design regressors and mixing weights"""
    data_cfg = cfg.build("data")
    model_cfg = cfg.build("model")
    out = _prepare_out(cfg.sections["paths"]["data_dir"])
    design = motor_design(length=model_cfg.input_length, tr=data_cfg.tr)
    dtype = precision_to_dtype(data_cfg.precision)
    truth_rows = []
    for split, count, seed in [("train", data_cfg.n_train, data_cfg.seed),
                               ("eval", data_cfg.n_eval, data_cfg.seed + 1)]:
        syn = generate_dataset(design, SyntheticConfig(
            n_signals=count,
            max_active=data_cfg.max_active,
            noise_sigma=data_cfg.noise_sigma,
            drift=data_cfg.drift,
            seed=seed))
        signals, kept = normalize_batch(syn.signals)
        write_dataset(out / f"{split}.fmts", signals.astype(dtype),
                      seed=seed, design_fingerprint=design.fingerprint())
        for ii in kept:
            truth_rows.append([split, int(ii)] + list(syn.weights[ii]))
        logger.info(f"Wrote {len(kept)} {split} signals")
    csv_report.write_matrix_csv(out / "designs.csv",
                                design_regressors(design), "event_id", "t")
    csv_report.write_csv(
        out / "truth.csv",
        ["split", "signal"] + [f"w{ee}" for ee in range(design.event_count)],
        truth_rows)
    cfg.write_resolved(out)
    return EXIT_OK


def cmd_train(cfg):
    """Train with downpour SGD and persist the model and reports"""
    run_cfg = cfg.build("run")
    model_cfg = cfg.build("model")
    paths = cfg.build("paths")
    out = _prepare_out(paths.out)
    cfg.write_resolved(out)
    n_params = param_count(model_cfg)
    logger.info(f"Model has {n_params} trainable parameters "
                f"({n_params - PUBLISHED_PARAM_COUNT:+d} compared to the "
                f"published {PUBLISHED_PARAM_COUNT})")
    csv_report.write_param_count_csv(out / "param_count.csv", n_params,
                                     PUBLISHED_PARAM_COUNT)
    signals = _load_signals(paths.data_dir, "train.fmts", run_cfg.dtype)
    eval_path = pathlib.Path(paths.data_dir) / "eval.fmts"
    eval_signals = None
    if eval_path.exists():
        eval_signals = _load_signals(paths.data_dir, "eval.fmts",
                                     run_cfg.dtype)
    report = run_training(run_cfg, model_cfg, signals,
                          server_cfg=cfg.build("server"),
                          worker_cfg=cfg.build("worker"),
                          eval_signals=eval_signals)
    # reports are written even if training diverged
    report.write_reports(out)
    if report.worker_errors:
        logger.warning(f"{len(report.worker_errors)} worker(s) aborted")
    report.check_finite()
    write_model(paths.model_path, report.final_params)
    logger.info(f"Saved model version {report.final_params.version} to "
                f"{paths.model_path}")
    return EXIT_OK


def cmd_bench(cfg):
    """Mean batch time for several worker counts"""
    run_cfg = cfg.build("run")
    bench_cfg = cfg.build("bench")
    model_cfg = cfg.build("model")
    paths = cfg.build("paths")
    out = _prepare_out(paths.out)
    cfg.write_resolved(out)
    signals = _load_signals(paths.data_dir, "train.fmts", run_cfg.dtype)
    results, standalone = run_benchmark(
        run_cfg, model_cfg, signals,
        worker_counts=bench_cfg.worker_counts,
        step_budget=bench_cfg.steps,
        server_cfg=cfg.build("server"),
        worker_cfg=cfg.build("worker"))
    rows = [(res.worker_count, res.mean_batch_ms, res.speedup_vs_1)
            for res in results]
    rows.append(("standalone", standalone.mean_batch_ms,
                 standalone.speedup_vs_1))
    csv_report.write_bench_csv(out / "bench.csv", rows)
    csv_report.write_bench_workers_csv(
        out / "bench_workers.csv",
        [row for res in results for row in res.worker_rows()])
    for res in results:
        csv_report.write_loss_csv(out / f"loss_w{res.worker_count}.csv",
                                  res.report.loss_records())
    return EXIT_OK


def cmd_validate(cfg):
    """Dictionary learning validation of a trained model"""
    paths = cfg.build("paths")
    odl_cfg = cfg.build("odl")
    out = _prepare_out(paths.out)
    cfg.write_resolved(out)
    params = read_model(paths.model_path)
    signals = _load_signals(paths.data_dir, "eval.fmts", np.float64)
    designs = csv_report.read_matrix_csv(
        pathlib.Path(paths.data_dir) / "designs.csv")
    report = run_validation(params, signals, designs, odl_cfg)
    csv_report.write_validation_csv(out / "validation.csv", report.records())
    csv_report.write_matrix_csv(out / "atoms_setup1.csv",
                                report.dictionaries[1].atoms.T, "atom_id", "t")
    csv_report.write_matrix_csv(out / "projected_setup1.csv",
                                report.projected.T, "atom_id", "t")
    csv_report.write_matrix_csv(out / "atoms_setup2.csv",
                                report.dictionaries[2].atoms.T, "atom_id", "t")
    for setup, maps in report.spatial_maps.items():
        csv_report.write_matrix_csv(out / f"spatial_{setup}.csv", maps,
                                    "event_id", "s")
    return EXIT_OK


def cmd_export_filters(cfg):
    """Write the first encoder layer kernels as CSV"""
    paths = cfg.build("paths")
    out = _prepare_out(paths.out)
    cfg.write_resolved(out)
    params = read_model(paths.model_path)
    write_filters_csv(out / "filters.csv",
                      export_first_layer_filters(params))
    return EXIT_OK


COMMANDS = {
    "gen-data": cmd_gen_data,
    "train": cmd_train,
    "bench": cmd_bench,
    "validate": cmd_validate,
    "export-filters": cmd_export_filters,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dcanum",
        description="Distributed convolutional autoencoder for fMRI-like "
                    "time series")
    parser.add_argument("--version", action="store_true",
                        help="print the version and exit")
    sub = parser.add_subparsers(dest="command")
    for name, func in COMMANDS.items():
        cmd = sub.add_parser(name, help=func.__doc__)
        cmd.add_argument("--config", type=pathlib.Path,
                         help="JSON run configuration")
        cmd.add_argument("--set", action="append", default=[],
                         metavar="SECTION.KEY=VALUE",
                         help="override one configuration value")
        cmd.add_argument("--workers", type=int,
                         help="number of workers (run.worker_count)")
        cmd.add_argument("--seed", type=int,
                         help="seed of data, training and validation")
        cmd.add_argument("--out", type=str,
                         help="output directory (paths.out)")
        cmd.add_argument("--verbose", "-v", action="store_true",
                         help="debug logging")
        if name == "bench":
            cmd.add_argument("--worker-counts", type=str,
                             help="comma-separated worker counts")
    return parser


def resolve_config(args):
    cfg = load_run_config(args.config, args.set)
    if args.workers is not None:
        cfg.set("run", "worker_count", args.workers)
    if args.seed is not None:
        for section in ["run", "data", "odl"]:
            cfg.set(section, "seed", args.seed)
    if args.out is not None:
        cfg.set("paths", "out", args.out)
    if getattr(args, "worker_counts", None):
        cfg.set("bench", "worker_counts",
                [int(w) for w in args.worker_counts.split(",")])
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        from ._version import __version__
        print(__version__)
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s")
    handler = None
    try:
        cfg = resolve_config(args)
        out = cfg.sections["paths"]["out"]
        if args.command == "gen-data":
            out = cfg.sections["paths"]["data_dir"]
        handler = _add_log_file(_prepare_out(out))
        return COMMANDS[args.command](cfg)
    except Exception as exc:
        code = exit_code_for(exc)
        logger.error(f"{type(exc).__name__}: {exc}")
        return code
    finally:
        if handler is not None:
            logging.getLogger().removeHandler(handler)
            handler.close()


if __name__ == "__main__":
    sys.exit(main())
