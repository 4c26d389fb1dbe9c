"""CSV report files written by the command line interface

All writers produce a header row followed by one row per record.
Floats are written with full precision.
"""
from __future__ import annotations

import csv
import pathlib

import numpy as np


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_csv(path: pathlib.Path | str, header, rows):
    path = pathlib.Path(path)
    with path.open("w", newline="") as fd:
        writer = csv.writer(fd, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def read_csv(path: pathlib.Path | str):
    """Return the header and the list of rows (as strings) of a CSV file"""
    with pathlib.Path(path).open(newline="") as fd:
        reader = csv.reader(fd)
        header = next(reader)
        rows = [row for row in reader]
    return header, rows


def write_matrix_csv(path, matrix, index_name, column_prefix):
    """Write a 2D array with an index column (e.g. atoms, designs)"""
    matrix = np.atleast_2d(matrix)
    header = [index_name] + [f"{column_prefix}{ii}"
                             for ii in range(matrix.shape[1])]
    rows = [[ii] + list(row) for ii, row in enumerate(matrix)]
    return write_csv(path, header, rows)


def read_matrix_csv(path, dtype=np.float64):
    _, rows = read_csv(path)
    rows = sorted(rows, key=lambda r: int(r[0]))
    return np.array([[float(v) for v in row[1:]] for row in rows],
                    dtype=dtype)


def write_loss_csv(path, records):
    """records: iterable of (step, samples_seen, wall_ms, loss)"""
    return write_csv(path, ["step", "samples_seen", "wall_ms", "loss"],
                     records)


def write_staleness_csv(path, records):
    """records: iterable of (step, staleness)"""
    return write_csv(path, ["step", "staleness"], records)


def write_throughput_csv(path, worker_count, mean_batch_ms):
    return write_csv(path, ["worker_count", "mean_batch_ms"],
                     [(worker_count, mean_batch_ms)])


def write_eval_csv(path, records):
    """records: iterable of (epoch, samples_seen, eval_loss)"""
    return write_csv(path, ["epoch", "samples_seen", "eval_loss"], records)


def write_bench_csv(path, records):
    """records: iterable of (worker_count, mean_batch_ms, speedup_vs_1)"""
    return write_csv(path, ["worker_count", "mean_batch_ms", "speedup_vs_1"],
                     records)


def write_validation_csv(path, records):
    """records: iterable of (event_id, setup, atom_id, pcc)"""
    return write_csv(path, ["event_id", "setup", "atom_id", "pcc"],
                     records)


def write_param_count_csv(path, param_count, published):
    """Analytic parameter count and its difference to `published`"""
    return write_csv(path, ["param_count", "published_param_count", "delta"],
                     [(param_count, published, param_count - published)])


def write_bench_workers_csv(path, records):
    """records: iterable of (worker_count, worker_id, steps, mean_batch_ms)"""
    return write_csv(path, ["worker_count", "worker_id", "steps",
                            "mean_batch_ms"], records)
