from __future__ import annotations

import dataclasses
import hashlib
from typing import Tuple

import numpy as np
from scipy import signal

from ..errors import ConfigError
from .hrf import hrf_kernel


#: names of the six basic motor events
MOTOR_EVENTS = ("cue", "left_hand", "right_hand", "left_foot", "right_foot",
                "tongue")


@dataclasses.dataclass(frozen=True)
class TaskDesign:
    """Block design of a task experiment in scan units"""
    #: onsets (scans) of every event
    onsets: Tuple[Tuple[int, ...], ...]
    #: durations (scans) matching `onsets`
    durations: Tuple[Tuple[int, ...], ...]
    #: repetition time in seconds
    tr: float = 0.72
    #: number of scans
    length: int = 284

    def __post_init__(self):
        object.__setattr__(self, "onsets",
                           tuple(tuple(int(v) for v in e)
                                 for e in self.onsets))
        object.__setattr__(self, "durations",
                           tuple(tuple(int(v) for v in e)
                                 for e in self.durations))
        self.validate()

    @property
    def event_count(self):
        return len(self.onsets)

    def validate(self):
        if self.event_count < 1:
            raise ConfigError("A task design needs at least one event")
        if len(self.durations) != self.event_count:
            raise ConfigError("Every event needs onsets and durations")
        if self.tr <= 0:
            raise ConfigError(f"Repetition time must be positive: {self.tr}")
        for ii, (ons, durs) in enumerate(zip(self.onsets, self.durations)):
            if not ons:
                raise ConfigError(f"Event {ii} has no onsets")
            if len(ons) != len(durs):
                raise ConfigError(
                    f"Event {ii} has {len(ons)} onsets but {len(durs)} "
                    f"durations")
            for on, du in zip(ons, durs):
                if on < 0 or du < 0 or on + du > self.length \
                        or on >= self.length:
                    raise ConfigError(
                        f"Event {ii} block ({on}, {du}) exceeds the "
                        f"{self.length} scans of the design")

    def fingerprint(self) -> str:
        """MD5 hex digest identifying this design"""
        hasher = hashlib.md5()
        hasher.update(repr((self.onsets, self.durations, float(self.tr),
                            self.length)).encode())
        return hasher.hexdigest()


def motor_design(length=284, tr=0.72, cue_scans=None, block_scans=None,
                 start=None) -> TaskDesign:
    """Six-event motor-like block design

    Every movement block (left/right hand, left/right foot, tongue)
    is announced by a visual cue. The block order is fixed, every
    movement appears twice, and there is a fixation period after
    every five blocks.
    """
    scale = length / 284
    if cue_scans is None:
        cue_scans = max(1, round(4 * scale))
    if block_scans is None:
        block_scans = max(2, round(17 * scale))
    if start is None:
        start = max(1, round(6 * scale))
    order = [1, 3, 5, 2, 4, 4, 2, 5, 1, 3]
    onsets = [[] for _ in MOTOR_EVENTS]
    durations = [[] for _ in MOTOR_EVENTS]
    pos = start
    for ii, ev in enumerate(order):
        onsets[0].append(pos)
        durations[0].append(cue_scans)
        pos += cue_scans
        onsets[ev].append(pos)
        durations[ev].append(block_scans)
        pos += block_scans
        if ii % 5 == 4:
            # fixation
            pos += block_scans
        if pos >= length:
            raise ConfigError(
                f"Design of length {length} too short for the motor blocks")
    return TaskDesign(onsets=onsets, durations=durations, tr=tr,
                      length=length)


def boxcar(onsets, durations, length):
    box = np.zeros(length, dtype=np.float64)
    for on, du in zip(onsets, durations):
        box[on:on + du] = 1
    return box


def design_regressors(d: TaskDesign) -> np.ndarray:
    """Return the (E, T) matrix of HRF-convolved, max-normalized boxcars"""
    d.validate()
    kernel = hrf_kernel(d.tr)
    regs = np.zeros((d.event_count, d.length), dtype=np.float64)
    for ii, (ons, durs) in enumerate(zip(d.onsets, d.durations)):
        box = boxcar(ons, durs, d.length)
        if not np.any(box):
            continue
        row = signal.convolve(box, kernel, method="direct")[:d.length]
        regs[ii] = row / np.max(row)
    return regs
