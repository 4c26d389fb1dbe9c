from __future__ import annotations

import dataclasses
import logging
from typing import Dict

import numpy as np

from ..data import normalize_batch
from ..errors import ConfigError, ShapeError, ValidationError
from ..model import ParamBundle, decode_from_hidden, encode
from .dictlearn import Dictionary, ODLConfig, SparseCodes, odl_fit
from .pcc import best_atoms


logger = logging.getLogger(__name__)

#: setup 1 learns from hidden codes, setup 2 from the raw signals
SETUPS = (1, 2)


@dataclasses.dataclass
class ValidationReport:
    """Design-atom correlations of both validation setups"""
    #: |PCC| of the best atom for every design, by setup
    pcc: Dict[int, np.ndarray]
    #: index of the best atom for every design, by setup
    best_atom: Dict[int, np.ndarray]
    #: learned dictionaries by setup (setup 1 lives in hidden space)
    dictionaries: Dict[int, Dictionary]
    #: sparse codes by setup (K, N)
    codes: Dict[int, SparseCodes]
    #: setup-1 atoms projected to the signal space (T, K)
    projected: np.ndarray
    #: coefficient rows of the matched atoms, by setup (E, N)
    spatial_maps: Dict[int, np.ndarray]

    @property
    def event_count(self):
        return len(self.pcc[SETUPS[0]])

    def records(self):
        """(event_id, setup, atom_id, pcc) rows"""
        rows = []
        for setup in SETUPS:
            for ee in range(self.event_count):
                rows.append((ee, setup, int(self.best_atom[setup][ee]),
                             float(self.pcc[setup][ee])))
        return rows

    def mean_pcc(self, setup):
        return float(np.mean(self.pcc[setup]))


def hidden_codes(params: ParamBundle, signals: np.ndarray) -> np.ndarray:
    """Hidden code H of every signal (N, hidden size)"""
    return np.array([encode(params, x) for x in signals], dtype=np.float64)


def project_atoms(params: ParamBundle, atoms: np.ndarray, scale: float):
    """Decode every hidden-space atom (scaled by `scale`) to signal space"""
    return np.stack([decode_from_hidden(params, scale * atoms[:, kk])
                     for kk in range(atoms.shape[1])], axis=1).astype(
        np.float64)


def _spatial_maps(codes: SparseCodes, atoms, kept, n_signals):
    maps = np.zeros((len(atoms), n_signals), dtype=np.float64)
    for ee, kk in enumerate(atoms):
        maps[ee, kept] = codes.row(kk)
    return maps


def run_validation(params: ParamBundle,
                   signals: np.ndarray,
                   designs: np.ndarray,
                   cfg: ODLConfig = None) -> ValidationReport:
    """Compare dictionaries of raw signals and of hidden codes

    Setup 2 learns a dictionary from the normalized signals. Setup 1
    learns a dictionary from the hidden codes of the trained encoder
    and decodes every atom back to the signal space. For every
    design, the atom with the largest absolute correlation is
    reported per setup.

    Parameters
    ----------
    params:
        trained model parameters
    signals:
        (N, T) normalized signals
    designs:
        (E, T) design regressors
    cfg:
        dictionary learning settings shared by both setups
    """
    cfg = cfg or ODLConfig()
    signals = np.asarray(signals, dtype=np.float64)
    designs = np.atleast_2d(np.asarray(designs, dtype=np.float64))
    length = params.shape_map.cfg.input_length
    if signals.ndim != 2 or signals.shape[1] != length:
        raise ShapeError(f"Signals of shape {signals.shape} do not match "
                         f"the model input length {length}")
    if designs.shape[1] != length:
        raise ShapeError(f"Designs of shape {designs.shape} do not match "
                         f"the model input length {length}")
    n_signals = signals.shape[0]

    hidden = hidden_codes(params, signals)
    if not np.all(np.isfinite(hidden)) or np.max(np.std(hidden, axis=0),
                                                 initial=0) <= 1e-12:
        raise ValidationError("Hidden codes do not vary across signals; "
                              "the model is untrained or degenerate")
    hidden_norm, kept_hidden = normalize_batch(hidden)
    if kept_hidden.size < cfg.n_atoms:
        raise ValidationError(
            f"Only {kept_hidden.size} non-constant hidden codes for "
            f"{cfg.n_atoms} atoms")

    try:
        dict2, codes2 = odl_fit(signals, cfg)
        dict1, codes1 = odl_fit(hidden_norm, cfg)
    except ConfigError as exc:
        raise ValidationError(str(exc)) from exc
    scale = float(np.median(np.linalg.norm(hidden, axis=1)))
    projected = project_atoms(params, dict1.atoms, scale)

    idx1, pcc1 = best_atoms(projected, designs)
    idx2, pcc2 = best_atoms(dict2.atoms, designs)
    logger.info(f"Mean best |PCC|: setup 1 {np.mean(pcc1):.3f}, "
                f"setup 2 {np.mean(pcc2):.3f}")
    return ValidationReport(
        pcc={1: pcc1, 2: pcc2},
        best_atom={1: idx1, 2: idx2},
        dictionaries={1: dict1, 2: dict2},
        codes={1: codes1, 2: codes2},
        projected=projected,
        spatial_maps={
            1: _spatial_maps(codes1, idx1, kept_hidden, n_signals),
            2: _spatial_maps(codes2, idx2, np.arange(n_signals), n_signals),
        },
    )
