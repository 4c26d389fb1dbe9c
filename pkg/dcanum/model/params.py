from __future__ import annotations

import hashlib

import numpy as np

from ..errors import ShapeError
from ..kern import ConvParams, DenseParams
from .config import ModelConfig


class ShapeMap:
    def __init__(self, cfg: ModelConfig):
        """Ordered layout of all trainable parameters in a flat vector

        The order is the forward order of the layer plan, weights
        before biases. Parameter bundles, gradient deltas, Adagrad
        accumulators and wire payloads all share this layout.
        """
        #: model configuration
        self.cfg = cfg
        #: planned layers by name
        self.layers = {ly.name: ly for ly in cfg.layer_plan()}
        #: list of (entry name, shape, offset)
        self.entries = []
        offset = 0
        for ly in self.layers.values():
            for suffix, shape in [("w", ly.weight_shape), ("b", (ly.n_out,))]:
                self.entries.append((f"{ly.name}.{suffix}", shape, offset))
                offset += int(np.prod(shape))
        #: total number of scalars
        self.size = offset
        self._index = {name: (shape, off) for name, shape, off in self.entries}

    def __eq__(self, other):
        return isinstance(other, ShapeMap) and self.entries == other.entries

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def view(self, flat, name):
        """Return a reshaped view on entry `name` of `flat`"""
        shape, off = self._index[name]
        return flat[off:off + int(np.prod(shape))].reshape(shape)

    def shard_ranges(self, shard_count):
        """Split the flat vector into `shard_count` contiguous ranges"""
        bounds = np.linspace(0, self.size, shard_count + 1).astype(np.int64)
        return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]

    def fingerprint(self):
        """MD5 hex digest of the layout"""
        hasher = hashlib.md5()
        for name, shape, off in self.entries:
            hasher.update(f"{name}:{shape}:{off}|".encode())
        return hasher.hexdigest()


class _FlatBundle:
    def __init__(self, shape_map: ShapeMap, flat: np.ndarray):
        if flat.shape != (shape_map.size,):
            raise ShapeError(
                f"Flat vector of shape {flat.shape} does not match shape "
                f"map with {shape_map.size} scalars")
        #: parameter layout
        self.shape_map = shape_map
        #: contiguous vector holding all scalars
        self.flat = flat

    def __getitem__(self, name):
        return self.shape_map.view(self.flat, name)

    @property
    def dtype(self):
        return self.flat.dtype

    def conv(self, layer) -> ConvParams:
        return ConvParams(weights=self[f"{layer}.w"], bias=self[f"{layer}.b"])

    def dense(self, layer) -> DenseParams:
        return DenseParams(weights=self[f"{layer}.w"],
                           bias=self[f"{layer}.b"])


class ParamBundle(_FlatBundle):
    def __init__(self, shape_map, flat, version=0):
        """All trainable parameters of the autoencoder

        Bundles handed out to workers are snapshots; the flat vector
        is marked read-only by :func:`ParamBundle.freeze`.
        """
        super(ParamBundle, self).__init__(shape_map, flat)
        #: number of deltas applied since initialization
        self.version = int(version)

    def copy(self):
        return ParamBundle(self.shape_map, self.flat.copy(), self.version)

    def freeze(self):
        """Make the underlying vector read-only and return self"""
        self.flat.setflags(write=False)
        return self

    def checksum(self):
        """MD5 hex digest of the parameter bytes"""
        return hashlib.md5(self.flat.tobytes()).hexdigest()


class GradDelta(_FlatBundle):
    def __init__(self, shape_map, flat=None, sample_count=0, dtype=None):
        """Accumulated loss gradient with the layout of a ParamBundle"""
        if flat is None:
            flat = np.zeros(shape_map.size, dtype=dtype or np.float64)
        super(GradDelta, self).__init__(shape_map, flat)
        #: number of examples summed into this delta
        self.sample_count = int(sample_count)

    @classmethod
    def zeros_like(cls, params: ParamBundle):
        return cls(params.shape_map, dtype=params.dtype)

    def add(self, name, grad):
        self[name][...] += grad

    def mean(self):
        """Return the mean gradient over all accumulated samples"""
        if self.sample_count == 0:
            return np.zeros_like(self.flat)
        return self.flat / self.sample_count


def conv_param_count(out_channels, in_channels, kernel_len):
    return out_channels * in_channels * kernel_len + out_channels


def dense_param_count(in_dim, out_dim):
    return in_dim * out_dim + out_dim


def param_count(cfg: ModelConfig) -> int:
    """Closed-form number of trainable scalars of a configuration"""
    total = 0
    in_ch = 1
    for maps, kern in cfg.encoder:
        total += conv_param_count(maps, in_ch, kern)
        in_ch = maps
    total += dense_param_count(cfg.flatten_dim, cfg.hidden_dim)
    total += dense_param_count(cfg.hidden_dim, cfg.flatten_dim)
    for maps, kern in cfg.decoder:
        total += conv_param_count(maps, in_ch, kern)
        in_ch = maps
    return total
