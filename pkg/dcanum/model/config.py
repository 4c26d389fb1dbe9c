from __future__ import annotations

import dataclasses
from typing import Tuple

from ..errors import ConfigError
from ..meta import ppid


#: (feature_maps, kernel_len) of one convolutional layer
LayerSpec = Tuple[int, int]


@dataclasses.dataclass(frozen=True)
class PlannedLayer:
    """One entry of the layer plan derived from a :class:`ModelConfig`"""
    #: unique layer name, e.g. "enc0" or "dec_head"
    name: str
    #: "conv" or "dense"
    kind: str
    #: input channels (conv) or input dimension (dense)
    n_in: int
    #: output channels (conv) or output dimension (dense)
    n_out: int
    #: kernel length (1 for dense layers)
    kernel_len: int
    #: "relu" or "linear"
    activation: str

    @property
    def weight_shape(self):
        if self.kind == "conv":
            return (self.n_out, self.n_in, self.kernel_len)
        else:
            return (self.n_in, self.n_out)

    @property
    def fan_in(self):
        return self.n_in * self.kernel_len

    @property
    def size(self):
        return self.n_in * self.n_out * self.kernel_len + self.n_out


@dataclasses.dataclass(frozen=True)
class ModelConfig:
    """Layer plan of the convolutional autoencoder

    The defaults reproduce the published model summary: four
    convolutional encoder layers with 32/21, 64/9, 128/9 and 256/9
    feature maps/kernel lengths, a dense bottleneck whose hidden size
    matches the input length, and a mirrored decoder.
    """
    #: number of time points per signal
    input_length: int = 284
    #: encoder (feature_maps, kernel_len) per layer
    encoder: Tuple[LayerSpec, ...] = ((32, 21), (64, 9), (128, 9), (256, 9))
    #: decoder (feature_maps, kernel_len) per layer
    decoder: Tuple[LayerSpec, ...] = ((128, 9), (64, 9), (32, 9), (1, 21))
    #: max-pooling window size
    pool: int = 2
    #: size of the hidden code H (defaults to `input_length`)
    hidden_dim: int = None
    #: weight of the feature-map regularization term
    lambda_reg: float = 0.006

    def __post_init__(self):
        # normalize lists (e.g. from JSON) to tuples
        object.__setattr__(self, "encoder",
                           tuple(tuple(int(v) for v in s)
                                 for s in self.encoder))
        object.__setattr__(self, "decoder",
                           tuple(tuple(int(v) for v in s)
                                 for s in self.decoder))
        if self.hidden_dim is None:
            object.__setattr__(self, "hidden_dim", self.input_length)
        self.validate()

    def validate(self):
        """Raise :class:`ConfigError` if the layer plan is inconsistent"""
        if self.input_length < 1:
            raise ConfigError(
                f"Input length must be positive, got {self.input_length}")
        if self.pool < 1:
            raise ConfigError(f"Pool size must be >= 1, got {self.pool}")
        if self.lambda_reg < 0:
            raise ConfigError(
                f"Regularization weight must be >= 0, got {self.lambda_reg}")
        if not self.encoder:
            raise ConfigError("The encoder needs at least one layer")
        if len(self.decoder) != len(self.encoder):
            raise ConfigError(
                f"Decoder has {len(self.decoder)} layers, encoder has "
                f"{len(self.encoder)}; they must mirror each other")
        for maps, kern in self.encoder + self.decoder:
            if maps < 1 or kern < 1:
                raise ConfigError(f"Invalid layer spec {(maps, kern)}")
            if kern % 2 == 0:
                raise ConfigError(
                    f"Kernel length must be odd, got {kern}")
        num = len(self.encoder)
        for ii in range(num - 1):
            # output of decoder stage ii is unpooled with the switches
            # of encoder layer num-2-ii
            if self.decoder[ii][0] != self.encoder[num - 2 - ii][0]:
                raise ConfigError(
                    f"Decoder layer {ii} must have "
                    f"{self.encoder[num - 2 - ii][0]} feature maps to "
                    f"mirror encoder layer {num - 2 - ii}")
        if self.decoder[-1][0] != 1:
            raise ConfigError("The last decoder layer must have 1 feature map")
        if self.decoder[-1][1] != self.encoder[0][1]:
            raise ConfigError(
                "The kernel of the last decoder layer must mirror the "
                "kernel of the first encoder layer")
        if self.hidden_dim != self.input_length:
            raise ConfigError(
                f"Hidden size {self.hidden_dim} must match the input "
                f"length {self.input_length}")

    @property
    def prepool_lengths(self):
        """Signal length entering each encoder pooling stage"""
        lengths = []
        length = self.input_length
        for _ in self.encoder:
            lengths.append(length)
            length = -(-length // self.pool)
        return lengths

    @property
    def pooled_lengths(self):
        """Signal length after each encoder pooling stage"""
        return [-(-ll // self.pool) for ll in self.prepool_lengths]

    @property
    def top_shape(self):
        """Shape (channels, length) of the encoder top feature map Z"""
        return self.encoder[-1][0], self.pooled_lengths[-1]

    @property
    def flatten_dim(self):
        channels, length = self.top_shape
        return channels * length

    @classmethod
    def from_ppid(cls, model_ppid):
        try:
            return ppid.ppid_to_config(cls, model_ppid, key="dca")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"Invalid model identifier: {exc}") from exc

    def get_ppid(self):
        """Pipeline identifier of this layer plan"""
        return ppid.config_to_ppid(self, "dca")

    def layer_plan(self):
        """Return the list of :class:`PlannedLayer` in forward order"""
        plan = []
        in_ch = 1
        for ii, (maps, kern) in enumerate(self.encoder):
            plan.append(PlannedLayer(f"enc{ii}", "conv", in_ch, maps, kern,
                                     "relu"))
            in_ch = maps
        # linear hidden code (see DESIGN.md)
        plan.append(PlannedLayer("enc_head", "dense", self.flatten_dim,
                                 self.hidden_dim, 1, "linear"))
        plan.append(PlannedLayer("dec_head", "dense", self.hidden_dim,
                                 self.flatten_dim, 1, "relu"))
        num = len(self.decoder)
        for ii, (maps, kern) in enumerate(self.decoder):
            act = "linear" if ii == num - 1 else "relu"
            plan.append(PlannedLayer(f"dec{ii}", "conv", in_ch, maps, kern,
                                     act))
            in_ch = maps
        return plan


def tiny_config(input_length=8, filters=2, kernel_len=3):
    """Small two-layer configuration used for gradient checks"""
    return ModelConfig(input_length=input_length,
                       encoder=((filters, kernel_len), (filters, kernel_len)),
                       decoder=((filters, kernel_len), (1, kernel_len)),
                       pool=2)
