"""Deep convolutional autoencoder for 1D signals"""
from __future__ import annotations

import dataclasses
from typing import List

import numpy as np

from ..errors import ShapeError
from ..kern import (
    conv1d_backward, conv1d_forward, dense_backward, dense_forward,
    maxpool_forward, unpool_switch, upsample_nearest, SwitchMask
)
from ..kern.conv import conv1d_preactivation
from ..kern.pool import maxpool_backward, unpool_backward
from .config import ModelConfig
from .params import GradDelta, ParamBundle, ShapeMap


@dataclasses.dataclass
class ForwardTrace:
    """Intermediate tensors of one forward pass"""
    #: input of every encoder convolution (first entry is the signal)
    enc_inputs: List[np.ndarray]
    #: encoder pre-activations
    enc_pre: List[np.ndarray]
    #: encoder max-pooled outputs (last entry is Z)
    enc_pooled: List[np.ndarray]
    #: pooling switches of every encoder layer
    switches: List[SwitchMask]
    #: hidden code H
    h: np.ndarray
    #: decoder dense head pre-activation (flat)
    zp_pre: np.ndarray
    #: decoder dense head output reshaped to the shape of Z
    z_prime: np.ndarray
    #: input (unpooled) of every decoder convolution
    dec_inputs: List[np.ndarray]
    #: decoder pre-activations
    dec_pre: List[np.ndarray]
    #: reconstruction x̂ (1D)
    x_hat: np.ndarray

    @property
    def z(self):
        return self.enc_pooled[-1]


def build_model(cfg: ModelConfig, seed: int = 42,
                dtype=np.float32) -> ParamBundle:
    """Deterministically initialize all parameters

    Weights of ReLU layers are drawn from N(0, 2/fan_in), weights of
    linear layers from N(0, 1/fan_in); biases are zero.
    """
    shape_map = ShapeMap(cfg)
    rng = np.random.default_rng(seed)
    flat = np.zeros(shape_map.size, dtype=np.float64)
    for ly in shape_map.layers.values():
        gain = 2.0 if ly.activation == "relu" else 1.0
        scale = np.sqrt(gain / ly.fan_in)
        weights = shape_map.view(flat, f"{ly.name}.w")
        weights[...] = rng.normal(0, scale, size=ly.weight_shape)
    return ParamBundle(shape_map, flat.astype(dtype), version=0)


def _as_signal(params, x):
    x = np.asarray(x, dtype=params.dtype)
    length = params.shape_map.cfg.input_length
    if x.shape != (length,):
        raise ShapeError(
            f"Signal of shape {x.shape} does not match the model input "
            f"length {length}")
    return x


def _encode(params, x):
    cfg = params.shape_map.cfg
    enc_inputs, enc_pre, enc_pooled, switches = [], [], [], []
    cur = x[np.newaxis, :]
    for ii in range(len(cfg.encoder)):
        enc_inputs.append(cur)
        pre = conv1d_preactivation(cur, params.conv(f"enc{ii}"))
        post = np.maximum(pre, 0)
        cur, sw = maxpool_forward(post, cfg.pool)
        enc_pre.append(pre)
        enc_pooled.append(cur)
        switches.append(sw)
    h = dense_forward(cur.ravel(), params.dense("enc_head"), "linear")
    return enc_inputs, enc_pre, enc_pooled, switches, h


def forward(params: ParamBundle, x: np.ndarray) -> ForwardTrace:
    """Run encoder and decoder on one signal

    The decoder places values at the encoder switch positions
    before each convolution. All convolutions use ReLU except the
    output layer, which is linear.
    """
    x = _as_signal(params, x)
    cfg = params.shape_map.cfg
    enc_inputs, enc_pre, enc_pooled, switches, h = _encode(params, x)
    d_head = params.dense("dec_head")
    zp_pre = h @ d_head.weights + d_head.bias
    z_prime = np.maximum(zp_pre, 0).reshape(cfg.top_shape)

    num = len(cfg.decoder)
    dec_inputs, dec_pre = [], []
    cur = z_prime
    for jj in range(num):
        sw = switches[num - 1 - jj]
        unp = unpool_switch(cur, sw, sw.length)
        pre = conv1d_preactivation(unp, params.conv(f"dec{jj}"))
        dec_inputs.append(unp)
        dec_pre.append(pre)
        cur = pre if jj == num - 1 else np.maximum(pre, 0)
    return ForwardTrace(enc_inputs=enc_inputs,
                        enc_pre=enc_pre,
                        enc_pooled=enc_pooled,
                        switches=switches,
                        h=h,
                        zp_pre=zp_pre,
                        z_prime=z_prime,
                        dec_inputs=dec_inputs,
                        dec_pre=dec_pre,
                        x_hat=cur[0],
                        )


def loss(x: np.ndarray, trace: ForwardTrace, lambda_reg: float
         ) -> tuple[float, float, float]:
    """Return (total, reconstruction term, regularization term)

    The reconstruction term is ½‖x − x̂‖², the regularization term
    ½λ‖Z − Z'‖² between the encoder top feature map and the reshaped
    output of the decoder dense head.
    """
    x = np.asarray(x, dtype=np.float64)
    recon = 0.5 * float(np.sum((x - trace.x_hat) ** 2))
    reg = 0.5 * lambda_reg * float(
        np.sum((np.asarray(trace.z, dtype=np.float64) - trace.z_prime) ** 2))
    return recon + reg, recon, reg


def backward(params: ParamBundle,
             x: np.ndarray,
             trace: ForwardTrace,
             lambda_reg: float,
             delta: GradDelta = None) -> GradDelta:
    """Add the exact gradient of :func:`loss` for one signal to `delta`

    If `delta` is not given, a new zero delta is created. The
    `sample_count` of the delta is incremented by one.
    """
    x = _as_signal(params, x)
    cfg = params.shape_map.cfg
    if delta is None:
        delta = GradDelta.zeros_like(params)
    elif delta.shape_map != params.shape_map:
        raise ShapeError("Gradient delta does not match the parameter layout")
    num = len(cfg.decoder)

    grad = (trace.x_hat - x)[np.newaxis, :]
    for jj in reversed(range(num)):
        act = "linear" if jj == num - 1 else "relu"
        name = f"dec{jj}"
        grad_in, gp = conv1d_backward(trace.dec_inputs[jj], params.conv(name),
                                      act, grad, pre=trace.dec_pre[jj])
        delta.add(f"{name}.w", gp.weights)
        delta.add(f"{name}.b", gp.bias)
        grad = unpool_backward(grad_in, trace.switches[num - 1 - jj])

    # second entry point of the regularization term (Z')
    z = trace.z
    grad = grad + lambda_reg * (trace.z_prime - z)
    grad_h, gd = dense_backward(trace.h, params.dense("dec_head"), "relu",
                                grad.ravel(), pre=trace.zp_pre)
    delta.add("dec_head.w", gd.weights)
    delta.add("dec_head.b", gd.bias)

    grad_z, ge = dense_backward(z.ravel(), params.dense("enc_head"), "linear",
                                grad_h)
    delta.add("enc_head.w", ge.weights)
    delta.add("enc_head.b", ge.bias)
    # first entry point of the regularization term (Z)
    grad = grad_z.reshape(z.shape) + lambda_reg * (z - trace.z_prime)

    for ii in reversed(range(len(cfg.encoder))):
        name = f"enc{ii}"
        grad_post = maxpool_backward(grad, trace.switches[ii])
        grad, gp = conv1d_backward(trace.enc_inputs[ii], params.conv(name),
                                   "relu", grad_post, pre=trace.enc_pre[ii])
        delta.add(f"{name}.w", gp.weights)
        delta.add(f"{name}.b", gp.bias)
    delta.sample_count += 1
    return delta


def encode(params: ParamBundle, x: np.ndarray) -> np.ndarray:
    """Return the hidden code H of one signal"""
    x = _as_signal(params, x)
    return _encode(params, x)[-1]


def decode_from_hidden(params: ParamBundle, h: np.ndarray) -> np.ndarray:
    """Project an external hidden code back to the signal space

    No switches are available for external codes (e.g. dictionary
    atoms), so nearest-neighbor up-sampling replaces unpooling.
    """
    cfg = params.shape_map.cfg
    h = np.asarray(h, dtype=params.dtype)
    if h.shape != (cfg.hidden_dim,):
        raise ShapeError(
            f"Hidden code of shape {h.shape} does not match hidden size "
            f"{cfg.hidden_dim}")
    cur = dense_forward(h, params.dense("dec_head"), "relu").reshape(
        cfg.top_shape)
    num = len(cfg.decoder)
    lengths = cfg.prepool_lengths
    for jj in range(num):
        ups = upsample_nearest(cur, cfg.pool, lengths[num - 1 - jj])
        act = "linear" if jj == num - 1 else "relu"
        cur = conv1d_forward(ups, params.conv(f"dec{jj}"), act)
    return cur[0]


def batch_gradient(params: ParamBundle, signals: np.ndarray,
                   lambda_reg: float = None) -> tuple[GradDelta, float]:
    """Sum of per-signal gradients and mean loss over `signals`"""
    if lambda_reg is None:
        lambda_reg = params.shape_map.cfg.lambda_reg
    delta = GradDelta.zeros_like(params)
    total = 0.
    for x in signals:
        trace = forward(params, x)
        total += loss(x, trace, lambda_reg)[0]
        backward(params, x, trace, lambda_reg, delta)
    return delta, total / max(1, len(signals))


def reconstruction_loss(params: ParamBundle, signals: np.ndarray) -> float:
    """Mean ½‖x − x̂‖² over `signals`"""
    if len(signals) == 0:
        return 0.
    total = 0.
    for x in signals:
        total += loss(x, forward(params, x), 0)[1]
    return total / len(signals)
