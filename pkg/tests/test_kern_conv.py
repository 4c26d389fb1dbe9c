import numpy as np
import pytest

from dcanum.errors import ConfigError, ShapeError
from dcanum.kern import ConvParams, conv1d_backward, conv1d_forward

from helper_methods import numeric_gradient


def test_conv1d_identity_kernel():
    x = np.arange(6, dtype=np.float64).reshape(1, 6) - 2
    p = ConvParams(weights=np.array([[[0., 1., 0.]]]), bias=np.zeros(1))
    assert np.array_equal(conv1d_forward(x, p, "linear"), x)
    assert np.array_equal(conv1d_forward(x, p, "relu"), np.maximum(x, 0))


def test_conv1d_same_padding_and_bias():
    x = np.array([[1., 2., 3.]])
    p = ConvParams(weights=np.array([[[1., 1., 1.]]]), bias=np.array([0.5]))
    out = conv1d_forward(x, p, "linear")
    # zero padding at both ends
    assert np.allclose(out, [[3.5, 6.5, 5.5]])


def test_conv1d_cross_correlation_orientation():
    x = np.array([[0., 1., 0., 0.]])
    p = ConvParams(weights=np.array([[[1., 2., 3.]]]), bias=np.zeros(1))
    out = conv1d_forward(x, p, "linear")
    assert np.allclose(out, [[3., 2., 1., 0.]])


def test_conv1d_even_kernel_rejected():
    p = ConvParams(weights=np.ones((1, 1, 4)), bias=np.zeros(1))
    with pytest.raises(ConfigError):
        conv1d_forward(np.ones((1, 8)), p)


def test_conv1d_channel_mismatch():
    p = ConvParams(weights=np.ones((2, 3, 3)), bias=np.zeros(2))
    with pytest.raises(ShapeError):
        conv1d_forward(np.ones((2, 8)), p)


def test_conv_params_shape_check():
    with pytest.raises(ShapeError):
        ConvParams(weights=np.ones((2, 1, 3)), bias=np.zeros(3))


@pytest.mark.parametrize("activation", ["relu", "linear"])
def test_conv1d_backward_finite_differences(activation):
    rng = np.random.default_rng(7)
    x = rng.normal(size=(3, 11))
    weights = rng.normal(size=(2, 3, 5))
    bias = rng.normal(size=2)
    target = rng.normal(size=(2, 11))

    def objective_w(flat):
        p = ConvParams(flat[:weights.size].reshape(weights.shape),
                       flat[weights.size:])
        return 0.5 * np.sum((conv1d_forward(x, p, activation) - target) ** 2)

    p = ConvParams(weights, bias)
    out = conv1d_forward(x, p, activation)
    grad_x, grad_p = conv1d_backward(x, p, activation, out - target)

    flat = np.concatenate([weights.ravel(), bias])
    indices = list(range(flat.size))
    num = numeric_gradient(objective_w, flat, indices)
    ana = np.concatenate([grad_p.weights.ravel(), grad_p.bias])
    assert np.allclose(ana, num, rtol=1e-4, atol=1e-7)

    def objective_x(flat_x):
        return 0.5 * np.sum(
            (conv1d_forward(flat_x.reshape(x.shape), p, activation)
             - target) ** 2)

    num_x = numeric_gradient(objective_x, x.ravel().copy(),
                             list(range(x.size)))
    assert np.allclose(grad_x.ravel(), num_x, rtol=1e-4, atol=1e-7)


def test_conv1d_backward_relu_zero_subgradient():
    x = np.zeros((1, 4))
    p = ConvParams(weights=np.ones((1, 1, 3)), bias=np.zeros(1))
    grad_x, grad_p = conv1d_backward(x, p, "relu", np.ones((1, 4)))
    assert np.all(grad_x == 0)
    assert np.all(grad_p.weights == 0)
    assert np.all(grad_p.bias == 0)
