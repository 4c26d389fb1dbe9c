import numpy as np
import pytest

from dcanum.errors import FormatError
from dcanum.model import build_model
from dcanum.read import decode_model, read_model
from dcanum.read.dpsg import MODEL_HEAD
from dcanum.write import encode_model, write_model

from helper_methods import random_config, small_config


@pytest.mark.parametrize("dtype", [np.float32, np.float64])
def test_model_roundtrip(tmp_path, dtype):
    cfg = small_config()
    params = build_model(cfg, seed=3, dtype=dtype)
    params.version = 17
    path = write_model(tmp_path / "model.dpsg", params)
    loaded = read_model(path)
    assert loaded.shape_map == params.shape_map
    assert loaded.shape_map.cfg == cfg
    assert loaded.version == 17
    assert loaded.dtype == dtype
    assert np.array_equal(loaded.flat, params.flat)
    assert loaded.checksum() == params.checksum()


def test_model_default_config():
    params = build_model(small_config(input_length=32), seed=1)
    loaded = decode_model(encode_model(params))
    assert loaded.shape_map.cfg.input_length == 32


def test_model_truncated():
    data = encode_model(build_model(small_config(), seed=1))
    with pytest.raises(FormatError) as exc:
        decode_model(data[:-3])
    assert exc.value.offset == len(data) - 3
    with pytest.raises(FormatError) as exc:
        decode_model(data[:5])
    assert exc.value.offset == 5


def test_model_trailing():
    data = encode_model(build_model(small_config(), seed=1))
    with pytest.raises(FormatError) as exc:
        decode_model(data + b"\x00\x00")
    assert exc.value.offset == len(data)


def test_model_bad_magic():
    data = bytearray(encode_model(build_model(small_config(), seed=1)))
    data[:4] = b"FMTS"
    with pytest.raises(FormatError) as exc:
        decode_model(bytes(data))
    assert exc.value.offset == 0


def test_model_bad_identifier():
    data = bytearray(encode_model(build_model(small_config(), seed=1)))
    data[MODEL_HEAD.size:MODEL_HEAD.size + 3] = b"xyz"
    with pytest.raises(FormatError) as exc:
        decode_model(bytes(data))
    assert exc.value.offset == MODEL_HEAD.size


def test_model_roundtrip_random(tmp_path):
    rng = np.random.default_rng(42)
    for ii in range(100):
        cfg = random_config(rng)
        dtype = [np.float32, np.float64][ii % 2]
        params = build_model(cfg, seed=ii, dtype=dtype)
        params.flat[...] = rng.normal(size=params.flat.size)
        params.version = int(rng.integers(0, 2**40))
        path = write_model(tmp_path / f"model{ii}.dpsg", params)
        loaded = read_model(path)
        assert loaded.shape_map.cfg == cfg
        assert loaded.version == params.version
        assert loaded.dtype == dtype
        assert loaded.flat.tobytes() == params.flat.tobytes()
        assert path.read_bytes() == encode_model(params)
