import numpy as np
import pytest

from dcanum.dist.wire import (
    FRAME_HEAD, Ack, FetchParams, Params, PushGrad, decode_header,
    decode_message, encode_message
)
from dcanum.errors import ProtocolError


def test_ack():
    frame = encode_message(Ack(7))
    assert frame[:4] == b"DPSG"
    assert len(frame) == FRAME_HEAD.size + 8
    assert decode_message(frame) == Ack(applied_version=7)


def test_fetch():
    frame = encode_message(FetchParams(worker_id=3))
    assert decode_message(frame) == FetchParams(3)
    assert decode_header(frame) == (1, 4)


@pytest.mark.parametrize("dtype", [np.float32, np.float64])
def test_push_grad(dtype):
    payload = np.linspace(-1, 1, 704).astype(dtype)
    msg = PushGrad(worker_id=2, base_version=11, payload=payload,
                   sample_count=32)
    frame = encode_message(msg)
    msg_type, body_len = decode_header(frame)
    assert msg_type == 3
    assert body_len == 704 * np.dtype(dtype).itemsize + 21
    decoded = decode_message(frame)
    assert decoded == msg
    assert decoded.payload.dtype == dtype


def test_params_random_payloads():
    rng = np.random.default_rng(42)
    for size in [1, 17, 1000]:
        payload = rng.normal(size=size).astype(np.float32)
        msg = Params(version=int(rng.integers(0, 2**40)), payload=payload)
        assert decode_message(encode_message(msg)) == msg


def random_message(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        return FetchParams(worker_id=int(rng.integers(0, 2**32)))
    elif kind == 3:
        return Ack(applied_version=int(rng.integers(0, 2**63)))
    dtype = [np.float32, np.float64][rng.integers(0, 2)]
    payload = rng.normal(size=int(rng.integers(1, 300))).astype(dtype)
    if kind == 1:
        return Params(version=int(rng.integers(0, 2**63)), payload=payload)
    return PushGrad(worker_id=int(rng.integers(0, 2**32)),
                    base_version=int(rng.integers(0, 2**63)),
                    payload=payload,
                    sample_count=int(rng.integers(1, 2**20)))


def test_all_messages_random():
    rng = np.random.default_rng(3)
    seen = set()
    for _ in range(1000):
        msg = random_message(rng)
        seen.add(type(msg))
        frame = encode_message(msg)
        assert decode_header(frame) == (msg.msg_type,
                                        len(frame) - FRAME_HEAD.size)
        assert decode_message(frame) == msg
    assert seen == {FetchParams, Params, PushGrad, Ack}


def test_truncated():
    frame = encode_message(Params(version=1, payload=np.ones(10)))
    for cut in [3, FRAME_HEAD.size, len(frame) - 1]:
        with pytest.raises(ProtocolError) as exc:
            decode_message(frame[:cut])
        assert exc.value.offset == cut


def test_trailing_bytes():
    frame = encode_message(Ack(1))
    with pytest.raises(ProtocolError) as exc:
        decode_message(frame + b"\x00")
    assert exc.value.offset == len(frame)


@pytest.mark.parametrize("pos,value,offset", [
    (0, b"Q", 0),  # magic
    (4, b"\x02", 4),  # version
    (6, b"\x09", 6),  # message type
])
def test_corrupt_header(pos, value, offset):
    frame = bytearray(encode_message(Ack(1)))
    frame[pos:pos + 1] = value
    with pytest.raises(ProtocolError) as exc:
        decode_message(bytes(frame))
    assert exc.value.offset == offset


def test_bad_precision_flag():
    frame = bytearray(encode_message(Params(version=1,
                                            payload=np.ones(2))))
    frame[FRAME_HEAD.size + 8] = 9
    with pytest.raises(ProtocolError) as exc:
        decode_message(bytes(frame))
    assert exc.value.offset == FRAME_HEAD.size + 8


def test_ragged_payload():
    frame = encode_message(Params(version=1,
                                  payload=np.ones(2, dtype=np.float32)))
    # cut one payload byte and fix the body length
    body = frame[FRAME_HEAD.size:-1]
    head = FRAME_HEAD.pack(b"DPSG", 1, 2, len(body))
    with pytest.raises(ProtocolError):
        decode_message(head + body)


def test_unencodable():
    with pytest.raises(ProtocolError):
        encode_message("hello")
