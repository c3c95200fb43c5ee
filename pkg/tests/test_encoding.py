import pytest
from hypothesis import given, strategies as st

from mudsim.encoding import Codec, Field, Message, uint_width
from mudsim.errors import WidthOverflow

SPAN = Codec((Field("lo", "int", 32), Field("hi", "int", 32)))


def test_span_state_is_64_bits():
    msg = SPAN.encode((-4, 10))
    assert msg.bit_len == 64
    assert len(msg.payload) == 8
    assert SPAN.decode(msg) == (-4, 10)


def test_equal_states_encode_identically():
    assert SPAN.encode((1, 2)) == SPAN.encode((1, 2))
    assert SPAN.encode((1, 2)) != SPAN.encode((2, 1))


def test_overflow_is_reported():
    with pytest.raises(WidthOverflow):
        SPAN.bit_len((0, 1 << 31))
    with pytest.raises(WidthOverflow):
        Codec((Field("c", "uint", 3),), flatten=lambda q: (q,)).encode(8)


def test_odd_width_packs_into_ceil_bytes():
    codec = Codec((Field("a", "uint", 3), Field("b", "bits", 9)))
    msg = codec.encode((5, 0b100000001))
    assert msg == Message(bytes([0b00001101, 0b00001000]), 12)


@pytest.mark.parametrize("value,width", [(0, 1), (1, 1), (2, 2), (3, 2), (4, 3), (255, 8), (256, 9)])
def test_uint_width(value, width):
    assert uint_width(value) == width


@given(
    st.lists(
        st.tuples(st.sampled_from(["uint", "int", "bits"]), st.integers(1, 70)),
        min_size=1,
        max_size=6,
    ),
    st.data(),
)
def test_roundtrip(schema, data):
    fields = tuple(Field(f"f{i}", kind, w) for i, (kind, w) in enumerate(schema))
    codec = Codec(fields)
    values = tuple(data.draw(st.integers(*_closed(f.bounds()))) for f in fields)
    msg = codec.encode(values)
    assert msg.bit_len == sum(w for _, w in schema) == codec.bit_len(values)
    assert len(msg.payload) == (msg.bit_len + 7) // 8
    assert codec.decode(msg) == values


def _closed(bounds):
    lo, hi = bounds
    return lo, hi - 1
