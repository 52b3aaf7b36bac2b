from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pixelboard.gestures import DirectionUpdate, Grab, Raised, Side, Zone, ZoneChanged
from pixelboard.model import Direction, Frame, PixelColor
from pixelboard.protocol import (
    PACKET_LEN,
    AbsentMessage,
    FrameMessage,
    GestureMessage,
    MessageError,
    ModeMessage,
    PacketError,
    SkeletonMessage,
    decode_frame,
    emit_log_record,
    emit_message,
    encode_frame,
    parse_log_record,
    parse_message,
)

FIXTURES = Path(__file__).parent / "data" / "session_message_fixtures.jsonl"

frames = st.lists(
    st.sampled_from(list(PixelColor)), min_size=150, max_size=150
).map(lambda cells: Frame(tuple(cells)))


# -- LED packet codec --------------------------------------------------------


def test_all_off_packet():
    packet = encode_frame(Frame.blank())
    assert len(packet) == 41
    assert packet[0] == 0xA5 and packet[1] == 0x01
    assert packet[2:40] == bytes(38)
    assert packet[40] == 0x00


def test_single_red_origin_packet():
    # first pixel occupies bits 7-6 of payload byte 0; RED is 01
    packet = encode_frame(Frame.blank().set(0, 0, PixelColor.RED))
    assert packet[2] == 0x40
    assert packet[3:40] == bytes(37)
    assert packet[40] == 0x40


def _reference_decode(payload: bytes) -> list[PixelColor]:
    """Independent unpacking oracle: go through a literal bit string."""
    bits = "".join(format(b, "08b") for b in payload)
    return [PixelColor(int(bits[2 * i : 2 * i + 2], 2)) for i in range(150)]


def test_all_purple_packet():
    frame = Frame.blank(PixelColor.PURPLE)
    packet = encode_frame(frame)
    assert packet[2:39] == b"\xff" * 37
    assert packet[39] == 0xF0
    assert packet[40] == 0x0F
    assert _reference_decode(packet[2:40]) == list(frame.cells)


@given(frames)
def test_round_trip_identity(frame):
    packet = encode_frame(frame)
    assert len(packet) == PACKET_LEN
    assert decode_frame(packet) == frame
    assert _reference_decode(packet[2:40]) == list(frame.cells)


def test_wrong_length_rejected():
    with pytest.raises(PacketError) as err:
        decode_frame(bytes(40))
    assert err.value.reason == "length"


def test_bad_magic_and_version_rejected():
    packet = bytearray(encode_frame(Frame.blank()))
    packet[0] = 0xA6
    with pytest.raises(PacketError) as err:
        decode_frame(bytes(packet))
    assert err.value.reason == "magic"
    packet[0] = 0xA5
    packet[1] = 0x02
    with pytest.raises(PacketError) as err:
        decode_frame(bytes(packet))
    assert err.value.reason == "version"


def test_payload_bit_flip_detected():
    packet = encode_frame(Frame.blank().set(3, 4, PixelColor.BLUE))
    for byte_i in (2, 17, 39):
        for bit in range(8):
            corrupted = bytearray(packet)
            corrupted[byte_i] ^= 1 << bit
            with pytest.raises(PacketError) as err:
                decode_frame(bytes(corrupted))
            assert err.value.reason == "checksum"


def test_nonzero_padding_rejected():
    # corrupt padding and fix the checksum so only the padding check can fire
    packet = bytearray(encode_frame(Frame.blank()))
    packet[39] |= 0x03
    packet[40] ^= 0x03
    with pytest.raises(PacketError) as err:
        decode_frame(bytes(packet))
    assert err.value.reason == "padding"


# -- session message grammar --------------------------------------------------


def test_fixture_lines_are_canonical():
    lines = FIXTURES.read_text().splitlines()
    assert len(lines) >= 8
    for line in lines:
        msg = parse_message(line)
        assert emit_message(msg) == line


def test_minimal_absent_record():
    msg = parse_message('{"type":"absent","t_ms":100}')
    assert msg == AbsentMessage(t_ms=100)


def test_skeleton_record_maps_all_joints():
    line = (
        '{"type":"skeleton","t_ms":40,"joints":{'
        '"head":[0.1,1.6,2.0],"spine":[0.1,1.0,2.0],'
        '"shoulder_l":[-0.2,1.4,2.0],"shoulder_r":[0.4,1.4,2.0],'
        '"elbow_l":[-0.3,1.1,2.0],"elbow_r":[0.5,1.1,2.0],'
        '"wrist_l":[-0.3,0.8,2.0],"wrist_r":[0.5,1.7,2.0]},'
        '"hand_l":"open","hand_r":"closed"}'
    )
    msg = parse_message(line)
    assert isinstance(msg, SkeletonMessage)
    assert msg.skeleton.t_ms == 40
    assert msg.skeleton.joint("wrist_r") == (0.5, 1.7, 2.0)
    assert msg.skeleton.hand_l.value == "open"


def test_gesture_records_round_trip():
    for event in (
        Grab(),
        Raised(Side.LEFT),
        ZoneChanged(Zone.AREA_A),
        DirectionUpdate(Direction.UP),
    ):
        line = emit_message(GestureMessage(event))
        assert parse_message(line) == GestureMessage(event)


@given(frames, st.integers(0, 10_000))
def test_frame_record_round_trip(frame, tick):
    msg = FrameMessage(tick=tick, frame=frame)
    assert parse_message(emit_message(msg)) == msg


def test_mode_record_round_trip():
    msg = ModeMessage(tick=5, mode="snake_play")
    assert parse_message(emit_message(msg)) == msg


def test_unknown_type_rejected():
    with pytest.raises(MessageError):
        parse_message('{"type":"telemetry","x":1}')


def test_unknown_fields_ignored():
    msg = parse_message('{"type":"absent","t_ms":7,"debug":"yes","extra":[1,2]}')
    assert msg == AbsentMessage(t_ms=7)


def test_parse_error_carries_line():
    bad = '{"type":"skeleton","t_ms":1}'
    with pytest.raises(MessageError) as err:
        parse_message(bad)
    assert err.value.line == bad


@given(st.text(max_size=200))
def test_parser_never_crashes_on_text(line):
    try:
        parse_message(line)
    except MessageError:
        pass


@given(st.binary(max_size=200))
def test_parser_never_crashes_on_bytes(blob):
    try:
        parse_message(blob.decode("utf-8", errors="replace"))
    except MessageError:
        pass


def test_non_finite_skeleton_rejected():
    line = (
        '{"type":"skeleton","t_ms":1,"joints":{'
        '"head":[0,NaN,2],"spine":[0,1,2],"shoulder_l":[0,1,2],"shoulder_r":[0,1,2],'
        '"elbow_l":[0,1,2],"elbow_r":[0,1,2],"wrist_l":[0,1,2],"wrist_r":[0,1,2]}}'
    )
    with pytest.raises(MessageError):
        parse_message(line)


# -- log record grammar --------------------------------------------------------


def test_log_record_round_trip():
    msg = AbsentMessage(t_ms=123)
    line = emit_log_record(9, msg)
    tick, parsed = parse_log_record(line)
    assert tick == 9
    assert parsed == msg


def test_log_record_requires_tick():
    with pytest.raises(MessageError):
        parse_log_record('{"type":"absent","t_ms":1}')
