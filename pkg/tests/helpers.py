"""Shared fixtures: skeleton message builders and the scripted journey that
walks the whole interaction loop (attract, grab, snake, death, scroll)."""

from pixelboard.model import Direction, HandState, SkeletonFrame
from pixelboard.protocol import Message, SkeletonMessage

TICK_MS = 33

# elbow/wrist poses that steer while keeping the hand raised
_STEER_POSES = {
    Direction.RIGHT: ((0.3, 1.2), (0.8, 1.65)),
    Direction.LEFT: ((0.3, 1.2), (-0.2, 1.65)),
    Direction.UP: ((0.3, 1.2), (0.3, 1.8)),
    Direction.DOWN: ((0.3, 2.3), (0.3, 1.7)),
}


def skeleton(
    t_ms: int,
    z: float,
    x: float = 0.0,
    wrist_r_y: float = 0.8,
    hand_r: HandState = HandState.UNKNOWN,
    steer: Direction | None = None,
) -> SkeletonFrame:
    joints = {
        "head": (x, 1.6, z),
        "spine": (x, 1.0, z),
        "shoulder_l": (x - 0.2, 1.4, z),
        "shoulder_r": (x + 0.2, 1.4, z),
        "elbow_l": (x - 0.3, 1.1, z),
        "elbow_r": (x + 0.3, 1.1, z),
        "wrist_l": (x - 0.3, 0.8, z),
        "wrist_r": (x + 0.3, wrist_r_y, z),
    }
    if steer is not None:
        (ex, ey), (wx, wy) = _STEER_POSES[steer]
        joints["elbow_r"] = (x + ex, ey, z)
        joints["wrist_r"] = (x + wx, wy, z)
    return SkeletonFrame(t_ms=t_ms, joints=joints, hand_l=HandState.UNKNOWN, hand_r=hand_r)


def skel_msg(tick: int, **kwargs) -> tuple[int, Message]:
    return tick, SkeletonMessage(skeleton(t_ms=tick * TICK_MS, **kwargs))


def journey_records() -> list[tuple[int, Message]]:
    """1,000 ticks of scripted input: wander in the far zone, grab to cycle
    the attract content, walk in, play the snake to a wall death, watch the
    scroll, wander out, grab again, come back for a second quick game."""
    records: list[tuple[int, Message]] = []

    def every3(t0, t1, **kwargs):
        for tick in range(t0, t1 + 1, 3):
            records.append(skel_msg(tick, **kwargs))

    # wander far away; the creature follows
    for tick in range(0, 91, 3):
        records.append(skel_msg(tick, z=4.0, x=-1.0 + (tick / 90) * 2.0))
    # raise the right hand, then open -> closed: first grab
    every3(93, 99, z=4.0, wrist_r_y=1.7)
    every3(102, 108, z=4.0, wrist_r_y=1.7, hand_r=HandState.OPEN)
    every3(111, 117, z=4.0, wrist_r_y=1.7, hand_r=HandState.CLOSED)
    # lower the hand, then walk in to the game zone
    every3(120, 126, z=4.0)
    for tick in range(129, 151, 3):
        records.append(skel_msg(tick, z=4.0 - (tick - 129) / 21 * 3.0))
    # raise to start playing
    every3(153, 159, z=1.0, wrist_r_y=1.7)
    # steer right for a few moves, then up into the top wall
    every3(162, 240, z=1.0, steer=Direction.RIGHT)
    every3(243, 370, z=1.0, steer=Direction.UP)
    # death and score scroll; stay visible
    every3(373, 399, z=1.0)
    # walk back out and wander; second grab cycles the content again
    for tick in range(402, 431, 3):
        records.append(skel_msg(tick, z=1.0 + (tick - 402) / 28 * 3.0))
    for tick in range(433, 601, 3):
        records.append(skel_msg(tick, z=4.0, x=-1.2 + ((tick - 433) % 120) / 120 * 2.4))
    every3(603, 609, z=4.0, wrist_r_y=1.7)
    every3(612, 618, z=4.0, wrist_r_y=1.7, hand_r=HandState.OPEN)
    every3(621, 627, z=4.0, wrist_r_y=1.7, hand_r=HandState.CLOSED)
    every3(630, 636, z=4.0)
    every3(639, 680, z=4.0, x=0.8)
    # a third grab while dwelling far away
    every3(683, 689, z=4.0, wrist_r_y=1.7)
    every3(692, 698, z=4.0, wrist_r_y=1.7, hand_r=HandState.OPEN)
    every3(701, 707, z=4.0, wrist_r_y=1.7, hand_r=HandState.CLOSED)
    every3(710, 716, z=4.0)
    every3(719, 800, z=4.0, x=0.8)
    # second game: walk in, raise, drive straight up into the wall
    for tick in range(803, 831, 3):
        records.append(skel_msg(tick, z=4.0 - (tick - 803) / 27 * 3.0))
    every3(833, 839, z=1.0, wrist_r_y=1.7)
    every3(842, 950, z=1.0, steer=Direction.UP)
    every3(953, 997, z=1.0)

    records.sort(key=lambda r: r[0])
    return records


JOURNEY_TICKS = 1000
