"""
Reeds-Shepp optimal curves for a car that drives forward and backward.

Candidate words are evaluated in a normalized frame (start at the origin,
heading 0, turning radius 1) for the five families CSC, CCC, CCCC, CCSC and
CCSCC, each with its time-flip, reflection and backwards variants (44 words).
The shortest admissible word wins; ties go to the lowest family index.
"""

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from src.geometry.primitives import Pose

PI = math.pi
HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi
ZERO = 10 * 2.220446049250313e-16

# Segments shorter than this (in meters) are dropped from built paths.
MIN_SEGMENT_LENGTH = 1e-10

# Below this normalized length the straight part of a CSC word vanishes and
# its heading is undefined.
DEGENERATE_STRAIGHT = 1e-10

Solution = Optional[Tuple[float, float, float]]
Word = Tuple[str, Tuple[float, ...]]


class SegmentKind(str, Enum):
    """Kind of a Reeds-Shepp segment."""

    LEFT = "L"
    STRAIGHT = "S"
    RIGHT = "R"


class Direction(IntEnum):
    """Drive direction along a segment or arriving at a node."""

    BACKWARD = -1
    NONE = 0
    FORWARD = 1


@dataclass(frozen=True, slots=True)
class RSSegment:
    """
    One segment of a Reeds-Shepp word.

    Attributes:
        kind: Left turn, straight or right turn.
        direction: Forward or backward.
        length: Arc length in meters, non-negative.
    """

    kind: SegmentKind
    direction: Direction
    length: float

    @property
    def signed_length(self) -> float:
        """Arc length signed by the drive direction."""
        return self.length * int(self.direction)


@dataclass(frozen=True)
class RSPath:
    """
    Reeds-Shepp path between two poses.

    Attributes:
        start: Start pose.
        goal: Goal pose.
        turning_radius: Turning radius R used for the turns.
        segments: Ordered segments, at most five.
        family: Index of the word family in the enumeration order.
    """

    start: Pose
    goal: Pose
    turning_radius: float
    segments: Tuple[RSSegment, ...]
    family: int = -1

    @property
    def total_length(self) -> float:
        """Sum of the segment lengths in meters."""
        return sum(seg.length for seg in self.segments)

    @property
    def word(self) -> str:
        """Label such as 'L+S+R-' (kind followed by direction sign)."""
        return "".join(
            f"{seg.kind.value}{'+' if seg.direction is Direction.FORWARD else '-'}"
            for seg in self.segments
        )

    @property
    def has_cusp(self) -> bool:
        """True if the drive direction changes along the path."""
        return len({seg.direction for seg in self.segments}) > 1

    def end_pose(self) -> Pose:
        """
        Integrate all segments from the start pose.

        Returns:
            The pose reached at the end of the last segment.
        """
        x, y, theta = self.start.x, self.start.y, self.start.theta
        for seg in self.segments:
            x, y, theta = _advance(x, y, theta, seg.kind, seg.signed_length,
                                   self.turning_radius)
        return Pose(x, y, theta)


# ---------------------------------------------------------------------------
# Normalized-frame helpers
# ---------------------------------------------------------------------------

def _mod2pi(x: float) -> float:
    """Wrap an angle to (-π, π]."""
    v = math.fmod(x, TWO_PI)
    if v < -PI:
        v += TWO_PI
    elif v > PI:
        v -= TWO_PI
    return v


def _polar(x: float, y: float) -> Tuple[float, float]:
    return math.sqrt(x * x + y * y), math.atan2(y, x)


def _tau_omega(
    u: float, v: float, xi: float, eta: float, phi: float
) -> Tuple[float, float]:
    delta = _mod2pi(u - v)
    a = math.sin(u) - math.sin(delta)
    b = math.cos(u) - math.cos(delta) - 1.0
    t1 = math.atan2(eta * a - xi * b, xi * a + eta * b)
    t2 = 2.0 * (math.cos(delta) - math.cos(v) - math.cos(u)) + 3.0
    tau = _mod2pi(t1 + PI) if t2 < 0 else _mod2pi(t1)
    omega = _mod2pi(tau - u + v - phi)
    return tau, omega


# ---------------------------------------------------------------------------
# Base formulas (normalized frame); each returns (t, u, v) or None
# ---------------------------------------------------------------------------

def _lp_sp_lp(x: float, y: float, phi: float) -> Solution:
    u, t = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if u < DEGENERATE_STRAIGHT:
        # a single left arc; put the whole turn in the last segment
        t = 0.0
    if t >= -ZERO:
        v = _mod2pi(phi - t)
        if v >= -ZERO:
            return t, u, v
    return None


def _lp_sp_rp(x: float, y: float, phi: float) -> Solution:
    u1, t1 = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    u1 = u1 * u1
    if u1 >= 4.0:
        u = math.sqrt(u1 - 4.0)
        theta = math.atan2(2.0, u)
        t = _mod2pi(t1 + theta)
        v = _mod2pi(t - phi)
        if t >= -ZERO and v >= -ZERO:
            return t, u, v
    return None


def _lp_rm_l(x: float, y: float, phi: float) -> Solution:
    xi = x - math.sin(phi)
    eta = y - 1.0 + math.cos(phi)
    u1, theta = _polar(xi, eta)
    if u1 <= 4.0:
        u = -2.0 * math.asin(0.25 * u1)
        t = _mod2pi(theta + 0.5 * u + PI)
        v = _mod2pi(phi - t + u)
        if t >= -ZERO and u <= ZERO:
            return t, u, v
    return None


def _lp_rup_lum_rm(x: float, y: float, phi: float) -> Solution:
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = 0.25 * (2.0 + math.sqrt(xi * xi + eta * eta))
    if rho <= 1.0:
        u = math.acos(rho)
        t, v = _tau_omega(u, -u, xi, eta, phi)
        if t >= -ZERO and v <= ZERO:
            return t, u, v
    return None


def _lp_rum_lum_rp(x: float, y: float, phi: float) -> Solution:
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = (20.0 - xi * xi - eta * eta) / 16.0
    if 0.0 <= rho <= 1.0:
        u = -math.acos(rho)
        if u >= -HALF_PI:
            t, v = _tau_omega(u, u, xi, eta, phi)
            if t >= -ZERO and v >= -ZERO:
                return t, u, v
    return None


def _lp_rm_sm_lm(x: float, y: float, phi: float) -> Solution:
    xi = x - math.sin(phi)
    eta = y - 1.0 + math.cos(phi)
    rho, theta = _polar(xi, eta)
    if rho >= 2.0:
        r = math.sqrt(rho * rho - 4.0)
        u = 2.0 - r
        t = _mod2pi(theta + math.atan2(r, -2.0))
        v = _mod2pi(phi - HALF_PI - t)
        if t >= -ZERO and u <= ZERO and v <= ZERO:
            return t, u, v
    return None


def _lp_rm_sm_rm(x: float, y: float, phi: float) -> Solution:
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho, theta = _polar(-eta, xi)
    if rho >= 2.0:
        t = theta
        u = 2.0 - rho
        v = _mod2pi(t + HALF_PI - phi)
        if t >= -ZERO and u <= ZERO and v <= ZERO:
            return t, u, v
    return None


def _lp_rm_s_lm_rp(x: float, y: float, phi: float) -> Solution:
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho, _ = _polar(xi, eta)
    if rho >= 2.0:
        u = 4.0 - math.sqrt(rho * rho - 4.0)
        if u <= ZERO:
            t = _mod2pi(math.atan2((4.0 - u) * xi - 2.0 * eta,
                                   -2.0 * xi + (u - 4.0) * eta))
            v = _mod2pi(t - phi)
            if t >= -ZERO and v >= -ZERO:
                return t, u, v
    return None


# ---------------------------------------------------------------------------
# Word enumeration
# ---------------------------------------------------------------------------

def _reflect(word: str) -> str:
    return word.translate(str.maketrans("LR", "RL"))


def _variants(
    formula: Callable[[float, float, float], Solution],
    x: float,
    y: float,
    phi: float,
    word: str,
    build: Callable[[float, float, float], Tuple[float, ...]],
) -> Iterator[Optional[Word]]:
    """Yield the plain, time-flipped, reflected and flipped+reflected words."""
    mirrored = _reflect(word)
    for sx, sy, sphi, flip, label in (
        (1.0, 1.0, 1.0, False, word),
        (-1.0, 1.0, -1.0, True, word),
        (1.0, -1.0, -1.0, False, mirrored),
        (-1.0, -1.0, 1.0, True, mirrored),
    ):
        solution = formula(sx * x, sy * y, sphi * phi)
        if solution is None:
            yield None
            continue
        lengths = build(*solution)
        if flip:
            lengths = tuple(-length for length in lengths)
        yield label, lengths


def _plain(t: float, u: float, v: float) -> Tuple[float, ...]:
    return (t, u, v)


def _reversed(t: float, u: float, v: float) -> Tuple[float, ...]:
    return (v, u, t)


def _enumerate_words(x: float, y: float, phi: float) -> Iterator[Optional[Word]]:
    """Yield every word family in index order; None marks an inadmissible one."""
    xb = x * math.cos(phi) + y * math.sin(phi)
    yb = x * math.sin(phi) - y * math.cos(phi)

    # CSC
    yield from _variants(_lp_sp_lp, x, y, phi, "LSL", _plain)
    yield from _variants(_lp_sp_rp, x, y, phi, "LSR", _plain)
    # CCC
    yield from _variants(_lp_rm_l, x, y, phi, "LRL", _plain)
    yield from _variants(_lp_rm_l, xb, yb, phi, "LRL", _reversed)
    # CCCC
    yield from _variants(_lp_rup_lum_rm, x, y, phi, "LRLR",
                         lambda t, u, v: (t, u, -u, v))
    yield from _variants(_lp_rum_lum_rp, x, y, phi, "LRLR",
                         lambda t, u, v: (t, u, u, v))
    # CCSC
    yield from _variants(_lp_rm_sm_lm, x, y, phi, "LRSL",
                         lambda t, u, v: (t, -HALF_PI, u, v))
    yield from _variants(_lp_rm_sm_rm, x, y, phi, "LRSR",
                         lambda t, u, v: (t, -HALF_PI, u, v))
    yield from _variants(_lp_rm_sm_lm, xb, yb, phi, "LSRL",
                         lambda t, u, v: (v, u, -HALF_PI, t))
    yield from _variants(_lp_rm_sm_rm, xb, yb, phi, "RSRL",
                         lambda t, u, v: (v, u, -HALF_PI, t))
    # CCSCC
    yield from _variants(_lp_rm_s_lm_rp, x, y, phi, "LRSLR",
                         lambda t, u, v: (t, -HALF_PI, u, -HALF_PI, v))


FAMILY_COUNT = 44


def _normalize(a: Pose, b: Pose, turning_radius: float) -> Tuple[float, float, float]:
    dx = b.x - a.x
    dy = b.y - a.y
    c = math.cos(a.theta)
    s = math.sin(a.theta)
    return (
        (c * dx + s * dy) / turning_radius,
        (-s * dx + c * dy) / turning_radius,
        b.theta - a.theta,
    )


def _shortest_word(x: float, y: float, phi: float) -> Tuple[int, str, Tuple[float, ...], float]:
    best_index = -1
    best_word = ""
    best_lengths: Tuple[float, ...] = ()
    best_total = math.inf
    for index, candidate in enumerate(_enumerate_words(x, y, phi)):
        if candidate is None:
            continue
        total = sum(abs(length) for length in candidate[1])
        if total < best_total:
            best_index, best_word, best_lengths = index, candidate[0], candidate[1]
            best_total = total
    return best_index, best_word, best_lengths, best_total


def _check_radius(turning_radius: float) -> None:
    if not turning_radius > 0:
        raise ValueError(f"Turning radius must be positive, got {turning_radius}")


def _build_path(
    a: Pose, b: Pose, turning_radius: float, family: int,
    word: str, lengths: Sequence[float]
) -> RSPath:
    segments = []
    for kind, length in zip(word, lengths):
        meters = abs(length) * turning_radius
        if meters <= MIN_SEGMENT_LENGTH:
            continue
        segments.append(RSSegment(
            kind=SegmentKind(kind),
            direction=Direction.FORWARD if length > 0 else Direction.BACKWARD,
            length=meters,
        ))
    return RSPath(start=a, goal=b, turning_radius=turning_radius,
                  segments=tuple(segments), family=family)


def rs_path(a: Pose, b: Pose, turning_radius: float) -> RSPath:
    """
    Compute the shortest Reeds-Shepp path from one pose to another.

    Args:
        a: Start pose.
        b: Goal pose.
        turning_radius: Minimum turning radius R in meters.

    Returns:
        The minimum-length path over all word families.

    Raises:
        ValueError: If turning_radius is not positive.
    """
    _check_radius(turning_radius)
    index, word, lengths, _ = _shortest_word(*_normalize(a, b, turning_radius))
    return _build_path(a, b, turning_radius, index, word, lengths)


def rs_distance(a: Pose, b: Pose, turning_radius: float) -> float:
    """
    Length of the shortest Reeds-Shepp path.

    Args:
        a: Start pose.
        b: Goal pose.
        turning_radius: Minimum turning radius R in meters.

    Returns:
        Path length in meters.
    """
    _check_radius(turning_radius)
    return _shortest_word(*_normalize(a, b, turning_radius))[3] * turning_radius


def rs_candidates(a: Pose, b: Pose, turning_radius: float) -> List[RSPath]:
    """
    Every admissible word connecting two poses, in family order.

    Args:
        a: Start pose.
        b: Goal pose.
        turning_radius: Minimum turning radius R in meters.

    Returns:
        One path per admissible word family.
    """
    _check_radius(turning_radius)
    paths = []
    for index, candidate in enumerate(_enumerate_words(*_normalize(a, b, turning_radius))):
        if candidate is not None:
            paths.append(_build_path(a, b, turning_radius, index, *candidate))
    return paths


# ---------------------------------------------------------------------------
# Integration and sampling
# ---------------------------------------------------------------------------

def _advance(
    x: float, y: float, theta: float, kind: SegmentKind,
    distance: float, turning_radius: float
) -> Tuple[float, float, float]:
    """Move along one segment by a signed arc length."""
    if kind is SegmentKind.STRAIGHT:
        return x + distance * math.cos(theta), y + distance * math.sin(theta), theta
    angle = distance / turning_radius
    if kind is SegmentKind.LEFT:
        return (
            x + turning_radius * (math.sin(theta + angle) - math.sin(theta)),
            y - turning_radius * (math.cos(theta + angle) - math.cos(theta)),
            theta + angle,
        )
    return (
        x - turning_radius * (math.sin(theta - angle) - math.sin(theta)),
        y + turning_radius * (math.cos(theta - angle) - math.cos(theta)),
        theta - angle,
    )


def rs_sample(path: RSPath, step: float) -> List[Tuple[Pose, Direction]]:
    """
    Sample poses along a path at arc-length intervals of at most `step`.

    Segment endpoints are always included, the first pose is the path start
    and the last pose is exactly the path goal. Each pose carries the drive
    direction of its segment.

    Args:
        path: Path to sample.
        step: Maximum arc length between consecutive samples, in meters.

    Returns:
        List of (pose, direction) pairs.

    Raises:
        ValueError: If step is not positive.
    """
    if not step > 0:
        raise ValueError(f"Sampling step must be positive, got {step}")

    if not path.segments:
        return [(path.start, Direction.NONE)]

    samples = [(path.start, path.segments[0].direction)]
    x, y, theta = path.start.x, path.start.y, path.start.theta
    for seg in path.segments:
        count = _sample_count(seg.length, step)
        for k in range(1, count + 1):
            sx, sy, stheta = _advance(x, y, theta, seg.kind,
                                      seg.signed_length * k / count,
                                      path.turning_radius)
            samples.append((Pose(sx, sy, stheta), seg.direction))
        x, y, theta = sx, sy, stheta

    samples[-1] = (path.goal, path.segments[-1].direction)
    return samples


def _sample_count(length: float, step: float) -> int:
    return max(1, math.ceil(length / step - 1e-9))


def rs_sample_lengths(path: RSPath, step: float) -> List[float]:
    """
    Arc length from the path start to every pose rs_sample returns.

    Args:
        path: Path to sample.
        step: Maximum arc length between consecutive samples, in meters.

    Returns:
        Cumulative lengths, one per sample; the last equals total_length.

    Raises:
        ValueError: If step is not positive.
    """
    if not step > 0:
        raise ValueError(f"Sampling step must be positive, got {step}")

    lengths = [0.0]
    done = 0.0
    for seg in path.segments:
        count = _sample_count(seg.length, step)
        lengths.extend(done + seg.length * k / count for k in range(1, count + 1))
        done += seg.length
    return lengths
