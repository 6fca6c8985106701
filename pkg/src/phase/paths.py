"""
Polyline integration and tracking paths in the complex plane
"""
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from src.utils.errors import DomainError


@dataclass(frozen=True)
class PathSpec:
    """Polyline through the waypoints, parametrized by arclength s"""

    waypoints: Tuple[complex, ...]
    samples_hint: int = 64

    def __post_init__(self):
        points = tuple(complex(w) for w in self.waypoints)
        if len(points) < 2:
            raise DomainError("a path needs at least two waypoints")
        for a, b in zip(points, points[1:]):
            if a == b:
                raise DomainError(f"consecutive waypoints coincide at {a}")
        if self.samples_hint < 2:
            raise DomainError(f"samples_hint must be >= 2, got {self.samples_hint}")
        object.__setattr__(self, 'waypoints', points)

    @classmethod
    def segment(cls, start: complex, end: complex, samples_hint: int = 64) -> "PathSpec":
        return cls((start, end), samples_hint)

    @classmethod
    def circle(cls, center: complex, radius: float, vertices: int = 64,
               samples_hint: int = 256) -> "PathSpec":
        """Closed counter-clockwise polygon inscribed in the circle, starting at center + radius"""
        angles = 2.0 * np.pi * np.arange(vertices) / vertices
        points = [complex(center) + radius * complex(np.exp(1j * a)) for a in angles]
        return cls(tuple(points) + (points[0],), samples_hint)

    @classmethod
    def rectangle(cls, corner: complex, width: float, height: float,
                  samples_hint: int = 128) -> "PathSpec":
        """Closed counter-clockwise rectangle starting at its lower-left corner"""
        c = complex(corner)
        return cls((c, c + width, c + width + 1j * height, c + 1j * height, c), samples_hint)

    @property
    def segment_lengths(self) -> np.ndarray:
        return np.abs(np.diff(np.asarray(self.waypoints)))

    @property
    def knots(self) -> np.ndarray:
        """Arclength parameter of every waypoint"""
        return np.concatenate(([0.0], np.cumsum(self.segment_lengths)))

    @property
    def length(self) -> float:
        return float(np.sum(self.segment_lengths))

    @property
    def start(self) -> complex:
        return self.waypoints[0]

    @property
    def end(self) -> complex:
        return self.waypoints[-1]

    @property
    def is_closed(self) -> bool:
        return self.waypoints[0] == self.waypoints[-1]

    def point_at(self, s):
        """Position at arclength s (scalar or array), clipped to [0, length]"""
        knots = self.knots
        points = np.asarray(self.waypoints)
        s_arr = np.clip(np.asarray(s, dtype=float), 0.0, knots[-1])
        index = np.clip(np.searchsorted(knots, s_arr, side='right') - 1, 0, len(points) - 2)
        local = (s_arr - knots[index]) / (knots[index + 1] - knots[index])
        values = points[index] + local * (points[index + 1] - points[index])
        if np.ndim(s) == 0:
            return complex(values)
        return values

    def initial_parameters(self) -> np.ndarray:
        """Arclength samples: every knot plus samples_hint points spread by segment length"""
        knots = self.knots
        pieces = []
        for a, b in zip(knots, knots[1:]):
            count = max(2, int(math.ceil(self.samples_hint * (b - a) / knots[-1])) + 1)
            pieces.append(np.linspace(a, b, count)[:-1])
        pieces.append(knots[-1:])
        return np.concatenate(pieces)

    def reversed(self) -> "PathSpec":
        return PathSpec(tuple(reversed(self.waypoints)), self.samples_hint)

    def concatenated(self, other: "PathSpec") -> "PathSpec":
        if self.end != other.start:
            raise DomainError(f"paths do not join: {self.end} != {other.start}")
        return PathSpec(self.waypoints + other.waypoints[1:], self.samples_hint + other.samples_hint)

    def trimmed_start(self, delta: float) -> "PathSpec":
        """The same path with its first delta of arclength removed"""
        knots = self.knots
        if not 0.0 < delta < knots[1]:
            raise DomainError(f"trim length {delta:g} must lie inside the first segment")
        return PathSpec((self.point_at(delta),) + self.waypoints[1:], self.samples_hint)

    def trimmed_end(self, delta: float) -> "PathSpec":
        """The same path with its last delta of arclength removed"""
        knots = self.knots
        if not 0.0 < delta < knots[-1] - knots[-2]:
            raise DomainError(f"trim length {delta:g} must lie inside the last segment")
        return PathSpec(self.waypoints[:-1] + (self.point_at(knots[-1] - delta),), self.samples_hint)


def segment_point_distance(a: complex, b: complex, points: Iterable[complex]) -> float:
    """Smallest distance from the segment [a, b] to any of the points"""
    pts = np.asarray(list(points), dtype=complex)
    if pts.size == 0:
        return math.inf
    d = b - a
    t = np.clip(((pts - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    return float(np.min(np.abs(pts - (a + t * d))))
