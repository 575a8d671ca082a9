"""Estimating the number of ends of a truncated graph.

Remove the ball of radius t around a base vertex and count the components
that still reach the horizon, for t = 0..r. The counts are then read as a
verdict; anything that is not clearly stable or clearly growing is Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .lobes import AnyGraph


class Ends(str, enum.Enum):
    ZERO = "Zero"
    ONE = "One"
    TWO = "Two"
    MANY = "Many"
    UNKNOWN = "Unknown"


@dataclass
class EndsVerdict:
    verdict: Ends
    base: Optional[int] = None
    probe_radii: list = field(default_factory=list)
    counts: list = field(default_factory=list)
    horizon_size: int = 0

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "base": self.base,
            "probe_radii": list(self.probe_radii),
            "counts": list(self.counts),
            "horizon_size": self.horizon_size,
        }


def verdict_from_counts(counts: list[int]) -> Ends:
    if all(c == 0 for c in counts):
        return Ends.ZERO
    if len(counts) < 2:
        return Ends.UNKNOWN
    prev, last = counts[-2], counts[-1]
    if prev == last == 1:
        return Ends.ONE
    if prev == last == 2:
        return Ends.TWO
    if last >= 3 and prev < last:
        return Ends.MANY
    return Ends.UNKNOWN


def ends_estimate(
    g: AnyGraph,
    probe_radius: Optional[int] = None,
    horizon: Optional[int] = None,
    base: Optional[int] = None,
) -> EndsVerdict:
    """Probe radii 0..probe_radius; the horizon is the set of vertices at distance >= ``horizon``
    from the base, or the graph's boundary when ``horizon`` is None.

    The default base is the vertex farthest from the horizon (smallest id on
    ties) and the default probe radius stops one short of the horizon.
    """
    s = g.symmetrized()
    if s.n == 0:
        return EndsVerdict(Ends.ZERO)
    if base is None:
        if horizon is None and s.boundary:
            to_edge = s.distances_from(sorted(s.boundary))
            base = max(range(s.n), key=lambda v: (to_edge[v], -v))
        else:
            base = 0
    dist = s.distances_from(base)
    if horizon is not None:
        far = {v for v in range(s.n) if dist[v] >= horizon}
    else:
        far = {v for v in s.boundary if dist[v] >= 0}
    if not far:
        return EndsVerdict(Ends.ZERO, base)
    reach = min(dist[v] for v in far)
    if probe_radius is None:
        probe_radius = reach - 1
    elif probe_radius >= reach:
        raise ValueError("the horizon must lie beyond the probe radius")
    if probe_radius < 0:
        return EndsVerdict(Ends.UNKNOWN, base, [], [], len(far))
    radii = list(range(probe_radius + 1))
    counts = []
    for t in radii:
        removed = {v for v in range(s.n) if 0 <= dist[v] <= t}
        counts.append(sum(1 for comp in s.components(removed) if far.intersection(comp)))
    return EndsVerdict(verdict_from_counts(counts), base, radii, counts, len(far))
