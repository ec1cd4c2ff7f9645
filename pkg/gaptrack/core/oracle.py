"""
Minimum Track Oracle - exact and greedy solvers for the offset covering problem

A pillar at position p covers the offsets {p - c : c in C} that lie in
0..l-f; a track supports the car exactly when its pillars cover every
offset. The exact solver is a depth-first branch-and-bound over bitmasks,
the greedy solver is the classical max-gain set cover heuristic.
"""

import logging
from typing import List, Optional

import numpy as np

from ..errors import GapTrackError, OracleNodeLimitExceeded
from ..models import Instance, OracleResult, TrackLayout
from ..utils.config_loader import get_config
from .verifier import counting_lower_bound, coverage

logger = logging.getLogger(__name__)


class _NodeLimitReached(Exception):
    pass


def _greedy_positions(instance: Instance) -> List[int]:
    """Max-gain greedy cover; ties go to the smaller position"""
    wheels = instance.car.wheel_array()
    max_offset = instance.max_offset

    gain = np.full(instance.track_length + 1, -1, dtype=np.int64)
    gain[1:] = 0
    for wheel in instance.wheels:
        gain[wheel:wheel + instance.offset_count] += 1

    covered = np.zeros(instance.offset_count, dtype=bool)
    chosen: List[int] = []
    remaining = instance.offset_count
    while remaining:
        position = int(np.argmax(gain))
        offsets = position - wheels
        offsets = offsets[(offsets >= 0) & (offsets <= max_offset)]
        fresh = offsets[~covered[offsets]]
        covered[fresh] = True
        remaining -= len(fresh)
        for k in fresh:
            gain[k + wheels] -= 1
        gain[position] = -1
        chosen.append(position)
    return sorted(chosen)


def min_track_greedy(instance: Instance) -> OracleResult:
    """Greedy set cover; never claims optimality"""
    positions = _greedy_positions(instance)
    track = TrackLayout(track_length=instance.track_length, pillars=tuple(positions))
    return OracleResult(
        track=track,
        optimal=False,
        explored_nodes=0,
        lower_bound=counting_lower_bound(instance),
    )


class ExactSearch:
    """
    Branch-and-bound for a minimum supporting track.

    Branches on the uncovered offset with the fewest admissible pillars; a
    pillar tried in an earlier sibling branch is banned in later ones. A node
    is pruned when even the largest remaining marginal gains cannot cover the
    uncovered offsets within the current best size.
    """

    def __init__(self, instance: Instance, node_limit: int):
        self.instance = instance
        self.node_limit = node_limit
        self.universe = (1 << instance.offset_count) - 1

        self.cover = [0] * (instance.track_length + 1)
        for position in range(1, instance.track_length + 1):
            mask = 0
            for wheel in instance.wheels:
                offset = position - wheel
                if 0 <= offset <= instance.max_offset:
                    mask |= 1 << offset
            self.cover[position] = mask
        self.candidates = [
            [k + wheel for wheel in instance.wheels]
            for k in range(instance.offset_count)
        ]

        self.nodes = 0
        self.best: Optional[List[int]] = None
        self.best_size = 0

    def solve(self, size_cap: Optional[int] = None) -> bool:
        """Run the search; returns False when the node limit cut it short"""
        greedy = _greedy_positions(self.instance)
        if size_cap is None or len(greedy) <= size_cap:
            self.best = greedy
            self.best_size = len(greedy)
        else:
            self.best_size = size_cap + 1

        try:
            self._search(0, [], 0)
        except _NodeLimitReached:
            return False
        return True

    def _lower_bound(self, remaining_mask: int, remaining: int, banned: int) -> Optional[int]:
        gains = sorted(
            (
                (self.cover[p] & remaining_mask).bit_count()
                for p in range(1, self.instance.track_length + 1)
                if not (banned >> p) & 1
            ),
            reverse=True,
        )
        total = 0
        for count, gain in enumerate(gains, start=1):
            if gain == 0:
                break
            total += gain
            if total >= remaining:
                return count
        return None

    def _search(self, covered: int, chosen: List[int], banned: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _NodeLimitReached()

        if covered == self.universe:
            if len(chosen) < self.best_size:
                self.best = sorted(chosen)
                self.best_size = len(chosen)
                logger.debug(f"exact search: improved to {self.best_size} after {self.nodes} nodes")
            return
        if len(chosen) + 1 >= self.best_size:
            return

        remaining_mask = self.universe & ~covered
        remaining = remaining_mask.bit_count()
        bound = self._lower_bound(remaining_mask, remaining, banned)
        if bound is None or len(chosen) + bound >= self.best_size:
            return

        branch: Optional[List[int]] = None
        scan = remaining_mask
        while scan:
            low = scan & -scan
            offset = low.bit_length() - 1
            scan ^= low
            allowed = [p for p in self.candidates[offset] if not (banned >> p) & 1]
            if not allowed:
                return
            if branch is None or len(allowed) < len(branch):
                branch = allowed
                if len(branch) == 1:
                    break

        branch.sort(key=lambda p: (-(self.cover[p] & remaining_mask).bit_count(), p))
        for position in branch:
            chosen.append(position)
            self._search(covered | self.cover[position], chosen, banned)
            chosen.pop()
            banned |= 1 << position
            if len(chosen) + 1 >= self.best_size:
                break


def min_track_exact(instance: Instance, size_cap: Optional[int] = None,
                    node_limit: Optional[int] = None) -> OracleResult:
    """
    Minimum-cardinality supporting track, or no track when `size_cap` excludes every solution.

    Raises OracleNodeLimitExceeded when the node limit is hit before any
    track is found; a limit hit after a track was found returns that track
    with optimal=False.
    """
    if size_cap is not None and size_cap < 1:
        raise ValueError(f"size cap must be positive, got {size_cap}")
    if node_limit is None:
        node_limit = get_config().get_int('GAPTRACK_ORACLE_NODE_LIMIT')

    search = ExactSearch(instance, node_limit)
    finished = search.solve(size_cap)
    lower_bound = counting_lower_bound(instance)

    if search.best is None:
        if not finished:
            raise OracleNodeLimitExceeded(node_limit)
        logger.info(f"exact search: no supporting track with at most {size_cap} pillars")
        return OracleResult(
            track=None,
            optimal=False,
            explored_nodes=search.nodes,
            size_cap=size_cap,
            lower_bound=lower_bound,
        )

    track = TrackLayout(track_length=instance.track_length, pillars=tuple(search.best))
    if not coverage(instance, track).supported:
        raise GapTrackError("exact search returned a track that does not support the car")
    if not finished:
        logger.warning(f"exact search hit the node limit ({node_limit}); best size {track.size} is not certified")

    return OracleResult(
        track=track,
        optimal=finished,
        explored_nodes=search.nodes,
        size_cap=size_cap,
        node_limit_hit=not finished,
        lower_bound=lower_bound,
    )
