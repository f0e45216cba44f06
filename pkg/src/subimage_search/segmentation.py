"""Trading-inspired a-posteriori segmentation of multivariate series.

A hindsight-optimal trader (states short/flat/long, additive profit, a
per-switch cost proportional to the series range) is solved by dynamic
programming; its switch instants are the segmentation instants. The
per-channel instants are unioned, near-duplicates coalesced, and the
transaction-cost level is swept geometrically until the instant count
fits under the configured bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .timeseries import MultiSeries

SHORT, FLAT, LONG = -1, 0, 1
# tie-break preference for the trader state: stay handled separately,
# then flat over long over short
_STATE_PREF = {FLAT: 0, LONG: 1, SHORT: 2}
_STATES = (FLAT, LONG, SHORT)


def default_gamma_close(t: int) -> float:
    return max(0.01 * t, 1.0)


@dataclass(frozen=True)
class AptsParams:
    eps_min: float = 0.0001
    eps_max: float = 1.0
    gamma_mult: float = 2.0
    gamma_close_rule: Callable[[int], float] = default_gamma_close
    k_max: int = 100

    def __post_init__(self) -> None:
        if not (0 < self.eps_min <= self.eps_max):
            raise ValueError("require 0 < eps_min <= eps_max")
        if self.gamma_mult <= 1:
            raise ValueError("gamma_mult must be > 1")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")

    def with_k_max(self, k_max: int) -> "AptsParams":
        return replace(self, k_max=k_max)


def trade_instants(series: Sequence[int] | np.ndarray, cost_fraction: float) -> list[int]:
    """Switch instants of the a-posteriori optimal 3-state trader.

    The trader starts flat, earns position * (series[t+1] - series[t]) per
    interval, and pays c = cost_fraction * (max - min) per state switch.
    Deterministic tie-break: prefer remaining in the current state, then
    flat over long over short. A flat series (max == min) yields no trades.
    """
    s = np.asarray(series, dtype=np.int64).ravel()
    t_len = int(s.shape[0])
    if t_len < 2:
        raise ValueError(f"series length must be >= 2, got {t_len}")
    if cost_fraction <= 0:
        raise ValueError("cost_fraction must be positive")
    rng = int(s.max() - s.min())
    if rng == 0:
        return []
    cost = Fraction(cost_fraction) * rng
    deltas = [Fraction(int(d)) for d in np.diff(s)]
    n_iv = len(deltas)

    # value[t][state] = best profit over intervals t..end given the state
    # entering interval t (i.e. held during interval t-1)
    zero = Fraction(0)
    value = {st: zero for st in _STATES}
    choice: list[dict[int, int]] = [dict() for _ in range(n_iv)]
    for t in range(n_iv - 1, -1, -1):
        new_value = {}
        for s_in in _STATES:
            best_v = None
            best_s = None
            for s_cur in _STATES:
                v = s_cur * deltas[t] - (cost if s_cur != s_in else zero) + value[s_cur]
                if (
                    best_v is None
                    or v > best_v
                    or (v == best_v and _pref(s_cur, s_in) < _pref(best_s, s_in))
                ):
                    best_v, best_s = v, s_cur
            new_value[s_in] = best_v
            choice[t][s_in] = best_s
        value = new_value

    instants = []
    state = FLAT
    for t in range(n_iv):
        nxt = choice[t][state]
        if nxt != state:
            instants.append(t)
            state = nxt
    return instants


def _pref(state: int, incoming: int) -> int:
    if state == incoming:
        return -1
    return _STATE_PREF[state]


@dataclass(frozen=True)
class SegmentationInstants:
    """Sorted unique indices in [0, T-1] marking structural series changes."""

    indices: tuple[int, ...]
    series_length: int

    def __post_init__(self) -> None:
        idx = tuple(self.indices)
        if list(idx) != sorted(set(idx)):
            raise ValueError("instants must be sorted and unique")
        if idx and (idx[0] < 0 or idx[-1] >= self.series_length):
            raise ValueError("instants out of range")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def segment(series: MultiSeries, params: AptsParams) -> SegmentationInstants:
    """Per-channel trade instants, unioned, coalesced, swept over the
    cost-level ladder until at most k_max instants remain.

    If even at the top of the ladder more than k_max instants survive,
    the k_max instants with the largest per-instant absolute change
    (summed over channels) are kept.
    """
    t_len = series.length
    if t_len < 2:
        raise ValueError(f"series length must be >= 2, got {t_len}")
    gamma_close = params.gamma_close_rule(t_len)

    eps = params.eps_min
    while True:
        merged = set()
        for k in range(series.n_channels):
            chan = series.values[:, k]
            if chan.max() == chan.min():
                continue  # flat channel: trade-free by definition
            merged.update(trade_instants(chan, eps))
        instants = _coalesce(sorted(merged), gamma_close)
        if len(instants) <= params.k_max:
            return SegmentationInstants(tuple(instants), t_len)
        if eps * params.gamma_mult <= params.eps_max:
            eps *= params.gamma_mult
        else:
            kept = _largest_changes(series, instants, params.k_max)
            return SegmentationInstants(tuple(kept), t_len)


def _coalesce(sorted_instants: list[int], gamma_close: float) -> list[int]:
    """Keep the smallest index of each run of instants closer than gamma_close."""
    out: list[int] = []
    for i in sorted_instants:
        if not out or i - out[-1] >= gamma_close:
            out.append(i)
    return out


def _largest_changes(series: MultiSeries, instants: list[int], k_max: int) -> list[int]:
    vals = series.values
    t_len = series.length

    def change(i: int) -> int:
        j = min(i + 1, t_len - 1)
        return int(np.abs(vals[j] - vals[i]).sum())

    ranked = sorted(instants, key=lambda i: (-change(i), i))
    return sorted(ranked[:k_max])
