"""Win-rate aggregation with normal-approximation confidence intervals."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

Z95 = 1.96

AGGREGATE_KEYS = ("agent", "role", "players", "reason")


def confidence_interval(wins: int, total: int) -> tuple:
    """95% normal-approximation interval for a binomial rate, clamped to [0, 1]."""
    if total <= 0:
        raise ValueError("total must be positive")
    if not 0 <= wins <= total:
        raise ValueError("wins must lie in 0..total")
    p = wins / total
    half = Z95 * sqrt(p * (1.0 - p) / total)
    return max(0.0, p - half), min(1.0, p + half)


@dataclass(frozen=True)
class WinRateEntry:
    key: str
    wins: int
    total: int

    @property
    def rate(self) -> float:
        return self.wins / self.total

    @property
    def ci(self) -> tuple:
        return confidence_interval(self.wins, self.total)


def aggregate(records, by: str) -> list:
    """Group records into win-rate rows.

    `agent`, `role` (agent by role), and `players` (agent by player count)
    count one trial per seat; `reason` counts one trial per game, so its
    rates are ending-reason frequencies.
    """
    if by not in AGGREGATE_KEYS:
        raise ValueError(f"unknown grouping {by!r}; expected one of {AGGREGATE_KEYS}")
    tallies: dict = {}
    if by == "reason":
        for record in records:
            key = record.reason.name.lower()
            tallies[key] = tallies.get(key, 0) + 1
        total = len(records)
        return [WinRateEntry(k, c, total) for k, c in sorted(tallies.items())]
    for record in records:
        for seat in record.seats:
            if by == "agent":
                key = seat.agent
            elif by == "role":
                key = f"{seat.agent}:{seat.role.name.lower()}"
            else:
                key = f"{seat.agent}:{record.num_players}p"
            wins, total = tallies.get(key, (0, 0))
            tallies[key] = (wins + int(seat.won), total + 1)
    return [WinRateEntry(k, w, t) for k, (w, t) in sorted(tallies.items())]


def format_table(entries) -> str:
    rows = [("group", "wins", "total", "rate", "ci95_low", "ci95_high")]
    for e in entries:
        low, high = e.ci
        rows.append((e.key, str(e.wins), str(e.total), f"{e.rate:.4f}", f"{low:.4f}", f"{high:.4f}"))
    widths = [max(len(r[i]) for r in rows) for i in range(6)]
    lines = []
    for r in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip())
    return "\n".join(lines)


def format_csv(entries) -> str:
    lines = ["group,wins,total,rate,ci95_low,ci95_high"]
    for e in entries:
        low, high = e.ci
        lines.append(f"{e.key},{e.wins},{e.total},{e.rate:.6f},{low:.6f},{high:.6f}")
    return "\n".join(lines)
