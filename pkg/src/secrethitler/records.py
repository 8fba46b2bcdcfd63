"""Line-delimited result records: one JSON object per completed game."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .types import Party, Role, WinReason

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SeatRecord:
    agent: str
    role: Role
    won: bool


@dataclass(frozen=True)
class GameRecord:
    """One finished game.  `wall_time` is informational and never serialized."""

    game_seed: int
    num_players: int
    seats: tuple
    winner: Party
    reason: WinReason
    rounds: int
    wall_time: float = 0.0

    def to_json_line(self) -> str:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "game_seed": self.game_seed,
            "num_players": self.num_players,
            "seats": [
                {"agent": s.agent, "role": s.role.name.lower(), "won": s.won}
                for s in self.seats
            ],
            "winner": self.winner.name.lower(),
            "reason": self.reason.name.lower(),
            "rounds": self.rounds,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "GameRecord":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ValueError("record line is not a JSON object")
        try:
            obj["schema_version"]
            seats = tuple(
                SeatRecord(
                    agent=str(s["agent"]),
                    role=Role[str(s["role"]).upper()],
                    won=bool(s["won"]),
                )
                for s in obj["seats"]
            )
            return cls(
                game_seed=int(obj["game_seed"]),
                num_players=int(obj["num_players"]),
                seats=seats,
                winner=Party[str(obj["winner"]).upper()],
                reason=WinReason[str(obj["reason"]).upper()],
                rounds=int(obj["rounds"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed record: {exc}") from exc


def read_records(path) -> tuple:
    """All parseable records plus (line_number, message) pairs for bad lines.

    Unknown fields are ignored so newer writers stay readable.
    """
    records = []
    errors = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(GameRecord.from_json_line(line))
            except ValueError as exc:
                errors.append((lineno, str(exc)))
    return records, errors
