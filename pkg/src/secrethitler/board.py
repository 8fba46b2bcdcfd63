"""Player-count dependent fixtures: role counts and the fascist power track."""

from __future__ import annotations

from .types import Power

DECK_FASCIST_CARDS = 11
DECK_LIBERAL_CARDS = 6
DECK_SIZE = DECK_FASCIST_CARDS + DECK_LIBERAL_CARDS

# Fascist policies needed before electing Hitler as chancellor ends the game.
HITLER_ZONE_THRESHOLD = 3
# The veto power becomes available after this many fascist policies.
VETO_UNLOCK = 5

FASCIST_WIN_POLICIES = 6
LIBERAL_WIN_POLICIES = 5


def fascist_count(num_players: int) -> int:
    """Number of fascists excluding Hitler for a 5..10 player game."""
    if not 5 <= num_players <= 10:
        raise ValueError(f"player count must be 5..10, got {num_players}")
    return (num_players - 1) // 2 - 1


def liberal_count(num_players: int) -> int:
    # Everyone who is neither Hitler nor a plain fascist.
    return num_players - 1 - fascist_count(num_players)


_EXEC = Power.EXECUTION
_PEEK = Power.POLICY_PEEK
_INV = Power.INVESTIGATE_LOYALTY
_SPEC = Power.SPECIAL_ELECTION

# Powers granted by the first five fascist slots; the sixth slot ends the
# game so no power fires there.  Layout by player count, official board.
_POWER_TRACKS: dict[int, tuple] = {
    5: (None, None, _PEEK, _EXEC, _EXEC),
    6: (None, None, _PEEK, _EXEC, _EXEC),
    7: (None, _INV, _SPEC, _EXEC, _EXEC),
    8: (None, _INV, _SPEC, _EXEC, _EXEC),
    9: (_INV, _INV, _SPEC, _EXEC, _EXEC),
    10: (_INV, _INV, _SPEC, _EXEC, _EXEC),
}


def board_power(num_players: int, fascist_slot: int) -> Power | None:
    """Power granted when the `fascist_slot`-th fascist policy (1..6) lands."""
    if not 5 <= num_players <= 10:
        raise ValueError(f"player count must be 5..10, got {num_players}")
    if not 1 <= fascist_slot <= 6:
        raise ValueError(f"fascist slot must be 1..6, got {fascist_slot}")
    if fascist_slot == 6:
        return None
    return _POWER_TRACKS[num_players][fascist_slot - 1]
