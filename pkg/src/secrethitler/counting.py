"""Exact hidden-state space counting for the engine's information sets."""

from __future__ import annotations

from math import comb

from .board import DECK_FASCIST_CARDS, DECK_LIBERAL_CARDS, DECK_SIZE, fascist_count


def count_role_assignments(num_players: int) -> int:
    """Seat assignments of Hitler plus the fascist set; everyone else liberal."""
    f = fascist_count(num_players)
    return num_players * comb(num_players - 1, f)


def count_distinct_decks() -> int:
    """Orderings of the 17-card deck distinguishable by card colour."""
    return comb(DECK_SIZE, DECK_LIBERAL_CARDS)


def count_hidden_states(num_players: int) -> int:
    """Joint role-assignment and deck-ordering count at game start."""
    return count_role_assignments(num_players) * count_distinct_decks()


def tree_size_lower_bound() -> int:
    """Coarse game-tree magnitude: 30 plies of a hundred alternatives each."""
    return 100**30


# Referenced by tests; kept here so the numbers stay next to their meaning.
DECK_COMPOSITION = (DECK_FASCIST_CARDS, DECK_LIBERAL_CARDS)
