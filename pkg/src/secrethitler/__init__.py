"""Seedable Secret Hitler engine with baseline and search agents."""

from .agents import AgentContext, AgentSpec, RandomAgent, SelfishAgent, make_agent
from .beliefs import (
    RoleFilter,
    initial_role_filter,
    role_filter_from_observation,
    sample_determinization,
    update_role_filter,
)
from .board import (
    DECK_FASCIST_CARDS,
    DECK_LIBERAL_CARDS,
    FASCIST_WIN_POLICIES,
    HITLER_ZONE_THRESHOLD,
    LIBERAL_WIN_POLICIES,
    VETO_UNLOCK,
    board_power,
    fascist_count,
    liberal_count,
)
from .counting import (
    count_distinct_decks,
    count_hidden_states,
    count_role_assignments,
    tree_size_lower_bound,
)
from .engine import (
    GameState,
    Observation,
    PublicState,
    apply_action,
    card_census,
    legal_actions,
    new_game,
    observe,
    role_knowledge,
)
from .ismcts import ISMCTSAgent, SearchResult, SearchStats, run_search, so_ismcts
from .records import SCHEMA_VERSION, GameRecord, SeatRecord, read_records
from .runner import (
    ALL_PLAYER_COUNTS,
    BatchConfig,
    BatchResult,
    GameAbortError,
    game_seed_for,
    play_game,
    run_batch,
    run_game,
)
from .stats import WinRateEntry, aggregate, confidence_interval
from .types import (
    Action,
    ActionType,
    ContractViolationError,
    EventKind,
    GameConfig,
    GameError,
    GameEvent,
    IllegalActionError,
    Outcome,
    Party,
    Phase,
    Power,
    Role,
    WinReason,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionType",
    "AgentContext",
    "AgentSpec",
    "ALL_PLAYER_COUNTS",
    "BatchConfig",
    "BatchResult",
    "ContractViolationError",
    "DECK_FASCIST_CARDS",
    "DECK_LIBERAL_CARDS",
    "EventKind",
    "FASCIST_WIN_POLICIES",
    "GameAbortError",
    "GameConfig",
    "GameError",
    "GameEvent",
    "GameRecord",
    "GameState",
    "HITLER_ZONE_THRESHOLD",
    "IllegalActionError",
    "ISMCTSAgent",
    "LIBERAL_WIN_POLICIES",
    "Observation",
    "Outcome",
    "Party",
    "Phase",
    "Power",
    "PublicState",
    "RandomAgent",
    "Role",
    "RoleFilter",
    "SCHEMA_VERSION",
    "SearchResult",
    "SearchStats",
    "SeatRecord",
    "SelfishAgent",
    "VETO_UNLOCK",
    "WinRateEntry",
    "WinReason",
    "aggregate",
    "apply_action",
    "board_power",
    "card_census",
    "confidence_interval",
    "count_distinct_decks",
    "count_hidden_states",
    "count_role_assignments",
    "fascist_count",
    "game_seed_for",
    "initial_role_filter",
    "legal_actions",
    "liberal_count",
    "make_agent",
    "new_game",
    "observe",
    "play_game",
    "read_records",
    "role_filter_from_observation",
    "role_knowledge",
    "run_batch",
    "run_game",
    "run_search",
    "sample_determinization",
    "so_ismcts",
    "tree_size_lower_bound",
    "update_role_filter",
]
