"""Batch self-play: per-game seeding, configuration randomization, parallelism.

Every game is fully determined by `master_seed + index`, so a batch produces
the same record multiset at any parallelism level, and an interrupted batch
can be resumed by rerunning it against the same output file.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .agents import AgentContext, make_agent
from .engine import apply_action, legal_actions, new_game, observe
from .records import GameRecord, SeatRecord, read_records
from .types import GameConfig, GameError

ALL_PLAYER_COUNTS = (5, 6, 7, 8, 9, 10)


class GameAbortError(GameError):
    """An agent returned an illegal action; the game cannot be scored."""


@dataclass(frozen=True)
class BatchConfig:
    num_games: int
    master_seed: int
    allowed_agents: tuple
    allowed_player_counts: tuple = ALL_PLAYER_COUNTS
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.num_games < 0:
            raise ValueError("num_games must be non-negative")
        if not self.allowed_agents:
            raise ValueError("allowed_agents must not be empty")
        if not self.allowed_player_counts:
            raise ValueError("allowed_player_counts must not be empty")
        for n in self.allowed_player_counts:
            if not 5 <= n <= 10:
                raise ValueError(f"player counts must be 5..10, got {n}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


def game_seed_for(batch: BatchConfig, index: int) -> int:
    return batch.master_seed + index


def random_config(batch: BatchConfig, rng: random.Random) -> tuple:
    """Player count and per-seat agents, each drawn independently and uniformly."""
    counts = batch.allowed_player_counts
    num_players = counts[rng.randrange(len(counts))]
    pool = batch.allowed_agents
    agents = tuple(pool[rng.randrange(len(pool))] for _ in range(num_players))
    return num_players, agents


def _drive(num_players: int, specs: tuple, game_seed: int, rng: random.Random,
           search_trace=None) -> tuple:
    """Play one game to completion; returns (record, final_state)."""
    config = GameConfig(num_players)
    state = new_game(config, rng)
    seat_rngs = [random.Random(rng.getrandbits(64)) for _ in range(num_players)]
    agents = [make_agent(spec, search_trace) for spec in specs]
    started = time.perf_counter()
    while state.outcome is None:
        seat, legal = legal_actions(state)
        ctx = AgentContext(observe(state, seat), legal, seat_rngs[seat])
        action = agents[seat].choose(ctx)
        if action not in legal:
            raise GameAbortError(
                f"seat {seat} ({specs[seat].name}) returned illegal action "
                f"{action!r} in game {game_seed}"
            )
        state = apply_action(state, action, rng)
    outcome = state.outcome
    seats = tuple(
        SeatRecord(agent=specs[s].name, role=state.roles[s],
                   won=state.roles[s].party == outcome.winning_team)
        for s in range(num_players)
    )
    record = GameRecord(
        game_seed=game_seed,
        num_players=num_players,
        seats=seats,
        winner=outcome.winning_team,
        reason=outcome.reason,
        rounds=state.elections_held,
        wall_time=time.perf_counter() - started,
    )
    return record, state


def play_game(num_players: int, agent_specs, game_seed: int, search_trace=None) -> tuple:
    """One game with an explicit per-seat agent list; returns (record, state)."""
    specs = tuple(agent_specs)
    if len(specs) != num_players:
        raise ValueError(f"need {num_players} agent specs, got {len(specs)}")
    rng = random.Random(game_seed)
    return _drive(num_players, specs, game_seed, rng, search_trace)


def run_game(batch: BatchConfig, index: int) -> GameRecord:
    """Game `index` of a batch: seat count and agents drawn from the game seed."""
    game_seed = game_seed_for(batch, index)
    rng = random.Random(game_seed)
    num_players, specs = random_config(batch, rng)
    return _drive(num_players, specs, game_seed, rng)[0]


def _batch_worker(args: tuple) -> tuple:
    batch, index = args
    try:
        return index, run_game(batch, index).to_json_line(), None
    except GameAbortError as exc:
        return index, None, str(exc)


@dataclass
class BatchResult:
    path: Path
    written: int
    skipped: int
    errors: list


def run_batch(batch: BatchConfig, out_path) -> BatchResult:
    """Append records for every not-yet-recorded game index to `out_path`.

    Restartable: existing records are identified by game seed and skipped.
    Aborted games are reported, never silently repaired or re-rolled.
    """
    out = Path(out_path)
    existing = set()
    if out.exists():
        done, _bad = read_records(out)
        existing = {r.game_seed for r in done}
    todo = [i for i in range(batch.num_games) if game_seed_for(batch, i) not in existing]
    skipped = batch.num_games - len(todo)
    errors = []
    written = 0
    with out.open("a", encoding="utf-8") as handle:
        if batch.parallelism == 1 or len(todo) < 2:
            for index in todo:
                index, line, error = _batch_worker((batch, index))
                if error is not None:
                    errors.append((game_seed_for(batch, index), error))
                    continue
                handle.write(line + "\n")
                written += 1
        else:
            with ProcessPoolExecutor(max_workers=batch.parallelism) as pool:
                for index, line, error in pool.map(
                    _batch_worker, ((batch, i) for i in todo), chunksize=8
                ):
                    if error is not None:
                        errors.append((game_seed_for(batch, index), error))
                        continue
                    handle.write(line + "\n")
                    written += 1
    return BatchResult(out, written, skipped, errors)
