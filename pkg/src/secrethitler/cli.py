"""Command line front end: simulate batches, analyze records, trace a game."""

from __future__ import annotations

import argparse
import sys

from .agents import AgentSpec
from .engine import GameState
from .records import read_records
from .runner import BatchConfig, GameAbortError, play_game, run_batch
from .stats import AGGREGATE_KEYS, aggregate, format_csv, format_table
from .types import EventKind, Party


def _parse_players(text: str) -> tuple:
    """Accept "5-10" style ranges or "5,7,9" style lists."""
    text = text.strip()
    if "-" in text:
        lo_text, hi_text = text.split("-", 1)
        lo, hi = int(lo_text), int(hi_text)
        counts = tuple(range(lo, hi + 1))
    else:
        counts = tuple(int(part) for part in text.split(","))
    if not counts:
        raise ValueError("empty player count list")
    for n in counts:
        if not 5 <= n <= 10:
            raise ValueError(f"player counts must be 5..10, got {n}")
    return counts


def _parse_agents(text: str, iterations: int, exploration: float) -> tuple:
    specs = tuple(
        AgentSpec.parse(part, iterations=iterations, exploration=exploration)
        for part in text.split(",")
        if part.strip()
    )
    if not specs:
        raise ValueError("empty agent list")
    return specs


def _cmd_simulate(args) -> int:
    try:
        counts = _parse_players(args.players)
        agents = _parse_agents(args.agents, args.ismcts_iterations, args.ismcts_k)
        batch = BatchConfig(
            num_games=args.games,
            master_seed=args.seed,
            allowed_agents=agents,
            allowed_player_counts=counts,
            parallelism=args.parallelism,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = run_batch(batch, args.out)
    print(
        f"wrote {result.written} records to {result.path}"
        + (f" (skipped {result.skipped} already recorded)" if result.skipped else "")
    )
    for seed, message in result.errors:
        print(f"error: game {seed} aborted: {message}", file=sys.stderr)
    return 1 if result.errors else 0


def _cmd_analyze(args) -> int:
    try:
        records, errors = read_records(args.infile)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for lineno, message in errors:
        print(f"error: {args.infile}:{lineno}: {message}", file=sys.stderr)
    entries = aggregate(records, args.by)
    print(format_csv(entries) if args.format == "csv" else format_table(entries))
    return 1 if errors else 0


def _cmd_trace(args) -> int:
    try:
        specs = _parse_agents(args.agents, args.ismcts_iterations, args.ismcts_k)
        if len(specs) == 1:
            specs = specs * args.players
        if len(specs) != args.players:
            raise ValueError(f"need 1 or {args.players} agent specs, got {len(specs)}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sink = (lambda line: print(line)) if args.search_trace else None
    try:
        record, state = play_game(args.players, specs, args.seed, search_trace=sink)
    except GameAbortError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in narrate(state, specs):
        print(line)
    return 0


def narrate(state: GameState, specs) -> list:
    """Human-readable turn-by-turn account of a finished game."""
    roles = state.roles

    def who(seat: int) -> str:
        return f"P{seat}[{roles[seat].label}]"

    def cards(parties) -> str:
        return "".join("F" if c == Party.FASCIST else "L" for c in parties)

    lines = [
        f"{state.config.num_players} players: "
        + ", ".join(f"{who(s)}={spec.name}" for s, spec in enumerate(specs))
    ]
    lib = fas = 0
    for e in state.events:
        kind = e.kind
        if kind == EventKind.NOMINATION:
            lines.append(f"{who(e.actor)} as president nominates {who(e.target)} for chancellor.")
        elif kind == EventKind.ELECTION:
            ja = sum(1 for v in e.votes if v == 1)
            nein = sum(1 for v in e.votes if v == 0)
            ballots = "".join("J" if v == 1 else "N" if v == 0 else "-" for v in e.votes)
            verdict = "elected" if e.passed else "rejected"
            lines.append(
                f"Government {who(e.actor)}/{who(e.target)} {verdict} {ja}-{nein} [{ballots}]."
            )
        elif kind == EventKind.POLICY:
            if e.party == Party.LIBERAL:
                lib += 1
            else:
                fas += 1
            source = "Frustrated populace enacts" if e.by_chaos else f"{who(e.actor)} enacts"
            lines.append(f"{source} a {e.party.label} policy (L{lib}/F{fas}).")
        elif kind == EventKind.RESHUFFLE:
            lines.append("Discard pile shuffled back into the deck.")
        elif kind == EventKind.DRAW:
            lines.append(f"{who(e.actor)} draws {cards(e.cards)}.")
        elif kind == EventKind.PASS:
            lines.append(f"{who(e.actor)} passes {cards(e.cards)} to {who(e.target)}.")
        elif kind == EventKind.INVESTIGATION:
            lines.append(f"{who(e.actor)} investigates {who(e.target)}.")
        elif kind == EventKind.INVESTIGATION_RESULT:
            lines.append(f"  ...and sees {e.party.label} party membership.")
        elif kind == EventKind.SPECIAL_ELECTION:
            lines.append(f"{who(e.actor)} calls a special election for {who(e.target)}.")
        elif kind == EventKind.POLICY_PEEK:
            lines.append(f"{who(e.actor)} peeks at the top of the deck.")
        elif kind == EventKind.PEEK_RESULT:
            lines.append(f"  ...and sees {cards(e.cards)}.")
        elif kind == EventKind.EXECUTION:
            suffix = "They were Hitler." if e.ended_game else "They were not Hitler."
            lines.append(f"{who(e.actor)} executes {who(e.target)}. {suffix}")
        elif kind == EventKind.VETO_PROPOSED:
            lines.append(f"{who(e.actor)} proposes a veto.")
        elif kind == EventKind.VETO_ACCEPTED:
            lines.append(f"{who(e.actor)} agrees to the veto; both policies are discarded.")
        elif kind == EventKind.VETO_REFUSED:
            lines.append(f"{who(e.actor)} refuses the veto.")
        elif kind == EventKind.GAME_OVER:
            lines.append(f"{e.party.label}s win: {e.reason.label}.")
    lines.append(f"Finished after {state.elections_held} elections.")
    return lines


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="secrethitler",
        description="Seedable Secret Hitler self-play: batch simulation, analysis, tracing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="play a batch of games and append records to a file")
    sim.add_argument("--games", type=int, required=True, help="number of games in the batch")
    sim.add_argument("--seed", type=int, required=True, help="master seed")
    sim.add_argument("--agents", required=True,
                     help="comma list of agent kinds games draw seats from: random,selfish,ismcts")
    sim.add_argument("--players", default="5-10", help="player counts, e.g. 5-10 or 5,7,9")
    sim.add_argument("--parallelism", type=int, default=1, help="worker processes")
    sim.add_argument("--out", required=True, help="record file to append to")
    sim.add_argument("--ismcts-iterations", type=int, default=10000)
    sim.add_argument("--ismcts-k", type=float, default=0.7)
    sim.set_defaults(func=_cmd_simulate)

    ana = sub.add_parser("analyze", help="aggregate a record file into win-rate rows")
    ana.add_argument("--in", dest="infile", required=True, help="record file to read")
    ana.add_argument("--by", choices=AGGREGATE_KEYS, default="agent")
    ana.add_argument("--format", choices=("table", "csv"), default="table")
    ana.set_defaults(func=_cmd_analyze)

    tr = sub.add_parser("trace", help="play one seeded game and print its narrative")
    tr.add_argument("--players", type=int, required=True)
    tr.add_argument("--seed", type=int, required=True)
    tr.add_argument("--agents", required=True,
                    help="one agent kind for all seats or a per-seat comma list")
    tr.add_argument("--ismcts-iterations", type=int, default=10000)
    tr.add_argument("--ismcts-k", type=float, default=0.7)
    tr.add_argument("--search-trace", action="store_true",
                    help="dump per-decision search statistics")
    tr.set_defaults(func=_cmd_trace)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
