"""Single-observer information-set MCTS over determinized full states.

One tree is grown from the searching seat's point of view.  Every iteration
samples a fresh determinization from the seat's role filter, descends the
tree while the determinization has no untried actions, expands one node,
finishes the game uniformly at random, and backpropagates the per-seat win
vector.

Two structural details matter here.  First, the full state in which every
tree edge was traversed is recorded in a queue, and backpropagation checks
sibling availability against those recorded states only; re-deriving states
through the transition function would re-run reshuffles nondeterministically
and could declare previously legal moves unavailable.  Second, legislative
edges are branched on the party of the card handled, not its hand position,
since equal-party cards are interchangeable and positions are meaningless
across determinizations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import log, sqrt
from typing import Optional

from . import engine
from .beliefs import RoleFilter, initial_role_filter, sample_determinization, update_role_filter
from .engine import GameState, Observation, apply_inplace, legal_actions
from .types import (
    Action,
    ActionType,
    ContractViolationError,
    Phase,
    chancellor_enact,
    president_discard,
)

_DISCARD = "discard"
_ENACT = "enact"


class InfoSetNode:
    """Tree node keyed by incoming edge; `avail` counts determinizations in
    which the edge was legal while a sibling was selected."""

    __slots__ = ("key", "parent", "n", "avail", "reward", "children")

    def __init__(self, key, parent: Optional["InfoSetNode"], num_seats: int):
        self.key = key
        self.parent = parent
        self.n = 0
        self.avail = 0
        self.reward = [0.0] * num_seats
        self.children: dict = {}


def _edge_map(state: GameState) -> tuple:
    """Acting seat and an ordered map of edge key to a legal action realizing it."""
    seat, legal = legal_actions(state)
    out = {}
    for a in legal:
        t = a.type
        if t == ActionType.PRESIDENT_DISCARD:
            k = (_DISCARD, state.president_hand[a.target])
        elif t == ActionType.CHANCELLOR_ENACT:
            k = (_ENACT, state.chancellor_hand[a.target])
        else:
            k = a
        if k not in out:
            out[k] = a
    return seat, out


def describe_key(key) -> str:
    if isinstance(key, Action):
        return key.describe()
    tag, party = key
    return f"{tag} a {party.label} card"


def select(node: InfoSetNode, d: GameState, queue: list, exploration: float,
           rng: random.Random) -> tuple:
    """Descend UCB-best available children while the node is fully expanded.

    Each traversed edge appends the pre-transition state to `queue`.  The
    determinization is advanced in place.
    """
    while d.outcome is None:
        seat, emap = _edge_map(d)
        children = node.children
        for k in emap:
            if k not in children:
                return node, d  # untried action here: stop for expansion
        best_val = -1.0
        best: list = []
        for k in emap:
            child = children[k]
            val = child.reward[seat] / child.n + exploration * sqrt(log(child.avail) / child.n)
            if val > best_val:
                best_val = val
                best = [child]
            elif val == best_val:
                best.append(child)
        chosen = best[0] if len(best) == 1 else best[int(rng.random() * len(best))]
        queue.append(d.clone())
        apply_inplace(d, emap[chosen.key], rng)
        node = chosen
    return node, d


def expand(node: InfoSetNode, d: GameState, queue: list, rng: random.Random) -> tuple:
    """Attach one uniformly chosen untried child and advance into it."""
    seat, emap = _edge_map(d)
    untried = [k for k in emap if k not in node.children]
    if not untried:
        raise ContractViolationError("expand called with no untried actions")
    k = untried[int(rng.random() * len(untried))]
    child = InfoSetNode(k, node, d.config.num_players)
    node.children[k] = child
    queue.append(d.clone())
    apply_inplace(d, emap[k], rng)
    return child, d


def simulate(d: GameState, rng: random.Random) -> list:
    """Uniform random playout; per-seat reward is 1.0 for the winning team."""
    while d.outcome is None:
        seat, legal = legal_actions(d)
        apply_inplace(d, legal[int(rng.random() * len(legal))], rng)
    winner = d.outcome.winning_team
    return [1.0 if r.party == winner else 0.0 for r in d.roles]


def backpropagate(reward: list, leaf: InfoSetNode, queue: list,
                  stats: Optional["SearchStats"] = None) -> None:
    """Credit the path to `leaf` and bump availability of compatible siblings.

    Compatibility is judged by querying legal actions of the states recorded
    in `queue`; the transition function is never consulted.
    """
    chain = []
    node = leaf
    while node is not None:
        chain.append(node)
        node = node.parent
    chain.reverse()
    if len(queue) != len(chain) - 1:
        raise ContractViolationError("state queue does not cover the path")
    calls_before = engine.transition_calls
    for depth, v in enumerate(chain):
        v.n += 1
        acc = v.reward
        for i, x in enumerate(reward):
            acc[i] += x
        if depth == 0:
            v.avail += 1
            continue
        _, emap = _edge_map(queue[depth - 1])
        if v.key not in emap and stats is not None:
            stats.compat_failures += 1
        for k, sibling in chain[depth - 1].children.items():
            if k in emap:
                sibling.avail += 1
    if stats is not None:
        stats.backprop_transition_calls += engine.transition_calls - calls_before


@dataclass
class SearchStats:
    iterations: int
    compat_failures: int = 0
    backprop_transition_calls: int = 0


@dataclass
class SearchResult:
    action: Action
    root: InfoSetNode
    stats: SearchStats


def run_search(obs: Observation, filt: RoleFilter, iterations: int, exploration: float,
               rng: random.Random) -> SearchResult:
    """Full search returning the chosen action plus the root for inspection."""
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if obs.public.phase == Phase.GAME_OVER:
        raise ContractViolationError("cannot search a finished game")
    root = InfoSetNode(None, None, obs.public.num_players)
    stats = SearchStats(iterations=iterations)
    for _ in range(iterations):
        d = sample_determinization(obs, filt, rng)
        queue: list = []
        node, d = select(root, d, queue, exploration, rng)
        if d.outcome is None:
            node, d = expand(node, d, queue, rng)
        reward = simulate(d, rng)
        backpropagate(reward, node, queue, stats)
    if not root.children:
        raise ContractViolationError("search produced no root actions")
    best_n = max(c.n for c in root.children.values())
    best = [k for k, c in root.children.items() if c.n == best_n]
    key = best[0] if len(best) == 1 else best[int(rng.random() * len(best))]
    return SearchResult(_realize(key, obs, rng), root, stats)


def so_ismcts(obs: Observation, filt: RoleFilter, iterations: int, exploration: float,
              rng: random.Random) -> Action:
    return run_search(obs, filt, iterations, exploration, rng).action


def _realize(key, obs: Observation, rng: random.Random) -> Action:
    """Turn a party-level legislative key back into a positional action."""
    if isinstance(key, Action):
        return key
    tag, party = key
    hand = obs.visible_president_hand if tag == _DISCARD else obs.visible_chancellor_hand
    if hand is None:
        raise ContractViolationError("legislative edge chosen without a visible hand")
    positions = [i for i, card in enumerate(hand) if card == party]
    pos = positions[0] if len(positions) == 1 else positions[int(rng.random() * len(positions))]
    return president_discard(pos) if tag == _DISCARD else chancellor_enact(pos)


class ISMCTSAgent:
    """Stateful per-game agent: keeps a role filter fed by observed events."""

    def __init__(self, iterations: int = 10000, exploration: float = 0.7, trace=None):
        self.iterations = iterations
        self.exploration = exploration
        self.trace = trace
        self.role_filter: Optional[RoleFilter] = None
        self._events_consumed = 0
        self.last_result: Optional[SearchResult] = None

    def choose(self, ctx) -> Action:
        obs = ctx.observation
        if self.role_filter is None:
            self.role_filter = initial_role_filter(
                obs.config.num_players, obs.seat, obs.known_roles
            )
        filt = self.role_filter
        events = obs.visible_events
        for event in events[self._events_consumed:]:
            filt = update_role_filter(filt, event)
        self._events_consumed = len(events)
        self.role_filter = filt
        if len(ctx.legal) == 1:
            return ctx.legal[0]
        result = run_search(obs, filt, self.iterations, self.exploration, ctx.rng)
        self.last_result = result
        if self.trace is not None:
            self._emit_trace(obs, result)
        return result.action

    def _emit_trace(self, obs: Observation, result: SearchResult) -> None:
        stats = result.stats
        self.trace(
            f"search seat={obs.seat} phase={obs.public.phase.name} "
            f"iterations={stats.iterations} candidates={len(self.role_filter)}"
        )
        children = sorted(result.root.children.items(), key=lambda kv: -kv[1].n)
        for key, child in children:
            mean = child.reward[obs.seat] / child.n if child.n else 0.0
            self.trace(
                f"  {describe_key(key)}: n={child.n} avail={child.avail} mean={mean:.3f}"
            )
