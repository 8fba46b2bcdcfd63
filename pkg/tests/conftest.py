"""Shared test helpers: hand-built states and scripted game drivers."""

from __future__ import annotations

import random
from typing import Optional

from secrethitler import GameConfig, GameState, apply_action, legal_actions, new_game
from secrethitler.board import DECK_FASCIST_CARDS, DECK_LIBERAL_CARDS, fascist_count
from secrethitler.types import (
    ACKNOWLEDGE_PEEK,
    PROPOSE_VETO,
    EventKind,
    Party,
    Phase,
    Power,
    Role,
    chancellor_enact,
    nominate,
    president_discard,
    veto_decision,
    vote,
)

F = Party.FASCIST
L = Party.LIBERAL


def fixed_roles(num_players: int, hitler: int = 0, fascists: tuple = ()) -> tuple:
    """Role tuple with Hitler and fascist seats placed explicitly."""
    if not fascists:
        fascists = tuple(range(1, 1 + fascist_count(num_players)))
    assert len(fascists) == fascist_count(num_players)
    assert hitler not in fascists
    roles = [Role.LIBERAL] * num_players
    roles[hitler] = Role.HITLER
    for s in fascists:
        roles[s] = Role.FASCIST
    return tuple(roles)


def build_state(
    num_players: int = 5,
    roles: Optional[tuple] = None,
    *,
    phase: Phase = Phase.NOMINATION,
    president: int = 0,
    chancellor: Optional[int] = None,
    deck: Optional[list] = None,
    discard: tuple = (),
    president_hand: tuple = (),
    chancellor_hand: tuple = (),
    liberal: int = 0,
    fascist: int = 0,
    tracker: int = 0,
    alive: Optional[tuple] = None,
    last_president: Optional[int] = None,
    last_chancellor: Optional[int] = None,
    pending_power: Optional[Power] = None,
    veto_refused: bool = False,
    investigated: tuple = (),
    term_limits_enabled: bool = True,
    investigate_once_per_target: bool = True,
) -> GameState:
    """Hand-crafted mid-game state.

    When `deck` is omitted the remaining cards (census minus enacted, hands,
    and discard) are stacked fascists-first; pass an explicit deck, top card
    last, to control draws.  The census is asserted either way.
    """
    config = GameConfig(num_players, term_limits_enabled, investigate_once_per_target)
    if roles is None:
        roles = fixed_roles(num_players)
    used_f = fascist + sum(1 for c in (*discard, *president_hand, *chancellor_hand) if c == F)
    used_l = liberal + sum(1 for c in (*discard, *president_hand, *chancellor_hand) if c == L)
    if deck is None:
        deck = [F] * (DECK_FASCIST_CARDS - used_f) + [L] * (DECK_LIBERAL_CARDS - used_l)
    assert used_f + sum(1 for c in deck if c == F) == DECK_FASCIST_CARDS
    assert used_l + sum(1 for c in deck if c == L) == DECK_LIBERAL_CARDS
    state = GameState(config, roles, list(deck), president)
    state.phase = phase
    state.chancellor = chancellor
    state.discard = list(discard)
    state.president_hand = list(president_hand)
    state.chancellor_hand = list(chancellor_hand)
    state.liberal_enacted = liberal
    state.fascist_enacted = fascist
    state.tracker = tracker
    state.last_president = last_president
    state.last_chancellor = last_chancellor
    state.pending_power = pending_power
    state.veto_refused = veto_refused
    for s in investigated:
        state.investigated_mask |= 1 << s
    if alive is not None:
        state.alive_mask = 0
        for s in alive:
            state.alive_mask |= 1 << s
        state.alive_count = len(alive)
    return state


def cast_all(state: GameState, rng: random.Random, ja_seats) -> GameState:
    """Resolve the pending election with `ja_seats` voting ja, the rest nein."""
    assert state.phase == Phase.ELECTION
    while state.phase == Phase.ELECTION:
        seat, _legal = legal_actions(state)
        state = apply_action(state, vote(seat in ja_seats), rng)
    return state


def elect(state: GameState, rng: random.Random, nominee: int) -> GameState:
    """Nominate `nominee` and elect the government unanimously."""
    assert state.phase == Phase.NOMINATION
    state = apply_action(state, nominate(nominee), rng)
    return cast_all(state, rng, set(range(state.config.num_players)))


def random_playthrough(seed: int, num_players: Optional[int] = None) -> GameState:
    """Drive a full game with uniformly random legal actions."""
    rng = random.Random(seed)
    n = num_players if num_players is not None else 5 + seed % 6
    state = new_game(GameConfig(n), rng)
    steps = 0
    while state.outcome is None:
        _seat, legal = legal_actions(state)
        state = apply_action(state, legal[int(rng.random() * len(legal))], rng)
        steps += 1
        assert steps < 10000, "random game failed to terminate"
    return state


def _reshuffle_count(state: GameState) -> int:
    return sum(1 for e in state.events if e.kind == EventKind.RESHUFFLE)


def _deep_reshuffle_move(state: GameState, hitler: int, legal: tuple):
    """Full-knowledge move policy for scripted_deep_reshuffle."""
    phase = state.phase
    if phase == Phase.NOMINATION:
        safe = [a for a in legal if a.target != hitler]
        assert safe, "no non-Hitler nominee available"
        return safe[0]
    if phase == Phase.ELECTION:
        return vote(True)
    if phase == Phase.LEGISLATIVE_PRESIDENT:
        hand = state.president_hand
        if state.fascist_enacted < 5:
            drop = L if (F in hand and L in hand) else hand[0]
        else:
            # Keep liberals reachable so the chancellor can cool the tracker.
            drop = F if F in hand else L
        return president_discard(hand.index(drop))
    if phase == Phase.LEGISLATIVE_CHANCELLOR:
        hand = state.chancellor_hand
        if state.fascist_enacted < 5:
            enact = F if F in hand else L
            return chancellor_enact(hand.index(enact))
        tracker = state.tracker
        if tracker < 1 and PROPOSE_VETO in legal:
            return PROPOSE_VETO
        if L in hand:
            return chancellor_enact(hand.index(L))
        if tracker < 2 and PROPOSE_VETO in legal:
            return PROPOSE_VETO
        raise RuntimeError("cornered: all-fascist hand with a hot tracker")
    if phase == Phase.VETO_CONSENT:
        return veto_decision(True)
    if phase == Phase.EXECUTIVE_ACTION:
        if state.pending_power == Power.POLICY_PEEK:
            return ACKNOWLEDGE_PEEK
        if state.pending_power == Power.EXECUTION:
            for a in legal:
                if state.roles[a.target] == Role.LIBERAL:
                    return a
            raise RuntimeError("cornered: no liberal execution target")
    raise RuntimeError(f"unexpected phase for the scripted game: {phase}")


def scripted_deep_reshuffle(seed: int, reshuffles: int = 2) -> GameState:
    """Drive a six-player game until the deck has been reshuffled `reshuffles`
    times, then stop at the next nomination.

    The driver reads the full state: it rushes five fascist policies while
    executing liberals, then burns cards through agreed vetoes, enacting a
    liberal whenever the election tracker gets dangerous.  Card orders that
    corner the policy raise RuntimeError; callers pin a scanned seed.
    """
    rng = random.Random(seed)
    state = new_game(GameConfig(6), rng)
    hitler = state.roles.index(Role.HITLER)
    for _ in range(800):
        if state.outcome is not None:
            raise RuntimeError("scripted game ended prematurely")
        if _reshuffle_count(state) >= reshuffles and state.phase == Phase.NOMINATION:
            return state
        _seat, legal = legal_actions(state)
        state = apply_action(state, _deep_reshuffle_move(state, hitler, legal), rng)
    raise RuntimeError("scripted game never reached its reshuffle quota")
