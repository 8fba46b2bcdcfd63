"""Rules state machine for 5..10 player games.

States are snapshots: `apply_action` returns a new state and never mutates
its argument.  All randomness (deck shuffles, reshuffles) is drawn from the
`random.Random` instance passed in, so equal seeds give equal games.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

from .board import (
    DECK_FASCIST_CARDS,
    DECK_LIBERAL_CARDS,
    FASCIST_WIN_POLICIES,
    HITLER_ZONE_THRESHOLD,
    LIBERAL_WIN_POLICIES,
    VETO_UNLOCK,
    board_power,
    fascist_count,
)
from .types import (
    ACKNOWLEDGE_PEEK,
    CHANCELLOR_ACTIONS_WITH_VETO,
    CHANCELLOR_ENACT_ACTIONS,
    PRESIDENT_DISCARD_ACTIONS,
    VETO_DECISION_ACTIONS,
    VOTE_ACTIONS,
    Action,
    ActionType,
    ContractViolationError,
    EventKind,
    GameConfig,
    GameEvent,
    IllegalActionError,
    Outcome,
    Party,
    Phase,
    Power,
    PRIVATE_CARD_KINDS,
    Role,
    WinReason,
    execute,
    investigate,
    nominate,
    special_election,
)

# Instrumentation: number of transition applications since module import.
# The search layer snapshots this around backpropagation to prove that no
# state is ever re-derived there.
transition_calls = 0


class GameState:
    """Complete snapshot: public board plus hidden roles, deck, and hands.

    `deck` holds the draw pile with the top card at the end of the list.
    `alive_mask` and `investigated_mask` are seat bitmasks.  `votes` holds
    the round in progress (-1 not cast, 0 nein, 1 ja); `vote_record` keeps
    the most recently completed round.  `known_top` maps a seat to the deck
    prefix that seat has peeked at and that is still in place.
    """

    __slots__ = (
        "config",
        "roles",
        "deck",
        "discard",
        "president_hand",
        "chancellor_hand",
        "liberal_enacted",
        "fascist_enacted",
        "tracker",
        "president",
        "chancellor",
        "last_president",
        "last_chancellor",
        "alive_mask",
        "alive_count",
        "phase",
        "pending_power",
        "votes",
        "vote_record",
        "special_next",
        "special_return",
        "veto_refused",
        "investigated_mask",
        "known_top",
        "events",
        "log_events",
        "outcome",
        "elections_held",
    )

    def __init__(self, config: GameConfig, roles: tuple, deck: list, president: int):
        n = config.num_players
        self.config = config
        self.roles = roles
        self.deck = deck
        self.discard: list = []
        self.president_hand: list = []
        self.chancellor_hand: list = []
        self.liberal_enacted = 0
        self.fascist_enacted = 0
        self.tracker = 0
        self.president = president
        self.chancellor: Optional[int] = None
        self.last_president: Optional[int] = None
        self.last_chancellor: Optional[int] = None
        self.alive_mask = (1 << n) - 1
        self.alive_count = n
        self.phase = Phase.NOMINATION
        self.pending_power: Optional[Power] = None
        self.votes = [-1] * n
        self.vote_record: Optional[tuple] = None
        self.special_next: Optional[int] = None
        self.special_return: Optional[int] = None
        self.veto_refused = False
        self.investigated_mask = 0
        self.known_top: dict = {}
        self.events: list = []
        self.log_events = True
        self.outcome: Optional[Outcome] = None
        self.elections_held = 0

    def clone(self) -> "GameState":
        new = GameState.__new__(GameState)
        new.config = self.config
        new.roles = self.roles
        new.deck = self.deck[:]
        new.discard = self.discard[:]
        new.president_hand = self.president_hand[:]
        new.chancellor_hand = self.chancellor_hand[:]
        new.liberal_enacted = self.liberal_enacted
        new.fascist_enacted = self.fascist_enacted
        new.tracker = self.tracker
        new.president = self.president
        new.chancellor = self.chancellor
        new.last_president = self.last_president
        new.last_chancellor = self.last_chancellor
        new.alive_mask = self.alive_mask
        new.alive_count = self.alive_count
        new.phase = self.phase
        new.pending_power = self.pending_power
        new.votes = self.votes[:]
        new.vote_record = self.vote_record
        new.special_next = self.special_next
        new.special_return = self.special_return
        new.veto_refused = self.veto_refused
        new.investigated_mask = self.investigated_mask
        new.known_top = self.known_top
        # With logging off the event list is frozen, so it can be shared.
        new.events = self.events[:] if self.log_events else self.events
        new.log_events = self.log_events
        new.outcome = self.outcome
        new.elections_held = self.elections_held
        return new

    def alive_seats(self) -> tuple:
        mask = self.alive_mask
        return tuple(s for s in range(self.config.num_players) if mask >> s & 1)

    def is_alive(self, seat: int) -> bool:
        return bool(self.alive_mask >> seat & 1)

    def to_dict(self) -> dict:
        return {
            "num_players": self.config.num_players,
            "term_limits_enabled": self.config.term_limits_enabled,
            "investigate_once_per_target": self.config.investigate_once_per_target,
            "roles": [r.name for r in self.roles],
            "deck": [c.name for c in self.deck],
            "discard": [c.name for c in self.discard],
            "president_hand": [c.name for c in self.president_hand],
            "chancellor_hand": [c.name for c in self.chancellor_hand],
            "liberal_enacted": self.liberal_enacted,
            "fascist_enacted": self.fascist_enacted,
            "election_tracker": self.tracker,
            "president": self.president,
            "chancellor": self.chancellor,
            "last_president": self.last_president,
            "last_chancellor": self.last_chancellor,
            "alive": list(self.alive_seats()),
            "phase": self.phase.name,
            "pending_power": self.pending_power.name if self.pending_power is not None else None,
            "votes": list(self.votes),
            "vote_record": list(self.vote_record) if self.vote_record is not None else None,
            "special_return": self.special_return,
            "veto_refused": self.veto_refused,
            "investigated": [
                s for s in range(self.config.num_players) if self.investigated_mask >> s & 1
            ],
            "known_top": {str(s): [c.name for c in t] for s, t in sorted(self.known_top.items())},
            "events": [e.to_dict() for e in self.events],
            "outcome": None
            if self.outcome is None
            else {"winning_team": self.outcome.winning_team.name, "reason": self.outcome.reason.name},
            "elections_held": self.elections_held,
        }

    def canonical_text(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def new_game(config: GameConfig, rng: random.Random) -> GameState:
    """Deal roles and the deck and seat a uniformly chosen first president."""
    n = config.num_players
    f = fascist_count(n)
    roles = [Role.HITLER] + [Role.FASCIST] * f + [Role.LIBERAL] * (n - 1 - f)
    rng.shuffle(roles)
    deck = [Party.FASCIST] * DECK_FASCIST_CARDS + [Party.LIBERAL] * DECK_LIBERAL_CARDS
    rng.shuffle(deck)
    president = rng.randrange(n)
    return GameState(config, tuple(roles), deck, president)


def legal_actions(state: GameState) -> tuple:
    """Acting seat and the non-empty tuple of actions open to it."""
    phase = state.phase
    if phase == Phase.ELECTION:
        votes = state.votes
        mask = state.alive_mask
        for s in range(state.config.num_players):
            if mask >> s & 1 and votes[s] < 0:
                return s, VOTE_ACTIONS
        raise ContractViolationError("election phase with no pending voter")
    if phase == Phase.NOMINATION:
        pres = state.president
        blocked = 1 << pres
        if state.config.term_limits_enabled:
            if state.last_chancellor is not None:
                blocked |= 1 << state.last_chancellor
            # The outgoing president is only term limited in larger games.
            if state.last_president is not None and state.alive_count > 5:
                blocked |= 1 << state.last_president
        mask = state.alive_mask & ~blocked
        acts = tuple(nominate(s) for s in range(state.config.num_players) if mask >> s & 1)
        if not acts:
            raise ContractViolationError("no eligible chancellor nominee")
        return pres, acts
    if phase == Phase.LEGISLATIVE_PRESIDENT:
        return state.president, PRESIDENT_DISCARD_ACTIONS
    if phase == Phase.LEGISLATIVE_CHANCELLOR:
        if state.fascist_enacted == VETO_UNLOCK and not state.veto_refused:
            return state.chancellor, CHANCELLOR_ACTIONS_WITH_VETO
        return state.chancellor, CHANCELLOR_ENACT_ACTIONS
    if phase == Phase.VETO_CONSENT:
        return state.president, VETO_DECISION_ACTIONS
    if phase == Phase.EXECUTIVE_ACTION:
        power = state.pending_power
        pres = state.president
        if power == Power.POLICY_PEEK:
            return pres, (ACKNOWLEDGE_PEEK,)
        mask = state.alive_mask & ~(1 << pres)
        n = state.config.num_players
        if power == Power.INVESTIGATE_LOYALTY:
            if state.config.investigate_once_per_target:
                mask &= ~state.investigated_mask
            acts = tuple(investigate(s) for s in range(n) if mask >> s & 1)
        elif power == Power.SPECIAL_ELECTION:
            acts = tuple(special_election(s) for s in range(n) if mask >> s & 1)
        elif power == Power.EXECUTION:
            acts = tuple(execute(s) for s in range(n) if mask >> s & 1)
        else:
            raise ContractViolationError(f"no pending power in executive phase: {power}")
        if not acts:
            raise ContractViolationError("executive action with no eligible target")
        return pres, acts
    raise ContractViolationError("legal_actions called on a terminal state")


def apply_action(state: GameState, action: Action, rng: random.Random) -> GameState:
    """Validated transition; returns the successor state, rejects illegal moves."""
    seat, legal = legal_actions(state)
    if action not in legal:
        raise IllegalActionError(f"{action.describe()} is not legal for seat {seat} in {state.phase.name}")
    new = state.clone()
    apply_inplace(new, action, rng)
    return new


def apply_inplace(state: GameState, action: Action, rng: random.Random) -> None:
    """Unchecked fast-path transition used by playouts; mutates `state`."""
    global transition_calls
    transition_calls += 1
    t = action.type
    if t == ActionType.VOTE:
        _do_vote(state, action.target, rng)
    elif t == ActionType.NOMINATE:
        _do_nominate(state, action.target)
    elif t == ActionType.PRESIDENT_DISCARD:
        _do_president_discard(state, action.target)
    elif t == ActionType.CHANCELLOR_ENACT:
        _do_chancellor_enact(state, action.target)
    elif t == ActionType.INVESTIGATE:
        _do_investigate(state, action.target)
    elif t == ActionType.SPECIAL_ELECTION:
        _do_special_election(state, action.target)
    elif t == ActionType.EXECUTE:
        _do_execute(state, action.target)
    elif t == ActionType.ACKNOWLEDGE_PEEK:
        _do_peek(state, rng)
    elif t == ActionType.PROPOSE_VETO:
        if state.log_events:
            state.events.append(
                GameEvent(EventKind.VETO_PROPOSED, actor=state.chancellor, target=state.president)
            )
        state.phase = Phase.VETO_CONSENT
    elif t == ActionType.VETO_DECISION:
        _do_veto_decision(state, bool(action.target), rng)
    else:  # pragma: no cover - exhaustive dispatch
        raise IllegalActionError(f"unknown action type {t}")


# ── transition helpers ──────────────────────────────────────────────────────


def _next_alive(state: GameState, seat: int) -> int:
    n = state.config.num_players
    mask = state.alive_mask
    for step in range(1, n + 1):
        s = (seat + step) % n
        if mask >> s & 1:
            return s
    raise ContractViolationError("no alive seat found")


def _advance_presidency(state: GameState) -> None:
    # A special election seats its nominee once; afterwards rotation resumes
    # from the president who called it.
    if state.special_next is not None:
        state.president = state.special_next
        state.special_next = None
        return
    base = state.special_return if state.special_return is not None else state.president
    state.special_return = None
    state.president = _next_alive(state, base)


def _end_session(state: GameState) -> None:
    state.chancellor = None
    state.pending_power = None
    _advance_presidency(state)
    state.phase = Phase.NOMINATION


def _end_game(state: GameState, reason: WinReason) -> None:
    outcome = Outcome.from_reason(reason)
    state.outcome = outcome
    state.phase = Phase.GAME_OVER
    if state.log_events:
        state.events.append(
            GameEvent(EventKind.GAME_OVER, party=outcome.winning_team, reason=reason, ended_game=True)
        )


def _reshuffle(state: GameState, rng: random.Random) -> None:
    state.deck.extend(state.discard)
    state.discard.clear()
    rng.shuffle(state.deck)
    state.known_top = {}
    if state.log_events:
        state.events.append(GameEvent(EventKind.RESHUFFLE))


def _pop_cards(state: GameState, k: int) -> tuple:
    deck = state.deck
    cards = tuple(deck.pop() for _ in range(k))
    if state.known_top:
        state.known_top = {s: t[k:] for s, t in state.known_top.items() if len(t) > k}
    return cards


def _begin_session(state: GameState, rng: random.Random) -> None:
    state.veto_refused = False
    # Fewer than three cards at draw time: fold the discard pile back in.
    if len(state.deck) < 3:
        _reshuffle(state, rng)
    cards = _pop_cards(state, 3)
    state.president_hand = list(cards)
    if state.log_events:
        state.events.append(
            GameEvent(EventKind.DRAW, actor=state.president, cards=cards, visible_to=state.president)
        )
    state.phase = Phase.LEGISLATIVE_PRESIDENT


def _enact_policy(state: GameState, party: Party, by_chaos: bool) -> Optional[Power]:
    """Place a policy, reset the tracker, and report any granted power."""
    if party == Party.LIBERAL:
        state.liberal_enacted += 1
    else:
        state.fascist_enacted += 1
    state.tracker = 0
    if state.log_events:
        state.events.append(
            GameEvent(
                EventKind.POLICY,
                actor=-1 if by_chaos else state.chancellor,
                party=party,
                by_chaos=by_chaos,
            )
        )
    if state.liberal_enacted >= LIBERAL_WIN_POLICIES:
        _end_game(state, WinReason.FIVE_LIBERAL_POLICIES)
        return None
    if state.fascist_enacted >= FASCIST_WIN_POLICIES:
        _end_game(state, WinReason.SIX_FASCIST_POLICIES)
        return None
    if by_chaos or party == Party.LIBERAL:
        return None
    return board_power(state.config.num_players, state.fascist_enacted)


def _chaos(state: GameState, rng: random.Random) -> None:
    """Third failed election: enact the top card with no power, clear limits."""
    if not state.deck:
        _reshuffle(state, rng)
    card = _pop_cards(state, 1)[0]
    _enact_policy(state, card, by_chaos=True)
    state.tracker = 0
    state.last_president = None
    state.last_chancellor = None


def _do_nominate(state: GameState, target: int) -> None:
    state.chancellor = target
    state.votes = [-1] * state.config.num_players
    if state.log_events:
        state.events.append(GameEvent(EventKind.NOMINATION, actor=state.president, target=target))
    state.phase = Phase.ELECTION


def _do_vote(state: GameState, ja: int, rng: random.Random) -> None:
    votes = state.votes
    mask = state.alive_mask
    n = state.config.num_players
    for s in range(n):
        if mask >> s & 1 and votes[s] < 0:
            votes[s] = ja
            break
    for s in range(n):
        if mask >> s & 1 and votes[s] < 0:
            return  # ballots still outstanding
    _resolve_election(state, rng)


def _resolve_election(state: GameState, rng: random.Random) -> None:
    votes = state.votes
    mask = state.alive_mask
    n = state.config.num_players
    ja = 0
    for s in range(n):
        if mask >> s & 1 and votes[s] == 1:
            ja += 1
    passed = 2 * ja > state.alive_count  # a tie fails
    chancellor = state.chancellor
    fas_before = state.fascist_enacted
    hitler_elected = (
        passed and fas_before >= HITLER_ZONE_THRESHOLD and state.roles[chancellor] == Role.HITLER
    )
    record = tuple(votes)
    state.vote_record = record
    state.elections_held += 1
    if state.log_events:
        state.events.append(
            GameEvent(
                EventKind.ELECTION,
                actor=state.president,
                target=chancellor,
                votes=record,
                passed=passed,
                fascist_enacted=fas_before,
                ended_game=hitler_elected,
            )
        )
    state.votes = [-1] * n
    if passed:
        state.last_president = state.president
        state.last_chancellor = chancellor
        if hitler_elected:
            _end_game(state, WinReason.HITLER_ELECTED)
            return
        _begin_session(state, rng)
        return
    state.chancellor = None
    state.tracker += 1
    if state.tracker >= 3:
        _chaos(state, rng)
    if state.outcome is None:
        _advance_presidency(state)
        state.phase = Phase.NOMINATION


def _do_president_discard(state: GameState, position: int) -> None:
    hand = state.president_hand
    state.discard.append(hand.pop(position))
    state.president_hand = []
    state.chancellor_hand = hand  # the two remaining cards, order kept
    if state.log_events:
        passed = tuple(hand)
        state.events.append(
            GameEvent(EventKind.PASS, actor=state.president, target=state.chancellor,
                      cards=passed, visible_to=state.president)
        )
        state.events.append(
            GameEvent(EventKind.RECEIVE, actor=state.president, target=state.chancellor,
                      cards=passed, visible_to=state.chancellor)
        )
    state.phase = Phase.LEGISLATIVE_CHANCELLOR


def _do_chancellor_enact(state: GameState, position: int) -> None:
    hand = state.chancellor_hand
    card = hand.pop(position)
    state.discard.append(hand[0])
    state.chancellor_hand = []
    power = _enact_policy(state, card, by_chaos=False)
    if state.outcome is not None:
        return
    if power is not None and _power_has_targets(state, power):
        state.pending_power = power
        state.phase = Phase.EXECUTIVE_ACTION
        return
    _end_session(state)


def _power_has_targets(state: GameState, power: Power) -> bool:
    if power != Power.INVESTIGATE_LOYALTY:
        return True
    mask = state.alive_mask & ~(1 << state.president)
    if state.config.investigate_once_per_target:
        mask &= ~state.investigated_mask
    return mask != 0


def _do_veto_decision(state: GameState, agree: bool, rng: random.Random) -> None:
    if not agree:
        if state.log_events:
            state.events.append(GameEvent(EventKind.VETO_REFUSED, actor=state.president))
        state.veto_refused = True
        state.phase = Phase.LEGISLATIVE_CHANCELLOR
        return
    if state.log_events:
        state.events.append(GameEvent(EventKind.VETO_ACCEPTED, actor=state.president))
    state.discard.extend(state.chancellor_hand)
    state.chancellor_hand = []
    state.tracker += 1
    if state.tracker >= 3:
        _chaos(state, rng)
    if state.outcome is None:
        _end_session(state)


def _do_investigate(state: GameState, target: int) -> None:
    state.investigated_mask |= 1 << target
    if state.log_events:
        party = state.roles[target].party
        state.events.append(GameEvent(EventKind.INVESTIGATION, actor=state.president, target=target))
        state.events.append(
            GameEvent(EventKind.INVESTIGATION_RESULT, actor=state.president, target=target,
                      party=party, visible_to=state.president)
        )
    _end_session(state)


def _do_special_election(state: GameState, target: int) -> None:
    if state.log_events:
        state.events.append(
            GameEvent(EventKind.SPECIAL_ELECTION, actor=state.president, target=target)
        )
    state.special_return = state.president
    state.special_next = target
    _end_session(state)


def _do_execute(state: GameState, target: int) -> None:
    state.alive_mask &= ~(1 << target)
    state.alive_count -= 1
    was_hitler = state.roles[target] == Role.HITLER
    if state.log_events:
        state.events.append(
            GameEvent(EventKind.EXECUTION, actor=state.president, target=target, ended_game=was_hitler)
        )
    if was_hitler:
        _end_game(state, WinReason.HITLER_KILLED)
        return
    _end_session(state)


def _do_peek(state: GameState, rng: random.Random) -> None:
    if len(state.deck) < 3:
        _reshuffle(state, rng)
    deck = state.deck
    top = (deck[-1], deck[-2], deck[-3])
    state.known_top = {**state.known_top, state.president: top}
    if state.log_events:
        state.events.append(GameEvent(EventKind.POLICY_PEEK, actor=state.president))
        state.events.append(
            GameEvent(EventKind.PEEK_RESULT, actor=state.president, cards=top,
                      visible_to=state.president)
        )
    _end_session(state)


# ── observations ────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class PublicState:
    """Everything any player at the table can see."""

    num_players: int
    liberal_enacted: int
    fascist_enacted: int
    election_tracker: int
    president: int
    chancellor: Optional[int]
    last_president: Optional[int]
    last_chancellor: Optional[int]
    alive: tuple
    votes_cast: tuple
    vote_record: Optional[tuple]
    phase: Phase
    pending_power: Optional[Power]
    deck_size: int
    discard_size: int
    investigated: tuple
    veto_refused: bool
    special_return: Optional[int]
    elections_held: int
    public_events: tuple


@dataclass(frozen=True, slots=True)
class Observation:
    """Projection of a state onto one seat; the whole agent-visible world."""

    seat: int
    own_role: Role
    known_roles: dict
    public: PublicState
    private_card_events: tuple
    investigation_results: dict
    visible_president_hand: Optional[tuple]
    visible_chancellor_hand: Optional[tuple]
    known_deck_top: tuple
    own_pending_vote: int
    visible_events: tuple
    config: GameConfig


def role_knowledge(roles: tuple, seat: int) -> dict:
    """Initial role knowledge: fascists see the team, Hitler only in small games."""
    own = roles[seat]
    if own == Role.LIBERAL:
        return {seat: Role.LIBERAL}
    if own == Role.FASCIST:
        return {s: r for s, r in enumerate(roles) if r != Role.LIBERAL}
    if len(roles) <= 6:
        return {s: r for s, r in enumerate(roles) if r != Role.LIBERAL}
    return {seat: Role.HITLER}


def observe(state: GameState, seat: int) -> Observation:
    """Project the state onto `seat`, hiding everything that seat cannot see."""
    n = state.config.num_players
    if not 0 <= seat < n:
        raise ContractViolationError(f"seat {seat} out of range for {n} players")
    visible = tuple(e for e in state.events if e.visible_to < 0 or e.visible_to == seat)
    public_events = tuple(e for e in visible if e.visible_to < 0)
    private_cards = tuple(e for e in visible if e.visible_to == seat and e.kind in PRIVATE_CARD_KINDS)
    investigation_results = {
        e.target: e.party
        for e in visible
        if e.kind == EventKind.INVESTIGATION_RESULT and e.visible_to == seat
    }
    pres_hand = None
    if state.president_hand and seat == state.president:
        pres_hand = tuple(state.president_hand)
    chan_hand = None
    if state.chancellor_hand and (seat == state.chancellor or seat == state.president):
        # The president knows what it passed on.
        chan_hand = tuple(state.chancellor_hand)
    public = PublicState(
        num_players=n,
        liberal_enacted=state.liberal_enacted,
        fascist_enacted=state.fascist_enacted,
        election_tracker=state.tracker,
        president=state.president,
        chancellor=state.chancellor,
        last_president=state.last_president,
        last_chancellor=state.last_chancellor,
        alive=state.alive_seats(),
        votes_cast=tuple(v >= 0 for v in state.votes),
        vote_record=state.vote_record,
        phase=state.phase,
        pending_power=state.pending_power,
        deck_size=len(state.deck),
        discard_size=len(state.discard),
        investigated=tuple(s for s in range(n) if state.investigated_mask >> s & 1),
        veto_refused=state.veto_refused,
        special_return=state.special_return,
        elections_held=state.elections_held,
        public_events=public_events,
    )
    return Observation(
        seat=seat,
        own_role=state.roles[seat],
        known_roles=role_knowledge(state.roles, seat),
        public=public,
        private_card_events=private_cards,
        investigation_results=investigation_results,
        visible_president_hand=pres_hand,
        visible_chancellor_hand=chan_hand,
        known_deck_top=state.known_top.get(seat, ()),
        own_pending_vote=state.votes[seat],
        visible_events=visible,
        config=state.config,
    )


def card_census(state: GameState) -> tuple:
    """(fascist, liberal) card totals across deck, discard, hands, and board."""
    fas = state.fascist_enacted
    lib = state.liberal_enacted
    for pile in (state.deck, state.discard, state.president_hand, state.chancellor_hand):
        for card in pile:
            if card == Party.FASCIST:
                fas += 1
            else:
                lib += 1
    return fas, lib
