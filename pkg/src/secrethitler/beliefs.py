"""Hidden-role candidate tracking and information-set determinization."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .board import HITLER_ZONE_THRESHOLD, DECK_FASCIST_CARDS, DECK_LIBERAL_CARDS, fascist_count
from .engine import GameState, Observation
from .types import ContractViolationError, EventKind, GameEvent, Party, Phase, Role


@dataclass(frozen=True)
class RoleFilter:
    """Role assignments still possible from one seat's point of view."""

    num_players: int
    seat: int
    candidates: tuple

    def __len__(self) -> int:
        return len(self.candidates)


def initial_role_filter(num_players: int, seat: int, known_roles: dict) -> RoleFilter:
    """Enumerate every Hitler/fascist placement consistent with known roles."""
    f = fascist_count(num_players)
    candidates = []
    for hitler in range(num_players):
        others = [s for s in range(num_players) if s != hitler]
        for fascists in combinations(others, f):
            roles = [Role.LIBERAL] * num_players
            roles[hitler] = Role.HITLER
            for s in fascists:
                roles[s] = Role.FASCIST
            cand = tuple(roles)
            if all(cand[s] == r for s, r in known_roles.items()):
                candidates.append(cand)
    if not candidates:
        raise ContractViolationError("known roles admit no assignment")
    return RoleFilter(num_players, seat, tuple(candidates))


def role_filter_from_observation(obs: Observation) -> RoleFilter:
    """Fresh filter folded over everything the seat has seen so far."""
    filt = initial_role_filter(obs.config.num_players, obs.seat, obs.known_roles)
    for event in obs.visible_events:
        filt = update_role_filter(filt, event)
    return filt


def update_role_filter(filt: RoleFilter, event: GameEvent) -> RoleFilter:
    """Prune candidates using one event; returns `filt` itself when nothing prunes.

    Implemented deductions:
    - a chancellor elected at three or more fascist policies who does not end
      the game cannot be Hitler (and ends it exactly when they are);
    - an executed player is Hitler exactly when the execution ends the game;
    - the seat's own investigation results pin the target's party.
    """
    kind = event.kind
    target = event.target
    if kind == EventKind.ELECTION:
        if not event.passed or event.fascist_enacted < HITLER_ZONE_THRESHOLD:
            return filt
        if event.ended_game:
            pred = lambda c: c[target] == Role.HITLER
        else:
            pred = lambda c: c[target] != Role.HITLER
    elif kind == EventKind.EXECUTION:
        if event.ended_game:
            pred = lambda c: c[target] == Role.HITLER
        else:
            pred = lambda c: c[target] != Role.HITLER
    elif kind == EventKind.INVESTIGATION_RESULT and event.visible_to == filt.seat:
        party = event.party
        pred = lambda c: c[target].party == party
    else:
        return filt
    kept = tuple(c for c in filt.candidates if pred(c))
    if len(kept) == len(filt.candidates):
        return filt
    if not kept:
        raise ContractViolationError("role filter emptied; event stream inconsistent")
    return RoleFilter(filt.num_players, filt.seat, kept)


def sample_determinization(obs: Observation, filt: RoleFilter, rng: random.Random) -> GameState:
    """Complete state consistent with everything the observing seat knows.

    Roles are drawn uniformly from the filter; the unseen card multiset is
    shuffled uniformly and dealt into hidden hands, deck, and discard pile of
    the publicly known sizes.  The observer's own hands and any still-valid
    deck peek are placed exactly.  Opponents' ballots from the round in
    progress are hidden information, so they are resampled uniformly.
    """
    pub = obs.public
    n = pub.num_players
    roles = filt.candidates[int(rng.random() * len(filt.candidates))]

    phase = pub.phase
    pres_size = 3 if phase == Phase.LEGISLATIVE_PRESIDENT else 0
    chan_size = 2 if phase in (Phase.LEGISLATIVE_CHANCELLOR, Phase.VETO_CONSENT) else 0
    pinned = obs.known_deck_top

    fas_left = DECK_FASCIST_CARDS - pub.fascist_enacted
    lib_left = DECK_LIBERAL_CARDS - pub.liberal_enacted
    pres_hand = list(obs.visible_president_hand) if obs.visible_president_hand else None
    chan_hand = list(obs.visible_chancellor_hand) if obs.visible_chancellor_hand else None
    for seen in (pres_hand or (), chan_hand or (), pinned):
        for card in seen:
            if card == Party.FASCIST:
                fas_left -= 1
            else:
                lib_left -= 1
    if fas_left < 0 or lib_left < 0:
        raise ContractViolationError("observation sees more cards than exist")

    pool = [Party.FASCIST] * fas_left + [Party.LIBERAL] * lib_left
    rng.shuffle(pool)
    idx = 0
    if pres_size and pres_hand is None:
        pres_hand = pool[idx : idx + pres_size]
        idx += pres_size
    if chan_size and chan_hand is None:
        chan_hand = pool[idx : idx + chan_size]
        idx += chan_size
    deck_fill = pub.deck_size - len(pinned)
    deck = pool[idx : idx + deck_fill]
    idx += deck_fill
    deck.extend(reversed(pinned))  # top of the deck sits at the end
    discard = pool[idx:]
    if deck_fill < 0 or len(discard) != pub.discard_size:
        raise ContractViolationError("observation card counts are inconsistent")

    seat = obs.seat
    votes = [-1] * n
    alive_mask = 0
    for s in pub.alive:
        alive_mask |= 1 << s
    for s in range(n):
        if s == seat:
            votes[s] = obs.own_pending_vote
        elif pub.votes_cast[s]:
            votes[s] = int(rng.random() * 2)
    investigated_mask = 0
    for s in pub.investigated:
        investigated_mask |= 1 << s

    state = GameState.__new__(GameState)
    state.config = obs.config
    state.roles = roles
    state.deck = deck
    state.discard = discard
    state.president_hand = pres_hand if pres_hand is not None else []
    state.chancellor_hand = chan_hand if chan_hand is not None else []
    state.liberal_enacted = pub.liberal_enacted
    state.fascist_enacted = pub.fascist_enacted
    state.tracker = pub.election_tracker
    state.president = pub.president
    state.chancellor = pub.chancellor
    state.last_president = pub.last_president
    state.last_chancellor = pub.last_chancellor
    state.alive_mask = alive_mask
    state.alive_count = len(pub.alive)
    state.phase = phase
    state.pending_power = pub.pending_power
    state.votes = votes
    state.vote_record = pub.vote_record
    state.special_next = None
    state.special_return = pub.special_return
    state.veto_refused = pub.veto_refused
    state.investigated_mask = investigated_mask
    state.known_top = {seat: pinned} if pinned else {}
    state.events = list(obs.visible_events)
    state.log_events = False
    state.outcome = None
    state.elections_held = pub.elections_held
    return state
