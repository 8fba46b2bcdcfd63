"""Core domain types shared by the rules engine, agents, and harness."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Optional


class GameError(Exception):
    """Base class for rule and contract violations."""


class IllegalActionError(GameError):
    """An action was applied that is not legal in the current state."""


class ContractViolationError(GameError):
    """An operation was invoked outside its preconditions."""


class Party(IntEnum):
    """Policy card colour, doubling as the team a seat wins with."""

    LIBERAL = 0
    FASCIST = 1

    @property
    def other(self) -> Party:
        return Party.FASCIST if self is Party.LIBERAL else Party.LIBERAL

    @property
    def label(self) -> str:
        return "Liberal" if self is Party.LIBERAL else "Fascist"


class Role(IntEnum):
    LIBERAL = 0
    FASCIST = 1
    HITLER = 2

    @property
    def party(self) -> Party:
        # Hitler wins with the Fascists.
        return Party.LIBERAL if self is Role.LIBERAL else Party.FASCIST

    @property
    def label(self) -> str:
        return "Hitler" if self is Role.HITLER else Party(self.party).label


def party_of(role: Role) -> Party:
    return role.party


class Power(IntEnum):
    """Presidential powers unlocked by slots on the fascist track."""

    INVESTIGATE_LOYALTY = 0
    SPECIAL_ELECTION = 1
    POLICY_PEEK = 2
    EXECUTION = 3
    VETO = 4


class Phase(IntEnum):
    NOMINATION = 0
    ELECTION = 1
    LEGISLATIVE_PRESIDENT = 2
    LEGISLATIVE_CHANCELLOR = 3
    EXECUTIVE_ACTION = 4
    VETO_CONSENT = 5
    GAME_OVER = 6


class WinReason(IntEnum):
    HITLER_ELECTED = 0
    SIX_FASCIST_POLICIES = 1
    FIVE_LIBERAL_POLICIES = 2
    HITLER_KILLED = 3

    @property
    def label(self) -> str:
        return _REASON_LABELS[self]


_REASON_LABELS = {
    WinReason.HITLER_ELECTED: "Hitler elected chancellor",
    WinReason.SIX_FASCIST_POLICIES: "six fascist policies",
    WinReason.FIVE_LIBERAL_POLICIES: "five liberal policies",
    WinReason.HITLER_KILLED: "Hitler killed",
}

_FASCIST_REASONS = frozenset({WinReason.HITLER_ELECTED, WinReason.SIX_FASCIST_POLICIES})


@dataclass(frozen=True)
class Outcome:
    """Terminal result; the winning team is implied by the reason."""

    winning_team: Party
    reason: WinReason

    @classmethod
    def from_reason(cls, reason: WinReason) -> Outcome:
        team = Party.FASCIST if reason in _FASCIST_REASONS else Party.LIBERAL
        return cls(team, reason)


@dataclass(frozen=True)
class GameConfig:
    """Game-level settings; both rule flags default to the official rules."""

    num_players: int
    term_limits_enabled: bool = True
    investigate_once_per_target: bool = True

    def __post_init__(self) -> None:
        if not 5 <= self.num_players <= 10:
            raise ValueError(f"player count must be 5..10, got {self.num_players}")


class ActionType(IntEnum):
    NOMINATE = 0
    VOTE = 1
    PRESIDENT_DISCARD = 2
    CHANCELLOR_ENACT = 3
    INVESTIGATE = 4
    SPECIAL_ELECTION = 5
    ACKNOWLEDGE_PEEK = 6
    EXECUTE = 7
    PROPOSE_VETO = 8
    VETO_DECISION = 9


class Action(NamedTuple):
    """One move; `target` is a seat, a hand position, or a 0/1 flag."""

    type: ActionType
    target: int = 0

    def describe(self) -> str:
        t = self.type
        if t is ActionType.NOMINATE:
            return f"nominate seat {self.target}"
        if t is ActionType.VOTE:
            return "vote ja" if self.target else "vote nein"
        if t is ActionType.PRESIDENT_DISCARD:
            return f"discard card {self.target}"
        if t is ActionType.CHANCELLOR_ENACT:
            return f"enact card {self.target}"
        if t is ActionType.INVESTIGATE:
            return f"investigate seat {self.target}"
        if t is ActionType.SPECIAL_ELECTION:
            return f"call special election for seat {self.target}"
        if t is ActionType.ACKNOWLEDGE_PEEK:
            return "peek at top of deck"
        if t is ActionType.EXECUTE:
            return f"execute seat {self.target}"
        if t is ActionType.PROPOSE_VETO:
            return "propose veto"
        return "agree to veto" if self.target else "refuse veto"


MAX_PLAYERS = 10

# Interned action instances so the hot paths never allocate.
VOTE_JA = Action(ActionType.VOTE, 1)
VOTE_NEIN = Action(ActionType.VOTE, 0)
ACKNOWLEDGE_PEEK = Action(ActionType.ACKNOWLEDGE_PEEK, 0)
PROPOSE_VETO = Action(ActionType.PROPOSE_VETO, 0)
VETO_AGREE = Action(ActionType.VETO_DECISION, 1)
VETO_REFUSE = Action(ActionType.VETO_DECISION, 0)

VOTE_ACTIONS = (VOTE_JA, VOTE_NEIN)
PRESIDENT_DISCARD_ACTIONS = tuple(Action(ActionType.PRESIDENT_DISCARD, i) for i in range(3))
CHANCELLOR_ENACT_ACTIONS = tuple(Action(ActionType.CHANCELLOR_ENACT, i) for i in range(2))
CHANCELLOR_ACTIONS_WITH_VETO = CHANCELLOR_ENACT_ACTIONS + (PROPOSE_VETO,)
VETO_DECISION_ACTIONS = (VETO_AGREE, VETO_REFUSE)

_NOMINATE = tuple(Action(ActionType.NOMINATE, s) for s in range(MAX_PLAYERS))
_INVESTIGATE = tuple(Action(ActionType.INVESTIGATE, s) for s in range(MAX_PLAYERS))
_SPECIAL_ELECTION = tuple(Action(ActionType.SPECIAL_ELECTION, s) for s in range(MAX_PLAYERS))
_EXECUTE = tuple(Action(ActionType.EXECUTE, s) for s in range(MAX_PLAYERS))


def nominate(seat: int) -> Action:
    return _NOMINATE[seat]


def vote(ja: bool) -> Action:
    return VOTE_JA if ja else VOTE_NEIN


def president_discard(position: int) -> Action:
    return PRESIDENT_DISCARD_ACTIONS[position]


def chancellor_enact(position: int) -> Action:
    return CHANCELLOR_ENACT_ACTIONS[position]


def investigate(seat: int) -> Action:
    return _INVESTIGATE[seat]


def special_election(seat: int) -> Action:
    return _SPECIAL_ELECTION[seat]


def execute(seat: int) -> Action:
    return _EXECUTE[seat]


def veto_decision(agree: bool) -> Action:
    return VETO_AGREE if agree else VETO_REFUSE


class EventKind(IntEnum):
    NOMINATION = 0
    ELECTION = 1
    POLICY = 2
    RESHUFFLE = 3
    DRAW = 4
    PASS = 5
    RECEIVE = 6
    INVESTIGATION = 7
    INVESTIGATION_RESULT = 8
    SPECIAL_ELECTION = 9
    POLICY_PEEK = 10
    PEEK_RESULT = 11
    EXECUTION = 12
    VETO_PROPOSED = 13
    VETO_ACCEPTED = 14
    VETO_REFUSED = 15
    GAME_OVER = 16


# Event kinds whose payload is card parties private to one seat.
PRIVATE_CARD_KINDS = frozenset(
    {EventKind.DRAW, EventKind.PASS, EventKind.RECEIVE, EventKind.PEEK_RESULT}
)


@dataclass(frozen=True)
class GameEvent:
    """One entry of the game log.

    `visible_to` is -1 for public events, otherwise the only seat that sees
    the entry.  `ended_game` on ELECTION marks Hitler being elected and on
    EXECUTION marks Hitler being shot; both facts are public either way.
    """

    kind: EventKind
    actor: int = -1
    target: int = -1
    party: Optional[Party] = None
    cards: tuple = ()
    votes: tuple = ()
    passed: Optional[bool] = None
    fascist_enacted: int = -1
    by_chaos: bool = False
    ended_game: bool = False
    reason: Optional[WinReason] = None
    visible_to: int = -1

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.name}
        if self.actor >= 0:
            out["actor"] = self.actor
        if self.target >= 0:
            out["target"] = self.target
        if self.party is not None:
            out["party"] = self.party.name
        if self.cards:
            out["cards"] = [Party(c).name for c in self.cards]
        if self.votes:
            out["votes"] = list(self.votes)
        if self.passed is not None:
            out["passed"] = self.passed
        if self.fascist_enacted >= 0:
            out["fascist_enacted"] = self.fascist_enacted
        if self.by_chaos:
            out["by_chaos"] = True
        if self.ended_game:
            out["ended_game"] = True
        if self.reason is not None:
            out["reason"] = self.reason.name
        if self.visible_to >= 0:
            out["visible_to"] = self.visible_to
        return out
