"""Decision agents: uniform random play and the policy-greedy baseline."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Protocol

from .engine import Observation
from .types import Action, ActionType, ContractViolationError


@dataclass(frozen=True)
class AgentSpec:
    """Agent kind plus the search parameters used when kind is "ismcts"."""

    kind: str
    iterations: int = 10000
    exploration: float = 0.7

    def __post_init__(self) -> None:
        if self.kind not in ("random", "selfish", "ismcts"):
            raise ValueError(f"unknown agent kind {self.kind!r}")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")

    @property
    def name(self) -> str:
        return self.kind

    @classmethod
    def parse(cls, text: str, iterations: int = 10000, exploration: float = 0.7) -> "AgentSpec":
        return cls(text.strip().lower(), iterations=iterations, exploration=exploration)


RANDOM = AgentSpec("random")
SELFISH = AgentSpec("selfish")


@dataclass(frozen=True)
class AgentContext:
    """Everything an agent may consult for one decision."""

    observation: Observation
    legal: tuple
    rng: random.Random


class Agent(Protocol):
    def choose(self, ctx: AgentContext) -> Action: ...


def random_choose(ctx: AgentContext) -> Action:
    """Uniform over the legal actions; happily plays self-losing moves."""
    legal = ctx.legal
    if not legal:
        raise ContractViolationError("no legal actions to choose from")
    return legal[int(ctx.rng.random() * len(legal))]


def selfish_choose(ctx: AgentContext) -> Action:
    """Enact own-party policies, discard opposing ones, otherwise play random.

    Priority: an enact action yielding the agent's own party beats a discard
    removing an opposing card, which beats uniform random play.  Equal-party
    hand positions are tie-broken uniformly.
    """
    legal = ctx.legal
    if not legal:
        raise ContractViolationError("no legal actions to choose from")
    obs = ctx.observation
    party = obs.own_role.party
    hand = obs.visible_chancellor_hand
    if hand is not None:
        enacts = [a for a in legal if a.type == ActionType.CHANCELLOR_ENACT and hand[a.target] == party]
        if enacts:
            return enacts[int(ctx.rng.random() * len(enacts))]
    hand = obs.visible_president_hand
    if hand is not None:
        discards = [
            a for a in legal if a.type == ActionType.PRESIDENT_DISCARD and hand[a.target] != party
        ]
        if discards:
            return discards[int(ctx.rng.random() * len(discards))]
    return legal[int(ctx.rng.random() * len(legal))]


class RandomAgent:
    spec = RANDOM

    def choose(self, ctx: AgentContext) -> Action:
        return random_choose(ctx)


class SelfishAgent:
    spec = SELFISH

    def choose(self, ctx: AgentContext) -> Action:
        return selfish_choose(ctx)


def make_agent(spec: AgentSpec, search_trace: Optional[Callable[[str], None]] = None) -> Agent:
    """Instantiate a fresh agent for one game."""
    if spec.kind == "random":
        return RandomAgent()
    if spec.kind == "selfish":
        return SelfishAgent()
    from .ismcts import ISMCTSAgent

    return ISMCTSAgent(spec.iterations, spec.exploration, trace=search_trace)
