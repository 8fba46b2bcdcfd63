"""Role filtering and information-set determinization."""

import random
from collections import Counter

import pytest

from conftest import F, L, build_state, fixed_roles, random_playthrough
from secrethitler import (
    GameConfig,
    apply_action,
    card_census,
    initial_role_filter,
    legal_actions,
    new_game,
    observe,
    role_filter_from_observation,
    role_knowledge,
    sample_determinization,
    update_role_filter,
)
from secrethitler.counting import count_role_assignments
from secrethitler.types import (
    ContractViolationError,
    EventKind,
    GameEvent,
    Phase,
    Role,
    nominate,
    vote,
)

# Chi-square critical value for df=11 at significance 0.001.
CHI2_DF11_P001 = 31.264


def liberal_filter(num_players: int, seat: int = 0):
    return initial_role_filter(num_players, seat, {seat: Role.LIBERAL})


# ── filter construction ──────────────────────────────────────────────────────


def test_liberal_filter_size_five_players() -> None:
    """4 Hitler placements x 3 fascist placements around a known liberal."""
    assert len(liberal_filter(5)) == 12


def test_unconstrained_enumeration_matches_counting() -> None:
    for n in (5, 6, 7):
        filt = initial_role_filter(n, 0, {})
        assert len(filt) == count_role_assignments(n)


def test_fascist_filter_is_singleton_in_small_games() -> None:
    roles = fixed_roles(5, hitler=2, fascists=(4,))
    filt = initial_role_filter(5, 4, role_knowledge(roles, 4))
    assert filt.candidates == (roles,)


def test_hitler_filter_in_large_games() -> None:
    roles = fixed_roles(7, hitler=2, fascists=(5, 6))
    filt = initial_role_filter(7, 2, role_knowledge(roles, 2))
    assert len(filt) == 15  # choose 2 fascists among the 6 other seats
    assert all(c[2] == Role.HITLER for c in filt.candidates)


def test_every_candidate_satisfies_known_roles() -> None:
    roles = fixed_roles(9, hitler=1, fascists=(3, 5, 7))
    known = role_knowledge(roles, 3)
    filt = initial_role_filter(9, 3, known)
    for cand in filt.candidates:
        assert all(cand[s] == r for s, r in known.items())
    assert roles in filt.candidates


def test_contradictory_knowledge_raises() -> None:
    with pytest.raises(ContractViolationError):
        initial_role_filter(5, 0, {0: Role.HITLER, 1: Role.HITLER})


# ── event-driven pruning ─────────────────────────────────────────────────────


def test_safe_chancellor_cannot_be_hitler() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.ELECTION, actor=0, target=3, passed=True,
                      fascist_enacted=3, ended_game=False)
    pruned = update_role_filter(filt, event)
    assert len(pruned) == 9
    assert all(c[3] != Role.HITLER for c in pruned.candidates)


def test_game_ending_election_pins_hitler() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.ELECTION, actor=0, target=3, passed=True,
                      fascist_enacted=4, ended_game=True)
    pruned = update_role_filter(filt, event)
    assert all(c[3] == Role.HITLER for c in pruned.candidates)


def test_early_election_prunes_nothing() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.ELECTION, actor=0, target=3, passed=True,
                      fascist_enacted=2, ended_game=False)
    assert update_role_filter(filt, event) is filt
    failed = GameEvent(EventKind.ELECTION, actor=0, target=3, passed=False,
                       fascist_enacted=4)
    assert update_role_filter(filt, failed) is filt


def test_survived_execution_clears_hitler() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.EXECUTION, actor=0, target=2, ended_game=False)
    pruned = update_role_filter(filt, event)
    assert all(c[2] != Role.HITLER for c in pruned.candidates)


def test_own_investigation_pins_party() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.INVESTIGATION_RESULT, actor=0, target=2,
                      party=F, visible_to=0)
    pruned = update_role_filter(filt, event)
    assert all(c[2].party == F for c in pruned.candidates)


def test_others_investigations_are_opaque() -> None:
    filt = liberal_filter(5)
    event = GameEvent(EventKind.INVESTIGATION_RESULT, actor=1, target=2,
                      party=F, visible_to=1)
    assert update_role_filter(filt, event) is filt


def test_inconsistent_event_stream_raises() -> None:
    filt = liberal_filter(5)
    pin = GameEvent(EventKind.EXECUTION, actor=0, target=2, ended_game=True)
    filt = update_role_filter(filt, pin)
    clash = GameEvent(EventKind.EXECUTION, actor=0, target=2, ended_game=False)
    with pytest.raises(ContractViolationError):
        update_role_filter(filt, clash)


def test_filter_keeps_truth_through_random_games() -> None:
    """The true assignment survives every seat's filter, whole games long."""
    for seed in range(25):
        rng = random.Random(seed)
        state = new_game(GameConfig(5 + seed % 6), rng)
        n = state.config.num_players
        filters = [
            initial_role_filter(n, s, role_knowledge(state.roles, s)) for s in range(n)
        ]
        consumed = 0
        while state.outcome is None:
            _seat, legal = legal_actions(state)
            state = apply_action(state, legal[int(rng.random() * len(legal))], rng)
            for event in state.events[consumed:]:
                for s in range(n):
                    if event.visible_to < 0 or event.visible_to == s:
                        filters[s] = update_role_filter(filters[s], event)
            consumed = len(state.events)
            for s in range(n):
                assert state.roles in filters[s].candidates


# ── determinization ──────────────────────────────────────────────────────────


def test_sampled_roles_uniform_over_candidates() -> None:
    rng = random.Random(17)
    state = build_state(5, fixed_roles(5, hitler=1, fascists=(2,)), president=0)
    obs = observe(state, 0)  # liberal seat: 12 candidates
    filt = role_filter_from_observation(obs)
    assert len(filt) == 12
    draws = 12000
    counts = Counter(
        sample_determinization(obs, filt, rng).roles for _ in range(draws)
    )
    assert set(counts) == set(filt.candidates)
    expected = draws / 12
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < CHI2_DF11_P001


def test_determinization_matches_observation() -> None:
    """Replaying observe on samples reproduces the observation exactly."""
    rng = random.Random(23)
    srng = random.Random(40)
    phases_hit = set()
    for seed in range(10):
        grng = random.Random(seed)
        state = new_game(GameConfig(5 + seed % 6), grng)
        steps = 0
        while state.outcome is None and steps < 90:
            seat, legal = legal_actions(state)
            if steps % 5 == 0:
                obs = observe(state, seat)
                filt = role_filter_from_observation(obs)
                for _ in range(10):
                    d = sample_determinization(obs, filt, srng)
                    assert observe(d, seat) == obs
                    assert card_census(d) == (11, 6)
                phases_hit.add(state.phase)
            state = apply_action(state, legal[int(grng.random() * len(legal))], rng)
            steps += 1
    assert Phase.ELECTION in phases_hit and Phase.NOMINATION in phases_hit


def test_determinization_pins_own_peek() -> None:
    deck = [F] * 9 + [L] * 5 + [L, F, F]
    state = build_state(5, president=0, deck=deck)
    state.known_top = {0: (F, F, L)}
    obs = observe(state, 0)
    filt = role_filter_from_observation(obs)
    rng = random.Random(3)
    for _ in range(100):
        d = sample_determinization(obs, filt, rng)
        assert (d.deck[-1], d.deck[-2], d.deck[-3]) == (F, F, L)
        assert observe(d, 0).known_deck_top == (F, F, L)


def test_determinization_fills_hidden_hands_by_phase() -> None:
    rng = random.Random(8)
    state = build_state(5, president=0, chancellor=1,
                        phase=Phase.LEGISLATIVE_PRESIDENT, president_hand=(F, L, F))
    obs = observe(state, 3)  # bystander: hand hidden but size implied
    filt = role_filter_from_observation(obs)
    d = sample_determinization(obs, filt, rng)
    assert len(d.president_hand) == 3 and d.chancellor_hand == []
    assert observe(d, 3) == obs


def test_determinization_respects_own_hand() -> None:
    rng = random.Random(8)
    state = build_state(5, president=0, chancellor=1,
                        phase=Phase.LEGISLATIVE_CHANCELLOR, chancellor_hand=(L, F))
    for seat in (0, 1):  # president saw the pass, chancellor holds it
        obs = observe(state, seat)
        filt = role_filter_from_observation(obs)
        for _ in range(50):
            d = sample_determinization(obs, filt, rng)
            assert d.chancellor_hand == [L, F]


def test_determinization_in_veto_phase() -> None:
    rng = random.Random(8)
    state = build_state(5, president=0, chancellor=1, fascist=5,
                        phase=Phase.VETO_CONSENT, chancellor_hand=(F, F))
    obs = observe(state, 3)
    filt = role_filter_from_observation(obs)
    for _ in range(50):
        d = sample_determinization(obs, filt, rng)
        assert len(d.chancellor_hand) == 2
        assert observe(d, 3) == obs


def test_determinization_resamples_hidden_ballots() -> None:
    rng = random.Random(8)
    state = build_state(5, president=0)
    state = apply_action(state, nominate(1), rng)
    state = apply_action(state, vote(True), rng)
    state = apply_action(state, vote(True), rng)
    obs = observe(state, 4)
    filt = role_filter_from_observation(obs)
    seen = set()
    for _ in range(60):
        d = sample_determinization(obs, filt, rng)
        assert d.votes[4] == -1  # own pending ballot stays pending
        assert d.votes[2] == -1 and d.votes[3] == -1
        seen.add((d.votes[0], d.votes[1]))
        assert observe(d, 4) == obs
    assert len(seen) == 4  # both hidden ballots vary across samples


def test_census_overflow_rejected() -> None:
    import dataclasses

    state = build_state(5, president=0, chancellor=1,
                        phase=Phase.LEGISLATIVE_CHANCELLOR, chancellor_hand=(L, L))
    obs = observe(state, 1)
    bad = dataclasses.replace(obs, visible_chancellor_hand=(L,) * 9)
    filt = role_filter_from_observation(obs)
    with pytest.raises(ContractViolationError):
        sample_determinization(bad, filt, random.Random(0))


def test_filter_from_observation_folds_history() -> None:
    state = random_playthrough(41)
    n = state.config.num_players
    winner_events = [e for e in state.events if e.kind == EventKind.EXECUTION]
    for seat in range(n):
        if not state.is_alive(seat):
            continue
        obs = observe(state, seat)
        filt = role_filter_from_observation(obs)
        assert state.roles in filt.candidates
        for event in winner_events:
            if not event.ended_game:
                assert all(c[event.target] != Role.HITLER for c in filt.candidates)
