"""Exact maxmin for one-player games.

Three routes, all exact:

* brute force over pure strategies (the reference oracle; one-player
  non-absentminded games always have a pure optimum);
* a polynomial route for A-loss recall: split every information set by
  the player's own history, which yields perfect recall, then run a
  dynamic program over history prefixes and project the choices back;
* the span pipeline for everything else: minimal span, payoff transfer,
  then the A-loss-recall route on the transformed game.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (
    Action,
    MAX,
    SizeLimitError,
    ChanceNode,
    Game,
    GameError,
    GameStructure,
    InformationSet,
    Leaf,
    Node,
    NodeId,
    PlayerNode,
    RecallClass,
    classify_recall,
    history,
)
from .seqsets import extract_histories
from .span import minimal_span
from .transform import transfer_payoffs

DEFAULT_MAX_PURE = 2**20
MAX_PURE_ENV = "RECALL_FORGE_MAX_PURE"


@dataclass(frozen=True)
class PureStrategy:
    choice: dict[str, Action]  # infoset id -> action


@dataclass(frozen=True)
class SolveResult:
    value: Fraction
    strategy: PureStrategy
    method: str  # bruteforce | refinement | span-pipeline


def _pure_strategy_limit() -> int:
    raw = os.environ.get(MAX_PURE_ENV)
    return int(raw) if raw else DEFAULT_MAX_PURE


def _require_one_player_nam(game: Game) -> str:
    players = game.structure.players()
    if len(players) > 1:
        raise GameError("solver expects a one-player (plus chance) game")
    player = players[0] if players else MAX  # chance-only games are fine
    if classify_recall(game.structure, player) is RecallClass.ABSENTMINDED:
        raise GameError("absentminded inputs are not supported")
    return player


def expected_payoff(game: Game, strategy: PureStrategy) -> Fraction:
    """Exact expected payoff of a pure strategy."""

    def walk(nid: NodeId) -> Fraction:
        node = game.structure.nodes[nid]
        if isinstance(node, Leaf):
            return game.utility[nid]
        if isinstance(node, ChanceNode):
            return sum(
                (p * walk(c) for p, c in zip(game.chance[nid], node.children)),
                Fraction(0),
            )
        chosen = strategy.choice[node.infoset]
        for a, c in node.children:
            if a == chosen:
                return walk(c)
        raise GameError(f"strategy picks {chosen!r}, not available at {node.infoset!r}")

    return walk(game.structure.root)


def solve_bruteforce(game: Game) -> SolveResult:
    """Maximum over all pure strategies, enumerated lexicographically in
    declaration order; the first maximizer wins ties."""
    _require_one_player_nam(game)
    infosets = game.structure.infosets
    count = 1
    for i in infosets:
        count *= len(i.actions)
    limit = _pure_strategy_limit()
    if count > limit:
        raise SizeLimitError(f"{count} pure strategies exceed the guard ({limit})")

    best: Optional[tuple[Fraction, PureStrategy]] = None
    for combo in itertools.product(*(i.actions for i in infosets)):
        strat = PureStrategy({i.id: a for i, a in zip(infosets, combo)})
        value = expected_payoff(game, strat)
        if best is None or value > best[0]:
            best = (value, strat)
    assert best is not None
    return SolveResult(value=best[0], strategy=best[1], method="bruteforce")


def refine_alr(structure: GameStructure) -> tuple[GameStructure, dict[str, str]]:
    """Split every information set by the player's own history.

    For A-loss recall this refinement is lossless under pure strategies:
    two histories at a set diverge at an earlier own set, so a pure
    strategy can only reach one of them.  The output has perfect recall.
    Action labels gain a class suffix to stay globally unique; the
    returned map sends refined infoset ids back to the originals.
    """
    players = structure.players()
    if len(players) > 1:
        raise GameError("refinement expects a one-player structure")
    player = players[0] if players else MAX
    if classify_recall(structure, player) not in (RecallClass.PFR, RecallClass.ALR_NOT_PFR):
        raise GameError("refinement needs an A-loss-recall input")

    # class index per (infoset, own history), in preorder discovery order
    classes: dict[tuple[str, tuple[Action, ...]], int] = {}
    node_class: dict[NodeId, int] = {}
    counts: dict[str, int] = {}
    for nid in structure.preorder():
        node = structure.nodes[nid]
        if not isinstance(node, PlayerNode):
            continue
        h = history(structure, nid, player)
        key = (node.infoset, h)
        if key not in classes:
            classes[key] = counts.get(node.infoset, 0)
            counts[node.infoset] = classes[key] + 1
        node_class[nid] = classes[key]

    def refined_id(iid: str, k: int) -> str:
        return iid if counts.get(iid, 1) == 1 else f"{iid}#{k}"

    def refined_action(a: Action, iid: str, k: int) -> Action:
        return a if counts.get(iid, 1) == 1 else f"{a}#{k}"

    new_infosets: list[InformationSet] = []
    back: dict[str, str] = {}
    for info in structure.infosets:
        for k in range(counts.get(info.id, 1)):
            rid = refined_id(info.id, k)
            back[rid] = info.id
            new_infosets.append(
                InformationSet(
                    id=rid,
                    owner=info.owner,
                    actions=tuple(refined_action(a, info.id, k) for a in info.actions),
                )
            )

    new_nodes: dict[NodeId, Node] = {}
    for nid, node in structure.nodes.items():
        if isinstance(node, PlayerNode):
            k = node_class[nid]
            new_nodes[nid] = PlayerNode(
                infoset=refined_id(node.infoset, k),
                children=tuple(
                    (refined_action(a, node.infoset, k), c) for a, c in node.children
                ),
            )
        else:
            new_nodes[nid] = node

    refined = GameStructure(
        root=structure.root, nodes=new_nodes, infosets=tuple(new_infosets)
    )
    return refined, back


def _solve_pfr(game: Game, player: str) -> tuple[Fraction, PureStrategy]:
    """Dynamic program over own-history prefixes of a perfect-recall game.

    With perfect recall each information set branches at exactly one
    prefix, so per-set choices decouple: the value of a prefix is its own
    leaf weight plus, for every set branching there, the best action's
    continuation value.
    """
    s = game.structure
    leaf_weight: dict[tuple[Action, ...], Fraction] = {}
    prefixes: set[tuple[Action, ...]] = {()}
    branching: dict[tuple[Action, ...], list[InformationSet]] = {}
    act_info = {a: i for i in s.infosets for a in i.actions}

    for leaf in s.preorder():
        if not isinstance(s.nodes[leaf], Leaf):
            continue
        h = history(s, leaf, player)
        leaf_weight[h] = leaf_weight.get(h, Fraction(0)) + game.chance_weight(leaf) * game.utility[leaf]
        for k in range(1, len(h) + 1):
            prefixes.add(h[:k])
    for p in prefixes:
        if p:
            info = act_info[p[-1]]
            lst = branching.setdefault(p[:-1], [])
            if info not in lst:
                lst.append(info)

    index = {i.id: k for k, i in enumerate(s.infosets)}
    choice: dict[str, Action] = {}

    def value(prefix: tuple[Action, ...]) -> Fraction:
        total = leaf_weight.get(prefix, Fraction(0))
        for info in sorted(branching.get(prefix, []), key=lambda i: index[i.id]):
            best_v: Optional[Fraction] = None
            best_a: Optional[Action] = None
            for a in info.actions:
                nxt = prefix + (a,)
                if nxt not in prefixes:
                    continue
                v = value(nxt)
                if best_v is None or v > best_v:
                    best_v, best_a = v, a
            assert best_a is not None
            choice[info.id] = best_a
            total += best_v
        return total

    total = value(())
    for info in s.infosets:
        choice.setdefault(info.id, info.actions[0])
    return total, PureStrategy(choice)


def _reachable_infosets(game: Game, strategy: PureStrategy) -> set[str]:
    out: set[str] = set()
    stack = [game.structure.root]
    while stack:
        nid = stack.pop()
        node = game.structure.nodes[nid]
        if isinstance(node, ChanceNode):
            stack.extend(node.children)
        elif isinstance(node, PlayerNode):
            out.add(node.infoset)
            chosen = strategy.choice[node.infoset]
            for a, c in node.children:
                if a == chosen:
                    stack.append(c)
    return out


def solve_alr(game: Game) -> SolveResult:
    """Polynomial route for perfect- or A-loss-recall one-player games."""
    player = _require_one_player_nam(game)
    if classify_recall(game.structure, player) not in (
        RecallClass.PFR,
        RecallClass.ALR_NOT_PFR,
    ):
        raise GameError("input does not have A-loss recall")
    refined, back = refine_alr(game.structure)
    refined_game = Game(structure=refined, chance=game.chance, utility=game.utility)
    value, refined_strat = _solve_pfr(refined_game, player)

    # Project back: per original infoset, keep the choice of the unique
    # reachable refined class; untouched infosets default to first action.
    reachable = _reachable_infosets(refined_game, refined_strat)
    choice: dict[str, Action] = {}
    for info in game.structure.infosets:
        live = [rid for rid in refined_strat.choice if back[rid] == info.id and rid in reachable]
        assert len(live) <= 1, f"two live classes for {info.id!r}"
        if live:
            refined_info = refined.infoset_by_id[live[0]]
            picked = refined_strat.choice[live[0]]
            choice[info.id] = info.actions[refined_info.actions.index(picked)]
        else:
            choice[info.id] = info.actions[0]
    return SolveResult(value=value, strategy=PureStrategy(choice), method="refinement")


def solve(game: Game, method: str = "auto") -> SolveResult:
    """Dispatch: `bruteforce`, `span`, or `auto` (A-loss recall when the
    structure already has it, otherwise the span pipeline)."""
    player = _require_one_player_nam(game)
    if method == "bruteforce":
        return solve_bruteforce(game)
    recall = classify_recall(game.structure, player)
    if method == "auto" and recall.is_alr:
        return solve_alr(game)
    if method not in ("auto", "span"):
        raise GameError(f"unknown method {method!r}")

    certificate = minimal_span(extract_histories(game.structure))
    transformed = transfer_payoffs(game, certificate)
    inner = solve_alr(transformed.game)

    # Pull the strategy back by infoset identity; the span keeps original
    # infoset ids, so shared sets keep their chosen action.
    choice: dict[str, Action] = {}
    for info in game.structure.infosets:
        choice[info.id] = inner.strategy.choice.get(info.id, info.actions[0])
    return SolveResult(value=inner.value, strategy=PureStrategy(choice), method="span-pipeline")
