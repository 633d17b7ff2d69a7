"""Game trees with information sets, and recall classification.

A game structure is a rooted tree of chance, player, and leaf nodes.
Player nodes are grouped into information sets; every node of an
information set offers the same ordered action list, and action labels
are globally unique, so a history (the sequence of action labels on the
root path) determines which information sets were visited.

A game adds exact-rational chance distributions and leaf payoffs on top
of a structure.  All arithmetic in this package is `fractions.Fraction`;
no floats appear in any result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional

MAX = "max"
MIN = "min"

Action = str
NodeId = int


class GameError(Exception):
    """Raised when an operation is applied outside its domain."""


class SizeLimitError(GameError):
    """Raised when a guarded operation would exceed its size bound."""


@dataclass(frozen=True)
class InformationSet:
    id: str
    owner: str
    actions: tuple[Action, ...]

    def __post_init__(self) -> None:
        if not self.actions:
            raise GameError(f"information set {self.id!r} has no actions")
        if self.owner not in (MAX, MIN):
            raise GameError(f"information set {self.id!r} has unknown owner {self.owner!r}")


@dataclass(frozen=True)
class ChanceNode:
    children: tuple[NodeId, ...]


@dataclass(frozen=True)
class PlayerNode:
    infoset: str
    children: tuple[tuple[Action, NodeId], ...]  # (action, child) in action order


@dataclass(frozen=True)
class Leaf:
    pass


Node = ChanceNode | PlayerNode | Leaf


class RecallClass(enum.Enum):
    PFR = "pfr"
    ALR_NOT_PFR = "alr"
    NAM_NOT_ALR = "nam"
    ABSENTMINDED = "absentminded"

    @property
    def is_alr(self) -> bool:
        return self in (RecallClass.PFR, RecallClass.ALR_NOT_PFR)

    @property
    def is_nam(self) -> bool:
        return self is not RecallClass.ABSENTMINDED


@dataclass(frozen=True)
class GameStructure:
    """Immutable game tree.  Nodes live in `nodes`, keyed by integer id."""

    root: NodeId
    nodes: dict[NodeId, Node]
    infosets: tuple[InformationSet, ...]

    @cached_property
    def infoset_by_id(self) -> dict[str, InformationSet]:
        return {i.id: i for i in self.infosets}

    @cached_property
    def infoset_of_action(self) -> dict[Action, str]:
        out: dict[Action, str] = {}
        for i in self.infosets:
            for a in i.actions:
                out[a] = i.id
        return out

    @cached_property
    def infoset_index(self) -> dict[str, int]:
        return {i.id: k for k, i in enumerate(self.infosets)}

    @cached_property
    def parent_edge(self) -> dict[NodeId, tuple[NodeId, Optional[Action]]]:
        """Child id -> (parent id, action label or None for chance edges)."""
        out: dict[NodeId, tuple[NodeId, Optional[Action]]] = {}
        for nid, node in self.nodes.items():
            if isinstance(node, ChanceNode):
                for c in node.children:
                    out[c] = (nid, None)
            elif isinstance(node, PlayerNode):
                for a, c in node.children:
                    out[c] = (nid, a)
        return out

    def leaves(self) -> list[NodeId]:
        return [nid for nid in self.preorder() if isinstance(self.nodes[nid], Leaf)]

    def preorder(self) -> Iterator[NodeId]:
        stack = [self.root]
        while stack:
            nid = stack.pop()
            yield nid
            node = self.nodes[nid]
            if isinstance(node, ChanceNode):
                stack.extend(reversed(node.children))
            elif isinstance(node, PlayerNode):
                stack.extend(c for _, c in reversed(node.children))

    def members(self, infoset_id: str) -> list[NodeId]:
        return [
            nid
            for nid in self.preorder()
            if isinstance(self.nodes[nid], PlayerNode) and self.nodes[nid].infoset == infoset_id
        ]

    def owner_of_node(self, nid: NodeId) -> Optional[str]:
        node = self.nodes[nid]
        if isinstance(node, PlayerNode):
            return self.infoset_by_id[node.infoset].owner
        return None

    def players(self) -> tuple[str, ...]:
        seen = []
        for i in self.infosets:
            if i.owner not in seen:
                seen.append(i.owner)
        return tuple(seen)


@dataclass(frozen=True)
class Game:
    structure: GameStructure
    chance: dict[NodeId, tuple[Fraction, ...]]  # one weight per child, sums to 1
    utility: dict[NodeId, Fraction]  # one payoff per leaf

    def chance_weight(self, leaf: NodeId) -> Fraction:
        """Product of chance probabilities on the root path to `leaf`."""
        w = Fraction(1)
        s = self.structure
        nid = leaf
        while nid != s.root:
            parent, _ = s.parent_edge[nid]
            pnode = s.nodes[parent]
            if isinstance(pnode, ChanceNode):
                w *= self.chance[parent][pnode.children.index(nid)]
            nid = parent
        return w


def validate(structure: GameStructure) -> list[str]:
    """Check every structural invariant; returns human-readable violations.

    An empty list means the structure is valid.  Violations are data, not
    exceptions, so callers can report all problems at once.
    """
    out: list[str] = []
    ids = [i.id for i in structure.infosets]
    for iid in sorted({i for i in ids if ids.count(i) > 1}):
        out.append(f"duplicate information set id {iid!r}")

    seen_action: dict[Action, str] = {}
    for i in structure.infosets:
        for a in i.actions:
            if a in seen_action:
                out.append(f"action {a!r} appears in both {seen_action[a]!r} and {i.id!r}")
            else:
                seen_action[a] = i.id
        if len(set(i.actions)) != len(i.actions):
            out.append(f"information set {i.id!r} repeats an action label")

    if structure.root not in structure.nodes:
        out.append(f"root id {structure.root} is not a node")
        return out

    # The edge relation must induce a tree rooted at root.
    seen_child: set[NodeId] = set()
    reached: set[NodeId] = set()
    stack = [structure.root]
    while stack:
        nid = stack.pop()
        if nid in reached:
            out.append(f"node {nid} is reached twice (edge relation is not a tree)")
            continue
        reached.add(nid)
        node = structure.nodes.get(nid)
        if node is None:
            out.append(f"edge points to missing node {nid}")
            continue
        if isinstance(node, ChanceNode):
            if not node.children:
                out.append(f"chance node {nid} has no children")
            kids = list(node.children)
        elif isinstance(node, PlayerNode):
            info = structure.infoset_by_id.get(node.infoset)
            if info is None:
                out.append(f"node {nid} references unknown information set {node.infoset!r}")
                kids = [c for _, c in node.children]
            else:
                if tuple(a for a, _ in node.children) != info.actions:
                    out.append(
                        f"node {nid} actions differ from information set {info.id!r}"
                    )
                kids = [c for _, c in node.children]
        else:
            kids = []
        for c in kids:
            if c in seen_child:
                out.append(f"node {c} has two parents")
            seen_child.add(c)
            stack.append(c)

    for nid in structure.nodes:
        if nid not in reached:
            out.append(f"node {nid} is unreachable from the root")
    if structure.root in seen_child:
        out.append("root node has an incoming edge")
    return out


def validate_game(game: Game) -> list[str]:
    """Structure invariants plus chance/payoff bookkeeping."""
    out = validate(game.structure)
    for nid, node in game.structure.nodes.items():
        if isinstance(node, ChanceNode):
            probs = game.chance.get(nid)
            if probs is None:
                out.append(f"chance node {nid} has no distribution")
                continue
            if len(probs) != len(node.children):
                out.append(f"chance node {nid} distribution arity mismatch")
            elif any(p < 0 for p in probs):
                out.append(f"chance node {nid} has a negative probability")
            elif sum(probs) != 1:
                out.append(f"chance node {nid} probabilities sum to {sum(probs)}, not 1")
        elif isinstance(node, Leaf):
            if nid not in game.utility:
                out.append(f"leaf {nid} has no payoff")
    return out


def history(
    structure: GameStructure, node: NodeId, player: Optional[str] = None
) -> tuple[Action, ...]:
    """Action labels on the root path to `node`, chance edges skipped.

    With `player`, only that player's actions are kept.
    """
    if node not in structure.nodes:
        raise GameError(f"unknown node id {node}")
    rev: list[Action] = []
    nid = node
    while nid != structure.root:
        parent, action = structure.parent_edge[nid]
        if action is not None:
            if player is None or structure.owner_of_node(parent) == player:
                rev.append(action)
        nid = parent
    return tuple(reversed(rev))


def classify_recall(structure: GameStructure, player: str) -> RecallClass:
    """Finest recall class of `player` in `structure`.

    Absentmindedness wins over everything: a node sharing an information
    set with a strict ancestor.  Otherwise perfect recall means one
    history per information set, and A-loss recall means any two
    histories at a set first diverge with two distinct actions of a
    common earlier information set.
    """
    problems = validate(structure)
    if problems:
        raise GameError("invalid structure: " + "; ".join(problems))

    own = [i for i in structure.infosets if i.owner == player]
    own_ids = {i.id for i in own}

    # Absentmindedness: walk every root path with the set of visited infosets.
    def absent(nid: NodeId, seen: frozenset[str]) -> bool:
        node = structure.nodes[nid]
        if isinstance(node, Leaf):
            return False
        if isinstance(node, ChanceNode):
            return any(absent(c, seen) for c in node.children)
        here = node.infoset
        if here in own_ids and here in seen:
            return True
        seen2 = seen | {here} if here in own_ids else seen
        return any(absent(c, seen2) for _, c in node.children)

    if absent(structure.root, frozenset()):
        return RecallClass.ABSENTMINDED

    hist_sets: dict[str, list[tuple[Action, ...]]] = {i.id: [] for i in own}
    for nid in structure.preorder():
        node = structure.nodes[nid]
        if isinstance(node, PlayerNode) and node.infoset in own_ids:
            h = history(structure, nid, player)
            if h not in hist_sets[node.infoset]:
                hist_sets[node.infoset].append(h)

    if all(len(hs) <= 1 for hs in hist_sets.values()):
        return RecallClass.PFR

    act_to_info = structure.infoset_of_action
    for hs in hist_sets.values():
        for i in range(len(hs)):
            for j in range(i + 1, len(hs)):
                h, g = hs[i], hs[j]
                k = 0
                while k < len(h) and k < len(g) and h[k] == g[k]:
                    k += 1
                if k >= len(h) or k >= len(g):
                    return RecallClass.NAM_NOT_ALR  # one is a prefix of the other
                if act_to_info[h[k]] != act_to_info[g[k]]:
                    return RecallClass.NAM_NOT_ALR
    return RecallClass.ALR_NOT_PFR


def normalize_chance(game: Game) -> Game:
    """Absorb chance children of chance nodes into the parent distribution.

    The result has no chance-to-chance edge and the same chance weight at
    every leaf, hence the same payoff polynomial.
    """
    s = game.structure
    chance: dict[NodeId, tuple[Fraction, ...]] = dict(game.chance)
    nodes: dict[NodeId, Node] = dict(s.nodes)

    def flatten(nid: NodeId) -> list[tuple[Fraction, NodeId]]:
        node = nodes[nid]
        assert isinstance(node, ChanceNode)
        out: list[tuple[Fraction, NodeId]] = []
        for p, c in zip(chance[nid], node.children):
            if isinstance(nodes[c], ChanceNode):
                out.extend((p * q, gc) for q, gc in flatten(c))
            else:
                out.append((p, c))
        return out

    changed = False
    for nid in list(s.preorder()):
        node = nodes.get(nid)
        if node is None:
            continue  # absorbed by an ancestor already
        if isinstance(node, ChanceNode) and any(
            isinstance(nodes[c], ChanceNode) for c in node.children
        ):
            flat = flatten(nid)
            dropped = set(node.children) - {c for _, c in flat}
            nodes[nid] = ChanceNode(tuple(c for _, c in flat))
            chance[nid] = tuple(p for p, _ in flat)
            for d in dropped | {
                c for c in node.children if isinstance(nodes[c], ChanceNode)
            }:
                nodes.pop(d, None)
                chance.pop(d, None)
            changed = True
    if not changed:
        return game
    reachable = set()
    stack = [s.root]
    while stack:
        nid = stack.pop()
        reachable.add(nid)
        node = nodes[nid]
        if isinstance(node, ChanceNode):
            stack.extend(node.children)
        elif isinstance(node, PlayerNode):
            stack.extend(c for _, c in node.children)
    nodes = {nid: n for nid, n in nodes.items() if nid in reachable}
    chance = {nid: p for nid, p in chance.items() if nid in reachable}
    structure = GameStructure(root=s.root, nodes=nodes, infosets=s.infosets)
    utility = {nid: u for nid, u in game.utility.items() if nid in reachable}
    return Game(structure=structure, chance=chance, utility=utility)
