"""Game families for tests and benchmarks.

The pennies family: a fair n-faced die, then Alice picks a coin side,
then Bob; the team scores 1 when the sides match on an even die outcome
or differ on an odd one.  The three variants only differ in what the
team observes, and form an information-refinement chain:

* variant I   - Alice and Bob observe nothing (one set each);
* variant II  - Alice pools die outcomes {2i, 2i+1}, Bob observes nothing;
* variant III - Alice as in II, Bob sees Alice's coin and nothing else.

The lower-bound family is a sequence set over n binary infosets whose
smallest A-loss-recall span doubles with every extra infoset.

Random games are seeded and reproducible; information sets merge only
player nodes at the same depth with the same arity, which rules out
absentmindedness by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    Action,
    ChanceNode,
    Game,
    GameError,
    GameStructure,
    InformationSet,
    Leaf,
    MAX,
    MIN,
    Node,
    NodeId,
    PlayerNode,
    SizeLimitError,
)
from .seqsets import Sequence, SequenceSet


@dataclass(frozen=True)
class FamilyParams:
    family: str  # pennies-I | pennies-II | pennies-III | lowerbound | random
    n: int = 1
    seed: int = 0
    depth: int = 4
    branching: int = 3
    players: int = 1
    merge_prob: float = 0.6

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GameError("n must be positive")


def _pennies_alice_sets(variant: str, n: int) -> list[tuple[str, list[int]]]:
    if variant == "I":
        return [("A", list(range(n)))]
    sets = []
    for i in range(0, n, 2):
        sets.append((f"A{i // 2}", [d for d in (i, i + 1) if d < n]))
    return sets


def gen_pennies(variant: str, n: int) -> Game:
    """The n-die matching-unmatching pennies game, one of variants I/II/III."""
    if variant not in ("I", "II", "III"):
        raise GameError(f"unknown pennies variant {variant!r}")
    if n < 1:
        raise GameError("n must be positive")

    alice_sets = _pennies_alice_sets(variant, n)
    alice_of_die = {d: iid for iid, dice in alice_sets for d in dice}
    if variant in ("I", "II"):
        bob_sets = ["B"]
    else:
        bob_sets = ["BH", "BT"]

    infosets = [
        InformationSet(iid, MAX, (f"H_{iid}", f"T_{iid}")) for iid, _ in alice_sets
    ] + [InformationSet(iid, MAX, (f"H_{iid}", f"T_{iid}")) for iid in bob_sets]

    nodes: dict[NodeId, Node] = {}
    chance: dict[NodeId, tuple[Fraction, ...]] = {}
    utility: dict[NodeId, Fraction] = {}
    counter = [0]

    def fresh() -> NodeId:
        counter[0] += 1
        return counter[0] - 1

    root = fresh()
    die_kids = []
    for d in range(n):
        a_id = fresh()
        die_kids.append(a_id)
        a_set = alice_of_die[d]
        a_kids = []
        for side in ("H", "T"):
            b_nid = fresh()
            if variant == "III":
                b_set = "BH" if side == "H" else "BT"
            else:
                b_set = "B"
            b_kids = []
            for bob_side in ("H", "T"):
                leaf = fresh()
                nodes[leaf] = Leaf()
                win = (side == bob_side) == (d % 2 == 0)
                utility[leaf] = Fraction(1 if win else 0)
                b_kids.append((f"{bob_side}_{b_set}", leaf))
            nodes[b_nid] = PlayerNode(infoset=b_set, children=tuple(b_kids))
            a_kids.append((f"{side}_{a_set}", b_nid))
        nodes[a_id] = PlayerNode(infoset=a_set, children=tuple(a_kids))
    nodes[root] = ChanceNode(tuple(die_kids))
    chance[root] = tuple(Fraction(1, n) for _ in range(n))

    structure = GameStructure(root=root, nodes=nodes, infosets=tuple(infosets))
    return Game(structure=structure, chance=chance, utility=utility)


def lowerbound_infosets(n: int) -> tuple[InformationSet, ...]:
    return tuple(
        InformationSet(f"L{i}", MAX, (f"a{i}", f"b{i}")) for i in range(1, n + 1)
    )


def gen_lowerbound(n: int) -> SequenceSet:
    """Singletons at every level plus all ordered cross-level pairs.

    Connected, and for n >= 2 no single infoset touches every sequence,
    so the minimal-span recursion must try them all; stripping any one
    level leaves the same family one size down, which forces the 2^n
    span growth.
    """
    if n < 1:
        raise GameError("n must be positive")
    infosets = lowerbound_infosets(n)
    seqs: set[Sequence] = set()
    for i in range(1, n + 1):
        seqs.add((f"a{i}",))
        seqs.add((f"b{i}",))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for x in ("a", "b"):
                for y in ("a", "b"):
                    seqs.add((f"{x}{i}", f"{y}{j}"))
    return SequenceSet(frozenset(seqs), infosets)


def gen_random(params: FamilyParams) -> Game:
    """Seeded random game; never absentminded.

    The tree mixes chance and player nodes down to a random depth.
    Player nodes are then grouped into information sets among same-depth,
    same-owner, same-arity nodes, so no set can contain a node and its
    ancestor.  Chance weights are random positive rationals summing to 1,
    payoffs small integers.
    """
    if params.depth > 8 or params.branching > 3:
        raise SizeLimitError("random-game parameter bounds exceeded (depth <= 8, branching <= 3)")
    if params.players not in (1, 2):
        raise GameError("players must be 1 or 2")
    rng = random.Random(params.seed)

    nodes: dict[NodeId, Node] = {}
    chance: dict[NodeId, tuple[Fraction, ...]] = {}
    utility: dict[NodeId, Fraction] = {}
    counter = [0]
    player_nodes: list[tuple[NodeId, int, int, str]] = []  # (id, depth, arity, owner)
    raw_children: dict[NodeId, tuple[NodeId, ...]] = {}

    def fresh() -> NodeId:
        counter[0] += 1
        return counter[0] - 1

    def build(depth: int) -> NodeId:
        nid = fresh()
        stop = depth >= params.depth or (depth > 0 and rng.random() < 0.25)
        if stop:
            nodes[nid] = Leaf()
            utility[nid] = Fraction(rng.randint(-3, 6))
            return nid
        arity = rng.randint(2, params.branching)
        if rng.random() < 0.3:
            kids = tuple(build(depth + 1) for _ in range(arity))
            nodes[nid] = ChanceNode(kids)
            weights = [rng.randint(1, 5) for _ in range(arity)]
            total = sum(weights)
            chance[nid] = tuple(Fraction(w, total) for w in weights)
        else:
            owner = MAX if params.players == 1 else rng.choice((MAX, MIN))
            raw_children[nid] = tuple(build(depth + 1) for _ in range(arity))
            player_nodes.append((nid, depth, arity, owner))
        return nid

    root = build(0)

    # group same-depth same-arity same-owner nodes into information sets
    infosets: list[InformationSet] = []
    assignment: dict[NodeId, str] = {}
    groups: dict[tuple[int, int, str], list[str]] = {}
    for nid, depth, arity, owner in player_nodes:
        key = (depth, arity, owner)
        existing = groups.setdefault(key, [])
        if existing and rng.random() < params.merge_prob:
            assignment[nid] = rng.choice(existing)
        else:
            iid = f"I{len(infosets)}"
            infosets.append(
                InformationSet(iid, owner, tuple(f"x{iid}_{j}" for j in range(arity)))
            )
            existing.append(iid)
            assignment[nid] = iid

    for nid, depth, arity, owner in player_nodes:
        iid = assignment[nid]
        info = next(i for i in infosets if i.id == iid)
        nodes[nid] = PlayerNode(
            infoset=iid, children=tuple(zip(info.actions, raw_children[nid]))
        )

    structure = GameStructure(root=root, nodes=nodes, infosets=tuple(infosets))
    return Game(structure=structure, chance=chance, utility=utility)


def gen_random_alr(params: FamilyParams) -> Game:
    """Seeded random game whose (single) player has A-loss recall.

    Same tree process as `gen_random`, but a node only joins an existing
    information set when the A-loss condition survives: its history must
    either equal a member's or first diverge from every member's at a
    common earlier information set with two different actions.
    """
    if params.players != 1:
        raise GameError("the A-loss-recall generator is one-player only")
    base = gen_random(params)
    rng = random.Random(params.seed ^ 0x5EED)
    s = base.structure

    player_nodes = [
        nid for nid in s.preorder() if isinstance(s.nodes[nid], PlayerNode)
    ]
    hist: dict[NodeId, tuple[Action, ...]] = {}

    infosets: list[InformationSet] = []
    members: dict[str, list[NodeId]] = {}
    arity_of: dict[str, int] = {}
    depth_of: dict[NodeId, int] = {}
    for nid in player_nodes:
        d = 0
        cur = nid
        while cur != s.root:
            cur = s.parent_edge[cur][0]
            d += 1
        depth_of[nid] = d

    def act_infoset(a: Action) -> str:
        for i in infosets:
            if a in i.actions:
                return i.id
        raise KeyError(a)

    def alr_compatible(h1: tuple[Action, ...], h2: tuple[Action, ...]) -> bool:
        if h1 == h2:
            return True
        k = 0
        while k < len(h1) and k < len(h2) and h1[k] == h2[k]:
            k += 1
        if k >= len(h1) or k >= len(h2):
            return False
        return act_infoset(h1[k]) == act_infoset(h2[k])

    nodes: dict[NodeId, Node] = {
        nid: n for nid, n in s.nodes.items() if not isinstance(n, PlayerNode)
    }
    # walk top-down so parents are relabelled before children histories matter
    for nid in sorted(player_nodes, key=lambda v: depth_of[v]):
        old = s.nodes[nid]
        assert isinstance(old, PlayerNode)
        arity = len(old.children)
        cur = nid
        rev = []
        while cur != s.root:
            parent, _ = s.parent_edge[cur]
            pnode = nodes.get(parent)
            if isinstance(pnode, PlayerNode):
                old_parent = s.nodes[parent]
                assert isinstance(old_parent, PlayerNode)
                idx = [c for _, c in old_parent.children].index(cur)
                rev.append(pnode.children[idx][0])
            cur = parent
        h = tuple(reversed(rev))
        hist[nid] = h

        candidates = [
            iid
            for iid, ms in members.items()
            if arity_of[iid] == arity
            and all(alr_compatible(h, hist[m]) for m in ms)
            and all(depth_of[m] == depth_of[nid] for m in ms)
        ]
        if candidates and rng.random() < params.merge_prob:
            iid = rng.choice(candidates)
        else:
            iid = f"J{len(infosets)}"
            infosets.append(
                InformationSet(iid, MAX, tuple(f"y{iid}_{j}" for j in range(arity)))
            )
            members[iid] = []
            arity_of[iid] = arity
        members[iid].append(nid)
        info = next(i for i in infosets if i.id == iid)
        nodes[nid] = PlayerNode(
            infoset=iid,
            children=tuple(zip(info.actions, (c for _, c in old.children))),
        )

    structure = GameStructure(root=s.root, nodes=nodes, infosets=tuple(infosets))
    return Game(structure=structure, chance=base.chance, utility=base.utility)


def pennies_value(n: int) -> Fraction:
    """Best guaranteed score for any variant: win every even outcome (or
    every odd one, whichever is more frequent)."""
    return Fraction(max((n + 1) // 2, n // 2), n)
