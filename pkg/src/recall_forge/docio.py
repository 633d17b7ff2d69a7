"""The on-disk game and certificate formats.

Games are JSON documents: a version tag, the player list, the information
sets (id, owner, ordered actions), and a nested node tree.  Probabilities
and payoffs are strings, either an integer or "num/den", so exact
rationals survive serialization.  Parsing normalizes chance chains
(chance children of chance nodes are folded into the parent), after
which serialize/parse round-trips are byte-identical.

Certificates list the original sequences, the span sequences, and the
coefficient-1 generator subset for each original sequence.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .model import (
    ChanceNode,
    Game,
    GameError,
    GameStructure,
    InformationSet,
    Leaf,
    Node,
    NodeId,
    PlayerNode,
    normalize_chance,
    validate_game,
)
from .seqsets import Sequence, SequenceSet
from .span import SpanCertificate

FORMAT_VERSION = 1


class DocumentError(GameError):
    """Malformed document; the message names the offending field."""


def _parse_rational(raw: Any, where: str) -> Fraction:
    if not isinstance(raw, str):
        raise DocumentError(f"{where}: expected a rational string, got {raw!r}")
    try:
        if "/" in raw:
            num, den = raw.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad rational {raw!r} ({exc})") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_game(text: str) -> Game:
    """Parse, normalize, and validate a game document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported version {doc.get('version')!r}")

    raw_sets = doc.get("infosets")
    if not isinstance(raw_sets, list):
        raise DocumentError("infosets: expected a list")
    infosets = []
    for k, raw in enumerate(raw_sets):
        where = f"infosets[{k}]"
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: expected an object")
        for key in ("id", "owner", "actions"):
            if key not in raw:
                raise DocumentError(f"{where}: missing {key!r}")
        if not isinstance(raw["actions"], list) or not all(
            isinstance(a, str) and a for a in raw["actions"]
        ):
            raise DocumentError(f"{where}: actions must be nonempty strings")
        try:
            infosets.append(
                InformationSet(str(raw["id"]), str(raw["owner"]), tuple(raw["actions"]))
            )
        except GameError as exc:
            raise DocumentError(f"{where}: {exc}") from None

    nodes: dict[NodeId, Node] = {}
    chance: dict[NodeId, tuple[Fraction, ...]] = {}
    utility: dict[NodeId, Fraction] = {}
    counter = [0]

    def walk(raw: Any, where: str) -> NodeId:
        if not isinstance(raw, dict) or "kind" not in raw:
            raise DocumentError(f"{where}: expected a node object with 'kind'")
        nid = counter[0]
        counter[0] += 1
        kind = raw["kind"]
        if kind == "leaf":
            nodes[nid] = Leaf()
            utility[nid] = _parse_rational(raw.get("payoff"), f"{where}.payoff")
        elif kind == "chance":
            kids_raw = raw.get("children")
            if not isinstance(kids_raw, list) or not kids_raw:
                raise DocumentError(f"{where}.children: expected a nonempty list")
            nodes[nid] = ChanceNode(())
            probs = []
            kids = []
            for j, kid in enumerate(kids_raw):
                probs.append(_parse_rational(kid.get("prob"), f"{where}.children[{j}].prob"))
                kids.append(walk(kid.get("node"), f"{where}.children[{j}].node"))
            nodes[nid] = ChanceNode(tuple(kids))
            chance[nid] = tuple(probs)
        elif kind == "player":
            if "infoset" not in raw:
                raise DocumentError(f"{where}: missing 'infoset'")
            kids_raw = raw.get("children")
            if not isinstance(kids_raw, list) or not kids_raw:
                raise DocumentError(f"{where}.children: expected a nonempty list")
            nodes[nid] = PlayerNode(str(raw["infoset"]), ())
            pairs = []
            for j, kid in enumerate(kids_raw):
                action = kid.get("action")
                if not isinstance(action, str):
                    raise DocumentError(f"{where}.children[{j}]: missing 'action'")
                pairs.append((action, walk(kid.get("node"), f"{where}.children[{j}].node")))
            nodes[nid] = PlayerNode(str(raw["infoset"]), tuple(pairs))
        else:
            raise DocumentError(f"{where}: unknown kind {kind!r}")
        return nid

    root = walk(doc.get("root"), "root")
    structure = GameStructure(root=root, nodes=nodes, infosets=tuple(infosets))
    game = normalize_chance(Game(structure=structure, chance=chance, utility=utility))
    problems = validate_game(game)
    if problems:
        raise DocumentError("; ".join(problems))
    return game


def _node_doc(game: Game, nid: NodeId) -> dict[str, Any]:
    node = game.structure.nodes[nid]
    if isinstance(node, Leaf):
        return {"kind": "leaf", "payoff": format_rational(game.utility[nid])}
    if isinstance(node, ChanceNode):
        return {
            "kind": "chance",
            "children": [
                {"prob": format_rational(p), "node": _node_doc(game, c)}
                for p, c in zip(game.chance[nid], node.children)
            ],
        }
    return {
        "kind": "player",
        "infoset": node.infoset,
        "children": [
            {"action": a, "node": _node_doc(game, c)} for a, c in node.children
        ],
    }


def serialize_game(game: Game) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "players": list(game.structure.players()),
        "infosets": [
            {"id": i.id, "owner": i.owner, "actions": list(i.actions)}
            for i in game.structure.infosets
        ],
        "root": _node_doc(game, game.structure.root),
    }
    return json.dumps(doc, indent=2) + "\n"


def serialize_certificate(cert: SpanCertificate) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "infosets": [
            {"id": i.id, "owner": i.owner, "actions": list(i.actions)}
            for i in cert.original.infosets
        ],
        "original": [list(s) for s in cert.original.sorted_sequences()],
        "span": [list(s) for s in cert.span.sorted_sequences()],
        "combinations": [
            {
                "sequence": list(s),
                "generators": sorted(
                    [list(g) for g in cert.combinations[s]]
                ),
            }
            for s in cert.original.sorted_sequences()
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_certificate(text: str) -> SpanCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise DocumentError("unsupported certificate document")
    try:
        infosets = tuple(
            InformationSet(str(r["id"]), str(r["owner"]), tuple(r["actions"]))
            for r in doc["infosets"]
        )
        original = SequenceSet(
            frozenset(tuple(s) for s in doc["original"]), infosets
        )
        span = SequenceSet(frozenset(tuple(s) for s in doc["span"]), infosets)
        combos: dict[Sequence, frozenset[Sequence]] = {}
        for row in doc["combinations"]:
            combos[tuple(row["sequence"])] = frozenset(
                tuple(g) for g in row["generators"]
            )
    except (KeyError, TypeError, GameError) as exc:
        raise DocumentError(f"malformed certificate: {exc}") from None
    missing = original.sequences - set(combos)
    if missing:
        raise DocumentError(f"certificate misses {len(missing)} original sequence(s)")
    return SpanCertificate(original=original, span=span, combinations=combos)


def structure_as_game(structure: GameStructure) -> Game:
    """Wrap a bare structure as a document-ready game: uniform chance,
    zero payoffs."""
    chance = {
        nid: tuple(Fraction(1, len(node.children)) for _ in node.children)
        for nid, node in structure.nodes.items()
        if isinstance(node, ChanceNode)
    }
    utility = {
        nid: Fraction(0)
        for nid, node in structure.nodes.items()
        if isinstance(node, Leaf)
    }
    return Game(structure=structure, chance=chance, utility=utility)
