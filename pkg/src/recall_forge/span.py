"""A-loss-recall spans: construction, minimality, and verification.

A span of a sequence set S is an A-loss-recall set S' whose monomials
generate every monomial of S by a coefficient-{0,1} sum that collapses
under the per-infoset sum-to-one constraints.  The minimal-span recursion
mirrors the shuffle detection: a covering infoset fixes the first level;
with no covering infoset, every information set is tried and the
smallest candidate wins (declaration order breaks ties).

The verifier is independent of the construction: for each original
sequence it restricts the candidate to supersequences, divides them out,
and searches for a strongly branching subset.  Certificates store those
subsets, so payoff transfer can replay them without re-deriving anything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (
    Action,
    ChanceNode,
    GameError,
    GameStructure,
    InformationSet,
    Leaf,
    Node,
    PlayerNode,
    SizeLimitError,
)
from .seqsets import (
    EPSILON,
    Sequence,
    SequenceSet,
    _components,
    covering_infoset,
    find_strongly_branching_subset,
    is_alr_set,
)
from .shuffle import salr_witness


@dataclass(frozen=True)
class SpanCertificate:
    original: SequenceSet
    span: SequenceSet
    combinations: dict[Sequence, frozenset[Sequence]]


@dataclass
class SpanStats:
    """Memo-table bookkeeping for the minimal-span recursion."""

    subproblems: int = 0
    lookups: int = 0


def canonical_full_span(infosets: Iterable[InformationSet]) -> SequenceSet:
    """All action tuples with one action per infoset, in declaration order.

    This is the always-available span: one player level per information
    set.  Its size is the product of the action counts.
    """
    infosets = tuple(infosets)
    if not infosets:
        raise GameError("need at least one information set")
    seqs = {tuple(combo) for combo in itertools.product(*(i.actions for i in infosets))}
    return SequenceSet(frozenset(seqs), infosets)


def _strip_epsilon(seqs: frozenset[Sequence]) -> frozenset[Sequence]:
    if EPSILON in seqs and len(seqs) > 1:
        return seqs - {EPSILON}
    return seqs


def _minimal_span_set(ss: SequenceSet, stats: Optional[SpanStats] = None) -> frozenset[Sequence]:
    """Smallest A-loss-recall span of the set, as a set of sequences."""
    memo: dict[frozenset[Sequence], frozenset[Sequence]] = {}
    acts_of = {i.id: set(i.actions) for i in ss.infosets}

    def rec(seqs: frozenset[Sequence]) -> frozenset[Sequence]:
        seqs = _strip_epsilon(seqs)
        if not seqs or seqs == frozenset({EPSILON}):
            return seqs
        got = memo.get(seqs)
        if got is not None:
            if stats:
                stats.lookups += 1
            return got
        if stats:
            stats.subproblems += 1
        sub = ss.with_sequences(seqs)
        comps = _components(sub)
        if len(comps) > 1:
            result = frozenset().union(*(rec(c) for c in comps))
        else:
            cover = covering_infoset(sub)
            if cover is not None:
                result = _branch(seqs, cover, residual=frozenset())
            else:
                used = {a for s in seqs for a in s}
                best: Optional[frozenset[Sequence]] = None
                for info in ss.infosets:
                    if not acts_of[info.id] & used:
                        continue
                    residual = frozenset(
                        s for s in seqs if not acts_of[info.id] & set(s)
                    )
                    cand = _branch(seqs, info, residual)
                    if best is None or len(cand) < len(best):
                        best = cand
                assert best is not None
                result = best
        memo[seqs] = result
        return result

    def _branch(
        seqs: frozenset[Sequence], info: InformationSet, residual: frozenset[Sequence]
    ) -> frozenset[Sequence]:
        out: set[Sequence] = set()
        for a in info.actions:
            quot = frozenset(
                tuple(x for x in s if x != a) for s in seqs if a in s
            )
            sub_span = rec(quot | residual)
            out.update((a,) + t for t in sub_span)
        return frozenset(out)

    return rec(ss.sequences)


def minimal_span(ss: SequenceSet, stats: Optional[SpanStats] = None) -> SpanCertificate:
    """Smallest A-loss-recall span, with a verified generation certificate."""
    span_seqs = _minimal_span_set(ss, stats)
    span = ss.with_sequences(span_seqs)
    cert = verify_span(ss, span)
    if cert is None:
        raise GameError("internal error: computed span failed verification")
    return cert


def shuffle_depth(ss: SequenceSet) -> int:
    """How many levels of first-infoset fixing are needed before every
    remaining subproblem has shuffled A-loss recall.

    Zero exactly when the set itself has shuffled A-loss recall; the
    disconnected case takes the maximum over components.
    """
    memo: dict[frozenset[Sequence], int] = {}
    acts_of = {i.id: set(i.actions) for i in ss.infosets}

    def rec(seqs: frozenset[Sequence]) -> int:
        seqs = _strip_epsilon(seqs)
        if not seqs or seqs == frozenset({EPSILON}):
            return 0
        got = memo.get(seqs)
        if got is not None:
            return got
        sub = ss.with_sequences(seqs)
        comps = _components(sub)
        if len(comps) > 1:
            ans = max(rec(c) for c in comps)
        elif salr_witness(sub).has_salr:
            ans = 0
        else:
            used = {a for s in seqs for a in s}
            best: Optional[int] = None
            for info in ss.infosets:
                if not acts_of[info.id] & used:
                    continue
                residual = frozenset(s for s in seqs if not acts_of[info.id] & set(s))
                worst = 0
                for a in info.actions:
                    quot = frozenset(
                        tuple(x for x in s if x != a) for s in seqs if a in s
                    )
                    worst = max(worst, rec(quot | residual))
                if best is None or worst < best:
                    best = worst
            assert best is not None
            ans = 1 + best
        memo[seqs] = ans
        return ans

    return rec(ss.sequences)


def verify_span(original: SequenceSet, candidate: SequenceSet) -> Optional[SpanCertificate]:
    """Check that the candidate generates every original monomial.

    For each original sequence s, the candidate sequences containing all
    of s's actions are divided by s; a strongly branching subset of the
    quotients certifies that the matching candidates sum to the monomial
    of s.  Returns the certificate, or None if some monomial is out of
    reach.  The candidate must be an A-loss-recall set.
    """
    if not is_alr_set(candidate):
        raise GameError("candidate is not an A-loss-recall set")
    combos: dict[Sequence, frozenset[Sequence]] = {}
    for s in original.sorted_sequences():
        needed = set(s)
        quot_source: dict[Sequence, Sequence] = {}
        for cand in candidate.sorted_sequences():
            if needed <= set(cand):
                q = tuple(a for a in cand if a not in needed)
                quot_source.setdefault(q, cand)
        sb = find_strongly_branching_subset(
            candidate.with_sequences(quot_source.keys())
        )
        if sb is None:
            return None
        combos[s] = frozenset(quot_source[q] for q in sb.sequences)
    return SpanCertificate(original=original, span=candidate, combinations=combos)


def realize_sequence_set(ss: SequenceSet) -> GameStructure:
    """Build a game tree whose leaf histories are exactly the given set.

    Works for any sibling-complete set (whenever one action of an
    information set continues a prefix, all of them do).  Prefixes with
    several continuing infosets, or a sequence ending where others
    continue, become chance splits.
    """
    if not ss.sequences:
        raise GameError("cannot realize an empty sequence set")
    nodes: dict[int, Node] = {}
    counter = itertools.count()
    owner_of = {i.id: i for i in ss.infosets}
    index = {i.id: k for k, i in enumerate(ss.infosets)}

    def build(seqs: frozenset[Sequence]) -> int:
        nid = next(counter)
        ends_here = EPSILON in seqs
        rest = [s for s in seqs if s != EPSILON]
        groups: dict[str, set[Sequence]] = {}
        for s in rest:
            groups.setdefault(ss.infoset_of(s[0]), set()).add(s)
        ordered = sorted(groups, key=lambda iid: index[iid])
        if not rest:
            nodes[nid] = Leaf()
            return nid
        if len(groups) == 1 and not ends_here:
            iid = ordered[0]
            info = owner_of[iid]
            present = {s[0] for s in groups[iid]}
            if set(info.actions) != present:
                missing = sorted(set(info.actions) - present)
                raise GameError(
                    f"set is not realizable: information set {iid!r} is entered "
                    f"but actions {missing} never continue"
                )
            kids = []
            for a in info.actions:
                cont = frozenset(s[1:] for s in groups[iid] if s[0] == a)
                kids.append((a, build(cont)))
            nodes[nid] = PlayerNode(infoset=iid, children=tuple(kids))
            return nid
        kids_ids: list[int] = []
        if ends_here:
            leaf_id = next(counter)
            nodes[leaf_id] = Leaf()
            kids_ids.append(leaf_id)
        for iid in ordered:
            kids_ids.append(build(frozenset(groups[iid])))
        nodes[nid] = ChanceNode(children=tuple(kids_ids))
        return nid

    root = build(ss.sequences)
    used = {a for s in ss.sequences for a in s}
    infosets = tuple(i for i in ss.infosets if any(a in used for a in i.actions))
    return GameStructure(root=root, nodes=nodes, infosets=infosets)


def structure_from_sequences(ss: SequenceSet) -> GameStructure:
    """Realize an A-loss-recall set as a game tree.

    Connected sets become a player node on the leading infoset; components
    of a disconnected set hang under a chance node (an epsilon component
    is a bare leaf).  The result classifies as A-loss recall.
    """
    if not is_alr_set(ss):
        raise GameError("input set does not have A-loss recall")
    return realize_sequence_set(ss)


def _all_alr_sets(
    infosets: tuple[InformationSet, ...], size_cap: int
) -> list[frozenset[Sequence]]:
    """Every nonempty epsilon-free A-loss-recall set over the universe,
    up to `size_cap` sequences.

    Generated from the recursive shape of such sets: a connected set is a
    leading infoset with per-action continuations (each empty, {eps}, a
    smaller set, or a smaller set plus eps); a disconnected set is a
    union of connected sets over pairwise disjoint infoset supports.
    """

    ids = tuple(i.id for i in infosets)
    memo_conn: dict[frozenset[str], dict[frozenset[Sequence], frozenset[str]]] = {}
    memo_all: dict[frozenset[str], dict[frozenset[Sequence], frozenset[str]]] = {}

    def all_over(avail: frozenset[str]) -> dict[frozenset[Sequence], frozenset[str]]:
        got = memo_all.get(avail)
        if got is not None:
            return got
        out = dict(connected_over(avail))
        # unions of connected parts over pairwise disjoint supports
        by_support: dict[frozenset[str], list[frozenset[Sequence]]] = {}
        for seqs, supp in connected_over(avail).items():
            by_support.setdefault(supp, []).append(seqs)
        supports = sorted(by_support, key=sorted)

        def grow(start: int, acc: frozenset[Sequence], used: frozenset[str], parts: int):
            if parts >= 2 and len(acc) <= size_cap:
                out.setdefault(acc, used)
            for k in range(start, len(supports)):
                supp = supports[k]
                if supp & used:
                    continue
                for seqs in by_support[supp]:
                    if len(acc) + len(seqs) <= size_cap:
                        grow(k + 1, acc | seqs, used | supp, parts + 1)

        grow(0, frozenset(), frozenset(), 0)
        memo_all[avail] = out
        return out

    def connected_over(avail: frozenset[str]) -> dict[frozenset[Sequence], frozenset[str]]:
        got = memo_conn.get(avail)
        if got is not None:
            return got
        result: dict[frozenset[Sequence], frozenset[str]] = {}
        for lead in infosets:
            if lead.id not in avail:
                continue
            others = avail - {lead.id}
            base: list[tuple[Optional[frozenset[Sequence]], frozenset[str], int]] = [
                (None, frozenset(), 0),
                (frozenset({EPSILON}), frozenset(), 1),
            ]
            for s, supp in all_over(others).items():
                base.append((s, supp, len(s)))
                base.append((s | {EPSILON}, supp, len(s) + 1))
            # prefix every option by every action of the lead once
            prefixed: list[list[tuple[Optional[frozenset[Sequence]], frozenset[str], int]]] = []
            for a in lead.actions:
                row = []
                for s, supp, size in base:
                    if s is None:
                        row.append((None, supp, 0))
                    else:
                        row.append((frozenset((a,) + t for t in s), supp, size))
                prefixed.append(row)
            for combo in itertools.product(*prefixed):
                total = sum(c[2] for c in combo)
                if total == 0 or total > size_cap:
                    continue
                seqs: frozenset[Sequence] = frozenset()
                supp: frozenset[str] = frozenset({lead.id})
                for branch, bsupp, _ in combo:
                    if branch is None:
                        continue
                    seqs |= branch
                    supp |= bsupp
                result[seqs] = supp
        memo_conn[avail] = result
        return result

    return list(all_over(frozenset(ids)))


# per universe: (monomial -> bit, [per size: [(sequences, coverage mask)]])
_OracleIndex = tuple[dict[frozenset[Action], int], list[list[tuple[frozenset[Sequence], int]]]]
_ORACLE_CACHE: dict[tuple, _OracleIndex] = {}


def _oracle_index(present: tuple[InformationSet, ...]) -> _OracleIndex:
    key = tuple((i.id, i.actions) for i in present)
    got = _ORACLE_CACHE.get(key)
    if got is not None:
        return got
    cap = 1
    for i in present:
        cap *= len(i.actions)
    # bit per nonempty monomial of the universe
    bit_of: dict[frozenset[Action], int] = {}
    for combo in itertools.product(*((None, *i.actions) for i in present)):
        mono = frozenset(a for a in combo if a is not None)
        if mono and mono not in bit_of:
            bit_of[mono] = len(bit_of)
    # every nonempty sub-monomial of a candidate sequence is coverable
    seq_mask: dict[Sequence, int] = {}

    def mask_of(s: Sequence) -> int:
        got = seq_mask.get(s)
        if got is None:
            got = 0
            for r in range(1, len(s) + 1):
                for sub in itertools.combinations(s, r):
                    got |= 1 << bit_of[frozenset(sub)]
            seq_mask[s] = got
        return got

    by_size: list[list[tuple[frozenset[Sequence], int]]] = [[] for _ in range(cap + 1)]
    for seqs in _all_alr_sets(present, cap):
        if len(seqs) > cap:
            continue
        mask = 0
        for s in seqs:
            mask |= mask_of(s)
        by_size[len(seqs)].append((seqs, mask))
    _ORACLE_CACHE[key] = (bit_of, by_size)
    return _ORACLE_CACHE[key]


def minimality_oracle(ss: SequenceSet, max_infosets: int = 3, max_size: int = 8) -> int:
    """Exhaustive minimal-span size: enumerate every A-loss-recall set over
    the present infosets by increasing size and return the first size at
    which verification succeeds.

    Guarded to tiny universes (binary infosets only); meant purely as an
    independent check of the minimal-span recursion.
    """
    present = tuple(ss.present_infosets())
    if len(present) > max_infosets or len(ss) > max_size:
        raise SizeLimitError("instance too large for the minimality oracle")
    if any(len(i.actions) != 2 for i in present):
        raise SizeLimitError("the minimality oracle only handles binary infosets")

    bit_of, by_size = _oracle_index(present)
    want = 0
    for s in ss.sequences:
        if s:
            want |= 1 << bit_of[frozenset(s)]
    for size in range(1, len(by_size)):
        for cand_seqs, mask in by_size[size]:
            if want & ~mask:
                continue
            cand = ss.with_sequences(cand_seqs)
            if verify_span(ss, cand) is not None:
                return size
    raise GameError("no span found within the enumeration bound")
