from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

from ..core import BudgetExceededError, Quality, QualityLike, SequenceAlgorithm
from .algorithms import decremental_greedy
from .instance import BottleneckInstance, FunctionInstance

__all__ = [
    'MAX_ENUMERATION_SIZE', 'MAX_CHAIN_SIZE',
    'AntimatroidCheck',
    'enumerate_removal_sequences', 'check_antimatroid',
    'improvement_chain', 'check_t_invariant', 'antimatroid_instance'
]


MAX_ENUMERATION_SIZE = 7
MAX_CHAIN_SIZE = 12

Sequence_ = Tuple[int, ...]


class AntimatroidCheck(NamedTuple):
    ok: bool
    counterexample: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _replayed(instance: BottleneckInstance, prefix: Iterable[int]) -> BottleneckInstance:
    state = instance.clone()
    for x in prefix:
        state.remove(x)
    return state


def enumerate_removal_sequences(
    instance: BottleneckInstance, algorithm: SequenceAlgorithm | str = SequenceAlgorithm.GREEDY,
    beta: QualityLike | None = None
) -> Set[Sequence_]:
    """
    Every removal sequence the algorithm may produce under some tie-breaking.

    Greedy runs always empty the universe. Known-beta runs stop once nothing is below beta;
    beta defaults to the optimum found by the greedy.
    """
    algorithm = SequenceAlgorithm(algorithm)

    if instance.size > MAX_ENUMERATION_SIZE:
        raise BudgetExceededError(
            f'enumerate_removal_sequences: {instance.size} elements, at most {MAX_ENUMERATION_SIZE} supported'
        )

    if algorithm is SequenceAlgorithm.KNOWN_BETA and beta is None:
        beta = decremental_greedy(instance.clone()).theta
    threshold = Quality(beta) if beta is not None else Quality.neg_inf()

    out: Set[Sequence_] = set()

    def walk(prefix: Sequence_, best: Quality) -> None:
        state = _replayed(instance, prefix)
        if not state.alive:
            out.add(prefix)
            return

        qualities = state.qualities()

        if algorithm is SequenceAlgorithm.GREEDY:
            best = max(best, min(qualities.values()))
            options = [x for x, q in qualities.items() if q <= best]
        else:
            options = [x for x, q in qualities.items() if q < threshold]

        if not options:
            out.add(prefix)
            return

        for x in options:
            walk(prefix + (x,), best)

    walk((), Quality.neg_inf())

    logging.debug(f'enumerate_removal_sequences: {len(out)} {algorithm} sequences')

    return out


def check_antimatroid(sequences: Iterable[Iterable[int]]) -> AntimatroidCheck:
    """
    Check the two availability axioms on a family of removal sequences.

    An element is available after a removed set R when some sequence continues a prefix with
    set R by it. Availability must not depend on the order inside R, and must persist when
    another element is removed.
    """
    by_prefix: Dict[Sequence_, Set[int]] = {}

    for raw in sequences:
        seq = tuple(raw)
        if len(set(seq)) != len(seq):
            return AntimatroidCheck(False, f'sequence {seq} repeats an element')
        for i in range(len(seq) + 1):
            options = by_prefix.setdefault(seq[:i], set())
            if i < len(seq):
                options.add(seq[i])

    by_set: Dict[FrozenSet[int], Set[int]] = {}
    witness: Dict[FrozenSet[int], Sequence_] = {}

    for prefix, options in by_prefix.items():
        key = frozenset(prefix)
        if key not in by_set:
            by_set[key], witness[key] = options, prefix
        elif by_set[key] != options:
            return AntimatroidCheck(
                False,
                f'prefixes {witness[key]} and {prefix} remove the same set but allow '
                f'{sorted(by_set[key])} and {sorted(options)}'
            )

    universe = set().union(*by_set) if by_set else set()

    for removed, options in by_set.items():
        for x in options:
            for y in universe - removed - {x}:
                grown = removed | {y}
                if grown in by_set and x not in by_set[grown]:
                    return AntimatroidCheck(
                        False, f'{x} is available after {sorted(removed)} but not after {sorted(grown)}'
                    )

    return AntimatroidCheck(True)


def _subset_qualities(instance: BottleneckInstance) -> Dict[int, Quality]:
    n = instance.size

    if n > MAX_CHAIN_SIZE:
        raise BudgetExceededError(f'improvement_chain: {n} elements, at most {MAX_CHAIN_SIZE} supported')

    table: Dict[int, Quality] = {}
    for mask in range(1, 1 << n):
        state = _replayed(instance, (x for x in range(n) if not mask >> x & 1))
        table[mask] = state.set_quality()
    return table


def _chain_masks(table: Dict[int, Quality], n: int) -> List[int]:
    current = (1 << n) - 1
    chain = [current]

    while True:
        subsets = [m for m in table if m & current == m]
        better = min((table[m] for m in subsets if table[m] > table[current]), default=None)
        if better is None:
            return chain
        current = 0
        for m in subsets:
            if table[m] >= better:
                current |= m
        chain.append(current)


def _to_set(mask: int) -> FrozenSet[int]:
    return frozenset(x for x in range(mask.bit_length()) if mask >> x & 1)


def improvement_chain(instance: BottleneckInstance) -> List[FrozenSet[int]]:
    """
    The nested sets U, U+, U++, ... every greedy run passes through.

    Each set is the union of the subsets of its predecessor that reach the next better quality
    available below it. The last set is the maximal bottleneck subset.
    """
    if instance.size == 0:
        return []
    table = _subset_qualities(instance)
    return [_to_set(m) for m in _chain_masks(table, instance.size)]


def check_t_invariant(instance: BottleneckInstance, sequences: Iterable[Iterable[int]]) -> AntimatroidCheck:
    """Replay greedy sequences and check that T is always the last chain set containing S."""
    n = instance.size
    table = _subset_qualities(instance)
    chain = _chain_masks(table, n)

    def t_of(mask: int) -> int:
        return [c for c in chain if mask & c == mask][-1]

    for raw in sequences:
        seq = tuple(raw)
        alive = (1 << n) - 1
        best_mask, best = 0, Quality.neg_inf()

        for step, x in enumerate(seq):
            if table[alive] > best:
                best_mask, best = alive, table[alive]

            expected = t_of(alive)
            # T stays at the empty flag set while every set so far has quality -inf
            if best_mask != expected and not (best_mask == 0 and table[expected] == best):
                return AntimatroidCheck(
                    False,
                    f'{seq} step {step}: T={sorted(_to_set(best_mask))}, t(S)={sorted(_to_set(expected))}'
                )

            alive &= ~(1 << x)

    return AntimatroidCheck(True)


def antimatroid_instance(sequences: Iterable[Iterable[int]]) -> BottleneckInstance:
    """
    The 0/1 availability instance of an antimatroid.

    q(x, S) is 0 when x may be removed next after the elements outside S, otherwise 1. The
    greedy, and known-beta with beta = 1, reproduce exactly the given sequence family.
    """
    by_set: Dict[FrozenSet[int], Set[int]] = {}
    size = 0

    for raw in sequences:
        seq = tuple(raw)
        size = max(size, max(seq, default=-1) + 1)
        for i, x in enumerate(seq):
            by_set.setdefault(frozenset(seq[:i]), set()).add(x)

    universe = frozenset(range(size))

    def q(x: int, alive: FrozenSet[int]) -> int:
        return 0 if x in by_set.get(universe - alive, ()) else 1

    return FunctionInstance(size, q)
