"""Boolean order matrices, union-find and partition enumeration."""

from collections.abc import Hashable, Iterable, Iterator, Sequence

import numpy as np

from ._serialize import element_key


def order_matrix(
    elements: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]
) -> np.ndarray:
    """Reflexive boolean matrix; ``m[i, j]`` means ``elements[i] <= elements[j]``."""
    index = {x: i for i, x in enumerate(elements)}
    matrix = np.eye(len(elements), dtype=bool)
    for x, y in pairs:
        matrix[index[x], index[y]] = True
    return matrix


def transitive_closure(matrix: np.ndarray) -> np.ndarray:
    closed = matrix.copy()
    for k in range(closed.shape[0]):
        closed |= np.outer(closed[:, k], closed[k, :])
    return closed


def is_antisymmetric(matrix: np.ndarray) -> bool:
    both = matrix & matrix.T
    np.fill_diagonal(both, False)
    return not both.any()


def mutual_classes(matrix: np.ndarray) -> list[list[int]]:
    """Classes of the preorder's equivalence ``i <= j <= i`` (matrix must be closed)."""
    both = matrix & matrix.T
    seen: set[int] = set()
    classes = []
    for i in range(matrix.shape[0]):
        if i in seen:
            continue
        members = [int(j) for j in np.flatnonzero(both[i])]
        seen.update(members)
        classes.append(members)
    return classes


def strict_pairs(
    elements: Sequence[Hashable], matrix: np.ndarray
) -> tuple[tuple[Hashable, Hashable], ...]:
    rows, cols = np.nonzero(matrix)
    pairs = [(elements[i], elements[j]) for i, j in zip(rows, cols) if i != j]
    return tuple(sorted(pairs, key=lambda p: (element_key(p[0]), element_key(p[1]))))


def equivalence_closure(
    elements: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]
) -> frozenset[tuple[Hashable, Hashable]]:
    """Least equivalence relation containing ``pairs`` (Warshall on booleans)."""
    matrix = order_matrix(elements, pairs)
    closed = transitive_closure(matrix | matrix.T)
    rows, cols = np.nonzero(closed)
    return frozenset((elements[i], elements[j]) for i, j in zip(rows, cols))


class UnionFind:
    def __init__(self, elements: Iterable[Hashable]):
        self.parent = {x: x for x in elements}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def classes(self) -> list[tuple]:
        """Classes sorted internally and by least member."""
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        blocks = [tuple(sorted(g, key=element_key)) for g in groups.values()]
        return sorted(blocks, key=lambda b: element_key(b[0]))

    def representative_map(self) -> dict:
        """Each element mapped to the least member of its class."""
        mapping = {}
        for block in self.classes():
            for x in block:
                mapping[x] = block[0]
        return mapping


def set_partitions(elements: Sequence[Hashable]) -> Iterator[list[list[Hashable]]]:
    """All partitions of ``elements`` in a fixed order (restricted growth strings)."""
    elements = list(elements)
    if not elements:
        yield []
        return

    def grow(index: int, blocks: list[list[Hashable]]):
        if index == len(elements):
            yield [list(b) for b in blocks]
            return
        x = elements[index]
        for block in blocks:
            block.append(x)
            yield from grow(index + 1, blocks)
            block.pop()
        blocks.append([x])
        yield from grow(index + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def sub_orders(
    pairs: Sequence[tuple[Hashable, Hashable]],
    required: Iterable[tuple[Hashable, Hashable]] = (),
) -> Iterator[tuple[tuple[Hashable, Hashable], ...]]:
    """
    Transitively closed subsets of a closed strict order, each containing
    ``required``.

    Subsets are yielded in ``pairs`` order, the full order first.
    """
    pairs = list(dict.fromkeys(pairs))
    required = set(required)
    included: set = set()
    excluded: set = set()

    def can_include(a, b) -> bool:
        for x, y in included:
            if x == b and (a, y) in excluded:
                return False
            if y == a and (x, b) in excluded:
                return False
        return True

    def can_exclude(a, b) -> bool:
        return not any((m, b) in included for x, m in included if x == a)

    def choose(index: int):
        if index == len(pairs):
            yield tuple(p for p in pairs if p in included)
            return
        pair = pairs[index]
        if can_include(*pair):
            included.add(pair)
            yield from choose(index + 1)
            included.discard(pair)
        if pair not in required and can_exclude(*pair):
            excluded.add(pair)
            yield from choose(index + 1)
            excluded.discard(pair)

    yield from choose(0)
