"""
Utility helpers for dtopo.
Union-find over integer ids, canonical ordering and path formatting.
"""

from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

import numpy as np


class DisjointSet:
    """Union-find over 0..n-1 backed by numpy arrays."""

    def __init__(self, n: int):
        self.sizes = np.ones(n, dtype=int)
        self.parents = np.arange(n)
        self.nc = n

    def _compress(self):
        a = self.parents
        b = a[a]
        while (a != b).any():
            a = b
            b = a[a]
        self.parents = a

    def find(self, index: int) -> int:
        parents = self.parents
        root = index
        while root != parents[root]:
            root = parents[root]
        while parents[index] != root:
            parents[index], index = root, parents[index]
        return int(root)

    def union(self, a: int, b: int) -> bool:
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return False

        sizes = self.sizes
        parents = self.parents
        if sizes[a] < sizes[b]:
            parents[a] = b
            sizes[b] += sizes[a]
        else:
            parents[b] = a
            sizes[a] += sizes[b]

        self.nc -= 1
        return True

    def groups(self) -> List[List[int]]:
        """Blocks as sorted index lists, ordered by their smallest member."""
        self._compress()
        blocks: Dict[int, List[int]] = {}
        for index, root in enumerate(self.parents.tolist()):
            blocks.setdefault(root, []).append(index)
        return sorted(blocks.values(), key=lambda block: block[0])


def group_by_union(items: Sequence[Hashable], links: Iterable[Tuple[Hashable, Hashable]]) -> List[List[Hashable]]:
    """Partition items by the equivalence generated by links.

    Blocks keep the order of items and are ordered by their first member.
    """
    position = {item: i for i, item in enumerate(items)}
    dsu = DisjointSet(len(items))
    for a, b in links:
        dsu.union(position[a], position[b])
    return [[items[i] for i in block] for block in dsu.groups()]


def format_path(edges: Sequence[str]) -> str:
    """Render an edge sequence; the constant path renders as '()'."""
    return ",".join(edges) if edges else "()"


def format_pair(pair: Sequence[str]) -> str:
    return f"({pair[0]},{pair[1]})"
