# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


from typing import Dict, Hashable, Iterable, List, Mapping, Tuple


class UnionFind:
    def __init__(self, items: Iterable[Hashable]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def add(self, x: Hashable) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x: Hashable) -> Hashable:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: Hashable, y: Hashable) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self) -> List[Tuple[Hashable, ...]]:
        """Blocks in first-seen order, members in insertion order."""
        blocks: Dict[Hashable, List[Hashable]] = {}
        for x in self.parent:
            blocks.setdefault(self.find(x), []).append(x)
        return [tuple(block) for block in blocks.values()]


def association_blocks(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> List[Tuple[Hashable, ...]]:
    """Joins every source class with each target class it reaches with a nonzero count."""
    uf = UnionFind(rows)
    for source, counts in rows.items():
        for target, count in counts.items():
            if count:
                uf.add(target)
                uf.union(source, target)
    return uf.groups()
