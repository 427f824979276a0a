from typing import Dict, List


class UnionFind:
    """Disjoint sets over 0..n-1; the representative of a class is its least member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if y < x:
            x, y = y, x
        self.parent[y] = x

    def classes(self) -> List[List[int]]:
        """Classes ordered by least member, members ascending."""
        groups: Dict[int, List[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[root] for root in sorted(groups)]

    def __len__(self) -> int:
        return sum(1 for x in range(len(self.parent)) if self.find(x) == x)
