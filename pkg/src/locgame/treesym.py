"""Exact state and probe reduction for the localization game on trees.

Three facts make large trees tractable without changing any capture time:

* Symmetry.  Candidate sets related by a tree automorphism have equal values,
  so states are keyed by a canonical code of the tree (rooted at its centre)
  with the candidate set marked.  Probes related by an automorphism that fixes
  the candidate set give isomorphic successors, so only one probe per orbit is
  tried.
* Attachment.  A probe vertex outside the minimal subtree spanning the
  candidates sees them through its attachment vertex on that subtree, at a
  constant offset, so it splits the candidates exactly as the attachment does.
* Leaves.  With two or more cops, moving a cop from an inner vertex of the
  spanning subtree to a leaf of it below (rooted at another cop) refines the
  partition, so probes may be restricted to the spanning subtree's leaves; when
  there are at most ``k`` such leaves, probing all of them separates every
  candidate.
"""
from __future__ import annotations

from .bits import members
from .graph import Graph


class RootedTree:
    """A tree rooted at its centre; bicentral trees get a virtual root ``n``."""

    def __init__(self, g: Graph):
        if not g.is_tree:
            raise ValueError("tree symmetry reduction needs a tree")
        n = g.n
        self.g = g
        self.n = n
        self.adj_masks = tuple(m ^ (1 << v) for v, m in enumerate(g.closed_nbr_masks))
        centers = tree_centers(g)
        children: list[list[int]] = [[] for _ in range(n + 1)]
        parent = [-1] * (n + 1)
        if len(centers) == 1:
            self.root = centers[0]
            starts = [centers[0]]
        else:
            self.root = n
            starts = list(centers)
            children[n] = sorted(centers)
            for c in centers:
                parent[c] = n
        order = []
        stack = list(starts)
        seen = set(starts)
        while stack:
            u = stack.pop()
            order.append(u)
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    children[u].append(v)
                    stack.append(v)
        if self.root == n:
            order.append(n)
        self.children = [tuple(sorted(c)) for c in children]
        self.parent = parent
        # children always precede parents
        self.postorder = tuple(reversed(order)) if self.root != n else tuple(reversed(order[:-1])) + (n,)

    def codes(self, marks: int, intern: dict) -> list[int]:
        """Per-node canonical ids of the marked rooted subtrees (shared intern table)."""
        code = [0] * (self.n + 1)
        ch = self.children
        n = self.n
        for x in self.postorder:
            kids = ch[x]
            if kids:
                sub = tuple(sorted(code[c] for c in kids))
            else:
                sub = ()
            flag = 2 if x == n else (marks >> x) & 1
            key = (flag, sub)
            c = intern.get(key)
            if c is None:
                c = len(intern)
                intern[key] = c
            code[x] = c
        return code

    def canonical(self, marks: int, intern: dict) -> int:
        return self.codes(marks, intern)[self.root]

    def spanning_subtree(self, marks: int) -> int:
        """Mask of the minimal subtree containing every marked vertex."""
        total = bin(marks).count("1")
        if total <= 1:
            return marks
        n = self.n
        cnt = [0] * (n + 1)
        out = 0
        for x in self.postorder:
            below = 0
            busy = 0
            for c in self.children[x]:
                if cnt[c]:
                    below += cnt[c]
                    busy += 1
            own = (marks >> x) & 1 if x < n else 0
            cnt[x] = below + own
            if x < n and (own or busy >= 2 or 0 < cnt[x] < total):
                out |= 1 << x
        return out

    def leaves_of(self, sub: int) -> int:
        out = 0
        adj = self.adj_masks
        for v in members(sub):
            if bin(adj[v] & sub).count("1") <= 1:
                out |= 1 << v
        return out

    def subset_orbits(self, marks: int, allowed: int, size: int, intern: dict) -> list[tuple[int, ...]]:
        """One representative per orbit of ``size``-subsets of ``allowed``.

        Orbits are taken under the automorphisms of the tree that fix
        ``marks`` setwise; ``allowed`` must itself be invariant under them.
        """
        code = self.codes(marks, intern)
        n = self.n
        ch = self.children
        cnt = [0] * (n + 1)
        for x in self.postorder:
            cnt[x] = sum(cnt[c] for c in ch[x]) + ((allowed >> x) & 1 if x < n else 0)
        memo: dict[tuple[int, int], list[tuple[int, ...]]] = {}

        def configs(x: int, j: int) -> list[tuple[int, ...]]:
            key = (x, j)
            hit = memo.get(key)
            if hit is not None:
                return hit
            res: list[tuple[int, ...]] = []
            own = 1 if x < n and (allowed >> x) & 1 else 0
            kids = sorted((c for c in ch[x] if cnt[c]), key=lambda c: (code[c], c))
            groups: list[list[int]] = []
            for c in kids:
                if groups and code[groups[-1][0]] == code[c]:
                    groups[-1].append(c)
                else:
                    groups.append([c])
            caps = [sum(cnt[c] for c in grp) for grp in groups]
            for take in ((1, 0) if own else (0,)):
                rem = j - take
                if rem < 0 or rem > cnt[x] - own:
                    continue
                prefix = (x,) if take else ()
                for combo in distribute(groups, caps, 0, rem):
                    res.append(prefix + combo)
            memo[key] = res
            return res

        def group_fill(grp, opts, pos, start, budget):
            if pos == len(grp):
                yield 0, ()
                return
            for oi in range(start, len(opts)):
                jj, idx = opts[oi]
                if jj > budget:
                    break
                part = configs(grp[pos], jj)[idx]
                for used, rest in group_fill(grp, opts, pos + 1, oi, budget - jj):
                    yield used + jj, part + rest

        def distribute(groups, caps, gi, rem):
            if gi == len(groups):
                if rem == 0:
                    yield ()
                return
            later = sum(caps[gi + 1:])
            grp = groups[gi]
            first = grp[0]
            opts = [(jj, idx) for jj in range(min(cnt[first], rem) + 1) for idx in range(len(configs(first, jj)))]
            for used, part in group_fill(grp, opts, 0, 0, rem):
                if rem - used > later:
                    continue
                for rest in distribute(groups, caps, gi + 1, rem - used):
                    yield part + rest

        return [tuple(sorted(t)) for t in configs(self.root, size)]


def tree_centers(g: Graph) -> list[int]:
    """The one or two centre vertices of a tree, by repeated leaf peeling."""
    n = g.n
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in g.adjacency]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in g.adjacency[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)
