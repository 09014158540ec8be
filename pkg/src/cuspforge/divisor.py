"""Weighted trees of rational curves: blowup calculus and fiber anatomy.

A divisor with simple normal crossings and no loops is modeled by its dual
graph, a tree whose vertex weights are self-intersection numbers.  Chains
are written [a1,...,ar] with a_i the NEGATIVE of the self-intersection.
The module provides discriminants (two independent routes that are checked
against each other on small trees), the star/adjoint chain calculus,
blowups and blowdowns, contraction tests, multiplicities and shapes of
P1-fibration fibers, and a simulator that builds the dual graph of the
minimal log resolution of a cusp directly from its HN pairs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Union

from .errors import (
    EntryBelowTwo,
    NotAFiber,
    NotContractible,
    NotCoprime,
)
from .hn import HNPair, HNSequence, STANDARD, require_valid, standardize
from .invariants import FULL, MultiplicitySequence

NONDEGENERATE = "nondegenerate"
CHAIN = "chain"
SPECIAL_FORK = "special_fork"
OTHER = "other"

# Structure codes for canonical tree hashing, shared across all trees so that
# equal codes mean equal rooted shapes.  Guarded for concurrent readers.
_shape_codes: dict = {}
_shape_lock = threading.Lock()


@dataclass(frozen=True, eq=False)
class WeightedTree:
    """Connected acyclic weighted graph; ids are dense and creation-ordered.

    Equality and hashing are up to weight-preserving isomorphism (canonical
    rooted codes at the tree centers), not up to vertex numbering.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        n = len(weights)
        seen = set()
        norm = []
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bad edge ({a},{b}) on {n} vertices")
            e = (a, b) if a < b else (b, a)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if n == 0:
            if norm:
                raise ValueError("edges without vertices")
            return
        if len(norm) != n - 1:
            raise ValueError(f"{n} vertices need {n - 1} edges, got {len(norm)}")
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in norm:
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValueError("edges form a cycle")
            parent[ra] = rb

    def __len__(self) -> int:
        return len(self.weights)

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in range(len(self.weights))}
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return {v: tuple(sorted(nb)) for v, nb in out.items()}

    def _key(self) -> int:
        cached = self.__dict__.get("_canon")
        if cached is None:
            cached = _canonical_code(self.weights, self.adjacency())
            object.__setattr__(self, "_canon", cached)
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedTree):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(("WeightedTree", self._key()))


def _centers(n: int, adj: dict[int, tuple[int, ...]]) -> list[int]:
    if n <= 2:
        return list(range(n))
    deg = [len(adj[v]) for v in range(n)]
    layer = [v for v in range(n) if deg[v] == 1]
    removed = 0
    while n - removed > 2:
        nxt = []
        for v in layer:
            deg[v] = 0
            for u in adj[v]:
                if deg[u] > 0:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        removed += len(layer)
        layer = nxt
    return layer


def _rooted_code(weights, adj, root: int) -> int:
    parent = {root: -1}
    order = [root]
    for v in order:
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    code: dict[int, int] = {}
    for v in reversed(order):
        children = tuple(sorted(code[u] for u in adj[v] if parent.get(u) == v))
        key = (weights[v], children)
        with _shape_lock:
            code[v] = _shape_codes.setdefault(key, len(_shape_codes))
    return code[root]


def _canonical_code(weights, adj) -> int:
    n = len(weights)
    if n == 0:
        with _shape_lock:
            return _shape_codes.setdefault("empty", len(_shape_codes))
    return min(_rooted_code(weights, adj, c) for c in _centers(n, adj))


@dataclass(frozen=True, eq=False)
class Chain:
    """A linear dual graph [a1,...,ar]; entry a_i is minus the weight.

    Equality ignores orientation, matching the convention that a chain and
    its reversal denote the same divisor.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))

    @classmethod
    def from_runs(cls, items) -> "Chain":
        """Expand run notation; (v, n) means n copies of v.

        The boundary convention allows the run (2, -1) when an entry 3
        immediately follows: the two cancel and the preceding entry (if
        any) is incremented, so [a,(2,-1),3] collapses to [a+1] and a
        leading [(2,-1),3] collapses to nothing.
        """
        seq = list(items)
        flat: list[int] = []
        i = 0
        while i < len(seq):
            item = seq[i]
            if isinstance(item, tuple):
                v, n = int(item[0]), int(item[1])
                if n == -1:
                    if v != 2:
                        raise ValueError(f"negative run count on value {v}")
                    if i + 1 >= len(seq) or seq[i + 1] != 3:
                        raise ValueError("(2,-1) run must be followed by the entry 3")
                    if flat:
                        flat[-1] += 1
                    i += 2
                    continue
                if n < 0:
                    raise ValueError(f"negative run count {n}")
                flat.extend([v] * n)
            else:
                flat.append(int(item))
            i += 1
        return cls(tuple(flat))

    def __len__(self) -> int:
        return len(self.entries)

    def reverse(self) -> "Chain":
        return Chain(tuple(reversed(self.entries)))

    def to_tree(self) -> WeightedTree:
        n = len(self.entries)
        return WeightedTree(
            tuple(-a for a in self.entries),
            tuple((i, i + 1) for i in range(n - 1)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.entries == other.entries or self.entries == other.entries[::-1]

    def __hash__(self) -> int:
        return hash(min(self.entries, self.entries[::-1]))

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.entries) + "]"


Divisor = Union[WeightedTree, Chain]


def _as_tree(t: Divisor) -> WeightedTree:
    return t.to_tree() if isinstance(t, Chain) else t


def _continuant(entries: tuple[int, ...]) -> int:
    prev, cur = 0, 1
    for a in entries:
        prev, cur = cur, a * cur - prev
    return cur


def _negated_matrix(t: WeightedTree) -> list[list[int]]:
    n = len(t.weights)
    m = [[0] * n for _ in range(n)]
    for i, w in enumerate(t.weights):
        m[i][i] = -w
    for a, b in t.edges:
        m[a][b] = m[b][a] = -1
    return m


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    denom = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // denom
        denom = a[k][k]
    return sign * a[n - 1][n - 1]


def _tree_discriminant(t: WeightedTree) -> int:
    n = len(t.weights)
    if n == 0:
        return 1
    adj = t.adjacency()
    order = [0]
    parent = {0: -1}
    for v in order:
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    sub = [0] * n     # determinant of the subtree at v
    drop = [0] * n    # determinant of the subtree at v minus v itself
    for v in reversed(order):
        children = [u for u in adj[v] if parent[u] == v]
        prod = 1
        for u in children:
            prod *= sub[u]
        drop[v] = prod
        total = -t.weights[v] * prod
        if children:
            # exclude one child at a time via prefix/suffix products
            k = len(children)
            pre = [1] * (k + 1)
            for i, u in enumerate(children):
                pre[i + 1] = pre[i] * sub[u]
            suf = [1] * (k + 1)
            for i in range(k - 1, -1, -1):
                suf[i] = suf[i + 1] * sub[children[i]]
            for i, u in enumerate(children):
                total -= drop[u] * pre[i] * suf[i + 1]
        sub[v] = total
    return sub[0]


def discriminant(t: Divisor) -> int:
    """Determinant of the negated intersection matrix; d(empty) = 1.

    Chains use the continuant recursion; trees use a linear-time pruning
    recursion, cross-checked against dense fraction-free elimination on
    every tree with at most 12 vertices.
    """
    if isinstance(t, Chain):
        return _continuant(t.entries)
    d = _tree_discriminant(t)
    if len(t.weights) <= 12:
        assert d == _bareiss_det(_negated_matrix(t)), "discriminant routes disagree"
    return d


def is_negative_definite(t: Divisor) -> bool:
    """Sylvester test via exact leaf-to-root pivots of the negated matrix."""
    tree = _as_tree(t)
    n = len(tree.weights)
    if n == 0:
        return True
    adj = tree.adjacency()
    order = [0]
    parent = {0: -1}
    for v in order:
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    pivot: dict[int, Fraction] = {}
    for v in reversed(order):
        p = Fraction(-tree.weights[v])
        for u in adj[v]:
            if parent[u] == v:
                p -= 1 / pivot[u]
        if p <= 0:
            return False
        pivot[v] = p
    return True


def star_concat(a: Chain, b: Chain) -> Chain:
    """[a1,...,a_{r-1}, a_r + b1 - 1, b2,...,b_s]; associative, [1] is neutral."""
    if not a.entries or not b.entries:
        raise ValueError("star concatenation needs nonempty chains")
    return Chain(a.entries[:-1] + (a.entries[-1] + b.entries[0] - 1,) + b.entries[1:])


def adjoint(a: Chain) -> Chain:
    """The chain A* with d(A*) = d(A); [A,1,A*] contracts to a 0-curve."""
    if not a.entries:
        raise ValueError("adjoint of the empty chain is undefined")
    for e in a.entries:
        if e < 2:
            raise EntryBelowTwo(f"entry {e} < 2 has no adjoint")
    out = Chain((2,) * (a.entries[-1] - 1))
    for e in reversed(a.entries[:-1]):
        out = star_concat(out, Chain((2,) * (e - 1)))
    return out


def blow_up(t: WeightedTree, site) -> WeightedTree:
    """Append a fresh (-1)-vertex at a vertex (outer) or an edge (inner).

    Outer: the site's weight drops by one.  Inner: the edge is replaced by
    the two edges through the new vertex and both endpoints drop by one.
    Either way the discriminant of the tree is unchanged.
    """
    n = len(t.weights)
    new = n
    if isinstance(site, int):
        if not 0 <= site < n:
            raise ValueError(f"no vertex {site}")
        weights = list(t.weights)
        weights[site] -= 1
        weights.append(-1)
        return WeightedTree(tuple(weights), t.edges + ((site, new),))
    a, b = site
    e = (a, b) if a < b else (b, a)
    if e not in t.edges:
        raise ValueError(f"no edge {e}")
    weights = list(t.weights)
    weights[e[0]] -= 1
    weights[e[1]] -= 1
    weights.append(-1)
    edges = tuple(x for x in t.edges if x != e) + ((e[0], new), (e[1], new))
    return WeightedTree(tuple(weights), edges)


def blow_down(t: WeightedTree, v: int) -> WeightedTree:
    """Contract a non-branching (-1)-vertex; later ids shift down by one."""
    n = len(t.weights)
    if not 0 <= v < n:
        raise ValueError(f"no vertex {v}")
    if t.weights[v] != -1:
        raise NotContractible(f"vertex {v} has weight {t.weights[v]}, not -1")
    nbrs = sorted(u for e in t.edges if v in e for u in e if u != v)
    if len(nbrs) > 2:
        raise NotContractible(f"vertex {v} is branching (degree {len(nbrs)})")
    weights = [w + (1 if i in nbrs else 0) for i, w in enumerate(t.weights) if i != v]
    edges = [e for e in t.edges if v not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    remap = lambda x: x if x < v else x - 1
    return WeightedTree(tuple(weights), tuple((remap(a), remap(b)) for a, b in edges))


def _contract_all(t: WeightedTree):
    """Blow down (-1)-vertices (smallest original id first) until stuck.

    Returns the surviving weights and adjacency keyed by ORIGINAL ids plus
    the contraction order.  The greedy order is harmless: a contractible
    configuration stays contractible whichever eligible vertex goes first.
    """
    weights = dict(enumerate(t.weights))
    adj: dict[int, set[int]] = {v: set() for v in weights}
    for a, b in t.edges:
        adj[a].add(b)
        adj[b].add(a)
    trace: list[int] = []
    while len(weights) > 1:
        v = min(
            (x for x in weights if weights[x] == -1 and len(adj[x]) <= 2),
            default=None,
        )
        if v is None:
            break
        nbrs = sorted(adj[v])
        for u in nbrs:
            weights[u] += 1
            adj[u].discard(v)
        if len(nbrs) == 2:
            adj[nbrs[0]].add(nbrs[1])
            adj[nbrs[1]].add(nbrs[0])
        del weights[v], adj[v]
        trace.append(v)
    return weights, adj, trace


@dataclass(frozen=True)
class ContractionResult:
    """Outcome of iterated blowdowns; order lists original vertex ids."""

    ok: bool
    order: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def contracts_to_smooth_point(t: Divisor) -> ContractionResult:
    """True when iterated blowdowns leave a single removable (-1)-vertex."""
    tree = _as_tree(t)
    if not tree.weights:
        return ContractionResult(False, ())
    weights, _, trace = _contract_all(tree)
    ok = len(weights) == 1 and next(iter(weights.values())) == -1
    return ContractionResult(ok, tuple(trace))


def contracts_to_zero_curve(t: Divisor) -> bool:
    """True when iterated blowdowns leave a single 0-weight vertex."""
    tree = _as_tree(t)
    if not tree.weights:
        return False
    weights, _, _ = _contract_all(tree)
    return len(weights) == 1 and next(iter(weights.values())) == 0


def fiber_multiplicities(t: Divisor) -> tuple[int, ...]:
    """The primitive positive kernel vector of the intersection matrix.

    A reduced fiber of a P1-fibration supports a unique such vector (the
    component multiplicities).  Kernel dimension other than one, or a
    kernel vector with entries of mixed sign, means no fiber structure.
    """
    tree = _as_tree(t)
    n = len(tree.weights)
    if n == 0:
        raise NotAFiber("empty divisor")
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, w in enumerate(tree.weights):
        m[i][i] = Fraction(w)
    for a, b in tree.edges:
        m[a][b] = m[b][a] = Fraction(1)

    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        sel = next((r for r in range(row, n) if m[r][col] != 0), None)
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = m[row][col]
        m[row] = [x / inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivot_cols.append(col)
        row += 1
    if n - row != 1:
        raise NotAFiber(f"kernel dimension {n - row} != 1")
    free = next(c for c in range(n) if c not in pivot_cols)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for r, col in enumerate(pivot_cols):
        x[col] = -m[r][free]
    scale = lcm(*(xi.denominator for xi in x))
    v = [int(xi * scale) for xi in x]
    g = gcd(*v)
    v = [vi // g for vi in v]
    if any(vi <= 0 for vi in v):
        raise NotAFiber(f"kernel vector {tuple(v)} is not positive")
    return tuple(v)


@dataclass(frozen=True)
class FiberReport:
    shape: str
    multiplicities: tuple[int, ...]
    minus_one_vertices: tuple[int, ...]


def _path_order(tree: WeightedTree, adj: dict[int, tuple[int, ...]]) -> list[int]:
    n = len(tree.weights)
    if n == 1:
        return [0]
    start = min(v for v in range(n) if len(adj[v]) == 1)
    order = [start]
    prev, cur = -1, start
    while len(order) < n:
        nxt = next(u for u in adj[cur] if u != prev)
        prev, cur = cur, nxt
        order.append(cur)
    return order


def classify_fiber(t: Divisor) -> FiberReport:
    """Shape and multiplicities of a reduced fiber.

    Shapes: a single 0-curve (nondegenerate), a chain, a special fork (one
    branching vertex, two [2]-twigs of multiplicity 1, the far tip of the
    remaining twig of multiplicity 2), or other.  Every (-1)-vertex must be
    non-branching; a chain with a unique (-1)-vertex must read [U,1,U*].
    """
    tree = _as_tree(t)
    mu = fiber_multiplicities(tree)
    adj = tree.adjacency()
    n = len(tree.weights)
    minus_ones = tuple(v for v, w in enumerate(tree.weights) if w == -1)
    for v in minus_ones:
        if len(adj[v]) >= 3:
            raise NotAFiber(f"(-1)-curve {v} is branching")
    degrees = [len(adj[v]) for v in range(n)]

    if n == 1:
        return FiberReport(NONDEGENERATE, mu, minus_ones)

    if max(degrees) <= 2:
        if len(minus_ones) == 1:
            order = _path_order(tree, adj)
            pos = order.index(minus_ones[0])
            before = tuple(-tree.weights[v] for v in order[:pos])
            after = tuple(-tree.weights[v] for v in order[pos + 1:])
            if not before or not after:
                raise NotAFiber("unique (-1)-curve sits at a tip of the chain")
            try:
                star = adjoint(Chain(before))
            except EntryBelowTwo as exc:
                raise NotAFiber(f"chain fiber is not [U,1,U*]: {exc}") from exc
            if star.entries != after:
                raise NotAFiber(
                    f"chain fiber is not [U,1,U*]: adjoint of {before} is "
                    f"{star.entries}, found {after}")
            assert _continuant(before) == _continuant(after)
        return FiberReport(CHAIN, mu, minus_ones)

    if max(degrees) == 3 and degrees.count(3) == 1:
        center = degrees.index(3)
        twigs = []
        for nb in adj[center]:
            twig = [nb]
            prev, cur = center, nb
            while len(adj[cur]) == 2:
                nxt = next(u for u in adj[cur] if u != prev)
                prev, cur = cur, nxt
                twig.append(cur)
            twigs.append(twig)
        simple = [
            tw for tw in twigs
            if len(tw) == 1 and tree.weights[tw[0]] == -2 and mu[tw[0]] == 1
        ]
        if len(simple) == 2:
            rest = next(tw for tw in twigs if tw not in simple)
            if mu[rest[-1]] == 2:
                return FiberReport(SPECIAL_FORK, mu, minus_ones)
        return FiberReport(OTHER, mu, minus_ones)

    return FiberReport(OTHER, mu, minus_ones)


def _simulate(pairs: tuple[HNPair, ...]):
    """Run the blowup process of a chain-consistent HN pair list.

    Two reference curves carry the running intersection pair (a, b); only
    realized exceptional curves get vertices.  The first pair starts with
    both references virtual (the germ and its transversal); every later
    pair starts from the previous pair's last exceptional curve plus a
    fresh virtual germ.  Each blowup records min(a, b) as a multiplicity.
    """
    weights: list[int] = []
    edges: set[tuple[int, int]] = set()
    runs: list[tuple[int, int]] = []
    last = None
    for idx, pair in enumerate(pairs):
        ra = last if idx > 0 else None
        rb = None
        a, b = pair.c, pair.p
        while True:
            runs.append((min(a, b), 1))
            new = len(weights)
            weights.append(-1)
            if ra is not None and rb is not None:
                e = (ra, rb) if ra < rb else (rb, ra)
                assert e in edges, "real references must be adjacent"
                edges.remove(e)
                edges.add((ra, new))
                edges.add((rb, new))
                weights[ra] -= 1
                weights[rb] -= 1
            elif ra is not None or rb is not None:
                s = ra if ra is not None else rb
                edges.add((s, new))
                weights[s] -= 1
            if a > b:
                rb = new
                a -= b
            elif b > a:
                ra = new
                b -= a
            else:
                last = new
                break
    tree = WeightedTree(tuple(weights), tuple(sorted(edges)))
    return tree, MultiplicitySequence.from_runs(runs, FULL), last


@dataclass(frozen=True)
class MarkedResolution:
    """Dual graph of the minimal log resolution of one cusp.

    c_vertex is the unique (-1)-curve; attach marks where the proper
    transform of the branch meets the divisor (the same curve).  mult is
    the full multiplicity sequence read off during the construction.
    """

    tree: WeightedTree
    c_vertex: int
    attach: int
    mult: MultiplicitySequence
    hn: HNSequence

    def chain(self) -> Chain:
        """The divisor as a chain, (-1)-curve followed by the heavier side."""
        adj = self.tree.adjacency()
        if any(len(nb) > 2 for nb in adj.values()):
            raise ValueError("divisor is not a chain")
        order = _path_order(self.tree, adj)
        pos = order.index(self.c_vertex)
        left = [-self.tree.weights[v] for v in order[pos - 1::-1]] if pos else []
        right = [-self.tree.weights[v] for v in order[pos + 1:]]
        if _continuant(tuple(left)) >= _continuant(tuple(right)):
            heavier, lighter = left, right
        else:
            heavier, lighter = right, left
        return Chain(tuple(reversed(lighter)) + (1,) + tuple(heavier))


def resolution_graph(seq: HNSequence) -> MarkedResolution:
    """Build the marked resolution; non-standard input is standardized."""
    if seq.flavor == STANDARD:
        require_valid(seq)
        std = seq
    else:
        std = standardize(seq)
    tree, mult, last = _simulate(std.pairs)
    return MarkedResolution(tree=tree, c_vertex=last, attach=last, mult=mult, hn=std)


@dataclass(frozen=True)
class ChainIdentityReport:
    """Discriminant identities of the single-pair resolution chain.

    a_side and b_side read outward from the (-1)-curve, heavier side in
    a_side.  Truncations drop the far tip.
    """

    c: int
    p: int
    q_chain: Chain
    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    d_a: int
    d_b: int
    d_a_trunc: int
    d_b_trunc: int

    @property
    def ok(self) -> bool:
        r = self.c % self.p
        return (
            self.d_a == self.c
            and self.d_b == self.p
            and self.d_a_trunc == self.c - self.p
            and self.d_b_trunc == self.p - r
        )


def hn_chain_identities(c: int, p: int) -> ChainIdentityReport:
    """Check d(A) = c, d(B) = p and the far-tip truncation identities."""
    if c <= p or p < 1:
        raise ValueError(f"need c > p >= 1, got ({c},{p})")
    if gcd(c, p) != 1:
        raise NotCoprime(f"gcd({c},{p}) = {gcd(c, p)} != 1")
    tree, _, last = _simulate((HNPair(c, p),))
    adj = tree.adjacency()
    order = _path_order(tree, adj)
    pos = order.index(last)
    left = tuple(-tree.weights[v] for v in order[pos - 1::-1]) if pos else ()
    right = tuple(-tree.weights[v] for v in order[pos + 1:])
    if _continuant(left) >= _continuant(right):
        a_side, b_side = left, right
    else:
        a_side, b_side = right, left
    return ChainIdentityReport(
        c=c,
        p=p,
        q_chain=Chain(tuple(-tree.weights[v] for v in order)),
        a_side=a_side,
        b_side=b_side,
        d_a=_continuant(a_side),
        d_b=_continuant(b_side),
        d_a_trunc=_continuant(a_side[:-1]),
        d_b_trunc=_continuant(b_side[:-1]),
    )


def dot_export(obj) -> str:
    """Graphviz text with creation-ordered vertices for byte-stable output."""
    marked = obj if isinstance(obj, MarkedResolution) else None
    tree = marked.tree if marked else _as_tree(obj)
    lines = ["graph Q {", "  node [shape=circle];"]
    for v, w in enumerate(tree.weights):
        mark = ", shape=doublecircle" if marked and v == marked.c_vertex else ""
        lines.append(f'  v{v} [label="{w}"{mark}];')
    if marked:
        lines.append("  E [shape=box];")
    for a, b in tree.edges:
        lines.append(f"  v{a} -- v{b};")
    if marked:
        lines.append(f"  v{marked.attach} -- E [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
