"""Orthogonality graphs and graph-side distinguishability machinery.

A family of product states ``|a_v>|b_v>`` induces two graphs on the index
set: vertices are states, and ``u ~ v`` iff the corresponding local vectors
are *non-orthogonal* (``G_A`` from Alice's factors, ``G_B`` from Bob's).
Mutual orthogonality of the products is exactly ``G_A <= complement(G_B)``.

Distinguishability by one-way LOCC (Alice first) is controlled by clique
covers of graphs sandwiched between ``G_A`` and ``complement(G_B)``; with a
two-dimensional sender the threshold is a cover by two cliques, decided here
by a pruned search over vertex assignments.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .core import (
    DEFAULT_TOL,
    Decision,
    OneWayProtocol,
    Povm,
    StateSet,
    kron_ket,
    normalized,
    validate_povm,
)
from .errors import (
    BadDimension,
    BadParams,
    DimensionMismatch,
    InvalidCertificate,
    InvalidPovm,
    NotOrthogonalStates,
    NotSpanning,
    TooLarge,
    VertexCountMismatch,
    ZeroVector,
)

#: Exact clique-cover computations refuse graphs larger than this.
MAX_COVER_VERTICES = 20


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0 .. vertex_count-1``."""

    vertex_count: int
    edges: frozenset

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> "Graph":
        if vertex_count < 0:
            raise BadParams("negative vertex count")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise BadParams(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise BadParams(f"edge ({u},{v}) out of range")
            norm.add(_norm_edge(u, v))
        return cls(vertex_count=vertex_count, edges=frozenset(norm))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_clique(self, vertices) -> bool:
        vs = sorted(set(vertices))
        return all(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def complement(g: Graph) -> Graph:
    """Complement graph on the same vertices."""
    edges = {
        (u, v)
        for u in range(g.vertex_count)
        for v in range(u + 1, g.vertex_count)
        if (u, v) not in g.edges
    }
    return Graph(vertex_count=g.vertex_count, edges=frozenset(edges))


def is_subgraph(g1: Graph, g2: Graph) -> bool:
    """True iff ``g1`` and ``g2`` share vertices and ``E(g1) <= E(g2)``."""
    if g1.vertex_count != g2.vertex_count:
        raise VertexCountMismatch(f"{g1.vertex_count} vs {g2.vertex_count} vertices")
    return g1.edges <= g2.edges


def graph_from_vectors(kets, tol: float = DEFAULT_TOL) -> Graph:
    """Non-orthogonality graph of a family of vectors.

    Vertices ``u ~ v`` iff ``|<k_u|k_v>| > tol`` after normalization (the
    graph is scale invariant).  Pairs whose overlap falls within a decade of
    the threshold are reported in a ``UserWarning`` since the adjacency is
    then poorly conditioned.
    """
    vecs = [normalized(k, tol) for k in kets]
    if vecs and any(v.size != vecs[0].size for v in vecs):
        raise DimensionMismatch("vectors must share a dimension")
    edges = set()
    borderline = []
    for u in range(len(vecs)):
        for v in range(u + 1, len(vecs)):
            ip = abs(np.vdot(vecs[u], vecs[v]))
            if ip > tol:
                edges.add((u, v))
            if tol / 10 <= ip <= tol * 10:
                borderline.append((u, v, ip))
    if borderline:
        pairs = ", ".join(f"({u},{v}): {ip:.3e}" for u, v, ip in borderline[:8])
        warnings.warn(
            f"overlaps within a decade of tol={tol:g} for pairs {pairs}; "
            "the orthogonality graph may be unreliable",
            stacklevel=2,
        )
    return Graph(vertex_count=len(vecs), edges=frozenset(edges))


# ---------------------------------------------------------------------------
# clique covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliqueCover:
    """An ordered family of vertex sets, each meant to induce a clique."""

    parts: tuple

    def __init__(self, parts) -> None:
        object.__setattr__(self, "parts", tuple(frozenset(int(v) for v in p) for p in parts))

    def __len__(self) -> int:
        return len(self.parts)


def is_clique_cover(g: Graph, cover: CliqueCover) -> bool:
    """True iff every part induces a clique and all vertices/edges are covered."""
    covered_vertices = set()
    covered_edges = set()
    for part in cover.parts:
        if any(not (0 <= v < g.vertex_count) for v in part):
            return False
        if not g.is_clique(part):
            return False
        covered_vertices |= part
        vs = sorted(part)
        covered_edges |= {(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :]}
    return covered_vertices == set(range(g.vertex_count)) and g.edges <= covered_edges


def _set_cover_exact(masks: list[int], universe: int) -> list[int]:
    """Minimum cover of the bit universe by the given masks (branch and bound)."""
    element_to_sets: dict[int, list[int]] = {}
    bit = 1
    pos = 0
    while bit <= universe:
        if universe & bit:
            owners = [i for i, m in enumerate(masks) if m & bit]
            if not owners:
                raise BadParams("universe element covered by no set")
            element_to_sets[pos] = owners
        bit <<= 1
        pos += 1

    # greedy upper bound
    best: list[int] = []
    uncovered = universe
    while uncovered:
        i = max(range(len(masks)), key=lambda i: bin(masks[i] & uncovered).count("1"))
        best.append(i)
        uncovered &= ~masks[i]
    best_len = len(best)

    max_gain = max(bin(m).count("1") for m in masks) if masks else 1
    chosen: list[int] = []

    def dfs(uncovered: int) -> None:
        nonlocal best, best_len
        if not uncovered:
            if len(chosen) < best_len:
                best, best_len = list(chosen), len(chosen)
            return
        need = -(-bin(uncovered).count("1") // max_gain)  # ceil division
        if len(chosen) + need >= best_len:
            return
        # branch on the uncovered element with fewest candidate sets
        pick = None
        pick_owners = None
        bit = uncovered & -uncovered
        scan = uncovered
        while scan:
            b = scan & -scan
            owners = [i for i in element_to_sets[b.bit_length() - 1] if masks[i] & uncovered & b]
            if pick_owners is None or len(owners) < len(pick_owners):
                pick, pick_owners = b, owners
                if len(owners) <= 1:
                    break
            scan &= ~b
        for i in sorted(pick_owners, key=lambda i: -bin(masks[i] & uncovered).count("1")):
            chosen.append(i)
            dfs(uncovered & ~masks[i])
            chosen.pop()

    dfs(universe)
    return best


def minimum_clique_cover(g: Graph) -> CliqueCover:
    """An optimal clique cover (vertices and edges both covered), exact.

    Maximal cliques are enumerated with networkx (Bron-Kerbosch with
    pivoting) and the covering subfamily is found by branch-and-bound set
    cover over the vertex+edge universe.  Exponential in the worst case;
    refuses graphs with more than ``MAX_COVER_VERTICES`` vertices.
    """
    r = g.vertex_count
    if r > MAX_COVER_VERTICES:
        raise TooLarge(f"{r} vertices exceeds the exact-solver bound {MAX_COVER_VERTICES}")
    if r == 0:
        return CliqueCover(())
    gx = nx.Graph()
    gx.add_nodes_from(range(r))
    gx.add_edges_from(g.edges)
    cliques = [frozenset(c) for c in nx.find_cliques(gx)]

    edge_ids = {e: r + i for i, e in enumerate(sorted(g.edges))}
    masks = []
    for c in cliques:
        m = 0
        for v in c:
            m |= 1 << v
        vs = sorted(c)
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                m |= 1 << edge_ids[(u, v)]
        masks.append(m)
    universe = (1 << (r + len(g.edges))) - 1
    picked = _set_cover_exact(masks, universe)
    return CliqueCover(tuple(cliques[i] for i in picked))


def clique_cover_number(g: Graph) -> int:
    """Minimum number of cliques covering all vertices and edges of ``g``."""
    return len(minimum_clique_cover(g))


# ---------------------------------------------------------------------------
# product state families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductStateSet:
    """Pure product states ``|a_v>|b_v>`` with normalized local factors."""

    alice: tuple
    bob: tuple

    @classmethod
    def from_pairs(cls, pairs, tol: float = DEFAULT_TOL) -> "ProductStateSet":
        """Build from ``(alice_ket, bob_ket)`` pairs, normalizing each factor."""
        alice, bob = [], []
        for i, (a, b) in enumerate(pairs):
            try:
                alice.append(normalized(a, tol))
                bob.append(normalized(b, tol))
            except ZeroVector as exc:
                raise ZeroVector(f"state {i}: {exc}") from None
        if not alice:
            raise BadParams("need at least one product state")
        if any(a.size != alice[0].size for a in alice) or any(
            b.size != bob[0].size for b in bob
        ):
            raise DimensionMismatch("local dimensions differ across states")
        return cls(alice=tuple(alice), bob=tuple(bob))

    @property
    def dA(self) -> int:
        return self.alice[0].size

    @property
    def dB(self) -> int:
        return self.bob[0].size

    def __len__(self) -> int:
        return len(self.alice)

    def graph_alice(self, tol: float = DEFAULT_TOL) -> Graph:
        return graph_from_vectors(self.alice, tol)

    def graph_bob(self, tol: float = DEFAULT_TOL) -> Graph:
        return graph_from_vectors(self.bob, tol)

    def orthogonality_defect(self) -> float:
        """Largest overlap ``|<a_u|a_v><b_u|b_v>|`` over distinct pairs."""
        worst = 0.0
        for u in range(len(self)):
            for v in range(u + 1, len(self)):
                worst = max(
                    worst,
                    abs(np.vdot(self.alice[u], self.alice[v]))
                    * abs(np.vdot(self.bob[u], self.bob[v])),
                )
        return worst

    def to_state_set(self) -> StateSet:
        kets = tuple(kron_ket(a, b) for a, b in zip(self.alice, self.bob))
        return StateSet(dA=self.dA, dB=self.dB, kets=kets, kind="product")


def _require_orthogonal(s: ProductStateSet, tol: float) -> None:
    defect = s.orthogonality_defect()
    if defect > tol:
        raise NotOrthogonalStates(f"largest product overlap {defect:.3e} exceeds tol")


# ---------------------------------------------------------------------------
# protocol verification (any sender dimension)
# ---------------------------------------------------------------------------


def verify_product_protocol(
    s: ProductStateSet,
    g: Graph,
    cover: CliqueCover,
    povm: Povm,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Check a graph/cover/POVM certificate for product-state families.

    Mutually orthogonal product states whose Alice factors span her space
    are one-way distinguishable iff there exist a graph ``G`` with
    ``G_A <= G <= complement(G_B)``, a clique cover ``{V_j}`` of ``G`` and a
    POVM ``{Q_j}`` on Alice's side (one element per part) such that
    ``Q_j |a_v> != 0`` only when ``v`` is in ``V_j``.  This verifies the
    three conditions for given data; it does not search.
    """
    if g.vertex_count != len(s):
        raise VertexCountMismatch(f"graph on {g.vertex_count} vertices, {len(s)} states")
    stack = np.stack(s.alice)
    if np.linalg.matrix_rank(stack, tol=1e-7 * float(np.linalg.norm(stack))) < s.dA:
        raise NotSpanning("Alice's local states must span her whole space")
    _require_orthogonal(s, tol)
    if len(povm) != len(cover.parts):
        raise DimensionMismatch("need exactly one POVM element per cover part")
    if povm.dim != s.dA:
        raise DimensionMismatch("POVM must act on Alice's space")
    if not validate_povm(povm, tol):
        raise InvalidPovm("Q_j are not a POVM on Alice's space")

    ga = s.graph_alice(tol)
    gb_bar = complement(s.graph_bob(tol))
    if not (is_subgraph(ga, g) and is_subgraph(g, gb_bar)):
        return False
    if not is_clique_cover(g, cover):
        return False
    for q, part in zip(povm.elements, cover.parts):
        for v in range(len(s)):
            if v not in part and np.linalg.norm(q @ s.alice[v]) > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# two-dimensional sender: decision and protocol extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QubitSenderCertificate:
    """Witness that two cliques in ``complement(G_B)`` settle the instance.

    ``v1``/``v2`` cover all state indices, are independent in ``G_B``, and
    every edge of ``G_A`` lies inside one of them.  ``alice_basis`` holds the
    two orthonormal measurement directions; ``bob_measurements[k]`` holds the
    orthonormal kets Bob measures after Alice's outcome ``k``, ordered by
    state index (``sorted(v_k)``).
    """

    v1: frozenset
    v2: frozenset
    alice_basis: tuple
    bob_measurements: tuple


@dataclass(frozen=True)
class QubitSenderVerdict:
    decision: Decision
    certificate: QubitSenderCertificate | None
    graph_alice: Graph
    graph_bob: Graph


def _two_clique_assignment(ga: Graph, gb: Graph) -> tuple[frozenset, frozenset] | None:
    """First vertex assignment to {V1, V2, both} satisfying all constraints.

    Vertices are assigned in index order with choices ordered V1-only,
    V2-only, both, so the returned pair is deterministic (the
    lexicographically least valid assignment under that choice order).
    """
    r = ga.vertex_count
    assign = [0] * r

    def feasible(v: int, c: int) -> bool:
        for u in range(v):
            cu = assign[u]
            if gb.has_edge(u, v) and (cu & c):
                return False  # some part would contain a G_B edge
            if ga.has_edge(u, v) and not (cu & c):
                return False  # the G_A edge ends up inside neither part
        return True

    def dfs(v: int) -> bool:
        if v == r:
            return True
        for c in (1, 2, 3):
            if feasible(v, c):
                assign[v] = c
                if dfs(v + 1):
                    return True
        assign[v] = 0
        return False

    if not dfs(0):
        return None
    v1 = frozenset(v for v in range(r) if assign[v] & 1)
    v2 = frozenset(v for v in range(r) if assign[v] & 2)
    return v1, v2


def decide_qubit_sender(s: ProductStateSet, tol: float = DEFAULT_TOL) -> QubitSenderVerdict:
    """Decide one-way distinguishability for a two-dimensional sender.

    With ``dim(Alice) = 2``, mutually orthogonal product states are one-way
    distinguishable iff some graph between ``G_A`` and ``complement(G_B)``
    has a cover by at most two cliques -- equivalently, iff the vertices can
    be assigned to two sets, each independent in ``G_B``, jointly covering
    all vertices, with every ``G_A`` edge inside one set.  The search is a
    pruned DFS over per-vertex assignments.

    All-parallel Alice factors are allowed (orthogonality then forces
    ``G_B`` to be empty and Bob can do everything alone).
    """
    if s.dA != 2:
        raise BadDimension(f"sender dimension must be 2, got {s.dA}")
    _require_orthogonal(s, tol)
    ga = s.graph_alice(tol)
    gb = s.graph_bob(tol)
    found = _two_clique_assignment(ga, gb)
    if found is None:
        return QubitSenderVerdict(
            decision=Decision.INDISTINGUISHABLE,
            certificate=None,
            graph_alice=ga,
            graph_bob=gb,
        )
    v1, v2 = found
    cert = _build_certificate(s, ga, gb, v1, v2)
    return QubitSenderVerdict(
        decision=Decision.DISTINGUISHABLE,
        certificate=cert,
        graph_alice=ga,
        graph_bob=gb,
    )


def _build_certificate(
    s: ProductStateSet, ga: Graph, gb: Graph, v1: frozenset, v2: frozenset
) -> QubitSenderCertificate:
    everything = frozenset(range(len(s)))
    if not gb.edges:
        # Bob's states are pairwise orthogonal: he can measure them all
        # regardless of Alice's outcome, so any basis works for her.
        basis = (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))
        kets = tuple(normalized(b) for b in s.bob)
        return QubitSenderCertificate(
            v1=everything, v2=everything, alice_basis=basis, bob_measurements=(kets, kets)
        )
    shared = v1 & v2
    only1 = sorted(v1 - shared)
    only2 = sorted(v2 - shared)
    # if either part were contained in the other, its union would be an
    # independent set equal to V, i.e. G_B would have no edges (handled above)
    rep1, rep2 = only1[0], only2[0]
    psi1 = normalized(s.alice[rep1])
    # exact orthogonal complement in C^2; rep2's factor is parallel to it
    psi2 = np.array([-np.conj(psi1[1]), np.conj(psi1[0])])
    if abs(np.vdot(psi2, s.alice[rep2])) <= DEFAULT_TOL:
        raise InvalidCertificate("representative states are not orthogonal")
    meas = tuple(
        tuple(normalized(s.bob[v]) for v in sorted(part)) for part in (v1, v2)
    )
    return QubitSenderCertificate(
        v1=v1, v2=v2, alice_basis=(psi1, psi2), bob_measurements=meas
    )


def validate_qubit_certificate(
    s: ProductStateSet, cert: QubitSenderCertificate, tol: float = DEFAULT_TOL
) -> None:
    """Raise ``InvalidCertificate`` unless the witness is structurally sound.

    Checks, for ``j = 1, 2``: the parts cover all indices and are
    independent in ``G_B``; every ``G_A`` edge lies inside a part; the basis
    is orthonormal; and the zero-error condition ``<psi_j|a_v> = 0`` for
    every ``v`` outside ``V_j``.
    """
    r = len(s)
    v1, v2 = set(cert.v1), set(cert.v2)
    if v1 | v2 != set(range(r)):
        raise InvalidCertificate("parts do not cover all state indices")
    gb = s.graph_bob(tol)
    ga = s.graph_alice(tol)
    for name, part in (("v1", v1), ("v2", v2)):
        for u in part:
            for v in part:
                if u < v and gb.has_edge(u, v):
                    raise InvalidCertificate(f"{name} is not independent in G_B")
    for u, v in ga.edges:
        if not ({u, v} <= v1 or {u, v} <= v2):
            raise InvalidCertificate(f"G_A edge ({u},{v}) lies inside neither part")
    if len(cert.alice_basis) != 2:
        raise InvalidCertificate("alice_basis must hold exactly two kets")
    b1, b2 = (np.asarray(b, dtype=complex).ravel() for b in cert.alice_basis)
    if b1.size != s.dA or s.dA != 2:
        raise InvalidCertificate("alice_basis kets must live in C^2")
    gram = np.array([[np.vdot(b1, b1), np.vdot(b1, b2)], [np.vdot(b2, b1), np.vdot(b2, b2)]])
    if np.max(np.abs(gram - np.eye(2))) > max(tol, 1e-7):
        raise InvalidCertificate("alice_basis is not orthonormal")
    for j, (basis_ket, part) in enumerate(zip((b1, b2), (v1, v2)), start=1):
        for v in range(r):
            if v not in part and abs(np.vdot(basis_ket, s.alice[v])) > max(tol, 1e-7):
                raise InvalidCertificate(
                    f"state {v} outside v{j} is not orthogonal to psi_{j}"
                )


def extract_qubit_protocol(
    s: ProductStateSet, cert: QubitSenderCertificate, tol: float = DEFAULT_TOL
) -> OneWayProtocol:
    """Turn a certificate into an explicit zero-error one-way protocol.

    Alice measures in ``cert.alice_basis``; on outcome ``k`` Bob measures
    the (orthonormal) kets of the states in ``sorted(v_k)`` plus the
    projection onto their orthogonal complement, which is mapped to the
    inconclusive label ``None`` and never fires on valid certificates.
    """
    validate_qubit_certificate(s, cert, tol)
    b1, b2 = (np.asarray(b, dtype=complex).ravel() for b in cert.alice_basis)
    alice_povm = [np.outer(b1, b1.conj()), np.outer(b2, b2.conj())]
    bob_povms = []
    outcome_map = {}
    for k, part in enumerate((sorted(cert.v1), sorted(cert.v2))):
        kets = [normalized(s.bob[v]) for v in part]
        elements = [np.outer(b, b.conj()) for b in kets]
        for j, v in enumerate(part):
            outcome_map[(k, j)] = v
        rest = np.eye(s.dB, dtype=complex) - sum(elements)
        if np.max(np.abs(rest)) > tol:
            elements.append(rest)
            outcome_map[(k, len(part))] = None
        bob_povms.append(elements)
    protocol = OneWayProtocol(alice_povm, bob_povms, outcome_map)
    protocol.validate(s.dA, s.dB, max(tol, 1e-7))
    return protocol
