"""Shared fixtures: worked examples and random-instance builders."""

from __future__ import annotations

import numpy as np
import pytest

from locc.core import OneWayProtocol, Povm, StateSet
from locc.graphs import CliqueCover, Graph, ProductStateSet
from locc.oracles import haar_unitary

K0 = np.array([1, 0], dtype=complex)
K1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


@pytest.fixture
def four_product_states() -> ProductStateSet:
    """|0>|0>, |0>|1>, |1>|+>, |1>|->: a distinguishable qubit-sender family."""
    return ProductStateSet.from_pairs([(K0, K0), (K0, K1), (K1, PLUS), (K1, MINUS)])


@pytest.fixture
def five_product_states() -> ProductStateSet:
    """Five orthogonal states on C^2 (x) C^3 with no one-way protocol."""
    b0 = np.array([1, 0, 0], dtype=complex)
    b1 = np.array([0, 1, 0], dtype=complex)
    b2 = np.array([0, 0, 1], dtype=complex)
    return ProductStateSet.from_pairs(
        [
            (K1, b1),
            (K0, b0 + b1),
            (K0, b0 - b1),
            (K0 + K1, b2),
            (K0 - K1, b2),
        ]
    )


@pytest.fixture
def qutrit_sender_instance():
    """Four states with a 3-dimensional sender and a 4-part certificate.

    Returns ``(states, graph, cover, povm)``: the sandwich graph is the
    4-cycle, the cover lists its four edges, and the POVM elements are
    rank-one with directions chosen so that ``Q_j`` annihilates every
    Alice factor outside part ``j``.
    """
    alice = [
        np.array(v, dtype=complex)
        for v in [(1, 1, 0), (1, 0, 1), (1, -1, 0), (1, 0, -1)]
    ]
    bob = [K0, K1, K0, K1]
    states = ProductStateSet.from_pairs(list(zip(alice, bob)))
    graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    cover = CliqueCover([(0, 1), (2, 3), (1, 2), (0, 3)])
    directions = [
        np.array(v, dtype=complex)
        for v in [(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    ]
    povm = Povm([np.outer(v, v.conj()) / 4 for v in directions])
    return states, graph, cover, povm


@pytest.fixture
def bell_pair_protocol():
    """Two Bell-type states (U = I, X) and the protocol that nails them."""
    p0 = np.outer(K0, K0.conj())
    p1 = np.outer(K1, K1.conj())
    states = StateSet.from_unitaries([np.eye(2), np.array([[0, 1], [1, 0]])])
    protocol = OneWayProtocol(
        alice_povm=[p0, p1],
        bob_povms=[[p0, p1], [p0, p1]],
        outcome_map={(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
    )
    return states, protocol


def _block_algebra_basis(blocks) -> list[np.ndarray]:
    """Matrix-unit basis of ``(+)_k M_{m_k} (x) I_{n_k}`` inside ``M_d``."""
    d = sum(m * n for m, n in blocks)
    basis = []
    offset = 0
    for m, n in blocks:
        for a in range(m):
            for b in range(m):
                e = np.zeros((d, d), dtype=complex)
                for t in range(n):
                    e[offset + a * n + t, offset + b * n + t] = 1
                basis.append(e)
        offset += m * n
    return basis


@pytest.fixture
def random_block_algebra():
    """Callable ``(rng, blocks) -> list of matrices`` spanning a known algebra.

    The returned matrices are a matrix-unit basis of the block-diagonal
    algebra with the given ``(m, n)`` multiplicities, conjugated by a Haar
    unitary so nothing is axis-aligned.
    """

    def build(rng: np.random.Generator, blocks):
        basis = _block_algebra_basis(blocks)
        u = haar_unitary(basis[0].shape[0], rng)
        return [u @ e @ u.conj().T for e in basis]

    return build


@pytest.fixture
def vectors_for_graph():
    """Callable ``Graph -> list of unit vectors`` realizing it exactly.

    The Gram matrix ``I + A/(2 vertex_count)`` is strictly diagonally
    dominant, so its Cholesky factor exists; its rows are unit vectors whose
    pairwise overlaps are exactly the Gram entries -- nonzero precisely on
    the edges.
    """

    def build(g: Graph):
        n = g.vertex_count
        gram = np.eye(n)
        for u, v in g.edges:
            gram[u, v] = gram[v, u] = 1.0 / (2.0 * n)
        chol = np.linalg.cholesky(gram)
        return [row.astype(complex) for row in chol]

    return build


def _ray(theta: float) -> np.ndarray:
    return np.array([np.cos(theta), np.sin(theta)], dtype=complex)


def _ray_perp(theta: float) -> np.ndarray:
    return np.array([-np.sin(theta), np.cos(theta)], dtype=complex)


@pytest.fixture
def random_qubit_instance(vectors_for_graph):
    """Callable ``rng -> ProductStateSet`` drawing mutually orthogonal
    qubit-sender instances with nontrivial graphs on both sides.

    Alice's factors are drawn from two orthogonal ray pairs, so the only
    Alice-orthogonal pairs are partners within a pair; every such pair may
    (or may not) carry a Bob overlap, and every other pair gets one of
    Bob's exact orthogonal representations.
    """

    def build(rng: np.random.Generator, r: int = 4) -> ProductStateSet:
        thetas = (0.0, np.pi / 5)
        classes = [int(c) for c in rng.integers(0, 4, size=r)]
        alice = [
            _ray(thetas[c // 2]) if c % 2 == 0 else _ray_perp(thetas[c // 2])
            for c in classes
        ]
        # pairs orthogonal on Alice's side: same ray pair, opposite parity
        alice_orth = [
            (u, v)
            for u in range(r)
            for v in range(u + 1, r)
            if classes[u] // 2 == classes[v] // 2 and classes[u] % 2 != classes[v] % 2
        ]
        gb_edges = [e for e in alice_orth if rng.random() < 0.5]
        bob = vectors_for_graph(Graph.from_edges(r, gb_edges))
        return ProductStateSet.from_pairs(list(zip(alice, bob)))

    return build
