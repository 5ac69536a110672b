"""Dense linear algebra for bipartite state discrimination.

Conventions used throughout the package:

* kets are 1-D complex ``numpy`` arrays; a bipartite ket on ``C^dA (x) C^dB``
  is indexed row-major, i.e. component ``i*dB + j`` multiplies ``|i>|j>``;
* operators are 2-D complex arrays acting on column vectors;
* all comparisons against zero use an absolute tolerance (default ``1e-9``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidPovm,
    InvalidProtocol,
    NonSquare,
    NonUnitary,
    NotCoisometry,
    ZeroVector,
)

#: Absolute tolerance used by every zero test unless the caller overrides it.
DEFAULT_TOL = 1e-9


class Decision(enum.Enum):
    """Outcome of a distinguishability decision procedure."""

    DISTINGUISHABLE = "distinguishable"
    INDISTINGUISHABLE = "indistinguishable"
    CRITERION_NOT_APPLICABLE = "criterion_not_applicable"


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian inner product ``<u|v>`` (conjugate-linear in ``u``)."""
    u = np.asarray(u).ravel()
    v = np.asarray(v).ravel()
    if u.shape != v.shape:
        raise DimensionMismatch(f"vectors of length {u.size} and {v.size}")
    return complex(np.vdot(u, v))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two operators."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_ket(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product ket ``|u>|v>`` in the row-major composite indexing."""
    return np.kron(np.asarray(u).ravel(), np.asarray(v).ravel())


def normalized(v: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``v`` scaled to unit norm; raise ``ZeroVector`` if it is ~0."""
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n <= tol:
        raise ZeroVector("cannot normalize a (numerically) zero vector")
    return v / n


def require_square(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"{what} must be square, got shape {m.shape}")
    return m


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True if ``m.conj().T @ m`` is the identity within ``tol`` (max entry)."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    d = m.shape[0]
    return bool(np.max(np.abs(adjoint(m) @ m - np.eye(d))) <= tol * max(1.0, d))


def require_unitary(m: np.ndarray, tol: float = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    m = require_square(m, what)
    if not is_unitary(m, tol):
        raise NonUnitary(f"{what} is not unitary within tol={tol}")
    return m


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - adjoint(m))) <= tol)


# ---------------------------------------------------------------------------
# maximally entangled states and the map to the diagonal
# ---------------------------------------------------------------------------


def max_entangled(u: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ket of the maximally entangled state ``(I (x) U)|Phi>``.

    ``|Phi> = d^{-1/2} * sum_i |i>|i>`` is the canonical maximally entangled
    state on ``C^d (x) C^d``.  Applying ``U`` on the second factor gives a
    state whose amplitude on ``|i>|j>`` is ``U[j, i] / sqrt(d)``.

    Parameters
    ----------
    u : (d, d) array
        Unitary applied on the second (Bob's) factor.
    tol : float
        Tolerance for the unitarity check.

    Returns
    -------
    (d*d,) complex array, unit norm.
    """
    u = require_unitary(u, tol, "state unitary")
    d = u.shape[0]
    # row-major composite index i*d + j pairs |i> with U|i> = sum_j U[j,i]|j>
    return (u.T / np.sqrt(d)).ravel()


def map_to_diagonal(m: np.ndarray) -> np.ndarray:
    """Project a square matrix onto its diagonal (off-diagonal entries -> 0).

    This is the conditional expectation onto the diagonal algebra; it is
    idempotent and trace preserving.
    """
    m = require_square(m)
    return np.diag(np.diag(m))


# ---------------------------------------------------------------------------
# POVMs and one-way protocols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Povm:
    """A finite POVM: PSD elements summing to the identity."""

    elements: tuple[np.ndarray, ...]

    def __init__(self, elements) -> None:
        object.__setattr__(
            self, "elements", tuple(np.asarray(e, dtype=complex) for e in elements)
        )

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0] if self.elements else 0

    def __len__(self) -> int:
        return len(self.elements)


def validate_povm(povm: Povm | list, tol: float = DEFAULT_TOL) -> bool:
    """Check that a family of operators forms a POVM.

    Each element must be positive semidefinite -- tested as the minimum
    eigenvalue of its Hermitian part being ``>= -tol``, which is robust to
    symmetrization noise -- and the sum must equal the identity within
    ``tol`` (entrywise).
    """
    elements = povm.elements if isinstance(povm, Povm) else [np.asarray(e, dtype=complex) for e in povm]
    if not elements:
        return False
    d = elements[0].shape[0]
    total = np.zeros((d, d), dtype=complex)
    for e in elements:
        if e.ndim != 2 or e.shape != (d, d):
            return False
        herm = (e + adjoint(e)) / 2
        if np.linalg.eigvalsh(herm)[0] < -tol:
            return False
        total += e
    return bool(np.max(np.abs(total - np.eye(d))) <= tol * max(1.0, len(elements)))


@dataclass(frozen=True)
class WeightedStates:
    """States ``phi_k`` with positive weights ``m_k``.

    The intended invariant is ``sum_k m_k |phi_k><phi_k| = I`` -- i.e. the
    rank-one operators ``m_k |phi_k><phi_k|`` form a POVM.  Use
    :func:`weighted_resolution_defect` or the verifier below to check it.
    """

    states: tuple[np.ndarray, ...]
    weights: tuple[float, ...]

    def __init__(self, states, weights) -> None:
        states = tuple(np.asarray(s, dtype=complex).ravel() for s in states)
        weights = tuple(float(w) for w in weights)
        if len(states) != len(weights):
            raise DimensionMismatch("states and weights must have equal length")
        if any(w <= 0 for w in weights):
            raise InvalidPovm("weights must be positive")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.states[0].size if self.states else 0


def weighted_resolution_defect(ws: WeightedStates) -> float:
    """Max-entry distance of ``sum_k m_k |phi_k><phi_k|`` from the identity."""
    d = ws.dim
    acc = np.zeros((d, d), dtype=complex)
    for s, w in zip(ws.states, ws.weights):
        acc += w * np.outer(s, s.conj())
    return float(np.max(np.abs(acc - np.eye(d))))


def verify_witness_states(
    ws: WeightedStates, unitaries: list, tol: float = DEFAULT_TOL
) -> bool:
    """Verify a state/weight certificate for one-way distinguishability.

    The maximally entangled states ``(I (x) U_i)|Phi>`` are one-way
    distinguishable (Alice first) iff there are states ``phi_k`` and weights
    ``m_k`` with ``sum_k m_k |phi_k><phi_k| = I`` such that

        ``<phi_k| U_j^* U_i |phi_k> = 0``   for all ``k`` and all ``i != j``.

    This function checks the displayed condition for a *given* certificate.

    Raises
    ------
    InvalidPovm
        If ``ws`` does not resolve the identity within ``tol``.
    NonUnitary, DimensionMismatch
        On malformed ``unitaries``.
    """
    us = [require_unitary(u, tol, f"unitaries[{i}]") for i, u in enumerate(unitaries)]
    d = ws.dim
    for u in us:
        if u.shape[0] != d:
            raise DimensionMismatch(
                f"unitary of dimension {u.shape[0]} against states of dimension {d}"
            )
    if weighted_resolution_defect(ws) > tol * max(1.0, len(ws.states)):
        raise InvalidPovm("weighted states do not resolve the identity")
    for a in range(len(us)):
        for b in range(len(us)):
            if a == b:
                continue
            m = adjoint(us[b]) @ us[a]
            for s in ws.states:
                if abs(np.vdot(s, m @ s)) > tol:
                    return False
    return True


def verify_witness_isometry(w: np.ndarray, unitaries: list, tol: float = DEFAULT_TOL) -> bool:
    """Verify a partial-isometry certificate for one-way distinguishability.

    ``w`` must be a ``d x r`` matrix with ``w @ w^* = I_d`` (a coisometry).
    The certificate is accepted iff every diagonal entry of
    ``w^* U_j^* U_i w`` vanishes for all ``i != j``.  Columns of ``w``
    encode Alice's measurement directions: normalized columns are the states
    and squared column norms the weights of the equivalent
    :class:`WeightedStates` certificate.

    Raises ``NotCoisometry`` if ``w @ w^*`` is not the identity.
    """
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2:
        raise DimensionMismatch("certificate must be a matrix")
    d = w.shape[0]
    if np.max(np.abs(w @ adjoint(w) - np.eye(d))) > tol * max(1.0, d):
        raise NotCoisometry("w @ w^* != I within tol")
    us = [require_unitary(u, tol, f"unitaries[{i}]") for i, u in enumerate(unitaries)]
    for u in us:
        if u.shape[0] != d:
            raise DimensionMismatch("unitary dimension does not match certificate")
    for a in range(len(us)):
        for b in range(len(us)):
            if a == b:
                continue
            g = adjoint(w) @ adjoint(us[b]) @ us[a] @ w
            if np.max(np.abs(np.diag(g))) > tol:
                return False
    return True


def isometry_to_weighted_states(w: np.ndarray, tol: float = DEFAULT_TOL) -> WeightedStates:
    """Convert a coisometry certificate to its state/weight form."""
    w = np.asarray(w, dtype=complex)
    states, weights = [], []
    for k in range(w.shape[1]):
        col = w[:, k]
        n2 = float(np.linalg.norm(col) ** 2)
        if n2 <= tol:
            continue  # a zero column contributes nothing to the resolution
        states.append(col / np.sqrt(n2))
        weights.append(n2)
    return WeightedStates(states, weights)


# ---------------------------------------------------------------------------
# state sets and protocols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateSet:
    """A finite family of bipartite pure states to be told apart.

    ``kets[s]`` is the full state vector of the ``s``-th hypothesis on
    ``C^dA (x) C^dB`` (row-major composite index).
    """

    dA: int
    dB: int
    kets: tuple[np.ndarray, ...]
    kind: str = "generic"

    @classmethod
    def from_unitaries(cls, unitaries, tol: float = DEFAULT_TOL) -> "StateSet":
        """States ``(I (x) U_i)|Phi>`` on ``C^d (x) C^d``."""
        kets = tuple(max_entangled(u, tol) for u in unitaries)
        if not kets:
            raise DimensionMismatch("need at least one unitary")
        d = int(round(np.sqrt(kets[0].size)))
        return cls(dA=d, dB=d, kets=kets, kind="max_entangled")

    def __len__(self) -> int:
        return len(self.kets)

    def orthogonality_defect(self) -> float:
        """Largest ``|<psi_a|psi_b>|`` over distinct pairs (0 for a single state)."""
        worst = 0.0
        for a in range(len(self.kets)):
            for b in range(a + 1, len(self.kets)):
                worst = max(worst, abs(np.vdot(self.kets[a], self.kets[b])))
        return worst


@dataclass(frozen=True)
class OneWayProtocol:
    """A one-way LOCC measurement protocol, Alice measuring first.

    Alice applies the POVM ``alice_povm``; on outcome ``k`` Bob applies
    ``bob_povms[k]``; the pair of outcomes ``(k, j)`` is mapped to a state
    index by ``outcome_map`` (``None`` marks an inconclusive branch).
    """

    alice_povm: tuple[np.ndarray, ...]
    bob_povms: tuple[tuple[np.ndarray, ...], ...]
    outcome_map: dict = field(default_factory=dict)

    def __init__(self, alice_povm, bob_povms, outcome_map) -> None:
        object.__setattr__(
            self, "alice_povm", tuple(np.asarray(a, dtype=complex) for a in alice_povm)
        )
        object.__setattr__(
            self,
            "bob_povms",
            tuple(tuple(np.asarray(b, dtype=complex) for b in bs) for bs in bob_povms),
        )
        object.__setattr__(self, "outcome_map", dict(outcome_map))

    def validate(self, dA: int, dB: int, tol: float = DEFAULT_TOL) -> None:
        """Raise ``InvalidProtocol`` unless the POVM normalizations hold."""
        if len(self.alice_povm) != len(self.bob_povms):
            raise InvalidProtocol("need one Bob POVM per Alice outcome")
        if any(a.shape != (dA, dA) for a in self.alice_povm):
            raise InvalidProtocol(f"Alice's elements must be {dA}x{dA}")
        if not validate_povm(list(self.alice_povm), tol):
            raise InvalidProtocol("Alice's measurement is not a POVM")
        for k, bs in enumerate(self.bob_povms):
            if any(b.shape != (dB, dB) for b in bs):
                raise InvalidProtocol(f"Bob's elements for outcome {k} must be {dB}x{dB}")
            if not validate_povm(list(bs), tol):
                raise InvalidProtocol(f"Bob's measurement for Alice outcome {k} is not a POVM")
