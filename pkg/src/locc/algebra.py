"""Operator systems, *-algebra structure, and separating vectors.

For a family of unitaries ``U_1..U_r`` the distinguishability analysis runs
through the operator system

    ``S0 = span{ U_i^* U_j : i != j } + C*I``,

which is closed under adjoints by construction.  When ``S0`` is closed under
multiplication it is a finite-dimensional C*-algebra and decomposes (up to a
unitary change of basis) as a direct sum of blocks ``M_m (x) I_n``; the
maximally entangled states built from the ``U_i`` are one-way distinguishable
(Alice measuring first) iff some vector is *separating* for ``S0``, which
happens iff every block satisfies ``n >= m``.

The block data is recovered numerically: the commutant is the null space of
a commutation Gram operator, the center is the intersection of the algebra
with its commutant, and the spectral projections of a random Hermitian
central element cut out the minimal central projections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Decision, adjoint, require_unitary
from .errors import (
    DecompositionFailed,
    DimensionMismatch,
    NotAnAlgebra,
    NotOrthogonalStates,
    NotPermutation,
    SamplingFailed,
    ZeroVector,
)

#: Relative singular-value threshold for every rank / span decision.
RANK_RTOL = 1e-7

#: Eigenvalue clusters of the sampled central element are merged below this gap.
CLUSTER_GAP = 1e-6

_SAMPLE_RETRIES = 20


# ---------------------------------------------------------------------------
# span utilities (vectorized matrices as rows)
# ---------------------------------------------------------------------------


def _orthonormal_rows(rows: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as rows) of the row span, rank cut at RANK_RTOL."""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    if rows.size == 0:
        return rows.reshape(0, rows.shape[-1])
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] <= 0:
        return vh[:0]
    return vh[s > s[0] * RANK_RTOL]


def _residual_norms(rows: np.ndarray, basis_rows: np.ndarray) -> np.ndarray:
    """Norm of each row's component orthogonal to the span of basis_rows."""
    if basis_rows.shape[0] == 0:
        return np.linalg.norm(rows, axis=1)
    proj = (rows @ adjoint(basis_rows)) @ basis_rows
    return np.linalg.norm(rows - proj, axis=1)


def _pairwise_product_rows(basis: np.ndarray, chunk: int = 2048):
    """Yield vectorized products B_a @ B_b in row chunks of bounded size."""
    dim_a = basis.shape[0]
    d = basis.shape[1]
    per = max(1, chunk // dim_a)
    for start in range(0, dim_a, per):
        block = basis[start : start + per]  # (p, d, d)
        prods = np.einsum("aij,bjk->abik", block, basis)
        yield prods.reshape(-1, d * d)


# ---------------------------------------------------------------------------
# operator systems
# ---------------------------------------------------------------------------


@dataclass
class OperatorSystem:
    """An adjoint-closed, unital subspace of ``M_d`` with orthonormal basis.

    ``basis`` has shape ``(D, d, d)``; its elements are orthonormal for the
    trace inner product ``<A, B> = tr(A^* B)``.
    """

    dim: int
    basis: np.ndarray
    contains_identity: bool
    closed_under_mult: bool

    @property
    def system_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def rows(self) -> np.ndarray:
        return self.basis.reshape(self.basis.shape[0], -1)

    def contains(self, m: np.ndarray) -> bool:
        """Span membership of a single matrix at the package rank threshold."""
        row = np.asarray(m, dtype=complex).reshape(1, -1)
        scale = max(1.0, float(np.linalg.norm(row)))
        return float(_residual_norms(row, self.rows)[0]) <= RANK_RTOL * scale

    @classmethod
    def from_matrices(cls, mats, tol: float = DEFAULT_TOL) -> "OperatorSystem":
        """Operator system spanned by ``mats`` (must be adjoint-closed)."""
        mats = [np.asarray(m, dtype=complex) for m in mats]
        if not mats:
            raise DimensionMismatch("need at least one matrix")
        d = mats[0].shape[0]
        if any(m.shape != (d, d) for m in mats):
            raise DimensionMismatch("matrices must share a square shape")
        rows = np.stack([m.ravel() for m in mats])
        basis_rows = _orthonormal_rows(rows)
        basis = basis_rows.reshape(-1, d, d)
        # the span must be closed under adjoints for the theory to apply
        adj_rows = np.conj(np.transpose(basis, (0, 2, 1))).reshape(-1, d * d)
        if np.max(_residual_norms(adj_rows, basis_rows)) > RANK_RTOL * np.sqrt(d):
            raise NotAnAlgebra("span is not closed under adjoints")
        ident = np.eye(d, dtype=complex).reshape(1, -1)
        has_id = float(_residual_norms(ident, basis_rows)[0]) <= RANK_RTOL * np.sqrt(d)
        return cls(
            dim=d,
            basis=basis,
            contains_identity=has_id,
            closed_under_mult=_closed_under_mult(basis),
        )


def _closed_under_mult(basis: np.ndarray) -> bool:
    d = basis.shape[1]
    if basis.shape[0] == d * d:  # the span is all of M_d
        return True
    rows = basis.reshape(basis.shape[0], -1)
    for chunk in _pairwise_product_rows(basis):
        scale = np.maximum(1.0, np.linalg.norm(chunk, axis=1))
        if np.any(_residual_norms(chunk, rows) > RANK_RTOL * scale):
            return False
    return True


def build_operator_system(unitaries, tol: float = DEFAULT_TOL) -> OperatorSystem:
    """The operator system ``span{U_i^* U_j : i != j} + C*I``."""
    us = [require_unitary(u, tol, f"unitaries[{i}]") for i, u in enumerate(unitaries)]
    if not us:
        raise DimensionMismatch("need at least one unitary")
    d = us[0].shape[0]
    if any(u.shape != (d, d) for u in us):
        raise DimensionMismatch("unitaries must share a dimension")
    # Reduce the up-to-r*(r-1) pairwise quotients incrementally instead of
    # stacking them all: one batched product per anchor, keep only rows that
    # grow the span, and stop once the span is all of M_d.
    stack = np.stack(us)
    basis_rows = np.eye(d, dtype=complex).reshape(1, -1) / np.sqrt(d)
    for a in range(len(us)):
        if basis_rows.shape[0] == d * d:
            break
        prods = np.einsum("ji,bjk->bik", np.conj(us[a]), stack)
        rows = np.delete(prods, a, axis=0).reshape(-1, d * d)
        scale = np.maximum(1.0, np.linalg.norm(rows, axis=1))
        fresh = rows[_residual_norms(rows, basis_rows) > RANK_RTOL * scale]
        if fresh.shape[0]:
            basis_rows = _orthonormal_rows(np.vstack([basis_rows, fresh]))
    return OperatorSystem.from_matrices(basis_rows.reshape(-1, d, d), tol)


def algebra_closure(system: OperatorSystem) -> OperatorSystem:
    """Smallest multiplicatively closed operator system containing ``system``.

    Adjoins pairwise products and re-spans until the dimension stabilizes;
    the loop terminates because the dimension is bounded by ``d**2``.
    """
    d = system.dim
    basis = system.basis
    for _ in range(d * d + 1):
        if basis.shape[0] == d * d:
            break
        rows = basis.reshape(basis.shape[0], -1)
        grown = rows
        added = False
        for chunk in _pairwise_product_rows(basis):
            scale = np.maximum(1.0, np.linalg.norm(chunk, axis=1))
            fresh = chunk[_residual_norms(chunk, grown) > RANK_RTOL * scale]
            if fresh.shape[0]:
                grown = _orthonormal_rows(np.vstack([grown, fresh]))
                added = True
        if not added:
            break
        basis = grown.reshape(-1, d, d)
    return OperatorSystem(
        dim=d,
        basis=basis,
        contains_identity=system.contains_identity,
        closed_under_mult=True,
    )


# ---------------------------------------------------------------------------
# block decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraDecomposition:
    """Block structure of a C*-algebra: unitarily ``(+)_k M_m_k (x) I_n_k``.

    ``blocks[k] = (m_k, n_k)`` and ``projections[k]`` is the minimal central
    projection of the k-th block.  Invariants (asserted at construction
    time): ``sum m_k^2 == algebra_dim`` and ``sum m_k * n_k == dim``.
    """

    dim: int
    algebra_dim: int
    blocks: tuple[tuple[int, int], ...]
    projections: tuple[np.ndarray, ...]


def _commutant_rows(basis: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning the commutant of the basis elements.

    ``X`` commutes with every ``B`` iff ``vec(X)`` is annihilated by each
    ``L_B = I (x) B^T - B (x) I``, i.e. lies in the null space of the PSD
    operator ``H = sum_B L_B^* L_B``.
    """
    d = basis.shape[1]
    eye = np.eye(d, dtype=complex)
    h = np.zeros((d * d, d * d), dtype=complex)
    for b in basis:
        bh = adjoint(b)
        h += np.kron(eye, (b.conj() @ b.T))
        h += np.kron(bh @ b, eye)
        h -= np.kron(bh, b.T)
        h -= np.kron(b, b.conj())
    evals, evecs = np.linalg.eigh((h + adjoint(h)) / 2)
    scale = max(float(evals[-1]), 1.0)
    null = evecs[:, evals <= scale * RANK_RTOL**2]
    return _orthonormal_rows(null.T)


def _intersect_row_spans(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning rowspan(p) & rowspan(q) (principal angles)."""
    if p.shape[0] == 0 or q.shape[0] == 0:
        return p[:0]
    u, s, _ = np.linalg.svd(p @ adjoint(q), full_matrices=False)
    keep = s >= 1.0 - RANK_RTOL
    if not np.any(keep):
        return p[:0]
    return _orthonormal_rows(np.conj(u[:, keep]).T @ p)


def decompose(system: OperatorSystem, seed: int = 0) -> AlgebraDecomposition:
    """Numerical block decomposition of a multiplicatively closed system.

    Strategy: compute the center ``Z = A & A'``, draw one random Hermitian
    element of ``Z`` and cluster its eigenvalues; generically the spectral
    projections are exactly the minimal central projections.  Each central
    projection ``p`` then gives ``m = sqrt(dim pAp)`` and ``n = tr(p)/m``.
    The dimension accounting ``sum m^2 == dim A`` and ``sum m*n == d`` is a
    hard consistency check; failures trigger a resample and finally
    ``DecompositionFailed``.
    """
    if not system.closed_under_mult:
        raise NotAnAlgebra("decompose requires a multiplicatively closed system")
    if not system.contains_identity:
        raise NotAnAlgebra("decompose requires a unital system")
    d = system.dim
    algebra_dim = system.system_dim

    if algebra_dim == d * d:  # the full matrix algebra: one block, no sampling
        return AlgebraDecomposition(
            dim=d,
            algebra_dim=algebra_dim,
            blocks=((d, 1),),
            projections=(np.eye(d, dtype=complex),),
        )

    center = _intersect_row_spans(system.rows, _commutant_rows(system.basis))
    if center.shape[0] == 0:
        raise DecompositionFailed("unital algebra with an empty center")
    center_mats = center.reshape(-1, d, d)

    last_error = "no attempt made"
    for attempt in range(5):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt, 0xA15EB]))
        coeffs = rng.standard_normal(len(center_mats)) + 1j * rng.standard_normal(
            len(center_mats)
        )
        g = np.tensordot(coeffs, center_mats, axes=1)
        h = (g + adjoint(g)) / 2
        scale = float(np.max(np.abs(np.linalg.eigvalsh(h)))) if d else 0.0
        if scale < 1e-12:
            last_error = "sampled central element is numerically zero"
            continue
        evals, evecs = np.linalg.eigh(h / scale)

        # split the sorted spectrum at gaps larger than CLUSTER_GAP
        splits = [0]
        for i in range(1, d):
            if evals[i] - evals[i - 1] > CLUSTER_GAP:
                splits.append(i)
        splits.append(d)

        blocks: list[tuple[int, int]] = []
        projections: list[np.ndarray] = []
        ok = True
        for lo, hi in zip(splits[:-1], splits[1:]):
            vecs = evecs[:, lo:hi]
            proj = vecs @ adjoint(vecs)
            compressed = np.einsum("ij,ajk,kl->ail", proj, system.basis, proj)
            rank = _orthonormal_rows(compressed.reshape(len(system.basis), -1)).shape[0]
            m = int(round(np.sqrt(rank)))
            tr = float(np.trace(proj).real)
            n = int(round(tr / m)) if m else 0
            if m < 1 or n < 1 or m * m != rank or abs(m * n - tr) > 1e-6 * max(1, d):
                ok = False
                last_error = f"inconsistent block (rank={rank}, trace={tr:.6f})"
                break
            blocks.append((m, n))
            projections.append(proj)
        if not ok:
            continue
        if sum(m * m for m, _ in blocks) != algebra_dim or sum(m * n for m, n in blocks) != d:
            last_error = f"accounting failed for blocks {blocks}"
            continue
        order = sorted(range(len(blocks)), key=lambda i: blocks[i], reverse=True)
        return AlgebraDecomposition(
            dim=d,
            algebra_dim=algebra_dim,
            blocks=tuple(blocks[i] for i in order),
            projections=tuple(projections[i] for i in order),
        )
    raise DecompositionFailed(f"block decomposition failed after 5 samples: {last_error}")


def has_separating_vector(dec: AlgebraDecomposition) -> bool:
    """A block algebra admits a separating vector iff every ``n_k >= m_k``."""
    return all(n >= m for m, n in dec.blocks)


def is_separating(system: OperatorSystem, psi: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``B |psi> = 0`` forces ``B = 0`` on the span.

    Equivalently the map ``B -> B|psi>`` restricted to the span is injective,
    i.e. the vectors ``B_i |psi>`` over a basis are linearly independent.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != system.dim:
        raise DimensionMismatch("vector dimension does not match the system")
    if np.linalg.norm(psi) <= tol:
        raise ZeroVector("candidate separating vector is ~0")
    if system.system_dim > system.dim:
        return False  # D vectors in C^d cannot be independent when D > d
    image = system.basis @ psi  # (D, d)
    s = np.linalg.svd(image, compute_uv=False)
    return bool(s[-1] > s[0] * RANK_RTOL)


@dataclass(frozen=True)
class SeparatingCertificate:
    """Either a separating vector or the block refuting its existence."""

    kind: str  # "vector" | "refuting_block"
    vector: np.ndarray | None
    block: tuple[int, int] | None
    decomposition: AlgebraDecomposition

    def __post_init__(self):
        if self.kind not in ("vector", "refuting_block"):
            raise ValueError(f"unknown certificate kind {self.kind!r}")


def find_separating_vector(
    system: OperatorSystem, seed: int = 0, tol: float = DEFAULT_TOL
) -> SeparatingCertificate:
    """Produce a separating vector, or the block that rules one out.

    Existence is decided through :func:`decompose`; a witness is then drawn
    from the normalized complex Gaussian ensemble (a full-measure set of
    vectors is separating whenever any vector is).  Raises
    ``SamplingFailed`` if no sample passes within the retry budget, which
    indicates conditioning trouble rather than non-existence.
    """
    dec = decompose(system, seed=seed)
    if not has_separating_vector(dec):
        worst = max(dec.blocks, key=lambda mn: mn[0] - mn[1])
        return SeparatingCertificate(
            kind="refuting_block", vector=None, block=worst, decomposition=dec
        )
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5EED]))
    d = system.dim
    for _ in range(_SAMPLE_RETRIES):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        psi /= np.linalg.norm(psi)
        if is_separating(system, psi, tol):
            return SeparatingCertificate(
                kind="vector", vector=psi, block=None, decomposition=dec
            )
    raise SamplingFailed(
        f"no separating vector found in {_SAMPLE_RETRIES} samples despite {dec.blocks}"
    )


# ---------------------------------------------------------------------------
# deciders on families of unitaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraVerdict:
    """Outcome of the algebra criterion on a family of unitaries."""

    decision: Decision
    certificate: SeparatingCertificate | None
    system: OperatorSystem
    decomposition: AlgebraDecomposition
    closed: bool


def _validated_family(unitaries, tol: float):
    us = [require_unitary(u, tol, f"unitaries[{i}]") for i, u in enumerate(unitaries)]
    if not us:
        raise DimensionMismatch("need at least one unitary")
    d = us[0].shape[0]
    if any(u.shape != (d, d) for u in us):
        raise DimensionMismatch("unitaries must share a dimension")
    return us, d


def _require_orthogonal(us, d: int, tol: float) -> None:
    """Reject families whose entangled states overlap.

    tr(U_b^* U_a) is the Frobenius inner product of the vectorized
    unitaries, so all pairwise overlaps come from one Gram matrix.
    """
    vecs = np.stack([u.ravel() for u in us])
    overlaps = np.abs(np.conj(vecs) @ vecs.T) / d
    np.fill_diagonal(overlaps, 0.0)
    if np.max(overlaps) > tol:
        a, b = np.unravel_index(int(np.argmax(overlaps)), overlaps.shape)
        a, b = sorted((int(a), int(b)))
        raise NotOrthogonalStates(
            f"states {a} and {b} overlap: |tr(U_{b}^* U_{a})|/d > tol"
        )


def decide_by_algebra(
    unitaries, tol: float = DEFAULT_TOL, seed: int = 0
) -> AlgebraVerdict:
    """Decide one-way distinguishability of ``(I (x) U_i)|Phi>`` states.

    Requires the states to be mutually orthogonal, i.e. ``tr(U_j^* U_i) = 0``
    for ``i != j`` (the overlap of the entangled states is ``tr/d``).

    When ``S0`` is multiplicatively closed the answer is exact: the states
    are distinguishable iff ``S0`` admits a separating vector, and the
    verdict carries the corresponding certificate.  When ``S0`` is not
    closed the criterion does not apply; the verdict is
    ``CRITERION_NOT_APPLICABLE`` and the decomposition of the multiplicative
    closure is attached for diagnosis.
    """
    us, d = _validated_family(unitaries, tol)
    _require_orthogonal(us, d, tol)
    system = build_operator_system(us, tol)
    if not system.closed_under_mult:
        closure = algebra_closure(system)
        return AlgebraVerdict(
            decision=Decision.CRITERION_NOT_APPLICABLE,
            certificate=None,
            system=system,
            decomposition=decompose(closure, seed=seed),
            closed=False,
        )
    cert = find_separating_vector(system, seed=seed, tol=tol)
    decision = (
        Decision.DISTINGUISHABLE if cert.kind == "vector" else Decision.INDISTINGUISHABLE
    )
    return AlgebraVerdict(
        decision=decision,
        certificate=cert,
        system=system,
        decomposition=cert.decomposition,
        closed=True,
    )


def _as_permutation(p, size: int | None = None) -> np.ndarray:
    """Normalize a permutation given as an image list or a 0/1 matrix."""
    arr = np.asarray(p)
    if arr.ndim == 2:
        d = arr.shape[0]
        if arr.shape != (d, d) or np.max(np.abs(arr - np.round(arr.real))) > 1e-9:
            raise NotPermutation("matrix is not a 0/1 permutation matrix")
        arr = np.round(arr.real).astype(int)
        if np.any((arr != 0) & (arr != 1)) or np.any(arr.sum(0) != 1) or np.any(arr.sum(1) != 1):
            raise NotPermutation("matrix is not a 0/1 permutation matrix")
        image = np.argmax(arr, axis=0)  # column i carries |sigma(i)><i|
    elif arr.ndim == 1:
        image = arr.astype(int)
        if sorted(image.tolist()) != list(range(image.size)):
            raise NotPermutation(f"{image.tolist()} is not a permutation of 0..{image.size - 1}")
    else:
        raise NotPermutation("expected an image list or a square matrix")
    if size is not None and image.size != size:
        raise DimensionMismatch("permutations must share a size")
    return image


def check_permutation_states(perms) -> bool:
    """Fast distinguishability test for permutation unitaries.

    The maximally entangled states built from permutation matrices are
    one-way distinguishable iff ``sigma_j^{-1} sigma_i`` is a derangement
    for every pair ``i != j`` -- equivalently, no two permutations agree at
    any point.  Accepts image lists or permutation matrices.
    """
    images = []
    size = None
    for p in perms:
        img = _as_permutation(p, size)
        size = img.size
        images.append(img)
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if np.any(images[a] == images[b]):
                return False
    return True


def permutation_matrix(image) -> np.ndarray:
    """Matrix ``P`` with ``P|i> = |image[i]>``."""
    image = _as_permutation(image)
    m = np.zeros((image.size, image.size), dtype=complex)
    m[image, np.arange(image.size)] = 1.0
    return m


def check_simultaneous_schmidt(unitaries, tol: float = DEFAULT_TOL) -> bool:
    """True iff the family has a simultaneous Schmidt decomposition.

    For unitaries this happens exactly when all quotients ``U_i^* U_j``
    commute -- i.e. the multiplicative closure of ``S0`` is abelian -- in
    which case the corresponding maximally entangled states are one-way
    distinguishable.  Tested as vanishing pairwise commutators of an
    orthonormal basis of ``S0``.

    Like :func:`decide_by_algebra` this requires mutually orthogonal
    states and raises ``NotOrthogonalStates`` otherwise; a commuting but
    overlapping family would otherwise be misreported as distinguishable.
    """
    us, d = _validated_family(unitaries, tol)
    _require_orthogonal(us, d, tol)
    system = build_operator_system(us, tol)
    basis = system.basis
    for a in range(basis.shape[0]):
        for b in range(a + 1, basis.shape[0]):
            comm = basis[a] @ basis[b] - basis[b] @ basis[a]
            if np.max(np.abs(comm)) > tol:
                return False
    return True
