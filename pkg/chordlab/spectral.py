"""
Exact spectral certificates for the matrices of the complete graph K_{k+1}.

Each claimed spectrum is certified without an eigensolver: the product of
(X - lambda I) over the claimed distinct eigenvalues must vanish, and the
multiplicities are the unique solution of the power-trace equations
sum_i m_i lambda_i^t = trace(X^t), t = 0..r-1. Matrices are integer numpy
arrays; anything rational goes through Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np

from chordlab.constants import SPECTRAL_CHECKS
from chordlab.errors import DomainError, VerificationError
from chordlab.schemas.spectra import SpectrumReport
from chordlab.utils.exact_linalg import determinant, solve
from chordlab.utils.logging_utils import logger


@dataclass(frozen=True)
class GraphMatrices:
    """A, B, L and M = (k - 2) I - L for K_{k+1}; edges in lexicographic order."""

    k: int
    edges: Tuple[Tuple[int, int], ...]
    A: np.ndarray
    B: np.ndarray
    L: np.ndarray
    M: np.ndarray

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def ones(self) -> np.ndarray:
        return np.ones(self.E, dtype=np.int64)


def _check_k(k: int):
    if k < 2:
        raise DomainError("k must be at least 2", k=k)


def build_matrices(k: int) -> GraphMatrices:
    """Build the four matrices and assert B B^T = kI + A and B^T B = 2I + L."""
    _check_k(k)
    graph = nx.complete_graph(k + 1)
    nodes = list(range(k + 1))
    edges = list(combinations(nodes, 2))

    A = nx.to_numpy_array(graph, nodelist=nodes, dtype=np.int64)
    B = nx.incidence_matrix(graph, nodelist=nodes, edgelist=edges, oriented=False)
    B = np.asarray(B.toarray(), dtype=np.int64)
    L = nx.to_numpy_array(nx.line_graph(graph), nodelist=edges, dtype=np.int64)
    E = len(edges)
    M = (k - 2) * np.eye(E, dtype=np.int64) - L

    if not (B.sum(axis=0) == 2).all():
        raise VerificationError("incidence matrix needs two ones per column", k=k)
    if not np.array_equal(B @ B.T, k * np.eye(k + 1, dtype=np.int64) + A):
        raise VerificationError("B B^T != kI + A", k=k)
    if not np.array_equal(B.T @ B, 2 * np.eye(E, dtype=np.int64) + L):
        raise VerificationError("B^T B != 2I + L", k=k)

    return GraphMatrices(k=k, edges=tuple(edges), A=A, B=B, L=L, M=M)


def _annihilates(X: np.ndarray, roots: List[int]) -> bool:
    size = X.shape[0]
    product = np.eye(size, dtype=np.int64)
    for r in roots:
        product = product @ (X - r * np.eye(size, dtype=np.int64))
    return not product.any()


def _multiplicities(X: np.ndarray, roots: List[int]) -> Tuple[List[Fraction], List[int]]:
    """Solve the Vandermonde system of power traces; returns (solution, traces used)."""
    size = X.shape[0]
    traces = []
    power = np.eye(size, dtype=np.int64)
    for _ in roots:
        traces.append(int(np.trace(power)))
        power = power @ X
    vandermonde = [[r ** t for r in roots] for t in range(len(roots))]
    return solve(vandermonde, traces), traces


def _certify(name: str, k: int, X: np.ndarray, claimed: Dict[int, int]) -> SpectrumReport:
    roots = list(claimed)
    certificate = []

    annihilated = _annihilates(X, roots)
    factors = "".join(f"(X - ({r})I)" for r in roots)
    certificate.append(f"{factors} = 0: {'pass' if annihilated else 'FAIL'}")

    solution, traces = _multiplicities(X, roots)
    certificate.append(f"trace(X^t) for t=0..{len(roots) - 1}: {traces}")
    matches = all(solution[i] == claimed[r] for i, r in enumerate(roots))
    found = {r: str(m) for r, m in zip(roots, solution)}
    certificate.append(f"multiplicities {found}: {'pass' if matches else 'FAIL'}")

    verified = annihilated and matches
    if not verified:
        logger.warning(f"[Spectra] {name} failed at k={k}: {certificate}")
    return SpectrumReport(
        matrix_name=name,
        k=k,
        claimed={r: m for r, m in claimed.items() if m},
        verified=verified,
        certificate=certificate,
    )


def verify_spectrum_A(k: int) -> SpectrumReport:
    """Adjacency of K_{k+1}: k once, -1 with multiplicity k."""
    g = build_matrices(k)
    return _certify("A", k, g.A, {k: 1, -1: k})


def verify_spectrum_BBt(k: int) -> SpectrumReport:
    """B B^T: 2k once, k - 1 with multiplicity k."""
    g = build_matrices(k)
    return _certify("BBt", k, g.B @ g.B.T, {2 * k: 1, k - 1: k})


def verify_spectrum_L(k: int) -> SpectrumReport:
    """Line graph of K_{k+1}: 2(k-1) once, k-3 (k times), -2 ((k+1)(k-2)/2 times)."""
    g = build_matrices(k)
    return _certify("L", k, g.L, {2 * (k - 1): 1, k - 3: k, -2: (k + 1) * (k - 2) // 2})


def verify_spectrum_M(k: int) -> SpectrumReport:
    """M = (k-2)I - L: -k once, 1 (k times), k ((k+1)(k-2)/2 times)."""
    g = build_matrices(k)
    return _certify("M", k, g.M, {-k: 1, 1: k, k: (k + 1) * (k - 2) // 2})


def _grand_sum(g: GraphMatrices) -> Tuple[Fraction, List[str]]:
    k = g.k
    j = g.ones
    certificate = []
    eigen_ok = np.array_equal(g.M @ j, -k * j)
    certificate.append(f"M j = -{k} j: {'pass' if eigen_ok else 'FAIL'}")
    if not eigen_ok:
        raise VerificationError("j is not an eigenvector of M", k=k)
    from_eigen = Fraction(-g.E, k)

    x = solve(g.M, [1] * g.E)
    from_solve = sum(x, Fraction(0))
    agree = from_eigen == from_solve
    certificate.append(
        f"j^T M^-1 j = {from_eigen} (eigenvector) vs {from_solve} (exact solve): "
        f"{'pass' if agree else 'FAIL'}"
    )
    if not agree:
        raise VerificationError("grand sum disagrees between methods", k=k)
    return from_eigen, certificate


def grand_sum_inverse(k: int) -> Fraction:
    """j^T M^-1 j, computed twice; equals -(k+1)/2."""
    value, _ = _grand_sum(build_matrices(k))
    return value


def determinant_M(k: int) -> int:
    """det M by fraction-free elimination."""
    return determinant(build_matrices(k).M)


def corollary_product(k: int) -> Fraction:
    """
    (j^T M^-1 j) * det M, checked against (k+1) k^{k(k-1)/2} / 2.

    Raises VerificationError on a mismatch.
    """
    g = build_matrices(k)
    grand, _ = _grand_sum(g)
    value = grand * determinant(g.M)
    expected = Fraction((k + 1) * k ** (k * (k - 1) // 2), 2)
    if value != expected:
        raise VerificationError(f"corollary product {value} != {expected}", k=k)
    return value


def verify_inverse(k: int) -> SpectrumReport:
    """Grand sum of M^-1 and its product with det M, as one report."""
    g = build_matrices(k)
    try:
        grand, certificate = _grand_sum(g)
    except VerificationError as e:
        return SpectrumReport(
            matrix_name="M_inverse", k=k, claimed={}, verified=False, certificate=[str(e)]
        )

    checks = [grand == Fraction(-(k + 1), 2)]
    certificate.append(f"grand sum == -({k}+1)/2: {'pass' if checks[-1] else 'FAIL'}")

    det = determinant(g.M)
    expected_det = -k * k ** ((k + 1) * (k - 2) // 2)
    checks.append(det == expected_det)
    certificate.append(f"det M = {det} vs eigenvalue product {expected_det}: {'pass' if checks[-1] else 'FAIL'}")

    product = grand * det
    expected = Fraction((k + 1) * k ** (k * (k - 1) // 2), 2)
    checks.append(product == expected)
    certificate.append(f"grand sum * det M = {product} vs {expected}: {'pass' if checks[-1] else 'FAIL'}")

    return SpectrumReport(
        matrix_name="M_inverse",
        k=k,
        claimed={},
        verified=all(checks),
        certificate=certificate,
        value=grand,
    )


_CHECKS = {
    "A": verify_spectrum_A,
    "BBt": verify_spectrum_BBt,
    "L": verify_spectrum_L,
    "M": verify_spectrum_M,
    "M_inverse": verify_inverse,
}


def spectral_reports(k_min: int, k_max: int) -> List[SpectrumReport]:
    """Every certificate for k in [k_min, k_max], ordered by k then check."""
    _check_k(k_min)
    if k_max < k_min:
        raise DomainError("k_max must be >= k_min", k_min=k_min, k_max=k_max)
    return [_CHECKS[name](k) for k in range(k_min, k_max + 1) for name in SPECTRAL_CHECKS]
