"""Brute-force exterior algebra used to cross-check the closed forms.

Forms are expanded into dense, fully antisymmetric coefficient tensors over
the 2n one-forms (dz_1..dz_n, dzbar_1..dzbar_n) and wedged by summing over
every permutation of the output slots. Permutation signs come from cycle
decomposition. Nothing here touches the multi-index sign helpers used by
``forms`` and ``curvature``: a sign bug there cannot hide here.

Cost grows like (p+q+2)!; fine for n <= 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .curvature import CurvatureTensor, OperatorMatrix
from .forms import BundleForm


def perm_sign(perm) -> int:
    """Sign of a permutation of range(len(perm)) by cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _perms(m: int) -> tuple:
    return tuple((p, perm_sign(p)) for p in permutations(range(m)))


def monomial_tensor(slots, dim: int) -> np.ndarray:
    """Dense antisymmetric tensor of dx_{s1} ^ ... ^ dx_{sm} (slots 0-based, any order)."""
    m = len(slots)
    T = np.zeros((dim,) * m, dtype=complex)
    if len(set(slots)) < m:
        return T
    for perm, sgn in _perms(m):
        T[tuple(slots[i] for i in perm)] += sgn
    return T


def wedge_component(A: np.ndarray, B: np.ndarray, slots) -> complex:
    """Component of A ^ B at the slot tuple ``slots``.

    (A ^ B)_I = 1/(a! b!) sum_sigma sgn(sigma) A_{I_sigma[:a]} B_{I_sigma[a:]}.
    """
    a, b = A.ndim, B.ndim
    total = 0j
    for perm, sgn in _perms(a + b):
        idx = tuple(slots[i] for i in perm)
        total += sgn * A[idx[:a]] * B[idx[a:]]
    return total / (factorial(a) * factorial(b))


def wedge(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Full dense wedge product (antisymmetrized outer product)."""
    a, b = A.ndim, B.ndim
    T = np.multiply.outer(A, B)
    out = np.zeros_like(T)
    for perm, sgn in _perms(a + b):
        out += sgn * np.transpose(T, perm)
    return out / (factorial(a) * factorial(b))


def form_slots(n: int, p: int, q: int) -> list[tuple[int, ...]]:
    """Slot tuples of the monomials dz_J ^ dzbar_K in lexicographic (J, K) order."""
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    out = []
    for J in combinations(range(n), p):
        for K in combinations(range(n), q):
            out.append(J + tuple(n + k for k in K))
    return out


def scalar_tensor(coeffs, n: int, p: int, q: int) -> np.ndarray:
    """Dense tensor of sum_{J,K} coeffs[J,K] dz_J ^ dzbar_K."""
    flat = np.asarray(coeffs).reshape(-1)
    T = np.zeros((2 * n,) * (p + q), dtype=complex)
    for val, slots in zip(flat, form_slots(n, p, q)):
        if val != 0:
            T += val * monomial_tensor(slots, 2 * n)
    return T


def top_component(T: np.ndarray, n: int) -> complex:
    """Coefficient of dz_1 ^ ... ^ dz_n ^ dzbar_1 ^ ... ^ dzbar_n."""
    return complex(T[tuple(range(2 * n))])


def volume_coefficient(n: int) -> complex:
    """Coefficient of omega^n / n! against dz_N ^ dzbar_N, by repeated wedging."""
    T = np.ones((), dtype=complex)
    for j in range(n):
        T = wedge(T, 1j * monomial_tensor((j, n + j), 2 * n))
    return top_component(T, n)


def pairing_top(u: BundleForm, v: BundleForm) -> complex:
    """Top coefficient of u ^ v with fibers contracted (E against E*)."""
    if u.p + v.p != u.n or u.q + v.q != u.n:
        raise ValueError("bidegrees do not add up to (n, n)")
    n = u.n
    top = tuple(range(2 * n))
    total = 0j
    for lam in range(u.r):
        A = scalar_tensor(u.coeffs[:, :, lam], n, u.p, u.q)
        B = scalar_tensor(v.coeffs[:, :, lam], n, v.p, v.q)
        total += wedge_component(A, B, top)
    return total


@lru_cache(maxsize=None)
def _elementary_wedges(n: int, p: int, q: int) -> np.ndarray:
    """W[j, k] = matrix of dz_j ^ dzbar_k ^ (.) from scalar (p,q) to (p+1,q+1)."""
    src = form_slots(n, p, q)
    dst = form_slots(n, p + 1, q + 1)
    W = np.zeros((n, n, len(dst), len(src)), dtype=complex)
    if not src or not dst:
        return W
    dim = 2 * n
    src_tensors = [monomial_tensor(s, dim) for s in src]
    for j in range(n):
        for k in range(n):
            A = monomial_tensor((j, n + k), dim)
            for col, B in enumerate(src_tensors):
                for row, I in enumerate(dst):
                    W[j, k, row, col] = wedge_component(A, B, I)
    return W


def _dim(n, r, p, q) -> int:
    return len(form_slots(n, p, q)) * r


@dataclass(eq=False)
class DegreeMap:
    source: tuple[int, int]
    target: tuple[int, int]
    matrix: np.ndarray

    def __matmul__(self, other: "DegreeMap") -> "DegreeMap":
        if other.target != self.source:
            raise ValueError(f"cannot compose: {other.target} feeds {self.source}")
        return DegreeMap(other.source, self.target, self.matrix @ other.matrix)


def lefschetz_matrix(n: int, r: int, p: int, q: int) -> DegreeMap:
    W = _elementary_wedges(n, p, q)
    M = np.zeros((_dim(n, r, p + 1, q + 1), _dim(n, r, p, q)), dtype=complex)
    for j in range(n):
        M += 1j * np.kron(W[j, j], np.eye(r))
    return DegreeMap((p, q), (p + 1, q + 1), M)


def lambda_matrix(n: int, r: int, p: int, q: int) -> DegreeMap:
    """Adjoint of L from (p-1, q-1) to (p, q)."""
    L = lefschetz_matrix(n, r, p - 1, q - 1)
    return DegreeMap((p, q), (p - 1, q - 1), L.matrix.conj().T)


def theta_wedge_matrix(c: CurvatureTensor, p: int, q: int) -> DegreeMap:
    """u -> i Theta ^ u, the endomorphism part sending e_lam to c_{jk lam mu} e_mu."""
    n, r = c.n, c.r
    W = _elementary_wedges(n, p, q)
    M = np.zeros((_dim(n, r, p + 1, q + 1), _dim(n, r, p, q)), dtype=complex)
    for j in range(n):
        for k in range(n):
            M += 1j * np.kron(W[j, k], c.c[j, k].T)
    return DegreeMap((p, q), (p + 1, q + 1), M)


def commutator_matrix(c: CurvatureTensor, p: int, q: int) -> OperatorMatrix:
    """i Theta ^ Lambda - Lambda (i Theta ^ .) on (p,q)-forms."""
    n, r = c.n, c.r
    first = theta_wedge_matrix(c, p - 1, q - 1) @ lambda_matrix(n, r, p, q)
    second = lambda_matrix(n, r, p + 1, q + 1) @ theta_wedge_matrix(c, p, q)
    return OperatorMatrix(n, r, p, q, first.matrix - second.matrix)


def lefschetz_lambda_commutator(n: int, r: int, p: int, q: int) -> np.ndarray:
    """[L, Lambda] on (p,q)-forms (with trivial curvature)."""
    LL = lefschetz_matrix(n, r, p - 1, q - 1) @ lambda_matrix(n, r, p, q)
    LaL = lambda_matrix(n, r, p + 1, q + 1) @ lefschetz_matrix(n, r, p, q)
    return LL.matrix - LaL.matrix
