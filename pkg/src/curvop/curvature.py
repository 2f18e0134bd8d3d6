"""Curvature tensors at a point and the closed-form curvature operator [i Theta, Lambda].

A tensor is stored as a complex array ``c[j, k, lam, mu]`` (0-based internally)
representing i Theta = i sum c_{jk lam mu} dz_j ^ dzbar_k (x) e*_lam (x) e_mu.
Hermitian symmetry reads conj(c[j,k,l,m]) == c[k,j,m,l].
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InputError, ValidationError
from .forms import BundleForm, fiber_dim, indices, map_matrix
from .multiindex import epsilon, insert_sign, position


@dataclass(eq=False)
class CurvatureTensor:
    n: int
    r: int
    c: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=complex)
        if self.n < 1 or self.r < 1:
            raise InputError(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")
        if self.c.shape != (self.n, self.n, self.r, self.r):
            raise InputError(
                f"tensor has shape {self.c.shape}, expected {(self.n, self.n, self.r, self.r)}"
            )

    @classmethod
    def zeros(cls, n: int, r: int) -> "CurvatureTensor":
        return cls(n, r, np.zeros((n, n, r, r), dtype=complex))

    def coefficient(self, j, k, lam, mu) -> complex:
        """1-based accessor for c_{jk lam mu}."""
        return complex(self.c[j - 1, k - 1, lam - 1, mu - 1])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def symmetry_defect(self) -> np.ndarray:
        return np.abs(np.conj(self.c) - self.c.transpose(1, 0, 3, 2))

    def hermitian_part(self) -> "CurvatureTensor":
        return CurvatureTensor(self.n, self.r, 0.5 * (self.c + np.conj(self.c.transpose(1, 0, 3, 2))))

    def allclose(self, other: "CurvatureTensor", atol=0.0) -> bool:
        return (self.n, self.r) == (other.n, other.r) and bool(
            np.allclose(self.c, other.c, rtol=0, atol=atol)
        )


@dataclass(eq=False)
class OperatorMatrix:
    n: int
    r: int
    p: int
    q: int
    matrix: np.ndarray
    dual: bool = False

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.p, self.q

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermitian_defect(self) -> float:
        """Max |M - M^H| relative to 1 + max |M|."""
        if self.matrix.size == 0:
            return 0.0
        M = self.matrix
        return float(np.max(np.abs(M - M.conj().T)) / (1.0 + np.max(np.abs(M))))


def validate(c, tol: float = 1e-12, symmetrize: bool = False) -> CurvatureTensor:
    """Check Hermitian symmetry; with ``symmetrize`` replace c by its Hermitian part."""
    if not isinstance(c, CurvatureTensor):
        arr = np.asarray(c, dtype=complex)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
            raise InputError(f"expected an (n, n, r, r) array, got shape {arr.shape}")
        c = CurvatureTensor(arr.shape[0], arr.shape[2], arr)
    if symmetrize:
        return c.hermitian_part()
    defect = c.symmetry_defect()
    worst = float(defect.max()) if defect.size else 0.0
    if worst > tol * (1.0 + c.max_abs()):
        j, k, lam, mu = (int(x) + 1 for x in np.unravel_index(np.argmax(defect), defect.shape))
        raise ValidationError(
            f"tensor is not Hermitian-symmetric: conj(c[{j},{k},{lam},{mu}]) != "
            f"c[{k},{j},{mu},{lam}] (defect {worst:.3e})"
        )
    return c


def dual_tensor(c: CurvatureTensor) -> CurvatureTensor:
    """Curvature of the dual bundle: c*_{jk lam mu} = -c_{jk mu lam}."""
    return CurvatureTensor(c.n, c.r, -c.c.transpose(0, 1, 3, 2))


@lru_cache(maxsize=None)
def _exchange_moves(n: int, p: int, q: int) -> tuple:
    """Off-diagonal moves of the closed form as (a, b, a2, b2, j, k, sign), 0-based j, k.

    K-exchange: j in K replaced by k not in K, sign eps(j,K) * eps(k,K').
    J-exchange: k in J replaced by j not in J, sign eps(k,J) * eps(j,J').
    """
    moves = []
    for a, J in enumerate(indices(n, p)):
        for b, K in enumerate(indices(n, q)):
            for j in K:
                Kj = K.without(j)
                for k in range(1, n + 1):
                    if k in K:
                        continue
                    s, K2 = insert_sign(k, Kj)
                    moves.append((a, b, a, position(K2), j - 1, k - 1, epsilon(j, K) * s))
            for k in J:
                Jk = J.without(k)
                for j in range(1, n + 1):
                    if j in J:
                        continue
                    s, J2 = insert_sign(j, Jk)
                    moves.append((a, b, position(J2), b, j - 1, k - 1, epsilon(k, J) * s))
    return tuple(moves)


def _diagonal_weights(n: int, p: int, q: int) -> np.ndarray:
    """w[a, b, j] = [j in J] + [j in K] - 1, the multiplicity of c_{jj..} in the diagonal sum."""
    JJ, KK = indices(n, p), indices(n, q)
    w = np.full((len(JJ), len(KK), n), -1.0)
    for a, J in enumerate(JJ):
        for j in J:
            w[a, :, j - 1] += 1.0
    for b, K in enumerate(KK):
        for j in K:
            w[:, b, j - 1] += 1.0
    return w


def _check_compatible(c: CurvatureTensor, u: BundleForm) -> None:
    if (c.n, c.r) != (u.n, u.r):
        raise InputError(f"tensor (n={c.n}, r={c.r}) does not match form (n={u.n}, r={u.r})")


def apply_operator(c: CurvatureTensor, u: BundleForm) -> BundleForm:
    """[i Theta, Lambda] u from the closed form (diagonal, K-exchange, J-exchange sums).

    For E*-valued forms pass ``dual_tensor(c)``.
    """
    _check_compatible(c, u)
    n, p, q = u.n, u.p, u.q
    out = u.like(np.zeros_like(u.coeffs))
    if u.coeffs.size == 0:
        return out
    diag = np.einsum("jjlm->jlm", c.c)  # c_{jj lam mu}
    w = _diagonal_weights(n, p, q)
    out.coeffs += np.einsum("abj,abl,jlm->abm", w, u.coeffs, diag)
    for a, b, a2, b2, j, k, s in _exchange_moves(n, p, q):
        out.coeffs[a2, b2, :] += s * (u.coeffs[a, b, :] @ c.c[j, k])
    return out


@lru_cache(maxsize=None)
def _k_pairs(n: int, q: int) -> tuple:
    """(b_K, b_M, j, k, sign) with j != k, K minus j == M minus k, sign eps(j,K) eps(k,M)."""
    out = []
    KK = indices(n, q)
    for bK, K in enumerate(KK):
        for bM, M in enumerate(KK):
            for j in K:
                for k in M:
                    if j != k and K.without(j) == M.without(k):
                        out.append((bK, bM, j - 1, k - 1, epsilon(j, K) * epsilon(k, M)))
    return tuple(out)


@lru_cache(maxsize=None)
def _j_pairs(n: int, p: int) -> tuple:
    """(a_L, a_J, j, k, sign) with j != k, L minus j == J minus k, sign eps(k,J) eps(j,L).

    The pair contributes c_{jk} u_J conj(u_L): the J-exchange moves u_J into slot L.
    """
    out = []
    JJ = indices(n, p)
    for aL, L in enumerate(JJ):
        for aJ, J in enumerate(JJ):
            for j in L:
                for k in J:
                    if j != k and L.without(j) == J.without(k):
                        out.append((aL, aJ, j - 1, k - 1, epsilon(k, J) * epsilon(j, L)))
    return tuple(out)


def quadratic_form_complex(c: CurvatureTensor, u: BundleForm) -> complex:
    """<[i Theta, Lambda] u, u> evaluated term by term from its own triple-sum formula.

    Shares no code path with apply_operator beyond the sign function.
    """
    _check_compatible(c, u)
    if u.coeffs.size == 0:
        return 0j
    n, p, q = u.n, u.p, u.q
    U, Ub = u.coeffs, np.conj(u.coeffs)
    total = 0j
    JJ, KK = indices(n, p), indices(n, q)
    for a, J in enumerate(JJ):
        for b, K in enumerate(KK):
            members = [j for j in range(1, n + 1) if j in J] + [j for j in range(1, n + 1) if j in K]
            d = sum(c.c[j - 1, j - 1] for j in members) - sum(c.c[j, j] for j in range(n))
            total += U[a, b] @ d @ Ub[a, b]
    for bK, bM, j, k, s in _k_pairs(n, q):
        total += s * np.einsum("al,lm,am->", U[:, bK, :], c.c[j, k], Ub[:, bM, :])
    for aL, aJ, j, k, s in _j_pairs(n, p):
        total += s * np.einsum("bl,lm,bm->", U[aJ, :, :], c.c[j, k], Ub[aL, :, :])
    return complex(total)


def quadratic_form(c: CurvatureTensor, u: BundleForm) -> float:
    """Real value of <[i Theta, Lambda] u, u>."""
    return quadratic_form_complex(c, u).real


def operator_matrix(c: CurvatureTensor, p: int, q: int, dual: bool = False) -> OperatorMatrix:
    """Matrix of A^{p,q} on the canonical (J, K, lam) basis, built column by column."""
    if not (0 <= p <= c.n and 0 <= q <= c.n):
        raise InputError(f"bidegree ({p},{q}) out of range for n={c.n}")
    M = map_matrix(lambda u: apply_operator(c, u), c.n, c.r, p, q, dual)
    return OperatorMatrix(c.n, c.r, p, q, M, dual)


def nakano_matrix(c: CurvatureTensor) -> np.ndarray:
    """Matrix N of theta on T (x) E, basis (j, lam) with lam fastest, with <N u, u> = theta(u, u).

    N[(k, mu), (j, lam)] = c_{jk lam mu}.
    """
    nr = c.n * c.r
    return c.c.transpose(1, 3, 0, 2).reshape(nr, nr).copy()


def operator_dim(c: CurvatureTensor, p: int, q: int) -> int:
    return fiber_dim(c.n, c.r, p, q)
