"""Bundle-valued (p,q)-forms at a single point.

The base point carries the flat Kaehler form omega = i * sum_j dz_j ^ dzbar_j and
the fiber carries an orthonormal frame e_1..e_r. The monomials
dz_J ^ dzbar_K (x) e_lam form an orthonormal basis, stored as a complex array of
shape (C(n,p), C(n,q), r) whose C-order ravel is the canonical (J, K, lam)
ordering with lam fastest.

A bidegree outside [0, n] is allowed and denotes the zero space (one of the
array axes has length 0); this keeps degree overflow in L and Lambda total.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

import numpy as np

from .errors import InputError
from .multiindex import (
    MultiIndex,
    alpha,
    complement,
    enumerate_indices,
    epsilon,
    insert_sign,
    position,
    sgn_complement,
)


def n_indices(n: int, d: int) -> int:
    return comb(n, d) if 0 <= d <= n else 0


def indices(n: int, d: int) -> tuple[MultiIndex, ...]:
    return enumerate_indices(n, d) if 0 <= d <= n else ()


def fiber_dim(n: int, r: int, p: int, q: int) -> int:
    """Dimension of Lambda^{p,q} (x) E at a point."""
    return n_indices(n, p) * n_indices(n, q) * r


def _i_power(k: int) -> complex:
    return (1, 1j, -1, -1j)[k % 4]


@dataclass(eq=False)
class BundleForm:
    n: int
    r: int
    p: int
    q: int
    coeffs: np.ndarray
    dual: bool = False

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.n < 1 or self.r < 1:
            raise InputError(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")
        shape = (n_indices(self.n, self.p), n_indices(self.n, self.q), self.r)
        if self.coeffs.shape != shape:
            raise InputError(f"coefficient array has shape {self.coeffs.shape}, expected {shape}")

    @classmethod
    def zeros(cls, n, r, p, q, dual=False) -> "BundleForm":
        shape = (n_indices(n, p), n_indices(n, q), r)
        return cls(n, r, p, q, np.zeros(shape, dtype=complex), dual)

    @classmethod
    def basis(cls, n, r, J, K, lam, dual=False) -> "BundleForm":
        """The monomial dz_J ^ dzbar_K (x) e_lam; J, K are iterables of 1-based indices."""
        J = J if isinstance(J, MultiIndex) else MultiIndex.of(J, n)
        K = K if isinstance(K, MultiIndex) else MultiIndex.of(K, n)
        if not 1 <= lam <= r:
            raise InputError(f"fiber index {lam} out of range [1, {r}]")
        u = cls.zeros(n, r, J.degree, K.degree, dual)
        u.coeffs[position(J), position(K), lam - 1] = 1.0
        return u

    @classmethod
    def from_vector(cls, vec, n, r, p, q, dual=False) -> "BundleForm":
        shape = (n_indices(n, p), n_indices(n, q), r)
        return cls(n, r, p, q, np.asarray(vec, dtype=complex).reshape(shape), dual)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.p, self.q

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def get(self, J, K, lam) -> complex:
        J = J if isinstance(J, MultiIndex) else MultiIndex.of(J, self.n)
        K = K if isinstance(K, MultiIndex) else MultiIndex.of(K, self.n)
        return complex(self.coeffs[position(J), position(K), lam - 1])

    def items(self):
        """Yield ((J, K, lam), value) for nonzero slots in canonical order."""
        for a, J in enumerate(indices(self.n, self.p)):
            for b, K in enumerate(indices(self.n, self.q)):
                for lam in range(self.r):
                    v = self.coeffs[a, b, lam]
                    if v != 0:
                        yield (J, K, lam + 1), complex(v)

    def like(self, coeffs) -> "BundleForm":
        return BundleForm(self.n, self.r, self.p, self.q, coeffs, self.dual)

    def _check_same_space(self, other: "BundleForm") -> None:
        if (self.n, self.r, self.p, self.q, self.dual) != (
            other.n, other.r, other.p, other.q, other.dual
        ):
            raise InputError(
                f"forms live in different spaces: (n,r,p,q,dual)="
                f"{(self.n, self.r, self.p, self.q, self.dual)} vs "
                f"{(other.n, other.r, other.p, other.q, other.dual)}"
            )

    def __add__(self, other: "BundleForm") -> "BundleForm":
        self._check_same_space(other)
        return self.like(self.coeffs + other.coeffs)

    def __sub__(self, other: "BundleForm") -> "BundleForm":
        self._check_same_space(other)
        return self.like(self.coeffs - other.coeffs)

    def __neg__(self) -> "BundleForm":
        return self.like(-self.coeffs)

    def __mul__(self, scalar) -> "BundleForm":
        return self.like(self.coeffs * scalar)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def allclose(self, other: "BundleForm", atol=1e-12) -> bool:
        self._check_same_space(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol))

    def __repr__(self) -> str:
        kind = "E*" if self.dual else "E"
        terms = ", ".join(f"{J}{K}e{lam}: {v:.6g}" for (J, K, lam), v in self.items())
        return f"BundleForm(n={self.n}, r={self.r}, ({self.p},{self.q}), {kind}, [{terms}])"


def inner_product(u: BundleForm, v: BundleForm) -> complex:
    u._check_same_space(v)
    return complex(np.vdot(v.coeffs, u.coeffs))


def interior_product(s: int, u: BundleForm, bar: bool = False) -> BundleForm:
    """Contract d/dz_s (or d/dzbar_s when ``bar``) into u.

    The antiholomorphic contraction passes the p holomorphic factors first and
    picks up (-1)^p.
    """
    if not 1 <= s <= u.n:
        raise InputError(f"coordinate index {s} out of range [1, {u.n}]")
    if bar:
        out = BundleForm.zeros(u.n, u.r, u.p, u.q - 1, u.dual)
        sign_p = -1 if u.p % 2 else 1
        for b, K in enumerate(indices(u.n, u.q)):
            e = epsilon(s, K)
            if e:
                out.coeffs[:, position(K.without(s)), :] += sign_p * e * u.coeffs[:, b, :]
        return out
    out = BundleForm.zeros(u.n, u.r, u.p - 1, u.q, u.dual)
    for a, J in enumerate(indices(u.n, u.p)):
        e = epsilon(s, J)
        if e:
            out.coeffs[position(J.without(s)), :, :] += e * u.coeffs[a, :, :]
    return out


def lefschetz(u: BundleForm) -> BundleForm:
    """L u = omega ^ u."""
    n = u.n
    out = BundleForm.zeros(n, u.r, u.p + 1, u.q + 1, u.dual)
    if u.p + 1 > n or u.q + 1 > n:
        return out
    sign_p = -1 if u.p % 2 else 1
    for a, J in enumerate(indices(n, u.p)):
        for b, K in enumerate(indices(n, u.q)):
            for j in range(1, n + 1):
                sJ, J2 = insert_sign(j, J)
                sK, K2 = insert_sign(j, K)
                if sJ and sK:
                    out.coeffs[position(J2), position(K2), :] += 1j * sign_p * sJ * sK * u.coeffs[a, b, :]
    return out


def lambda_closed_form(u: BundleForm) -> BundleForm:
    """Lambda u = i (-1)^p sum_s (d/dz_s -| dz_J) ^ (d/dzbar_s -| dzbar_K) u_{J,K,lam}."""
    n = u.n
    out = BundleForm.zeros(n, u.r, u.p - 1, u.q - 1, u.dual)
    if u.p == 0 or u.q == 0:
        return out
    pref = 1j * (-1 if u.p % 2 else 1)
    for a, J in enumerate(indices(n, u.p)):
        for b, K in enumerate(indices(n, u.q)):
            for s in J:
                eK = epsilon(s, K)
                if eK:
                    a2, b2 = position(J.without(s)), position(K.without(s))
                    out.coeffs[a2, b2, :] += pref * epsilon(s, J) * eK * u.coeffs[a, b, :]
    return out


def star_constant(J: MultiIndex, K: MultiIndex) -> complex:
    """C_{J,K} with *(dz_J ^ dzbar_K (x) e) = C_{J,K} dz_{J^C} ^ dzbar_{K^C} (x) e*."""
    n, p, q = J.n, J.degree, K.degree
    sign = (-1 if (q * (n - p)) % 2 else 1) * sgn_complement(J) * sgn_complement(K)
    return _i_power(n * n) * sign


def hodge_star(u: BundleForm) -> BundleForm:
    """Conjugate-linear Hodge star into bidegree (n-p, n-q) of the dual bundle."""
    n = u.n
    out = BundleForm.zeros(n, u.r, n - u.p, n - u.q, not u.dual)
    for a, J in enumerate(indices(n, u.p)):
        aC = position(complement(J))
        for b, K in enumerate(indices(n, u.q)):
            out.coeffs[aC, position(complement(K)), :] = star_constant(J, K) * np.conj(u.coeffs[a, b, :])
    return out


def star_inverse(u: BundleForm, original_bidegree: tuple[int, int]) -> BundleForm:
    """Invert hodge_star using *_{E*} *_E = (-1)^{p+q} on (p,q)-forms."""
    p, q = original_bidegree
    if u.bidegree != (u.n - p, u.n - q):
        raise InputError(
            f"form of bidegree {u.bidegree} is not the star image of bidegree {(p, q)}"
        )
    back = hodge_star(u)
    return back * (-1 if (p + q) % 2 else 1)


def tilde_map(u: BundleForm) -> BundleForm:
    """Signed slot swap (J, K) -> (K^C, J^C) into bidegree (n-q, n-p), same fiber."""
    n = u.n
    out = BundleForm.zeros(n, u.r, n - u.q, n - u.p, u.dual)
    for a, J in enumerate(indices(n, u.p)):
        bJ = position(complement(J))
        for b, K in enumerate(indices(n, u.q)):
            out.coeffs[position(complement(K)), bJ, :] = alpha(J) * alpha(K) * u.coeffs[a, b, :]
    return out


def map_matrix(fn: Callable[[BundleForm], BundleForm], n, r, p, q, dual=False) -> np.ndarray:
    """Matrix whose column a is fn(basis_a) in canonical coordinates.

    For a conjugate-linear fn the result S satisfies fn(u) = S @ conj(u).
    """
    dim = fiber_dim(n, r, p, q)
    shape = (n_indices(n, p), n_indices(n, q), r)
    if dim == 0:
        return np.zeros((fn(BundleForm.zeros(n, r, p, q, dual)).dim, 0), dtype=complex)
    cols = []
    for a in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[a] = 1.0
        cols.append(fn(BundleForm(n, r, p, q, e.reshape(shape), dual)).vector())
    return np.stack(cols, axis=1)


def star_matrix(n, r, p, q) -> np.ndarray:
    return map_matrix(hodge_star, n, r, p, q)


def tilde_matrix(n, r, p, q) -> np.ndarray:
    return map_matrix(tilde_map, n, r, p, q)
