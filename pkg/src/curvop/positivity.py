"""Spectral positivity classes for curvature operators.

Classification uses a relative boundary: with scale = max(1, max|eig|), an
eigenvalue counts as zero when |eig| <= tol * scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import CurvatureTensor, dual_tensor, nakano_matrix, operator_matrix
from .errors import InputError

POSITIVE = "positive"
SEMI_POSITIVE = "semi_positive"
NEGATIVE = "negative"
SEMI_NEGATIVE = "semi_negative"
INDEFINITE = "indefinite"
ZERO = "zero"

NEGATED = {
    POSITIVE: NEGATIVE,
    NEGATIVE: POSITIVE,
    SEMI_POSITIVE: SEMI_NEGATIVE,
    SEMI_NEGATIVE: SEMI_POSITIVE,
    INDEFINITE: INDEFINITE,
    ZERO: ZERO,
}

DEFAULT_TOL = 1e-9


@dataclass
class PositivityReport:
    label: str
    spectrum: np.ndarray
    cls: str
    tol: float
    heuristic: bool = False

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "spectrum": [float(x) for x in self.spectrum],
            "class": self.cls,
            "tol": self.tol,
            "heuristic": self.heuristic,
        }


def hermitian_spectrum(M, tol: float = 1e-10) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (LAPACK heevd via numpy)."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"expected a square matrix, got shape {M.shape}")
    if M.size == 0:
        return np.zeros(0)
    defect = np.max(np.abs(M - M.conj().T))
    if defect > tol * (1.0 + np.max(np.abs(M))):
        raise InputError(f"matrix is not Hermitian (defect {defect:.3e})")
    return np.linalg.eigvalsh(0.5 * (M + M.conj().T))


def spectral_scale(spectrum) -> float:
    spectrum = np.asarray(spectrum, dtype=float)
    return max(1.0, float(np.max(np.abs(spectrum)))) if spectrum.size else 1.0


def classify(spectrum, tol: float = DEFAULT_TOL) -> str:
    s = np.asarray(spectrum, dtype=float)
    if s.size == 0:
        return ZERO
    eps = tol * spectral_scale(s)
    lo, hi = float(s.min()), float(s.max())
    if np.all(np.abs(s) <= eps):
        return ZERO
    if lo > eps:
        return POSITIVE
    if hi < -eps:
        return NEGATIVE
    if lo >= -eps:
        return SEMI_POSITIVE
    if hi <= eps:
        return SEMI_NEGATIVE
    return INDEFINITE


def report(label: str, M, tol: float = DEFAULT_TOL) -> PositivityReport:
    spec = hermitian_spectrum(M)
    return PositivityReport(label, spec, classify(spec, tol), tol)


def nakano_class(c: CurvatureTensor, tol: float = DEFAULT_TOL) -> PositivityReport:
    return report("nakano", nakano_matrix(c), tol)


def dual_nakano_class(c: CurvatureTensor, tol: float = DEFAULT_TOL) -> PositivityReport:
    """E is dual Nakano positive iff E* is Nakano negative; spectrum reported is that of E*."""
    rep = nakano_class(dual_tensor(c), tol)
    return PositivityReport("dual_nakano", rep.spectrum, NEGATED[rep.cls], tol)


def cone_report(c: CurvatureTensor, p: int, q: int, tol: float = DEFAULT_TOL, dual=False) -> PositivityReport:
    t = dual_tensor(c) if dual else c
    name = f"A^{{{p},{q}}}" + ("_E*" if dual else "_E")
    return report(name, operator_matrix(t, p, q, dual=dual).matrix, tol)


# --- Griffiths (heuristic) ---------------------------------------------------


@dataclass
class GriffithsResult:
    value: float
    xi: np.ndarray
    s: np.ndarray
    restarts: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "xi": [[float(z.real), float(z.imag)] for z in self.xi],
            "s": [[float(z.real), float(z.imag)] for z in self.s],
            "restarts": self.restarts,
            "seed": self.seed,
            "heuristic": True,
        }


def theta_decomposable(c: CurvatureTensor, xi, s) -> float:
    """theta(xi (x) s, xi (x) s) = sum c_{jk lam mu} xi_j s_lam conj(xi_k s_mu)."""
    return float(np.einsum("jklm,j,l,k,m->", c.c, xi, s, np.conj(xi), np.conj(s)).real)


def _min_eigvec(H):
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    return w[0], V[:, 0]


def griffiths_min(
    c: CurvatureTensor, restarts: int = 16, iters: int = 200, seed: int = 0, rtol: float = 1e-13
) -> GriffithsResult:
    """Search min theta(xi (x) s) over unit xi, s by alternating eigen-minimization.

    The returned value is attained at the returned witness, so it is an upper
    bound on the true minimum: a negative value certifies failure of Griffiths
    semi-positivity, a positive one is only evidence.
    """
    n, r = c.n, c.r
    rng = np.random.Generator(np.random.PCG64(seed))
    starts = [np.eye(r, dtype=complex)[lam] for lam in range(r)]
    for _ in range(restarts):
        v = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        starts.append(v / np.linalg.norm(v))

    best = None
    for s in starts:
        prev = np.inf
        for _ in range(iters):
            # <H xi, xi> = theta(xi (x) s): H[k, j] = sum c_{jk lam mu} s_lam conj(s_mu)
            H = np.einsum("jklm,l,m->kj", c.c, s, np.conj(s))
            _, xi = _min_eigvec(H)
            G = np.einsum("jklm,j,k->ml", c.c, xi, np.conj(xi))
            val, s = _min_eigvec(G)
            if prev - val <= rtol * (1.0 + abs(val)):
                break
            prev = val
        val = theta_decomposable(c, xi, s)
        if best is None or val < best[0]:
            best = (val, xi, s)
    return GriffithsResult(best[0], best[1], best[2], restarts, seed)


# --- duality theorems at the spectral level ---------------------------------


@dataclass
class ChainMember:
    name: str
    report: PositivityReport
    sign: int  # +1: same class as Nakano, -1: opposite class

    @property
    def normalized_class(self) -> str:
        return self.report.cls if self.sign > 0 else NEGATED[self.report.cls]


@dataclass
class BidegreeRow:
    p: int
    q: int
    spectrum: np.ndarray
    swapped_spectrum: np.ndarray  # A^{n-q,n-p} on E
    dual_spectrum: np.ndarray  # A^{n-p,n-q} on E*
    negation_residual: float
    star_residual: float


@dataclass
class ChainReport:
    n: int
    r: int
    tol: float
    rows: list[BidegreeRow] = field(default_factory=list)
    chain: list[ChainMember] = field(default_factory=list)
    chain_gap: float = 0.0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def chain_agrees(self) -> bool:
        return len({m.normalized_class for m in self.chain}) <= 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "tol": self.tol,
            "rows": [
                {
                    "bidegree": [row.p, row.q],
                    "spectrum": row.spectrum.tolist(),
                    "negation_residual": row.negation_residual,
                    "star_residual": row.star_residual,
                }
                for row in self.rows
            ],
            "chain": [
                {"name": m.name, "class": m.report.cls, "sign": m.sign} for m in self.chain
            ],
            "chain_gap": self.chain_gap,
            "violations": list(self.violations),
            "notes": list(self.notes),
        }


def _spectral_gap(a, b) -> float:
    a, b = np.sort(np.asarray(a)), np.sort(np.asarray(b))
    if a.shape != b.shape:
        return np.inf
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def theorem_chain_report(
    c: CurvatureTensor, tol: float = DEFAULT_TOL, spectral_tol: float = 1e-9
) -> ChainReport:
    """Check spectral negation (p,q) <-> (n-q,n-p), star equality E <-> E*, and the Nakano chain."""
    n, r = c.n, c.r
    cd = dual_tensor(c)
    spec = {}
    spec_dual = {}
    for p in range(n + 1):
        for q in range(n + 1):
            spec[p, q] = hermitian_spectrum(operator_matrix(c, p, q).matrix)
            spec_dual[p, q] = hermitian_spectrum(operator_matrix(cd, p, q, dual=True).matrix)

    out = ChainReport(n, r, tol)
    for p in range(n + 1):
        for q in range(n + 1):
            swapped = spec[n - q, n - p]
            dual_side = spec_dual[n - p, n - q]
            neg = _spectral_gap(swapped, -spec[p, q])
            star = _spectral_gap(dual_side, spec[p, q])
            out.rows.append(BidegreeRow(p, q, spec[p, q], swapped, dual_side, neg, star))
            if neg > spectral_tol:
                out.violations.append(
                    f"spectral negation fails at (p,q)=({p},{q}): gap {neg:.3e}"
                )
            if star > spectral_tol:
                out.violations.append(
                    f"star spectrum equality fails at (p,q)=({p},{q}): gap {star:.3e}"
                )

    nak = nakano_class(c, tol)
    members = [
        ChainMember("nakano", nak, +1),
        ChainMember(f"A^{{{n},1}}_E", PositivityReport(f"A^{{{n},1}}_E", spec[n, 1], classify(spec[n, 1], tol), tol), +1),
        ChainMember(f"A^{{0,{n-1}}}_E*", PositivityReport(f"A^{{0,{n-1}}}_E*", spec_dual[0, n - 1], classify(spec_dual[0, n - 1], tol), tol), +1),
        ChainMember(f"A^{{{n-1},0}}_E", PositivityReport(f"A^{{{n-1},0}}_E", spec[n - 1, 0], classify(spec[n - 1, 0], tol), tol), -1),
        ChainMember(f"A^{{1,{n}}}_E*", PositivityReport(f"A^{{1,{n}}}_E*", spec_dual[1, n], classify(spec_dual[1, n], tol), tol), -1),
    ]
    out.chain = members
    ref = nak.spectrum
    out.chain_gap = max(_spectral_gap(m.sign * m.report.spectrum, ref) for m in members)
    if not out.chain_agrees:
        scale = spectral_scale(ref)
        classes = ", ".join(f"{m.name}={m.report.cls}" for m in members)
        msg = f"chain classes disagree ({classes}); eigenvalue gap {out.chain_gap:.3e}"
        if out.chain_gap > 10 * tol * scale:
            out.violations.append(msg)
        else:
            out.notes.append(msg + " (within 10x tolerance, boundary case)")
    return out
