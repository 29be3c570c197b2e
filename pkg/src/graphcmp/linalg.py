"""Small dense symmetric eigenproblems, PSD projection and Gram embeddings."""

from __future__ import annotations

import numpy as np

MAX_SWEEPS = 100


class ConvergenceError(ArithmeticError):
    pass


def jacobi_eigh(m, tol: float = 1e-12, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a symmetric matrix by cyclic Jacobi.

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``tol * max(1, ||m||_F)``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0.0))):
        raise ValueError("matrix must be symmetric")
    a = (a + a.T) / 2
    n = a.shape[0]
    v = np.eye(n)
    limit = tol * max(1.0, np.linalg.norm(a))
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= limit:
            w = np.diag(a).copy()
            order = np.argsort(w)
            return w[order], v[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def eigh(m, tol: float = 1e-12, method: str = "jacobi") -> tuple[np.ndarray, np.ndarray]:
    if method == "jacobi":
        return jacobi_eigh(m, tol)
    if method == "lapack":
        return np.linalg.eigh((np.asarray(m, dtype=float) + np.asarray(m, dtype=float).T) / 2)
    raise ValueError(f"unknown eigensolver {method!r}")


def project_psd(m, eig_tol: float = 1e-12, method: str = "jacobi") -> np.ndarray:
    """Nearest positive semidefinite matrix in Frobenius norm (negative eigenvalues clipped)."""
    w, v = eigh(m, eig_tol, method)
    out = (v * np.maximum(w, 0.0)) @ v.T
    return (out + out.T) / 2


def embed_gram(g, eig_tol: float = 1e-12, method: str = "jacobi") -> np.ndarray:
    """Points whose Gram matrix is ``g``, with an extra origin row prepended.

    ``g`` is indexed by points ``1..n-1`` relative to point 0, so the result
    has ``n`` rows and one column per eigenvalue above ``eig_tol``.
    """
    g = np.atleast_2d(np.asarray(g, dtype=float))
    if g.size == 0:
        return np.zeros((1, 0))
    w, v = eigh(g, eig_tol, method)
    scale = max(1.0, np.abs(g).max())
    if w[0] < -10 * eig_tol * scale:
        raise ValueError(f"Gram matrix is not positive semidefinite (eigenvalue {w[0]:.3g})")
    keep = w > eig_tol * scale
    coords = v[:, keep] * np.sqrt(w[keep])
    return np.vstack([np.zeros((1, coords.shape[1])), coords])


def anchored_gram(s) -> np.ndarray:
    """``G[i, j] = (s[0, i] + s[0, j] - s[i, j]) / 2`` for ``i, j >= 1``."""
    s = np.asarray(s, dtype=float)
    g = (s[0, 1:, None] + s[None, 0, 1:] - s[1:, 1:]) / 2
    return (g + g.T) / 2
