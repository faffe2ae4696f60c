"""Dense complex linear algebra for matrices of side 3**n, n <= 6.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Products and
Kronecker products go through numpy; rank and eigenvalue multiplicities are
computed here so that each result carries an explicit certificate.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    MinimalPolynomialMismatch,
    NonIntegerMultiplicity,
    SizeOverflow,
)

MAX_SIDE = 729
DEFAULT_TOL = 1e-9


def as_matrix(m):
    """Return `m` as a finite square complex128 array (no copy if possible)."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or infinite entries")
    return a


def max_abs(m):
    """Largest entry magnitude; 0.0 for an empty or zero matrix."""
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def identity(side):
    return np.eye(side, dtype=np.complex128)


def mat_mul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"side {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def kron(a, b, max_side=MAX_SIDE):
    """Kronecker product with ``out[i*nb + k, j*nb + l] = a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    side = a.shape[0] * b.shape[0]
    if side > max_side:
        raise SizeOverflow(f"kron side {side} exceeds maximum {max_side}")
    return np.kron(a, b)


def rank(m, tol=DEFAULT_TOL):
    """Numerical rank by Gaussian elimination with partial (row) pivoting.

    A pivot is treated as zero when its magnitude is at most
    ``tol * max_abs(m)``.  The zero matrix has rank 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_matrix(m).copy()
    scale = max_abs(a)
    if scale == 0.0:
        return 0
    thresh = tol * scale
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = r + int(np.argmax(np.abs(a[r:, col])))
        if abs(a[piv, col]) <= thresh:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        factors = a[r + 1:, col] / a[r, col]
        a[r + 1:, col:] -= np.outer(factors, a[r, col:])
        r += 1
    return r


def minimal_polynomial_residual(m, candidates):
    """Return ``(residual, scale)`` for ``prod_c (m - c I)``.

    ``scale`` is ``prod_c max(1, max_abs(m - c I))`` so that
    ``residual / scale`` is a relative certificate.
    """
    a = as_matrix(m)
    eye = identity(a.shape[0])
    prod = eye
    scale = 1.0
    for c in candidates:
        shifted = a - c * eye
        scale *= max(1.0, max_abs(shifted))
        prod = prod @ shifted
    return max_abs(prod), scale


def characteristic_residual(m, spectrum):
    """Return ``(residual, scale)`` for ``prod_c (m - c I)**k_c``.

    With ``sum k_c == side`` this is the characteristic polynomial, which
    annihilates `m` by Cayley-Hamilton whether or not `m` is diagonalizable.
    """
    a = as_matrix(m)
    eye = identity(a.shape[0])
    prod = eye
    scale = 1.0
    for c, k in spectrum:
        shifted = a - complex(c) * eye
        scale *= max(1.0, max_abs(shifted)) ** k
        for _ in range(k):
            prod = prod @ shifted
    return max_abs(prod), scale


def _trace_solve(a, cands):
    n = a.shape[0]
    k = len(cands)
    traces = np.empty(k, dtype=np.complex128)
    power = identity(n)
    for j in range(k):
        traces[j] = np.trace(power)
        power = power @ a
    vander = np.array([[c**j for c in cands] for j in range(k)], dtype=np.complex128)
    return np.linalg.solve(vander, traces)


def multiplicities_from_traces(m, candidates, tol=DEFAULT_TOL, tol_int=None,
                               certificate="minimal"):
    """Algebraic multiplicities of a known spectrum from power-sum traces.

    Solves the Vandermonde system ``sum_c mult(c) * c**k = trace(m**k)`` for
    ``k = 0 .. len(candidates) - 1`` after certifying that the candidates
    annihilate `m`.

    Parameters
    ----------
    m : (n, n) array_like
    candidates : sequence of complex
        Pairwise distinct eigenvalue candidates (separation > tol).
    tol : float
        Relative tolerance of the minimal-polynomial certificate.
    tol_int : float, optional
        Allowed distance of each solved multiplicity from an integer;
        defaults to ``1e-6 * n``.
    certificate : {"minimal", "characteristic"}
        ``"minimal"`` requires ``prod_c (m - c I)`` to vanish, which also
        certifies that `m` is diagonalizable.  ``"characteristic"`` checks
        ``prod_c (m - c I)**mult(c)`` after the solve instead, so matrices
        with Jordan blocks still get certified algebraic multiplicities.

    Returns
    -------
    dict
        candidate -> nonnegative int; values sum to ``n``.

    Raises
    ------
    MinimalPolynomialMismatch
        If ``prod_c (m - c I)`` is not small, i.e. the spectrum is wrong.
    NonIntegerMultiplicity
        If a solved multiplicity is not close to a nonnegative integer.
    """
    a = as_matrix(m)
    n = a.shape[0]
    cands = [complex(c) for c in candidates]
    if not cands:
        raise ValueError("need at least one candidate")
    for i, ci in enumerate(cands):
        for cj in cands[i + 1:]:
            if abs(ci - cj) <= tol:
                raise ValueError(f"candidates {ci} and {cj} are not separated")
    if tol_int is None:
        tol_int = 1e-6 * n
    if certificate not in ("minimal", "characteristic"):
        raise ValueError(f"unknown certificate {certificate!r}")

    if certificate == "minimal":
        residual, scale = minimal_polynomial_residual(a, cands)
        if residual > tol * scale:
            raise MinimalPolynomialMismatch(
                f"minimal polynomial residual {residual:.3e} > {tol:.1e} * {scale:.3e}"
            )

    mults = _trace_solve(a, cands)

    out = {}
    for c, x in zip(candidates, mults):
        r = round(x.real)
        if abs(x - r) > tol_int or r < 0:
            raise NonIntegerMultiplicity(f"multiplicity of {c} solved as {x}")
        out[c] = int(r)
    if sum(out.values()) != n:
        raise NonIntegerMultiplicity(f"multiplicities {out} do not sum to {n}")
    if certificate == "characteristic":
        residual, scale = characteristic_residual(a, out.items())
        if residual > tol * scale:
            raise MinimalPolynomialMismatch(
                f"characteristic polynomial residual {residual:.3e} > {tol:.1e} * {scale:.3e}"
            )
    return out


@dataclass
class SpectrumReport:
    """Outcome of checking a matrix against a candidate spectrum.

    ``entries`` holds (eigenvalue, multiplicity, integer residual) triples,
    the integer residual being the distance of the solved multiplicity
    from the returned integer.  ``minimal_residual`` and
    ``characteristic_residual`` are relative (already divided by scale).
    """

    entries: list = field(default_factory=list)
    minimal_residual: float = float("nan")
    characteristic_residual: float = float("nan")
    ok: bool = False
    semisimple: bool = False
    error: str = ""

    def multiplicities(self):
        return {c: k for c, k, _ in self.entries}


def spectrum_report(m, candidates, tol=DEFAULT_TOL, tol_int=None):
    """Never-raising companion of `multiplicities_from_traces`.

    ``ok`` follows the strict (minimal-polynomial) certificate.  When that
    fails but the characteristic-polynomial certificate holds, the matrix
    has the candidate spectrum with the reported algebraic multiplicities
    and is not diagonalizable (``semisimple`` False).
    """
    a = as_matrix(m)
    n = a.shape[0]
    cands = [complex(c) for c in candidates]
    if tol_int is None:
        tol_int = 1e-6 * n
    rep = SpectrumReport()
    res, scale = minimal_polynomial_residual(a, cands)
    rep.minimal_residual = res / scale
    rep.semisimple = rep.minimal_residual <= tol
    try:
        solved = _trace_solve(a, cands)
    except np.linalg.LinAlgError as exc:
        rep.error = f"Vandermonde solve failed: {exc}"
        return rep
    entries = []
    for c, x in zip(cands, solved):
        r = max(0, round(x.real))
        entries.append((c, int(r), float(abs(x - r))))
    rep.entries = entries
    if any(e[2] > tol_int for e in entries) or sum(e[1] for e in entries) != n:
        rep.error = "solved multiplicities are not nonnegative integers summing to the side"
        return rep
    cres, cscale = characteristic_residual(a, [(c, k) for c, k, _ in entries])
    rep.characteristic_residual = cres / cscale
    if not rep.semisimple:
        rep.error = (
            "minimal polynomial certificate failed"
            + ("; characteristic certificate holds (Jordan blocks present)"
               if rep.characteristic_residual <= tol else "")
        )
        return rep
    rep.ok = True
    return rep
