"""Hecke and Temperley-Lieb structure of two-eigenvalue braid matrices.

For Rcheck with spectrum {1, lambda2} the braid tower factors through the
Hecke algebra, ``(t - 1)(t + q) = 0`` with ``q = -lambda2``.  When the
three-strand q-antisymmetrizer also vanishes it factors further through
Temperley-Lieb, and the multiplicities of two-row irreducibles in the
level-n representation are fixed by one symmetrizer trace per level plus
the stability recursion ``m_(p, r)(n) = m_(p-1, r-1)(n-2)``.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .acc import _GRLEX_FROM_RLEX, braid_embed, braid_generators
from .errors import (
    CharacterCrosscheckFailure,
    DegenerateSpectrum,
    DimensionIdentityFailure,
    NonIntegerTrace,
    NotHecke,
    NotTemperleyLieb,
    RankMismatch,
)

MAX_LEVEL = 6


@dataclass(frozen=True)
class HeckeData:
    lambda2: complex
    multiplicity: int
    q: complex
    alpha: complex
    minimal_poly_residual: float
    scale: float

    @property
    def alphas(self):
        """Both square roots of q, principal first."""
        return (self.alpha, -self.alpha)


def _cubic_scale(rcheck):
    return max(1.0, numerics.max_abs(rcheck)) ** 3


def hecke_relation_residual(rcheck, q):
    """``(max |(R - 1)(R + q)|, scale)`` with the usual product scale."""
    return numerics.minimal_polynomial_residual(rcheck, [1.0, -complex(q)])


def hecke_extract(rcheck, tol=numerics.DEFAULT_TOL):
    """Recover the non-unit eigenvalue of a Hecke-type 9x9 braid matrix.

    For each multiplicity k = 1..8 the candidate
    ``lambda2 = (trace - (9 - k)) / k`` is tested with the quadratic
    minimal-polynomial certificate and then with the trace-based
    multiplicity solve; the first k passing both is returned.

    Raises
    ------
    DegenerateSpectrum
        If Rcheck is (numerically) the identity.
    NotHecke
        If no two-value spectrum {1, lambda2} annihilates Rcheck.
    """
    m = numerics.as_matrix(rcheck)
    if m.shape != (9, 9):
        raise numerics.DimensionMismatch("hecke_extract needs a 9x9 matrix")
    eye = numerics.identity(9)
    if numerics.max_abs(m - eye) <= tol * max(1.0, numerics.max_abs(m)):
        raise DegenerateSpectrum("Rcheck is the identity: a single eigenvalue")
    tr = complex(np.trace(m))
    for k in range(1, 9):
        lam = (tr - (9 - k)) / k
        if abs(lam - 1) <= math.sqrt(tol):
            continue
        res, scale = numerics.minimal_polynomial_residual(m, [1.0, lam])
        if res > tol * scale:
            continue
        try:
            mult = numerics.multiplicities_from_traces(m, [1.0, lam], tol=tol)
        except (numerics.MinimalPolynomialMismatch, numerics.NonIntegerMultiplicity):
            continue
        if mult[lam] != k:
            continue
        q = -lam
        return HeckeData(lam, k, q, cmath.sqrt(q), res, scale)
    raise NotHecke("no spectrum {1, lambda2} passes the minimal-polynomial certificate")


def e_prime(gens, i):
    """``1 - R_i - R_j + R_i R_j + R_j R_i - R_i R_j R_i`` with j = i + 1 (1-based)."""
    a, b = gens[i - 1], gens[i]
    eye = numerics.identity(a.shape[0])
    ab = a @ b
    ba = b @ a
    return eye - a - b + ab + ba - ab @ a


def tl_projector_residual(rcheck, n=3):
    """Largest ``max|rho_n(e')|`` over consecutive generator pairs.

    This is an absolute residual; compare it with ``tol * tl_scale(rcheck)``.
    """
    if n < 3:
        raise ValueError("e' needs at least three strands")
    gens = braid_generators(rcheck, n)
    return max(numerics.max_abs(e_prime(gens, i)) for i in range(1, n - 1))


def tl_scale(rcheck):
    """Scale for cubic expressions in Rcheck that also carry constant terms."""
    return _cubic_scale(rcheck)


def tl_generators(rcheck, n, alpha):
    """``U_i = (R_i - 1) / alpha`` for i = 1..n-1."""
    eye = numerics.identity(3**n)
    return [(r - eye) / alpha for r in braid_generators(rcheck, n)]


def tl_relation_residuals(rcheck, n, alpha, q):
    """Residuals of ``U_i U_j U_i = U_i`` (|i-j| = 1) and ``alpha U_i^2 = -(1+q) U_i``."""
    us = tl_generators(rcheck, n, alpha)
    braid = 0.0
    for i in range(len(us) - 1):
        a, b = us[i], us[i + 1]
        braid = max(braid, numerics.max_abs(a @ b @ a - a), numerics.max_abs(b @ a @ b - b))
    quad = max(numerics.max_abs(alpha * u @ u + (1 + q) * u) for u in us)
    return braid, quad


def rank_one_factor(rcheck, tol=numerics.DEFAULT_TOL):
    """Factor ``Rcheck - 1 = u v^T`` (tensor layout, no conjugation).

    `u` is normalized so that its first nonzero entry in grlex order is 1.
    """
    d = numerics.as_matrix(rcheck) - numerics.identity(9)
    r = numerics.rank(d, tol)
    if r != 1:
        raise RankMismatch(f"Rcheck - 1 has rank {r}, expected 1")
    i, j = np.unravel_index(np.argmax(np.abs(d)), d.shape)
    u = d[:, j].copy()
    v = d[i, :] / d[i, j]
    ug = u[_GRLEX_FROM_RLEX]
    first = ug[np.flatnonzero(np.abs(ug) > tol * numerics.max_abs(ug))[0]]
    u = u / first
    v = v * first
    if numerics.max_abs(np.outer(u, v) - d) > 1e-10 * numerics.max_abs(d):
        raise RankMismatch("rank-one reconstruction failed")
    return u, v


def loop_parameter(rcheck, tol=numerics.DEFAULT_TOL):
    """``v^T u`` for ``Rcheck - 1 = u v^T``; equals lambda2 - 1."""
    u, v = rank_one_factor(rcheck, tol)
    return complex(v @ u)


def _coset_sum(gens, k, qinv, eye):
    """``1 + q^-1 R_{k-1} + q^-2 R_{k-1} R_{k-2} + ... `` (gens 1-based)."""
    total = eye.copy()
    word = eye
    for j in range(1, k):
        word = word @ gens[k - 1 - j]
        total = total + qinv**j * word
    return total


def q_symmetrizer(rcheck, n, q):
    """``sum_{w in S_n} q^-l(w) rho_n(T_w)`` via the coset recursion."""
    q = complex(q)
    if abs(q) < 1e-12:
        raise ValueError("q must be nonzero")
    if not 2 <= n <= MAX_LEVEL:
        raise numerics.SizeOverflow(f"level {n} outside 2..{MAX_LEVEL}")
    gens = braid_generators(rcheck, n)
    eye = numerics.identity(3**n)
    e = eye
    for k in range(2, n + 1):
        e = e @ _coset_sum(gens, k, 1 / q, eye)
    return e


def q_symmetrizer_explicit3(rcheck, q):
    """The six-term three-strand symmetrizer written out word by word."""
    r1, r2 = braid_generators(rcheck, 3)
    eye = numerics.identity(27)
    qi = 1 / complex(q)
    return eye + qi * (r1 + r2) + qi**2 * (r1 @ r2 + r2 @ r1) + qi**3 * (r1 @ r2 @ r1)


def trivial_scalar(n, q):
    """Value of the level-n symmetrizer when every R_i acts as 1."""
    qi = 1 / complex(q)
    s = 1.0 + 0j
    for k in range(2, n + 1):
        s *= sum(qi**j for j in range(k))
    return s


# --- tableaux --------------------------------------------------------------

def syt_count(partition):
    """Number of standard Young tableaux of `partition` (hook-length formula)."""
    lam = [p for p in partition if p > 0]
    n = sum(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {partition}")
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


def standard_tableaux(partition):
    """Yield every standard tableau as a dict {entry: (row, col)}."""
    lam = [p for p in partition if p > 0]
    n = sum(lam)

    def fill(shape, k, pos):
        if k > n:
            yield dict(pos)
            return
        for r, used in enumerate(shape):
            if used < lam[r] and (r == 0 or shape[r - 1] > used):
                shape[r] += 1
                pos[k] = (r, used)
                yield from fill(shape, k + 1, pos)
                del pos[k]
                shape[r] -= 1

    yield from fill([0] * len(lam), 1, {})


def syt_ab(partition):
    """(a, b): tableaux with 2 right of 1, and with 2 below 1."""
    if sum(partition) < 2:
        return syt_count(partition), 0
    a = b = 0
    for t in standard_tableaux(partition):
        if t[2] == (0, 1):
            a += 1
        elif t[2] == (1, 0):
            b += 1
    return a, b


def two_row_partitions(n):
    return [(n - r, r) for r in range(n // 2 + 1)]


# --- multiplicity table ---------------------------------------------------

@dataclass
class MultiplicityTable:
    lambda2: complex
    q: complex
    levels: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def top_sequence(self):
        return [self.levels[n][(n, 0)] for n in sorted(self.levels) if n >= 1]

    def as_dict(self):
        return {
            "lambda2": self.lambda2,
            "q": self.q,
            "levels": {
                str(n): {f"{p},{r}": m for (p, r), m in sorted(self.levels[n].items(), reverse=True)}
                for n in sorted(self.levels)
            },
            "diagnostics": {str(n): dict(d) for n, d in sorted(self.diagnostics.items())},
        }


def _tl_check(rcheck, tol):
    res = tl_projector_residual(rcheck, 3)
    if res > tol * tl_scale(rcheck):
        raise NotTemperleyLieb(f"rho_3(e') residual {res:.3e}")
    return res


def multiplicity_table(rcheck, n_max=MAX_LEVEL, tol=numerics.DEFAULT_TOL):
    """Two-row multiplicities of the braid tower for levels 2..n_max.

    ``m_(n)`` is the symmetrizer trace divided by the trivial-representation
    scalar; every other two-row multiplicity is copied from level n - 2.
    Each level is then checked against the dimension identity and the trace
    of ``rho_n(t_1)``.

    The copying step needs ``Rcheck - 1`` of rank one (lambda2 simple).
    Other Temperley-Lieb matrices, e.g. the 5.2.1 family with lambda2 of
    multiplicity 2, have different level-2 content and break the recursion,
    so they are rejected up front with RankMismatch.
    """
    if not 2 <= n_max <= MAX_LEVEL:
        raise numerics.SizeOverflow(f"n_max {n_max} outside 2..{MAX_LEVEL}")
    m = numerics.as_matrix(rcheck)
    h = hecke_extract(m, tol)
    if h.multiplicity != 1:
        raise RankMismatch(
            f"lambda2 has multiplicity {h.multiplicity}; the stability recursion needs rank(Rcheck - 1) = 1"
        )
    _tl_check(m, tol)
    tab = MultiplicityTable(h.lambda2, h.q)
    tab.levels[0] = {(0, 0): 1}
    tab.levels[1] = {(1, 0): 3}
    for n in range(2, n_max + 1):
        side = 3**n
        e = q_symmetrizer(m, n, h.q)
        scalar = trivial_scalar(n, h.q)
        raw = complex(np.trace(e)) / scalar
        top = round(raw.real)
        if abs(raw - top) > 1e-6 * side or top < 0:
            raise NonIntegerTrace(n, raw)
        level = {(n, 0): top}
        for p, r in two_row_partitions(n)[1:]:
            level[(p, r)] = tab.levels[n - 2][(p - 1, r - 1)]
        total = sum(mult * syt_count(lam) for lam, mult in level.items())
        if total != side:
            raise DimensionIdentityFailure(n, total, side)
        t1 = complex(np.trace(braid_embed(m, n, 1)))
        predicted = 0j
        for lam, mult in level.items():
            a, b = syt_ab(lam)
            predicted += mult * (a + b * h.lambda2)
        t1_res = abs(t1 - predicted)
        if t1_res > 1e-6 * side:
            raise CharacterCrosscheckFailure(n, t1_res)
        tab.levels[n] = level
        tab.diagnostics[n] = {
            "symmetrizer_trace": complex(np.trace(e)),
            "trivial_scalar": scalar,
            "normalized_trace": raw,
            "dimension_residual": total - side,
            "t1_residual": t1_res,
        }
    return tab


def multiplicities_from_characters(n, top, k):
    """Solve level-n two-row multiplicities from the t_1 eigenvalue counts.

    With ``m_(n) = top`` known, the counts of eigenvalue 1 and lambda2 of
    ``rho_n(t_1) = Rcheck (x) 1`` (``3**(n-2) (9 - k)`` and ``3**(n-2) k``,
    k the multiplicity of lambda2 in Rcheck) give two linear
    equations ``sum m a = .``, ``sum m b = .`` in the remaining
    multiplicities.  Determined for n <= 5; returns None when the system
    is underdetermined.
    """
    parts = two_row_partitions(n)[1:]
    if len(parts) > 2:
        return None
    ab = np.array([syt_ab(lam) for lam in parts], dtype=float).T
    rhs = np.array([3 ** (n - 2) * (9 - k) - top * syt_ab((n, 0))[0],
                    3 ** (n - 2) * k - top * syt_ab((n, 0))[1]], dtype=float)
    sol, *_ = np.linalg.lstsq(ab, rhs, rcond=None)
    if numerics.max_abs(ab @ sol - rhs) > 1e-9 * max(1.0, numerics.max_abs(rhs)):
        return None
    return {lam: int(round(x)) for lam, x in zip(parts, sol)}


def fibonacci_bisection(count):
    """1, 3, 8, 21, ...: ``m_{k+1} = 3 m_k - m_{k-1}``, first `count` terms from 3."""
    seq = [1, 3]
    while len(seq) < count + 1:
        seq.append(3 * seq[-1] - seq[-2])
    return seq[1:count + 1]


def all_syt_ab(n):
    """{partition: (f, a, b)} for every partition of n (brute force)."""
    out = {}
    for lam in _partitions(n):
        a, b = syt_ab(lam)
        out[lam] = (syt_count(lam), a, b)
    return out


def _partitions(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest

