"""The additive charge-conserving (ACC) ansatz for a 3-dimensional braid matrix.

Three presentations of the same 9x9 operator are supported:

``rlex``
    Basis ``|00>, |10>, |20>, |01>, |11>, |21>, |02>, |12>, |22>``.  This is
    the *tensor layout*: it is the matrix fed to ``kron`` when building
    ``R (x) 1`` and ``1 (x) R``, and the layout every braid-level function
    in this package expects.
``grlex``
    Graded order ``|00>, |10>, |01>, |20>, |11>, |02>, |21>, |12>, |22>``;
    block diagonal with block sides 1, 2, 3, 2, 1.  Canonical for
    assembly and block inspection.
``lex``
    ``|00>, |01>, |02>, |10>, ...``; obtained from rlex by exchanging the
    two tensor labels (conjugation by the swap operator).

``grlex = P_G @ rlex @ P_G`` with `grlex_permutation` and
``lex = P @ rlex @ P`` with `swap_operator`.
"""

from dataclasses import dataclass, fields, replace

import numpy as np

from . import numerics
from .errors import DimensionMismatch

ORDERINGS = ("lex", "rlex", "grlex")
TENSOR_ORDERING = "rlex"

FIELD_NAMES = (
    "a1", "a2", "a3",
    "a12", "b12", "c12", "d12",
    "a13", "b13", "c13", "d13",
    "a23", "b23", "c23", "d23",
    "x1", "x2", "x3", "x4",
)

# (row, col) of every parameter in the rlex/tensor layout.
TENSOR_POSITIONS = {
    "a1": (0, 0),
    "a12": (1, 1), "b12": (1, 3), "c12": (3, 1), "d12": (3, 3),
    "a13": (2, 2), "x1": (2, 4), "b13": (2, 6),
    "x2": (4, 2), "a2": (4, 4), "x3": (4, 6),
    "c13": (6, 2), "x4": (6, 4), "d13": (6, 6),
    "a23": (5, 5), "b23": (5, 7), "c23": (7, 5), "d23": (7, 7),
    "a3": (8, 8),
}

# grlex position k holds rlex basis vector _GRLEX_FROM_RLEX[k]
_GRLEX_FROM_RLEX = np.array([0, 1, 3, 2, 4, 6, 5, 7, 8])
# lex position k holds rlex basis vector _LEX_FROM_RLEX[k]
_LEX_FROM_RLEX = np.array([0, 3, 6, 1, 4, 7, 2, 5, 8])

BLOCK_SLICES = (slice(0, 1), slice(1, 3), slice(3, 6), slice(6, 8), slice(8, 9))


@dataclass(frozen=True)
class AccParams:
    """The 19 entries of an ACC braid matrix; unspecified entries are 0."""

    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j
    a12: complex = 0j
    b12: complex = 0j
    c12: complex = 0j
    d12: complex = 0j
    a13: complex = 0j
    b13: complex = 0j
    c13: complex = 0j
    d13: complex = 0j
    a23: complex = 0j
    b23: complex = 0j
    c23: complex = 0j
    d23: complex = 0j
    x1: complex = 0j
    x2: complex = 0j
    x3: complex = 0j
    x4: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            v = complex(getattr(self, f.name))
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise ValueError(f"{f.name} is not finite: {v}")
            object.__setattr__(self, f.name, v)

    @classmethod
    def identity(cls):
        return cls(a1=1, a2=1, a3=1, a12=1, d12=1, a13=1, d13=1, a23=1, d23=1)

    @classmethod
    def swap(cls):
        return cls(a1=1, a2=1, a3=1, b12=1, c12=1, b13=1, c13=1, b23=1, c23=1)

    @classmethod
    def from_array(cls, values):
        values = list(values)
        if len(values) != len(FIELD_NAMES):
            raise ValueError(f"expected {len(FIELD_NAMES)} values, got {len(values)}")
        return cls(**dict(zip(FIELD_NAMES, values)))

    def as_dict(self):
        return {name: getattr(self, name) for name in FIELD_NAMES}

    def as_array(self):
        return np.array([getattr(self, name) for name in FIELD_NAMES], dtype=np.complex128)

    def scaled(self, factor):
        return AccParams(**{k: factor * v for k, v in self.as_dict().items()})

    def with_values(self, **changes):
        return replace(self, **changes)

    def max_abs(self):
        return float(np.max(np.abs(self.as_array())))

    def matrix(self, ordering="grlex"):
        return assemble_check_r(self, ordering)

    def tensor(self):
        """The 9x9 braid matrix in the tensor (rlex) layout."""
        return assemble_check_r(self, TENSOR_ORDERING)


def _check_ordering(ordering):
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")


def _permutation_matrix(order):
    p = np.zeros((9, 9), dtype=np.complex128)
    p[np.arange(9), order] = 1
    return p


def swap_operator():
    """P with ``P |ij> = |ji>`` in the tensor layout (lex shares it; grlex does not)."""
    return _permutation_matrix(_LEX_FROM_RLEX)


def grlex_permutation():
    """P_G: identity except basis positions 2<->3 and 5<->6 (0-indexed)."""
    return _permutation_matrix(_GRLEX_FROM_RLEX)


def _from_rlex(m, ordering):
    if ordering == "rlex":
        return m.copy()
    perm = _GRLEX_FROM_RLEX if ordering == "grlex" else _LEX_FROM_RLEX
    return m[np.ix_(perm, perm)]


def _to_rlex(m, ordering):
    if ordering == "rlex":
        return m.copy()
    perm = _GRLEX_FROM_RLEX if ordering == "grlex" else _LEX_FROM_RLEX
    inv = np.argsort(perm)
    return m[np.ix_(inv, inv)]


def reorder(m, src, dst):
    """Re-present a 9x9 matrix given in ordering `src` in ordering `dst`."""
    _check_ordering(src)
    _check_ordering(dst)
    m = numerics.as_matrix(m)
    if m.shape != (9, 9):
        raise DimensionMismatch("reorder needs a 9x9 matrix")
    return _from_rlex(_to_rlex(m, src), dst)


def assemble_check_r(p, ordering="grlex"):
    """Assemble the 9x9 braid matrix of `p` in the requested ordering.

    Entries outside the ACC pattern are exact zeros.
    """
    _check_ordering(ordering)
    m = np.zeros((9, 9), dtype=np.complex128)
    for name, (r, c) in TENSOR_POSITIONS.items():
        m[r, c] = getattr(p, name)
    return _from_rlex(m, ordering)


def acc_mask(ordering="grlex"):
    """Boolean mask of the 19 positions an ACC matrix may occupy."""
    mask = np.zeros((9, 9), dtype=bool)
    for r, c in TENSOR_POSITIONS.values():
        mask[r, c] = True
    return _from_rlex(mask, ordering)


def is_acc_shaped(m, ordering="grlex", tol=numerics.DEFAULT_TOL):
    m = numerics.as_matrix(m)
    if m.shape != (9, 9):
        raise DimensionMismatch("is_acc_shaped needs a 9x9 matrix")
    _check_ordering(ordering)
    outside = np.abs(m[~acc_mask(ordering)])
    if outside.size == 0 or not np.any(outside):
        return True
    return bool(np.max(outside) <= tol * numerics.max_abs(m))


def extract_params(m, ordering="grlex"):
    """Read AccParams back from an assembled matrix.

    Requires exact zeros outside the ACC pattern; use `is_acc_shaped` first
    for matrices that are only approximately ACC.
    """
    m = numerics.as_matrix(m)
    if m.shape != (9, 9):
        raise DimensionMismatch("extract_params needs a 9x9 matrix")
    t = _to_rlex(m, ordering)
    mask = acc_mask("rlex")
    if np.any(t[~mask] != 0):
        raise ValueError("matrix has nonzero entries outside the ACC pattern")
    return AccParams(**{name: t[r, c] for name, (r, c) in TENSOR_POSITIONS.items()})


@dataclass(frozen=True)
class BlockForm:
    """The five diagonal blocks (sides 1, 2, 3, 2, 1) of a grlex matrix."""

    blocks: tuple

    @classmethod
    def from_matrix(cls, m_grlex):
        m = numerics.as_matrix(m_grlex)
        return cls(tuple(m[s, s].copy() for s in BLOCK_SLICES))

    @classmethod
    def from_params(cls, p):
        return cls.from_matrix(assemble_check_r(p, "grlex"))

    def to_matrix(self):
        m = np.zeros((9, 9), dtype=np.complex128)
        for s, b in zip(BLOCK_SLICES, self.blocks):
            m[s, s] = b
        return m

    def determinants(self):
        return [complex(np.linalg.det(b)) for b in self.blocks]


def invertibility_report(p, tol=numerics.DEFAULT_TOL):
    """Block determinants of `p` and whether each clears ``tol * scale``.

    ``scale`` for a block of side k is ``max_abs(p) ** k``.
    """
    scale = max(p.max_abs(), 1e-300)
    dets = BlockForm.from_params(p).determinants()
    sides = (1, 2, 3, 2, 1)
    return [(d, abs(d) > tol * scale**k) for d, k in zip(dets, sides)]


def is_invertible(p, tol=numerics.DEFAULT_TOL):
    return all(ok for _, ok in invertibility_report(p, tol))


def to_r(rcheck):
    """R = P @ Rcheck."""
    return swap_operator() @ _nine(rcheck)


def to_check(r):
    """Rcheck = P @ R."""
    return swap_operator() @ _nine(r)


def _nine(m):
    m = numerics.as_matrix(m)
    if m.shape != (9, 9):
        raise DimensionMismatch(f"expected 9x9, got {m.shape}")
    return m


def braid_embed(rcheck, n, i, max_n=6):
    """``I_3^{(i-1)} (x) Rcheck (x) I_3^{(n-i-1)}``, the image of generator t_i."""
    rcheck = _nine(rcheck)
    if not 2 <= n <= max_n:
        raise numerics.SizeOverflow(f"n={n} outside 2..{max_n}")
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} outside 1..{n - 1}")
    left = numerics.identity(3 ** (i - 1))
    right = numerics.identity(3 ** (n - i - 1))
    return np.kron(np.kron(left, rcheck), right)


def braid_generators(rcheck, n, max_n=6):
    """[R_1, ..., R_{n-1}] at level n."""
    return [braid_embed(rcheck, n, i, max_n) for i in range(1, n)]


def braid_anomaly(rcheck):
    """``R1 R2 R1 - R2 R1 R2`` on three strands (27x27)."""
    r1, r2 = braid_generators(rcheck, 3)
    return r1 @ r2 @ r1 - r2 @ r1 @ r2


def anomaly_scale(rcheck):
    """Normalizer for anomaly residuals: cubic in the entry magnitudes."""
    return numerics.max_abs(rcheck) ** 3


def anomaly_residual(rcheck):
    """Relative braid-anomaly residual ``max|A| / max|Rcheck|**3``."""
    s = anomaly_scale(rcheck)
    a = numerics.max_abs(braid_anomaly(rcheck))
    return a / s if s else a


def ybe_residual(r):
    """``R12 R13 R23 - R23 R13 R12`` on V (x) V (x) V."""
    r = _nine(r)
    eye3 = numerics.identity(3)
    p23 = np.kron(eye3, swap_operator())
    r12 = np.kron(r, eye3)
    r23 = np.kron(eye3, r)
    r13 = p23 @ r12 @ p23
    return r12 @ r13 @ r23 - r23 @ r13 @ r12
