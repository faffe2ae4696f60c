"""Solution-preserving transformations of ACC braid matrices.

Three involutions act on the 9x9 tensor-layout matrix:

``T``  transpose.
``L``  left-right reflection, ``Rcheck -> P Rcheck P`` (swap the two tensor
       labels on both sides).
``Z``  the 0 <-> 2 relabeling: conjugation by ``J (x) J`` with
       ``J |j> = |2 - j>``.

Together with rescaling they generate the symmetries that map solutions
to solutions.  The three letters commute, so modulo scaling the group is
``Z2 x Z2 x Z2`` of order 8.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import numerics
from .acc import FIELD_NAMES, AccParams, reorder, swap_operator

LETTERS = ("T", "L", "Z")
DEFAULT_TOL = 1e-9

_J = np.eye(3, dtype=np.complex128)[::-1]
_JJ = np.kron(_J, _J)


@dataclass(frozen=True)
class SymmetryWord:
    """A word over {T, L, Z}, applied right to left, then an optional scale."""

    letters: str = ""
    scale: complex = 1

    def __post_init__(self):
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise ValueError(f"unknown symmetry letters {sorted(bad)}")
        if complex(self.scale) == 0:
            raise ValueError("scale must be nonzero")

    def __str__(self):
        w = self.letters or "1"
        return w if self.scale == 1 else f"{self.scale}*{w}"

    def reduced(self):
        """Equivalent word with letters sorted and squares cancelled."""
        counts = {c: self.letters.count(c) % 2 for c in LETTERS}
        return SymmetryWord("".join(c for c in LETTERS if counts[c]), self.scale)


def _as_word(word):
    return word if isinstance(word, SymmetryWord) else SymmetryWord(word)


def _letter(c, m):
    if c == "T":
        return m.T.copy()
    if c == "L":
        p = swap_operator()
        return p @ m @ p
    return _JJ @ m @ _JJ


def apply(word, rcheck, ordering="rlex"):
    """Apply `word` to a 9x9 matrix given in `ordering` (tensor layout by default)."""
    word = _as_word(word)
    m = reorder(numerics.as_matrix(rcheck), ordering, "rlex")
    for c in reversed(word.letters):
        m = _letter(c, m)
    if word.scale != 1:
        m = complex(word.scale) * m
    return reorder(m, "rlex", ordering)


def apply_params(word, p):
    """Push AccParams through `word` (the image is always ACC-shaped)."""
    from .acc import extract_params
    return extract_params(apply(word, p.tensor()), "rlex")


def param_action(word):
    """Where each AccParams field lands under `word`, as {name: image name}.

    Derived by tagging every field with a distinct value and reading the
    image back, not from a hand-written table.
    """
    word = SymmetryWord(_as_word(word).letters)
    tags = AccParams(**{n: k + 1 for k, n in enumerate(FIELD_NAMES)})
    image = apply_params(word, tags).as_dict()
    back = {int(v.real): name for name, v in image.items()}
    return {FIELD_NAMES[k - 1]: back[k] for k in range(1, len(FIELD_NAMES) + 1)}


def xpattern_action(word, pattern):
    """Image of a set of nonzero x-parameters under `word`."""
    act = param_action(word)
    pattern = set(pattern)
    bad = pattern - {"x1", "x2", "x3", "x4"}
    if bad:
        raise ValueError(f"not x-parameters: {sorted(bad)}")
    return frozenset(act[x] for x in pattern)


def normalize(m, tol=DEFAULT_TOL):
    """Divide by the first nonzero entry in grlex scan order."""
    g = reorder(m, "rlex", "grlex").ravel()
    thresh = tol * numerics.max_abs(g)
    nz = np.flatnonzero(np.abs(g) > thresh)
    if nz.size == 0:
        return np.array(m, dtype=np.complex128)
    return m / g[nz[0]]


def group_words():
    """The eight reduced words: 1, T, L, Z, TL, TZ, LZ, TLZ."""
    out = []
    for r in range(4):
        for combo in itertools.combinations(LETTERS, r):
            out.append(SymmetryWord("".join(combo)))
    return out


def orbit(rcheck, tol=DEFAULT_TOL, with_words=False):
    """Distinct images of `rcheck` (tensor layout) under the symmetry group.

    Images are compared after `normalize`, so rescaled copies count once.
    With ``with_words`` the result is a list of (word, matrix) pairs, each
    word the first one in `group_words` order reaching that image.
    """
    m = numerics.as_matrix(rcheck)
    seen = []
    for w in group_words():
        img = apply(w, m)
        key = normalize(img, tol)
        scale = max(numerics.max_abs(key), 1.0)
        if any(numerics.max_abs(key - k) <= tol * scale for _, _, k in seen):
            continue
        seen.append((w, img, key))
    if with_words:
        return [(w, img) for w, img, _ in seen]
    return [img for _, img, _ in seen]


def compose(w1, w2):
    """The reduced word for ``w1 . w2`` (apply w2 first)."""
    w1, w2 = _as_word(w1), _as_word(w2)
    return SymmetryWord(w1.letters + w2.letters, complex(w1.scale) * complex(w2.scale)).reduced()


def multiplication_table(rcheck=None, tol=DEFAULT_TOL):
    """Cayley table of the group, identified by action on a generic matrix.

    Returns (words, table) with ``table[i][j]`` the index of
    ``words[i] . words[j]`` found by comparing images, so the table is a
    measurement rather than an assumption.
    """
    if rcheck is None:
        rng = np.random.default_rng(20240601)
        vals = rng.normal(size=19) + 1j * rng.normal(size=19)
        rcheck = AccParams.from_array(vals).tensor()
    words = group_words()
    images = [normalize(apply(w, rcheck), tol) for w in words]
    table = []
    for wi in words:
        row = []
        for wj in words:
            img = normalize(apply(wi, apply(wj, rcheck)), tol)
            hits = [k for k, ref in enumerate(images) if numerics.max_abs(img - ref) <= tol * max(1.0, numerics.max_abs(ref))]
            if len(hits) != 1:
                raise RuntimeError(f"{wi}.{wj} does not land on a unique group element")
            row.append(hits[0])
        table.append(row)
    return words, table


def element_orders(table):
    orders = []
    for i in range(len(table)):
        k, cur = 1, i
        while cur != 0:
            cur = table[i][cur]
            k += 1
        orders.append(k)
    return orders


def is_abelian(table):
    n = len(table)
    return all(table[i][j] == table[j][i] for i in range(n) for j in range(n))


def generated_subgroup(table, gens):
    """Indices of the subgroup generated by the element indices `gens`."""
    sub = {0}
    frontier = set(gens)
    while frontier:
        sub |= frontier
        frontier = {table[a][b] for a in sub for b in sub} - sub
    return sorted(sub)


def is_dihedral_of_order_8(table):
    """True iff the table is D4: order 8, non-abelian, with an element of order 4."""
    return len(table) == 8 and not is_abelian(table) and 4 in element_orders(table)
