"""Catalog of every ACC solution family in dimension 3, plus two fixtures.

Each family is instantiated from its printed block form (grlex blocks
``[a1] [[a12, b12], [c12, d12]] [[a13, x1, b13], [x2, a2, x3], [c13, x4, d13]]
[[a23, b23], [c23, d23]] [a3]``) in the printed normalization.  The
branches that admit no solution are carried as metadata only.
"""

import cmath
import warnings
import zlib
from dataclasses import dataclass, field

import numpy as np

from .acc import AccParams
from .errors import DegenerateDomain, DomainViolation

OMEGA = cmath.exp(2j * cmath.pi / 3)

FAMILY_IDS = (
    "Case1",
    "Case3_1_1",
    "Case3_1_2",
    "Case5_2_1",
    "Case5_2_2",
    "Case5_4_a",
    "Case5_4_b",
    "Case5_5_1_1",
    "Case5_5_1_2",
    "Case5_7",
    "Case6_2_1",
    "Case6_2_1p",
    "Case6_2_2",
    "FixtureP",
    "FixtureIdentity",
)
TABLE_FAMILIES = FAMILY_IDS[:13]

HECKE_FAMILIES = (
    "Case1", "Case5_2_1", "Case5_2_2", "Case5_4_a", "Case5_4_b",
    "Case5_5_1_1", "Case5_5_1_2", "Case5_7", "Case6_2_1",
)

DISCRETE_CHOICES = {
    "branch": ("plus", "minus"),
    "epsilon": (1, -1),
    "omega": (1, 2),      # omega = exp(2 pi i k / 3)
    "varsigma": (1, -1),  # varsigma = +-i
}

SPECTRAL_SEPARATION = 0.05


class CoincidentSpectrum(UserWarning):
    """Two template eigenvalues coincide; they were merged."""


class DoubleRoot(UserWarning):
    """Both branches of the generic-family quadratic coincide."""


@dataclass(frozen=True)
class FamilyInstance:
    id: str
    continuous: dict = field(default_factory=dict)
    discrete: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in FAMILY_IDS:
            raise DomainViolation(f"unknown family {self.id!r}")
        object.__setattr__(self, "continuous", {k: complex(v) for k, v in self.continuous.items()})
        object.__setattr__(self, "discrete", dict(self.discrete))


def omega(k=1):
    return OMEGA**k


def varsigma(s=1):
    return 1j * s


# --- generic family -------------------------------------------------------

def case1_discriminant(a):
    return (a - 1) ** 2 - 4 * a**2 * (a - 1)


def case1_beta(a, branch="plus"):
    """Root of ``beta**2 a (a-1) + beta (a-1) + a = 0`` on the given branch."""
    a = complex(a)
    if a == 0 or a == 1:
        raise DegenerateDomain(f"a = {a} is excluded (a must avoid 0 and 1)")
    if branch not in DISCRETE_CHOICES["branch"]:
        raise DomainViolation(f"branch must be 'plus' or 'minus', got {branch!r}")
    disc = case1_discriminant(a)
    if abs(disc) < 1e-12 * abs(a - 1) ** 2:
        warnings.warn(f"double root at a = {a}", DoubleRoot, stacklevel=2)
    root = cmath.sqrt(disc)
    sign = 1 if branch == "plus" else -1
    return (-(a - 1) + sign * root) / (2 * a * (a - 1))


def case1_solve_b(a, x1, x3, branch="plus"):
    """The entry b13 completing the generic family: ``b = x1 x3 beta``."""
    if complex(x1) == 0 or complex(x3) == 0:
        raise DegenerateDomain("x1 and x3 must be nonzero")
    return complex(x1) * complex(x3) * case1_beta(a, branch)


def case1_params(a, x1, x3, b):
    """The generic-family matrix with b13 = `b` left free.

    The braid anomaly of this matrix carries the overall factor
    ``b**2 a (a-1) + b x1 x3 (a-1) + a x1**2 x3**2``; it is a solution only
    when `b` comes from `case1_solve_b`.
    """
    a, x1, x3, b = map(complex, (a, x1, x3, b))
    return AccParams(
        a1=1, a12=1, d12=1, a23=1, d23=1, a3=1,
        a13=a, x1=x1, b13=b,
        x2=x3 * (a - 1) / b, a2=(x1 * x3 + b) / b, x3=x3,
        c13=x1**2 * x3**2 / b**3,
        x4=-x1 * (a * b + x1 * x3) / (a * b**2),
        d13=-x1 * x3 / (a * b),
    )


# --- builders: printed block forms ----------------------------------------

def _case1(c, d):
    b = c.get("b")
    if b is None:
        b = case1_solve_b(c["a"], c["x1"], c["x3"], d.get("branch", "plus"))
    return case1_params(c["a"], c["x1"], c["x3"], b)


def _case3_1_1(c, d):
    a, cc, x4 = c["a"], c["c"], c["x4"]
    return AccParams(
        a1=1,
        a12=0, b12=a**2 / cc, c12=cc, d12=1 - a**2,
        a13=0, x1=0, b13=a**4 / cc**2,
        x2=0, a2=a, x3=a * (a**2 - 1) ** 2 / x4,
        c13=cc**2, x4=x4, d13=(a + 1) * (a - 1) ** 2,
        a23=0, b23=a**2 / cc, c23=cc, d23=1 - a**2,
        a3=1,
    )


def _case3_1_2(c, d):
    a, cc, x4 = c["a"], c["c"], c["x4"]
    w = omega(d["omega"])
    return AccParams(
        a1=1,
        a12=0, b12=w * a / cc, c12=cc, d12=1 - w * a,
        a13=0, x1=0, b13=w**2 * a**2 / cc**2,
        x2=0, a2=a, x3=(w**2 - a) * (a - 1) * a / x4,
        c13=cc**2, x4=x4, d13=(1 - w * a) * (1 - a),
        a23=0, b23=a**2 / cc, c23=w**2 * a * cc, d23=w * a * (a - 1),
        a3=w * a**2,
    )


def _case5_2_1(c, d):
    b, cc, x3 = c["b"], c["c"], c["x3"]
    return AccParams(
        a1=1, a12=1, d12=1,
        a13=1 - b * cc, b13=b / cc,
        x2=-x3 * cc**2, a2=1, x3=x3,
        c13=cc**2,
        a23=1 - b * cc, b23=b, c23=cc, d23=0,
        a3=1,
    )


def _case5_2_2(c, d):
    b, cc, x3 = c["b"], c["c"], c["x3"]
    return AccParams(
        a1=1, a12=1, d12=1,
        a13=1 - b * cc, b13=-(b**2),
        x2=x3 * cc / b, a2=1, x3=x3,
        c13=-cc / b,
        a23=1 - b * cc, b23=b, c23=cc, d23=0,
        a3=-b * cc,
    )


def _case5_4_a(c, d):
    b, cc, x3 = c["b"], c["c"], c["x3"]
    return AccParams(
        a1=1, a12=1 - b * cc, b12=b, c12=cc, d12=0,
        a13=1 - b * cc, b13=b / cc,
        x2=-x3 * cc**2, a2=1, x3=x3,
        c13=cc**2,
        a23=1 - b * cc, b23=b, c23=cc, d23=0,
        a3=1,
    )


def _case5_4_b(c, d):
    b, cc, x3 = c["b"], c["c"], c["x3"]
    return AccParams(
        a1=1, a12=1 - b * cc, b12=b, c12=cc, d12=0,
        a13=1 - b * cc, b13=b / cc,
        x2=x3 * cc / b, a2=-b * cc, x3=x3,
        c13=cc**2,
        a23=1 - b * cc, b23=b, c23=cc, d23=0,
        a3=1,
    )


def _case5_5_1_1(c, d):
    cc, x2 = c["c"], c["x2"]
    w = omega(d["omega"])
    return AccParams(
        a1=1, a12=1 - w, b12=w / cc, c12=cc, d12=0,
        a13=0, b13=w / cc**2,
        x2=x2, a2=1, x3=-x2 * w / cc**2,
        c13=cc**2, d13=1 - w,
        a23=0, b23=w**2 / cc, c23=cc * w**2, d23=1 - w,
        a3=1,
    )


def _case5_5_1_2(c, d):
    cc, x2 = c["c"], c["x2"]
    s = varsigma(d["varsigma"])
    return AccParams(
        a1=1, a12=s + 1, b12=-s / cc, c12=cc, d12=0,
        a13=0, b13=-s / cc**2,
        x2=x2, a2=1, x3=x2 * s / cc**2,
        c13=cc**2, d13=s + 1,
        a23=0, b23=-1 / cc, c23=s * cc, d23=s + 1,
        a3=s,
    )


def _case5_7(c, d):
    b, x2, x3 = c["b"], c["x2"], c["x3"]
    return AccParams(
        a1=1, b12=b, c12=1 / b,
        b13=b**2, x2=x2, a2=d["epsilon"], x3=x3, c13=1 / b**2,
        b23=b, c23=1 / b,
        a3=1,
    )


def _case6_2_1(c, d):
    cc, x4 = c["c"], c["x4"]
    return AccParams(
        a1=1, b12=1 / cc, c12=cc,
        b13=1 / cc**2, a2=d["epsilon"], c13=cc**2, x4=x4,
        b23=1 / cc, c23=cc,
        a3=1,
    )


def _case6_2_1p(c, d):
    cc, x4 = c["c"], c["x4"]
    w = omega(d["omega"])
    return AccParams(
        a1=1, b12=1 / cc, c12=cc,
        b13=1 / cc**2, a2=w, c13=cc**2, x4=x4,
        b23=w**2 / cc, c23=w**2 * cc, d23=w - 1,
        a3=w,
    )


def _case6_2_2(c, d):
    cc, x4 = c["c"], c["x4"]
    w = omega(d["omega"])
    return AccParams(
        a1=1, b12=1 / (cc * w), c12=cc, d12=w + 2,
        b13=1 / (cc**2 * w**2), a2=1, c13=cc**2, x4=x4,
        b23=1 / cc, c23=w * cc,
        a3=w**2,
    )


# --- spectra --------------------------------------------------------------

def _spec_case1(c, d):
    b = c.get("b")
    if b is None:
        b = case1_solve_b(c["a"], c["x1"], c["x3"], d.get("branch", "plus"))
    return [(1, 8), (-((c["x1"] * c["x3"] / b) ** 2), 1)]


def _spec_minus_bc(k):
    return lambda c, d: [(1, 9 - k), (-c["b"] * c["c"], k)]


def _spec_epsilon(c, d):
    return [(1, 5), (-1, 4)] if d["epsilon"] == -1 else [(1, 6), (-1, 3)]


@dataclass(frozen=True)
class Family:
    id: str
    name: str
    x_pattern: frozenset
    continuous: tuple
    discrete: tuple
    counts: str
    builder: object = field(repr=False)
    spectrum: object = field(repr=False)
    excluded: dict = field(default_factory=dict)
    hecke: bool = False
    semisimple: bool = True
    template: str = ""
    printed_template: str = ""
    notes: str = ""


def _xs(*names):
    return frozenset(names)


FAMILIES = {
    f.id: f
    for f in (
        Family("Case1", "1", _xs("x1", "x2", "x3", "x4"), ("a", "x1", "x3"), ("branch",),
               "3/0", _case1, _spec_case1,
               excluded={"a": (0, 1)}, hecke=True,
               template="1 x8, -(x1 x3/b)^2 x1",
               notes="b13 = x1 x3 beta with beta^2 a(a-1) + beta(a-1) + a = 0; "
                     "the two roots are recorded as the branch choice"),
        Family("Case3_1_1", "3.1.1", _xs("x3", "x4"), ("a", "c", "x4"), (),
               "3/0", _case3_1_1, lambda c, d: [(1, 5), (-c["a"] ** 2, 3), (c["a"] ** 3, 1)],
               excluded={"a": (0, 1, -1)},
               template="1 x5, -a^2 x3, a^3 x1",
               notes="a = -1 would force x3 = 0, leaving this x-pattern"),
        Family("Case3_1_2", "3.1.2", _xs("x3", "x4"), ("a", "c", "x4"), ("omega",),
               "3/1", _case3_1_2,
               lambda c, d: [(1, 3), (-omega(d["omega"]) * c["a"], 3), (omega(d["omega"]) * c["a"] ** 2, 3)],
               excluded={"a": (0, 1)},
               template="1 x3, -omega a x3, omega a^2 x3",
               notes="at a = -1 only two eigenvalues remain (1 and omega)"),
        Family("Case5_2_1", "5.2.1", _xs("x2", "x3"), ("b", "c", "x3"), (),
               "3/0", _case5_2_1, _spec_minus_bc(2), hecke=True,
               template="1 x7, -bc x2",
               notes="x2 = -x3 c^2"),
        Family("Case5_2_2", "5.2.2", _xs("x2", "x3"), ("b", "c", "x3"), (),
               "3/0", _case5_2_2, _spec_minus_bc(3), hecke=True,
               template="1 x6, -bc x3",
               notes="x2 = x3 c / b; Case 5.3 with epsilon1 = -1 is the point b = c = -1"),
        Family("Case5_4_a", "5.4.a", _xs("x2", "x3"), ("b", "c", "x3"), (),
               "3/0", _case5_4_a, _spec_minus_bc(3), hecke=True,
               template="1 x6, -bc x3", notes="x2 = -c^2 x3"),
        Family("Case5_4_b", "5.4.b", _xs("x2", "x3"), ("b", "c", "x3"), (),
               "3/0", _case5_4_b, _spec_minus_bc(4), hecke=True,
               template="1 x5, -bc x4", notes="x2 = c x3 / b"),
        Family("Case5_5_1_1", "5.5.1.1", _xs("x2", "x3"), ("c", "x2"), ("omega",),
               "2/1", _case5_5_1_1,
               lambda c, d: [(1, 6), (-omega(d["omega"]), 3)], hecke=True,
               template="1 x6, -omega x3", printed_template="1 x6, omega x3",
               notes="the block [[1-omega, omega/c], [c, 0]] forces eigenvalue -omega (x3); "
                     "printed_template keeps the commonly quoted omega form; "
                     "the d13 = 0 partner (5.5.2) is its 02-symmetry image"),
        Family("Case5_5_1_2", "5.5.1.2", _xs("x2", "x3"), ("c", "x2"), ("varsigma",),
               "2/1", _case5_5_1_2,
               lambda c, d: [(1, 5), (varsigma(d["varsigma"]), 4)], hecke=True,
               template="1 x5, varsigma x4"),
        Family("Case5_7", "5.7", _xs("x2", "x3"), ("b", "x2", "x3"), ("epsilon",),
               "3/1", _case5_7, _spec_epsilon, hecke=True, semisimple=False,
               template="1 x5, -1 x4 (epsilon=-1) | 1 x6, -1 x3 (epsilon=+1)",
               notes="a 2x2 Jordan block sits at eigenvalue epsilon unless x3 = -epsilon b^2 x2"),
        Family("Case6_2_1", "6.2.1", _xs("x4"), ("c", "x4"), ("epsilon",),
               "2/1", _case6_2_1, _spec_epsilon, hecke=True, semisimple=False,
               template="1 x5, -1 x4 (epsilon=-1) | 1 x6, -1 x3 (epsilon=+1)",
               notes="the transpose of Case 5.7 at x2 = 0 (outside Case 5, which needs x2 != 0); "
                     "a 2x2 Jordan block sits at eigenvalue epsilon for every x4 != 0"),
        Family("Case6_2_1p", "6.2.1'", _xs("x4"), ("c", "x4"), ("omega",),
               "2/1", _case6_2_1p,
               lambda c, d: [(1, 3), (omega(d["omega"]), 3), (-1, 3)],
               template="1 x3, omega x3, -1 x3"),
        Family("Case6_2_2", "6.2.2", _xs("x4"), ("c", "x4"), ("omega",),
               "2/1", _case6_2_2,
               lambda c, d: [(1, 3), (omega(d["omega"]) ** 2, 3), (-omega(d["omega"]) ** 2, 3)],
               template="1 x3, omega^2 x3, -omega^2 x3"),
        Family("FixtureP", "P", _xs(), (), (), "0/0", lambda c, d: AccParams.swap(),
               lambda c, d: [(1, 6), (-1, 3)], template="1 x6, -1 x3",
               notes="the swap operator; a solution in ACC form"),
        Family("FixtureIdentity", "I", _xs(), (), (), "0/0",
               lambda c, d: AccParams.identity(), lambda c, d: [(1, 9)], template="1 x9"),
    )
}

NO_SOLUTION = (
    {"id": "Case2", "x_pattern": ["x1", "x2", "x3"],
     "reason": "exactly one x vanishes (wlog x4): no solution"},
    {"id": "Case4", "x_pattern": ["x1", "x3"],
     "reason": "x1 x3 != 0, x2 = x4 = 0: no solution"},
    {"id": "Case3_2", "x_pattern": ["x3", "x4"],
     "reason": "a12 d12 != 0, b12 = c12 = 0 leads to a contradiction"},
    {"id": "Case5_1", "x_pattern": ["x2", "x3"],
     "reason": "(alpha, alpha') forces a singular 3x3 block"},
    {"id": "Case5_6", "x_pattern": ["x2", "x3"],
     "reason": "(beta, delta') forces a12 = 0, a contradiction"},
    {"id": "Case6_1", "x_pattern": ["x4"],
     "reason": "b12 = 0 leads to a contradiction"},
)

SUBSUMED = (
    {"id": "Case5_3", "into": ["Case5_2_1", "Case5_2_2"],
     "reason": "epsilon1 = 1 is Case5_2_1 at b = c = 1; epsilon1 = -1 is Case5_2_2 at b = c = -1"},
    {"id": "Case5_5_2", "into": ["Case5_5_1_1", "Case5_5_1_2"],
     "reason": "image of 5.5.1 under the 02-symmetry"},
)


def _validate(inst):
    fam = FAMILIES[inst.id]
    missing = [k for k in fam.continuous if k not in inst.continuous]
    if missing:
        raise DomainViolation(f"{inst.id}: missing parameters {missing}")
    allowed = set(fam.continuous) | ({"b"} if inst.id == "Case1" else set())
    extra = set(inst.continuous) - allowed
    if extra:
        raise DomainViolation(f"{inst.id}: unexpected parameters {sorted(extra)}")
    for k in fam.continuous:
        v = inst.continuous[k]
        if v == 0:
            raise DomainViolation(f"{inst.id}: {k} must be nonzero")
        for bad in fam.excluded.get(k, ()):
            if v == bad:
                raise DegenerateDomain(f"{inst.id}: {k} = {bad} is excluded")
    for k in fam.discrete:
        if k == "branch" and k not in inst.discrete:
            continue
        if inst.discrete.get(k) not in DISCRETE_CHOICES[k]:
            raise DomainViolation(
                f"{inst.id}: discrete {k} must be one of {DISCRETE_CHOICES[k]}, "
                f"got {inst.discrete.get(k)!r}"
            )
    if inst.id == "Case1" and "b" in inst.continuous and inst.continuous["b"] == 0:
        raise DomainViolation("Case1: b must be nonzero")


def instantiate(inst, scale=1):
    """AccParams of a family instance in its printed normalization (times `scale`)."""
    _validate(inst)
    fam = FAMILIES[inst.id]
    p = fam.builder(inst.continuous, inst.discrete)
    return p if scale == 1 else p.scaled(scale)


def expected_spectrum(inst, tol=1e-9):
    """[(eigenvalue, multiplicity), ...] with coincident eigenvalues merged."""
    _validate(inst)
    raw = FAMILIES[inst.id].spectrum(inst.continuous, inst.discrete)
    merged = []
    for value, mult in raw:
        value = complex(value)
        for k, (v, m) in enumerate(merged):
            if abs(v - value) <= tol * max(1.0, abs(v)):
                warnings.warn(f"{inst.id}: eigenvalues {v} and {value} coincide", CoincidentSpectrum,
                              stacklevel=2)
                merged[k] = (v, m + mult)
                break
        else:
            merged.append((value, mult))
    return merged


def spectral_gap(inst):
    """Smallest distance between distinct template eigenvalues (inf if one)."""
    vals = [complex(v) for v, _ in FAMILIES[inst.id].spectrum(inst.continuous, inst.discrete)]
    gaps = [abs(u - v) for i, u in enumerate(vals) for v in vals[i + 1:]]
    return min(gaps) if gaps else float("inf")


def _draw(rng, excluded, rmin=0.2, rmax=5.0, margin=0.05):
    while True:
        r = np.exp(rng.uniform(np.log(rmin), np.log(rmax)))
        z = complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        if all(abs(z - e) >= margin for e in excluded):
            return z


def random_instance(family_id, seed):
    """A seeded random valid instance of `family_id`.

    Continuous parameters are drawn log-uniformly in modulus from the annulus
    ``0.2 <= |z| <= 5`` with uniform phase, at least 0.05 from excluded
    points; discrete choices are uniform.  Draws whose template eigenvalues
    come closer than 0.05 are rejected so the spectrum stays resolvable.
    """
    if family_id not in FAMILIES:
        raise DomainViolation(f"unknown or no-solution family {family_id!r}")
    fam = FAMILIES[family_id]
    rng = np.random.default_rng([int(seed), zlib.crc32(family_id.encode())])
    while True:
        cont = {k: _draw(rng, fam.excluded.get(k, ())) for k in fam.continuous}
        disc = {k: DISCRETE_CHOICES[k][int(rng.integers(2))] for k in fam.discrete}
        inst = FamilyInstance(family_id, cont, disc)
        if family_id == "Case1" and abs(case1_discriminant(cont["a"])) < 0.05 * abs(cont["a"] - 1) ** 2:
            continue
        if spectral_gap(inst) >= SPECTRAL_SEPARATION:
            return inst


def list_families():
    """Catalog metadata for every family, fixture and no-solution branch."""
    rows = []
    for fid in FAMILY_IDS:
        fam = FAMILIES[fid]
        cont, disc = fam.counts.split("/")
        rows.append({
            "id": fid,
            "name": fam.name,
            "kind": "fixture" if fid.startswith("Fixture") else "solution",
            "x_pattern": sorted(fam.x_pattern),
            "parameters": fam.counts,
            "continuous_count": int(cont),
            "discrete_count": int(disc),
            "continuous": list(fam.continuous),
            "discrete": list(fam.discrete),
            "excluded": {k: [str(v) for v in vals] for k, vals in fam.excluded.items()},
            "spectrum": fam.template,
            "printed_spectrum": fam.printed_template or fam.template,
            "hecke": fam.hecke,
            "semisimple": fam.semisimple,
            "notes": fam.notes,
        })
    for row in NO_SOLUTION:
        rows.append({"kind": "no-solution", **row})
    for row in SUBSUMED:
        rows.append({"kind": "subsumed", **row})
    return rows
