"""Constraint system: the 109 cubic equations of the ACC braid relation.

Each equation is stored as printed (left-hand side, ``= 0`` implied) and
expanded once into signed monomials over the 19 `AccParams` fields.  The
printed list contains every nonzero entry of the braid anomaly exactly once
up to an overall sign, so the system vanishes iff the anomaly vanishes.
"""

import ast
import json
from dataclasses import dataclass

import numpy as np

from . import acc, numerics

EQUATIONS = (
    # one term (8)
    ("A1", "a12*c12*d12"),
    ("A2", "a12*b12*d12"),
    ("A3", "a23*c23*d23"),
    ("A4", "a23*b23*d23"),
    ("A5", "x2*x4*c12"),
    ("A6", "x2*x4*c23"),
    ("A7", "x1*x3*b12"),
    ("A8", "x1*x3*b23"),
    # two terms (20)
    ("A9", "a12*d12*(a12 - d12)"),
    ("A10", "a23*d23*(a23 - d23)"),
    ("A11", "x1*x2*(d12 - d23)"),
    ("A12", "x1*x3*(a12 - d12)"),
    ("A13", "x1*x3*(a23 - d23)"),
    ("A14", "x2*x4*(a12 - d12)"),
    ("A15", "x2*x4*(a23 - d23)"),
    ("A16", "x3*x4*(a12 - a23)"),
    ("A17", "x1*x3*c12 - a12*b12*d12"),
    ("A18", "x1*x3*d23 + a13*b13*d13"),
    ("A19", "x1*x3*a12 + a13*b13*d13"),
    ("A20", "x1*x3*c23 - a23*b23*d23"),
    ("A21", "x1*x3*d12 + a13*b13*d13"),
    ("A22", "x1*x3*a23 + a13*b13*d13"),
    ("A23", "x2*x4*d12 + a13*c13*d13"),
    ("A24", "x2*x4*a12 + a13*c13*d13"),
    ("A25", "x2*x4*b12 - a12*c12*d12"),
    ("A26", "x2*x4*d23 + a13*c13*d13"),
    ("A27", "x2*x4*a23 + a13*c13*d13"),
    ("A28", "x2*x4*b23 - a23*c23*d23"),
    # three terms (20)
    ("A29", "a12*(a1**2 - a1*a12 - c12*b12)"),
    ("A30", "a23*(c23*b23 - a3**2 + a3*a23)"),
    ("A31", "d12*(a1**2 - a1*d12 - c12*b12)"),
    ("A32", "d23*(c23*b23 - a3**2 + a3*d23)"),
    ("A33", "x1*(a1*b12 - c12*b13 - a12*b12)"),
    ("A34", "x1*(a1*b13 - d12*b13 - b12**2)"),
    ("A35", "x1*(c23*b13 - a3*b23 + a23*b23)"),
    ("A36", "x1*(a3*b13 - d23*b13 - b23**2)"),
    ("A37", "x2*(a1*c12 - c12*a12 - c13*b12)"),
    ("A38", "x2*(a1*c13 - c12**2 - c13*d12)"),
    ("A39", "x2*(c13*a3 - c13*d23 - c23**2)"),
    ("A40", "x2*(c13*b23 - c23*a3 + c23*a23)"),
    ("A41", "x3*(a1*b12 - c12*b13 - d12*b12)"),
    ("A42", "x3*(a1*b13 - a12*b13 - b12**2)"),
    ("A43", "x3*(c23*b13 - a3*b23 + d23*b23)"),
    ("A44", "x3*(a3*b13 - a23*b13 - b23**2)"),
    ("A45", "x4*(a1*c12 - c12*d12 - c13*b12)"),
    ("A46", "x4*(a1*c13 - c12**2 - c13*a12)"),
    ("A47", "x4*(c13*a3 - c13*a23 - c23**2)"),
    ("A48", "x4*(c13*b23 - c23*a3 + c23*d23)"),
    # four terms (37)
    ("A49", "x3*x4*(a12 - a23) + x1*x2*( - d12 + d23)"),
    ("A50", "x3*x4*a23 - x2*x1*d23 + d13*a13*(d13 - a13)"),
    ("A51", "x3*x4*a12 - x2*x1*d12 + d13*a13*(d13 - a13)"),
    ("A52", "x1*x2*a12 + a13*( - a1**2 + a1*a13 + c13*b13)"),
    ("A53", "x1*x2*a23 + a13*(c13*b13 - a3**2 + a3*a13)"),
    ("A54", "x1*x2*b12 + b23*( - d23*a13 + a12*a13 - a12*a23)"),
    ("A55", "x1*x2*b23 + b12*( - d12*a13 - a12*a23 + a13*a23)"),
    ("A56", "x1*x2*c12 + c23*( - d23*a13 + a12*a13 - a12*a23)"),
    ("A57", "x1*x2*c23 + c12*( - d12*a13 - a12*a23 + a13*a23)"),
    ("A58", "x1*x3*a2 + b13*(d13*a12 - d23*a12 + d23*a13)"),
    ("A59", "x1*x3*a2 + b13*(d12*a13 - d12*a23 + d13*a23)"),
    ("A60", "x2*x4*a2 + c13*(d12*a13 - d12*a23 + d13*a23)"),
    ("A61", "x2*x4*a2 + c13*(d13*a12 - d23*a12 + d23*a13)"),
    ("A62", "x3*x4*b12 + b23*(d12*d13 - d12*d23 - d13*a23)"),
    ("A63", "x3*x4*b23 + b12*( - d12*d23 + d13*d23 - d13*a12)"),
    ("A64", "x3*x4*c12 + c23*(d12*d13 - d12*d23 - d13*a23)"),
    ("A65", "x3*x4*c23 + c12*( - d12*d23 + d13*d23 - d13*a12)"),
    ("A66", "x3*x4*d12 + d13*( - a1**2 + a1*d13 + c13*b13)"),
    ("A67", "x3*x4*d23 + d13*(c13*b13 - a3**2 + a3*d13)"),
    ("A68", "x4*(a1*d12 - a1*d13 - a2*d12) - x1*c13*d13"),
    ("A69", "x4*(a2*d23 + a3*d13 - a3*d23) + x1*c13*d13"),
    ("A70", "x4*a13*b13 + x1*(a2*a23 + a3*a13 - a3*a23)"),
    ("A71", "x4*a13*b13 + x1*( - a1*a12 + a1*a13 + a2*a12)"),
    ("A72", "x4*b12*(a12 - a13) + x1*c12*( - d12 + d13)"),
    ("A73", "x4*b23*(a13 - a23) + x1*c23*( - d13 + d23)"),
    ("A74", "x2*(a1*a12 - a1*a13 - a2*a12) - x3*c13*a13"),
    ("A75", "x2*(a2*a23 + a3*a13 - a3*a23) + x3*c13*a13"),
    ("A76", "x2*d13*b13 + x3*( - a1*d12 + a1*d13 + a2*d12)"),
    ("A77", "x2*d13*b13 + x3*(a2*d23 + a3*d13 - a3*d23)"),
    ("A78", "x2*b12*(d12 - d13) + x3*c12*( - a12 + a13)"),
    ("A79", "x2*b23*(d13 - d23) + x3*c23*( - a13 + a23)"),
    ("A80", "x1*(a2*b12 - a2*b23 + a12*b23 - a23*b12)"),
    ("A81", "x2*(c12*a2 - c12*a23 - a2*c23 + c23*a12)"),
    ("A82", "x3*(a2*b12 - a2*b23 + d12*b23 - d23*b12)"),
    ("A83", "x4*(c12*a2 - c12*d23 - a2*c23 + c23*d12)"),
    ("A84", "c12*d13*b12 - c23*d13*b23 + d12**2*d23 - d12*d23**2"),
    ("A85", "c12*a13*b12 - c23*a13*b23 + a12**2*a23 - a12*a23**2"),
    # five terms (24)
    ("A86", "x1*x2*a1 + x3*x4*a13 + a12*( - a12*a2 - b12*c12 + a2**2)"),
    ("A87", "x1*x2*a3 + x3*x4*a13 + a23*( - a23*a2 - b23*c23 + a2**2)"),
    ("A88", "x1*x2*d13 + x3*x4*a3 + d23*( - b23*c23 + a2**2 - a2*d23)"),
    ("A89", "x1*x2*d13 + x3*x4*a1 + d12*( - b12*c12 + a2**2 - a2*d12)"),
    ("A90", "x1*x2*a2 - c12*a23*b12 + c13*a23*b13 - d12**2*a13 + d12*a13**2"),
    ("A91", "x1*x2*a2 + c13*a12*b13 - c23*a12*b23 - d23**2*a13 + d23*a13**2"),
    ("A92", "x3*x4*a2 - c12*d23*b12 + c13*d23*b13 + d13**2*a12 - d13*a12**2"),
    ("A93", "x3*x4*a2 + c13*d12*b13 - c23*d12*b23 + d13**2*a23 - d13*a23**2"),
    ("A94", "x1*(a13*d13 + a2*d12 - d12*d13) + x4*( - b12**2 + b13*a1)"),
    ("A95", "x1*(a13*d13 + a2*d23 - d13*d23) + x4*(b13*a3 - b23**2)"),
    ("A96", "x1*(a1*c13 - c12**2) + x4*( - a12*a13 + a12*a2 + a13*d13)"),
    ("A97", "x1*(c13*a3 - c23**2) + x4*( - a13*a23 + a13*d13 + a23*a2)"),
    ("A98", "x1*(a13*d12 - b23*c12 + a2**2 - a2*d12) + x4*a23*b13"),
    ("A99", "x1*(a13*d23 - b12*c23 + a2**2 - a2*d23) + x4*a12*b13"),
    ("A100", "x1*c13*d12 + x4*( - a23*a2 + a23*d13 - b23*c12 + a2**2)"),
    ("A101", "x1*c13*d23 + x4*( - a12*a2 + a12*d13 - b12*c23 + a2**2)"),
    ("A102", "x2*(a1*b13 - b12**2) + x3*(a2*a12 + d13*a13 - a12*a13)"),
    ("A103", "x2*(a3*b13 - b23**2) + x3*(a2*a23 + d13*a13 - a13*a23)"),
    ("A104", "x2*(a2*d12 - d12*d13 + d13*a13) + x3*(a1*c13 - c12**2)"),
    ("A105", "x2*(a2*d23 - d13*d23 + d13*a13) + x3*(c13*a3 - c23**2)"),
    ("A106", "x2*d12*b13 + x3*(a2**2 - a2*a23 - c23*b12 + d13*a23)"),
    ("A107", "x2*d23*b13 + x3*( - c12*b23 + a2**2 - a2*a12 + d13*a12)"),
    ("A108", "x2*(c12*b23 - a2**2 + a2*d23 - d23*a13) - x3*c13*a12"),
    ("A109", "x2*(a2**2 - a2*d12 - c23*b12 + d12*a13) + x3*c13*a23"),
)

GROUP_SIZES = {1: 8, 2: 20, 3: 20, 4: 37, 5: 24}
LABELS = tuple(label for label, _ in EQUATIONS)

_INDEX = {name: k for k, name in enumerate(acc.FIELD_NAMES)}


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _poly_add(p, q, sign=1):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c != 0}


def expand(expr):
    """Expand a printed polynomial into ``{exponent tuple: integer coefficient}``.

    Supports ``+ - * **`` (integer powers), parentheses, integer literals and
    the 19 parameter names.
    """
    zero = (0,) * len(acc.FIELD_NAMES)

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Name):
            if node.id not in _INDEX:
                raise ValueError(f"unknown variable {node.id!r}")
            e = list(zero)
            e[_INDEX[node.id]] = 1
            return {tuple(e): 1}
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return {zero: node.value} if node.value else {}
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            p = walk(node.operand)
            return {e: -c for e, c in p.items()} if isinstance(node.op, ast.USub) else p
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("only integer powers are supported")
                base = walk(node.left)
                out = {zero: 1}
                for _ in range(node.right.value):
                    out = _poly_mul(out, base)
                return out
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return _poly_add(left, right)
            if isinstance(node.op, ast.Sub):
                return _poly_add(left, right, sign=-1)
            if isinstance(node.op, ast.Mult):
                return _poly_mul(left, right)
        raise ValueError(f"unsupported syntax in {expr!r}")

    return walk(ast.parse(expr, mode="eval"))


def _compile():
    eq_index, coeffs, exps = [], [], []
    monomials = {}
    for k, (label, text) in enumerate(EQUATIONS):
        poly = expand(text)
        monomials[label] = poly
        for e, c in sorted(poly.items()):
            eq_index.append(k)
            coeffs.append(c)
            exps.append(e)
    return (
        monomials,
        np.array(eq_index, dtype=np.intp),
        np.array(coeffs, dtype=np.float64),
        np.array(exps, dtype=np.int64),
    )


MONOMIALS, _EQ_INDEX, _COEFFS, _EXPONENTS = _compile()


def degree(label):
    """Total degrees of the monomials of one equation (a set; one value if homogeneous)."""
    return {sum(e) for e in MONOMIALS[label]}


def term_count(label):
    """Number of top-level terms as printed (the grouping key)."""
    text = dict(EQUATIONS)[label]
    tree = ast.parse(text, mode="eval").body
    return len(_top_terms(tree))


def _top_terms(node):
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
        return _top_terms(node.left) + _top_terms(node.right)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Mult):
        # a common factor times a parenthesized sum counts its summands
        for side in (node.left, node.right):
            inner = _top_terms(side)
            if len(inner) > 1:
                return inner
    return [node]


def evaluate(values):
    """Evaluate all 109 left-hand sides.

    `values` is a length-19 vector or an ``(N, 19)`` batch in `FIELD_NAMES`
    order; the result has shape ``(109,)`` or ``(N, 109)``.
    """
    v = np.asarray(values, dtype=np.complex128)
    batch = v.reshape(-1, len(acc.FIELD_NAMES))
    # (N, terms): prod over variables of v**e
    terms = np.prod(batch[:, None, :] ** _EXPONENTS[None, :, :], axis=2) * _COEFFS
    out = np.zeros((batch.shape[0], len(EQUATIONS)), dtype=np.complex128)
    np.add.at(out, (slice(None), _EQ_INDEX), terms)
    return out[0] if v.ndim == 1 else out


@dataclass(frozen=True)
class ConstraintResiduals:
    values: np.ndarray
    max_abs: float
    scale: float

    def by_label(self):
        return dict(zip(LABELS, self.values))

    @property
    def relative(self):
        return self.max_abs / self.scale if self.scale else self.max_abs

    def sorted_by_magnitude(self):
        order = sorted(range(len(LABELS)), key=lambda k: (-abs(self.values[k]), k))
        return [(LABELS[k], self.values[k]) for k in order]


def residual_scale(p):
    """Every equation is cubic, so residuals scale with ``max|p|**3``."""
    return p.max_abs() ** 3


def constraint_residuals(p):
    vals = evaluate(p.as_array())
    return ConstraintResiduals(vals, numerics.max_abs(vals), residual_scale(p))


def anomaly_equivalence_check(p, tol=numerics.DEFAULT_TOL):
    """True iff the constraint system and the braid anomaly agree on vanishing."""
    res = constraint_residuals(p)
    rc = p.tensor()
    constraints_vanish = res.max_abs <= tol * res.scale
    anomaly_vanishes = numerics.max_abs(acc.braid_anomaly(rc)) <= tol * acc.anomaly_scale(rc)
    return constraints_vanish == anomaly_vanishes


def export_table():
    """The monomial table as a JSON document: label -> [[coeff, {var: power}], ...]."""
    doc = {}
    for label in LABELS:
        terms = []
        for e, c in sorted(MONOMIALS[label].items(), reverse=True):
            powers = {acc.FIELD_NAMES[k]: p for k, p in enumerate(e) if p}
            terms.append([c, powers])
        doc[label] = terms
    return json.dumps(doc, indent=1)
