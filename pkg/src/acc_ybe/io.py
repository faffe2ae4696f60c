"""JSON documents for matrices, parameters, family instances and reports.

Complex numbers are written as ``[re, im]`` pairs.  Floats go through
``json`` which emits the shortest decimal string that round-trips, so
``parse(serialize(x)) == x`` bit for bit.
"""

import json
import math

import numpy as np

from .acc import FIELD_NAMES, ORDERINGS, AccParams
from .catalog import DISCRETE_CHOICES, FamilyInstance


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(v):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(float(v), 0.0)
    if not (isinstance(v, (list, tuple)) and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise ValueError(f"expected [re, im], got {v!r}")
    z = complex(float(v[0]), float(v[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {v!r}")
    return z


def to_jsonable(obj):
    """Recursively convert complex/numpy values into plain JSON types.

    Non-finite floats become ``None``.
    """
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_complex(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        # diagnostics that were never computed are NaN; emit null
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, int):
        return obj
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    return json.dumps(to_jsonable(obj), indent=indent, allow_nan=False)


# --- matrices -------------------------------------------------------------

def matrix_to_doc(m, ordering="rlex"):
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    a = np.asarray(m, dtype=np.complex128)
    return {
        "ordering": ordering,
        "side": int(a.shape[0]),
        "entries": [encode_complex(z) for z in a.ravel()],
    }


def matrix_from_doc(doc):
    """Returns (matrix, ordering)."""
    if not isinstance(doc, dict):
        raise ValueError("matrix document must be an object")
    ordering = doc.get("ordering")
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    side = doc.get("side")
    entries = doc.get("entries")
    if not isinstance(side, int) or side <= 0:
        raise ValueError("side must be a positive integer")
    if not isinstance(entries, list) or len(entries) != side * side:
        raise ValueError(f"expected {side * side} entries")
    m = np.array([decode_complex(e) for e in entries], dtype=np.complex128).reshape(side, side)
    return m, ordering


def dump_matrix(m, ordering="rlex"):
    return dumps(matrix_to_doc(m, ordering))


def load_matrix(text):
    return matrix_from_doc(json.loads(text))


# --- parameters -----------------------------------------------------------

def params_to_doc(p):
    return {name: encode_complex(v) for name, v in p.as_dict().items()}


def params_from_doc(doc):
    """AccParams from a {field: [re, im]} object; missing fields are 0."""
    if not isinstance(doc, dict):
        raise ValueError("parameter document must be an object")
    unknown = set(doc) - set(FIELD_NAMES)
    if unknown:
        raise ValueError(f"unknown parameter fields {sorted(unknown)}")
    return AccParams(**{k: decode_complex(v) for k, v in doc.items()})


def dump_params(p):
    return dumps(params_to_doc(p))


def load_params(text):
    return params_from_doc(json.loads(text))


# --- family instances -----------------------------------------------------

def instance_to_doc(inst):
    return {
        "id": inst.id,
        "continuous": {k: encode_complex(v) for k, v in inst.continuous.items()},
        "discrete": dict(inst.discrete),
    }


def instance_from_doc(doc):
    if not isinstance(doc, dict) or "id" not in doc:
        raise ValueError("instance document needs an 'id'")
    cont = {k: decode_complex(v) for k, v in doc.get("continuous", {}).items()}
    disc = {k: parse_discrete(k, v) for k, v in doc.get("discrete", {}).items()}
    return FamilyInstance(doc["id"], cont, disc)


# --- command-line values --------------------------------------------------

def parse_complex(text):
    """Parse ``"re"``, ``"re+imi"``, ``"imi"`` (``j`` also accepted)."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    s = s.replace("i", "j")
    if s.endswith("j") and s[:-1] in ("", "+", "-"):
        s = s[:-1] + "1j"
    s = s.replace("+j", "+1j").replace("-j", "-1j")
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value {text!r}")
    return z


_DISCRETE_ALIASES = {
    "branch": {"plus": "plus", "+": "plus", "minus": "minus", "-": "minus"},
    "epsilon": {"1": 1, "+1": 1, "-1": -1},
    "omega": {"1": 1, "2": 2, "w": 1, "w2": 2},
    "varsigma": {"1": 1, "+1": 1, "-1": -1, "i": 1, "+i": 1, "-i": -1},
}


def parse_discrete(name, value):
    if name not in DISCRETE_CHOICES:
        raise ValueError(f"unknown discrete parameter {name!r}")
    if value in DISCRETE_CHOICES[name] and not isinstance(value, bool):
        return value
    key = str(value).strip()
    try:
        return _DISCRETE_ALIASES[name][key]
    except KeyError:
        raise ValueError(
            f"{name} must be one of {list(_DISCRETE_ALIASES[name])}, got {value!r}"
        ) from None
