"""Constant Yang-Baxter solutions in dimension 3 with additive charge conservation.

Modules
-------
numerics     dense complex kernels, rank, trace-based multiplicities
acc          the 19-parameter ansatz, orderings, braid tower, anomaly
constraints  the 109 polynomial constraints and their equivalence with the anomaly
catalog      every solution family, with domains and spectra
symmetry     transpose / left-right / 0<->2 symmetries and orbits
hecke        Hecke and Temperley-Lieb structure, multiplicity tables
io           JSON documents for matrices, parameters and instances
cli          the ``acc-ybe`` command
"""

import json
from importlib import resources

from .acc import (
    AccParams,
    BlockForm,
    anomaly_residual,
    assemble_check_r,
    braid_anomaly,
    braid_embed,
    extract_params,
    is_acc_shaped,
    reorder,
    swap_operator,
    to_check,
    to_r,
    ybe_residual,
)
from .catalog import FamilyInstance, expected_spectrum, instantiate, list_families, random_instance
from .constraints import anomaly_equivalence_check, constraint_residuals
from .hecke import hecke_extract, multiplicity_table

__version__ = "0.1.0"


def report_schema():
    """The JSON schema every CLI report validates against."""
    return json.loads(resources.files(__name__).joinpath("report_schema.json").read_text())
