"""Command-line front end: ``acc-ybe {list,verify,sweep,orbit,hecke,constraints}``.

Every command writes one JSON document (or CSV where offered) to stdout.
Exit status is 0 when the report passes, 1 when a verification fails and
2 for invalid input; invalid input still produces a JSON error document.
"""

import argparse
import csv
import io as _stdio
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import catalog, constraints, hecke, numerics, symmetry
from . import io as acc_io
from .acc import (
    ORDERINGS,
    AccParams,
    anomaly_residual,
    assemble_check_r,
    braid_anomaly,
    is_acc_shaped,
    to_r,
    ybe_residual,
)
from .errors import AccError

DEFAULT_TOL = 1e-9
DEFAULT_N_MAX = 5


class InputError(Exception):
    pass


# --- pipeline ---------------------------------------------------------------

def _relative(value, scale):
    return value / scale if scale else value


def _residuals(p):
    m = p.tensor()
    s = max(p.max_abs(), 1e-300) ** 3
    a = numerics.max_abs(braid_anomaly(m))
    y = numerics.max_abs(ybe_residual(to_r(m)))
    c = constraints.constraint_residuals(p)
    return {
        "anomaly_max": a,
        "anomaly_relative": _relative(a, s),
        "ybe_max": y,
        "ybe_relative": _relative(y, s),
        "constraint_max": c.max_abs,
        "constraint_relative": c.relative,
    }


def _spectrum_block(m, expected, tol):
    rep = numerics.spectrum_report(m, [v for v, _ in expected], tol=tol)
    want = {complex(v): k for v, k in expected}
    got = rep.multiplicities()
    match = bool(got) and all(got.get(v) == k for v, k in want.items())
    return {
        "expected": [[v, k] for v, k in expected],
        "entries": [
            {"eigenvalue": c, "multiplicity": k, "certificate_residual": r}
            for c, k, r in rep.entries
        ],
        "minimal_polynomial_residual": rep.minimal_residual,
        "characteristic_polynomial_residual": rep.characteristic_residual,
        "semisimple": rep.semisimple,
        "matches_template": match,
        "ok": bool(rep.ok and match),
        "error": rep.error or None,
    }


def _hecke_block(m, tol, n_max):
    """(hecke dict or None, multiplicity dict or None, integer checks ok)."""
    try:
        h = hecke.hecke_extract(m, tol)
    except AccError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}, None, True
    res, scale = hecke.hecke_relation_residual(m, h.q)
    tl = hecke.tl_projector_residual(m, 3) / hecke.tl_scale(m)
    block = {
        "lambda2": h.lambda2,
        "multiplicity": h.multiplicity,
        "q": h.q,
        "alpha": h.alpha,
        "hecke_residual": res / scale,
        "tl_residual": tl,
        "temperley_lieb": tl <= tol,
        "loop_parameter": None,
        "error": None,
    }
    if h.multiplicity == 1:
        try:
            block["loop_parameter"] = hecke.loop_parameter(m, tol)
        except AccError:
            pass
    # the stability recursion behind the table only applies to rank-one Rcheck - 1
    if not block["temperley_lieb"] or h.multiplicity != 1:
        return block, None, True
    try:
        tab = hecke.multiplicity_table(m, n_max, tol)
    except AccError as exc:
        block["error"] = f"{type(exc).__name__}: {exc}"
        return block, None, False
    return block, _table_doc(tab), True


def _table_doc(tab):
    levels = sorted(n for n in tab.levels if n >= 1)
    top = [tab.levels[n][(n, 0)] for n in levels]
    expected = hecke.fibonacci_bisection(len(top))
    return {
        "levels": [
            {
                "n": n,
                "multiplicities": [
                    {"partition": [p, r], "multiplicity": k}
                    for (p, r), k in sorted(tab.levels[n].items(), reverse=True)
                ],
                "normalized_trace": tab.diagnostics[n]["normalized_trace"] if n in tab.diagnostics else None,
                "dimension_residual": tab.diagnostics[n]["dimension_residual"] if n in tab.diagnostics else 0,
                "t1_residual": tab.diagnostics[n]["t1_residual"] if n in tab.diagnostics else 0.0,
            }
            for n in levels
        ],
        "top_sequence": top,
        "expected_top_sequence": expected,
        "recurrence_holds": all(top[i + 1] == 3 * top[i] - (top[i - 1] if i else 1) for i in range(len(top) - 1)),
    }


def verify_instance(inst, tol=DEFAULT_TOL, n_max=DEFAULT_N_MAX, ordering="grlex"):
    """Run the full verification pipeline on a family instance; returns a dict."""
    fam = catalog.FAMILIES[inst.id]
    p = catalog.instantiate(inst)
    m = p.tensor()
    residuals = _residuals(p)
    residual_ok = all(residuals[k] <= tol for k in ("anomaly_relative", "ybe_relative", "constraint_relative"))
    spectrum = _spectrum_block(m, catalog.expected_spectrum(inst), tol)
    hblock = mult = None
    ints_ok = True
    if fam.hecke:
        hblock, mult, ints_ok = _hecke_block(m, tol, n_max)
    return {
        "family": inst.id,
        "instance": acc_io.instance_to_doc(inst),
        "params": acc_io.params_to_doc(p),
        "residuals": residuals,
        "spectrum": spectrum,
        "hecke": hblock,
        "multiplicities": mult,
        "matrix": acc_io.matrix_to_doc(assemble_check_r(p, ordering), ordering),
        "pass": bool(residual_ok and spectrum["ok"] and ints_ok),
    }


# --- argument handling ----------------------------------------------------

def _parse_params(family, items):
    fam = catalog.FAMILIES[family]
    cont, disc = {}, {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--param expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        name = name.strip()
        if name in catalog.DISCRETE_CHOICES:
            if name not in fam.discrete:
                raise InputError(f"{family} has no discrete parameter {name!r}")
            disc[name] = acc_io.parse_discrete(name, value)
        else:
            allowed = set(fam.continuous) | ({"b"} if family == "Case1" else set())
            if name not in allowed:
                raise InputError(f"{family} has no parameter {name!r}; expected {sorted(allowed)}")
            try:
                cont[name] = acc_io.parse_complex(value)
            except ValueError as exc:
                raise InputError(f"bad value for {name}: {exc}") from None
    return cont, disc


def _instance_from_args(args):
    family = args.family
    if family not in catalog.FAMILIES:
        raise InputError(f"unknown family {family!r}; run 'list' for the catalog")
    cont, disc = _parse_params(family, args.param)
    fam = catalog.FAMILIES[family]
    if args.seed is not None:
        base = catalog.random_instance(family, args.seed)
        cont = {**base.continuous, **cont}
        disc = {**base.discrete, **disc}
    else:
        missing = [k for k in fam.continuous if k not in cont]
        if missing:
            raise InputError(f"{family}: missing --param for {missing} (or give --seed)")
        for k in fam.discrete:
            disc.setdefault(k, catalog.DISCRETE_CHOICES[k][0])
    return catalog.FamilyInstance(family, cont, disc)


def _header(command, args):
    return {"command": command, "tolerance": getattr(args, "tol", DEFAULT_TOL)}


def cmd_list(args):
    return {**_header("list", args), "families": catalog.list_families(), "pass": True}


def cmd_verify(args):
    inst = _instance_from_args(args)
    report = verify_instance(inst, args.tol, args.n_max, args.ordering)
    return {**_header("verify", args), "seed": args.seed, "n_max": args.n_max, **report}


def _sweep_one(job):
    family, seed, tol, n_max = job
    inst = catalog.random_instance(family, seed)
    return seed, verify_instance(inst, tol, n_max)


def cmd_sweep(args):
    if args.family not in catalog.FAMILIES:
        raise InputError(f"unknown family {args.family!r}")
    if args.count < 1:
        raise InputError("--count must be positive")
    seeds = [int(s) for s in np.random.SeedSequence(args.seed).generate_state(args.count)]
    jobs = [(args.family, s, args.tol, args.n_max) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_sweep_one, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        results = [_sweep_one(j) for j in jobs]
    rows = []
    patterns = {}
    worst = {"anomaly_relative": 0.0, "ybe_relative": 0.0, "constraint_relative": 0.0}
    for i, (seed, rep) in enumerate(results):
        for k in worst:
            worst[k] = max(worst[k], rep["residuals"][k])
        pattern = ",".join(str(e["multiplicity"]) for e in rep["spectrum"]["entries"])
        patterns[pattern] = patterns.get(pattern, 0) + 1
        rows.append({
            "index": i,
            "seed": seed,
            "instance": rep["instance"],
            **{k: rep["residuals"][k] for k in worst},
            "spectrum": pattern,
            "spectrum_ok": rep["spectrum"]["ok"],
            "semisimple": rep["spectrum"]["semisimple"],
            "pass": rep["pass"],
        })
    failed = [r["index"] for r in rows if not r["pass"]]
    return {
        **_header("sweep", args),
        "family": args.family,
        "count": args.count,
        "seed": args.seed,
        "n_max": args.n_max,
        "passed": args.count - len(failed),
        "failed": failed,
        "max_residuals": worst,
        "spectrum_patterns": dict(sorted(patterns.items())),
        "instances": rows,
        "pass": not failed,
    }


def cmd_orbit(args):
    if args.family == "random":
        seed = 0 if args.seed is None else args.seed
        rng = np.random.default_rng(seed)
        p = AccParams.from_array(rng.normal(size=19) + 1j * rng.normal(size=19))
        inst_doc = None
    else:
        inst = _instance_from_args(args)
        p = catalog.instantiate(inst)
        inst_doc = acc_io.instance_to_doc(inst)
    m = p.tensor()
    base_ok = anomaly_residual(m) <= args.tol
    elements = []
    ok = True
    for word, img in symmetry.orbit(m, args.tol, with_words=True):
        shaped = is_acc_shaped(img, "rlex")
        res = anomaly_residual(img)
        ok &= shaped and (res <= args.tol or not base_ok)
        elements.append({"word": str(word), "acc_shaped": shaped, "anomaly_relative": res})
    words, table = symmetry.multiplication_table()
    return {
        **_header("orbit", args),
        "family": args.family,
        "seed": args.seed,
        "instance": inst_doc,
        "input_is_solution": base_ok,
        "elements": elements,
        "distinct": len(elements),
        "summary": f"{len(elements)} distinct elements",
        "group": {
            "order": len(words),
            "abelian": symmetry.is_abelian(table),
            "dihedral": symmetry.is_dihedral_of_order_8(table),
            "element_orders": dict(zip((str(w) for w in words), symmetry.element_orders(table))),
        },
        "pass": bool(ok),
    }


def cmd_hecke(args):
    inst = _instance_from_args(args)
    m = catalog.instantiate(inst).tensor()
    block, mult, ints_ok = _hecke_block(m, args.tol, args.n_max)
    ok = block.get("error") is None and mult is not None and ints_ok
    if ok:
        ok = mult["recurrence_holds"] and mult["top_sequence"] == mult["expected_top_sequence"]
    return {
        **_header("hecke", args),
        "family": inst.id,
        "seed": args.seed,
        "n_max": args.n_max,
        "instance": acc_io.instance_to_doc(inst),
        "hecke": block,
        "multiplicities": mult,
        "pass": bool(ok),
    }


def cmd_constraints(args):
    try:
        with open(args.paramfile, encoding="utf-8") as fh:
            p = acc_io.params_from_doc(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot read parameter file: {exc}") from None
    c = constraints.constraint_residuals(p)
    rows = [{"label": lab, "value": v, "abs": abs(v)} for lab, v in c.sorted_by_magnitude()]
    return {
        **_header("constraints", args),
        "params": acc_io.params_to_doc(p),
        "scale": c.scale,
        "max_abs": c.max_abs,
        "relative": c.relative,
        "residuals": rows,
        "pass": c.relative <= args.tol,
    }


COMMANDS = {
    "list": cmd_list,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "orbit": cmd_orbit,
    "hecke": cmd_hecke,
    "constraints": cmd_constraints,
}


# --- output ---------------------------------------------------------------

def _csv(report):
    buf = _stdio.StringIO()
    cmd = report["command"]
    if cmd == "sweep":
        cols = ["index", "seed", "anomaly_relative", "ybe_relative", "constraint_relative",
                "spectrum", "spectrum_ok", "semisimple", "pass"]
        rows = report["instances"]
    elif cmd == "list":
        cols = ["id", "kind", "name", "parameters", "x_pattern", "spectrum", "hecke", "semisimple", "reason"]
        rows = report["families"]
    else:
        cols = ["label", "re", "im", "abs"]
        rows = [{"label": r["label"], "re": r["value"].real, "im": r["value"].imag, "abs": r["abs"]}
                for r in report["residuals"]]
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(v) if isinstance(v, list) else v) for k, v in r.items()})
    return buf.getvalue()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance (default 1e-9)")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", required=True, help="family id, e.g. Case1 or Case5_7")
    fam.add_argument("--param", action="append", metavar="NAME=VALUE",
                     help="parameter value; complex as 're' or 're+imi'; repeatable")
    fam.add_argument("--seed", type=int, help="draw unspecified parameters at random with this seed")

    nmax = argparse.ArgumentParser(add_help=False)
    nmax.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, choices=range(2, 7), metavar="{2..6}",
                      help="highest braid-tower level for multiplicities (default 5)")

    parser = argparse.ArgumentParser(prog="acc-ybe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", parents=[common], help="show the solution catalog")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", parents=[common, fam, nmax], help="verify one family instance")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--ordering", choices=ORDERINGS, default="grlex", help="layout of the reported matrix")

    p = sub.add_parser("sweep", parents=[common, nmax], help="verify many seeded random instances")
    p.add_argument("--family", required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output is order-stable)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("orbit", parents=[common, fam], help="symmetry orbit of an instance")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("hecke", parents=[common, fam, nmax], help="Hecke / Temperley-Lieb multiplicities")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("constraints", parents=[common], help="evaluate the 109 constraints on a parameter file")
    p.add_argument("paramfile")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def run(argv=None):
    """Returns (exit code, output text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
        code = 0 if report["pass"] else 1
    except (InputError, ValueError, AccError) as exc:
        report = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "pass": False,
        }
        code = 2
    if args.format == "csv" and code != 2:
        return code, _csv(report)
    report["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return code, acc_io.dumps(report) + "\n"


def main(argv=None):
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
