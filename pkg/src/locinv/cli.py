"""Command-line front end.

    locinv check --h "zz" --n 2
    locinv graph --file ring.txt
    locinv order --i 8 --j 15 --n 4
    locinv cartan --h "xxx+yyy+zzz" --n 3
    locinv corpus
    locinv trace --h "zz1+z1z+1zz" --n 3 --trace out.csv
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import algebraic as alg
from .corpus import EXAMPLES, example
from .errors import LocinvError, ParseError
from .flows import FlowConfig, type1_flow, type2_flow, with_overrides, write_trace_csv
from .linalg import expm_skew
from .local import LocalUnitary
from .pauli import WeylIndex, build_matrix, graph_to_hamiltonian, parse_hamiltonian, read_graph
from .pipeline import Classification, decide

EXIT_CODES = {
    "type1": 0,
    "type2": 2,
    "self_inverse": 3,
    "certified_not_type1": 4,
    "no_witness_found": 5,
}
SCHEMA = 1


# --- JSON with 17 significant digits --------------------------------------

def _dump(x, indent=0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(x, bool) or x is None:
        return {True: "true", False: "false", None: "null"}[x]
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{_dump(str(k))}: {_dump(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, (list, tuple)):
        if not x:
            return "[]"
        items = [f"{pad}{_dump(v, indent + 1)}" for v in x]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def serialize_witness(w):
    if w is None:
        return None
    if isinstance(w, LocalUnitary):
        return w.to_json()
    k1, k2 = w
    return {"k1": k1.to_json(), "k2": k2.to_json()}


def deserialize_witness(data):
    if data is None:
        return None
    if isinstance(data, dict):
        return LocalUnitary.from_json(data["k1"]), LocalUnitary.from_json(data["k2"])
    return LocalUnitary.from_json(data)


def verdict_json(c: Classification) -> dict:
    diag = {k: v for k, v in c.diagnostics.items()}
    if c.tau is not None:
        diag["tau"] = c.tau
    diag["label"] = c.label
    return {
        "schema": SCHEMA,
        "classification": c.status,
        "method": c.method,
        "witness": serialize_witness(c.witness),
        "best_overlap": c.best_overlap,
        "residual": c.residual,
        "diagnostics": diag,
    }


# --- argument handling ----------------------------------------------------

def _infer_n(text: str) -> int:
    for n in range(1, 13):
        try:
            parse_hamiltonian(text, n)
            return n
        except ParseError:
            continue
    # re-raise the error of the most plausible reading
    parse_hamiltonian(text, 2)
    raise AssertionError("unreachable")


def _hamiltonian(args):
    if args.h is None and args.file is None:
        raise SystemExit("error: one of --h or --file is required")
    text = args.h if args.h is not None else Path(args.file).read_text(encoding="utf-8")
    text = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    n = args.n if args.n is not None else _infer_n(text)
    return parse_hamiltonian(text, n)


def _tau(args):
    if getattr(args, "tau_pi_frac", None):
        return float(Fraction(args.tau_pi_frac)) * math.pi
    return args.tau


def _config(args) -> FlowConfig:
    return with_overrides(FlowConfig(), rng_seed=args.seed, restarts=args.restarts,
                          max_iters=args.max_iter, convergence_tol=args.tol)


def _add_flow_flags(p):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--trace", default=None, metavar="CSV", help="write overlap traces as CSV")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_h_flags(p):
    p.add_argument("--h", default=None, help="Hamiltonian, e.g. 'zz+z1+1x'")
    p.add_argument("--file", default=None, help="file holding the Hamiltonian text")
    p.add_argument("--n", type=int, default=None, help="number of qubits")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locinv", description="Local invertibility of qubit interactions")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="classify a Hamiltonian")
    _add_h_flags(p)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-pi-frac", dest="tau_pi_frac", default=None, metavar="P/Q")
    _add_flow_flags(p)

    p = sub.add_parser("graph", help="bipartite criterion for a coupling-graph file")
    p.add_argument("--file", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--flow", action="store_true", help="cross-check with the type-I flow")
    _add_flow_flags(p)

    p = sub.add_parser("order", help="quantum orders and z-rotation solutions")
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    _add_h_flags(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cartan", help="Cartan involution labels")
    _add_h_flags(p)
    _add_flow_flags(p)

    p = sub.add_parser("corpus", help="criteria memberships of the example corpus")
    _add_flow_flags(p)

    p = sub.add_parser("trace", help="run a flow and export its overlap trace")
    _add_h_flags(p)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau-pi-frac", dest="tau_pi_frac", default=None, metavar="P/Q")
    _add_flow_flags(p)
    return ap


# --- commands -------------------------------------------------------------

def cmd_check(args, out) -> int:
    spec = _hamiltonian(args)
    cfg = _config(args)
    c = decide(spec, _tau(args), cfg)
    out.write(_dump(verdict_json(c)) + "\n")
    if args.trace:
        _write_trace(spec, _tau(args), cfg, args.trace)
    return EXIT_CODES[c.status]


def cmd_graph(args, out) -> int:
    g = read_graph(args.file, args.n)
    gv = alg.bipartite_invertibility(g)
    spec = graph_to_hamiltonian(g)
    diag = {"bipartite": gv.coloring is not None}
    if gv.coloring is not None:
        diag["coloring"] = [list(gv.coloring[0]), list(gv.coloring[1])]
    if gv.odd_cycle is not None:
        diag["odd_cycle"] = list(gv.odd_cycle)
    if gv.invertible is True:
        c = Classification("type1", gv.method, gv.witness, gv.residual, -1.0, diagnostics=diag)
    elif gv.invertible is False:
        c = Classification("certified_not_type1", "odd_cycle", diagnostics=diag)
    else:
        c = decide(spec, None, _config(args))
        c.diagnostics.update(diag)
    if args.flow:
        fr = type1_flow(build_matrix(spec), _config(args))
        c.diagnostics["flow_verdict"] = fr.verdict
        c.diagnostics["flow_best_overlap"] = fr.best_overlap
        c.diagnostics["flow_concurs"] = fr.found == (c.status == "type1")
        if c.best_overlap is None:
            c.best_overlap = fr.best_overlap
    out.write(_dump(verdict_json(c)) + "\n")
    return EXIT_CODES[c.status]


def _fmt_angle(phi):
    if phi is None:
        return "none"
    r = np.pi / phi
    return f"pi/{round(r)}" if abs(r - round(r)) < 1e-12 else repr(phi)


def cmd_order(args, out) -> int:
    report = {}
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None or args.n is None:
            raise SystemExit("error: --i, --j and --n are required together")
        idx = WeylIndex(args.i, args.j, args.n)
        p = alg.weyl_order(idx)
        m = np.zeros((2 ** args.n,) * 2, dtype=complex)
        m[args.i - 1, args.j - 1] = 1.0
        joint = alg.joint_z_inversion(m)
        ind = alg.individual_z_inversion(m)
        report = {"weyl": [args.i, args.j], "n": args.n, "order": str(p),
                  "joint_z": _fmt_angle(joint),
                  "individual_z": list(ind.angles) if ind else None}
        text = (f"E_{args.i},{args.j} (n={args.n}): p={p}; "
                + ("not joint-z invertible" if joint is None else f"joint-z invertible, phi={_fmt_angle(joint)}")
                + "; " + ("individually z-invertible" if ind else "not individually z-invertible"))
    else:
        spec = _hamiltonian(args)
        P = alg.order_matrix(spec)
        joint = alg.joint_z_inversion(spec)
        ind = alg.individual_z_inversion(spec)
        report = {"rows": P.astype(int).tolist(), "joint_z": _fmt_angle(joint),
                  "individual_z": list(ind.angles) if ind else None,
                  "sign_choice": list(ind.sign_choice) if ind else None}
        lines = ["order rows P:"] + ["  " + " ".join(f"{int(v):+d}" for v in row) for row in P]
        lines.append(f"joint phi={_fmt_angle(joint)}")
        lines.append("individual phi=" + (", ".join(f"{a:.12g}" for a in ind.angles) if ind else "none"))
        text = "\n".join(lines)
    out.write((_dump(report) if args.json else text) + "\n")
    return 0


def cartan_row_for(spec, cfg):
    row = alg.cartan_row(spec)
    c = decide(spec, None, cfg)
    row["type1"] = "+" if c.status == "type1" else "-"
    return row, c


def cmd_cartan(args, out) -> int:
    spec = _hamiltonian(args)
    row, c = cartan_row_for(spec, _config(args))
    if args.json:
        out.write(_dump({**row, "classification": c.status}) + "\n")
    else:
        out.write(" ".join(f"{k}:{v}" for k, v in row.items() if k != "type1")
                  + f"; type-I:{row['type1']}\n")
    return 0


def corpus_rows(cfg: FlowConfig):
    rows = []
    for num, text, n in EXAMPLES:
        spec = example(num)
        m = build_matrix(spec)
        paired, _ = alg.spectrum_pairing_check(m)
        dc = [lab for lab, k in alg.single_pauli_candidates(n) if alg.double_commutator_check(m, k)]
        inv = alg.invariant_subspace_check(m)
        c = decide(spec, None, cfg)
        rows.append({"example": num, "h": text, "n": n, "spectrum_paired": paired,
                     "double_commutator": bool(dc), "double_commutator_k": dc,
                     "local_orthocomplement": inv,
                     "type1": c.status == "type1", "classification": c.status,
                     "method": c.method})
    return rows


def cmd_corpus(args, out) -> int:
    rows = corpus_rows(_config(args))
    if args.json:
        out.write(_dump(rows) + "\n")
        return 0
    hdr = f"{'#':>3} {'pairing':>8} {'dbl-comm':>9} {'orthoc':>7} {'type-I':>7}  method / h"
    out.write(hdr + "\n")
    yn = {True: "yes", False: "no"}
    for r in rows:
        out.write(f"{r['example']:>3} {yn[r['spectrum_paired']]:>8} {yn[r['double_commutator']]:>9} "
                  f"{yn[r['local_orthocomplement']]:>7} {yn[r['type1']]:>7}  {r['method']} / {r['h']}\n")
    return 0


def _write_trace(spec, tau, cfg, path):
    m = build_matrix(spec)
    if tau is None:
        fr = type1_flow(m, cfg)
    else:
        fr = type2_flow(expm_skew(-1j * tau * m), cfg)
    write_trace_csv(fr, path)
    return fr


def cmd_trace(args, out) -> int:
    if not args.trace:
        raise SystemExit("error: --trace <csv-path> is required")
    spec = _hamiltonian(args)
    fr = _write_trace(spec, _tau(args), _config(args), args.trace)
    out.write(_dump({"schema": SCHEMA, "verdict": fr.verdict, "best_overlap": fr.best_overlap,
                     "restarts_used": fr.restarts_used, "iterations_used": fr.iterations_used,
                     "trace": args.trace}) + "\n")
    return 0


COMMANDS = {"check": cmd_check, "graph": cmd_graph, "order": cmd_order,
            "cartan": cmd_cartan, "corpus": cmd_corpus, "trace": cmd_trace}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return COMMANDS[args.cmd](args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error at position {exc.position}: {exc.reason}\n")
        return 1
    except (LocinvError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except SystemExit as exc:
        if isinstance(exc.code, str):
            sys.stderr.write(exc.code + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
