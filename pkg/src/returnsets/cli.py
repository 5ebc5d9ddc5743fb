"""Batch command-line front end.

One invocation runs one job, given either per-command flags or a JSON/TOML
config file, and emits a deterministic report: JSON (sorted keys), CSV (for
return-set style reports), or a short text summary.  All rationals are
serialized as exact "p/q" strings.

Exit codes: 0 success, 1 error, 2 finished but mathematically inconclusive
(an undecided enclosure point remains, or a bounded search found nothing).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .exactnum import IntervalSet, frac_str, parse_frac
from .polyring import IntPoly, joint_intersectivity
from .ipcomb import (
    VipSample,
    eta_decompose,
    ip_r_set,
    ip_r_star_witness_search,
    vip_degree_check,
)
from .systems import FiniteCyclicSystem, SkewSystem, return_set_window, syndeticity_report
from .constructions import (
    DphjInstance,
    behrend_lambda,
    build_small_intersection_counterexample,
    conditional_constants,
    diophantine_set,
    dphj_search,
    dphj_validate,
    find_diophantine_shift,
    interval_family,
    modulus_counterexample,
    verify_solution_free,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


@dataclass
class RunReport:
    command: str
    params: dict
    results: dict
    exactness: dict
    timing_seconds: float

    def payload(self) -> dict:
        digest = hashlib.sha256(
            json.dumps(self.params, sort_keys=True).encode()
        ).hexdigest()
        return {
            "command": self.command,
            "inputs_digest": digest,
            "results": self.results,
            "exactness": self.exactness,
            "tool_version": __version__,
        }


# -- parameter schemas ---------------------------------------------------------

SCHEMAS = {
    "behrend": {"required": ["b", "N"], "optional": {}},
    "verify-free": {"required": ["elements", "b"], "optional": {}},
    "family": {"required": ["m", "c", "b"], "optional": {}},
    "counterexample": {"required": ["polys", "r", "window"],
                       "optional": {"grid": 64, "m_cap": 100000}},
    "modulus": {"required": ["polys", "window"],
                "optional": {"bound": 10, "witness_m": None}},
    "return-set": {"required": ["type", "polys", "epsilon", "window"],
                   "optional": {"modulus": None, "subset": None,
                                "base_set": None, "exponents": None,
                                "grid": 64, "max_doublings": 8}},
    "diophantine": {"required": ["polys", "alphas", "epsilon", "window"],
                    "optional": {"shift_box": None}},
    "vip-check": {"required": ["poly", "generators", "t"], "optional": {}},
    "eta": {"required": ["poly", "generators", "D"], "optional": {}},
    "ipr-witness": {"required": ["target", "r", "box", "window"], "optional": {}},
    "dphj": {"required": ["q", "D", "N", "S"], "optional": {}},
    "constants": {"required": ["ell", "D", "delta", "C"], "optional": {}},
}


class ParamError(ValueError):
    pass


def validate_params(command: str, params: dict) -> dict:
    schema = SCHEMAS[command]
    known = set(schema["required"]) | set(schema["optional"])
    for key in params:
        if key not in known:
            raise ParamError(f"unknown parameter {key!r} for command {command!r}")
    for key in schema["required"]:
        if params.get(key) is None:
            raise ParamError(f"missing required parameter {key!r} for command {command!r}")
    merged = dict(schema["optional"])
    merged.update({k: v for k, v in params.items() if v is not None})
    return merged


# -- input coercion --------------------------------------------------------------


def parse_window(value):
    if isinstance(value, str):
        axes = [ax for ax in value.split(";") if ax.strip()]
        return [tuple(int(x) for x in ax.split(",")) for ax in axes]
    value = list(value)
    if value and isinstance(value[0], int):
        return [tuple(value)]
    return [tuple(ax) for ax in value]


def parse_polys(values):
    return [IntPoly.parse(v) if isinstance(v, str) else v for v in values]


def parse_generators(value):
    if isinstance(value, str):
        vectors = [v for v in value.split(";") if v.strip()]
        return [tuple(int(x) for x in v.split(",")) for v in vectors]
    out = []
    for g in value:
        out.append((int(g),) if isinstance(g, int) else tuple(int(x) for x in g))
    return out


def parse_int_list(value):
    if isinstance(value, str):
        return [int(x) for x in value.replace(";", ",").split(",") if x.strip()]
    return [int(x) for x in value]


def jsonable(obj):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    return obj


# -- command handlers ------------------------------------------------------------


def run_behrend(p):
    lam = behrend_lambda(int(p["b"]), int(p["N"]))
    ok, bad = verify_solution_free(lam.elements, lam.b)
    results = {
        "b": lam.b, "N": lam.N, "n": lam.n, "d": lam.d, "k": lam.k,
        "elements": list(lam.elements), "size": lam.size,
        "verify_free": ok,
        "density": frac_str(Fraction(lam.size, lam.N)),
        "density_note": "asymptotic lower bound has an existential constant; "
                        "not asserted at finite N",
    }
    if bad is not None:
        results["violation"] = {"tuple": list(bad[0]), "weights": list(bad[1])}
    return results, {"mode": "exact"}, EXIT_OK


def run_verify_free(p):
    ok, bad = verify_solution_free(parse_int_list(p["elements"]), int(p["b"]))
    results = {"solution_free": ok}
    if bad is not None:
        results["counterexample"] = {"tuple": list(bad[0]), "weights": list(bad[1])}
    return results, {"mode": "exact"}, EXIT_OK


def run_family(p):
    fam = interval_family(int(p["m"]), int(p["c"]), int(p["b"]))
    results = {
        "m": fam.m, "c": fam.c, "b": fam.b,
        "lambda": list(fam.lambda_set.elements),
        "intervals": fam.result.to_json_obj(),
        "measure": frac_str(fam.result.measure()),
        "block_length": frac_str(fam.block_length),
    }
    return results, {"mode": "exact"}, EXIT_OK


def run_counterexample(p):
    bundle = build_small_intersection_counterexample(
        parse_polys(p["polys"]), int(p["r"]), parse_window(p["window"]),
        m_cap=int(p["m_cap"]), grid=int(p["grid"]),
    )
    code = EXIT_INCONCLUSIVE if bundle.report.inconclusive else EXIT_OK
    return bundle.to_json_obj(), {"mode": bundle.report.exactness}, code


def run_modulus(p):
    polys = parse_polys(p["polys"])
    witness = p.get("witness_m")
    results = {}
    if witness is None:
        verdict = joint_intersectivity(polys, int(p["bound"]))
        if verdict.is_intersective:
            raise ParamError(
                f"no witness modulus up to {p['bound']}: family is jointly "
                "intersective at every tested prime power"
            )
        witness = verdict.witness_modulus
        results["tested_bound"] = int(p["bound"])
    system, report = modulus_counterexample(polys, int(witness), parse_window(p["window"]))
    results.update({
        "witness_modulus": int(witness),
        "modulus": system.modulus,
        "subset": sorted(system.subset),
        "epsilon": frac_str(report.epsilon),
        "members": [list(n) for n in report.members],
        "empty": not report.members,
    })
    return results, {"mode": report.exactness}, EXIT_OK


def _build_system(p):
    if p["type"] == "cyclic":
        if p["modulus"] is None or p["subset"] is None:
            raise ParamError("cyclic system needs 'modulus' and 'subset'")
        return FiniteCyclicSystem(int(p["modulus"]), frozenset(parse_int_list(p["subset"])))
    if p["type"] == "skew":
        if p["base_set"] is None or p["exponents"] is None:
            raise ParamError("skew system needs 'base_set' and 'exponents'")
        base = p["base_set"]
        if isinstance(base, str):
            base = json.loads(base)
        return SkewSystem(IntervalSet.from_json_obj(base), tuple(parse_int_list(p["exponents"])))
    raise ParamError(f"unknown system type {p['type']!r}")


def run_return_set(p):
    system = _build_system(p)
    report = return_set_window(
        system, parse_polys(p["polys"]), parse_frac(str(p["epsilon"])),
        parse_window(p["window"]), int(p["grid"]),
        max_doublings=int(p["max_doublings"]),
    )
    gaps = syndeticity_report(report)
    results = report.to_json_obj()
    results["gap_statistics"] = {
        "per_axis_max_gap": list(gaps.per_axis_max_gap),
        "member_count": gaps.member_count,
        "heuristic": gaps.heuristic,
        "note": gaps.note,
    }
    code = EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK
    return results, {"mode": report.exactness}, code


def run_diophantine(p):
    polys = parse_polys(p["polys"])
    alphas = [parse_frac(str(a)) for a in
              (p["alphas"].split(";") if isinstance(p["alphas"], str) else p["alphas"])]
    epsilon = parse_frac(str(p["epsilon"]))
    members = diophantine_set(polys, alphas, epsilon, parse_window(p["window"]))
    results = {"members": [list(n) for n in members]}
    code = EXIT_OK
    if p.get("shift_box") is not None:
        shift = find_diophantine_shift(polys, alphas, epsilon, int(p["shift_box"]))
        results["shift"] = None if shift is None else list(shift)
        if shift is None:
            code = EXIT_INCONCLUSIVE
    return results, {"mode": "exact", "note": "bounded search"}, code


def run_vip_check(p):
    poly = IntPoly.parse(p["poly"]) if isinstance(p["poly"], str) else p["poly"]
    generators = parse_generators(p["generators"])
    phi = VipSample.from_polynomial(poly, generators)
    passes = vip_degree_check(phi, int(p["t"]))
    return ({"passes": passes, "t": int(p["t"]), "r": phi.r},
            {"mode": "exact"}, EXIT_OK)


def run_eta(p):
    poly = IntPoly.parse(p["poly"]) if isinstance(p["poly"], str) else p["poly"]
    generators = parse_generators(p["generators"])
    phi = VipSample.from_polynomial(poly, generators)
    decomp = eta_decompose(phi, int(p["D"]))
    levels = {
        str(t): [{"gamma": sorted(g), "value": list(v)} for g, v in items]
        for t, items in decomp.levels
    }
    return ({"D": decomp.D, "levels": levels, "reconstruction_ok": True},
            {"mode": "exact"}, EXIT_OK)


TARGETS = {
    "odds": lambda v: v[0] % 2 != 0,
    "evens": lambda v: v[0] % 2 == 0,
    "nonzero": lambda v: any(v),
}


def run_ipr_witness(p):
    name = p["target"]
    if isinstance(name, str) and name in TARGETS:
        target, target_id = TARGETS[name], name
    else:
        points = {(int(x),) for x in parse_int_list(name)}
        target, target_id = (lambda v: v in points), "explicit-list"
    witness = ip_r_star_witness_search(
        target, int(p["r"]), int(p["box"]), parse_window(p["window"]))
    if witness is None:
        return ({"witness": None, "avoided_set_id": target_id},
                {"mode": "bounded-search", "note": "no witness in box; inconclusive"},
                EXIT_INCONCLUSIVE)
    sums = sorted(ip_r_set(witness))
    results = {
        "witness": [list(g) for g in witness],
        "subset_sums": [list(s) for s in sums],
        "avoided_set_id": target_id,
    }
    return results, {"mode": "exact", "note": "certificate re-validated"}, EXIT_OK


def run_dphj(p):
    q, D, N = int(p["q"]), int(p["D"]), int(p["N"])
    if p["S"] == "full":
        inst = DphjInstance.full_space(q, D, N)
    else:
        inst = DphjInstance.from_lists(q, D, N, p["S"])
    found = dphj_search(inst)
    if found is None:
        return ({"found": None, "family_size": len(inst.S)}, {"mode": "exact"}, EXIT_OK)
    gamma, tup = found
    if not dphj_validate(inst, gamma, tup):
        raise RuntimeError("search result failed re-validation")
    results = {
        "found": {
            "gamma": sorted(gamma),
            "tuple": [sorted(list(pt) for pt in part) for part in tup],
        },
        "family_size": len(inst.S),
        "revalidated": True,
    }
    return results, {"mode": "exact"}, EXIT_OK


def run_constants(p):
    out = conditional_constants(int(p["ell"]), int(p["D"]),
                                parse_frac(str(p["delta"])), int(p["C"]))
    results = {"r": out.r, "c": frac_str(out.c), "degenerate": out.degenerate}
    return results, {"mode": "exact", "note": "C is an input, not computed"}, EXIT_OK


HANDLERS = {
    "behrend": run_behrend,
    "verify-free": run_verify_free,
    "family": run_family,
    "counterexample": run_counterexample,
    "modulus": run_modulus,
    "return-set": run_return_set,
    "diophantine": run_diophantine,
    "vip-check": run_vip_check,
    "eta": run_eta,
    "ipr-witness": run_ipr_witness,
    "dphj": run_dphj,
    "constants": run_constants,
}


def run(command: str, params: dict):
    """Dispatch a validated job; returns (RunReport, exit_code)."""
    params = validate_params(command, params)
    start = time.perf_counter()
    results, exactness, code = HANDLERS[command](params)
    elapsed = time.perf_counter() - start
    canon_params = jsonable(params)
    report = RunReport(command=command, params=canon_params,
                       results=jsonable(results), exactness=jsonable(exactness),
                       timing_seconds=elapsed)
    return report, code


# -- emission ---------------------------------------------------------------------


def emit(report: RunReport, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report.payload(), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        decisions = report.results.get("decisions") if isinstance(report.results, dict) else None
        if decisions is None:
            raise ParamError(f"unsupported format 'csv' for command {report.command!r}")
        lines = ["n,decision,lo,hi,grid"]
        for d in decisions:
            n = " ".join(str(x) for x in d["n"])
            lines.append(f"{n},{d['decision']},{d['lo']},{d['hi']},{d['grid']}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "text":
        return _text_summary(report).encode()
    raise ParamError(f"unknown format {fmt!r}")


def _text_summary(report: RunReport) -> str:
    lines = [f"command: {report.command}",
             f"tool-version: {__version__}",
             f"timing-seconds: {report.timing_seconds:.3f}",
             f"exactness: {json.dumps(report.exactness, sort_keys=True)}"]
    for key, value in sorted(report.results.items()):
        text = json.dumps(value, sort_keys=True)
        if len(text) > 100:
            text = text[:97] + "..."
        lines.append(f"{key}: {text}")
        if len(lines) >= 39:
            lines.append("... (truncated; use --format json for the full report)")
            break
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------


def load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib
        return tomllib.loads(raw.decode())
    return json.loads(raw.decode())


class _Parser(argparse.ArgumentParser):
    """Exit code 1 on usage errors (2 is reserved for inconclusive results)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="returnsets",
        description="Exact computations on return sets, solution-free sets, "
                    "and finite IP/VIP combinatorics.",
    )
    parser.add_argument("--config", help="JSON or TOML job config (overrides flags)")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", default="json", choices=["json", "csv", "text"])
    common = _Parser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--format", default=argparse.SUPPRESS,
                        choices=["json", "csv", "text"])
    sub = parser.add_subparsers(dest="command")

    def add(name, flags):
        sp = sub.add_parser(name, parents=[common])
        for flag, kwargs in flags.items():
            sp.add_argument(flag, **kwargs)
        return sp

    add("behrend", {"--b": {"type": int}, "--N": {"type": int}})
    add("verify-free", {"--elements": {}, "--b": {"type": int}})
    add("family", {"--m": {"type": int}, "--c": {"type": int}, "--b": {"type": int}})
    add("counterexample", {"--polys": {"nargs": "+"}, "--r": {"type": int},
                           "--window": {}, "--grid": {"type": int},
                           "--m-cap": {"type": int, "dest": "m_cap"}})
    add("modulus", {"--polys": {"nargs": "+"}, "--window": {},
                    "--bound": {"type": int}, "--witness-m": {"type": int, "dest": "witness_m"}})
    add("return-set", {"--type": {"choices": ["cyclic", "skew"]},
                       "--modulus": {"type": int}, "--subset": {},
                       "--base-set": {"dest": "base_set"}, "--exponents": {},
                       "--polys": {"nargs": "+"}, "--epsilon": {},
                       "--window": {}, "--grid": {"type": int},
                       "--max-doublings": {"type": int, "dest": "max_doublings"}})
    add("diophantine", {"--polys": {"nargs": "+"}, "--alphas": {},
                        "--epsilon": {}, "--window": {},
                        "--shift-box": {"type": int, "dest": "shift_box"}})
    add("vip-check", {"--poly": {}, "--generators": {}, "--t": {"type": int}})
    add("eta", {"--poly": {}, "--generators": {}, "--D": {"type": int}})
    add("ipr-witness", {"--target": {}, "--r": {"type": int},
                        "--box": {"type": int}, "--window": {}})
    add("dphj", {"--q": {"type": int}, "--D": {"type": int}, "--N": {"type": int},
                 "--S": {}})
    add("constants", {"--ell": {"type": int}, "--D": {"type": int},
                      "--delta": {}, "--C": {"type": int}})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            config = load_config(args.config)
            command = config.pop("command", None)
            if command not in HANDLERS:
                raise ParamError(f"config must name a command among {sorted(HANDLERS)}")
            params = config
        else:
            command = args.command
            if command is None:
                parser.print_usage(sys.stderr)
                return EXIT_ERROR
            skip = {"config", "out", "format", "command"}
            params = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
        if command == "dphj" and isinstance(params.get("S"), str) and params["S"] != "full":
            params["S"] = json.loads(params["S"])
        report, code = run(command, params)
        data = emit(report, args.format)
    except (ParamError, ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return code


if __name__ == "__main__":
    sys.exit(main())
