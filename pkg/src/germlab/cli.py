"""Command line front end: ``germlab analyze|wh|family|zariski <problem.json>``.

Problem and report files are JSON.  Every integer in a report is written as
a decimal string so that no reader truncates it.  Exit codes: 0 success,
1 malformed input, 2 degenerate or non-finite germ (or an identity that
failed), 3 random choices that never agreed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources
from typing import Any

import jsonschema

from . import __version__
from .errors import GermlabError, InputError
from .family import GENERIC, FamilyProblem, family_profile, generic_projection, sampling_adequacy
from .invariants import GermProblem, analyze
from .polyring import ParseError, PolyRing, RingMismatchError, degrevlex, parse_poly
from .weighted import WHInvariants, wh_cross_validate, wh_invariants, wh_signature

DEFAULT_SEED = 20240101
DEFAULT_TRIALS = 3
DEFAULT_T = ("0", "1", "2", "-1")
REPORT_VERSION = "germlab-report/1"


def load_schema(name: str) -> dict:
    """The published JSON schema ``problem`` or ``report`` (version 1)."""
    text = resources.files("germlab").joinpath("schemas", f"{name}-v1.json").read_text()
    return json.loads(text)


# ---------------------------------------------------------------------------
# reading problems


def read_problem(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None
    try:
        jsonschema.validate(data, load_schema("problem"))
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "top level"
        raise InputError(f"{path}: {where}: {e.message}") from None
    return data


def _ints(xs) -> tuple[int, ...] | None:
    return None if xs is None else tuple(int(x) for x in xs)


def _polys(texts, ring: PolyRing, what: str):
    out = []
    for i, s in enumerate(texts):
        try:
            out.append(parse_poly(s, ring))
        except (ParseError, RingMismatchError) as e:
            raise InputError(f"{what}[{i}]: {e}") from None
    return out


def _space_variables(data: dict) -> list[str]:
    if "variables" not in data:
        raise InputError("missing 'variables'")
    par = data.get("parameter")
    return [v for v in data["variables"] if v != par]


def germ_problem(data: dict, seed: int, *, with_weights: bool = True) -> tuple[GermProblem, tuple | None]:
    """The germ described by ``data``; a generic f is drawn from ``seed``."""
    if "parameter" in data:
        raise InputError("file declares a parameter; use the family or zariski command")
    for key in ("variables", "phi", "f"):
        if key not in data:
            raise InputError(f"missing {key!r}")
    ring = PolyRing(_space_variables(data), degrevlex())
    phi = _polys(data["phi"], ring, "phi")
    projection = None
    if data["f"] == "generic":
        projection = generic_projection(ring, seed)
        f = list(projection)
    else:
        f = _polys(data["f"], ring, "f")
    kw = {}
    if with_weights:
        kw = dict(weights=_ints(data.get("weights")), phi_degrees=_ints(data.get("phi_degrees")), f_degrees=_ints(data.get("f_degrees")))
    return GermProblem(ring, phi, f, **kw), projection


def family_problem(data: dict, t_override: list[str] | None) -> FamilyProblem:
    par = data.get("parameter")
    if not par:
        raise InputError("family files must declare a 'parameter'")
    for key in ("variables", "phi", "f"):
        if key not in data:
            raise InputError(f"missing {key!r}")
    ring = PolyRing(_space_variables(data) + [par], degrevlex())
    phi = _polys(data["phi"], ring, "phi")
    f = GENERIC if data["f"] == "generic" else _polys(data["f"], ring, "f")
    samples = t_override if t_override is not None else data.get("t_samples", list(DEFAULT_T))
    try:
        ts = [Fraction(s.strip()) for s in samples]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad t sample in {samples}") from None
    return FamilyProblem(ring, par, phi, f, ts)


# ---------------------------------------------------------------------------
# rendering


def _strs(obj: Any) -> Any:
    """Integers and fractions become decimal strings, recursively."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _strs(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_strs(v) for v in obj]
    return obj


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, obj)]


def _text_value(v: Any) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "; ".join(_text_value(x) for x in v) if v else "(none)"
    return str(v)


def render_text(report: dict) -> str:
    """Human-readable form of a report: the same content, one value per line."""
    lines = []
    res = report["result"]
    if report["command"] == "zariski":
        lines.append(f"Zariski equisingular: {_text_value(res['zariski'])}")
    for key in ("command", "germlab_version", "seed", "trials"):
        lines.append(f"{key}: {report[key]}")
    for k, v in _flatten(res, "result"):
        lines.append(f"{k}: {_text_value(v)}")
    for k, v in _flatten(report["identity_checks"], "identity_checks"):
        lines.append(f"{k}: {_text_value(v)}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    lines.append(f"wall_time: {report['wall_time']}")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def _analysis_result(P: GermProblem, seed: int, trials: int, projection) -> tuple[dict, dict]:
    rep = analyze(P, seed, trials)
    result = {
        "invariants": rep.values(),
        "discriminant": str(rep.discriminant_gen),
        "submersion": rep.submersion,
        "notes": list(rep.notes),
    }
    if projection is not None:
        result["projection"] = [str(p) for p in projection]
    return result, dict(rep.identity_checks)


def cmd_analyze(data: dict, seed: int, trials: int, args) -> tuple[dict, dict, list, int]:
    P, projection = germ_problem(data, seed)
    result, checks = _analysis_result(P, seed, trials, projection)
    warnings = []
    if any(v is False for v in checks.values()):
        warnings.append("an identity check failed")
        return result, checks, warnings, 2
    return result, checks, warnings, 0


def _signature(data: dict):
    missing = [k for k in ("weights", "f_degrees") if k not in data]
    if missing:
        raise InputError(f"missing weight data: {', '.join(missing)}")
    w = _ints(data["weights"])
    return wh_signature(w, _ints(data["f_degrees"]), _ints(data.get("phi_degrees", [])))


def cmd_wh(data: dict, seed: int, trials: int, args) -> tuple[dict, dict, list, int]:
    sig = _signature(data)
    inv = wh_invariants(sig)
    result = {
        "signature": {
            "weights": list(sig.weights), "f_degrees": list(sig.f_degrees), "phi_degrees": list(sig.phi_degrees),
            "A": sig.A, "A2": sig.A2, "B": sig.B, "C": sig.C, "C2": sig.C2, "D": sig.D,
        },
        "closed_form": inv.as_dict(),
    }
    checks = {
        "thm2": inv.c + inv.mu_X == inv.mu_S + inv.m - 2,
        "cor_mu_disc": inv.mu_disc == inv.mu_Delta - 2 * inv.c - inv.d,
    }
    warnings = []
    code = 0
    if all(k in data for k in ("variables", "phi", "f")):
        P, _ = germ_problem(data, seed)  # rejects polynomials that do not fit the weights
        cv = wh_cross_validate(P, seed, trials, strict=False)
        result["cross_validation"] = {
            "all_equal": cv.all_equal,
            "fields": {
                k: {"closed_form": cv.closed_form[k], "engine": cv.engine[k], "equal": cv.closed_form[k] == cv.engine[k]}
                for k in WHInvariants.FIELDS
            },
        }
        if not cv.all_equal:
            warnings.append(f"closed forms and engine disagree (closed, engine): {cv.mismatches}")
            code = 2
    else:
        warnings.append("no cross-validation: the file gives no polynomials")
    if not all(checks.values()):
        code = 2
    return result, checks, warnings, code


def cmd_family(data: dict, seed: int, trials: int, args) -> tuple[dict, dict, list, int]:
    F = family_problem(data, args.t)
    if args.command == "zariski" and not F.generic:
        raise InputError('the zariski command needs f = "generic"')
    prof = family_profile(F, seed, trials)
    samples = []
    for r in prof.records:
        row = {"t": str(r.t)}
        row.update({k: getattr(r, k) for k in ("mu_X", "m0_X", "m1_X", "m2_X", "mu_S", "mu_Delta", "c", "d", "m", "m0_preimage", "mu_disc", "mu_preimage")})
        row["identity_checks"] = dict(r.identity_checks)
        samples.append(row)
    result = {
        "samples": samples,
        "verdicts": dict(prof.verdicts),
        "notes": list(prof.notes),
        "failures": dict(prof.failures),
    }
    if args.command == "zariski":
        result["zariski"] = prof.verdicts["zariski"]
    if prof.projection is not None:
        result["projection"] = [str(p) for p in prof.projection]
    checks = {}
    for r in prof.records:
        for k, v in r.identity_checks.items():
            checks[f"t={r.t}/{k}"] = v
    warnings = sampling_adequacy(F, prof)
    code = max(prof.failure_codes.values(), default=0)
    if any(v is False for v in checks.values()):
        code = max(code, 2)
    return result, checks, warnings, code


COMMANDS = {"analyze": cmd_analyze, "wh": cmd_wh, "family": cmd_family, "zariski": cmd_family}


def _parse_t(text: str) -> list[str]:
    return [s for s in (p.strip() for p in text.split(",")) if s]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="germlab", description="Invariants of map germs from surface ICIS to the plane.")
    parser.add_argument("--version", action="version", version=f"germlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "all invariants of one germ and the identities between them",
        "wh": "closed-form invariants of a weighted-homogeneous signature",
        "family": "invariant profile and equisingularity verdicts of a one-parameter family",
        "zariski": "Zariski equisingularity of a family under a generic projection",
    }
    for name, h in helps.items():
        p = sub.add_parser(name, help=h)
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--output", "-o", help="write the report here instead of standard output")
        p.add_argument("--seed", type=int, help=f"random seed (default: file, then $GERMLAB_SEED, then {DEFAULT_SEED})")
        p.add_argument("--trials", type=int, help=f"independent random trials (default {DEFAULT_TRIALS})")
        if name in ("family", "zariski"):
            p.add_argument("--t", type=_parse_t, help="comma-separated parameter samples, e.g. 0,1,2,-1")
    return parser


def resolve_seed(flag: int | None, data: dict) -> int:
    if flag is not None:
        return flag
    if "seed" in data:
        return int(data["seed"])
    env = os.environ.get("GERMLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"GERMLAB_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def run(argv: list[str] | None = None) -> tuple[int, dict | None]:
    """Run one command; returns the exit code and the report (None on error)."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        data = read_problem(args.file)
        seed = resolve_seed(args.seed, data)
        trials = args.trials if args.trials is not None else int(data.get("trials", DEFAULT_TRIALS))
        if trials < 1:
            raise InputError("trials must be at least 1")
        result, checks, warnings, code = COMMANDS[args.command](data, seed, trials, args)
    except GermlabError as e:
        print(f"germlab: error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code, None
    report = {
        "version": REPORT_VERSION,
        "germlab_version": __version__,
        "command": args.command,
        "input": _strs(data),
        "seed": str(seed),
        "trials": str(trials),
        "result": _strs(result),
        "identity_checks": checks,
        "warnings": warnings,
        "wall_time": f"{time.perf_counter() - start:.3f}",
    }
    text = render_json(report) if args.format == "json" else render_text(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
