"""Command-line front end.

Commands: hat | plus | infinity | nontorsion | action | eg | beta | slice |
snf | verify, with shared flags --genus, --spinc, --ring, --degrees,
--out {table,json,tsv}, --extended, --jobs, and the HF_CACHE_DIR result
cache.  Exit codes: 0 success, 1 verification failure, 2 usage error.

Output is deterministic for a fixed configuration: JSON is emitted with
sorted keys, and the one timestamp field sits outside the hashed payload.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__, engine, verify as verify_mod
from .cfk import slice_map
from .errors import (BudgetExceeded, Deadline, DomainError,
                     ExtendedScaleRequired, GenusMismatch,
                     UnsupportedOperation)
from .linalg import SparseExactMatrix, cokernel, smith_normal_form
from .rings import ZZ, parse_ring

HARD_GENUS_CAP = 10
DESK_GENUS_CAP = 6  # beyond this the integer runs need --extended


def _parse_degree(text):
    return Fraction(text)


def _parse_window(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise DomainError(f"cannot parse degree window {text!r}; want MIN..MAX")
    return _parse_degree(lo), _parse_degree(hi)


def _window_to_d_range(window, g, default):
    if window is None:
        return default
    lo, hi = window
    d_lo = int(lo - Fraction(1, 2)) if (2 * lo) % 2 else int(lo)
    d_hi = int(hi - Fraction(1, 2)) if (2 * hi) % 2 else int(hi)
    if d_hi < d_lo:
        raise DomainError("empty degree window")
    return (d_lo, d_hi)


def _check_scale(args, heavy_integer_run):
    g = args.genus
    if g is None:
        raise DomainError("--genus is required")
    if g < 1 or g > HARD_GENUS_CAP:
        raise DomainError(f"genus must lie in 1..{HARD_GENUS_CAP}")
    if heavy_integer_run and g > DESK_GENUS_CAP and not args.extended:
        raise ExtendedScaleRequired(
            f"genus {g} over the integers is an extended-scale run; "
            f"pass --extended (and optionally --time-budget SECONDS)")


def _deadline(args):
    if args.extended:
        return Deadline(args.time_budget, f"(budget {args.time_budget}s)")
    return None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _group_str(grp):
    return str(grp)


def _render_table_entries(entries_json):
    from .linalg import GroupPresentation
    lines = []
    width = max((len(e["deg"]) for e in entries_json), default=3)
    for e in entries_json:
        grp = e["group"]
        desc = str(GroupPresentation(grp["free_rank"], grp["invariant_factors"]))
        lines.append(f"  {e['deg']:>{width}}  rank {grp['free_rank']:<6} {desc}")
    return lines


def _emit(args, payload, title):
    """Render the result payload per --out; returns the output text."""
    if isinstance(payload, dict) and "flavor" in payload:
        from .schemas import validate
        validate(payload, "table")
    out = args.out
    envelope = {
        "command": args.command,
        "version": __version__,
        "config": _config_dict(args),
        "result": payload,
    }
    canonical = json.dumps(envelope, sort_keys=True, indent=2)
    envelope_ts = dict(envelope)
    envelope_ts["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if out == "json":
        text = json.dumps(envelope_ts, sort_keys=True, indent=2)
    elif out == "tsv":
        text = _to_tsv(payload, title)
    elif out == "table" or out is None:
        text = _to_text(payload, title)
    else:
        # a path: write canonical JSON there, print a note
        with open(out, "w") as fh:
            fh.write(json.dumps(envelope_ts, sort_keys=True, indent=2))
        return f"wrote {out}", canonical
    return text, canonical


def _to_tsv(payload, title):
    rows = [f"# {title}"]
    if isinstance(payload, dict) and "entries" in payload:
        rows.append("degree\tfree_rank\tinvariant_factors")
        for e in payload["entries"]:
            grp = e["group"]
            facs = ",".join(str(d) for d in grp["invariant_factors"])
            rows.append(f"{e['deg']}\t{grp['free_rank']}\t{facs}")
    else:
        rows.append(json.dumps(payload, sort_keys=True))
    return "\n".join(rows)


def _to_text(payload, title):
    lines = [title]
    if isinstance(payload, dict) and "entries" in payload:
        lines.extend(_render_table_entries(payload["entries"]))
        if payload.get("towers"):
            lines.append("  towers:")
            for t in payload["towers"]:
                lines.append(f"    start {t['start_degree']:>5}  rank {t['rank']}"
                             f"  ({t.get('kind', '')} j={t.get('j', '')})")
    else:
        lines.append(json.dumps(payload, sort_keys=True, indent=2))
    return "\n".join(lines)


def _config_dict(args):
    keys = ("genus", "spinc", "ring", "degrees", "suite", "max_genus", "op",
            "degree", "input", "extended", "reduced")
    out = {}
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# result cache
# ---------------------------------------------------------------------------

def _cache_dir(args):
    return args.cache_dir or os.environ.get("HF_CACHE_DIR")


def _cache_key(args):
    blob = json.dumps({"command": args.command, "config": _config_dict(args),
                       "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_load(args):
    cdir = _cache_dir(args)
    if not cdir:
        return None
    path = os.path.join(cdir, _cache_key(args) + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _cache_store(args, payload):
    cdir = _cache_dir(args)
    if not cdir:
        return
    os.makedirs(cdir, exist_ok=True)
    path = os.path.join(cdir, _cache_key(args) + ".json")
    fd, tmp = tempfile.mkstemp(dir=cdir, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def _cached(args, compute):
    hit = _cache_load(args)
    if hit is not None:
        return hit
    payload = compute()
    _cache_store(args, payload)
    return payload


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_hat(args):
    _check_scale(args, heavy_integer_run=args.genus > DESK_GENUS_CAP)
    ring = parse_ring(args.ring)
    window = _window_to_d_range(args.degrees, args.genus, None)
    payload = _cached(args, lambda: engine.hf_hat(args.genus, ring, window).to_json())
    text, _ = _emit(args, payload, f"hat table, genus {args.genus}, ring {ring.tag}")
    print(text)
    return 0


def cmd_plus(args):
    ring = parse_ring(args.ring)
    _check_scale(args, heavy_integer_run=(ring == ZZ and args.genus > DESK_GENUS_CAP))
    window = _window_to_d_range(args.degrees, args.genus, None)

    def compute():
        full = engine.hf_plus_torsion(args.genus, ring, window).to_json()
        if args.reduced:
            full["reduced"] = engine.hf_plus_reduced(args.genus, ring, window).to_json()
        return full

    payload = _cached(args, compute)
    text, _ = _emit(args, payload,
                    f"plus table (torsion spin-c), genus {args.genus}, ring {ring.tag}")
    print(text)
    if args.reduced and args.out in (None, "table"):
        print(_to_text(payload["reduced"], "reduced part"))
    return 0


def cmd_infinity(args):
    ring = parse_ring(args.ring)
    _check_scale(args, heavy_integer_run=(ring == ZZ and args.genus > DESK_GENUS_CAP))
    dl = _deadline(args)
    payload = _cached(args, lambda: engine.hf_infinity(args.genus, ring, deadline=dl).to_json())
    text, _ = _emit(args, payload,
                    f"infinity table, genus {args.genus}, ring {ring.tag} "
                    f"(periodic: one entry per parity)")
    print(text)
    return 0


def cmd_nontorsion(args):
    _check_scale(args, heavy_integer_run=args.genus > DESK_GENUS_CAP)
    if args.spinc == 0:
        raise DomainError("nontorsion wants --spinc k with k != 0; "
                          "use `hf plus` for the torsion structure")

    def compute():
        table, model = engine.hf_plus_nontorsion(args.genus, args.spinc)
        data = table.to_json()
        data["model"] = model.to_json()
        return data

    payload = _cached(args, compute)
    text, _ = _emit(args, payload,
                    f"plus table, genus {args.genus}, spin-c {args.spinc}")
    print(text)
    return 0


def cmd_action(args):
    _check_scale(args, heavy_integer_run=False)
    if args.spinc == 0:
        raise DomainError("the action is provided for --spinc k != 0 only")
    g, k = args.genus, args.spinc
    table, model = engine.hf_plus_nontorsion(g, k, cross_check=False)
    found = []
    for key in model.basis():
        n = model.degree_of(key)
        for gi in range(1, 2 * g + 1):
            _, corrs = engine.h1_action(g, k, gi, key)
            for ct in corrs:
                found.append({
                    "gamma": gi, "xi_u_coord": key[0], "xi_blade_mask": key[1],
                    "xi_degree": n, "ell": ct.ell,
                    "exterior_power": ct.exterior_power,
                    "u_exponent": ct.u_exponent, "degree": ct.degree,
                })
    payload = {"genus": g, "spinc": k, "standard": not found,
               "corrections_found": len(found), "corrections": found}
    text, _ = _emit(args, payload,
                    f"homology action, genus {g}, spin-c {k}: "
                    f"{'standard' if not found else f'{len(found)} corrections'}")
    print(text)
    return 0


def cmd_eg(args):
    _check_scale(args, heavy_integer_run=args.genus > DESK_GENUS_CAP)
    ring = parse_ring(args.ring)

    def compute():
        eg = engine.eg_cohomology(args.genus, ring)
        entries = [{"deg": str(j), "group": grp.to_json()}
                   for j, grp in sorted(eg.items())]
        cmpres = engine.contraction_cokernel_comparison(args.genus)
        comparison = {str(par): {"one_minus_exp": lhs.to_json(),
                                 "wedge_sum": rhs.to_json(),
                                 "equal": lhs == rhs}
                      for par, (lhs, rhs) in cmpres.items()}
        return {"entries": entries, "contraction_comparison": comparison}

    payload = _cached(args, compute)
    text, _ = _emit(args, payload,
                    f"circle-bundle cohomology, genus {args.genus}, ring {ring.tag}")
    print(text)
    return 0


def cmd_beta(args):
    _check_scale(args, heavy_integer_run=False)
    g = args.genus
    dims = engine.beta_quotient_dims(g)
    payload = {"genus": g,
               "quotient_dims": {str(s): v for s, v in sorted(dims.items())},
               "total": sum(dims.values())}
    if args.spinc is not None and args.spinc >= 0:
        payload["matrix"] = engine.triple_cup_beta(g, args.spinc).to_json()
    text, _ = _emit(args, payload, f"triple-cup quotients, genus {g}")
    print(text)
    return 0


def cmd_slice(args):
    _check_scale(args, heavy_integer_run=False)
    ring = parse_ring(args.ring)
    s = args.spinc if args.spinc is not None else 0
    if s > 0:
        s = -s  # built for the negative side; conjugation-symmetric
    d = int(args.degree)
    sm = slice_map(args.genus, args.op, d, ring, s)
    payload = sm.matrix.to_json()
    payload["op"] = args.op
    payload["degree"] = d
    payload["s"] = s
    text, _ = _emit(args, payload,
                    f"slice map {args.op}, genus {args.genus}, degree {d}")
    print(text)
    return 0


def cmd_snf(args):
    with open(args.input) as fh:
        data = json.load(fh)
    m = SparseExactMatrix.from_json(data)
    if m.ring != ZZ:
        raise DomainError("snf wants an integer matrix")
    factors = smith_normal_form(m)
    payload = {"invariant_factors": factors,
               "cokernel": cokernel(m).to_json(),
               "rank": len(factors)}
    text, _ = _emit(args, payload, f"Smith normal form of {args.input}")
    print(text)
    return 0


def cmd_verify(args):
    max_genus = args.max_genus or 4
    if max_genus > 5 and not args.extended:
        raise ExtendedScaleRequired("verification beyond genus 5 needs --extended")
    suites = [args.suite] if args.suite != "all" else list(verify_mod._SUITE_FUNCS)
    reports = []
    if args.jobs and args.jobs > 1 and len(suites) > 1:
        import concurrent.futures as cf
        try:
            with cf.ProcessPoolExecutor(max_workers=args.jobs) as ex:
                reports = list(ex.map(_suite_worker,
                                      [(s, max_genus) for s in suites]))
        except (OSError, RuntimeError):
            reports = [verify_mod.run_suite(s, max_genus) for s in suites]
    else:
        reports = [verify_mod.run_suite(s, max_genus) for s in suites]
    ok = True
    payload = {"suites": []}
    for rep in reports:
        payload["suites"].append(rep.to_json())
        ok = ok and rep.ok
        if args.out in (None, "table"):
            for line in rep.lines():
                print(line)
    if args.out not in (None, "table"):
        text, _ = _emit(args, payload, "verification report")
        print(text)
    return 0 if ok else 1


def _suite_worker(pair):
    name, max_genus = pair
    return verify_mod.run_suite(name, max_genus)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="hf",
        description="Exact Floer homology tables for a surface times a circle.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, genus_required=True):
        sp.add_argument("--genus", "-g", type=int, required=genus_required)
        sp.add_argument("--spinc", type=int, default=None,
                        help="spin-c label k (first Chern class dual to 2k circles)")
        sp.add_argument("--ring", default="Z", help="Z, Q, F2 or Fp:<p>")
        sp.add_argument("--degrees", type=_parse_window, default=None,
                        metavar="MIN..MAX")
        sp.add_argument("--out", default=None,
                        help="table, json, tsv, or a path for JSON output")
        sp.add_argument("--extended", action="store_true",
                        help="allow extended-scale runs under a time budget")
        sp.add_argument("--time-budget", type=float, default=3600.0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--cache-dir", default=None,
                        help="result cache directory (default $HF_CACHE_DIR)")

    sp = sub.add_parser("hat", help="finitely generated flavor, torsion spin-c")
    common(sp)
    sp.set_defaults(func=cmd_hat)

    sp = sub.add_parser("plus", help="plus flavor, torsion spin-c")
    common(sp)
    sp.add_argument("--reduced", action="store_true",
                    help="also emit the reduced part")
    sp.set_defaults(func=cmd_plus)

    sp = sub.add_parser("infinity", help="fully U-inverted flavor")
    common(sp)
    sp.set_defaults(func=cmd_infinity)

    sp = sub.add_parser("nontorsion", help="plus flavor, nonzero spin-c")
    common(sp)
    sp.set_defaults(func=cmd_nontorsion)

    sp = sub.add_parser("action", help="homology action with corrections")
    common(sp)
    sp.set_defaults(func=cmd_action)

    sp = sub.add_parser("eg", help="circle-bundle cohomology cross-check")
    common(sp)
    sp.set_defaults(func=cmd_eg)

    sp = sub.add_parser("beta", help="triple-cup quotient dimensions")
    common(sp)
    sp.set_defaults(func=cmd_beta)

    sp = sub.add_parser("slice", help="export one slice matrix")
    common(sp)
    sp.add_argument("--op", required=True,
                    choices=["v", "h", "F", "F_hat", "one_plus_J"])
    sp.add_argument("--degree", required=True)
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("snf", help="Smith normal form of a matrix JSON file")
    common(sp, genus_required=False)
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_snf)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, genus_required=False)
    sp.add_argument("--suite", default="all", choices=list(verify_mod.SUITES))
    sp.add_argument("--max-genus", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, GenusMismatch, UnsupportedOperation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExtendedScaleRequired as exc:
        print(f"error: extended-scale required: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
