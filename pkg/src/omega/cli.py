"""Command-line front end: ``omega <command> [flags]``.

Every command maps onto one library call and produces a JSON-native result.
Results go through the content-addressed cache, and the fresh path is
normalized through the same JSON round trip so warm and cold runs print the
same bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable, Optional, Sequence

from . import __version__
from .cache import ResultCache, make_key
from .characteristic import VassilievElement, arnold_crosscheck, theta_chain, theta_dual_class
from .complexes import (
    build_full_complex,
    build_quotient_complex,
    build_sub_complex,
    dualize_complex,
    verify_complex,
)
from .homology import DEFAULT_MAX_BITS, EntryGrowthError, HomologyTable, complex_homology
from .invariants import (
    CLAIMED_BOUQUET_RANKS,
    bouquet_check,
    codimension_report,
    complement_cohomology,
    complement_homology,
    euler_discrepancy,
    euler_number,
    stability_quantities,
    stabilization_report,
)
from .patterns import Pattern, PatternParseError
from .posets import (
    PARITY_POLICIES,
    PosetError,
    PosetSpec,
    build_poset,
    check_lambda,
    enumerate_patterns,
    is_closed,
    is_profinite,
    maximal_elements,
)

SCHEMA = "omega/1"

COMMANDS = (
    "enumerate",
    "poset",
    "complex",
    "homology",
    "complement",
    "euler",
    "stab",
    "bouquet",
    "theta",
    "vassiliev",
    "verify",
    "report",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; validation errors are 1 here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------- arguments


def parse_family(text: str, k: Optional[int] = None, q: Optional[int] = None) -> PosetSpec:
    """Parse ``name[:args]`` family descriptors such as ``reduced-norm-ge:3,0``."""
    name, _, arg = text.partition(":")
    name = name.strip()
    arg = arg.strip()
    if name == "reduced-norm-ge":
        parts = [p for p in arg.split(",") if p.strip()] if arg else []
        if len(parts) > 2:
            raise PosetError(f"reduced-norm-ge takes k[,q], got {arg!r}")
        kk = int(parts[0]) if parts else k
        qq = int(parts[1]) if len(parts) > 1 else (q if q is not None else 0)
        if kk is None:
            raise PosetError("reduced-norm-ge needs k (reduced-norm-ge:k[,q] or --k)")
        return PosetSpec.reduced_norm_at_least(kk, qq)
    if name == "max-entry-ge":
        kk = int(arg) if arg else k
        if kk is None:
            raise PosetError("max-entry-ge needs k (max-entry-ge:k or --k)")
        return PosetSpec.max_entry_at_least(kk)
    if name == "free-group-complement":
        _no_arg(name, arg)
        return PosetSpec.free_group_complement()
    if name == "below":
        return PosetSpec.strictly_below(Pattern.parse(arg))
    if name == "at-or-below":
        return PosetSpec.at_or_below(Pattern.parse(arg))
    if name == "full":
        _no_arg(name, arg)
        return PosetSpec.full()
    raise PosetError(
        f"unknown family {name!r}; expected one of reduced-norm-ge:k[,q], max-entry-ge:k, "
        "free-group-complement, below:w, at-or-below:w, full"
    )


def _no_arg(name: str, arg: str) -> None:
    if arg:
        raise PosetError(f"family {name} takes no arguments, got {arg!r}")


def parse_generators(text: str) -> PosetSpec:
    items = [t.strip() for t in text.split(";") if t.strip()]
    return PosetSpec.from_generators([Pattern.parse(t) for t in items])


def _spec(args, required: bool = True) -> Optional[PosetSpec]:
    if args.family and args.generators is not None:
        raise PosetError("give either --family or --generators, not both")
    if args.family:
        try:
            return parse_family(args.family, args.k, args.q)
        except ValueError as exc:
            if isinstance(exc, (PosetError, PatternParseError)):
                raise
            raise PosetError(f"bad family arguments in {args.family!r}: {exc}") from None
    if args.generators is not None:
        return parse_generators(args.generators)
    if required:
        raise PosetError("this command needs --family or --generators")
    return None


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise PosetError(f"missing required flag(s): {', '.join(missing)}")


# ---------------------------------------------------------------- commands


def _complex(args):
    spec = _spec(args, required=args.kind != "full")
    if args.kind == "full":
        c = build_full_complex(args.d, args.parity_policy)
    else:
        theta = build_poset(spec, args.d, args.parity_policy)
        c = build_sub_complex(theta) if args.kind == "sub" else build_quotient_complex(theta)
    return dualize_complex(c) if args.dual else c


def cmd_enumerate(args) -> dict:
    pool = enumerate_patterns(args.d, args.parity_policy)
    return {
        "d": args.d,
        "parity_policy": args.parity_policy,
        "count": len(pool),
        "patterns": [
            {"pattern": str(w), "norm": w.norm, "reduced_norm": w.reduced_norm, "degree": args.d - w.reduced_norm}
            for w in pool
        ],
    }


def cmd_poset(args) -> dict:
    theta = build_poset(_spec(args), args.d, args.parity_policy)
    closed, _ = is_closed(theta.members, theta.d)
    out = theta.to_json()
    out.update(
        {
            "size": len(theta),
            "maximal_elements": [str(w) for w in maximal_elements(theta)],
            "closed": closed,
            "lambda_condition": check_lambda(theta),
            "profinite": is_profinite(theta.spec),
        }
    )
    return out


def cmd_complex(args) -> dict:
    c = _complex(args)
    out = c.to_json()
    out["fingerprint"] = c.fingerprint()
    return out


def cmd_homology(args) -> dict:
    c = _complex(args)
    table = complex_homology(c, args.max_bits)
    return {"d": args.d, "kind": c.kind, "step": c.step, **table.to_json()}


def _table(table: HomologyTable) -> list:
    return [{"j": j, "group": str(g), "rank": g.rank, "torsion": list(g.torsion)} for j, g in sorted(table.groups.items())]


def cmd_complement(args) -> dict:
    theta = build_poset(_spec(args), args.d, args.parity_policy)
    return {
        "d": args.d,
        "parity_policy": args.parity_policy,
        "spec": theta.spec.to_json(),
        "lambda_condition": check_lambda(theta),
        "reduced_cohomology": _table(complement_cohomology(theta, args.max_bits)),
        "reduced_homology": _table(complement_homology(theta, args.max_bits)),
    }


def cmd_euler(args) -> dict:
    spec = _spec(args)
    theta = build_poset(spec, args.d, args.parity_policy)
    out = {"d": args.d, "spec": spec.to_json(), **euler_number(theta).to_json()}
    if spec.family == "reduced_norm_at_least":
        k, q = spec.param("k"), spec.param("q")
        report = euler_discrepancy(args.d, k, q)
        out["discrepancy"] = report
        out["flag"] = (
            f"census A={report['details']['census_A_matched']} differs from the claimed value "
            f"{report['details']['claimed']}"
            if report["details"]["mismatch_with_claimed"]
            else None
        )
    return out


def cmd_stab(args) -> dict:
    _need(args, "dprime")
    return stabilization_report(_spec(args), args.d, args.dprime, args.parity_policy, args.max_bits)


def cmd_bouquet(args) -> dict:
    _need(args, "k")
    q = args.q if args.q is not None else 0
    if not 1 <= args.k < args.d:
        raise PosetError(f"need 1 <= k < d, got k={args.k}, d={args.d}")
    if (q - args.d) % 2:
        raise PosetError(f"need q = d (mod 2), got q={q}, d={args.d}")
    out = bouquet_check(args.d, args.k, q, args.parity_policy, args.max_bits)
    claimed = CLAIMED_BOUQUET_RANKS.get((args.d, args.k, q))
    out["details"]["claimed"] = claimed
    out["details"]["mismatch_with_claimed"] = claimed is not None and claimed != out["details"]["A"]
    return out


def cmd_theta(args) -> dict:
    _need(args, "omega")
    w = Pattern.parse(args.omega)
    datum = theta_chain(w, args.d)
    return {"theta_chain": datum.to_json(), "dual_class": theta_dual_class(w, args.d)}


def cmd_vassiliev(args) -> dict:
    _need(args, "k")
    top = args.d // args.k
    table = []
    for l in range(top + 1):
        for m in range(l, top + 1):
            p = VassilievElement.basis(args.d, args.k, l) * VassilievElement.basis(args.d, args.k, m)
            table.append({"l": l, "m": m, "product": p.to_json()["coeffs"]})
    out = {
        "d": args.d,
        "k": args.k,
        "top_index": top,
        "degrees": {str(m): m * (args.k - 2) for m in range(top + 1)},
        "products": table,
    }
    if args.k <= args.d:
        out["arnold_crosscheck"] = arnold_crosscheck(args.d, args.k)
    return out


def cmd_verify(args) -> dict:
    out = verify_complex(args.d, args.parity_policy)
    c = build_full_complex(args.d, args.parity_policy)
    base = complex_homology(c, args.max_bits)
    permuted = complex_homology(_shuffled(c, random.Random(args.seed)), args.max_bits)
    same = base.groups == permuted.groups
    out["permutation_invariance"] = {"seed": args.seed, "pass": same}
    out["homology"] = _table(base)
    out["pass"] = out["pass"] and same
    return out


def _shuffled(c, rng: random.Random):
    from .complexes import GradedComplex
    from .sparse import SparseMatrix

    perm = {n: rng.sample(range(len(ws)), len(ws)) for n, ws in c.basis.items()}
    basis = {n: tuple(ws[i] for i in perm[n]) for n, ws in c.basis.items()}
    inv = {n: {old: new for new, old in enumerate(p)} for n, p in perm.items()}
    differential = {}
    for n, m in c.differential.items():
        tgt = inv[n + c.step]
        differential[n] = SparseMatrix.from_triplets(
            m.nrows, m.ncols, [(tgt[r], inv[n][col], v) for r, col, v in m.triplets()]
        )
    return GradedComplex(c.d, basis, differential, c.kind, c.step, c.parity_policy)


def cmd_report(args) -> dict:
    spec = _spec(args)
    theta = build_poset(spec, args.d, args.parity_policy)
    out = {
        "d": args.d,
        "parity_policy": args.parity_policy,
        "spec": spec.to_json(),
        "size": len(theta),
        "maximal_elements": [str(w) for w in maximal_elements(theta)],
        "lambda_condition": check_lambda(theta),
        "profinite": is_profinite(spec),
        "euler": euler_number(theta).to_json(),
    }
    if theta.members:
        out["stability"] = stability_quantities(theta).to_json()
        out["codimension"] = codimension_report(theta)
    return out


HANDLERS: dict[str, Callable] = {name: globals()[f"cmd_{name}"] for name in COMMANDS}

HELP = {
    "enumerate": "list the parity-matched patterns of norm <= d",
    "poset": "build a closed poset and report its members",
    "complex": "dump a sub, quotient or full complex (optionally dualized)",
    "homology": "integer homology of a complex",
    "complement": "reduced cohomology and homology of the complement",
    "euler": "Euler number of a poset, with the census/SNF comparison for reduced-norm families",
    "stab": "check short stabilization from --d to --dprime",
    "bouquet": "check the sphere-bouquet shape of the reduced-norm family",
    "theta": "characteristic chain of --omega",
    "vassiliev": "multiplication table of the truncated Vassiliev ring",
    "verify": "check the differential identities on the full complex",
    "report": "stability quantities, codimension and Euler data of a poset",
}


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--d", type=int, required=True, help="even truncation degree")
    common.add_argument("--dprime", type=int, help="upper degree for stab")
    common.add_argument("--family", help="reduced-norm-ge:k[,q] | max-entry-ge:k | free-group-complement | below:w | at-or-below:w | full")
    common.add_argument("--generators", help='generator patterns separated by ";", e.g. "(3,3);(1,2,1)"')
    common.add_argument("--q", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--omega", help='pattern such as "(1,2,2,1)"')
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache-dir", help="result cache directory (else $OMEGA_CACHE_DIR, else the user cache dir)")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    common.add_argument("--parity-policy", choices=PARITY_POLICIES, default="matched")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS, help="SNF entry-growth bound")

    parser = _Parser(prog="omega", description="Pattern posets, merge/insert complexes and their integer homology.")
    parser.add_argument("--version", action="version", version=f"omega {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=HELP[name])
        if name in ("complex", "homology"):
            p.add_argument("--kind", choices=("sub", "quotient", "full"), default="sub")
            p.add_argument("--dual", action="store_true")
    return parser


def _cache_payload(args) -> dict:
    skip = {"json", "cache_dir", "no_cache", "command"}
    return {
        "version": __version__,
        "schema": SCHEMA,
        "command": args.command,
        "args": {k: v for k, v in sorted(vars(args).items()) if k not in skip},
    }


# ---------------------------------------------------------------- rendering


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        if not value:
            rows.append((prefix, "{}"))
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and all(isinstance(x, dict) for x in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(value, list):
        rows.append((prefix, ", ".join(json.dumps(x) if isinstance(x, (list, dict)) else str(x) for x in value) or "-"))
    else:
        rows.append((prefix, "-" if value is None else json.dumps(value) if isinstance(value, bool) else str(value)))


def _records_table(records: list) -> list[str]:
    cols = list(records[0])
    cells = [[_cell(r.get(c)) for c in cols] for r in records]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "-" if v is None else str(v)


def render_text(command: str, result: dict) -> str:
    """Aligned key/value table; flat record lists become their own column tables."""
    lines = [f"omega {command}"]
    scalars = {}
    tables = {}
    for k, v in result.items():
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v) and all(
            not any(isinstance(y, dict) for y in x.values()) for x in v
        ):
            tables[k] = v
        else:
            scalars[k] = v
    rows: list = []
    _flatten("", scalars, rows)
    if rows:
        width = max(len(k) for k, _ in rows)
        lines += [f"  {k.ljust(width)}  {v}" for k, v in rows]
    for k, v in tables.items():
        lines.append(f"{k}:")
        lines += ["  " + line for line in _records_table(v)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- entry point


def run(args) -> dict:
    handler = HANDLERS[args.command]
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    key = make_key(_cache_payload(args))
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = json.loads(json.dumps(handler(args)))
    if cache is not None:
        try:
            cache.put(key, result)
        except OSError as exc:
            print(f"omega: warning: cache write failed: {exc}", file=sys.stderr)
    return result


def dispatch(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Run one command; returns 0 on success, 1 on validation errors, 2 on internal failure."""
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        result = run(args)
    except EntryGrowthError as exc:
        print(f"omega: internal failure: {exc}", file=sys.stderr)
        return 2
    except (PosetError, PatternParseError, ValueError) as exc:
        print(f"omega: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"omega: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, "result": result}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(render_text(args.command, result))
    return 0


def main() -> None:
    sys.exit(dispatch())
