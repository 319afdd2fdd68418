"""Command line entry point ``h1jump``.

Exit codes: 0 pass, 1 a mathematical check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bundle import BundleError, make_transition_bundle, specialize_parameter, splitting_type
from .cohomology import LineBundleOnPE, cohomology_PE
from .cox import cox_cohomology, cox_witnesses, format_monomial
from .pipeline import (
    ConfigError,
    FamilyConfig,
    SearchExhausted,
    TauSpec,
    build_family,
    find_tau,
    verify,
)
from .poly import ParseError, parse_laurent, parse_poly, rat
from .smooth import Bidegree14Form, certify_smoothness

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# options whose values may legitimately start with '-'
_VALUE_OPTS = ("--e", "--param", "--g0", "--g1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _glue(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _config(args) -> FamilyConfig:
    cfg = FamilyConfig.load(args.config)
    if getattr(args, "seed", None) is not None:
        if cfg.tau.mode != "search":
            raise ConfigError("--seed only applies to tau.mode = 'search'")
        t = cfg.tau
        cfg = cfg.replace(tau=TauSpec("search", args.seed, t.max_attempts, t.coeff_range))
    if getattr(args, "jobs", None) is not None:
        cfg = cfg.replace(jobs=max(1, args.jobs))
    return cfg


def cmd_verify(args) -> int:
    cfg = _config(args)
    lock = None
    if args.lock:
        try:
            with open(args.lock) as fh:
                lock = json.load(fh)
        except FileNotFoundError:
            lock = None
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.lock}: {exc}") from None
    report, new_lock = verify(cfg, lock)
    if args.lock and lock is None and new_lock is not None:
        _write_json(args.lock, new_lock)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    else:
        sys.stdout.write(report.to_json())
    d = report.data
    if "error" in d:
        print(f"error in stage {d['error']['stage']}: {d['error']['message']}", file=sys.stderr)
        if d["error"]["type"] == "ConfigError":
            return EXIT_USAGE
    failed = [c["name"] for c in d["checks"] if c["mandatory"] and not c["pass"]]
    summary = "PASS" if report.passed else "FAIL: " + ", ".join(failed)
    print(summary, file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_splitting_type(args) -> int:
    data = _load_json(args.matrix)
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError("matrix file must hold a list of rows of Laurent polynomial strings")
    bundle = make_transition_bundle([[parse_laurent(str(x)) for x in row] for row in data])
    if args.param is not None:
        bundle = specialize_parameter(bundle, rat(args.param))
    st = splitting_type(bundle)
    print(json.dumps({"splitting_type": list(st), "det_degree": bundle.det_degree}))
    return EXIT_PASS


def _parse_e(text):
    try:
        e = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--e must be three comma-separated integers, got {text!r}") from None
    if len(e) != 3:
        raise UsageError("--e must have exactly three entries")
    return e


def cmd_cohomology(args) -> int:
    e = _parse_e(args.e)
    out = {"e": list(e), "a": args.a, "b": args.b}
    if args.oracle in ("pushforward", "both"):
        out["pushforward"] = list(cohomology_PE(LineBundleOnPE(e, args.a, args.b)))
    if args.oracle in ("cox", "both"):
        out["cox"] = list(cox_cohomology(e, args.a, args.b))
    if args.witness:
        out["witnesses"] = {str(i): [format_monomial(m) for m in ms]
                            for i, ms in cox_witnesses(e, args.a, args.b).items()}
    print(json.dumps(out, sort_keys=True))
    if args.oracle == "both" and out["pushforward"] != out["cox"]:
        print("oracles disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_smooth(args) -> int:
    form = Bidegree14Form(parse_poly(args.g0), parse_poly(args.g1))
    res = certify_smoothness(form, seed=args.seed)
    if res.smooth:
        print("smooth")
        return EXIT_PASS
    line = "singular"
    if res.witness is not None:
        z, x = res.witness[:2], res.witness[2:]
        line += f" at [{':'.join(map(str, z))}] x [{':'.join(map(str, x))}]"
    print(line)
    return EXIT_FAIL


def cmd_find_tau(args) -> int:
    cfg = _config(args)
    fam = build_family(cfg)
    _, lock = find_tau(cfg, fam)
    _write_json(args.lock, lock)
    print(json.dumps(lock, sort_keys=True))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="h1jump", description="Exact verification of a family whose h^1(O) jumps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run every check and emit the JSON report")
    v.add_argument("--config", required=True)
    v.add_argument("--out")
    v.add_argument("--lock", help="tau lockfile: used if present, written after a search otherwise")
    v.add_argument("--seed", type=int)
    v.add_argument("--jobs", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("splitting-type", help="splitting type of a transition matrix")
    s.add_argument("--matrix", required=True, help="JSON list of rows of Laurent polynomials in z, t")
    s.add_argument("--param", help="value substituted for t")
    s.set_defaults(func=cmd_splitting_type)

    c = sub.add_parser("cohomology", help="cohomology of O_P(a) (x) p^*O(b) on P(O(e1)+O(e2)+O(e3))")
    c.add_argument("--e", required=True, help="comma-separated, e.g. -1,0,1")
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--oracle", choices=("pushforward", "cox", "both"), default="both")
    c.add_argument("--witness", action="store_true", help="list contributing Cox monomials")
    c.set_defaults(func=cmd_cohomology)

    m = sub.add_parser("smooth", help="smoothness of z0*g0 + z1*g1 in P^1 x P^2")
    m.add_argument("--g0", required=True)
    m.add_argument("--g1", required=True)
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_smooth)

    f = sub.add_parser("find-tau", help="search for tau and write a lockfile")
    f.add_argument("--config", required=True)
    f.add_argument("--lock", required=True)
    f.add_argument("--seed", type=int)
    f.set_defaults(func=cmd_find_tau)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(_glue(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except (UsageError, ConfigError, ParseError) as exc:
        print(f"h1jump: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BundleError, SearchExhausted) as exc:
        print(f"h1jump: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"h1jump: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
