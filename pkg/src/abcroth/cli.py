"""Command-line interface: ``abcroth <subcommand> ...``.

Exit codes: 0 ok, 2 usage / invalid root, 3 precision exhausted,
4 output not writable, 5 verification violations.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import DEFAULT_RHO_BUDGET, is_perfect_power
from .bounds import (
    RidoutQuery,
    eps_abc_from_roth,
    ridout_cbrt_bound,
    ridout_sqrt_bound,
    ridout_sqrt_solutions,
    roth_table,
)
from .cf import InvalidRoot, PrecisionExhausted, RootSpec, expand_convergents
from .equations import AbcTriple, normalize_to_abc, resulting_equation
from .metrics import equation_metrics, triple_metrics
from .records import append_jsonl, read_jsonl, records_for_root, write_csv
from .verify import (
    bvdp_suite,
    check_roth_form,
    gain_quality_suite,
    liouville_suite,
    scan_gains,
)

log = logging.getLogger("abcroth")

EXIT_USAGE, EXIT_PRECISION, EXIT_IO, EXIT_VIOLATIONS = 2, 3, 4, 5


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.replace(",", ".") if text.count(",") == 1 and "/" not in text else text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_expand(args) -> int:
    root = RootSpec(args.k, args.s)
    cf, convs = expand_convergents(root, args.terms)
    payload = {
        "k": root.k,
        "s": root.s,
        "coefficients": list(cf.coefficients),
        "precision_bits": cf.precision_bits,
        "convergents": [{"n": c.n, "p": str(c.p), "q": str(c.q)} for c in convs],
    }
    _emit(args, payload, f"{cf}\n" + "\n".join(f"{c.n:4d}  {c}" for c in convs))
    return 0


def cmd_equations(args) -> int:
    root = RootSpec(args.k, args.s)
    _, convs = expand_convergents(root, args.terms)
    rows, lines = [], []
    for c in convs:
        eq = resulting_equation(root, c)
        t = normalize_to_abc(eq)
        rows.append({"n": c.n, "p": str(c.p), "q": str(c.q), "d": str(eq.d), "g": eq.g,
                     "a": str(t.a), "b": str(t.b), "c": str(t.c)})
        lines.append(f"{c.n:4d}  {c}  {eq}  d={eq.d}  g={eq.g}  ->  {t}")
    _emit(args, rows, "\n".join(lines))
    return 0


def cmd_metrics(args) -> int:
    eps = args.eps or []
    if args.triple:
        a, b, c = args.triple
        if a + b != c:
            raise InvalidRoot(f"{a} + {b} != {c}")
        m = triple_metrics(AbcTriple.from_pair(a, b), eps, args.budget)
        label = str(m.triple)
    else:
        if args.k is None or args.n is None:
            raise InvalidRoot("metrics needs --triple A B C or --k/--s/--n")
        root = RootSpec(args.k, args.s)
        _, convs = expand_convergents(root, args.n + 1)
        eq = resulting_equation(root, convs[args.n])
        m = equation_metrics(eq, eps, args.budget)
        label = f"{eq} (n={args.n}, d={eq.d}, g={eq.g})"
    payload = {
        "triple": [str(x) for x in m.triple],
        "rad_abc": str(m.rad_abc),
        "quality": m.quality,
        "is_hit": m.is_hit,
        "k_epsilon": {str(e): v for e, v in m.k_epsilon.items()},
        "approximation_gain": m.approximation_gain,
        "power_gain": m.power_gain,
        "flags": m.flags,
    }
    lines = [label, f"rad(abc) = {m.rad_abc}", f"quality = {m.quality:.4f}", f"hit = {m.is_hit}"]
    lines += [f"K_{e} = {v:.4f}" for e, v in m.k_epsilon.items()]
    if m.approximation_gain is not None:
        lines.append(f"approximation gain = {m.approximation_gain:.4f}")
        lines.append(f"power gain = {m.power_gain:.4f}")
    if m.flags:
        lines.append("flags: " + ", ".join(m.flags))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_roth_table(args) -> int:
    root = RootSpec(args.k, 3)
    for e in args.eps_roth:
        ea = eps_abc_from_roth(e)
        if ea > Fraction(1, 2):
            raise InvalidRoot(f"eps_roth {e} maps to eps_abc {ea} > 1/2")
    source = "max" if args.source == "max" else int(args.source)
    rows = roth_table(root, args.eps_roth, source, args.terms, args.include_seed, args.p1_over_q1)
    payload = [
        {"eps_roth": str(r.eps_roth), "eps_abc": str(r.eps_abc), "K_eps": r.K_eps,
         "source_n": r.source_n, "source_equation": r.source_equation, "bound": r.bound,
         "known_bound": r.known_bound, "flags": r.flags}
        for r in rows
    ]
    lines = [f"{'eps_roth':>8} {'eps_abc':>8} {'K_eps':>10} {'bound 1/C':>10}  source"]
    for r in rows:
        line = (f"{str(r.eps_roth):>8} {str(r.eps_abc):>8} {r.K_eps:10.4f} {r.bound:10.4f}"
                f"  n={r.source_n}: {r.source_equation}")
        if r.known_bound:
            line += f"  [known: {r.known_bound}]"
        if r.flags:
            line += "  " + " ".join(r.flags)
        lines.append(line)
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_ridout(args) -> int:
    root = RootSpec(args.k, args.s)
    query = RidoutQuery(root, tuple(args.primes), args.eps, args.K, args.depth)
    if args.s == 2:
        bound = ridout_sqrt_bound(query)
        sols = ridout_sqrt_solutions(query)
        payload = {"bound": str(bound), "approximants": [str(c) for c in sols]}
        text = f"bound for p_n: {bound}\napproximants: " + (", ".join(map(str, sols)) or "none")
    elif args.s == 3:
        bound = ridout_cbrt_bound(query, args.p1_over_q1)
        payload = {"bound": bound}
        text = f"bound for p_n: {bound:.4f}"
    else:
        raise InvalidRoot("ridout supports s = 2 or s = 3")
    _emit(args, payload, text)
    return 0


def _scan_one(k, s, depth, skip, budget):
    return records_for_root(k, s, depth, skip, budget)


def cmd_scan(args) -> int:
    out = Path(args.out)
    try:
        existing = read_jsonl(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.touch()
    except OSError as exc:
        log.error("cannot use %s: %s", out, exc)
        return EXIT_IO
    done = {r.key for r in existing}
    ks = [k for k in range(args.k_min, args.k_max + 1) if not is_perfect_power(k, args.s)]
    todo = [k for k in ks if any((k, args.s, n) not in done for n in range(args.depth))]
    skip = frozenset(done)
    tasks = [(k, args.s, args.depth, skip, args.budget) for k in todo]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            batches = list(pool.map(_scan_one, *zip(*tasks)))
    else:
        batches = [_scan_one(*t) for t in tasks]
    new = sorted((r for batch in batches for r in batch), key=lambda r: r.key)
    try:
        added = append_jsonl(out, new)
        if args.csv:
            write_csv(args.csv, sorted(existing + new, key=lambda r: r.key))
    except OSError as exc:
        log.error("write failed: %s", exc)
        return EXIT_IO
    _emit(args, {"added": added, "total": len(existing) + added},
          f"added {added} records ({len(existing) + added} total) to {out}")
    return 0


def cmd_verify(args) -> int:
    k_range = (args.k_min, args.k_max)
    suites = ["bvdp", "liouville", "gains", "gain-quality"] if args.suite == "all" else [args.suite]
    reports = []
    for name in suites:
        if name == "bvdp":
            rep = bvdp_suite(k_range, args.depth, args.s, args.jobs)
        elif name == "liouville":
            rep = liouville_suite(k_range, args.depth, args.s, args.jobs)
        elif name == "gains":
            rep = scan_gains(args.s, k_range, args.depth, args.jobs)
        elif name == "gain-quality":
            rep = gain_quality_suite(args.s, k_range, args.depth, args.jobs, args.budget)
        else:
            if args.eps_roth is None or args.c_inverse is None:
                raise InvalidRoot("roth-form needs --eps-roth and --c-inverse")
            reps = [check_roth_form(RootSpec(k, args.s), args.eps_roth, args.c_inverse, args.depth)
                    for k in range(args.k_min, args.k_max + 1) if not is_perfect_power(k, args.s)]
            rep = reps[0]
            for extra in reps[1:]:
                rep.merge(extra)
        reports.append(rep)
    failed = any(not r.ok for r in reports)
    lines = []
    for r in reports:
        mode = " (observational)" if r.observational else ""
        status = "PASS" if not r.violations else ("FAIL" if not r.observational else "NOTED")
        lines.append(f"{r.suite}{mode}: {status}  checked={r.checked} skipped={r.skipped} "
                     f"violations={len(r.violations)} max={r.max_observed} at {r.max_at}")
        lines += [f"  k={v.k} s={v.s} n={v.n}: {v.lhs} vs {v.rhs} (slack {v.slack:.4g})"
                  for v in r.violations[: args.show]]
    _emit(args, [r.to_dict() for r in reports], "\n".join(lines))
    return EXIT_VIOLATIONS if failed else 0


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for scans")
    parser.add_argument("--config", default=d(None), help="key=value file of default flags")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="abcroth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        subs[name] = p
        return p

    p = add("expand", cmd_expand, "continued fraction and convergents of k^(1/s)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--terms", type=int, default=10)

    p = add("equations", cmd_equations, "resulting equations and their ABC triples")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--terms", type=int, default=10)

    p = add("metrics", cmd_metrics, "quality, K_eps and gains")
    p.add_argument("--triple", type=int, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--n", type=int, help="convergent index")
    p.add_argument("--eps", type=_fraction_list, help="comma-separated eps values for K_eps")
    p.add_argument("--budget", type=int, default=DEFAULT_RHO_BUDGET)

    p = add("roth-table", cmd_roth_table, "bounds on the inverse Roth constant (cube roots)")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--eps-roth", type=_fraction_list, default=_fraction_list("0,0.4,0.5,1"))
    p.add_argument("--source", default="max",
                   help="'max' over the corpus, or a convergent index supplying K_eps")
    p.add_argument("--terms", type=int, default=10, help="corpus size for --source max")
    p.add_argument("--include-seed", action="store_true", help="keep the n=0 equation in the corpus")
    p.add_argument("--p1-over-q1", type=_fraction, default=None)

    p = add("ridout", cmd_ridout, "Ridout-type bounds for S-integer denominators")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--primes", type=_int_list, required=True)
    p.add_argument("--eps", type=_fraction, default=Fraction(1))
    p.add_argument("--K", type=float, default=1.0)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--p1-over-q1", type=_fraction, default=None)

    p = add("scan", cmd_scan, "resumable metrics scan written as JSONL")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=50)
    p.add_argument("--depth", type=int, default=30)
    p.add_argument("--out", required=True)
    p.add_argument("--csv", default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_RHO_BUDGET)

    p = add("verify", cmd_verify, "check inequalities over a range of roots")
    p.add_argument("--suite", default="all",
                   choices=["all", "bvdp", "liouville", "gains", "gain-quality", "roth-form"])
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=50)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--eps-roth", type=_fraction)
    p.add_argument("--c-inverse", type=float)
    p.add_argument("--budget", type=int, default=DEFAULT_RHO_BUDGET)
    p.add_argument("--show", type=int, default=20, help="violations listed per suite")
    return parser, subs


def load_config(path: str) -> dict[str, str]:
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def _apply_config(parser, subs, cfg: dict[str, str]) -> None:
    for p in [parser, *subs.values()]:
        actions = {a.dest: a for a in p._actions}
        defaults = {}
        for key, value in cfg.items():
            action = actions.get(key)
            if action is None:
                continue
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                # string defaults go through the action's type converter
                defaults[key] = value
        p.set_defaults(**defaults)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser, subs = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            _apply_config(parser, subs, load_config(known.config))
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidRoot, ValueError) as exc:
        print(f"abcroth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"abcroth: error: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
