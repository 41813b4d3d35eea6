"""Experiment harness: generation, validation, searches, greedy runs, oracle
queries, and CSV/JSON emission.

Every command is reproducible from its flags: outputs carry no timestamps
unless --timing is passed, and all randomness derives from --seed.  Exit
status is 0 on success, 1 on domain or validation failures, 2 on usage,
parse, or I/O errors.  Reals are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from pathlib import Path

from .core import Box, LatinSquare, check_latin_grid, count_in_box, tensor_of, validate_tensor
from .formats import (
    FormatError,
    parse_latin_square,
    parse_tensor,
    parse_triple_system,
    read_latin_square,
    read_triple_system,
    sniff_kind,
    write_latin_square,
    write_triple_system,
)
from .generators import (
    CompletionBudgetError,
    GroupTable,
    TripleSystem,
    bose_sts,
    check_triple_system,
    complete_random_greedy,
    default_burn_in,
    group_table,
    jm_sample,
    skolem_sts,
)
from .greedy import DEFAULT_LAMBDA, BoxTracker, GreedyConfig, run_first_stage
from .oracle import EXACT_PROB_CAP, constrained_count, count_ls, empty_prob
from .search import (
    CUBE_EXACT_LIMIT,
    DISC_EXACT_LIMIT,
    EPS_EXACT_LIMIT,
    PHI_EXACT_LIMIT,
    PRODUCT_FREE_EXACT_LIMIT,
    SECTION_EXACT_LIMIT,
    disc_exact,
    disc_heuristic,
    eps_exact,
    eps_heuristic,
    greedy_empty_cube,
    guaranteed_empty_box,
    max_empty_cube,
    phi,
    product_free,
    section_discrepancy,
)

DEFAULT_BIG_M = 9000.0
CUBE_BOUND_CONSTANT = 100.0


# ---------------------------------------------------------------------------
# formatting and I/O helpers
# ---------------------------------------------------------------------------


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _jsonify(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _sig12(obj)
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    return obj


def _write_text(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    _write_text(args.out, json.dumps(_jsonify(payload), indent=2) + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _emit_csv(args, header: list[str], rows: list[dict]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(row[h]) for h in header) for row in rows)
    _write_text(args.out, "\n".join(lines) + "\n")


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise FormatError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_box_spec(text: str, parts: int = 3) -> list[list[int]]:
    pieces = text.split(";")
    if len(pieces) != parts:
        raise FormatError(f"expected {parts} ';'-separated parts, got {text!r}")
    return [_parse_ints(p) if p.strip() else [] for p in pieces]


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_square(args) -> LatinSquare:
    return read_latin_square(_read_input(args.infile))


def _load_sts(args) -> TripleSystem:
    return read_triple_system(_read_input(args.infile))


def _search_report(args, kind: str, n: int, exact: bool, value, witness: dict,
                   restarts_used: int, started: float, extra: dict | None = None) -> dict:
    payload = {
        "kind": kind,
        "n": n,
        "exact": exact,
        "volume_or_score": value,
        "witness": witness,
        "restarts_used": restarts_used,
    }
    if extra:
        payload.update(extra)
    if args.timing:
        payload["elapsed_ms"] = int(1000 * (time.monotonic() - started))
    return payload


def _emit_report(args, payload: dict) -> None:
    if args.fmt == "csv":
        header = list(payload.keys())
        row = {}
        for k, v in payload.items():
            if k == "witness":
                row[k] = "|".join(f"{name}=" + " ".join(map(str, sorted(part)))
                                  for name, part in v.items())
            else:
                row[k] = v if not isinstance(v, float) else _sig12(v)
        _emit_csv(args, header, [row])
    else:
        _emit_json(args, payload)


# ---------------------------------------------------------------------------
# gen / validate
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "jm":
        ls = jm_sample(args.n, args.burn_in, args.seed)
        _write_text(args.out, write_latin_square(ls))
        print(f"valid order-{ls.n} Latin square", file=sys.stderr)
    elif kind == "group":
        g = GroupTable.of(_parse_ints(args.moduli))
        ls = group_table(g)
        _write_text(args.out, write_latin_square(ls))
        print(f"valid order-{ls.n} Latin square (group table)", file=sys.stderr)
    elif kind in ("bose", "skolem"):
        ts = bose_sts(args.n) if kind == "bose" else skolem_sts(args.n)
        _write_text(args.out, write_triple_system(ts))
        print(f"valid complete triple system, {len(ts.triples)} triples",
              file=sys.stderr)
    elif kind == "greedy-sts":
        ts = complete_random_greedy(args.n, args.max_restarts, args.seed)
        _write_text(args.out, write_triple_system(ts))
        print(f"valid complete triple system, {len(ts.triples)} triples",
              file=sys.stderr)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown generator {kind!r}")
    return 0


def _validate_one(path: str, kind: str) -> tuple[bool, bool, str]:
    """Returns (parse_ok, valid, message)."""
    try:
        text = _read_input(path)
    except OSError as exc:
        return False, False, f"cannot read: {exc}"
    try:
        actual = sniff_kind(text) if kind == "auto" else kind
        if actual == "square":
            n, rows = parse_latin_square(text)
            verdict = check_latin_grid(n, rows)
            return True, verdict.ok, verdict.reason or f"valid order-{n} Latin square"
        if actual == "tensor":
            d, n, pts = parse_tensor(text)
            from .core import PermTensor

            t = PermTensor.from_points(d, n, pts)
            verdict = validate_tensor(t)
            return True, verdict.ok, (verdict.reason
                                      or f"valid {d}-dimensional permutation of order {n}")
        n, triples = parse_triple_system(text)
        ok, msg, _pair = check_triple_system(n, triples)
        if not ok:
            return True, False, msg
        ts = TripleSystem.from_triples(n, triples)
        state = "complete" if ts.is_complete else "partial"
        return True, True, f"valid {state} triple system, {len(ts.triples)} triples"
    except FormatError as exc:
        return False, False, f"parse error: {exc}"
    except ValueError as exc:
        return True, False, str(exc)


def cmd_validate(args) -> int:
    worst = 0
    for path in args.paths:
        parse_ok, valid, message = _validate_one(path, args.kind)
        status = "ok" if valid else "INVALID"
        print(f"{path}: {status}: {message}")
        if not parse_ok:
            worst = max(worst, 2)
        elif not valid:
            worst = max(worst, 1)
    return worst


# ---------------------------------------------------------------------------
# searches
# ---------------------------------------------------------------------------


def cmd_eps(args) -> int:
    started = time.monotonic()
    ls = _load_square(args)
    limit = args.limit_exact if args.limit_exact is not None else EPS_EXACT_LIMIT
    if ls.n <= limit:
        rep = eps_exact(ls, limit)
    else:
        rep = eps_heuristic(ls, args.restarts, args.seed)
    x, y, z = rep.box.sorted_parts()
    _emit_report(args, _search_report(
        args, "eps", ls.n, rep.exact, rep.volume,
        {"X": x, "Y": y, "Z": z}, rep.restarts_used, started))
    return 0


def cmd_disc(args) -> int:
    started = time.monotonic()
    ls = _load_square(args)
    limit = args.limit_exact if args.limit_exact is not None else DISC_EXACT_LIMIT
    if ls.n <= limit:
        rep = disc_exact(ls, limit)
        exact, restarts_used = True, 0
    else:
        rep = disc_heuristic(ls, args.restarts, args.seed)
        exact, restarts_used = False, args.restarts
    x, y, z = rep.box.sorted_parts()
    _emit_report(args, _search_report(
        args, "disc", ls.n, exact, rep.score,
        {"X": x, "Y": y, "Z": z}, restarts_used, started,
        extra={"count": rep.count, "volume": rep.box.volume}))
    return 0


def cmd_cube(args) -> int:
    started = time.monotonic()
    ls = _load_square(args)
    limit = args.limit_exact if args.limit_exact is not None else CUBE_EXACT_LIMIT
    rep = max_empty_cube(ls, args.restarts, args.seed, limit)
    a, b, c = rep.box.sorted_parts()
    _emit_report(args, _search_report(
        args, "cube", ls.n, rep.exact, rep.side,
        {"A": a, "B": b, "C": c}, rep.restarts_used, started,
        extra={"side_bound": _sig12(CUBE_BOUND_CONSTANT * math.sqrt(ls.n * math.log(ls.n)))
               if ls.n > 1 else None}))
    return 0


def cmd_phi(args) -> int:
    started = time.monotonic()
    ts = _load_sts(args)
    limit = args.limit_exact if args.limit_exact is not None else PHI_EXACT_LIMIT
    rep = phi(ts, args.restarts, args.seed, limit)
    a, b, c = rep.box.sorted_parts()
    budget = args.big_m * ts.n * ts.n
    _emit_report(args, _search_report(
        args, "phi", ts.n, rep.exact, rep.volume,
        {"A": a, "B": b, "C": c}, rep.restarts_used, started,
        extra={"budget_volume": _sig12(budget),
               "within_budget": rep.volume <= budget}))
    return 0


def cmd_product_free(args) -> int:
    started = time.monotonic()
    if args.moduli:
        table = group_table(GroupTable.of(_parse_ints(args.moduli)))
    elif args.infile:
        table = _load_square(args)
    else:
        raise FormatError("product-free needs --moduli or --in")
    limit = args.limit_exact if args.limit_exact is not None else PRODUCT_FREE_EXACT_LIMIT
    rep = product_free(table, args.restarts, args.seed, limit)
    _emit_report(args, _search_report(
        args, "product-free", table.n, rep.exact, rep.size,
        {"S": sorted(rep.elements)}, rep.restarts_used, started))
    return 0


def cmd_section(args) -> int:
    started = time.monotonic()
    ls = _load_square(args)
    symbols = _parse_ints(args.symbols)
    limit = args.limit_exact if args.limit_exact is not None else SECTION_EXACT_LIMIT
    rep = section_discrepancy(ls, symbols, args.axis, args.restarts, args.seed, limit)
    _emit_report(args, _search_report(
        args, "section", ls.n, rep.exact, rep.value,
        {"A": sorted(rep.left), "B": sorted(rep.right)}, rep.restarts_used, started,
        extra={"k": len(set(symbols)), "axis": args.axis}))
    return 0


# ---------------------------------------------------------------------------
# greedy
# ---------------------------------------------------------------------------


def _parse_tracker(spec: str, n: int, rng: random.Random) -> BoxTracker:
    if spec == "full":
        full = range(1, n + 1)
        return BoxTracker(n, full, full, full)
    if spec.startswith("random:"):
        sizes = _parse_ints(spec[len("random:"):])
        if len(sizes) != 3:
            raise FormatError(f"random tracker needs 3 sizes, got {spec!r}")
        parts = [rng.sample(range(1, n + 1), s) for s in sizes]
        return BoxTracker(n, *parts)
    parts = _parse_box_spec(spec)
    return BoxTracker(n, *parts)


def cmd_greedy(args) -> int:
    cfg = GreedyConfig(args.n, args.lam, args.seed, args.steps)
    if cfg.steps == 0:
        print(f"warning: floor(lambda * n^2) = 0 at n={args.n}; no steps will run",
              file=sys.stderr)
    rng = random.Random(f"trackers:{args.seed}")
    trackers = [_parse_tracker(spec, args.n, rng) for spec in (args.tracker or [])]
    trace_rows: list[dict] = []
    trace_tracker = None
    if args.trace:
        full = range(1, args.n + 1)
        trace_tracker = BoxTracker(args.n, full, full, full)
        trackers.append(trace_tracker)

        def on_step(state, triple):
            trace_rows.append({
                "step": state.step,
                "triple": " ".join(map(str, triple)),
                "legal_estimate": trace_tracker.f_legal,
            })
    else:
        on_step = None
    state, trackers = run_first_stage(cfg, trackers, on_step=on_step)
    if trace_tracker is not None:
        trackers = trackers[:-1]
        Path(args.trace).write_text(
            "\n".join(["step,triple,legal_estimate"]
                      + [f"{r['step']},{r['triple']},{r['legal_estimate']}"
                         for r in trace_rows]) + "\n",
            encoding="utf-8")
    payload = {
        "n": args.n,
        "lambda": args.lam,
        "seed": args.seed,
        "steps": state.step,
        "stuck": state.stuck,
        "trackers": [{
            "sizes": list(t.sizes()),
            "f_initial": t.f_initial,
            "f_legal": t.f_legal,
            "type_counts": t.type_counts,
        } for t in trackers],
    }
    _emit_json(args, payload)
    return 0


# ---------------------------------------------------------------------------
# oracle commands
# ---------------------------------------------------------------------------


def cmd_oracle_count(args) -> int:
    if args.forbidden:
        x, y, z = _parse_box_spec(args.forbidden)
        count = constrained_count(args.n, Box.of(x, y, z))
        payload = {"n": args.n,
                   "forbidden": {"X": sorted(set(x)), "Y": sorted(set(y)),
                                 "Z": sorted(set(z))},
                   "count": count}
    else:
        payload = {"n": args.n, "count": count_ls(args.n)}
    _emit_json(args, payload)
    return 0


def _prob_scan_rows(args) -> list[dict]:
    n = args.n
    rng = random.Random(f"prob-scan:{args.seed}")
    rows = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for c in range(1, n + 1):
                x = list(range(1, a + 1))
                y = list(range(1, b + 1))
                z = list(range(1, c + 1))
                vol = a * b * c
                exact_p = None
                if n <= EXACT_PROB_CAP:
                    exact_p = empty_prob(n, x, y, z, "exact").value
                mc_p = mc_err = None
                if args.samples > 0:
                    res = empty_prob(n, x, y, z, "monte_carlo", args.samples,
                                     seed=rng.getrandbits(32),
                                     burn_in=args.burn_in)
                    mc_p, mc_err = res.value, res.stderr
                rows.append({
                    "n": n, "x_size": a, "y_size": b, "z_size": c,
                    "exact_prob": exact_p, "mc_prob": mc_p, "mc_stderr": mc_err,
                    "volume": vol,
                    "exp_neg_vol_over_n": math.exp(-vol / n),
                })
    return rows


def cmd_oracle_prob(args) -> int:
    if args.scan:
        rows = _prob_scan_rows(args)
        header = ["n", "x_size", "y_size", "z_size", "exact_prob", "mc_prob",
                  "mc_stderr", "volume", "exp_neg_vol_over_n"]
        _emit_csv(args, header, rows)
        if args.plot:
            from .plots import plot_prob_scan

            plot_prob_scan(rows, args.plot)
            print(f"figure written to {args.plot}", file=sys.stderr)
        return 0
    if not (args.x and args.y and args.z):
        raise FormatError("oracle-prob needs --x, --y and --z (or --scan)")
    res = empty_prob(args.n, _parse_ints(args.x), _parse_ints(args.y),
                     _parse_ints(args.z), args.mode, args.samples, args.seed,
                     args.burn_in)
    payload = {
        "n": args.n,
        "x": sorted(set(_parse_ints(args.x))),
        "y": sorted(set(_parse_ints(args.y))),
        "z": sorted(set(_parse_ints(args.z))),
        "mode": res.mode,
        "value": res.value,
        "stderr": res.stderr,
        "samples": res.samples,
    }
    _emit_json(args, payload)
    return 0


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


def cmd_scan_eps(args) -> int:
    ns = _parse_ints(args.n_list)
    rng = random.Random(f"scan-eps:{args.seed}")
    rows = []
    for n in ns:
        for sample_id in range(args.samples):
            ls = jm_sample(n, args.burn_in, rng.getrandbits(32))
            rep = eps_heuristic(ls, args.restarts, rng.getrandbits(32))
            ln2 = math.log(n) ** 2 if n > 1 else float("nan")
            rows.append({
                "n": n,
                "sample_id": sample_id,
                "eps_heuristic": rep.volume,
                "eps_over_n2": rep.volume / (n * n),
                "eps_over_n2_ln2n": rep.volume / (n * n * ln2) if n > 1 else None,
                "guaranteed_volume": (n // 2) ** 2,
            })
    header = ["n", "sample_id", "eps_heuristic", "eps_over_n2",
              "eps_over_n2_ln2n", "guaranteed_volume"]
    _emit_csv(args, header, rows)
    if args.plot:
        from .plots import plot_eps_scan

        plot_eps_scan(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def cmd_scan_cube(args) -> int:
    ns = _parse_ints(args.n_list)
    limit = args.limit_exact if args.limit_exact is not None else CUBE_EXACT_LIMIT
    rng = random.Random(f"scan-cube:{args.seed}")
    rows = []
    for n in ns:
        for sample_id in range(args.samples):
            ls = jm_sample(n, args.burn_in, rng.getrandbits(32))
            greedy_side = len(greedy_empty_cube(ls).parts[0])
            rep = max_empty_cube(ls, args.restarts, rng.getrandbits(32), limit)
            rows.append({
                "n": n,
                "sample_id": sample_id,
                "greedy_side": greedy_side,
                "max_side": rep.side,
                "exact": rep.exact,
                "side_bound": CUBE_BOUND_CONSTANT * math.sqrt(n * math.log(n))
                if n > 1 else None,
            })
    header = ["n", "sample_id", "greedy_side", "max_side", "exact", "side_bound"]
    _emit_csv(args, header, rows)
    if args.plot:
        from .plots import plot_cube_scan

        plot_cube_scan(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master random seed")
    common.add_argument("--restarts", type=int, default=100,
                        help="restarts for heuristic searches")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json", help="report format for search commands")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--limit-exact", type=int, default=None,
                        help="largest order solved exactly (per-command default)")
    common.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA,
                        help="first-stage fraction of n^2 greedy steps")
    common.add_argument("--big-m", dest="big_m", type=float, default=DEFAULT_BIG_M,
                        help="volume-budget constant M (budget M*n^2)")
    common.add_argument("--timing", action="store_true",
                        help="include elapsed_ms in JSON reports")
    common.add_argument("--burn-in", type=int, default=None,
                        help="walk sampler burn-in moves (default 2n^3)")

    parser = argparse.ArgumentParser(
        prog="latbox",
        description="Latin squares: generation, empty-box/discrepancy search, "
                    "greedy triple process, and brute-force oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an object file")
    p.add_argument("kind", choices=("jm", "group", "bose", "skolem", "greedy-sts"))
    p.add_argument("--n", type=int, help="order")
    p.add_argument("--moduli", help="comma-separated abelian group moduli")
    p.add_argument("--max-restarts", type=int, default=10000)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", parents=[common], help="check object files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--kind", choices=("auto", "square", "tensor", "sts"),
                   default="auto")
    p.set_defaults(func=cmd_validate)

    for name, fn, help_text in (
            ("eps", cmd_eps, "maximum empty-box volume"),
            ("disc", cmd_disc, "maximum discrepancy score"),
            ("cube", cmd_cube, "maximum empty-cube side")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--in", dest="infile", required=True,
                       help="Latin square file, or - for stdin")
        p.set_defaults(func=fn)

    p = sub.add_parser("phi", parents=[common],
                       help="maximum empty box of a triple system")
    p.add_argument("--in", dest="infile", required=True,
                   help="triple system file, or - for stdin")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("product-free", parents=[common],
                       help="largest product-free subset of a group table")
    p.add_argument("--moduli", help="comma-separated abelian group moduli")
    p.add_argument("--in", dest="infile", default=None,
                   help="multiplication table as a Latin square file")
    p.set_defaults(func=cmd_product_free)

    p = sub.add_parser("section", parents=[common],
                       help="section discrepancy of a square")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--symbols", required=True, help="inducing index set, e.g. 1,2")
    p.add_argument("--axis", type=int, default=2, choices=(1, 2, 3))
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("greedy", parents=[common],
                       help="first stage of the random greedy triple process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, default=None,
                   help="override the floor(lambda n^2) step count")
    p.add_argument("--tracker", action="append",
                   help="'full', 'random:a,b,c', or explicit 'A;B;C' parts")
    p.add_argument("--trace", help="write a per-step CSV trace to this path")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("oracle-count", parents=[common],
                       help="exact (constrained) Latin square counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbidden", help="forbidden box 'X;Y;Z', e.g. '1;1;1,2'")
    p.set_defaults(func=cmd_oracle_count)

    p = sub.add_parser("oracle-prob", parents=[common],
                       help="empty-box probabilities, exact or sampled")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--mode", choices=("exact", "monte_carlo"), default="exact")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--scan", action="store_true",
                   help="emit the bound-shape CSV over all box shapes")
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(func=cmd_oracle_prob)

    p = sub.add_parser("scan-eps", parents=[common],
                       help="empty-box volume scan over sampled squares")
    p.add_argument("--n-list", required=True, help="orders, e.g. 8,16,32,64")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(func=cmd_scan_eps)

    p = sub.add_parser("scan-cube", parents=[common],
                       help="empty-cube side scan over sampled squares")
    p.add_argument("--n-list", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(func=cmd_scan_cube)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CompletionBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
