"""
Braid-equivalent unimodal orbits and their Henon isotracal paths.

    henonbraids chain      --head 1001C --depth 3 --out runs/
    henonbraids verify     runs/chain_1001C.json
    henonbraids params     --head 1001C --depth 3 --out runs/
    henonbraids isotracal  --head 1001C --depth 3 --out runs/
    henonbraids scatter    --period 8 --a-range 1.75,2.0 --b-range 0,0.25 --res 400x200 --out runs/

Exit codes: 0 success, 2 verification failure, 3 numeric failure, 4 bad input.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import henon, quad, svg
from .braid import VerificationError, verify_pair
from .cabling import Chain, ConstructionError, dump_chain, format_table, generate_chain, load_chain
from .perm import PermutationError, to_itinerary

log = logging.getLogger("henonbraids")

EXIT_OK, EXIT_VERIFY, EXIT_NUMERIC, EXIT_INPUT = 0, 2, 3, 4
DEFAULT_HEADS = ("1001C", "10011C", "100111C", "1001111C", "10011001C")


class InputError(ValueError):
    """Malformed flags or files."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    subcommand: str
    heads: tuple[str, ...] = DEFAULT_HEADS
    depth: int = 3
    periods: tuple[int, ...] = ()
    a_range: tuple[float, float] = (1.75, 2.0)
    b_range: tuple[float, float] = (0.0, 0.25)
    resolution: tuple[int, int] = (400, 200)
    tol_newton: float = henon.NEWTON_TOL
    tol_meet: float = henon.MEET_TOL
    tol_period: float = henon.PERIOD_TOL
    out: Path = Path(".")
    jobs: int = 1
    inputs: tuple[Path, ...] = ()

    def __post_init__(self):
        if self.depth < 0:
            raise InputError("depth must be non-negative")
        if min(self.tol_newton, self.tol_meet, self.tol_period) <= 0:
            raise InputError("tolerances must be positive")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")


# ---------------------------------------------------------------------------
# Flag parsing


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _resolution(text: str) -> tuple[int, int]:
    try:
        na, nb = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAxNB, got {text!r}") from None
    if na < 2 or nb < 2:
        raise argparse.ArgumentTypeError("resolution must be at least 2x2")
    return na, nb


def _periods(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(t) for t in text.split("-"))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad period list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="henonbraids", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, heads: bool = True) -> None:
        p.add_argument("--config", type=Path, help="JSON file of flag defaults")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        if heads:
            p.add_argument("--head", action="append", dest="heads", metavar="ITINERARY",
                           help="head itinerary (repeatable); default the five standard heads")
            p.add_argument("--depth", type=int, default=3, help="second-return levels after level 0")

    p = sub.add_parser("chain", help="generate braid-equivalent pairs")
    common(p)

    p = sub.add_parser("verify", help="check the braid relation of every pair in chain files")
    common(p, heads=False)
    p.add_argument("inputs", nargs="*", type=Path, help="chain JSON files or directories")

    p = sub.add_parser("params", help="superattracting parameters of chain members")
    common(p)
    p.add_argument("--chain", action="append", dest="inputs", type=Path, default=[],
                   help="read pairs from chain JSON instead of generating them")

    p = sub.add_parser("isotracal", help="continue zero-trace paths between pair members")
    common(p)
    p.add_argument("--chain", action="append", dest="inputs", type=Path, default=[],
                   help="read pairs from chain JSON instead of generating them")
    p.add_argument("--period", type=_periods, dest="periods", default=[],
                   help="only these periods, e.g. 8,11 or 8-17")
    p.add_argument("--tol-newton", type=float, default=henon.NEWTON_TOL, help="Newton residual bound")
    p.add_argument("--tol-meet", type=float, default=henon.MEET_TOL, help="|a- - a+| counted as met")

    p = sub.add_parser("scatter", help="attracting-period scan of the (a, b) plane")
    common(p, heads=False)
    p.add_argument("--period", type=_periods, dest="periods", default=[8],
                   help="periods to scan, one output pair per period")
    p.add_argument("--a-range", type=_range, default=(1.75, 2.0), help="LO,HI")
    p.add_argument("--b-range", type=_range, default=(0.0, 0.25), help="LO,HI")
    p.add_argument("--res", type=_resolution, dest="resolution", default=(400, 200),
                   help="grid points NAxNB")
    p.add_argument("--tol-period", type=float, default=henon.PERIOD_TOL,
                   help="return distance counted as periodic")
    p.add_argument("--paths", type=Path, help="isotracal CSV to draw over the scatter")
    return parser


def _explicit_keys(argv: Sequence[str] | None) -> set[str]:
    """Destinations the command line sets explicitly; these win over a config file."""
    parser = build_parser()
    subparsers = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    for p in [parser, *(c for a in subparsers for c in a.choices.values())]:
        for action in p._actions:
            if action.dest != "subcommand":
                action.default = argparse.SUPPRESS
    return set(vars(parser.parse_args(argv)))


def _config(args: argparse.Namespace, explicit: frozenset[str] = frozenset()) -> RunConfig:
    values = vars(args).copy()
    cfg_file = values.pop("config", None)
    if cfg_file is not None:
        try:
            extra = json.loads(cfg_file.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {cfg_file}: {exc}") from exc
        for key, val in extra.items():
            key = key.replace("-", "_")
            if key not in values:
                raise InputError(f"unknown config key {key!r}")
            if key not in explicit:
                values[key] = val
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    kw = {k: v for k, v in values.items() if k in fields and v is not None}
    for key in ("heads", "periods", "a_range", "b_range", "resolution"):
        if key in kw:
            kw[key] = tuple(kw[key])
    if "inputs" in kw:
        kw["inputs"] = tuple(Path(x) for x in kw["inputs"])
    kw["out"] = Path(kw.get("out", "."))
    return RunConfig(**kw)


# ---------------------------------------------------------------------------
# Subcommands


def _chains(cfg: RunConfig) -> list[Chain]:
    if cfg.inputs:
        return [load_chain(path.read_text()) for path in _json_files(cfg.inputs)]
    return [generate_chain(head, cfg.depth) for head in cfg.heads]


def _json_files(paths: Sequence[Path]) -> list[Path]:
    files = []
    for path in paths:
        if path.is_dir():
            files.extend(sorted(path.glob("*.json")))
        elif path.exists():
            files.append(path)
        else:
            raise InputError(f"no such file: {path}")
    return files


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.info("wrote %s", path)


def cmd_chain(cfg: RunConfig) -> int:
    chains = [generate_chain(head, cfg.depth) for head in cfg.heads]
    for chain in chains:
        _write(cfg.out / f"chain_{to_itinerary(chain.head)}.json", dump_chain(chain))
    _write(cfg.out / "table.txt", format_table(chains))
    print(f"{sum(len(c.pairs) for c in chains)} pairs from {len(chains)} heads")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    files = _json_files(cfg.inputs)
    lines, failures = [], 0
    for path in files:
        chain = load_chain(path.read_text())
        for pair in chain.pairs:
            try:
                lines.append(f"ok   {verify_pair(pair)}")
            except VerificationError as exc:
                failures += 1
                lines.append(f"FAIL {path.name}: {exc}")
    lines.append(f"{len(lines) - failures} verified, {failures} failed")
    report = "\n".join(lines) + "\n"
    print(report, end="")
    if cfg.out != Path("."):
        _write(cfg.out / "verify.txt", report)
    return EXIT_VERIFY if failures else EXIT_OK


def _members(chains: Sequence[Chain]):
    for chain in chains:
        head = to_itinerary(chain.head)
        for pair in chain.pairs:
            yield head, pair


def cmd_params(cfg: RunConfig) -> int:
    rows = []
    for head, pair in _members(_chains(cfg)):
        for member in (pair.minus, pair.plus):
            rows.append((head, quad.superattracting_parameter(to_itinerary(member))))
    _write(cfg.out / "params.csv", quad.parameters_csv(rows))
    print(f"{len(rows)} parameters")
    return EXIT_OK


def _continue(task):
    a_minus, a_plus, p, control = task
    return henon.continue_isotracal(a_minus, a_plus, p, control)


def cmd_isotracal(cfg: RunConfig) -> int:
    control = henon.StepControl(newton_tol=cfg.tol_newton, meet_tol=cfg.tol_meet)
    tasks = []
    for head, pair in _members(_chains(cfg)):
        if cfg.periods and pair.period not in cfg.periods:
            continue
        a = [quad.superattracting_parameter(to_itinerary(m)).a for m in (pair.minus, pair.plus)]
        tasks.append((head, (a[0], a[1], pair.period, control)))
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_continue, [t for _, t in tasks]))
    else:
        results = [_continue(t) for _, t in tasks]
    paths, unmet = [], 0
    for (head, (a_minus, a_plus, p, _)), (minus, plus) in zip(tasks, results):
        paths.extend((minus, plus))
        if minus.met:
            print(f"{head} p={p}: met at b={minus.meet_b:.10f}")
        else:
            unmet += 1
            print(f"{head} p={p}: not met, {minus.diagnostic}")
    _write(cfg.out / "isotracal.csv", henon.paths_csv(paths))
    _write(cfg.out / "isotracal.svg", svg.render(paths=paths, title="zero isotracal paths"))
    return EXIT_NUMERIC if unmet else EXIT_OK


def cmd_scatter(cfg: RunConfig, overlay: Path | None = None) -> int:
    paths = _read_paths(overlay) if overlay else []
    grids = []
    for p in cfg.periods:
        grid = henon.scatter(cfg.a_range, cfg.b_range, cfg.resolution, p,
                             tol=cfg.tol_period, jobs=cfg.jobs)
        grids.append(grid)
        _write(cfg.out / f"scatter_p{p}.csv", henon.scatter_csv(grid))
        _write(cfg.out / f"scatter_p{p}.svg", svg.render([grid], paths, title=f"period {p}"))
        print(f"period {p}: {int((grid.periods == p).sum())} cells")
    return EXIT_OK


def _read_paths(path: Path) -> list[henon.IsotracalPath]:
    import csv

    by_key: dict[tuple[int, str], henon.IsotracalPath] = {}
    with path.open() as fh:
        for row in csv.DictReader(fh):
            key = (int(row["period"]), row["branch"])
            if key not in by_key:
                by_key[key] = henon.IsotracalPath(key[0], key[1], [])
            by_key[key].samples.append(henon.IsotracalSample(
                float(row["b"]), float(row["a"]), float(row["x"]), float(row["y"]),
                float(row["res_fp"]), float(row["res_tr"])))
    return list(by_key.values())


COMMANDS = {"chain": cmd_chain, "verify": cmd_verify, "params": cmd_params,
            "isotracal": cmd_isotracal}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    overlay = getattr(args, "paths", None)
    if hasattr(args, "paths"):
        del args.paths
    del args.verbose
    try:
        cfg = _config(args, frozenset(_explicit_keys(argv)))
        if cfg.subcommand == "scatter":
            return cmd_scatter(cfg, overlay)
        return COMMANDS[cfg.subcommand](cfg)
    except (InputError, PermutationError, ConstructionError, quad.BracketError, KeyError,
            json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
