import argparse
import asyncio
import contextlib
import dataclasses
import logging
import sys
from collections.abc import Sequence
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.text import Text
from yaspin import yaspin
from yaspin.core import Yaspin

from .config import (
    ConfigError,
    ConfigNotFoundError,
    Scenario,
    default_store_dir,
    load_environment,
    load_scenario,
)
from .finitary import PreconditionError
from .geometry import Direction, GeometryError, sample_points
from .novikov import ObstructionClass, tor_vanishing_test
from .selftest import run_selftest
from .sigma import (
    MEMBER,
    NON_MEMBER,
    UNKNOWN,
    Budgets,
    CertificateError,
    HypothesisNotEstablishedError,
    LagEstimate,
    NotFound,
    bounding_payload,
    ca_check,
    envelope,
    find_push,
    lag_from_push,
    membership,
    obstruction_payload,
    product_complement_check,
    push_summary,
    uniform_point_lag,
    verdict_to_json,
    verify_document,
    verify_push,
    zero_lag_transform,
)
from .store import CertificateStore, StoreError, read_document

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_FAILED = 4

ICONS = {MEMBER: "✅", NON_MEMBER: "❌", UNKNOWN: "❔"}

console = Console()


def is_interactive() -> bool:
    """Check if the script is running in an interactive terminal."""
    return sys.stdout.isatty()


def configure_logging(*, verbose: bool) -> None:
    """Send library log records through rich; debug level when verbose."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """The ``sigma`` argument parser with one subcommand per procedure."""
    parser = argparse.ArgumentParser(
        prog="sigma",
        description="Certified computations of Sigma-invariants over CAT(0) models.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log search progress."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def scenario_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument(
            "scenario", type=Path, help="Path to a TOML (or YAML) scenario."
        )
        sub.add_argument("--n", type=int, default=1, help="Dimension n.")
        sub.add_argument("--dir", help="Direction, e.g. '-1' or '1,0'.")
        sub.add_argument("--end", help="Tree end: omega, a rational or 01(10).")
        sub.add_argument("--join", help="Product join, e.g. '1,1 | 1,0 | -1'.")
        sub.add_argument("--window", type=int, help="Window radius.")
        sub.add_argument("--trunc", type=int, help="Novikov truncation floor T.")
        sub.add_argument("--nu", type=int, help="Required guaranteed shift.")
        sub.add_argument("--samples", type=int, help="Number of samples.")
        sub.add_argument("--seed", type=int, help="Sampling seed.")
        sub.add_argument("--jobs", type=int, default=1, help="Worker processes.")
        sub.add_argument("--out", type=Path, help="Certificate directory.")
        return sub

    scenario_command("member", "Membership verdict at one direction.")
    scenario_command("scan", "Membership verdicts at sampled directions.")
    scenario_command("push", "Search for a push certificate.")
    scenario_command("ca", "Controlled acyclicity over a direction.")
    scenario_command("ca-point", "Controlled acyclicity over sampled points.")
    scenario_command("novikov", "Novikov homology through dimension n.")
    scenario_command("product", "Product formula check on a product scenario.")
    scenario_command("expand", "Zero-lag transform and its post-condition.")
    verify = commands.add_parser("verify", help="Re-check a certificate file.")
    verify.add_argument("file", type=Path, help="Certificate JSON file.")
    selftest = commands.add_parser("selftest", help="Run the property checks.")
    selftest.add_argument("--seed", type=int, default=0, help="Sampling seed.")
    selftest.add_argument("--samples", type=int, default=20, help="Cases per check.")
    return parser


def budgets_from_args(args: argparse.Namespace, scenario: Scenario) -> Budgets:
    """Scenario budgets with command-line overrides applied."""
    overrides = {
        "window": args.window,
        "truncation": args.trunc,
        "nu": args.nu,
        "samples": args.samples,
    }
    changes = {key: value for key, value in overrides.items() if value is not None}
    for key, value in changes.items():
        if value <= 0 and key != "nu":
            msg = f"--{key} must be positive"
            raise ValueError(msg)
    return dataclasses.replace(scenario.budgets, **changes)


def direction_from_args(args: argparse.Namespace, scenario: Scenario) -> Direction:
    """Parse ``--dir``, ``--end`` or ``--join`` against the scenario model."""
    model = scenario.model
    if args.join is not None:
        return model.parse_direction(args.join)
    text = args.end if args.end is not None else args.dir
    if text is None:
        msg = "A direction is required: use --dir, --end or --join"
        raise ValueError(msg)
    return model.parse_direction(text)


def directions_from_args(
    args: argparse.Namespace, scenario: Scenario, budgets: Budgets
) -> list[Direction]:
    """The given direction, or sampled directions when none was given."""
    if args.dir is None and args.end is None and args.join is None:
        seed = scenario.seed if args.seed is None else args.seed
        return scenario.model.sample_directions(budgets.samples, seed)
    return [direction_from_args(args, scenario)]


@lru_cache(maxsize=8)
def _cached_scenario(path: str) -> Scenario:
    return load_scenario(Path(path))


def verdict_document(
    scenario: Scenario, e: Direction, n: int, budgets: Budgets
) -> dict[str, Any]:
    """Membership verdict at ``e`` wrapped in a certificate envelope."""
    verdict = membership(scenario.control, e, n, budgets)
    return envelope(
        "verdict",
        verdict_to_json(verdict, scenario.control),
        scenario=scenario.digest,
        direction=scenario.model.direction_to_json(verdict.e),
        n=n,
    )


def membership_task(
    path: str, direction: Any, n: int, budgets: dict[str, Any]
) -> dict[str, Any]:
    """Verdict envelope for one direction; runs in worker processes."""
    scenario = _cached_scenario(path)
    e = scenario.model.direction_from_json(direction)
    return verdict_document(scenario, e, n, Budgets.from_json(budgets))


async def run_membership(
    path: Path,
    scenario: Scenario,
    directions: Sequence[Direction],
    n: int,
    budgets: Budgets,
    jobs: int,
    spinner: Yaspin | None = None,
) -> list[dict[str, Any]]:
    """Verdict envelopes in input order, computed by a worker pool."""
    if jobs <= 1:
        documents = [verdict_document(scenario, e, n, budgets) for e in directions]
        report_documents(scenario, documents, n, spinner)
        return documents

    loop = asyncio.get_running_loop()
    pool: Executor = ProcessPoolExecutor(max_workers=jobs)
    try:
        tasks = [
            loop.run_in_executor(
                pool,
                membership_task,
                str(path),
                scenario.model.direction_to_json(e),
                n,
                budgets.to_json(),
            )
            for e in directions
        ]
        documents = await asyncio.gather(*tasks)
    finally:
        pool.shutdown()
    report_documents(scenario, list(documents), n, spinner)
    return list(documents)


def report_documents(
    scenario: Scenario,
    documents: Sequence[dict[str, Any]],
    n: int,
    spinner: Yaspin | None = None,
) -> None:
    """One line per verdict, written through the spinner when there is one."""
    model = scenario.model
    for document in documents:
        payload = document["payload"]
        e = model.direction_from_json(payload["direction"])
        message = (
            f"    - {ICONS[payload['status']]} {model.format_direction(e)} "
            f"n={n}: {payload['status']} ({payload['reason']})"
        )
        if spinner:
            spinner.write(message)
        else:
            console.print(message)


def print_lags(estimate: LagEstimate) -> None:
    """One line per (dimension, level) with the worst observed lag."""
    for (dimension, level), lag in sorted(
        estimate.lags.items(), key=lambda item: (item[0][0], str(item[0][1]))
    ):
        shown = "unbounded within the window" if lag is None else f"lag {lag}"
        console.print(f"    i={dimension} s={level}: {shown}")


def cmd_member(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    e = direction_from_args(args, scenario)
    document = verdict_document(scenario, e, args.n, budgets)
    path = store.put(document)
    payload = document["payload"]
    status = payload["status"]
    console.print(
        f"{ICONS[status]} {scenario.model.format_direction(e)} n={args.n}: {status}"
    )
    console.print(Panel(Text(payload["reason"]), title=status, expand=False))
    console.print(f"↳ {path}")
    return EXIT_UNKNOWN if status == UNKNOWN else EXIT_OK


async def cmd_scan(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    seed = scenario.seed if args.seed is None else args.seed
    directions = scenario.model.sample_directions(budgets.samples, seed)
    text = f"🚀 Scanning {len(directions)} directions of {scenario.name}..."
    if is_interactive():
        with yaspin(text=text, color="yellow") as spinner:
            documents = await run_membership(
                args.scenario, scenario, directions, args.n, budgets, args.jobs, spinner
            )
    else:
        console.print(text)
        documents = await run_membership(
            args.scenario, scenario, directions, args.n, budgets, args.jobs
        )
    counts = dict.fromkeys((MEMBER, NON_MEMBER, UNKNOWN), 0)
    for document in documents:
        store.put(document)
        counts[document["payload"]["status"]] += 1
    summary = ", ".join(f"{status}: {count}" for status, count in counts.items())
    title = f"{scenario.name} n={args.n}"
    console.print(Panel(Text(summary), title=title, expand=False))
    return EXIT_UNKNOWN if counts[UNKNOWN] == len(documents) else EXIT_OK


def cmd_push(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    e = direction_from_args(args, scenario)
    found = find_push(scenario.control, e, args.n, budgets)
    if isinstance(found, NotFound):
        console.print(f"❌ No push: {found.reason}")
        return EXIT_UNKNOWN
    report = verify_push(found)
    document = envelope(
        "push",
        found.to_json(),
        scenario=scenario.digest,
        direction=scenario.model.direction_to_json(found.e),
        n=args.n,
    )
    path = store.put(document)
    details = "\n".join(f"{key}: {value}" for key, value in push_summary(found).items())
    console.print(Panel(Text(details), title="Push certificate", expand=False))
    for failure in report.failures():
        console.print(f"❌ {failure}")
    console.print(f"↳ {path}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_ca(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    e = scenario.model.scale_direction(direction_from_args(args, scenario))
    try:
        found = find_push(scenario.control, e, args.n, budgets)
    except PreconditionError:
        found = None
    if found is None or isinstance(found, NotFound):
        estimate = ca_check(scenario.control, e, args.n, budgets)
    else:
        estimate = lag_from_push(found, budgets)
        console.print(f"Lag bound from the push: {estimate.bound}")
    print_lags(estimate)
    path = store.put(
        envelope(
            "bounding",
            bounding_payload(estimate, scenario.control, e),
            scenario=scenario.digest,
            direction=scenario.model.direction_to_json(e),
            n=args.n,
        )
    )
    console.print(f"↳ {path}")
    if estimate.violations:
        console.print(f"❌ {len(estimate.violations)} lags exceed the push bound")
        return EXIT_FAILED
    if not estimate.complete:
        return EXIT_UNKNOWN
    console.print(f"✅ Constant lag {estimate.constant}")
    return EXIT_OK


def cmd_ca_point(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    points = sample_points(scenario.model, budgets.samples)
    common, estimates = uniform_point_lag(scenario.control, points, args.n, budgets)
    for b, estimate in zip(points, estimates, strict=True):
        shown = "incomplete" if not estimate.complete else f"lag {estimate.constant}"
        console.print(f"    - {scenario.model.point_to_json(b)}: {shown}")
        store.put(
            envelope(
                "bounding",
                bounding_payload(estimate, scenario.control, None),
                scenario=scenario.digest,
                direction=scenario.model.point_to_json(b),
                n=args.n,
            )
        )
    if common is None:
        console.print("❔ No uniform lag within the budgets")
        return EXIT_UNKNOWN
    console.print(f"✅ Uniform lag {common} over {len(points)} points")
    return EXIT_OK


def cmd_novikov(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    e = direction_from_args(args, scenario)
    statuses = []
    for k in range(args.n + 1):
        result = tor_vanishing_test(
            scenario.complex, scenario.model, e, k, budgets.truncation, budgets.window
        )
        statuses.append(result.status)
        console.print(f"    H_{k}: {result.status}")
        if isinstance(result, ObstructionClass):
            console.print(Panel(Text(result.witness.format()), title="Witness"))
            path = store.put(
                envelope(
                    "obstruction",
                    obstruction_payload(result, scenario.control, budgets.window),
                    scenario=scenario.digest,
                    direction=scenario.model.direction_to_json(result.e),
                    n=k,
                )
            )
            console.print(f"↳ {path}")
    return EXIT_UNKNOWN if all(s == UNKNOWN for s in statuses) else EXIT_OK


def cmd_product(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    if scenario.factors is None:
        console.print("❌ Error: the product command needs a scenario with 'factors'")
        return EXIT_USAGE
    joins = None
    if args.join is not None:
        joins = [direction_from_args(args, scenario)]
    left, right = scenario.factors
    report = product_complement_check(
        left.control, right.control, args.n, joins, budgets
    )
    for row in report.rows:
        actual = row.actual.status
        icon = "❌" if row.mismatch else ICONS[actual]
        console.print(
            f"    - {icon} {scenario.model.format_direction(row.join)}: "
            f"predicted {row.predicted}, computed {actual}"
        )
        store.put(
            envelope(
                "verdict",
                verdict_to_json(row.actual, scenario.control),
                scenario=scenario.digest,
                direction=scenario.model.direction_to_json(row.join),
                n=args.n,
            )
        )
    if report.mismatches:
        return EXIT_FAILED
    if all(row.actual.status == UNKNOWN for row in report.rows):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_expand(
    args: argparse.Namespace,
    scenario: Scenario,
    budgets: Budgets,
    store: CertificateStore,
) -> int:
    directions = directions_from_args(args, scenario, budgets)
    result = zero_lag_transform(scenario.control, directions, args.n, budgets)
    console.print(
        f"Added {len(result.cells)} cell pairs; monotone homotopy: {result.monotone}"
    )
    code = EXIT_OK
    for given in directions:
        e = scenario.model.scale_direction(given)
        label = scenario.model.format_direction(e)
        estimate = ca_check(result.control, e, args.n, budgets)
        store.put(
            envelope(
                "bounding",
                bounding_payload(estimate, result.control, e),
                scenario=scenario.digest,
                direction=scenario.model.direction_to_json(e),
                n=args.n,
            )
        )
        if not estimate.complete:
            console.print(f"❔ {label}: incomplete")
            code = max(code, EXIT_UNKNOWN)
        elif estimate.constant != 0:
            console.print(f"❌ {label}: lag {estimate.constant}")
            code = EXIT_FAILED
        else:
            console.print(f"✅ {label}: lag 0")
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = verify_document(read_document(args.file))
    except (CertificateError, StoreError) as e:
        console.print(f"❌ Error: {e}")
        return EXIT_FAILED
    for name, ok, detail in report.checks:
        icon = "✅" if ok else "❌"
        suffix = f" ({detail})" if not ok and detail else ""
        console.print(f"    - {icon} {name}{suffix}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_selftest(args: argparse.Namespace) -> int:
    report = run_selftest(args.seed, args.samples)
    for name, ok, detail in report.results:
        icon = "✅" if ok else "❌"
        suffix = f": {detail}" if detail else ""
        console.print(f"    - {icon} {name}{suffix}")
    return EXIT_OK if report.ok else EXIT_FAILED


COMMANDS = {
    "member": cmd_member,
    "push": cmd_push,
    "ca": cmd_ca,
    "ca-point": cmd_ca_point,
    "novikov": cmd_novikov,
    "product": cmd_product,
    "expand": cmd_expand,
}


async def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, load the scenario and run one command."""
    args = build_parser().parse_args(argv)
    configure_logging(verbose=args.verbose)
    load_environment()
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "selftest":
        return cmd_selftest(args)

    try:
        scenario = load_scenario(args.scenario)
    except (ConfigError, ConfigNotFoundError) as e:
        console.print(f"❌ Error loading scenario: {e}")
        return EXIT_USAGE

    store = CertificateStore(args.out or default_store_dir())
    try:
        budgets = budgets_from_args(args, scenario)
        if args.command == "scan":
            return await cmd_scan(args, scenario, budgets, store)
        return COMMANDS[args.command](args, scenario, budgets, store)
    except (ValueError, GeometryError) as e:
        console.print(f"❌ Error: {e}")
        return EXIT_USAGE
    except (HypothesisNotEstablishedError, PreconditionError) as e:
        console.print(f"❌ Hypothesis not established: {e}")
        return EXIT_UNKNOWN
    except StoreError as e:
        console.print(f"❌ Error: {e}")
        return EXIT_FAILED


def _main() -> None:
    with contextlib.suppress(KeyboardInterrupt):
        sys.exit(asyncio.run(main()))  # pragma: no cover


if __name__ == "__main__":
    _main()  # pragma: no cover
