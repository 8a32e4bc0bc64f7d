import json
import logging
from pathlib import Path
from unittest.mock import MagicMock, patch

import pytest
import sympy

from sigmacat.config import load_scenario
from sigmacat.main import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    build_parser,
    budgets_from_args,
    configure_logging,
    direction_from_args,
    is_interactive,
    main,
    report_documents,
)
from sigmacat.sigma import envelope
from sigmacat.store import CertificateStore
from tests.conftest import SCENARIO_DIR
from tests.utils import strip_ansi

Z2 = str(SCENARIO_DIR / "z2.toml")
F2 = str(SCENARIO_DIR / "f2.toml")
R = sympy.Rational


@pytest.fixture
def interactive_true():
    """Fixture to mock interactive terminal."""
    with patch("sys.stdout.isatty", return_value=True):
        yield


@pytest.fixture
def interactive_false():
    """Fixture to mock non-interactive terminal."""
    with patch("sys.stdout.isatty", return_value=False):
        yield


@pytest.fixture
def out(tmp_path: Path) -> Path:
    return tmp_path / "certs"


def kinds(directory: Path) -> list[str]:
    return sorted(entry.kind for entry in CertificateStore(directory).entries())


@pytest.mark.usefixtures("interactive_true")
def test_is_interactive_true():
    assert is_interactive() is True


@pytest.mark.usefixtures("interactive_false")
def test_is_interactive_false():
    assert is_interactive() is False


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (["--dir", "1,0"], (R(1), R(0))),
        (["--dir", "(2, -1/2)"], (R(2), R(-1, 2))),
        (["--end", "0,1", "--dir", "1,0"], (R(0), R(1))),
    ],
)
def test_direction_from_args(argv, expected):
    scenario = load_scenario(Path(Z2))
    args = build_parser().parse_args(["member", Z2, *argv])

    assert direction_from_args(args, scenario) == expected


def test_verbose_flag_enables_debug_logging():
    args = build_parser().parse_args(["--verbose", "selftest"])

    configure_logging(verbose=args.verbose)
    level = logging.getLogger("sigmacat.sigma").getEffectiveLevel()
    configure_logging(verbose=False)

    assert level == logging.DEBUG


def test_budget_overrides():
    scenario = load_scenario(Path(Z2))
    args = build_parser().parse_args(["member", Z2, "--window", "1", "--trunc", "3"])

    budgets = budgets_from_args(args, scenario)

    assert budgets.window == 1
    assert budgets.truncation == 3
    assert budgets.samples == scenario.budgets.samples


def test_non_positive_budget_is_rejected():
    scenario = load_scenario(Path(Z2))
    args = build_parser().parse_args(["member", Z2, "--samples", "0"])

    with pytest.raises(ValueError, match="--samples must be positive"):
        budgets_from_args(args, scenario)


@pytest.mark.asyncio
async def test_member_writes_a_verdict(out: Path):
    code = await main(["member", Z2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_OK
    (entry,) = CertificateStore(out).entries()
    assert entry.kind == "verdict"
    assert entry.status == "Member"


@pytest.mark.asyncio
async def test_member_non_member_is_a_success(out: Path):
    code = await main(["member", F2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_OK
    (entry,) = CertificateStore(out).entries()
    assert entry.status == "NonMember"


@pytest.mark.asyncio
@patch("sigmacat.main.console")
async def test_member_needs_a_direction(mock_console: MagicMock, out: Path):
    code = await main(["member", Z2, "--out", str(out)])

    assert code == EXIT_USAGE
    mock_console.print.assert_called_with(
        "❌ Error: A direction is required: use --dir, --end or --join"
    )


@pytest.mark.asyncio
@patch("sigmacat.main.console")
async def test_missing_scenario(mock_console: MagicMock, tmp_path: Path):
    path = tmp_path / "missing.toml"

    code = await main(["member", str(path), "--dir", "1"])

    assert code == EXIT_USAGE
    mock_console.print.assert_called_with(
        f"❌ Error loading scenario: Scenario file not found at {path}"
    )


@pytest.mark.asyncio
async def test_invalid_scenario(tmp_path: Path):
    path = tmp_path / "broken.toml"
    path.write_text('group = {backend = "lamplighter"}\nmodel = {kind = "euclidean"}\n')

    assert await main(["member", str(path), "--dir", "1"]) == EXIT_USAGE


@pytest.mark.asyncio
async def test_bad_direction_is_a_usage_error(out: Path):
    code = await main(["member", Z2, "--dir", "1,x", "--out", str(out)])

    assert code == EXIT_USAGE


@pytest.mark.asyncio
async def test_push_found_and_stored(out: Path):
    code = await main(["push", Z2, "--dir", "0,1", "--out", str(out)])

    assert code == EXIT_OK
    assert kinds(out) == ["push"]


@pytest.mark.asyncio
async def test_push_prints_a_certificate_panel(
    out: Path, capsys: pytest.CaptureFixture[str]
):
    await main(["push", Z2, "--dir", "1,0", "--out", str(out)])

    output = strip_ansi(capsys.readouterr().out)

    assert "Push certificate" in output
    assert "power: 1" in output
    assert "label: exact" in output


@pytest.mark.asyncio
async def test_push_not_found_is_unknown(out: Path):
    code = await main(["push", F2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_UNKNOWN
    assert kinds(out) == []


@pytest.mark.asyncio
async def test_push_with_zero_shift_is_not_established(out: Path):
    code = await main(["push", Z2, "--dir", "1,0", "--nu", "0", "--out", str(out)])

    assert code == EXIT_UNKNOWN


@pytest.mark.asyncio
async def test_ca_reports_constant_lag(out: Path):
    code = await main(["ca", Z2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_OK
    assert kinds(out) == ["bounding"]


@pytest.mark.asyncio
async def test_ca_point_reports_a_uniform_lag(out: Path):
    code = await main(["ca-point", Z2, "--samples", "2", "--out", str(out)])

    assert code == EXIT_OK
    assert kinds(out) == ["bounding", "bounding"]


@pytest.mark.asyncio
async def test_novikov_obstruction_verifies(out: Path):
    code = await main(["novikov", F2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_OK
    (entry,) = CertificateStore(out).entries()
    assert entry.kind == "obstruction"
    assert await main(["verify", str(out / entry.file)]) == EXIT_OK


@pytest.mark.asyncio
async def test_expand_reaches_zero_lag(out: Path):
    code = await main(["expand", Z2, "--dir", "1,0", "--out", str(out)])

    assert code == EXIT_OK
    assert kinds(out) == ["bounding"]


@pytest.mark.asyncio
@patch("sigmacat.main.console")
async def test_product_needs_factors(mock_console: MagicMock, out: Path):
    code = await main(["product", Z2, "--out", str(out)])

    assert code == EXIT_USAGE
    mock_console.print.assert_called_with(
        "❌ Error: the product command needs a scenario with 'factors'"
    )


@pytest.mark.asyncio
@pytest.mark.usefixtures("interactive_false")
async def test_scan_counts_verdicts(out: Path):
    code = await main(["scan", Z2, "--samples", "2", "--out", str(out)])

    assert code == EXIT_OK
    statuses = [entry.status for entry in CertificateStore(out).entries()]
    assert statuses == ["Member", "Member"]


@patch("sigmacat.main.yaspin")
@pytest.mark.asyncio
@pytest.mark.usefixtures("interactive_true")
async def test_scan_writes_through_the_spinner(mock_yaspin: MagicMock, out: Path):
    mock_spinner = MagicMock()
    mock_yaspin.return_value.__enter__.return_value = mock_spinner

    await main(["scan", Z2, "--samples", "1", "--out", str(out)])

    mock_yaspin.assert_called_once_with(
        text="🚀 Scanning 1 directions of z2...", color="yellow"
    )
    assert mock_spinner.write.call_count == 1


@patch("sigmacat.main.console")
def test_report_documents_without_spinner(mock_console: MagicMock):
    scenario = load_scenario(Path(Z2))
    document = envelope(
        "verdict",
        {"status": "Unknown", "direction": ["1", "0"], "reason": "budget"},
    )

    report_documents(scenario, [document], 1)

    mock_console.print.assert_called_once_with("    - ❔ (1, 0) n=1: Unknown (budget)")


@pytest.mark.asyncio
async def test_verify_rejects_a_tampered_file(tmp_path: Path):
    document = envelope("verdict", {"status": "Unknown"})
    document["payload"]["status"] = "Member"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(document))

    assert await main(["verify", str(path)]) == EXIT_FAILED


@pytest.mark.asyncio
async def test_verify_missing_file(tmp_path: Path):
    assert await main(["verify", str(tmp_path / "none.json")]) == EXIT_FAILED


@pytest.mark.asyncio
async def test_selftest_command():
    assert await main(["selftest", "--samples", "3"]) == EXIT_OK
