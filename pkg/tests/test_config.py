import textwrap
from pathlib import Path

import pytest
from pyfakefs.fake_filesystem import FakeFilesystem

from sigmacat.algebra import BaumslagSolitar, DirectProduct, FreeAbelian, FreeGroup
from sigmacat.config import (
    ConfigError,
    ConfigNotFoundError,
    default_relators,
    default_store_dir,
    load_environment,
    load_scenario,
    parse_scenario,
)
from sigmacat.geometry import ProductModel


@pytest.fixture
def mock_scenario_content() -> str:
    """Fixture to provide a valid scenario."""
    return textwrap.dedent("""
        name = "plane"
        seed = 7

        [group]
        backend = "free_abelian"
        generators = ["a", "b"]

        [model]
        kind = "euclidean"
        translations = { a = [1, 0], b = [0, 1] }

        [budgets]
        window = 1
        samples = 3
    """)


def test_load_scenario_success(fs: FakeFilesystem, mock_scenario_content: str):
    """Test that a valid scenario file is loaded and resolved."""
    scenario_path = "/fake/path/plane.toml"
    fs.create_file(scenario_path, contents=mock_scenario_content)

    scenario = load_scenario(Path(scenario_path))

    assert scenario.name == "plane"
    assert scenario.seed == 7
    assert scenario.budgets.window == 1
    assert scenario.budgets.push_budget == 3
    assert [scenario.complex.rank(k) for k in range(3)] == [1, 2, 1]
    assert scenario.control.preset == "base"
    assert len(scenario.digest) == 64


def test_load_scenario_accepts_yaml(fs: FakeFilesystem, mock_scenario_content: str):
    """A YAML scenario with the same content resolves to the same scenario."""
    fs.create_file("/toml/plane.toml", contents=mock_scenario_content)
    fs.create_file(
        "/yaml/plane.yaml",
        contents=textwrap.dedent("""
            name: plane
            group: {backend: free_abelian, generators: [a, b]}
            model:
              kind: euclidean
              translations: {a: [1, 0], b: [0, 1]}
            budgets: {window: 1, samples: 3}
            seed: 7
        """),
    )

    from_yaml = load_scenario(Path("/yaml/plane.yaml"))

    assert from_yaml.digest == load_scenario(Path("/toml/plane.toml")).digest


def test_digest_depends_on_content(fs: FakeFilesystem, mock_scenario_content: str):
    fs.create_file("/a/plane.toml", contents=mock_scenario_content)
    boundary = 'control = "boundary"\n' + mock_scenario_content
    fs.create_file("/b/plane.toml", contents=boundary)

    first = load_scenario(Path("/a/plane.toml"))
    second = load_scenario(Path("/b/plane.toml"))

    assert first.digest != second.digest
    assert first.digest == load_scenario(Path("/a/plane.toml")).digest


@pytest.mark.usefixtures("fs")
def test_load_scenario_not_found():
    """Test that ConfigNotFoundError is raised for a non-existent file."""
    with pytest.raises(ConfigNotFoundError, match="not found"):
        load_scenario(Path("/non/existent/path/scenario.toml"))


@pytest.mark.parametrize(
    ("name", "contents"),
    [
        ("malformed.toml", "[group\nbackend = 'free'"),
        ("malformed.yaml", "group: [backend: 'free',"),
    ],
)
def test_load_scenario_parse_error(fs: FakeFilesystem, name: str, contents: str):
    """Test that ConfigError is raised for a malformed TOML or YAML file."""
    scenario_path = f"/fake/path/{name}"
    fs.create_file(scenario_path, contents=contents)

    with pytest.raises(ConfigError, match="Error loading or parsing scenario file"):
        load_scenario(Path(scenario_path))


def test_factor_paths_are_relative_to_the_scenario(fs: FakeFilesystem):
    fs.create_file(
        "/scenarios/line.toml",
        contents=textwrap.dedent("""
            group = { backend = "free_abelian", generators = ["a"] }
            model = { kind = "euclidean", translations = { a = [1] } }
        """),
    )
    fs.create_file(
        "/scenarios/product.toml", contents='factors = ["line.toml", "line.toml"]\n'
    )

    scenario = load_scenario(Path("/scenarios/product.toml"))

    assert isinstance(scenario.group, DirectProduct)
    assert isinstance(scenario.model, ProductModel)
    assert scenario.factors is not None
    assert [scenario.complex.rank(k) for k in range(3)] == [1, 2, 1]
    assert scenario.raw["factors"][0]["group"]["backend"] == "free_abelian"


@pytest.mark.parametrize(
    ("data", "message"),
    [
        ([1, 2], "must be a mapping"),
        ({"schema": 2}, "Unsupported scenario schema"),
        ({"model": {"kind": "euclidean"}}, "is missing 'group'"),
        (
            {"group": {"backend": "free_abelian", "generators": ["a"]}},
            "is missing 'model'",
        ),
        ({"factors": ["only.toml"]}, "exactly two"),
        (
            {
                "group": {"backend": "free_abelian", "generators": ["a"]},
                "model": {"kind": "euclidean", "translations": {"a": [1]}},
                "resolution": "tensor",
            },
            "needs 'factors'",
        ),
        (
            {
                "group": {"backend": "free_abelian", "generators": ["a"]},
                "model": {"kind": "euclidean", "translations": {"a": [1]}},
                "resolution": "cellular",
            },
            "Unknown resolution",
        ),
        (
            {
                "group": {"backend": "free_abelian", "generators": ["a"]},
                "model": {"kind": "euclidean", "translations": {"a": [1]}},
                "control": "centre",
            },
            "Unknown control preset",
        ),
        (
            {
                "group": {"backend": "free_abelian", "generators": ["a"]},
                "model": {"kind": "euclidean", "translations": {"a": [1]}},
                "budgets": {"window": 0},
            },
            "must be a positive integer",
        ),
        (
            {
                "group": {"backend": "lamplighter"},
                "model": {"kind": "euclidean"},
            },
            "Invalid scenario",
        ),
    ],
)
def test_invalid_scenarios(data, message):
    with pytest.raises(ConfigError, match=message):
        parse_scenario(data)


def test_resolution_from_tables():
    """The line resolved by hand: d(e) = (a - 1) v."""
    scenario = parse_scenario(
        {
            "group": {"backend": "free_abelian", "generators": ["a"]},
            "model": {"kind": "euclidean", "translations": {"a": [1]}},
            "resolution": {
                "tables": {
                    "bases": [["v"], ["e"]],
                    "boundaries": {"e": [["v", "a", 1], ["v", "1", -1]]},
                    "augmentation": {"v": [1]},
                    "complete": True,
                }
            },
        }
    )

    assert scenario.complex.bases == (("v",), ("e",))
    assert scenario.complex.complete


def test_boundary_control_table_override():
    scenario = parse_scenario(
        {
            "group": {"backend": "free_abelian", "generators": ["a"]},
            "model": {"kind": "euclidean", "translations": {"a": [1]}},
            "control": {"preset": "boundary", "table": {"x0": [[2]]}},
            "base_point": [2],
        }
    )

    assert scenario.control.preset == "boundary"
    assert scenario.control.base == (2,)
    assert scenario.control.table["x0"] == ((2,),)


@pytest.mark.parametrize(
    ("group", "expected"),
    [
        (FreeAbelian(("a", "b")), [[(0, 1), (1, 1), (0, -1), (1, -1)]]),
        (FreeGroup(("a", "b")), []),
        (BaumslagSolitar(2), [[(1, 1), (0, 1), (1, -1), (0, -2)]]),
    ],
)
def test_default_relators(group, expected):
    assert default_relators(group) == expected


def test_default_relators_of_a_product():
    """Factor relators plus the commutators of the two sides."""
    group = DirectProduct(FreeGroup(("a",)), FreeGroup(("b",)))

    assert default_relators(group) == [[(0, 1), (1, 1), (0, -1), (1, -1)]]


def test_default_store_dir_from_environment(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("SIGMA_CERT_DIR", "/tmp/certs")

    assert default_store_dir() == Path("/tmp/certs")  # noqa: S108


def test_default_store_dir_fallback(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("SIGMA_CERT_DIR", raising=False)

    assert default_store_dir() == Path("sigma-certificates")


def test_load_environment_reads_dotenv(
    fs: FakeFilesystem, monkeypatch: pytest.MonkeyPatch
):
    """Test that a .env file in the working directory sets the store."""
    monkeypatch.setenv("SIGMA_CERT_DIR", "unset")
    monkeypatch.delenv("SIGMA_CERT_DIR", raising=False)
    fs.create_file("/work/.env", contents="SIGMA_CERT_DIR=/work/certs\n")
    monkeypatch.chdir("/work")

    load_environment()

    assert default_store_dir() == Path("/work/certs")


def test_load_environment_reads_user_config(
    mock_temp_home: Path, monkeypatch: pytest.MonkeyPatch
):
    """Test that the user config file is read when no .env is present."""
    monkeypatch.setenv("SIGMA_CERT_DIR", "unset")
    monkeypatch.delenv("SIGMA_CERT_DIR", raising=False)
    config_dir = mock_temp_home / ".config" / "sigmacat"
    config_dir.mkdir(parents=True)
    (config_dir / "config.env").write_text("SIGMA_CERT_DIR=~/certs\n")
    work = mock_temp_home / "work"
    work.mkdir()
    monkeypatch.chdir(work)

    load_environment()

    assert default_store_dir() == Path("~/certs").expanduser()


COSETS = {
    "group": {"backend": "free_abelian", "generators": ["a", "b"]},
    "model": {"kind": "euclidean", "translations": {"a": [1, 0], "b": [0, 1]}},
    "module": {"relations": [[[0, "b", 1], [0, "1", -1]]]},
}


def test_quotient_module_with_tables():
    scenario = parse_scenario(
        {
            **COSETS,
            "resolution": {
                "tables": {
                    "bases": [["x0"], ["x_b"]],
                    "boundaries": {"x_b": [["x0", "b", 1], ["x0", "1", -1]]},
                    "augmentation": {"x0": [1]},
                }
            },
        }
    )

    assert scenario.module is not None
    assert not scenario.module.trivial
    assert scenario.module.to_json()["relations"] == [[[0, "1", "-1"], [0, "b", "1"]]]


def test_quotient_module_rejects_a_boundary_it_does_not_kill():
    """(a - 1) x0 augments to a nonzero element of K[Z^2]/(b - 1)."""
    tables = {
        "bases": [["x0"], ["x_a"]],
        "boundaries": {"x_a": [["x0", "a", 1], ["x0", "1", -1]]},
        "augmentation": {"x0": [1]},
    }

    with pytest.raises(ConfigError, match="does not augment to zero"):
        parse_scenario({**COSETS, "resolution": {"tables": tables}})


def test_quotient_module_needs_tables():
    with pytest.raises(ConfigError, match="only resolve trivial modules"):
        parse_scenario(COSETS)


def test_module_rank_defaults_to_the_trivial_module():
    scenario = parse_scenario({**COSETS, "module": {"rank": 2}})

    assert scenario.module_rank == 2
    assert scenario.module is not None
    assert scenario.module.trivial
    assert scenario.module.to_json() == {"rank": 2}
