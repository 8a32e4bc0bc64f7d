from pathlib import Path

import nox

nox.options.default_venv_backend = "uv"

PYTHON_VERSIONS = ["3.10", "3.11", "3.12", "3.13", "3.14"]


@nox.session(python=PYTHON_VERSIONS)
def tests(session: nox.Session):
    """Run the test suite."""
    session.run("uv", "sync", "--dev", external=True)
    session.run("uv", "run", "ruff", "check", ".", external=True)
    session.run("uv", "run", "pytest", "tests/", external=True)


@nox.session(python=PYTHON_VERSIONS[-1])
def selftest(session: nox.Session):
    """Run the bundled property checks and a scan of every bundled scenario."""
    session.run("uv", "sync", external=True)
    session.run("uv", "run", "sigma", "selftest", external=True)
    for scenario in sorted(Path("scenarios").glob("*.toml")):
        session.run(
            "uv",
            "run",
            "sigma",
            "scan",
            str(scenario),
            "--samples",
            "2",
            "--out",
            str(Path(session.create_tmp()) / "certs"),
            external=True,
            success_codes=[0, 3],
        )
