from pathlib import Path

import pytest

from sigmacat.algebra import FreeAbelian, FreeGroup, GroundRing
from sigmacat.complexes import ChainComplex, Presentation, fox_resolution
from sigmacat.config import default_relators
from sigmacat.geometry import ControlledModel, EuclideanModel, build_control

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"


@pytest.fixture
def rationals() -> GroundRing:
    return GroundRing("rationals")


@pytest.fixture
def z2() -> FreeAbelian:
    return FreeAbelian(("a", "b"))


@pytest.fixture
def z2_complex(z2: FreeAbelian, rationals: GroundRing) -> ChainComplex:
    """Fox resolution of Q over Z^2 from the commutator relator."""
    return fox_resolution(Presentation(z2, rationals, tuple(default_relators(z2))))


@pytest.fixture
def z2_control(z2: FreeAbelian, z2_complex: ChainComplex) -> ControlledModel:
    """Z^2 acting on the plane by unit translations, base preset."""
    return build_control(EuclideanModel(z2, ((1, 0), (0, 1))), z2_complex)


@pytest.fixture
def f2_control(rationals: GroundRing) -> ControlledModel:
    """F2 on the plane through its abelianization."""
    group = FreeGroup(("a", "b"))
    complex_ = fox_resolution(Presentation(group, rationals))
    return build_control(EuclideanModel(group, ((1, 0), (0, 1))), complex_)


@pytest.fixture
def mock_temp_home(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Mock Path.home() to point to a temporary directory."""
    monkeypatch.setattr(Path, "home", lambda: tmp_path)
    return tmp_path
