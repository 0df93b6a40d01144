import pytest
from hypothesis import HealthCheck, settings

from twistedreps import GF, QQ
from twistedreps.algebra import Bimodule, dual_numbers, free_module, ground_field, residue_field_module
from twistedreps.diagram import DiagramSpec, Quiver
from twistedreps.instances import vect_shape

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def F():
    return GF(5)


@pytest.fixture(scope="session")
def Q():
    return QQ


@pytest.fixture(scope="session")
def k(F):
    return ground_field(F)


@pytest.fixture(scope="session")
def D(F):
    """Dual numbers k[t]/t^2 over F_5."""
    return dual_numbers(F)


@pytest.fixture(scope="session")
def residue(D):
    return residue_field_module(D)


@pytest.fixture(scope="session")
def shapes(F):
    return {name: vect_shape(name, F) for name in ("A2", "A3", "kronecker", "square")}


@pytest.fixture(scope="session")
def dual_chain(D):
    """0 -> 1 -> 2 over the dual numbers with regular bimodules."""
    R = Bimodule.regular(D)
    q = Quiver([0, 1, 2], [("x", 0, 1), ("y", 1, 2)])
    return DiagramSpec(q, {0: D, 1: D, 2: D}, {"x": R, "y": R}, name="dual-chain")


@pytest.fixture(scope="session")
def framed_dual(D):
    from twistedreps.instances import build_framed

    return build_framed(D, free_module(D, 1))


@pytest.fixture(scope="session")
def all_diagrams(shapes, dual_chain, framed_dual):
    out = {name: v.diagram for name, v in shapes.items()}
    out["dual-chain"] = dual_chain
    out["framed"] = framed_dual.diagram
    return out


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
