import pytest

from models.oracle import QuadratureGrid


@pytest.fixture(scope="session")
def grid_for():
    """Cached quadrature grids keyed by l_max."""
    grids = {}

    def build(l_max: int) -> QuadratureGrid:
        if l_max not in grids:
            grids[l_max] = QuadratureGrid.build(l_max)
        return grids[l_max]

    return build
