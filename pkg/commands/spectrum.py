import logging

import pandas as pd

from models.perturb import fine_structure_energy, level_shifts
from models.run_config import RunConfig
from models.states import level_subspaces

logger = logging.getLogger(__name__)

COLUMNS = ["n", "l", "j", "m", "E_fine [Ry]", "dE [Ry]", "E_total [Ry]"]


def cmd_spectrum(config: RunConfig) -> pd.DataFrame:
    """Fine-structure energy plus first-order shift for every state with n_min <= n <= n_max."""
    potential = config.potential_spec()
    keyed_rows = []
    for n in range(config.n_min, config.n_max + 1):
        for j, m in level_subspaces(n):
            e_fine = float(fine_structure_energy(n, j, config.Z, config.alpha2))
            for l, shift in level_shifts(n, j, m, config.Z, potential):
                delta = float(shift.value)
                row = (n, l, str(j), str(m), e_fine, delta, e_fine + delta)
                keyed_rows.append(((n, l, j.twice_value, m.twice_value), row))
    keyed_rows.sort(key=lambda item: item[0])
    logger.info("spectrum: %d states for n in [%d, %d]", len(keyed_rows), config.n_min, config.n_max)
    return pd.DataFrame([row for _, row in keyed_rows], columns=COLUMNS)
