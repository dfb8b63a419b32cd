from typing import List, Optional, Tuple

import pandas as pd

from models.perturb import closed_form_shifts
from models.potentials import PotentialSpec
from models.run_config import RunConfig
from models.states import level_subspaces

COLUMNS = ["n", "j", "m", "branch", "dominant l", "dE [Ry]"]


def shift_rows(config: RunConfig, potential: Optional[PotentialSpec]) -> List[Tuple]:
    """(n, j, m, branch, dominant l, dE) ordered by (n, 2j, 2m), each subspace descending."""
    rows = []
    for n in range(config.n_min, config.n_max + 1):
        for j, m in level_subspaces(n):
            for shift in closed_form_shifts(n, j, m, config.Z, potential):
                rows.append((n, str(j), str(m), shift.branch, shift.dominant_l, float(shift.value)))
    return rows


def cmd_shift(config: RunConfig) -> pd.DataFrame:
    return pd.DataFrame(shift_rows(config, config.potential_spec()), columns=COLUMNS)
