import pandas as pd

from models.perturb import regime_check
from models.run_config import RunConfig

COLUMNS = ["quantity", "value", "unit"]


def cmd_regime(config: RunConfig) -> pd.DataFrame:
    """Scale comparison for a hydrogen gas at the configured pressure and temperature, level n_min."""
    report = regime_check(config.pressure, config.temperature, config.n_min)
    rows = [(name, value, unit) for name, value, unit in report.rows()]
    rows += [(name, flag, "flag") for name, flag in report.flags()]
    return pd.DataFrame(rows, columns=COLUMNS)
