import logging

import pandas as pd

from models.run_config import RunConfig

from .shift import COLUMNS, shift_rows

logger = logging.getLogger(__name__)

UNITS = {"lambda": "Ry/a0^2", "z0": "a0", "gamma": "Ry/a0^2", "beta": "1", "d": "a0"}


def _parameter_column(config: RunConfig) -> str:
    unit = UNITS[config.scan_variable]
    if config.scan_variable == "lambda" and config.potential == "linear":
        unit = "Ry/a0"
    return f"{config.scan_variable} [{unit}]"


def cmd_scan(config: RunConfig) -> pd.DataFrame:
    """Long-format closed-form shifts, one block of shift rows per scanned parameter value."""
    rows = []
    values = config.scan_values()
    for value in values:
        potential = config.potential_spec(**{config.scan_variable: value})
        rows.extend((value,) + row for row in shift_rows(config, potential))
    logger.info("scan over %s: %d values, %d rows", config.scan_variable, len(values), len(rows))
    return pd.DataFrame(rows, columns=[_parameter_column(config)] + COLUMNS)
