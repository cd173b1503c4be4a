"""Pandera DataFrame validation schemas for emitted tables.

Function tables (`pqtrig table`), ODE oracle tables and suite report frames
are validated before they are written or compared.

Usage:
    from pqtrig.schemas import validate_df
    df = validate_df(df, "function_table")  # raises SchemaError with the expected columns
"""

from __future__ import annotations

import numpy as np
import pandas as pd
import pandera as pa
from pandera import Check, Column, DataFrameSchema


def _finite(series: pd.Series) -> pd.Series:
    return pd.Series(np.isfinite(series.to_numpy(dtype=float)), index=series.index)


def _strictly_increasing(df: pd.DataFrame) -> bool:
    return bool(df["x"].is_monotonic_increasing and df["x"].is_unique)


_X_INCREASING = Check(_strictly_increasing, error="x must be strictly increasing")


# ---------------------------------------------------------------------------
# Schema definitions
# ---------------------------------------------------------------------------

FUNCTION_TABLE_SCHEMA = DataFrameSchema(
    {
        "x": Column(float, [Check.ge(0), Check(_finite)], nullable=False, coerce=True),
        "value": Column(float, Check(_finite), nullable=False, coerce=True),
    },
    checks=[_X_INCREASING],
    strict=True,
    coerce=True,
)

# u' = (1 - u^q)^{1/p}: both the solution and its slope stay in [0, 1]
ODE_TABLE_SCHEMA = DataFrameSchema(
    {
        "x": Column(float, [Check.ge(0), Check(_finite)], nullable=False, coerce=True),
        "u": Column(float, Check.in_range(0, 1), nullable=False, coerce=True),
        "du": Column(float, Check.in_range(0, 1), nullable=False, coerce=True),
    },
    checks=[_X_INCREASING],
    strict=True,
    coerce=True,
)

# u' = (1 + u^q)^{1/p}: u >= 0, slope >= 1
ODE_SINH_TABLE_SCHEMA = DataFrameSchema(
    {
        "x": Column(float, [Check.ge(0), Check(_finite)], nullable=False, coerce=True),
        "u": Column(float, [Check.ge(0), Check(_finite)], nullable=False, coerce=True),
        "du": Column(float, [Check.ge(1), Check(_finite)], nullable=False, coerce=True),
    },
    checks=[_X_INCREASING],
    strict=True,
    coerce=True,
)

CHECK_REPORTS_SCHEMA = DataFrameSchema(
    {
        "name": Column(str, nullable=False, unique=True),
        "grid": Column(str, nullable=False),
        "max_residual": Column(float, Check.ge(0), nullable=False, coerce=True),
        "worst_point": Column(float, nullable=True, coerce=True),
        "passed": Column(bool, nullable=False),
        "tolerance": Column(float, Check.gt(0), nullable=False, coerce=True),
        "indeterminate": Column(int, Check.ge(0), nullable=False, coerce=True),
    },
    strict=False,  # detail columns may ride along
    coerce=True,
)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_SCHEMAS: dict[str, DataFrameSchema] = {
    "function_table": FUNCTION_TABLE_SCHEMA,
    "ode_table": ODE_TABLE_SCHEMA,
    "ode_sinh_table": ODE_SINH_TABLE_SCHEMA,
    "check_reports": CHECK_REPORTS_SCHEMA,
}


def validate_df(df: pd.DataFrame, table: str) -> pd.DataFrame:
    """Validate a DataFrame against the schema registered for a table.

    Raises:
        pa.errors.SchemaError: If validation fails; the message lists the expected columns.
        ValueError: If the table has no schema.
    """
    schema = _SCHEMAS.get(table)
    if schema is None:
        raise ValueError(f"No schema for table '{table}'. Available: {list_validated_tables()}")

    try:
        return schema.validate(df)
    except (pa.errors.SchemaError, pa.errors.SchemaErrors) as e:
        # some pandera versions report strict-column failures as SchemaErrors
        msg = f"{e}\n  Hint: '{table}' expects columns {list(schema.columns)}"
        raise pa.errors.SchemaError(schema=schema, data=df, message=msg) from e


def list_validated_tables() -> list[str]:
    """Return the table names that have validation schemas."""
    return list(_SCHEMAS.keys())
