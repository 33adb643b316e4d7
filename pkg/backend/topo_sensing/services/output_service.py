import json
from pathlib import Path
from typing import Optional

import pandas as pd


def render_table(df: pd.DataFrame, fmt: str) -> str:
    """
    Canonical text form of a result table:
    CSV with header, 17 significant digits and '\\n' line endings, or a JSON list of
    records with missing values as null.
    """
    if fmt == "csv":
        return df.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    # NaN -> null
    records = df.astype(object).where(df.notna(), None).to_dict(orient="records")
    return json.dumps(records, sort_keys=True) + "\n"


def write_output(text: str, output: Optional[str]) -> Optional[Path]:
    """Write to ``output`` if given; returns the path written (None means stdout)."""
    if not output:
        print(text, end="")
        return None
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def all_rows_failed(df: pd.DataFrame) -> bool:
    if df.empty or "flags" not in df.columns:
        return False
    return bool(df["flags"].fillna("").astype(str).str.startswith("error").all())
