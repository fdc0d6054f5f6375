"""Sweep tables and their CSV/JSON renderings."""

import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config import TOOL_NAME, TOOL_VERSION

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


@dataclass
class SweepTable:
    """Ordered rows of computed quantities with a metadata header.

    Attributes:
        headers: Column names
        rows: Numeric rows, each as wide as headers, in sweep order
        metadata: Config echo, tool version and seed
    """
    headers: List[str]
    rows: List[List[float]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, row: Sequence[float]) -> None:
        """Append a row.

        Raises:
            ValueError if the row width differs from the header width
        """
        if len(row) != len(self.headers):
            raise ValueError(
                f"Row width {len(row)} does not match header width {len(self.headers)}"
            )
        self.rows.append([_plain_number(x) for x in row])

    def extend(self, rows: Sequence[Sequence[float]]) -> None:
        for row in rows:
            self.add_row(row)

    def column(self, name: str) -> List[float]:
        index = self.headers.index(name)
        return [row[index] for row in self.rows]

    def to_csv(self) -> str:
        """CSV text: '#'-prefixed metadata lines, a header row, then the rows."""
        buffer = io.StringIO()
        for key, value in self.metadata.items():
            buffer.write(f"# {key}: {json.dumps(value, sort_keys=True, separators=(',', ':'))}\n")
        data = np.asarray(self.rows, dtype=float).reshape(-1, len(self.headers))
        np.savetxt(buffer, data, fmt=CSV_FLOAT_FORMAT, delimiter=",",
                   header=",".join(self.headers), comments="")
        return buffer.getvalue()

    def to_json(self) -> str:
        """Strict JSON; NaN and infinities are written as null."""
        rows = [[_json_number(x) for x in row] for row in self.rows]
        document = {"metadata": self.metadata, "headers": self.headers, "rows": rows}
        return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()

    def write(self, path: Optional[str], fmt: str) -> str:
        """Write the table to path (or return it only, when path is None).

        Returns:
            The rendered text
        """
        text = self.render(fmt)
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            logger.info(f"Wrote {len(self.rows)} rows to {path} ({fmt})")
        return text


def _plain_number(value):
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def _json_number(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def build_metadata(command: str, config_echo: Dict[str, Any], seed: int) -> Dict[str, Any]:
    """Metadata block echoed into every output file."""
    return {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": command,
        "seed": seed,
        "config": config_echo,
    }


def read_csv_metadata(text: str) -> Dict[str, Any]:
    """Parse the '#'-prefixed metadata lines of a CSV table back into a dict."""
    metadata = {}
    for line in text.splitlines():
        if not line.startswith("# "):
            break
        key, _, value = line[2:].partition(": ")
        metadata[key] = json.loads(value)
    return metadata
