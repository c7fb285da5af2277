#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Report model and its markdown, JSON and CSV renderings.

Reports carry no timestamps and render floats with ``repr``, so the same
command with the same arguments always produces the same bytes.
"""

import csv
import io
import json
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field

from peulab import __version__
from peulab.exceptions import DomainError
from peulab.utils.logger import get_logger

logger = get_logger(__name__)

Cell = Union[bool, int, float, str, None]

FORMATS = ("md", "json", "csv")


class Table(BaseModel):
    """A named result table."""
    name: str
    columns: List[str]
    rows: List[List[Cell]] = Field(default_factory=list)


class Provenance(BaseModel):
    """Everything needed to rerun the command that built a report."""
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    version: str = __version__


class Report(BaseModel):
    """Structured command output."""
    title: str
    command: str
    tables: List[Table] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    provenance: Provenance

    def add_table(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[Cell]]) -> Table:
        table = Table(name=name, columns=list(columns), rows=[list(row) for row in rows])
        self.tables.append(table)
        return table

    def table(self, name: str) -> Table:
        for table in self.tables:
            if table.name == name:
                return table
        raise KeyError(name)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate_json(text)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["# report", self.title])
        for note in self.notes:
            writer.writerow(["# note", note])
        for table in self.tables:
            writer.writerow([])
            writer.writerow(["# table", table.name])
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([format_cell(cell) for cell in row])
        writer.writerow([])
        writer.writerow(["# provenance", _provenance_json(self.provenance)])
        return buffer.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# {self.title}", ""]
        if self.notes:
            lines.extend(f"- {note}" for note in self.notes)
            lines.append("")
        for table in self.tables:
            lines.append(f"## {table.name}")
            lines.append("")
            lines.append("| " + " | ".join(table.columns) + " |")
            lines.append("|" + "|".join("---" for _ in table.columns) + "|")
            for row in table.rows:
                lines.append("| " + " | ".join(format_cell(cell) for cell in row) + " |")
            lines.append("")
        lines.extend(["## provenance", "", "```json", _provenance_json(self.provenance), "```", ""])
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "md":
            return self.to_markdown()
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise DomainError(f"unknown output format '{fmt}', expected one of {FORMATS}")


def format_cell(value: Cell) -> str:
    """Text for one table cell: floats by repr, booleans in lower case, None empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _provenance_json(provenance: Provenance) -> str:
    return json.dumps(provenance.model_dump(mode="json"), sort_keys=True, ensure_ascii=False)


def write_report(report: Report, fmt: str, output: Optional[str] = None) -> str:
    """
    Render a report and write it to ``output`` or standard output.

    Args:
        report: Report to write
        fmt: One of "md", "json", "csv"
        output: File path; standard output if None

    Returns:
        The rendered text
    """
    text = report.render(fmt)
    if output:
        os.makedirs(os.path.dirname(os.path.abspath(output)), exist_ok=True)
        with open(output, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"Report written to: {output}")
    else:
        sys.stdout.write(text)
    return text
