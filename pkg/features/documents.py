"""Grid-text and JSON serialization of arrays.

Grid format: a header line ``H n k [route]`` followed by n rows of n
space-separated cells, ``.`` marking an empty cell. JSON format: one line
holding an object with the fields n, k, rows and provenance.
"""

import json
import re
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from core.errors import DocumentParseError, StructuralError
from core.models import Cell, HeffterArray
from utils.helpers import EMPTY_CELL, TextHelper

DocumentFormat = Literal["grid", "json"]

_TOKEN = re.compile(r"\S+")


class ArrayDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    rows: List[List[Optional[int]]]
    provenance: Optional[str] = None

    @classmethod
    def from_array(cls, array: HeffterArray) -> "ArrayDocument":
        return cls(n=array.n, k=array.k, rows=array.rows_as_lists(), provenance=array.provenance)

    def to_array(self) -> HeffterArray:
        return HeffterArray(n=self.n, k=self.k, grid=self.rows, provenance=self.provenance)


def format_grid(doc: ArrayDocument) -> str:
    header = f"H {doc.n} {doc.k}"
    if doc.provenance:
        header += f" {doc.provenance}"
    return "\n".join([header, *TextHelper.format_rows(doc.rows)]) + "\n"


def format_json(doc: ArrayDocument) -> str:
    return doc.model_dump_json() + "\n"


def format_document(doc: ArrayDocument, fmt: DocumentFormat = "grid") -> str:
    return format_json(doc) if fmt == "json" else format_grid(doc)


def _parse_int(token: str, line: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DocumentParseError(f"expected {what}, found {token!r}", line=line, column=column) from None


def _checked(doc: ArrayDocument, line: int, column: int) -> ArrayDocument:
    """Reject documents whose rows do not form an n x n grid of nonzero integers."""
    try:
        doc.to_array()
    except StructuralError as e:
        raise DocumentParseError(str(e), line=line, column=column) from None
    except ValidationError as e:
        raise DocumentParseError(e.errors()[0]["msg"], line=line, column=column) from None
    return doc


def _key_location(text: str, key: str) -> Tuple[int, int]:
    match = re.search(rf'"{key}"\s*:', text)
    if match is None:
        return 1, 1
    offset = match.start()
    return text.count("\n", 0, offset) + 1, offset - (text.rfind("\n", 0, offset) + 1) + 1


def parse_grid(text: str) -> ArrayDocument:
    lines = [(number, raw) for number, raw in enumerate(text.splitlines(), start=1) if raw.strip()]
    if not lines:
        raise DocumentParseError("document is empty", line=1, column=1)

    header_line, header = lines[0]
    tokens = list(_TOKEN.finditer(header))
    if tokens[0].group() != "H" or len(tokens) not in (3, 4):
        raise DocumentParseError("header must read 'H n k [route]'", line=header_line, column=tokens[0].start() + 1)
    n = _parse_int(tokens[1].group(), header_line, tokens[1].start() + 1, "the side n")
    k = _parse_int(tokens[2].group(), header_line, tokens[2].start() + 1, "the fill k")
    provenance = tokens[3].group() if len(tokens) == 4 else None
    if n < 1:
        raise DocumentParseError(f"side must be positive, got {n}", line=header_line, column=tokens[1].start() + 1)

    body = lines[1:]
    if len(body) != n:
        last_line = body[-1][0] + 1 if body else header_line + 1
        raise DocumentParseError(f"expected {n} rows, found {len(body)}", line=last_line, column=1)

    rows: List[List[Cell]] = []
    for number, raw in body:
        cells: List[Cell] = []
        for match in _TOKEN.finditer(raw):
            token = match.group()
            if len(cells) == n:
                raise DocumentParseError(f"row has more than {n} cells", line=number, column=match.start() + 1)
            if token == EMPTY_CELL:
                cells.append(None)
            else:
                value = _parse_int(token, number, match.start() + 1, f"an integer or '{EMPTY_CELL}'")
                if value == 0:
                    raise DocumentParseError("0 is not a valid entry", line=number, column=match.start() + 1)
                cells.append(value)
        if len(cells) != n:
            raise DocumentParseError(f"row has {len(cells)} cells, expected {n}", line=number, column=len(raw.rstrip()) + 1)
        rows.append(cells)
    return _checked(ArrayDocument(n=n, k=k, rows=rows, provenance=provenance), header_line, 1)


def parse_json(text: str) -> ArrayDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentParseError(e.msg, line=e.lineno, column=e.colno) from None
    try:
        doc = ArrayDocument.model_validate(data)
    except ValidationError as e:
        raise DocumentParseError(f"invalid array document: {e.errors()[0]['msg']}", line=1, column=1) from None
    line, column = _key_location(text, "rows")
    return _checked(doc, line, column)


def parse_document(text: str) -> ArrayDocument:
    """Detect the format from the first non-blank character."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_grid(text)


def load_document(path: Union[str, Path]) -> ArrayDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def load_array(path: Union[str, Path]) -> HeffterArray:
    return load_document(path).to_array()


def write_document(doc: ArrayDocument, path: Union[str, Path], fmt: DocumentFormat = "grid") -> None:
    Path(path).write_text(format_document(doc, fmt), encoding="utf-8")
