"""Project file reading and writing.

Grammar:

    critpath v1 <cpm|pert>
    # comment
    <name> <from> <to> <duration>          fixed duration
    <name> <from> <to> <a> <m> <b>         three-point estimate (pert only)

Numbers are integers, decimals or exact rationals ("37/6"). Blank
lines and text after `#` are ignored.
"""
import logging
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from critpath.errors import ProjectParseError
from critpath.models import Activity, ProjectDocument, ThreePointEstimate
from critpath.utils import format_exact, to_fraction

logger = logging.getLogger(__name__)

FORMAT_NAME = "critpath"
FORMAT_VERSION = "v1"
MODES = ("cpm", "pert")

_ESTIMATE_FIELDS = ("a", "m", "b")


def _number(token: str, line: int, field: str):
    try:
        value = to_fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ProjectParseError(f"malformed number {token!r}", line=line, field=field)
    if value < 0:
        raise ProjectParseError(f"negative time {token!r}", line=line, field=field)
    return value


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _parse_header(tokens: List[str], line: int) -> str:
    if len(tokens) != 3 or tokens[0] != FORMAT_NAME:
        raise ProjectParseError(f"expected header '{FORMAT_NAME} {FORMAT_VERSION} <cpm|pert>'",
                                line=line, field="header")
    if tokens[1] != FORMAT_VERSION:
        raise ProjectParseError(f"unsupported version {tokens[1]!r}", line=line, field="version")
    if tokens[2] not in MODES:
        raise ProjectParseError(f"unknown mode {tokens[2]!r}", line=line, field="mode")
    return tokens[2]


def _parse_activity(tokens: List[str], mode: str, line: int) -> Activity:
    if len(tokens) == 4:
        duration = _number(tokens[3], line, "duration")
    elif len(tokens) == 6:
        if mode == "cpm":
            raise ProjectParseError("three-point estimate in cpm mode", line=line, field="duration")
        a, m, b = (_number(tok, line, name) for tok, name in zip(tokens[3:], _ESTIMATE_FIELDS))
        if not a <= m <= b:
            raise ProjectParseError(f"estimate order violated (a={a}, m={m}, b={b})", line=line, field="m")
        duration = ThreePointEstimate(a=a, m=m, b=b)
    else:
        raise ProjectParseError(f"expected 4 or 6 fields, got {len(tokens)}", line=line)

    name, from_node, to_node = tokens[:3]
    if from_node == to_node:
        raise ProjectParseError(f"self-loop on node {from_node}", line=line, field="to")
    try:
        return Activity(name=name, from_node=from_node, to_node=to_node, duration=duration)
    except ValidationError as e:
        raise ProjectParseError(str(e), line=line)


def parse_project(document: str) -> ProjectDocument:
    """Parse project text into a ProjectDocument.

    Args:
        document: Full file content

    Returns:
        ProjectDocument (mode + activities in file order)

    Raises:
        ProjectParseError: malformed field, unknown mode, triple in cpm
            mode or an empty activity list; the message carries the
            line number and field
    """
    mode = None
    activities: List[Activity] = []
    last_line = 0
    for line_no, raw in enumerate(document.splitlines(), start=1):
        last_line = line_no
        text = _strip_comment(raw)
        if not text:
            continue
        tokens = text.split()
        if mode is None:
            mode = _parse_header(tokens, line_no)
            continue
        activities.append(_parse_activity(tokens, mode, line_no))

    if mode is None:
        raise ProjectParseError("missing header", line=1, field="header")
    if not activities:
        raise ProjectParseError("empty activity list", line=last_line)

    logger.info(f"Parsed {len(activities)} activities ({mode})")
    return ProjectDocument(mode=mode, activities=tuple(activities))


def load_project(path: Union[str, Path]) -> ProjectDocument:
    """Read and parse a project file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError:
        raise ProjectParseError("file is not valid UTF-8", field="encoding")
    return parse_project(text)


def dump_project(document: ProjectDocument) -> str:
    """Serialize a document in the project file grammar.

    Durations are written as exact rationals, so parsing the output
    gives back an equal document. Virtual arcs are skipped.
    """
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION} {document.mode}"]
    for activity in document.activities:
        if activity.virtual:
            continue
        if isinstance(activity.duration, ThreePointEstimate):
            est = activity.duration
            times = " ".join(format_exact(t) for t in (est.a, est.m, est.b))
        else:
            times = format_exact(activity.duration)
        lines.append(f"{activity.name} {activity.from_node} {activity.to_node} {times}")
    return "\n".join(lines) + "\n"
