"""Utility functions for critpath."""
import json
import re
import time
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Tuple, Union

Number = Union[int, float, str, Decimal, Fraction]

_DIGITS = re.compile(r'(\d+)')


def get_project_root() -> Path:
    """Get the project root directory."""
    return Path(__file__).parent.parent


def to_fraction(value: Number) -> Fraction:
    """Convert a number to an exact Fraction.

    Floats go through their shortest decimal repr, so 0.1 becomes 1/10
    rather than the binary approximation.

    Args:
        value: int, float, Decimal, Fraction or numeric string ("5", "1.5", "37/6")

    Returns:
        Exact rational value
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a duration")
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_time(value: Fraction, fixed_decimals: bool = False) -> str:
    """Format a duration for display.

    Integral values print without decimals unless fixed_decimals is set;
    everything else is rounded to 2 decimals.
    """
    if value.denominator == 1 and not fixed_decimals:
        return str(value.numerator)
    return f"{Decimal(value.numerator) / Decimal(value.denominator):.2f}"


def format_exact(value: Fraction) -> str:
    """Exact rational text ("51", "37/6") that Fraction() parses back."""
    return str(value)


def natural_key(node: str) -> Tuple[Tuple[int, Any], ...]:
    """Sort key comparing digit runs numerically ("D2" < "D10", "2" < "10")."""
    parts = []
    for chunk in _DIGITS.split(node):
        if not chunk:
            continue
        if chunk.isdigit():
            parts.append((0, int(chunk)))
        else:
            parts.append((1, chunk))
    return tuple(parts)


def node_label(node: str) -> str:
    """Display label for a node: numeric ids follow the D1..Dn convention."""
    return f"D{node}" if node.isdigit() else node


def path_label(nodes: Iterable[str], sep: str = "-") -> str:
    """Join node labels into a path string such as D1-D3-D4."""
    return sep.join(node_label(n) for n in nodes)


def ensure_dir(path: Path) -> Path:
    """Ensure directory exists, create if not."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def save_json(path: Path, data: Dict[str, Any]) -> None:
    """Save JSON file."""
    ensure_dir(path.parent)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)


def timeit(fn, *args, **kwargs):
    """Time a function call and return result with timing.

    Args:
        fn: Function to call
        *args: Positional arguments
        **kwargs: Keyword arguments

    Returns:
        (result, elapsed_seconds)
    """
    t0 = time.perf_counter()
    res = fn(*args, **kwargs)
    return res, time.perf_counter() - t0
