"""
File formats (.pbf functions, .mla MaxLin instances) and async file IO
"""

import logging
import os
import re
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

import aiofiles

from models.equations import EquationSystem, make_system
from models.errors import ParseError, PBFError
from models.expansion import FourierExpansion, make_expansion, mask_of, members

logger = logging.getLogger(__name__)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_INTEGER = re.compile(r"^[+-]?\d+$")


def _significant_lines(text: str) -> List[Tuple[int, List[str]]]:
    """(1-based line number, tokens) for every non-blank line, comments removed"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            lines.append((number, tokens))
    return lines


def _integer(token: str, line: int, what: str) -> int:
    if not _INTEGER.match(token):
        raise ParseError(f"{what} must be an integer, got {token!r}", line)
    return int(token)


def _indices(tokens: List[str], line: int, n: int) -> int:
    indices = [_integer(t, line, "variable index") for t in tokens]
    for i in indices:
        if i < 1 or i > n:
            raise ParseError(f"variable index {i} outside 1..{n}", line)
    try:
        return mask_of(indices)
    except PBFError as err:
        raise ParseError(str(err), line) from err


def parse_function(text: str) -> FourierExpansion:
    """
    Grammar: first significant line "n <int>"; then "<coef> [i1 ... ik]" per
    term, coef an integer or p/q, empty index list for the constant term.
    """
    lines = _significant_lines(text)
    if not lines:
        raise ParseError("empty function file", 1)

    header_line, header = lines[0]
    if len(header) != 2 or header[0] != "n":
        raise ParseError("expected header 'n <int>'", header_line)
    n = _integer(header[1], header_line, "n")

    terms = []
    term_lines = []
    for number, tokens in lines[1:]:
        if not _RATIONAL.match(tokens[0]):
            raise ParseError(f"coefficient must be an integer or p/q, got {tokens[0]!r}", number)
        try:
            coefficient = Fraction(tokens[0])
        except ZeroDivisionError as err:
            raise ParseError("coefficient has zero denominator", number) from err
        terms.append((_indices(tokens[1:], number, n), coefficient))
        term_lines.append(number)

    try:
        return make_expansion(n, terms)
    except PBFError as err:
        raise _located(err, term_lines, header_line) from err


def parse_maxlin(text: str) -> EquationSystem:
    """
    Grammar: first significant line "maxlin <n> <m> <k>"; then m lines
    "<w> <b> <i1> ... <il>" with l >= 1.
    """
    lines = _significant_lines(text)
    if not lines:
        raise ParseError("empty maxlin file", 1)

    header_line, header = lines[0]
    if len(header) != 4 or header[0] != "maxlin":
        raise ParseError("expected header 'maxlin <n> <m> <k>'", header_line)
    n, m, k = (_integer(t, header_line, name) for t, name in zip(header[1:], ("n", "m", "k")))

    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else header_line)
        raise ParseError(f"header announces {m} equations, found {len(body)}", where)

    equations = []
    for number, tokens in body:
        if len(tokens) < 3:
            raise ParseError("equation needs '<w> <b> <i1> ...' with at least one variable", number)
        w = _integer(tokens[0], number, "weight")
        b = _integer(tokens[1], number, "right-hand side")
        equations.append((_indices(tokens[2:], number, n), b, w))

    try:
        return make_system(n, equations, k)
    except PBFError as err:
        raise _located(err, [number for number, _ in body], header_line) from err


def _located(err: PBFError, item_lines: List[int], header_line: int) -> ParseError:
    line = item_lines[err.position - 1] if err.position else header_line
    return ParseError(f"{type(err).__name__}: {err}", line)


def format_function(f: FourierExpansion, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"n {f.n}")
    for mask, c in f.sorted_terms():
        lines.append(" ".join([str(c)] + [str(i) for i in members(mask)]))
    return "\n".join(lines) + "\n"


def format_system(system: EquationSystem) -> str:
    lines = [f"maxlin {system.n} {system.m} {system.k}"]
    for eq in system.equations:
        lines.append(" ".join([str(eq.w), str(eq.b)] + [str(i) for i in eq.variables]))
    return "\n".join(lines) + "\n"


class FileHandler:
    """
    Reads and writes function and system files
    """

    def __init__(self, max_file_size: int = 50 * 1024 * 1024):
        self.max_file_size = max_file_size
        self.allowed_extensions = {".pbf", ".mla", ".txt"}

    async def read_text(self, path: str) -> str:
        self._validate_file(path)
        async with aiofiles.open(path, "rb") as handle:
            data = await handle.read()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as err:
            line = data.count(b"\n", 0, err.start) + 1
            raise ParseError(f"invalid UTF-8 at byte {err.start}", line) from err
        logger.debug(f"Read {len(text)} chars from {path}")
        return text

    async def write_text(self, path: str, text: str) -> None:
        async with aiofiles.open(path, "w", encoding="utf-8") as handle:
            await handle.write(text)
        logger.info(f"Wrote {path}")

    async def load_function(self, path: str) -> FourierExpansion:
        return parse_function(await self.read_text(path))

    async def load_system(self, path: str) -> EquationSystem:
        return parse_maxlin(await self.read_text(path))

    def _validate_file(self, path: str) -> None:
        if not os.path.isfile(path):
            raise FileNotFoundError(f"File not found: {path}")
        if os.path.getsize(path) > self.max_file_size:
            raise ValueError(f"File {path} exceeds maximum size of {self.max_file_size} bytes")
        extension = Path(path).suffix.lower()
        if extension not in self.allowed_extensions:
            logger.warning(f"Unexpected extension {extension!r} for {path}")
