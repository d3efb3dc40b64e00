"""Reading and writing ``.alg`` algebra files.

Two styles share the header and the optional lines::

    size 4
    elements a b c 1
    const top = 1
    box a = a

Table style lists ``m i j k = v`` for every triple; hasse style lists
``cover i < j`` and the table is synthesized.  ``#`` starts a comment.
"""
from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .algebra import FiniteAlgebra, from_hasse
from .errors import DNLabError, HasseError

__all__ = ["AlgebraFileError", "parse_algebra", "load_algebra", "load_class",
           "dump_algebra", "covers_of"]


class AlgebraFileError(DNLabError, ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


def parse_algebra(text: str, source: str = "<string>", label: str = "") -> FiniteAlgebra:
    size = None
    names: list[str] | None = None
    entries: dict[tuple[int, int, int], int] = {}
    covers: list[tuple[int, int]] = []
    consts: dict[str, tuple[int, int]] = {}
    box: dict[int, int] = {}
    style = None
    style_line = 0

    def fail(msg, ln):
        raise AlgebraFileError(msg, source, ln)

    def elem(tok, ln):
        if names is not None and tok in names:
            return names.index(tok)
        if tok.isdigit() and int(tok) < size:
            return int(tok)
        fail(f"unknown element {tok!r}", ln)

    def set_style(s, ln):
        nonlocal style, style_line
        if style is not None and style != s:
            fail(f"mixes {s} lines with {style} lines (first at line {style_line})", ln)
        if style is None:
            style, style_line = s, ln

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.replace("=", " = ").replace("<", " < ").split()
        head = words[0]
        if size is None:
            if head != "size" or len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                fail("expected 'size N' with N >= 1 as the first line", ln)
            size = int(words[1])
            continue
        if head == "size":
            fail("duplicate size line", ln)
        elif head == "elements":
            if names is not None:
                fail("duplicate elements line", ln)
            if style is not None or consts or box:
                fail("elements must precede all other lines", ln)
            names = words[1:]
            if len(names) != size or len(set(names)) != size:
                fail(f"elements must list {size} distinct names", ln)
        elif head == "m":
            set_style("table", ln)
            if len(words) != 6 or words[4] != "=":
                fail("expected 'm i j k = v'", ln)
            key = tuple(elem(w, ln) for w in words[1:4])
            v = elem(words[5], ln)
            if entries.get(key, v) != v:
                fail(f"conflicting value for m{key}", ln)
            entries[key] = v
        elif head == "cover":
            set_style("hasse", ln)
            if len(words) != 4 or words[2] != "<":
                fail("expected 'cover i < j'", ln)
            covers.append((elem(words[1], ln), elem(words[3], ln)))
        elif head == "const":
            if len(words) != 4 or words[2] != "=":
                fail("expected 'const name = v'", ln)
            if words[1] in consts:
                fail(f"duplicate constant {words[1]!r}", ln)
            consts[words[1]] = (elem(words[3], ln), ln)
        elif head == "box":
            if len(words) != 4 or words[2] != "=":
                fail("expected 'box i = v'", ln)
            i = elem(words[1], ln)
            v = elem(words[3], ln)
            if box.get(i, v) != v:
                fail(f"conflicting box value for {words[1]}", ln)
            box[i] = v
        else:
            fail(f"unknown directive {head!r}", ln)

    if size is None:
        fail("empty file", None)
    names = names or [str(i) for i in range(size)]
    if box and len(box) != size:
        missing = [names[i] for i in range(size) if i not in box]
        fail(f"box table is missing elements {missing}", None)
    box_list = [box[i] for i in range(size)] if box else None
    constants = {k: v for k, (v, _) in consts.items()}

    if style == "hasse" or (style is None and size == 1):
        try:
            A = from_hasse(names, covers, constants, box_list, label)
        except HasseError as e:
            raise AlgebraFileError(str(e), source, style_line or None) from e
    else:
        if style is None:
            fail("no 'm' or 'cover' lines", None)
        missing = [t for t in itertools.product(range(size), repeat=3) if t not in entries]
        if missing:
            first = tuple(names[i] for i in missing[0])
            fail(f"table is missing {len(missing)} entries, first m{first}", None)
        table = np.empty((size,) * 3, dtype=np.int64)
        for key, v in entries.items():
            table[key] = v
        A = FiniteAlgebra(table, names, constants, box_list, label)

    if "top" in consts:
        top, ln = consts["top"]
        if not A.leq[:, top].all():
            fail(f"const top = {names[top]} is not the greatest element", ln)
    return A


def load_algebra(path: str | Path) -> FiniteAlgebra:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise AlgebraFileError(e.strerror or str(e), str(path)) from e
    return parse_algebra(text, str(path), label=path.stem)


def load_class(path: str | Path) -> list[FiniteAlgebra]:
    """A directory of *.alg files (sorted by name), a single file, or ``path.alg``."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.alg"), key=_natural_key)
        if not files:
            raise AlgebraFileError("no .alg files in directory", str(path))
        return [load_algebra(f) for f in files]
    if path.is_file():
        return [load_algebra(path)]
    alt = path.with_name(path.name + ".alg")
    if alt.is_file():
        return [load_algebra(alt)]
    raise AlgebraFileError("no such file or directory", str(path))


def _natural_key(p: Path):
    digits = "".join(ch for ch in p.stem if ch.isdigit())
    return (p.stem.rstrip("0123456789"), int(digits) if digits else -1, p.name)


def covers_of(A: FiniteAlgebra) -> list[tuple[int, int]]:
    """Covering pairs (i, j) of the derived order, sorted."""
    lt = A.leq & ~np.eye(A.size, dtype=bool)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]


def dump_algebra(A: FiniteAlgebra, style: str = "hasse", comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [f"size {A.size}", "elements " + " ".join(A.names)]
    nm = A.names
    if style == "hasse":
        lines += [f"cover {nm[i]} < {nm[j]}" for i, j in covers_of(A)]
    elif style == "table":
        for i, j, k in itertools.product(range(A.size), repeat=3):
            lines.append(f"m {nm[i]} {nm[j]} {nm[k]} = {nm[A.m_table[i, j, k]]}")
    else:
        raise ValueError(f"unknown style {style!r}")
    for name, v in A.constants.items():
        lines.append(f"const {name} = {nm[v]}")
    if A.box is not None:
        lines += [f"box {nm[i]} = {nm[v]}" for i, v in enumerate(A.box)]
    return "\n".join(lines) + "\n"
