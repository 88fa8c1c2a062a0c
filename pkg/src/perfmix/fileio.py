"""Plain-text formats for codes, partitions, quasigroups and permutations.

Code::

    space q1 q2 ... qn
    w1 w2 ... wn            # one codeword per line, field indices

Partition (class ids are 1-based)::

    partition q n t
    CLASSID: w1 w2 ... wn

Quasigroup (several blocks may follow one another in one file)::

    qgroup ARITY ORDER
    j2 j3 ... jn -> j1      # ORDER**ARITY lines, lexicographic arguments

Permutation: 1-based images on whitespace-separated tokens.

``#`` starts a comment anywhere.  Writes go through a temporary file and an
atomic rename, so a failed run leaves no partial output.
"""

from __future__ import annotations

import json
import os
import tempfile
from itertools import product
from pathlib import Path

import numpy as np

from .mdsq import Quasigroup
from .partition import Partition
from .space import Code, MixedSpace


class FormatError(ValueError):
    pass


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj) -> None:
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ------------------------------------------------------------------ codes


def format_code(C: Code) -> str:
    out = ["space " + " ".join(map(str, C.space.orders))]
    out += [" ".join(map(str, w)) for w in C.words.tolist()]
    return "\n".join(out) + "\n"


def parse_code(text: str, require_zero: bool = False) -> Code:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise FormatError("empty code file") from None
    tok = head.split()
    if tok[0] != "space" or len(tok) < 2:
        raise FormatError(f"line {no}: expected 'space q1 ... qn'")
    try:
        space = MixedSpace([int(x) for x in tok[1:]])
        rows = [[int(x) for x in line.split()] for _, line in it]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if not rows:
        raise FormatError("code file holds no codewords")
    if any(len(r) != space.n for r in rows):
        raise FormatError(f"every codeword needs {space.n} symbols")
    return Code(space, np.array(rows, dtype=np.int64), require_zero=require_zero)


def write_code(path, C: Code) -> None:
    atomic_write(path, format_code(C))


def read_code(path, require_zero: bool = False) -> Code:
    return parse_code(Path(path).read_text(encoding="utf-8"), require_zero)


# ------------------------------------------------------------- partitions


def format_partition(p: Partition) -> str:
    space = p.space
    if not space.is_qary:
        raise FormatError("partition files hold q-ary codes only")
    out = [f"partition {space.q} {space.n} {len(p.classes)}"]
    for i, c in enumerate(p.classes, 1):
        out += [f"{i}: " + " ".join(map(str, w)) for w in c.words.tolist()]
    return "\n".join(out) + "\n"


def parse_partition(text: str, class_params=None) -> Partition:
    """Classes keep their file order.  Without ``class_params`` a length q^m
    partition declares order (q-1)m-2."""
    it = _lines(text)
    try:
        no, head = next(it)
        tok = head.split()
        if tok[0] != "partition" or len(tok) != 4:
            raise FormatError(f"line {no}: expected 'partition q n t'")
        q, n, t = (int(x) for x in tok[1:])
    except StopIteration:
        raise FormatError("empty partition file") from None
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    rows: list[list[list[int]]] = [[] for _ in range(t)]
    for no, line in it:
        cid, _, rest = line.partition(":")
        try:
            k = int(cid)
            w = [int(x) for x in rest.split()]
        except ValueError:
            raise FormatError(f"line {no}: expected 'CLASSID: w1 ... wn'") from None
        if not 1 <= k <= t or len(w) != n:
            raise FormatError(f"line {no}: class id or word length out of range")
        rows[k - 1].append(w)
    if any(not r for r in rows):
        raise FormatError("every class needs at least one word")
    space = MixedSpace.qary(q, n)
    classes = [Code(space, np.array(r, dtype=np.int64), require_zero=False) for r in rows]
    if class_params is None:
        m = 0
        while q**m < n:
            m += 1
        if q**m == n:
            class_params = (q, m, (q - 1) * m - 2)
    target = classes[0].union(*classes[1:])
    return Partition(target, classes, class_params, canonical=False)


def write_partition(path, p: Partition) -> None:
    atomic_write(path, format_partition(p))


def read_partition(path, class_params=None) -> Partition:
    return parse_partition(Path(path).read_text(encoding="utf-8"), class_params)


# ------------------------------------------------------------ quasigroups


def format_quasigroup(g: Quasigroup) -> str:
    out = [f"qgroup {g.arity} {g.order}"]
    args = product(range(1, g.order + 1), repeat=g.arity)
    for a, v in zip(args, g.table.reshape(-1).tolist()):
        out.append(" ".join(map(str, a)) + f" -> {v}")
    return "\n".join(out) + "\n"


def parse_quasigroups(text: str) -> list[Quasigroup]:
    out = []
    lines = list(_lines(text))
    i = 0
    while i < len(lines):
        no, head = lines[i]
        tok = head.split()
        if tok[0] != "qgroup" or len(tok) != 3:
            raise FormatError(f"line {no}: expected 'qgroup ARITY ORDER'")
        arity, order = int(tok[1]), int(tok[2])
        cells = order**arity
        body = lines[i + 1 : i + 1 + cells]
        if len(body) != cells:
            raise FormatError(f"line {no}: expected {cells} table lines")
        table = np.zeros((order,) * arity, dtype=np.int64)
        expect = product(range(1, order + 1), repeat=arity)
        for (bno, line), want in zip(body, expect):
            lhs, sep, rhs = line.partition("->")
            try:
                args = tuple(int(x) for x in lhs.split())
                val = int(rhs)
            except ValueError:
                raise FormatError(f"line {bno}: expected 'j2 ... jn -> j1'") from None
            if not sep or args != want:
                raise FormatError(f"line {bno}: arguments {args} out of lexicographic order")
            table[tuple(a - 1 for a in args)] = val
        out.append(Quasigroup(table))
        i += 1 + cells
    if not out:
        raise FormatError("no quasigroup blocks")
    return out


def write_quasigroups(path, gs) -> None:
    atomic_write(path, "".join(format_quasigroup(g) for g in gs))


def read_quasigroups(path) -> list[Quasigroup]:
    return parse_quasigroups(Path(path).read_text(encoding="utf-8"))


# ----------------------------------------------------------- permutations


def parse_perm(text: str) -> list[int]:
    """1-based images in the file, 0-based list in memory."""
    try:
        vals = [int(x) for _, line in _lines(text) for x in line.split()]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise FormatError(f"not a permutation of 1..{len(vals)}: {vals}")
    return [v - 1 for v in vals]


def format_perm(perm) -> str:
    return " ".join(str(int(v) + 1) for v in perm) + "\n"


def read_perm(path) -> list[int]:
    return parse_perm(Path(path).read_text(encoding="utf-8"))
