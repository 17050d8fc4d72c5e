"""Leveled alternating AND/OR circuits: text format, evaluation, DNF export.

Format (``#`` starts a comment, blank lines ignored)::

    circuit n=3
    level 1 AND
    g1.1 = x1, x2
    g1.2 = x1, ~x3
    level 2 OR
    g2.1 = g1.1, g1.2

Level-1 operands are literals ``x<i>`` / ``~x<i>``; level ``t > 1`` operands
are gates ``g<t-1>.<j>``.  Gates in a level are numbered ``1, 2, ...`` in order.
Operands may be separated by commas and/or spaces.  Gate types must alternate
and the last level must hold exactly one gate, the output.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .core import MAX_VARS, TruthTable, _cube_assignments


class CircuitSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CircuitStructureError(ValueError):
    pass


@dataclass(frozen=True)
class Level:
    kind: str  # "AND" | "OR"
    gates: tuple[tuple, ...]


@dataclass(frozen=True)
class Circuit:
    """Level 1 gates hold literals ``(i, negated)``; higher gates hold 0-based indices."""

    n: int
    levels: tuple[Level, ...]

    def __post_init__(self):
        validate(self)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def size(self) -> int:
        return sum(len(lv.gates) for lv in self.levels)


def validate(c: Circuit) -> None:
    if not 1 <= c.n <= MAX_VARS:
        raise CircuitStructureError(f"n={c.n} out of range")
    if not c.levels:
        raise CircuitStructureError("circuit has no levels")
    for t, lv in enumerate(c.levels, start=1):
        if lv.kind not in ("AND", "OR"):
            raise CircuitStructureError(f"level {t}: unknown gate type {lv.kind!r}")
        if t > 1 and lv.kind == c.levels[t - 2].kind:
            raise CircuitStructureError(f"level {t}: gate types must alternate, got {lv.kind} twice")
        if not lv.gates:
            raise CircuitStructureError(f"level {t} has no gates")
        for j, gate in enumerate(lv.gates, start=1):
            if not gate:
                raise CircuitStructureError(f"gate g{t}.{j} has fan-in 0")
            for op in gate:
                if t == 1:
                    i, _neg = op
                    if not 1 <= i <= c.n:
                        raise CircuitStructureError(f"gate g1.{j}: input x{i} does not exist (n={c.n})")
                elif not 0 <= op < len(c.levels[t - 2].gates):
                    raise CircuitStructureError(f"gate g{t}.{j}: reference g{t - 1}.{op + 1} does not exist")
    if len(c.levels[-1].gates) != 1:
        raise CircuitStructureError(f"output level must have exactly one gate, has {len(c.levels[-1].gates)}")


_HEADER = re.compile(r"circuit\s+n\s*=\s*(\d+)\s*$")
_LEVEL = re.compile(r"level\s+(\d+)\s+(\w+)\s*$")
_GATE = re.compile(r"g(\d+)\.(\d+)\s*=\s*")
_LITERAL = re.compile(r"(~?)x(\d+)$")
_GATEREF = re.compile(r"g(\d+)\.(\d+)$")


def parse_circuit(text: str) -> Circuit:
    n = None
    levels: list[tuple[str, list]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col0 = len(line) - len(stripped) + 1
        if n is None:
            m = _HEADER.match(stripped)
            if not m:
                raise CircuitSyntaxError("expected header 'circuit n=<int>'", lineno, col0)
            n = int(m.group(1))
            if not 1 <= n <= MAX_VARS:
                raise CircuitSyntaxError(f"n={n} out of range [1, {MAX_VARS}]", lineno, col0 + m.start(1))
            continue
        if stripped.startswith("level"):
            m = _LEVEL.match(stripped)
            if not m:
                raise CircuitSyntaxError("expected 'level <t> <AND|OR>'", lineno, col0)
            t, kind = int(m.group(1)), m.group(2).upper()
            if kind not in ("AND", "OR"):
                raise CircuitSyntaxError(f"unknown gate type {m.group(2)!r}", lineno, col0 + m.start(2))
            if t != len(levels) + 1:
                raise CircuitSyntaxError(f"expected level {len(levels) + 1}, got {t}", lineno, col0 + m.start(1))
            if levels and levels[-1][0] == kind:
                raise CircuitStructureError(f"line {lineno}: level {t} repeats gate type {kind}; types must alternate")
            levels.append((kind, []))
            continue
        m = _GATE.match(stripped)
        if not m:
            raise CircuitSyntaxError("expected a gate line 'g<t>.<j> = ...'", lineno, col0)
        if not levels:
            raise CircuitSyntaxError("gate before any level declaration", lineno, col0)
        t, j = int(m.group(1)), int(m.group(2))
        gates = levels[-1][1]
        if t != len(levels):
            raise CircuitSyntaxError(f"gate g{t}.{j} declared inside level {len(levels)}", lineno, col0)
        if j != len(gates) + 1:
            raise CircuitSyntaxError(f"expected gate g{t}.{len(gates) + 1}, got g{t}.{j}", lineno, col0)
        ops = []
        rest_start = m.end()
        for tok in re.finditer(r"[^,\s]+", stripped[rest_start:]):
            col = col0 + rest_start + tok.start()
            word = tok.group(0)
            if t == 1:
                lm = _LITERAL.match(word)
                if not lm:
                    raise CircuitSyntaxError(f"expected literal x<i> or ~x<i>, got {word!r}", lineno, col)
                i = int(lm.group(2))
                if not 1 <= i <= n:
                    raise CircuitStructureError(f"line {lineno}, column {col}: input x{i} does not exist (n={n})")
                ops.append((i, lm.group(1) == "~"))
            else:
                gm = _GATEREF.match(word)
                if not gm:
                    raise CircuitSyntaxError(f"expected gate reference g{t - 1}.<j>, got {word!r}", lineno, col)
                tt_, jj = int(gm.group(1)), int(gm.group(2))
                if tt_ != t - 1 or not 1 <= jj <= len(levels[-2][1]):
                    raise CircuitStructureError(f"line {lineno}, column {col}: dangling reference {word}")
                ops.append(jj - 1)
        if not ops:
            raise CircuitSyntaxError("gate has no operands", lineno, col0 + rest_start)
        gates.append(tuple(ops))
    if n is None:
        raise CircuitSyntaxError("empty circuit description", 1, 1)
    return Circuit(n, tuple(Level(kind, tuple(g)) for kind, g in levels))


def format_circuit(c: Circuit) -> str:
    lines = [f"circuit n={c.n}"]
    for t, lv in enumerate(c.levels, start=1):
        lines.append(f"level {t} {lv.kind}")
        for j, gate in enumerate(lv.gates, start=1):
            if t == 1:
                ops = [f"{'~' if neg else ''}x{i}" for i, neg in gate]
            else:
                ops = [f"g{t - 1}.{k + 1}" for k in gate]
            lines.append(f"g{t}.{j} = " + ", ".join(ops))
    return "\n".join(lines) + "\n"


def evaluate_circuit(c: Circuit) -> TruthTable:
    """Truth table of the output gate; literal ``x_i`` carries the bit ``a_i``."""
    if c.n > 16:
        raise ValueError(f"circuit evaluation limited to n <= 16, got {c.n}")
    a = _cube_assignments(c.n).astype(bool)
    prev = None
    for t, lv in enumerate(c.levels, start=1):
        reduce = np.logical_and.reduce if lv.kind == "AND" else np.logical_or.reduce
        cur = np.empty((len(lv.gates), 1 << c.n), dtype=bool)
        for j, gate in enumerate(lv.gates):
            if t == 1:
                cols = np.stack([~a[:, i - 1] if neg else a[:, i - 1] for i, neg in gate])
            else:
                cols = prev[list(gate)]
            cur[j] = reduce(cols, axis=0)
        prev = cur
    return TruthTable(c.n, prev[0].astype(np.uint8))


def dnf_circuit(tt: TruthTable) -> Circuit:
    """Canonical DNF: OR over one minterm AND per input with ``b_j = 1``.

    A table with no ones gets the single unsatisfiable minterm ``x1 AND ~x1``.
    """
    ones = np.flatnonzero(tt.bits)
    if len(ones):
        minterms = tuple(
            tuple((i + 1, not (int(j) >> i) & 1) for i in range(tt.n)) for j in ones
        )
    else:
        minterms = (((1, False), (1, True)),)
    return Circuit(tt.n, (Level("AND", minterms), Level("OR", (tuple(range(len(minterms))),))))


def tribes_circuit(tribes: int, width: int) -> Circuit:
    """OR of ``tribes`` disjoint ANDs of ``width`` positive literals."""
    n = tribes * width
    ands = tuple(tuple((t * width + w + 1, False) for w in range(width)) for t in range(tribes))
    return Circuit(n, (Level("AND", ands), Level("OR", (tuple(range(tribes)),))))


def read_once_tree(fanins: list[int], top: str = "OR") -> Circuit:
    """Alternating read-once tree; ``fanins[t]`` is the fan-in at level ``t+1``.

    The output gate has type ``top``; ``n`` is the product of the fan-ins.
    """
    depth = len(fanins)
    kinds = [top if (depth - 1 - t) % 2 == 0 else ("AND" if top == "OR" else "OR") for t in range(depth)]
    n = 1
    for f in fanins:
        n *= f
    gates_per_level = []
    count = n // fanins[0]
    level1 = tuple(tuple((g * fanins[0] + w + 1, False) for w in range(fanins[0])) for g in range(count))
    gates_per_level.append(Level(kinds[0], level1))
    for t in range(1, depth):
        prev = count
        count = prev // fanins[t]
        gates = tuple(tuple(g * fanins[t] + w for w in range(fanins[t])) for g in range(count))
        gates_per_level.append(Level(kinds[t], gates))
    return Circuit(n, tuple(gates_per_level))
