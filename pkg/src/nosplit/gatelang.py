"""Two-qubit gate files.

One instruction per line::

    # comment
    H 0
    RY 1 0.785398   # angle in radians
    CNOT 0 1        # first index is the control

Tokens are separated by spaces or tabs, mnemonics are upper case, qubit
indices are 0 (qubit A, first tensor factor) or 1 (qubit B). Lines are
applied in order, so the compiled unitary is U_n ... U_2 U_1. Rotations use
exp(-i a P / 2) and PHASE(a) = diag(1, e^{ia}).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gates

FIXED_1Q = {"I": gates.I2, "X": gates.X, "Y": gates.Y, "Z": gates.Z,
            "H": gates.H, "S": gates.S, "T": gates.T}
ROTATIONS = {"RX": gates.rx, "RY": gates.ry, "RZ": gates.rz, "PHASE": gates.phase}
TWO_QUBIT = ("CNOT", "CZ", "SWAP")
MNEMONICS = tuple(FIXED_1Q) + tuple(ROTATIONS) + TWO_QUBIT

_TOKEN = re.compile(r"[^ \t]+")
_INDEX = re.compile(r"[0-9]+\Z")
_FLOAT = re.compile(r"[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\Z")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, source_name: str = "<string>"):
        self.line = line
        self.column = column
        self.message = message
        self.source_name = source_name
        super().__init__(f"{source_name}:{line}:{column}: {message}")


@dataclass(frozen=True)
class GateInstruction:
    mnemonic: str
    qubits: tuple
    angle: Optional[float] = None

    def format(self) -> str:
        parts = [self.mnemonic, *(str(q) for q in self.qubits)]
        if self.angle is not None:
            parts.append(repr(float(self.angle)))
        return " ".join(parts)


@dataclass(frozen=True)
class GateProgram:
    instructions: tuple
    source_name: str = "<string>"

    def format(self) -> str:
        return "".join(ins.format() + "\n" for ins in self.instructions)


def _parse_line(tokens, lineno, end_col, source_name) -> GateInstruction:
    def fail(col, msg):
        raise ParseError(lineno, col, msg, source_name)

    (mnemonic, col0), rest = tokens[0], tokens[1:]
    if mnemonic not in MNEMONICS:
        fail(col0, f"unknown mnemonic {mnemonic!r}")
    n_qubits = 2 if mnemonic in TWO_QUBIT else 1
    takes_angle = mnemonic in ROTATIONS

    qubits = []
    for k in range(n_qubits):
        if k >= len(rest):
            fail(end_col, f"{mnemonic} expects {n_qubits} qubit index(es), got {len(rest)}")
        text, col = rest[k]
        if not _INDEX.match(text):
            fail(col, f"malformed qubit index {text!r}")
        q = int(text)
        if q > 1:
            fail(col, f"qubit index {q} out of range (0 or 1)")
        if q in qubits:
            fail(col, f"duplicate qubit {q} in {mnemonic}")
        qubits.append(q)
    rest = rest[n_qubits:]

    angle = None
    if takes_angle:
        if not rest:
            fail(end_col, f"{mnemonic} requires an angle")
        text, col = rest[0]
        if not _FLOAT.match(text):
            fail(col, f"malformed angle {text!r}")
        angle = float(text)
        if not math.isfinite(angle):
            fail(col, f"angle {text!r} is not finite")
        rest = rest[1:]
    if rest:
        text, col = rest[0]
        if not takes_angle and _FLOAT.match(text):
            fail(col, f"{mnemonic} takes no angle, got {text!r}")
        fail(col, f"unexpected extra token {text!r} after {mnemonic}")
    return GateInstruction(mnemonic, tuple(qubits), angle)


def parse_program(text: str, source_name: str = "<string>") -> GateProgram:
    """Parse gate-file source; raises :class:`ParseError` with 1-based line/column."""
    instructions = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        code = line.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(code)]
        if not tokens:
            continue
        end_col = len(code.rstrip(" \t")) + 1
        instructions.append(_parse_line(tokens, lineno, end_col, source_name))
    return GateProgram(tuple(instructions), source_name)


def load_program(path) -> GateProgram:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_program(fh.read(), source_name=str(path))


def instruction_matrix(ins: GateInstruction) -> np.ndarray:
    """4x4 matrix of one instruction; qubit 0 is the first tensor factor."""
    m = ins.mnemonic
    if m in TWO_QUBIT:
        if m == "CNOT":
            return gates.CNOT if ins.qubits == (0, 1) else gates.CNOT_BA
        return gates.CZ if m == "CZ" else gates.SWAP
    g = ROTATIONS[m](ins.angle) if m in ROTATIONS else FIXED_1Q[m]
    return np.kron(g, gates.I2) if ins.qubits[0] == 0 else np.kron(gates.I2, g)


def compile_program(prog: GateProgram) -> np.ndarray:
    u = np.eye(4, dtype=np.complex128)
    for ins in prog.instructions:
        u = instruction_matrix(ins) @ u
    return u
