"""OpenQASM 2.0 subset: parsing, printing, conversion to ZX, and unitaries.

Supported: one ``qreg``; gates h x z s sdg t tdg rz cx cz ccx.  ``ccx`` is
expanded at parse time into its 7-T Clifford+T form.  ``rz`` angles must be
exact rational multiples of pi (``pi/4``, ``-3*pi/2``, ``0``...).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .diagram import Diagram, EdgeType, VertexKind
from .oracle.tensor import OracleBudgetError
from .phase import Phase

SINGLE_QUBIT = {"h", "x", "z", "s", "sdg", "t", "tdg", "rz"}
TWO_QUBIT = {"cx", "cz"}
ARITY = {**{g: 1 for g in SINGLE_QUBIT}, "cx": 2, "cz": 2, "ccx": 3}

FIXED_PHASE = {
    "z": Phase(1, 1),
    "s": Phase(1, 2),
    "sdg": Phase(3, 2),
    "t": Phase(1, 4),
    "tdg": Phase(7, 4),
}

MAX_UNITARY_QUBITS = 10


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    phase: Phase | None = None

    def __post_init__(self) -> None:
        if self.name not in ARITY or self.name == "ccx":
            raise ValueError(f"unsupported gate {self.name!r}")
        if len(self.qubits) != ARITY[self.name]:
            raise ValueError(f"{self.name} takes {ARITY[self.name]} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.name}")
        if (self.name == "rz") != (self.phase is not None):
            raise ValueError("exactly the rz gate carries a phase")


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.num_qubits <= 0:
            raise ValueError("a circuit needs at least one qubit")
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        if any(not 0 <= q < self.num_qubits for q in g.qubits):
            raise ValueError(f"qubit index out of range in {g}")

    def add(self, name: str, *qubits: int, phase: Phase | None = None) -> Circuit:
        if name == "ccx":
            for g in expand_ccx(*qubits):
                self._check(g)
                self.gates.append(g)
            return self
        g = Gate(name, tuple(qubits), phase)
        self._check(g)
        self.gates.append(g)
        return self


def expand_ccx(a: int, b: int, c: int) -> list[Gate]:
    """Standard 15-gate, 7-T decomposition of a Toffoli (controls a, b; target c)."""
    seq = [
        ("h", c), ("cx", b, c), ("tdg", c), ("cx", a, c), ("t", c), ("cx", b, c),
        ("tdg", c), ("cx", a, c), ("t", b), ("t", c), ("h", c), ("cx", a, b),
        ("t", a), ("tdg", b), ("cx", a, b),
    ]
    return [Gate(name, tuple(qs)) for name, *qs in seq]


# -- lexer ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<real>\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+|\.\d+)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>[;,\[\]()+\-*/])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# -- parser --------------------------------------------------------------

class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.reg: str | None = None
        self.size = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> QasmError:
        tok = tok or self.tok
        return QasmError(msg, tok.line, tok.col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def program(self) -> Circuit:
        if self.at("id", "OPENQASM"):
            self.i += 1
            ver = self.tok
            if ver.kind not in ("real", "int") or not ver.text.startswith("2"):
                raise self.error("only OPENQASM 2.0 is supported")
            self.i += 1
            self.take("sym", ";")
        gates: list[tuple[_Tok, str, Phase | None, list[int]]] = []
        while not self.at("eof"):
            head = self.take("id")
            if head.text == "include":
                self.take("string")
                self.take("sym", ";")
            elif head.text == "qreg":
                self.qreg(head)
            elif head.text in ARITY:
                gates.append(self.gate(head))
            else:
                raise self.error(f"unsupported gate or statement {head.text!r}", head)
        if self.reg is None:
            raise self.error("missing qreg declaration")
        c = Circuit(self.size)
        for tok, name, phase, qubits in gates:
            try:
                c.add(name, *qubits, phase=phase)
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
        return c

    def qreg(self, head: _Tok) -> None:
        if self.reg is not None:
            raise self.error("only a single quantum register is supported", head)
        self.reg = self.take("id").text
        self.take("sym", "[")
        size = int(self.take("int").text)
        self.take("sym", "]")
        self.take("sym", ";")
        if size <= 0:
            raise self.error("register size must be positive", head)
        self.size = size

    def gate(self, head: _Tok):
        if self.reg is None:
            raise self.error("gate before qreg declaration", head)
        phase = None
        if head.text == "rz":
            self.take("sym", "(")
            phase = self.angle()
            self.take("sym", ")")
        elif self.at("sym", "("):
            raise self.error(f"gate {head.text!r} takes no parameters")
        qubits = [self.qarg()]
        while self.at("sym", ","):
            self.i += 1
            qubits.append(self.qarg())
        self.take("sym", ";")
        if len(qubits) != ARITY[head.text]:
            raise self.error(f"{head.text} takes {ARITY[head.text]} qubit(s), got {len(qubits)}", head)
        return head, head.text, phase, qubits

    def qarg(self) -> int:
        name = self.take("id")
        if name.text != self.reg:
            raise self.error(f"unknown register {name.text!r}", name)
        self.take("sym", "[")
        idx_tok = self.take("int")
        self.take("sym", "]")
        idx = int(idx_tok.text)
        if idx >= self.size:
            raise self.error(f"qubit index {idx} out of range for register of size {self.size}", idx_tok)
        return idx

    # angles are linear forms a*pi + b with rational a, b
    def angle(self) -> Phase:
        start = self.tok
        pi_coef, const = self.expr()
        if const != 0:
            raise self.error("rz angle must be a rational multiple of pi", start)
        return Phase.of(pi_coef)

    def expr(self) -> tuple[Fraction, Fraction]:
        a = self.term()
        while self.at("sym", "+") or self.at("sym", "-"):
            op = self.take("sym").text
            b = self.term()
            a = (a[0] + b[0], a[1] + b[1]) if op == "+" else (a[0] - b[0], a[1] - b[1])
        return a

    def term(self) -> tuple[Fraction, Fraction]:
        a = self.factor()
        while self.at("sym", "*") or self.at("sym", "/"):
            op_tok = self.take("sym")
            b = self.factor()
            if op_tok.text == "*":
                if a[0] and b[0]:
                    raise self.error("angle is not linear in pi", op_tok)
                a = (a[0] * b[1] + b[0] * a[1], a[1] * b[1])
            else:
                if b[0] or b[1] == 0:
                    raise self.error("can only divide by a nonzero integer", op_tok)
                a = (a[0] / b[1], a[1] / b[1])
        return a

    def factor(self) -> tuple[Fraction, Fraction]:
        t = self.tok
        if self.at("sym", "-"):
            self.i += 1
            a = self.factor()
            return (-a[0], -a[1])
        if self.at("sym", "("):
            self.i += 1
            a = self.expr()
            self.take("sym", ")")
            return a
        if t.kind == "int":
            self.i += 1
            return (Fraction(0), Fraction(int(t.text)))
        if t.kind == "id" and t.text == "pi":
            self.i += 1
            return (Fraction(1), Fraction(0))
        if t.kind == "real":
            raise self.error("decimal angles are not supported; write a rational multiple of pi")
        raise self.error(f"unexpected {t.text or 'end of input'!r} in angle")


def parse_qasm(text: str) -> Circuit:
    return _Parser(text).program()


def _format_phase(p: Phase) -> str:
    if p.numerator == 0:
        return "0"
    num = "pi" if p.numerator == 1 else f"{p.numerator}*pi"
    return num if p.denominator == 1 else f"{num}/{p.denominator}"


def print_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        param = f"({_format_phase(g.phase)})" if g.phase is not None else ""
        lines.append(f"{g.name}{param} {args};")
    return "\n".join(lines) + "\n"


# -- circuit -> diagram --------------------------------------------------

def gate_phase(g: Gate) -> Phase | None:
    return g.phase if g.name == "rz" else FIXED_PHASE.get(g.name)


def circuit_to_zx(c: Circuit) -> Diagram:
    """ZX diagram of ``c``: inputs and outputs in register order."""
    d = Diagram()
    last = [d.add_input() for _ in range(c.num_qubits)]
    pending = [EdgeType.PLAIN] * c.num_qubits

    def attach(q: int, kind: VertexKind, phase: Phase = Phase()) -> int:
        v = d.add_vertex(kind, phase)
        d.add_edge(last[q], v, pending[q])
        last[q], pending[q] = v, EdgeType.PLAIN
        return v

    for g in c.gates:
        if g.name == "h":
            pending[g.qubits[0]] = pending[g.qubits[0]].toggled()
        elif g.name == "x":
            attach(g.qubits[0], VertexKind.X, Phase(1, 1))
        elif g.name in TWO_QUBIT:
            a, b = g.qubits
            u = attach(a, VertexKind.Z)
            if g.name == "cx":
                d.add_edge(u, attach(b, VertexKind.X))
            else:
                d.add_edge(u, attach(b, VertexKind.Z), EdgeType.HADAMARD)
        else:
            attach(g.qubits[0], VertexKind.Z, gate_phase(g))
    for q in range(c.num_qubits):
        o = d.add_output()
        d.add_edge(last[q], o, pending[q])
    return d


# -- circuit -> unitary ----------------------------------------------------

_S2 = np.sqrt(0.5)
_ONE_QUBIT = {
    "h": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
}


def _gate_matrix(g: Gate) -> np.ndarray:
    if g.name in _ONE_QUBIT:
        return _ONE_QUBIT[g.name]
    if g.name == "rz":
        theta = np.pi * float(g.phase.as_fraction())
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    if g.name == "cx":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if g.name == "cz":
        return np.diag([1, 1, 1, -1]).astype(complex)
    theta = np.pi * float(FIXED_PHASE[g.name].as_fraction())
    return np.diag([1, np.exp(1j * theta)])


def unitary_of_circuit(c: Circuit, max_qubits: int = MAX_UNITARY_QUBITS) -> np.ndarray:
    """The ``2**n x 2**n`` unitary of ``c``; qubit 0 is the most significant bit."""
    n = c.num_qubits
    if n > max_qubits:
        raise OracleBudgetError(f"{n} qubits exceed the unitary limit {max_qubits}")
    u = np.eye(2 ** n, dtype=complex).reshape((2,) * n + (2 ** n,))
    for g in c.gates:
        k = len(g.qubits)
        m = _gate_matrix(g).reshape((2,) * (2 * k))
        u = np.tensordot(m, u, axes=(list(range(k, 2 * k)), list(g.qubits)))
        u = np.moveaxis(u, list(range(k)), list(g.qubits))
    return u.reshape(2 ** n, 2 ** n)
