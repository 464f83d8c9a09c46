from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Iterator
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np
import orjson
import sympy as sp
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from gamevalue.candidates.frame import GameFrame
from gamevalue.candidates.frame import Position
from gamevalue.exceptions import CandidateFormatError
from gamevalue.exceptions import NonAffineAbsArgument
from gamevalue.exceptions import VariableIndexOutOfRange

__all__ = [
    "NodeKind",
    "ExprNode",
    "CandidateValue",
    "game_symbols",
    "parse_node",
    "parse_candidate",
]


class NodeKind(Enum):
    """
    Node kinds of the expression language.
    """

    CONST = "const"
    VAR_T = "t"
    VAR_X = "x"
    VAR_S = "s"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"
    ABS = "abs"
    MAX = "max"
    MIN = "min"


OPERATORS = {
    NodeKind.ADD: (1, None),
    NodeKind.SUB: (2, 2),
    NodeKind.MUL: (1, None),
    NodeKind.NEG: (1, 1),
    NodeKind.ABS: (1, 1),
    NodeKind.MAX: (2, None),
    NodeKind.MIN: (2, None),
}

HAMILTONIAN_ONLY = {NodeKind.VAR_S, NodeKind.MAX, NodeKind.MIN}


def game_symbols(n: int) -> Tuple[sp.Symbol, Tuple[sp.Symbol, ...]]:
    """
    The sympy symbols t, x1, ..., xn.
    """
    t = sp.Symbol("t", real=True)
    x = tuple(sp.Symbol(f"x{i}", real=True) for i in range(1, n + 1))
    return t, x


class ExprNode(BaseModel):
    """
    A node of the expression tree.
    """

    kind: NodeKind
    value: float | None = None
    index: int | None = None
    args: List["ExprNode"] = Field(default_factory=list)

    model_config = ConfigDict(frozen=True)

    def walk(self) -> Iterator["ExprNode"]:
        yield self
        for arg in self.args:
            yield from arg.walk()

    def render(self) -> str:
        """
        Render the subtree as text, used in diagnostics.
        """
        if self.kind == NodeKind.CONST:
            return repr(self.value)
        if self.kind == NodeKind.VAR_T:
            return "t"
        if self.kind in (NodeKind.VAR_X, NodeKind.VAR_S):
            return f"{self.kind.value}{self.index}"
        return f"{self.kind.value}({', '.join(arg.render() for arg in self.args)})"

    def uses(self, kind: NodeKind) -> bool:
        return any(node.kind == kind for node in self.walk())

    def evaluate(self, t: Any, x: Any, s: Any = None) -> Any:
        """
        Evaluate the tree with numpy broadcasting.

        :param t: the time, scalar or array
        :param x: the spatial point(s), last axis of size n
        :param s: the co-state vector(s), last axis of size n
        :return: the value(s)
        """
        kind = self.kind
        if kind == NodeKind.CONST:
            return self.value
        if kind == NodeKind.VAR_T:
            return t
        if kind == NodeKind.VAR_X:
            return np.asarray(x, dtype=float)[..., self.index - 1]  # type: ignore[operator]
        if kind == NodeKind.VAR_S:
            return np.asarray(s, dtype=float)[..., self.index - 1]  # type: ignore[operator]
        values = [arg.evaluate(t, x, s) for arg in self.args]
        if kind == NodeKind.ADD:
            result = values[0]
            for value in values[1:]:
                result = result + value
            return result
        if kind == NodeKind.SUB:
            return values[0] - values[1]
        if kind == NodeKind.MUL:
            result = values[0]
            for value in values[1:]:
                result = result * value
            return result
        if kind == NodeKind.NEG:
            return -values[0]
        if kind == NodeKind.ABS:
            return np.abs(values[0])
        if kind == NodeKind.MAX:
            return np.maximum.reduce(np.broadcast_arrays(*values))
        return np.minimum.reduce(np.broadcast_arrays(*values))

    def to_sympy(self, t: sp.Symbol, x: Sequence[sp.Symbol]) -> sp.Expr:
        """
        Convert to an exact sympy expression, constants become the rationals of their binary64 values.
        """
        kind = self.kind
        if kind == NodeKind.CONST:
            return sp.Rational(self.value)
        if kind == NodeKind.VAR_T:
            return t
        if kind == NodeKind.VAR_X:
            return x[self.index - 1]  # type: ignore[operator]
        if kind in HAMILTONIAN_ONLY:
            raise CandidateFormatError(f"{self.render()} has no polynomial form in (t, x).")
        args = [arg.to_sympy(t, x) for arg in self.args]
        if kind == NodeKind.ADD:
            return sp.Add(*args)
        if kind == NodeKind.SUB:
            return args[0] - args[1]
        if kind == NodeKind.MUL:
            return sp.Mul(*args)
        if kind == NodeKind.NEG:
            return -args[0]
        return sp.Abs(args[0])

    def to_document(self) -> Dict[str, Any]:
        if self.kind == NodeKind.CONST:
            return {"const": self.value}
        if self.kind == NodeKind.VAR_T:
            return {"var": "t"}
        if self.kind in (NodeKind.VAR_X, NodeKind.VAR_S):
            return {"var": self.kind.value, "i": self.index}
        return {"op": self.kind.value, "args": [arg.to_document() for arg in self.args]}


def parse_node(doc: Any, n: int, hamiltonian: bool = False, path: str = "expr") -> ExprNode:
    """
    Parse a node of the expression language.

    :param doc: the decoded JSON node
    :param n: the spatial dimension
    :param hamiltonian: accept co-state variables and max/min nodes
    :param path: location of the node, used in diagnostics
    :return: the parsed node
    """
    if not isinstance(doc, dict):
        raise CandidateFormatError(f"{path}: a node must be an object, got {doc!r}.")
    if "const" in doc:
        value = doc["const"]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise CandidateFormatError(f"{path}: constant must be a number, got {value!r}.")
        return ExprNode(kind=NodeKind.CONST, value=float(value))
    if "var" in doc:
        name = doc["var"]
        if name == "t":
            return ExprNode(kind=NodeKind.VAR_T)
        if name not in ("x", "s") or (name == "s" and not hamiltonian):
            raise CandidateFormatError(f"{path}: unknown variable {name!r}.")
        index = doc.get("i")
        if isinstance(index, bool) or not isinstance(index, int):
            raise CandidateFormatError(f"{path}: variable {name} needs an integer index.")
        if not 1 <= index <= n:
            raise VariableIndexOutOfRange(f"{path}: index {name}{index} is out of range [1, {n}].")
        return ExprNode(kind=NodeKind(name), index=index)
    if "op" in doc:
        try:
            kind = NodeKind(doc["op"])
        except ValueError as exception:
            raise CandidateFormatError(f"{path}: unknown operator {doc['op']!r}.") from exception
        if kind not in OPERATORS or (kind in HAMILTONIAN_ONLY and not hamiltonian):
            raise CandidateFormatError(f"{path}: operator {kind.value!r} is not allowed here.")
        args = doc.get("args")
        if not isinstance(args, list):
            raise CandidateFormatError(f"{path}: operator {kind.value!r} needs an args list.")
        low, high = OPERATORS[kind]
        if len(args) < low or (high is not None and len(args) > high):
            raise CandidateFormatError(f"{path}: operator {kind.value!r} got {len(args)} arguments.")
        return ExprNode(
            kind=kind,
            args=[
                parse_node(arg, n=n, hamiltonian=hamiltonian, path=f"{path}.{kind.value}[{i}]")
                for i, arg in enumerate(args)
            ],
        )
    raise CandidateFormatError(f"{path}: cannot interpret node {doc!r}.")


def check_affine_abs(expr: ExprNode, n: int) -> None:
    """
    Reject abs nodes whose argument is not affine in (t, x).
    """
    t, x = game_symbols(n)
    for node in expr.walk():
        if node.kind != NodeKind.ABS:
            continue
        argument = node.args[0]
        if argument.uses(NodeKind.ABS):
            raise NonAffineAbsArgument(f"non-affine abs argument: {argument.render()} contains an abs node.")
        polynomial = sp.Poly(argument.to_sympy(t, x), t, *x)
        if polynomial.total_degree() > 1:
            raise NonAffineAbsArgument(f"non-affine abs argument: {argument.render()}.")


class CandidateValue(BaseModel):
    """
    A candidate value function: its frame and its expression tree.
    """

    frame: GameFrame
    expr: ExprNode
    name: str = "candidate"

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_document(cls, doc: Dict[str, Any], name: str = "candidate") -> "CandidateValue":
        return parse_candidate(doc, name=name)

    @classmethod
    def from_file(cls, path: str | Path) -> "CandidateValue":
        """
        Read a candidate JSON file.
        """
        path = Path(path)
        try:
            doc = orjson.loads(path.read_bytes())
        except orjson.JSONDecodeError as exception:
            raise CandidateFormatError(f"{path} is not valid JSON: {exception}") from exception
        return parse_candidate(doc, name=path.stem)

    def to_document(self) -> Dict[str, Any]:
        return {
            "n": self.frame.n,
            "t0": self.frame.t0,
            "theta0": self.frame.theta0,
            "expr": self.expr.to_document(),
        }

    def evaluate(self, p: Position) -> float:
        """
        Evaluate the candidate at a position.
        """
        self.frame.check_position(p)
        return float(self.expr.evaluate(p.t, np.asarray(p.x, dtype=float)))

    def evaluate_array(self, t: Any, x: np.ndarray) -> np.ndarray:
        """
        Evaluate the candidate on arrays, x with the spatial axis last.
        """
        return np.broadcast_to(self.expr.evaluate(t, x), np.shape(x)[:-1]).astype(float)

    def to_sympy(self) -> Tuple[sp.Expr, sp.Symbol, Tuple[sp.Symbol, ...]]:
        t, x = game_symbols(self.frame.n)
        return self.expr.to_sympy(t, x), t, x


def parse_candidate(doc: Any, name: str = "candidate") -> CandidateValue:
    """
    Parse a candidate document {"n", "t0", "theta0", "expr"}.

    :param doc: the decoded JSON document
    :param name: the candidate identifier used in reports
    :return: the parsed candidate
    """
    if not isinstance(doc, dict):
        raise CandidateFormatError("The candidate document must be an object.")
    missing = [key for key in ("n", "expr") if key not in doc]
    if missing:
        raise CandidateFormatError(f"The candidate document misses {missing}.")
    try:
        frame = GameFrame(n=doc["n"], t0=doc.get("t0", 0.0), theta0=doc.get("theta0", 1.0))
    except ValueError as exception:
        raise CandidateFormatError(f"Invalid frame: {exception}") from exception
    expr = parse_node(doc["expr"], n=frame.n)
    check_affine_abs(expr, n=frame.n)
    logger.debug(f"Parsed candidate {name}: {expr.render()}")
    return CandidateValue(frame=frame, expr=expr, name=name)
