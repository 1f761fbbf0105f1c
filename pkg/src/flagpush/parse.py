"""Parse polynomial expressions such as ``"(t1+t2)^2*t1 - 1/2*e1*a"``.

Recognised names for rank r: ``t1..t{r-1}`` (alias ``xi1..``), ``h1..h{r-1}``,
``y1..y{r}``, ``e1..e{r}`` and ``a``. One fiber alphabet per expression.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Tuple

from .gysin import RootContext
from .polyring import MultiPoly

_NAME = re.compile(r"^(t|xi|h|y|e)(\d+)$|^a$")
_RING_OF = {"t": "xi", "xi": "xi", "h": "tower", "y": "roots"}


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")
        self.position = position


def parse_polynomial(text: str, r: int) -> Tuple[str, MultiPoly]:
    """Return ``(ring, poly)`` where ring is ``xi``, ``tower`` or ``roots``."""
    ctx = RootContext(r)
    converted = text.replace("^", "**")
    # map positions in the converted text back to the original
    back = []
    for i, ch in enumerate(text):
        back.append(i)
        if ch == "^":
            back.append(i)
    back.append(len(text))

    def fail(msg, col):
        raise PolyParseError(msg, back[min(col, len(back) - 1)], text)

    try:
        tree = ast.parse(converted.strip() and converted, mode="eval")
    except SyntaxError as exc:
        fail(f"syntax error ({exc.msg})", max((exc.offset or 1) - 1, 0))

    used = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Name):
            m = _NAME.match(node.id)
            if not m:
                fail(f"unknown variable {node.id!r}", node.col_offset)
            if m.group(1) in _RING_OF:
                used.add(_RING_OF[m.group(1)])
    if len(used) > 1:
        fail(f"mixes fiber alphabets {sorted(used)}", 0)
    ring = used.pop() if used else "xi"
    n = {"xi": ctx.n_xi, "tower": ctx.n_tower, "roots": ctx.n_roots}[ring]

    def var(node: ast.Name) -> MultiPoly:
        m = _NAME.match(node.id)
        if node.id == "a":
            return ctx.a(ring)
        kind, idx = m.group(1), int(m.group(2))
        try:
            if kind == "e":
                return ctx.e(idx, ring)
            if kind in ("t", "xi"):
                return ctx.xi(idx)
            if kind == "h":
                return ctx.h(idx)
            return ctx.y(idx)
        except IndexError:
            fail(f"variable {node.id} out of range for r={r}", node.col_offset)

    def ev(node) -> MultiPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MultiPoly.constant(n, node.value)
        if isinstance(node, ast.Name):
            return var(node)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = node.right
                if isinstance(k, ast.Constant) and isinstance(k.value, int) and k.value >= 0:
                    return ev(node.left) ** k.value
                fail("exponent must be a nonnegative integer", getattr(k, "col_offset", 0))
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if not den.is_constant() or not den:
                    fail("can only divide by a nonzero number", node.right.col_offset)
                return ev(node.left).scale(1 / Fraction(den.constant_term()))
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        fail(f"unsupported syntax {type(node).__name__}", getattr(node, "col_offset", 0))

    return ring, ev(tree)
