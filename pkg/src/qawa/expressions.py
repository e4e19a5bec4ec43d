"""
Expression input and element JSON.

Expressions come in three shapes:

* text such as ``2/3*T(1)*X(2,-1) + a("c", 1)`` or ``X(2,1)^2`` with the
  generators ``T(i)``, ``Tinv(i)``, ``X(i, e)`` (``e`` is +1 or -1) and
  ``a(name, slot)``;
* a JSON tree built from ``{"gen": "T", "i": 1}``, ``{"gen": "X", "i": 2, "e": -1}``,
  ``{"gen": "a", "name": "c", "slot": 1}``, ``{"scalar": "2/3"}``,
  ``{"sum": [...]}``, ``{"product": [...]}`` and ``{"power": [tree, k]}``;
* element JSON as printed by the CLI, so output can be fed back in.

>>> from qawa.superalgebra import preset
>>> from qawa.affine import AffineAlgebra
>>> H = AffineAlgebra(preset("trivial"), 2, 1)
>>> evaluate(H, "T(1)*T(1)")
1 + T[2, 1]
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction
from typing import Any

from .affine import AffineAlgebra, AffineElement
from .combinatorics import check_permutation, parse_scalar

__all__ = ["ExpressionError", "evaluate", "element_from_json", "parse_text"]


class ExpressionError(ValueError):
    pass


def _const(node: ast.AST) -> Any:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)) \
            and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const(node.operand)
        if isinstance(v, int):
            return -v if isinstance(node.op, ast.USub) else v
    raise ExpressionError(f"expected an integer or string literal, got {ast.dump(node)}")


def _call_to_tree(node: ast.Call) -> dict:
    if not isinstance(node.func, ast.Name):
        raise ExpressionError("only generator calls are allowed")
    if node.keywords:
        raise ExpressionError("keyword arguments are not allowed")
    name = node.func.id
    args = [_const(a) for a in node.args]
    if name in ("T", "Tinv"):
        if len(args) != 1 or not isinstance(args[0], int):
            raise ExpressionError(f"{name} takes one integer index")
        return {"gen": name, "i": args[0]}
    if name == "X":
        if len(args) not in (1, 2) or not all(isinstance(a, int) for a in args):
            raise ExpressionError("X takes an index and an optional exponent +1/-1")
        return {"gen": "X", "i": args[0], "e": args[1] if len(args) == 2 else 1}
    if name == "a":
        if len(args) != 2 or not isinstance(args[1], int):
            raise ExpressionError('a takes a basis name (or index) and a slot, e.g. a("c", 1)')
        return {"gen": "a", "name": args[0], "slot": args[1]}
    raise ExpressionError(f"unknown generator {name!r}")


def _scalar_value(node: ast.AST) -> Fraction | None:
    """Exact value of a purely numeric subtree, or None."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _scalar_value(node.operand)
        if v is not None:
            return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Mult, ast.Add, ast.Sub)):
        left, right = _scalar_value(node.left), _scalar_value(node.right)
        if left is None or right is None:
            return None
        if isinstance(node.op, ast.Div):
            if right == 0:
                raise ExpressionError("division by zero")
            return left / right
        if isinstance(node.op, ast.Mult):
            return left * right
        return left + right if isinstance(node.op, ast.Add) else left - right
    return None


def _to_tree(node: ast.AST) -> dict:
    value = _scalar_value(node)
    if value is not None:
        return {"scalar": f"{value.numerator}/{value.denominator}"}
    if isinstance(node, ast.Call):
        return _call_to_tree(node)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return {"product": [{"scalar": "-1"}, _to_tree(node.operand)]}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _to_tree(node.operand)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Add):
            return {"sum": [_to_tree(node.left), _to_tree(node.right)]}
        if isinstance(node.op, ast.Sub):
            return {"sum": [_to_tree(node.left),
                            {"product": [{"scalar": "-1"}, _to_tree(node.right)]}]}
        if isinstance(node.op, ast.Mult):
            return {"product": [_to_tree(node.left), _to_tree(node.right)]}
        if isinstance(node.op, ast.Pow):
            k = _const(node.right)
            if not isinstance(k, int) or k < 0:
                raise ExpressionError("powers must be nonnegative integers; use X(i,-1) or Tinv(i)")
            return {"power": [_to_tree(node.left), k]}
        if isinstance(node.op, ast.Div):
            denom = _scalar_value(node.right)
            if denom is None or denom == 0:
                raise ExpressionError("only division by a nonzero number is allowed")
            inv = 1 / denom
            return {"product": [{"scalar": f"{inv.numerator}/{inv.denominator}"},
                                _to_tree(node.left)]}
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def parse_text(text: str) -> dict:
    """Parse the text syntax into a JSON expression tree.

    >>> parse_text("T(1)^2")
    {'power': [{'gen': 'T', 'i': 1}, 2]}
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse expression: {exc.msg}") from None
    return _to_tree(tree.body)


def element_from_json(H: AffineAlgebra, terms: list) -> AffineElement:
    """Rebuild an element from ``[{"a": [...], "lambda": [...], "w": [...], "coeff": "p/q"}]``."""
    out: dict = {}
    try:
        for t in terms:
            key = (tuple(int(k) for k in t["a"]), tuple(int(e) for e in t["lambda"]),
                   check_permutation(t.get("w", range(1, H.n + 1))))
            out[key] = out.get(key, 0) + parse_scalar(str(t["coeff"]))
    except (KeyError, TypeError) as exc:
        raise ExpressionError(f"malformed element JSON: {exc}") from None
    try:
        return H.element(out)
    except (ValueError, IndexError) as exc:
        raise ExpressionError(str(exc)) from None


def _eval_tree(H: AffineAlgebra, tree) -> AffineElement:
    if isinstance(tree, list):
        return element_from_json(H, tree)
    if not isinstance(tree, dict):
        raise ExpressionError(f"malformed expression node: {tree!r}")
    if "gen" in tree:
        gen = tree["gen"]
        try:
            if gen == "T":
                return H.T(int(tree["i"]))
            if gen == "Tinv":
                return H.Tinv(int(tree["i"]))
            if gen == "X":
                e = int(tree.get("e", 1))
                if e not in (1, -1):
                    raise ExpressionError("X exponent must be +1 or -1")
                return H.X(int(tree["i"]), e)
            if gen == "a":
                return H.slot(int(tree["slot"]), tree["name"])
        except IndexError as exc:
            raise ExpressionError(f"index out of range: {exc}") from None
        except KeyError as exc:
            raise ExpressionError(f"bad generator {tree!r}: {exc}") from None
        raise ExpressionError(f"unknown generator {gen!r}")
    if "scalar" in tree:
        try:
            return H.one() * parse_scalar(str(tree["scalar"]))
        except ValueError as exc:
            raise ExpressionError(str(exc)) from None
    if "sum" in tree:
        out = H.zero()
        for sub in tree["sum"]:
            out = out + _eval_tree(H, sub)
        return out
    if "product" in tree:
        out = H.one()
        for sub in tree["product"]:
            out = out * _eval_tree(H, sub)
        return out
    if "power" in tree:
        base, k = tree["power"]
        if not isinstance(k, int) or k < 0:
            raise ExpressionError("powers must be nonnegative integers")
        return _eval_tree(H, base) ** k
    for key in ("left_normal_form", "reduced_form", "terms"):
        if key in tree:
            return element_from_json(H, tree[key])
    raise ExpressionError(f"unknown expression node with keys {sorted(tree)}")


def evaluate(H: AffineAlgebra, expr) -> AffineElement:
    """Evaluate text, JSON text, or an already-decoded JSON tree in ``H``."""
    if isinstance(expr, str):
        text = expr.strip()
        if text[:1] in "[{":
            try:
                expr = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ExpressionError(f"invalid JSON expression: {exc}") from None
        else:
            expr = parse_text(text)
    return _eval_tree(H, expr)
