# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import ast
import functools
import re
from typing import Callable, List, Optional, Tuple

from khoveq.exceptions import KhovEqException

# representations like <Flavor.ORIENTED: 'oriented'> are not expressions
_OPAQUE = re.compile(r"<[^<>\n]*>")


class _ExpressionFormatter:
    """Pretty printer for the subset of Python expressions used in `__repr__()`."""

    def __init__(self, line_length_threshold: int) -> None:
        self.threshold = line_length_threshold

    def format(
        self, node: ast.AST, indent: int = 0, prefix: str = "", multiline: bool = False
    ) -> str:
        result = " " * indent + prefix + self._format_node(node, indent, multiline)
        if not multiline and len(result) > self.threshold and self._is_container(node):
            return self.format(node, indent, prefix, True)
        return result

    @staticmethod
    def _is_container(node: ast.AST) -> bool:
        return isinstance(node, (ast.Tuple, ast.List, ast.Set, ast.Dict, ast.Call))

    def _format_node(self, node: ast.AST, indent: int, multiline: bool) -> str:
        if isinstance(node, ast.Constant):
            return repr(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return "-" + self._format_node(node.operand, indent, False)
        if isinstance(node, ast.Name):
            return node.id
        if isinstance(node, ast.Attribute):
            return f"{self._format_node(node.value, indent, False)}.{node.attr}"
        if self._is_container(node):
            return self._format_container(node, indent, multiline)
        raise KhovEqException(f"Unsupported AST node: ast.{node.__class__.__name__}")

    def _format_container(self, node: ast.AST, indent: int, multiline: bool) -> str:
        items: List[Tuple[Optional[str], ast.AST]]
        delimiter = ""
        if isinstance(node, ast.Tuple):
            start, end = "(", ")" if multiline or len(node.elts) != 1 else ",)"
            items = [(None, e) for e in node.elts]
        elif isinstance(node, ast.List):
            start, end = "[", "]"
            items = [(None, e) for e in node.elts]
        elif isinstance(node, ast.Set):
            start, end = "{", "}"
            items = [(None, e) for e in node.elts]
        elif isinstance(node, ast.Dict):
            start, end = "{", "}"
            items = [
                (self._format_node(k, 0, False), v)
                for k, v in zip(node.keys, node.values)
            ]
            delimiter = ": "
        else:
            start = f"{self._format_node(node.func, indent, False)}("
            end = ")"
            items = [(None, a) for a in node.args]
            items += [(kw.arg, kw.value) for kw in node.keywords]
            delimiter = "="
        parts = [
            self.format(
                value,
                indent + 4 if multiline else 0,
                f"{key}{delimiter}" if key is not None else "",
            )
            for key, value in items
        ]
        if not multiline:
            return start + ", ".join(parts) + end
        body = "".join(f"{part},\n" for part in parts)
        return f"{start}\n{body}{' ' * indent}{end}"


def format_expression(expression: str, line_length_threshold: int = 80) -> str:
    """
    Formats the specified Python expression.

    Representations that are not valid expressions (enclosed in `<>`) are kept verbatim.

    Args:
        expression: Python expression to reformat.
        line_length_threshold: Threshold for line lengths. It's not a hard limit,
            it can be exceeded in some cases.

    Returns:
        Formatted expression.

    Raises:
        SyntaxError: If the expression is not parseable.
        KhovEqException: If there is an unsupported AST node in the expression.
    """
    placeholders = []

    def protect(match: "re.Match[str]") -> str:
        placeholders.append(match.group(0))
        return repr(match.group(0))

    tree = ast.parse(_OPAQUE.sub(protect, expression), mode="eval")
    result = _ExpressionFormatter(line_length_threshold).format(tree.body)
    for value in placeholders:
        result = result.replace(repr(value), value, 1)
    return result


def formatted(function: Callable[..., str]) -> Callable[..., str]:
    """Decorator for formatting the output of `__repr__()`."""

    @functools.wraps(function)
    def wrapper(*args, **kwargs):
        result = function(*args, **kwargs)
        try:
            return format_expression(result)
        except (SyntaxError, KhovEqException):
            return result

    return wrapper
