# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import dataclasses
import re
from typing import Dict, List, Optional

import docspec
from pydoc_markdown.interfaces import Processor, Resolver

# MDX reads braces as expressions and `<` as the start of a JSX tag
MDX_ESCAPES: Dict[str, str] = {"{": r"\{", "}": r"\}", "<": "&lt;"}


@dataclasses.dataclass
class MdxEscapeProcessor(Processor):
    """
    Processor that escapes grading subscripts like C_{p,q,k} and comparisons
    like u < v in docstrings outside of code spans.
    """

    def process(
        self, modules: List[docspec.Module], resolver: Optional[Resolver]
    ) -> None:
        docspec.visit(modules, self._process)

    @staticmethod
    def _escape(text: str) -> str:
        return re.sub(r"(?<!\\)[{}<]", lambda m: MDX_ESCAPES[m.group()], text)

    def _process(self, obj: docspec.ApiObject) -> None:
        if not obj.docstring:
            return
        # odd pieces are inside backticks
        pieces = re.split(r"(`[^`]*`)", obj.docstring.content)
        obj.docstring.content = "".join(
            piece if i % 2 else self._escape(piece) for i, piece in enumerate(pieces)
        )
