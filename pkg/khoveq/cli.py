# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import dataclasses
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
import sympy as sp

from khoveq.annular import (
    annular_homology,
    build_annular_complex,
    equivariant_annular_homology,
)
from khoveq.chromatic import (
    Graph,
    build_graph_complex,
    chromatic_euler_check,
    graph_fixed_subspace_check,
    parse_graph,
)
from khoveq.constants import (
    CAP_ENVVAR,
    DEFAULT_DENSE_CAP,
    EXIT_CHECK_FAILED,
    EXIT_EVEN_ORDER,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_RESOURCE_CAP,
)
from khoveq.diagram import LinkDiagram, parse_diagram
from khoveq.equivariant import (
    check_equivariance,
    check_transfer,
    compare_theorem1,
    equivariant_homology,
    equivariant_jones,
    fixed_subspace_dims,
    induced_action_on_homology,
    quotient_complex,
)
from khoveq.exceptions import (
    DiagramParseException,
    EvenOrderException,
    KhovEqException,
    ResourceCapException,
)
from khoveq.khovanov import (
    Flavor,
    GradedComplex,
    HomologyTable,
    build_complex,
    euler_polynomial,
    framed_euler_polynomial,
    homology,
    skein_exactness_check,
)
from khoveq.oracles import (
    annular_bracket_statesum,
    bracket_statesum,
    burnside_orbit_count,
    dense_homology,
    jones_from_bracket,
)
from khoveq.utils import CheckReport

logger = logging.getLogger(__name__)

COMMANDS = ("kh", "kheq", "annular", "graph", "grapheq", "verify")

_GRAPH_LINE = re.compile(r"^\s*V\s+\d+\s*(#.*)?$", re.MULTILINE)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    flavor: Flavor = Flavor.ORIENTED
    allow_even: bool = False
    cap: Optional[int] = None
    output_format: str = "table"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise KhovEqException(f"Unknown command {self.command!r}")
        if self.cap is not None and self.cap < 1:
            raise KhovEqException(f"Cap must be positive, got {self.cap}")
        if self.output_format not in ("table", "json"):
            raise KhovEqException(f"Unknown output format {self.output_format!r}")


class Output:
    """Collects tables, polynomials and check reports in emission order."""

    def __init__(self, command: str) -> None:
        self.lines: List[str] = []
        self.payload: Dict[str, Any] = {"command": command}
        self.reports: List[CheckReport] = []

    def table(self, name: str, label: str, table: HomologyTable) -> None:
        self.lines.append(f"{label}: {table.format_table()}")
        self.payload[name] = table.to_json()

    def value(self, name: str, label: str, value: object) -> None:
        self.lines.append(f"{label} = {value}")
        self.payload[name] = str(value)

    def report(self, report: CheckReport) -> None:
        self.lines.append(str(report))
        for violation in report.violations:
            self.lines.append(f"  {violation}")
        self.reports.append(report)
        self.payload.setdefault("checks", []).append(
            {
                "name": report.name,
                "passed": report.passed,
                "informational": report.informational,
                "violations": report.violations,
            }
        )

    @property
    def failed(self) -> bool:
        return any(not r.passed and not r.informational for r in self.reports)

    def render(self, output_format: str) -> str:
        if output_format == "json":
            return json.dumps(self.payload, indent=2, ensure_ascii=False)
        return "\n".join(self.lines)


def _diagram_homology(d: LinkDiagram, config: RunConfig, out: Output) -> GradedComplex:
    c = build_complex(d, config.flavor, config.cap)
    h = homology(c, config.jobs)
    out.table("homology", "H", h)
    if config.flavor is Flavor.ORIENTED:
        out.value("polynomial", "V(q)", euler_polynomial(h))
    else:
        out.value("polynomial", "<D>(A)", framed_euler_polynomial(h, d.n))
    return c


def _kh(config: RunConfig, text: str, out: Output) -> None:
    _diagram_homology(parse_diagram(text), config, out)


def _kheq(config: RunConfig, text: str, out: Output) -> None:
    d = parse_diagram(text)
    a = d.action(config.allow_even)
    c = _diagram_homology(d, config, out)
    h_g = equivariant_homology(quotient_complex(c, a), config.jobs)
    out.table("equivariant_homology", "H_G", h_g)
    if config.flavor is Flavor.ORIENTED:
        out.value("equivariant_polynomial", "V_G(q)", equivariant_jones(h_g))
    out.table("fixed", "fixed", fixed_subspace_dims(induced_action_on_homology(c, a)))
    out.report(compare_theorem1(d, a, config.flavor, config.cap, config.jobs, c))


def _annular(config: RunConfig, text: str, out: Output) -> None:
    d = parse_diagram(text)
    c = build_annular_complex(d, config.cap)
    out.table("homology", "H", annular_homology(c, config.jobs))
    out.value("dropped_terms", "dropped terms", c.dropped_terms)
    if d.symmetry_order is not None:
        a = d.action(config.allow_even)
        out.table(
            "equivariant_homology",
            "H_G",
            equivariant_annular_homology(d, a, config.cap, config.jobs),
        )


def _graph(config: RunConfig, text: str, out: Output) -> Graph:
    g = parse_graph(text)
    out.table("homology", "H", homology(build_graph_complex(g, config.cap), config.jobs))
    out.report(chromatic_euler_check(g, config.cap))
    return g


def _grapheq(config: RunConfig, text: str, out: Output) -> None:
    g = _graph(config, text, out)
    a = g.action(config.allow_even)
    c = build_graph_complex(g, config.cap)
    out.table(
        "equivariant_homology",
        "H_G",
        equivariant_homology(quotient_complex(c, a), config.jobs),
    )
    out.report(graph_fixed_subspace_check(g, config.allow_even, config.cap))


def _equivariant_checks(c: GradedComplex, a: Any, out: Output) -> None:
    out.report(check_equivariance(c, a))
    e = quotient_complex(c, a)
    out.report(check_transfer(e))
    burnside = CheckReport("orbit count")
    counts = burnside_orbit_count(c.basis, a.act, a.p)
    for key in c.keys:
        if counts[key] != e.quotient.dim(key):
            burnside.add(f"{key}: {counts[key]} orbits, quotient dimension {e.quotient.dim(key)}")
    out.report(burnside)


def _dual_path(c: GradedComplex, h: HomologyTable, out: Output) -> None:
    if sum(c.dim(k) for k in c.keys) > DEFAULT_DENSE_CAP:
        logger.info("Complex too large for the dense path, skipping")
        return
    report = CheckReport("dense homology")
    if dense_homology(c) != h:
        report.add("dense and sparse homology differ")
    out.report(report)


def _verify_diagram(config: RunConfig, d: LinkDiagram, out: Output) -> None:
    c = build_complex(d, config.flavor, config.cap)
    h = homology(c, config.jobs)
    out.report(c.check_d_squared())
    euler = CheckReport("Euler characteristic")
    if config.flavor is Flavor.ORIENTED:
        expected = jones_from_bracket(bracket_statesum(d, config.cap), d.writhe())
        if euler_polynomial(h) != expected:
            euler.add(f"{euler_polynomial(h)} != {expected}")
    elif framed_euler_polynomial(h, d.n) != bracket_statesum(d, config.cap):
        euler.add("framed Euler characteristic differs from the bracket")
    out.report(euler)
    _dual_path(c, h, out)
    if not d.annular:
        for v in range(d.n):
            out.report(skein_exactness_check(d, v, config.cap))
    else:
        a_c = build_annular_complex(d, config.cap)
        out.report(a_c.check_d_squared())
        annular_euler = CheckReport("annular Euler characteristic")
        difference = a_c.euler_characteristic() - annular_bracket_statesum(d, config.cap)
        if sp.expand(difference) != 0:
            annular_euler.add("annular Euler characteristic differs from the state sum")
        out.report(annular_euler)
    if d.symmetry_order is not None:
        a = d.action(config.allow_even)
        _equivariant_checks(c, a, out)
        out.report(compare_theorem1(d, a, config.flavor, config.cap, config.jobs, c))


def _verify_graph(config: RunConfig, g: Graph, out: Output) -> None:
    c = build_graph_complex(g, config.cap)
    h = homology(c, config.jobs)
    out.report(c.check_d_squared())
    out.report(chromatic_euler_check(g, config.cap))
    _dual_path(c, h, out)
    if g.automorphism is not None:
        a = g.action(config.allow_even)
        _equivariant_checks(c, a, out)
        out.report(graph_fixed_subspace_check(g, config.allow_even, config.cap))


def _verify(config: RunConfig, text: str, out: Output) -> None:
    if _GRAPH_LINE.search(text):
        _verify_graph(config, parse_graph(text), out)
    else:
        _verify_diagram(config, parse_diagram(text), out)


_HANDLERS: Dict[str, Callable[[RunConfig, str, Output], Any]] = {
    "kh": _kh,
    "kheq": _kheq,
    "annular": _annular,
    "graph": _graph,
    "grapheq": _grapheq,
    "verify": _verify,
}


def run(config: RunConfig, echo: Callable[..., None] = click.echo) -> int:
    """
    Runs one command and prints its output.

    Returns:
        Exit status: 0 success, 1 invalid input, 2 resource cap exceeded,
        3 failed check (`verify`), 4 group of even order without override.
    """
    out = Output(config.command)
    try:
        text = config.input.read_text()
        _HANDLERS[config.command](config, text, out)
    except OSError as e:
        echo(f"error: cannot read {config.input}: {e}", err=True)
        return EXIT_PARSE_ERROR
    except DiagramParseException as e:
        echo(f"error: {config.input}: {e}", err=True)
        return EXIT_PARSE_ERROR
    except ResourceCapException as e:
        echo(f"error: {e}", err=True)
        return EXIT_RESOURCE_CAP
    except EvenOrderException as e:
        echo(f"error: {e}, pass --allow-even-p to compute anyway", err=True)
        return EXIT_EVEN_ORDER
    except KhovEqException as e:
        echo(f"error: {e}", err=True)
        return EXIT_PARSE_ERROR
    echo(out.render(config.output_format))
    if config.command == "verify" and out.failed:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _options(func: Callable) -> Callable:
    decorators = [
        click.argument(
            "input_file",
            metavar="INPUT",
            type=click.Path(dir_okay=False, path_type=Path),
        ),
        click.option(
            "--flavor",
            type=click.Choice([f.value for f in Flavor]),
            default=Flavor.ORIENTED.value,
            show_default=True,
            help="Grading convention.",
        ),
        click.option(
            "--format",
            "output_format",
            type=click.Choice(["table", "json"]),
            default="table",
            show_default=True,
            help="Output format.",
        ),
        click.option(
            "--cap",
            type=click.IntRange(min=1),
            envvar=CAP_ENVVAR,
            default=None,
            help="Largest accepted number of crossings (edges for graphs).",
        ),
        click.option(
            "--allow-even-p",
            "allow_even",
            is_flag=True,
            default=False,
            help="Permit a symmetry of even order, checks become informational.",
        ),
        click.option(
            "--jobs",
            type=click.IntRange(min=1),
            default=1,
            show_default=True,
            help="Worker threads for per-grading ranks.",
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


@click.group()
@click.option("-v", "--verbose", count=True, help="Log more, repeat for debug output.")
def khoveq(verbose: int) -> None:
    """Khovanov homology over GF(2) of symmetric links and graphs."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _main(
    command: str,
    input_file: Path,
    flavor: str,
    output_format: str,
    cap: Optional[int],
    allow_even: bool,
    jobs: int,
) -> None:
    config = RunConfig(
        command, input_file, Flavor(flavor), allow_even, cap, output_format, jobs
    )
    sys.exit(run(config))


@khoveq.command(help="Khovanov homology and Jones polynomial of a diagram.")
@_options
def kh(**kwargs: Any) -> None:
    _main("kh", **kwargs)


@khoveq.command(
    help="Equivariant homology of a symmetric diagram and the fixed-subspace comparison."
)
@_options
def kheq(**kwargs: Any) -> None:
    _main("kheq", **kwargs)


@khoveq.command(help="Annular homology of a diagram with puncture ray data.")
@_options
def annular(**kwargs: Any) -> None:
    _main("annular", **kwargs)


@khoveq.command(help="Chromatic homology of a graph.")
@_options
def graph(**kwargs: Any) -> None:
    _main("graph", **kwargs)


@khoveq.command(help="Equivariant chromatic homology of a graph with an automorphism.")
@_options
def grapheq(**kwargs: Any) -> None:
    _main("grapheq", **kwargs)


@khoveq.command(help="Run every oracle and property check applicable to the input.")
@_options
def verify(**kwargs: Any) -> None:
    _main("verify", **kwargs)


if __name__ == "__main__":
    khoveq()
