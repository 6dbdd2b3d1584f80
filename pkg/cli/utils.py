"""
Reading and writing parametric systems, and running one rrc job.

Input format, one item per line, '#' starts a comment:

    params: y1 y2 y3
    vars: x1 x2
    polys:
    x1^2 + x2^2 - y1
    x1*x2 + y2*x2 + y3*x1
"""

import json
import logging
import re

from arith.exceptions import ParseError
from arith.models import VarContext
from arith.utils import grevlex_ring, parse_poly, render
from classify.utils import run_mode, to_payload, to_text
from grobner.models import ParametricSystem
from hermite.utils import drl_matrix
from .exceptions import EmptySystem, MissingSection

logger = logging.getLogger(__name__)

SECTIONS = ('params', 'vars', 'polys')
HEADER_PATTERN = re.compile(r'^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:')


def _split_sections(text, allowed):
    """
    Section name -> list of (line number, text) with the header blanked out,
    so that columns still point into the original line.
    """
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        match = HEADER_PATTERN.match(line)
        if match:
            name = match.group(1)
            if name not in allowed:
                raise ParseError(f"Unknown section {name!r}, expected one of {', '.join(allowed)}", lineno, 1)
            if name in sections:
                raise ParseError(f"Section {name!r} appears twice", lineno, 1)
            current = name
            sections[current] = []
            line = ' ' * match.end() + line[match.end():]
        if not line.strip():
            continue
        if current is None:
            raise ParseError("Content before the first section header", lineno, 1)
        sections[current].append((lineno, line))
    return sections


def _names(entries):
    names = []
    for _, line in entries:
        names.extend(name for name in re.split(r'[\s,]+', line.strip()) if name)
    return tuple(names)


def _polys(entries, ring):
    polys = [parse_poly(line, ring, line=lineno) for lineno, line in entries]
    if not polys:
        raise EmptySystem("The polys: section is empty")
    return polys


def _require(sections, name):
    if name not in sections:
        raise MissingSection(f"Missing {name}: section")
    return sections[name]


def parse_system(text):
    """ParametricSystem from the params:/vars:/polys: format."""
    sections = _split_sections(text, SECTIONS)
    params = _names(_require(sections, 'params'))
    variables = _names(_require(sections, 'vars'))
    if not params:
        raise MissingSection("A system needs at least one parameter")
    context = VarContext(params, variables)
    polys = _polys(_require(sections, 'polys'), context.ring)
    system = ParametricSystem(context, tuple(polys))
    logger.info(f"Parsed {system.m} polynomials in {system.n} variables and {system.t} parameters")
    return system


def parse_polynomials(text):
    """(ring, polynomials) from the params:/polys: format used by sample-points."""
    sections = _split_sections(text, ('params', 'polys'))
    params = _names(_require(sections, 'params'))
    if not params:
        raise MissingSection("At least one parameter is required")
    ring = grevlex_ring(params)
    return ring, _polys(_require(sections, 'polys'), ring)


def render_system(system):
    lines = [
        f"params: {' '.join(system.context.params)}",
        f"vars: {' '.join(system.context.variables)}",
        'polys:',
    ]
    lines.extend(render(f) for f in system.polys)
    return '\n'.join(lines) + '\n'


def parse_input(text, mode):
    """Polynomial list for sample-points, ParametricSystem otherwise."""
    if mode == 'sample-points':
        return parse_polynomials(text)[1]
    return parse_system(text)


def classify_text(text, mode='hermite-full', **options):
    """Parse, run and return the JSON payload; shared by the API and background jobs."""
    return to_payload(run_mode(parse_input(text, mode), mode, **options))


def _read(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def run(cfg, stdout=None):
    """
    Execute one job: parse the input, run the mode, print the text summary
    to ``stdout`` and write the JSON result to ``cfg.json_path``.

    Returns:
        The JSON payload (a dict).
    """
    system = parse_input(_read(cfg.input_path), cfg.mode)

    outcome = run_mode(
        system, cfg.mode, seed=cfg.seed, fast_mode=cfg.fast_mode,
        lam=cfg.lam, prime=cfg.prime, x_order=cfg.x_order,
    )
    payload = to_payload(outcome)
    document = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)

    if cfg.json_path:
        with open(cfg.json_path, 'w', encoding='utf-8') as handle:
            handle.write(document + '\n')
        logger.info(f"Wrote {cfg.mode} result to {cfg.json_path}")

    if stdout is not None:
        if cfg.output == 'json':
            stdout.write(document + '\n')
        else:
            if cfg.print_matrix and cfg.mode not in ('matrix-only', 'sample-points'):
                stdout.write(drl_matrix(system.reordered(cfg.x_order)).as_text() + '\n')
            stdout.write(to_text(outcome) + '\n')
    return payload
