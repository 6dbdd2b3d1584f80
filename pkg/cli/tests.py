import json
import os
import tempfile
from io import StringIO
from unittest import skipUnless

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag

from arith.exceptions import ContextError, ParseError, UndeclaredIdentifier
from classify.exceptions import UnknownMode
from grobner.tests import fixture_system, toy_system
from hermite.utils import drl_matrix
from .exceptions import EmptySystem, MissingSection
from .models import JobConfig
from .utils import parse_polynomials, parse_system, render_system

FIXTURES = settings.BASE_DIR / 'fixtures'


def read_fixture(name):
    with open(FIXTURES / name, encoding='utf-8') as handle:
        return handle.read()


class ParseSystemTests(SimpleTestCase):
    def test_fixture_file(self):
        system = parse_system(read_fixture('fixture.sys'))
        self.assertEqual((system.m, system.n, system.t, system.d), (2, 2, 3, 2))
        self.assertEqual(system.polys, fixture_system().polys)

    def test_inline_toy(self):
        system = parse_system("params: y1 y2\nvars: x\npolys:\nx^2 + y1*x + y2")
        self.assertEqual(system.polys, toy_system().polys)

    def test_comments_and_commas(self):
        text = "# toy\nparams: y1, y2  # two of them\nvars: x\npolys:\n\nx^2 + y1*x + y2  # monic\n"
        self.assertEqual(parse_system(text).polys, toy_system().polys)

    def test_empty_polynomial_list(self):
        with self.assertRaises(EmptySystem) as ctx:
            parse_system("params: y1\nvars: x\npolys:\n")
        self.assertEqual(ctx.exception.exit_code, 4)

    def test_undeclared_identifier_position(self):
        with self.assertRaises(UndeclaredIdentifier) as ctx:
            parse_system("params: y1\nvars: x\npolys:\nx + z\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (4, 5))

    def test_inline_polynomial_keeps_columns(self):
        with self.assertRaises(UndeclaredIdentifier) as ctx:
            parse_system("params: y1\nvars: x\npolys: x - y1 + q\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 17))

    def test_structure_errors(self):
        with self.assertRaises(MissingSection):
            parse_system("params: y1\npolys:\ny1\n")
        with self.assertRaises(MissingSection):
            parse_system("params:\nvars: x\npolys:\nx\n")
        with self.assertRaises(ParseError) as ctx:
            parse_system("x + 1\nparams: y1\nvars: x\npolys:\nx\n")
        self.assertEqual(ctx.exception.line, 1)
        with self.assertRaises(ParseError):
            parse_system("params: y1\nvars: x\nequations:\nx\n")
        with self.assertRaises(ContextError):
            parse_system("params: x\nvars: x\npolys:\nx\n")

    def test_round_trip(self):
        for name in ('fixture.sys', 'toy.sys', 'kuramoto.sys'):
            system = parse_system(read_fixture(name))
            again = parse_system(render_system(system))
            self.assertEqual(again.context, system.context)
            self.assertEqual(again.polys, system.polys)

    def test_polynomial_list(self):
        ring, polys = parse_polynomials("params: y1 y2\npolys:\ny1^2 - 4*y2\ny1*y2\n")
        y1, y2 = ring.gens
        self.assertEqual(polys, [y1**2 - 4 * y2, y1 * y2])
        with self.assertRaises(ParseError):
            parse_polynomials("params: y1\nvars: x\npolys:\ny1\n")


class JobConfigTests(SimpleTestCase):
    def test_defaults(self):
        cfg = JobConfig('toy.sys')
        self.assertEqual(cfg.seed, settings.RRC_DEFAULT_SEED)
        self.assertEqual(cfg.mode, 'hermite-full')

    def test_rejects_unknown_values(self):
        with self.assertRaises(UnknownMode):
            JobConfig('toy.sys', mode='guess')
        with self.assertRaises(UnknownMode):
            JobConfig('toy.sys', fast_mode='sometimes')


class RrcCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        return path

    def call(self, *args):
        out = StringIO()
        call_command('rrc', *args, stdout=out)
        return out.getvalue()

    def test_matrix_of_the_toy(self):
        output = self.call('matrix', '--input', str(FIXTURES / 'toy.sys'))
        self.assertIn('[2, -y1]', output)
        self.assertIn('[-y1, y1^2 - 2*y2]', output)

    def test_print_matrix_with_solve(self):
        output = self.call(
            'solve', '--mode', 'matrix-only', '--print-matrix', '--input', str(FIXTURES / 'toy.sys'),
        )
        self.assertIn('[-y1, y1^2 - 2*y2]', output)

    def test_solve_writes_reproducible_json(self):
        first = os.path.join(self.tmp.name, 'first.json')
        second = os.path.join(self.tmp.name, 'second.json')
        for path in (first, second):
            self.call(
                'solve', '--mode', 'hermite-full', '--fast-mode', 'off', '--seed', '7',
                '--input', str(FIXTURES / 'toy.sys'), '--json', path,
            )
        with open(first, 'rb') as a, open(second, 'rb') as b:
            content = a.read()
            self.assertEqual(content, b.read())
        payload = json.loads(content)
        self.assertEqual(payload['formulas'], {'0': [[-1]], '2': [[1]]})
        self.assertEqual(payload['seed'], 7)

    def test_json_format_on_stdout(self):
        output = self.call('solve', '--mode', 'sturm', '--format', 'json', '--input', str(FIXTURES / 'toy.sys'))
        self.assertEqual(json.loads(output)['algorithm'], 'sturm')

    def test_sample_points(self):
        path = self.write('line.sys', "params: y1\npolys:\ny1\n")
        self.assertEqual(self.call('sample-points', '--input', path).split(), ['(-1)', '(1)'])

    def test_x_order(self):
        output = self.call(
            'matrix', '--input', str(FIXTURES / 'fixture.sys'), '--x-order', 'x2,x1',
        )
        self.assertIn('basis 1, x1, x2, x1^2', output)

    def test_exit_codes(self):
        cases = [
            ("params: y1\nvars: x1 x2\npolys:\nx1 - y1\n", 2),
            ("params: y1\nvars: x\npolys:\nx + z\n", 4),
            ("params: y1\nvars: x\npolys:\n", 4),
        ]
        for text, code in cases:
            path = self.write('case.sys', text)
            with self.assertRaises(CommandError) as ctx:
                self.call('solve', '--input', path)
            self.assertEqual(ctx.exception.returncode, code)

    def test_missing_input_file(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('solve', '--input', os.path.join(self.tmp.name, 'absent.sys'))
        self.assertEqual(ctx.exception.returncode, 1)

    @tag('slow')
    def test_sturm_on_the_fixture(self):
        path = os.path.join(self.tmp.name, 'sturm.json')
        self.call('solve', '--mode', 'sturm', '--input', str(FIXTURES / 'fixture.sys'), '--json', path)
        with open(path, encoding='utf-8') as handle:
            payload = json.load(handle)
        conditions = {tuple(signs) for signs in (cell['signs'] for cell in payload['cells'])}
        self.assertEqual(len(conditions), 7)
        self.assertEqual(sorted(int(count) for count in payload['formulas']), [0, 2, 4])


@tag('slow')
@skipUnless(settings.RRC_STRETCH_TESTS, "set RRC_STRETCH_TESTS=1")
class KuramotoStretchTests(SimpleTestCase):
    def test_hermite_matrix_size(self):
        system = parse_system(read_fixture('kuramoto.sys'))
        self.assertEqual(drl_matrix(system).delta, 14)
