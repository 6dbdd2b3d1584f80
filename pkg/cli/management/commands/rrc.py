from django.core.management.base import BaseCommand, CommandError

from classify.utils import FAST_MODES, MODES
from real_roots.exceptions import RealRootsError
from cli.models import JobConfig
from cli.utils import run


class Command(BaseCommand):
    help = "Classify the real solutions of a parametric polynomial system"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', required=True)

        solve = subparsers.add_parser('solve', help="Run a classification mode on a system file")
        solve.add_argument('--mode', choices=MODES, default='hermite-full')
        self._common(solve)

        sample = subparsers.add_parser('sample-points', help="Sample points off the zeros of polynomials")
        self._common(sample)

        matrix = subparsers.add_parser('matrix', help="Print the parametric Hermite matrix")
        self._common(matrix)

    def _common(self, parser):
        parser.add_argument('--input', required=True, help="System file (params:/vars:/polys:)")
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--x-order', default=None, help="Comma separated variable order, e.g. x2,x1")
        parser.add_argument('--json', dest='json_path', default=None, help="Write the JSON result here")
        parser.add_argument('--format', dest='output', choices=('text', 'json'), default='text')
        parser.add_argument('--print-matrix', action='store_true')
        parser.add_argument('--lambda', dest='lam', type=int, default=None,
                            help="Interpolation degree bound for the matrix")
        parser.add_argument('--prime', type=int, default=None, help="Modulus of the minor probe")
        parser.add_argument('--fast-mode', choices=FAST_MODES, default=None)

    def handle(self, *args, **options):
        action = options['action']
        if action == 'sample-points':
            mode = 'sample-points'
        elif action == 'matrix':
            mode = 'matrix-only'
        else:
            mode = options['mode']
        x_order = options.get('x_order')
        if x_order:
            x_order = tuple(name.strip() for name in x_order.split(',') if name.strip())

        try:
            cfg = JobConfig(
                input_path=options['input'],
                mode=mode,
                seed=options.get('seed'),
                x_order=x_order or None,
                output=options.get('output') or 'text',
                json_path=options.get('json_path'),
                lam=options.get('lam'),
                prime=options.get('prime'),
                fast_mode=options.get('fast_mode'),
                print_matrix=options.get('print_matrix', False),
            )
            run(cfg, stdout=self.stdout)
        except RealRootsError as e:
            raise CommandError(f"{type(e).__name__}: {e}", returncode=e.exit_code) from e
        except OSError as e:
            raise CommandError(f"Cannot read {options['input']}: {e}", returncode=1) from e
