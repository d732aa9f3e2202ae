"""
Command-line front end: one subcommand per pipeline stage, text or JSON on stdout.
Exit status 0 on success, 1 on a domain error (printed as "<ErrorName>: message" on stderr), 2 on usage errors.
"""

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from . import laurent
from .braids import alexander_from_seifert, determinant, parse_braid, seifert_matrix, signature
from .config_manager import load_config
from .constants import DOWN, UP
from .errors import ConckitError, DimensionMismatch
from .lattice import (IntForm, NotStandard, definiteness, diagonalize_to_standard, max_char_square,
                      min_char_square)
from .patterns import (bar, concordance_inverse, dual, normalize, parse_pattern,
                       pattern_to_json, to_text, trace_partner, winding_number)
from .pipeline import FamilyMember, ObstructionPipeline
from .surgery import (BlackboardFraming, SurgeryDiagram, cf_expand, chain_attach, format_fraction,
                      lift_framing, linking_matrix, parse_fraction)

log = logging.getLogger(__name__)

Result = Tuple[str, object]


class _Parser(argparse.ArgumentParser):
    ''' Treats "-1/4" and "-3" as values, not option flags. '''

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # private argparse hook; the negative-value tests in tests/test_cli.py pin it
        self._negative_number_matcher = re.compile(r'^-\d')


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {value}')
    return value


def _read_json(path: str):
    return json.loads(Path(path).read_text())


# Subcommand handlers: (args, pipeline) -> (text, payload)

def _braid(args):
    return parse_braid(args.braid, args.strands)


def cmd_alexander(args, pipeline: ObstructionPipeline) -> Result:
    if args.family_n is not None:
        poly = FamilyMember(args.family_n).alexander()
    else:
        poly = alexander_from_seifert(seifert_matrix(_braid(args)))
    return laurent.to_text(poly), {'alexander': laurent.to_json(poly), 'text': laurent.to_text(poly)}


def cmd_signature(args, pipeline: ObstructionPipeline) -> Result:
    sigma = signature(seifert_matrix(_braid(args)))
    return str(sigma), {'signature': sigma}


def cmd_det(args, pipeline: ObstructionPipeline) -> Result:
    if args.family_n is not None:
        det = FamilyMember(args.family_n).determinant()
    else:
        det = determinant(seifert_matrix(_braid(args)))
    return str(det), {'determinant': det}


def cmd_pattern(args, pipeline: ObstructionPipeline) -> Result:
    expr = parse_pattern(args.expr)
    registry = pipeline.registry
    if args.dual:
        operation, result = 'dual', dual(expr, registry)
    elif args.bar:
        operation, result = 'bar', bar(expr, registry)
    elif args.inverse:
        operation, result = 'inverse', concordance_inverse(expr, registry)
    elif args.trace_partner is not None:
        operation, result = f'trace-partner({args.trace_partner})', trace_partner(expr, args.trace_partner, registry)
    else:
        operation, result = 'normalize', normalize(expr, registry)
    payload = {'input': to_text(expr), 'operation': operation, 'result': to_text(result),
               'ast': pattern_to_json(result), 'windingNumber': winding_number(result)}
    return to_text(result), payload


def cmd_cf(args, pipeline: ObstructionPipeline) -> Result:
    value = parse_fraction(args.frac)
    coeffs = cf_expand(value.numerator, value.denominator)
    return str(coeffs), {'fraction': format_fraction(value), 'coefficients': coeffs}


def cmd_lattice(args, pipeline: ObstructionPipeline) -> Result:
    data = _read_json(args.matrix)
    rows = data.get('matrix') if isinstance(data, dict) else data
    if not isinstance(rows, list):
        raise DimensionMismatch(f'{args.matrix} does not hold a row array')
    form = IntForm(rows)
    if args.check == 'definiteness':
        kind = definiteness(form)
        return kind, {'definiteness': kind, 'rank': form.rank}
    if args.check == 'standardize':
        P = diagonalize_to_standard(form, pipeline.limit)
        if isinstance(P, NotStandard):
            return f'NotStandard: {P.reason}', {'standard': False, 'reason': P.reason}
        basis = [[int(x) for x in row] for row in P]
        return '\n'.join(str(row) for row in basis), {'standard': True, 'basis': basis}
    search = max_char_square if args.check == 'char-max' else min_char_square
    result = search(form, pipeline.limit)
    payload = {'charSquare': result.square, 'witness': list(result.witness), 'method': result.method,
               'searchBound': None if result.search_bound is None else format_fraction(result.search_bound),
               'enumerated': result.enumerated}
    return f'{result.square} (witness {list(result.witness)}, {result.method})', payload


def cmd_lift(args, pipeline: ObstructionPipeline) -> Result:
    downstairs = BlackboardFraming.from_coefficient(parse_fraction(args.coeff), args.writhe)
    lifts = lift_framing(downstairs, args.branch_lk, args.lift_writhe, args.degree)
    entries = [{'m': f.m, 'b': f.b, 'writhe': f.writhe, 'coefficient': format_fraction(f.coefficient)}
               for f in lifts]
    lines = [f'(m, b, w) = ({downstairs.m}, {downstairs.b}, {downstairs.writhe}) lifts to {len(lifts)} curve(s)']
    lines.extend(f'  ({e["m"]}, {e["b"]}, {e["writhe"]}): {e["coefficient"]}' for e in entries)
    return '\n'.join(lines), {'downstairs': {'m': downstairs.m, 'b': downstairs.b, 'writhe': downstairs.writhe},
                              'lifts': entries}


def _steps_result(steps) -> Result:
    return '\n'.join(f'{s.source} -> {s.target}: {s.describe()}' for s in steps), [s.to_json() for s in steps]


def cmd_monotone(args, pipeline: ObstructionPipeline) -> Result:
    return _steps_result(pipeline.monotonicity_certificate(args.k, args.direction))


def cmd_general(args, pipeline: ObstructionPipeline) -> Result:
    return _steps_result(pipeline.general_monotonicity_certificate(args.n, args.k, args.direction))


def cmd_obstruct(args, pipeline: ObstructionPipeline) -> Result:
    report = pipeline.obstruct_pair(args.k)
    report.validate(pipeline.limit, pipeline.registry)
    return report.to_text(), report.to_json()


def cmd_slice(args, pipeline: ObstructionPipeline) -> Result:
    report = pipeline.slice_obstruction(args.family_n)
    return report.to_text(), report.to_json()


def cmd_shared(args, pipeline: ObstructionPipeline) -> Result:
    report = pipeline.shared_invariant_check(args.family_n, args.radius)
    return report.to_text(), report.to_json()


def cmd_chain(args, pipeline: ObstructionPipeline) -> Result:
    diagram = chain_attach(SurgeryDiagram.from_json(_read_json(args.diagram)), args.component)
    matrix = linking_matrix(diagram)
    return '\n'.join(str(row) for row in matrix), {'diagram': diagram.to_json(), 'linkingMatrix': matrix}


def _add_braid_source(p: argparse.ArgumentParser, family: bool):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--braid', help='braid word, e.g. "1 1 1"')
    if family:
        group.add_argument('--family-n', type=int, help='member n of the family (tau_n J)(U)')
    p.add_argument('--strands', type=int, default=None, help='strand count (default: largest generator + 1)')
    if not family:
        p.set_defaults(family_n=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='conckit', description='Knot invariants, pattern calculus and d-invariant certificates.')
    parser.add_argument('--format', choices=('text', 'json'), default='text', help='output format')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')
    parser.add_argument('--config', default=None, help='name of a config overlay in config/')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('alexander', help='normalized Alexander polynomial')
    _add_braid_source(p, family=True)
    p.set_defaults(handler=cmd_alexander)

    p = sub.add_parser('signature', help='knot signature of a braid closure')
    _add_braid_source(p, family=False)
    p.set_defaults(handler=cmd_signature)

    p = sub.add_parser('det', help='knot determinant')
    _add_braid_source(p, family=True)
    p.set_defaults(handler=cmd_det)

    p = sub.add_parser('pattern', help='normalize, dualize or invert a pattern expression')
    p.add_argument('--expr', required=True, help='e.g. "dual(twist(1, J))"')
    op = p.add_mutually_exclusive_group()
    op.add_argument('--dual', action='store_true')
    op.add_argument('--bar', action='store_true')
    op.add_argument('--inverse', action='store_true', help='concordance inverse bar(P*)')
    op.add_argument('--normalize', action='store_true', help='normal form (default)')
    op.add_argument('--trace-partner', type=int, default=None, metavar='N', help='twist(N, dual(P))')
    p.set_defaults(handler=cmd_pattern)

    p = sub.add_parser('cf', help='negative continued fraction of p/q')
    p.add_argument('--frac', required=True, help='p/q')
    p.set_defaults(handler=cmd_cf)

    p = sub.add_parser('lattice', help='checks on a symmetric integer matrix (JSON rows)')
    p.add_argument('--matrix', required=True, help='JSON file with a row array')
    p.add_argument('--check', required=True, choices=('definiteness', 'char-max', 'char-min', 'standardize'))
    p.set_defaults(handler=cmd_lattice)

    p = sub.add_parser('lift', help='lift a framed unknot to a cyclic branched cover')
    p.add_argument('--coeff', required=True, help='surgery coefficient p/q')
    p.add_argument('--writhe', type=int, default=0)
    p.add_argument('--branch-lk', type=int, required=True, help='linking number with the branch knot')
    p.add_argument('--lift-writhe', type=int, required=True)
    p.add_argument('--degree', type=int, default=2)
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser('monotone', help='chain-cobordism bound between Y0 and Y+-k')
    p.add_argument('--k', type=_positive_int, required=True)
    p.add_argument('--direction', choices=(UP, DOWN), default=UP)
    p.set_defaults(handler=cmd_monotone)

    p = sub.add_parser('general', help='monotonicity step for an n-fold cover')
    p.add_argument('--n', type=int, required=True, help='cover degree')
    p.add_argument('--k', type=_positive_int, required=True)
    p.add_argument('--direction', choices=(UP, DOWN), default=UP)
    p.set_defaults(handler=cmd_general)

    p = sub.add_parser('obstruct', help='d-invariant obstruction for K_k and its 0-trace partner')
    p.add_argument('--k', type=_positive_int, required=True)
    p.set_defaults(handler=cmd_obstruct)

    p = sub.add_parser('slice', help='non-sliceness of (tau_n J)(U)')
    p.add_argument('--family-n', type=int, required=True)
    p.set_defaults(handler=cmd_slice)

    p = sub.add_parser('shared', help='Alexander polynomial shared with the 0-trace partner')
    p.add_argument('--family-n', type=int, required=True)
    p.add_argument('--radius', type=int, default=None)
    p.set_defaults(handler=cmd_shared)

    p = sub.add_parser('chain', help='replace a +-1/k component of a diagram by its integral chain')
    p.add_argument('--diagram', required=True, help='diagram JSON file')
    p.add_argument('--component', required=True)
    p.set_defaults(handler=cmd_chain)
    return parser


def _configure_logging(config: Dict, verbosity: int):
    log_cfg = config.get('logging', {})
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(log_cfg.get('level', 'WARNING')).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format=log_cfg.get('format', '%(asctime)s (%(name)s) %(levelname)s: %(message)s'),
                        datefmt=log_cfg.get('datefmt', '%H:%M:%S'))


def run(argv: Optional[List[str]] = None) -> int:
    ''' Parse argv, dispatch one subcommand and print its result.

        :param list argv: arguments without the program name (default: sys.argv[1:])

        :return: exit status
    '''
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)

    try:
        config = load_config(args.config)
    except FileNotFoundError as e:
        print(f'FileNotFoundError: {e}', file=sys.stderr)
        return 1
    _configure_logging(config, args.verbose)

    handler: Callable = args.handler
    try:
        text, payload = handler(args, ObstructionPipeline(config))
    except ConckitError as e:
        print(f'{type(e).__name__}: {e}', file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as e:
        print(f'{type(e).__name__}: {e}', file=sys.stderr)
        return 1

    if args.format == 'json':
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)
    return 0


def main():
    sys.exit(run())
