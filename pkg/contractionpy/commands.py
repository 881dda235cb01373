"""
Command line front end.

    contractionpy count     --n 1..7 --families reg-oct,e-orct
    contractionpy rank      --n 4..6 --families l:*,reg-orct
    contractionpy enumerate --family k:3 --n 4
    contractionpy factorize --n 4 --p 2 --element "[1,2,2,2]" --gens corners
    contractionpy greens    --family reg-orct --n 4
    contractionpy verify    --n 1..6

Exit codes: 0 all rows match, 1 some row mismatches, 2 usage or scale error,
3 some rank search ran out of budget.
"""
import argparse
import csv
import io
import json
import sys

from contractionpy.cache import open_cache
from contractionpy.defaults import ContractionConfig, report_formats
from contractionpy.families import FamilyId, corner, default_method, enumerate_family, grid_coordinates
from contractionpy.genrank import PLAIN, factorize, explicit_genset, rees
from contractionpy.greens import greens_abstract, greens_by_invariants, lemma_check, structure_report
from contractionpy.transformations import classify, parse_transformation
from contractionpy.utils.exceptions import BadParameter, ScaleRefusal
from contractionpy.utils.formatting import parse_n_range, split_csv
from contractionpy.verification import (SweepOptions, count_defaults, count_report, rank_defaults, rank_report,
                                        verify_report)

exit_ok = 0
exit_usage = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadParameter(f'{self.prog}: {message}')


def _common(parser, method_choices=('filter', 'construct', 'both'), method_default='filter'):
    parser.add_argument('--format', choices=report_formats, default=None,
                        help='report format (default from the config file)')
    parser.add_argument('--method', choices=method_choices, default=method_default)
    parser.add_argument('--jobs', type=int, default=None, help='worker processes')
    parser.add_argument('--budget', type=int, default=None, help='subsets a rank search may test')
    parser.add_argument('--cache-dir', default=None, help='result cache directory')
    parser.add_argument('--force-scale', action='store_true', help='filter beyond the scale ceiling')
    parser.add_argument('--config', default=None, help='config file path')
    parser.add_argument('--verbose', action='store_true', help='time each cell on stderr')
    parser.add_argument('--progress', action='store_true', help='progress bar on stderr')


def build_parser():
    parser = _Parser(prog='contractionpy', description='Contraction semigroups on a finite chain.')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    count = sub.add_parser('count', help='cardinalities against the closed forms')
    count.add_argument('--n', default='1..7')
    count.add_argument('--families', default=','.join(count_defaults))
    _common(count)

    rank = sub.add_parser('rank', help='exact ranks against the rank theorems')
    rank.add_argument('--n', default='1..6')
    rank.add_argument('--families', default=','.join(rank_defaults))
    rank.add_argument('--witnesses', action='store_true', help='store a word for every element in each certificate')
    _common(rank)

    enum = sub.add_parser('enumerate', help='list a family in canonical order')
    enum.add_argument('--family', required=True)
    enum.add_argument('--n', type=int, required=True)
    _common(enum, method_default=None)

    fact = sub.add_parser('factorize', help='shortest word over a generating set')
    fact.add_argument('--element', required=True)
    fact.add_argument('--gens', required=True,
                      help="corners, genset-q, genset-w, a family spec, or ';'-separated literals")
    fact.add_argument('--n', type=int, default=None)
    fact.add_argument('--p', type=int, default=None)
    fact.add_argument('--mode', choices=['plain', 'rees'], default='plain')
    _common(fact)

    greens = sub.add_parser('greens', help="Green's classes and structure flags of a family")
    greens.add_argument('--family', required=True)
    greens.add_argument('--n', type=int, required=True)
    greens.add_argument('--relations', choices=['invariants', 'abstract'], default='invariants')
    _common(greens, method_choices=('filter', 'construct'), method_default=None)

    verify = sub.add_parser('verify', help='count, rank and structural checks in one sweep')
    verify.add_argument('--n', default='1..6')
    verify.add_argument('--witnesses', action='store_true', help='store a word for every element in each certificate')
    _common(verify)
    return parser


def _options(args, config):
    cache_dir = args.cache_dir if args.cache_dir else config.cache_directory
    return SweepOptions(
        method=args.method if args.method is not None else 'filter',
        jobs=args.jobs if args.jobs is not None else config.jobs,
        budget=args.budget if args.budget is not None else config.budget,
        scale_ceiling=config.scale_ceiling,
        force_scale=args.force_scale,
        cache=open_cache(cache_dir),
        progress=args.progress,
        verbose=args.verbose,
        witnesses=getattr(args, 'witnesses', False),
    )


# subcommands

def cmd_count(args, config, out):
    options = _options(args, config)
    report = count_report(parse_n_range(args.n), split_csv(args.families), options)
    print(report.render(args.format), file=out)
    return report.exit_code


def cmd_rank(args, config, out):
    options = _options(args, config)
    report = rank_report(parse_n_range(args.n), split_csv(args.families), options)
    print(report.render(args.format), file=out)
    return report.exit_code


def cmd_verify(args, config, out):
    options = _options(args, config)
    report = verify_report(parse_n_range(args.n), options)
    print(report.render(args.format), file=out)
    return report.exit_code


def _flag_names(alpha):
    flags = classify(alpha)
    return '|'.join(name for name, value in vars(flags).items() if value)


def cmd_enumerate(args, config, out):
    family = FamilyId.from_spec(args.family)
    method = args.method if args.method is not None else default_method(family)
    if method == 'both':
        raise BadParameter('enumerate takes a single method')
    options = _options(args, config)
    S = enumerate_family(family, args.n, method=method, jobs=options.jobs, scale_ceiling=options.scale_ceiling,
                         force_scale=options.force_scale)
    if args.format == 'json':
        print(json.dumps(S.literals()), file=out)
    elif args.format == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['n', 'family', 'index', 'literal', 'rank', 'flags'])
        for i, alpha in enumerate(S):
            writer.writerow([args.n, family.spec, i, alpha.literal, alpha.rank, _flag_names(alpha)])
        print(buffer.getvalue().rstrip('\n'), file=out)
    else:
        for alpha in S:
            print(alpha.literal, file=out)
    return exit_ok


def resolve_generators(spec, n=None, p=None):
    """
        Generators named on the command line.

        corners            [eta, tau] of K_p (needs n and p)
        genset-q, genset-w the explicit generating sets (needs n and p)
        a family spec      its elements; 'reg-oct:4' reads as degree 4
        literals           '[1,1,2];[2,3,3]'
    """
    spec = spec.strip()
    if spec.startswith('['):
        return [parse_transformation(text) for text in spec.split(';') if text.strip()]
    if spec in ['corners', 'genset-q', 'genset-w']:
        if n is None or p is None:
            raise BadParameter(f'--gens {spec} needs --n and --p')
        if spec == 'corners':
            return [corner(n, p, 'eta'), corner(n, p, 'tau')]
        return explicit_genset(n, p, 'Q' if spec == 'genset-q' else 'W')
    try:
        family = FamilyId.from_spec(spec)
    except BadParameter:
        prefix, _, degree = spec.rpartition(':')
        family = FamilyId.from_spec(prefix)
        n = int(degree)
    if n is None:
        raise BadParameter(f'--gens {spec} needs --n')
    return list(enumerate_family(family, n, method=default_method(family)))


def cmd_factorize(args, config, out):
    element = parse_transformation(args.element)
    n = args.n if args.n is not None else element.degree
    gens = resolve_generators(args.gens, n, args.p)
    mode = PLAIN
    if args.mode == 'rees':
        mode = rees(args.p if args.p is not None else element.rank)
    word = factorize(element, gens, mode)
    if args.format == 'json':
        record = {
            'element': element.literal,
            'generators': [g.literal for g in gens],
            'mode': str(mode),
            'word': list(word.generator_indices) if word is not None else None,
            'factors': [gens[i].literal for i in word.generator_indices] if word is not None else None,
        }
        print(json.dumps(record, indent=2), file=out)
    else:
        print(word.format(gens) if word is not None else 'unreachable', file=out)
    return exit_ok


def _class_label(alpha):
    try:
        c, r, orientation = grid_coordinates(alpha)
        return f'({c},{r},{orientation})'
    except BadParameter:
        return ''


def cmd_greens(args, config, out):
    family = FamilyId.from_spec(args.family)
    method = args.method if args.method is not None else default_method(family)
    options = _options(args, config)
    S = enumerate_family(family, args.n, method=method, jobs=options.jobs, scale_ceiling=options.scale_ceiling,
                         force_scale=options.force_scale)
    structure = greens_abstract(S) if args.relations == 'abstract' else greens_by_invariants(S)
    report = structure_report(S)
    lemma = lemma_check(S) if report.closed else None
    if args.format == 'json':
        record = {
            'family': family.spec,
            'n': args.n,
            'method': structure.method,
            'counts': structure.counts(),
            'classes': {relation: [[S[i].literal for i in block] for block in structure.classes(relation)]
                        for relation in 'RLHD'},
            'structure': report.to_dict(),
        }
        if lemma is not None:
            record['lemma'] = vars(lemma)
        print(json.dumps(record, indent=2), file=out)
        return exit_ok
    counts = structure.counts()
    print(f'{family.spec} n={args.n} |S|={len(S)} ' + ' '.join(f'{k}={v}' for k, v in counts.items()), file=out)
    for relation in 'RLHD':
        for k, block in enumerate(structure.classes(relation)):
            members = ' '.join(S[i].literal + _class_label(S[i]) for i in block)
            print(f'{relation} {k}: {members}', file=out)
    print(f'closed={report.closed} all_regular={report.all_regular} l_unipotent={report.l_unipotent} '
          f'idempotents={report.idempotent_count}', file=out)
    if lemma is not None:
        print(f'R=kernel: {lemma.r_is_kernel}  L=image: {lemma.l_is_image}', file=out)
    return exit_ok


commands = {
    'count': cmd_count,
    'rank': cmd_rank,
    'enumerate': cmd_enumerate,
    'factorize': cmd_factorize,
    'greens': cmd_greens,
    'verify': cmd_verify,
}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        config = ContractionConfig(args.config) if args.config else ContractionConfig()
        if args.format is None:
            args.format = config.get('report', 'format')
        return commands[args.command](args, config, out)
    except ScaleRefusal as err:
        print(f'error: {err}', file=sys.stderr)
        return exit_usage
    except ValueError as err:
        print(f'error: {err}', file=sys.stderr)
        return exit_usage
