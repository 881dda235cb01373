"""
Verification sweeps: computed values next to the published ones.

Every sweep returns a Report. Rows are ordered by (check, family, n, p)
whatever order the cells ran in, and nothing time dependent enters the
payload, so identical invocations render identical reports.
"""
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field

from tqdm import tqdm

from contractionpy.cache import NoCache, family_key, rank_key
from contractionpy.claims import erratum_e, lookup, note_for, split_spec
from contractionpy.families import FamilyId, FamilySet, enumerate_family, default_scale_ceiling
from contractionpy.genrank import (RankCertificate, default_budget, generates, inclusion_check, is_irredundant,
                                   min_rank, explicit_genset, quotient_q, quotient_w, rees, remark_checks,
                                   two_letter_factorizations)
from contractionpy.greens import lemma_check, structure_report
from contractionpy.transformations import parse_transformation
from contractionpy.utils.exceptions import BadParameter, CorruptCacheWarning, UnsupportedMethod
from contractionpy.utils.timer import timer
from contractionpy.utils.formatting import lines_to_text

report_schema_version = 1

check_order = ['count', 'erratum', 'rank', 'closed', 'l-unipotent', 'greens', 'greens-labels', 'remark',
               'inclusion', 'two-letter', 'genset']

count_defaults = ['reg-oct', 'reg-orct', 'e-oct', 'e-orct', 'k:*', 'e:*']
rank_defaults = ['reg-oct', 'reg-orct', 'e-orct', 'l:*', 'm:*']
verify_rank_defaults = rank_defaults + ['q:*', 'w:*']
structure_defaults = ['reg-oct', 'reg-orct', 'e-oct', 'e-orct']

quotients = {'q': quotient_q, 'w': quotient_w}

csv_columns = ['check', 'family', 'n', 'p', 'computed', 'claimed', 'source', 'match', 'status', 'bounds', 'note']


@dataclass
class VerificationRow:
    """
        One (check, family, n) cell of a report.

        claimed and match are both None when no published statement applies.
        bounds is set only for inconclusive rank rows; match is then False
        when the claimed value lies outside the bounds and None otherwise.
    """
    check: str
    family: str
    n: int
    computed: int = None
    claimed: int = None
    source: str = 'none'
    match: bool = None
    note: str = ''
    bounds: tuple = None

    @property
    def p(self):
        return split_spec(self.family)[1]

    @property
    def inconclusive(self):
        return self.bounds is not None and self.match is None

    @property
    def status(self):
        if self.match is False:
            return 'mismatch'
        if self.inconclusive:
            return 'inconclusive'
        if self.match:
            return 'match'
        return 'computed'

    def sort_key(self):
        prefix, p = split_spec(self.family)
        position = check_order.index(self.check) if self.check in check_order else len(check_order)
        return position, prefix, self.n, p if p is not None else 0

    def to_dict(self):
        record = {
            'check': self.check,
            'family': self.family,
            'n': self.n,
            'computed': self.computed,
            'claimed': self.claimed,
            'source': self.source,
            'match': self.match,
            'status': self.status,
            'note': self.note,
        }
        if self.p is not None:
            record['p'] = self.p
        if self.bounds is not None:
            record['bounds'] = list(self.bounds)
        return record

    def to_csv_row(self):
        record = self.to_dict()
        record['bounds'] = '..'.join(map(str, self.bounds)) if self.bounds is not None else ''
        return ['' if record.get(column) is None else record[column] for column in csv_columns]

    def to_line(self):
        computed = self.computed if self.bounds is None else f'{self.bounds[0]}..{self.bounds[1]}'
        claimed = '-' if self.claimed is None else self.claimed
        line = f'{self.check:<13} {self.family:<9} n={self.n:<2} computed={computed!s:<6} ' \
               f'claimed={claimed!s:<6} {self.status}'
        if self.note:
            line += f'  # {self.note}'
        return line


def compared(check, spec, n, computed, note=None):
    """A row with the claim covering (check, spec, n) filled in, when there is one."""
    claim = lookup(check, spec, n)
    if claim is None:
        return VerificationRow(check=check, family=spec, n=n, computed=computed,
                               note=note if note is not None else note_for(check, spec))
    _, p = split_spec(spec)
    claimed = claim.claimed(n, p)
    text = claim.quote if note is None else f'{claim.quote}; {note}'
    return VerificationRow(check=check, family=spec, n=n, computed=computed, claimed=claimed,
                           source=claim.source, match=computed == claimed, note=text)


class Report(object):
    """
        Rows and rank certificates of one sweep.

        exit_code follows the command line contract: 1 if any row mismatches,
        otherwise 3 if any row is inconclusive, otherwise 0.
    """

    def __init__(self, rows=None, certificates=None):
        self.rows = list(rows) if rows is not None else []
        self.certificates = list(certificates) if certificates is not None else []

    def extend(self, other):
        self.rows.extend(other.rows)
        self.certificates.extend(other.certificates)
        return self

    @property
    def sorted_rows(self):
        return sorted(self.rows, key=lambda row: row.sort_key())

    @property
    def sorted_certificates(self):
        return sorted(self.certificates, key=lambda c: (c.target.split(':')[0], c.n, c.p or 0))

    @property
    def mismatches(self):
        return [row for row in self.sorted_rows if row.match is False]

    @property
    def exit_code(self):
        if self.mismatches:
            return 1
        if any(row.inconclusive for row in self.rows):
            return 3
        return 0

    def to_dict(self):
        from contractionpy import __version__
        return {
            'tool_version': __version__,
            'schema_version': report_schema_version,
            'rows': [row.to_dict() for row in self.sorted_rows],
            'certificates': [c.to_dict() for c in self.sorted_certificates],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(csv_columns)
        for row in self.sorted_rows:
            writer.writerow(row.to_csv_row())
        return buffer.getvalue().rstrip('\n')

    def to_lines(self):
        return lines_to_text(*[row.to_line() for row in self.sorted_rows])

    def render(self, fmt='lines'):
        if fmt == 'json':
            return self.to_json()
        elif fmt == 'csv':
            return self.to_csv()
        elif fmt == 'lines':
            return self.to_lines()
        raise BadParameter(f'{fmt} is not a report format')

    def __repr__(self):
        return f'Report({len(self.rows)} rows, {len(self.certificates)} certificates, exit {self.exit_code})'


@dataclass
class SweepOptions:
    method: str = 'filter'
    jobs: int = 1
    budget: int = default_budget
    scale_ceiling: int = default_scale_ceiling
    force_scale: bool = False
    cache: object = field(default_factory=NoCache)
    progress: bool = False
    verbose: bool = False
    witnesses: bool = False


def expand_specs(specs, n):
    """
        Concrete family specs at degree n.

        'k:*', 'k*:*', 'j:*' and 'e:*' run over p = 1..n, 'l:*' and 'm:*'
        over 1..n-1, 'q:*' and 'w:*' over 2..n-1. Explicit parameters above
        n are skipped.
    """
    out = []
    for spec in specs:
        prefix, _, p = spec.partition(':')
        if not p:
            out.append(spec)
        elif p == '*':
            if prefix in ['q', 'w']:
                ps = range(2, n)
            elif prefix in ['l', 'm']:
                ps = range(1, n)
            else:
                ps = range(1, n + 1)
            out.extend(f'{prefix}:{q}' for q in ps)
        else:
            try:
                value = int(p)
            except ValueError:
                raise BadParameter(f'{spec} has a non-integer parameter')
            if value < 1:
                raise BadParameter(f'{spec} needs p >= 1')
            if value <= n:
                out.append(spec)
    return out


def cells(n_range, specs):
    return [(spec, n) for n in n_range for spec in expand_specs(specs, n)]


def _progress(items, options, desc):
    return tqdm(items, desc=desc, disable=not options.progress, file=sys.stderr, leave=False)


def _timed(method, options, name):
    return timer(method, apply=options.verbose, name=name)


# families and rank targets, through the cache

def cached_family(spec, n, options, method=None):
    family = FamilyId.from_spec(spec)
    method = method if method is not None else options.method

    def compute():
        return enumerate_family(family, n, method=method, jobs=options.jobs, scale_ceiling=options.scale_ceiling,
                                force_scale=options.force_scale)

    def decode(literals):
        return FamilySet(family, n, [parse_transformation(text) for text in literals])

    return options.cache.fetch(family_key(family.spec, n, method), compute,
                               encode=lambda s: s.literals(), decode=decode)


def rank_target(spec, n, options=None):
    """FamilySet (plain product) or ReesQuotient for a rank family spec."""
    prefix, p = split_spec(spec)
    if prefix in quotients:
        if p is None or not 1 <= p <= n:
            raise BadParameter(f'{spec} needs 1 <= p <= n = {n}')
        return quotients[prefix](n, p)
    options = options if options is not None else SweepOptions()
    return cached_family(spec, n, options, method='construct')


def cached_certificate(spec, n, target, options):
    """
        Rank certificate for a target through the cache.

        Only exact certificates are stored; a cached one that is inexact or
        no longer generates its target is a miss.
    """
    key = rank_key(spec, n)
    entry = options.cache.load(key)
    if entry is not None:
        certificate = RankCertificate.from_dict(entry.payload)
        if certificate.exact and certificate.revalidate(target):
            if not options.witnesses:
                certificate.factorizations = {}
            elif not certificate.factorizations:
                certificate.attach_factorizations(target)
            return certificate
        if certificate.exact:
            warnings.warn(f'cached certificate for {key} does not generate its target; recomputing',
                          CorruptCacheWarning)
    certificate = min_rank(target, budget=options.budget, jobs=options.jobs, witnesses=options.witnesses)
    if certificate.exact:
        options.cache.store(key, certificate.to_dict())
    return certificate


# sweeps

def count_cell(spec, n, options):
    methods = ['filter', 'construct'] if options.method == 'both' else [options.method]
    family = FamilyId.from_spec(spec)
    results = {}
    for method in methods:
        try:
            results[method] = cached_family(family.spec, n, options, method=method)
        except UnsupportedMethod:
            if options.method != 'both':
                raise
    computed = len(next(iter(results.values())))
    row = compared('count', family.spec, n, computed)
    if len(results) == 2 and results['filter'] != results['construct']:
        row.match = False
        row.note = f'filter gives {len(results["filter"])}, construct gives {len(results["construct"])}; {row.note}'
    return row


def erratum_cell(spec, n, options):
    """Flag the printed n-p-1 for |E_p| next to the computed count."""
    _, p = split_spec(spec)
    method = 'filter' if options.method == 'both' else options.method
    computed = len(cached_family(spec, n, options, method=method))
    printed = erratum_e.claimed(n, p)
    state = 'agrees' if printed == computed else 'disagrees'
    return VerificationRow(check='erratum', family=spec, n=n, computed=computed,
                           note=f'printed "{erratum_e.quote}" gives {printed} and {state}; '
                                f'the summed form n-p+1 gives {n - p + 1}')


def count_report(n_range, specs, options=None):
    options = options if options is not None else SweepOptions()
    report = Report()
    for spec, n in _progress(cells(n_range, specs), options, 'count'):
        cell = _timed(count_cell, options, f'count {spec} n={n}')
        report.rows.append(cell(spec, n, options))
        if split_spec(spec)[0] == 'e':
            report.rows.append(erratum_cell(spec, n, options))
    return report


def rank_cell(spec, n, options):
    target = rank_target(spec, n, options)
    certificate = cached_certificate(spec, n, target, options)
    if certificate.exact:
        return compared('rank', spec, n, certificate.size), certificate
    bounds = (certificate.lower, certificate.upper)
    row = compared('rank', spec, n, certificate.size)
    row.computed = None
    row.bounds = bounds
    if row.claimed is not None:
        row.match = False if not bounds[0] <= row.claimed <= bounds[1] else None
    row.note = f'search budget exhausted after {certificate.subsets_tested} subsets; {row.note}'
    return row, certificate


def rank_report(n_range, specs, options=None):
    options = options if options is not None else SweepOptions()
    report = Report()
    for spec, n in _progress(cells(n_range, specs), options, 'rank'):
        cell = _timed(rank_cell, options, f'rank {spec} n={n}')
        row, certificate = cell(spec, n, options)
        report.rows.append(row)
        report.certificates.append(certificate)
    return report


def structure_cell(spec, n, options):
    S = cached_family(spec, n, options, method='construct')
    structure = structure_report(S)
    rows = [compared('closed', spec, n, int(structure.closed))]
    if spec == 'reg-orct':
        rows.append(compared('l-unipotent', spec, n, int(structure.l_unipotent)))
    if n >= 2 and structure.closed and spec in ['reg-orct', 'e-orct']:
        check = lemma_check(S)
        note = 'R is equal kernel and L is equal image for maps acting on the right'
        if not check.holds:
            note = 'abstract R and L are not the kernel and image classes'
        rows.append(compared('greens', spec, n, int(check.holds), note=note))
        rows.append(greens_labels_row(spec, n, check))
    return rows


def greens_labels_row(spec, n, check):
    """Flag the printed labelling, R by equal image and L by equal kernel, next to the greens row."""
    state = 'holds' if check.swapped_labels_hold else 'does not hold; the labels are swapped'
    return VerificationRow(check='greens-labels', family=spec, n=n, computed=int(check.swapped_labels_hold),
                           note=f'printed "R iff Im a = Im b, L iff ker a = ker b" {state}')


def structure_rows(n_range, specs=None, options=None):
    options = options if options is not None else SweepOptions()
    specs = specs if specs is not None else structure_defaults
    rows = []
    for spec, n in _progress(cells(n_range, specs), options, 'structure'):
        rows.extend(structure_cell(spec, n, options))
    return Report(rows)


def grid_rows(n_range, options=None):
    """Corner identities, inclusions, two-letter factorizations and the explicit generating sets."""
    options = options if options is not None else SweepOptions()
    rows = []
    for n in _progress(list(n_range), options, 'grid'):
        for p in range(1, n - 1):
            for variant in ['K', 'J']:
                rows.append(compared('inclusion', f'{variant.lower()}:{p}', n, int(inclusion_check(n, p, variant))))
        for p in range(2, n):
            checks = remark_checks(n, p)
            failed = [name for name, ok in checks.items() if not ok]
            rows.append(compared('remark', f'k:{p}', n, int(not failed),
                                 note=f'failed: {", ".join(failed)}' if failed else None))

            _, words = two_letter_factorizations(n, p)
            short = all(word is not None and len(word) <= 2 for word in words.values())
            rows.append(compared('two-letter', f'k:{p}', n, int(short)))

            for variant, spec in [('Q', f'q:{p}'), ('W', f'w:{p}')]:
                rows.append(genset_row(n, p, variant, spec))
    return Report(rows)


def genset_row(n, p, variant, spec):
    gens = explicit_genset(n, p, variant)
    target = quotient_q(n, p) if variant == 'Q' else quotient_w(n, p)
    mode = rees(p)
    generating = generates(gens, target, mode)
    irredundant = is_irredundant(gens, target, mode) if generating else False
    note = f'size {len(gens)}, generates: {"yes" if generating else "no"}, ' \
           f'irredundant: {"yes" if irredundant else "no"}'
    return compared('genset', spec, n, int(irredundant), note=note)


def verify_report(n_range, options=None):
    """count + rank + structural checks in one sweep."""
    options = options if options is not None else SweepOptions()
    report = count_report(n_range, count_defaults, options)
    report.extend(rank_report(n_range, verify_rank_defaults, options))
    report.extend(structure_rows(n_range, options=options))
    report.extend(grid_rows(n_range, options))
    return report
