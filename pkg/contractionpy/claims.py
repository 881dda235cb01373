"""
Declarative table of the published closed forms and rank statements.

Every row a report prints as "claimed" comes from here, together with the
range it is stated for and the quoted wording it tests.
"""
from dataclasses import dataclass


def reg_oct_order(n):
    return (n * (n - 1) * (2 * n - 1) + 6 * n) // 6


@dataclass(frozen=True)
class Claim:
    key: str
    kind: str
    prefix: str
    value: object
    valid: object
    source: str
    quote: str
    note: str = ''

    def applies(self, n, p=None):
        return bool(self.valid(n, p))

    def claimed(self, n, p=None):
        return int(self.value(n, p))


claims = [
    # cardinalities
    Claim('count-reg-oct', 'count', 'reg-oct', lambda n, p: reg_oct_order(n), lambda n, p: n >= 1,
          'formula', 'n(n-1)(2n-1)+6n'),
    Claim('count-reg-orct', 'count', 'reg-orct', lambda n, p: 2 * reg_oct_order(n) - n, lambda n, p: n >= 1,
          'formula', '2|Reg(OCT_n)|-n'),
    Claim('count-e-orct', 'count', 'e-orct', lambda n, p: n * (n + 1) // 2, lambda n, p: n >= 1,
          'formula', 'n(n+1)/2'),
    Claim('count-e-oct', 'count', 'e-oct', lambda n, p: n * (n + 1) // 2, lambda n, p: n >= 1,
          'formula', 'n(n+1)/2', note='idempotents are necessarily order preserving'),
    Claim('count-k', 'count', 'k', lambda n, p: n if p == 1 else (n - p + 1) ** 2,
          lambda n, p: 1 <= p <= n, 'formula', '|K_p|=(n-p+1)^2'),
    Claim('count-e', 'count', 'e', lambda n, p: n - p + 1, lambda n, p: 1 <= p <= n,
          'formula', 'sum of (n-p+1)', note='printed as n-p-1'),
    # ranks
    Claim('rank-l', 'rank', 'l', lambda n, p: 2 * (n - p), lambda n, p: n >= 4 and 1 < p <= n - 1,
          'theorem', 'the rank of L(n,p) is 2(n-p)'),
    Claim('rank-m', 'rank', 'm', lambda n, p: 2 * (n - p) + 1, lambda n, p: n >= 4 and 2 < p <= n - 1,
          'theorem', 'the rank of M(n,p) is 2(n-p)+1'),
    Claim('rank-reg-oct', 'rank', 'reg-oct', lambda n, p: 3, lambda n, p: n >= 4,
          'theorem', 'the rank of Reg(OCT_n) is 3'),
    Claim('rank-reg-orct', 'rank', 'reg-orct', lambda n, p: 4, lambda n, p: n >= 4,
          'theorem', 'the rank of Reg(ORCT_n) is 4'),
    Claim('rank-q', 'rank', 'q', lambda n, p: 2 * (n - p), lambda n, p: n >= 4 and 2 <= p <= n - 1,
          'theorem', 'minimal generating set for the Rees quotient'),
    Claim('rank-w', 'rank', 'w', lambda n, p: 2 * (n - p) + 1, lambda n, p: n >= 4 and 2 < p <= n - 1,
          'theorem', '(R_eta u L_delta*) minus delta is the minimal generating set'),
    # structure
    Claim('closed-reg-oct', 'closed', 'reg-oct', lambda n, p: 1, lambda n, p: n >= 1,
          'theorem', 'Reg(OCT_n) is a subsemigroup'),
    Claim('closed-reg-orct', 'closed', 'reg-orct', lambda n, p: 1, lambda n, p: n >= 1,
          'theorem', 'Reg(ORCT_n) is a subsemigroup'),
    Claim('closed-e-orct', 'closed', 'e-orct', lambda n, p: 1, lambda n, p: n >= 1,
          'theorem', 'E(ORCT_n) is a subsemigroup'),
    Claim('l-unipotent-reg-orct', 'l-unipotent', 'reg-orct', lambda n, p: 1, lambda n, p: n >= 1,
          'theorem', 'every L-class contains a unique idempotent'),
    Claim('greens-reg-orct', 'greens', 'reg-orct', lambda n, p: 1, lambda n, p: n >= 2,
          'theorem', 'R and L are given by equal images and equal kernels'),
    Claim('greens-e-orct', 'greens', 'e-orct', lambda n, p: 1, lambda n, p: n >= 2,
          'theorem', 'R and L are given by equal images and equal kernels'),
    Claim('inclusion-k', 'inclusion', 'k', lambda n, p: 1, lambda n, p: n >= 3 and 1 <= p <= n - 2,
          'theorem', '<K_p> is contained in <K_p+1>'),
    Claim('inclusion-j', 'inclusion', 'j', lambda n, p: 1, lambda n, p: n >= 3 and 1 <= p <= n - 2,
          'theorem', '<J_p> is contained in <J_p+1>'),
    Claim('remark-k', 'remark', 'k', lambda n, p: 1, lambda n, p: n >= 3 and 2 <= p <= n - 1,
          'theorem', 'tau eta = delta and the corner classes absorb delta'),
    Claim('two-letter-k', 'two-letter', 'k', lambda n, p: 1, lambda n, p: n >= 3 and 2 <= p <= n - 1,
          'theorem', 'every element of K_p is a product of at most two elements of R_eta u L_delta'),
    Claim('genset-q', 'genset', 'q', lambda n, p: 1, lambda n, p: n >= 4 and 2 <= p <= n - 1,
          'theorem', 'R_eta u L_delta minus delta generates K_p minimally'),
    Claim('genset-w', 'genset', 'w', lambda n, p: 1, lambda n, p: n >= 4 and 2 < p <= n - 1,
          'theorem', '(R_eta u L_delta*) minus delta generates J_p minimally'),
]

unclaimed_notes = {
    ('rank', 'e-orct'): 'the abstract states rank 3 without proof; computed only',
}

erratum_e = Claim('erratum-e', 'count', 'e', lambda n, p: n - p - 1, lambda n, p: 1 <= p <= n,
                  'formula', 'Thus |E_p| = n-p-1', note='printed value')


def split_spec(spec):
    if ':' in spec:
        prefix, p = spec.split(':', maxsplit=1)
        return prefix, int(p)
    return spec, None


def lookup(kind, spec, n):
    """The claim covering (kind, spec, n), or None when no published statement applies."""
    prefix, p = split_spec(spec)
    for claim in claims:
        if claim.kind == kind and claim.prefix == prefix and claim.applies(n, p):
            return claim
    return None


def note_for(kind, spec):
    prefix, _ = split_spec(spec)
    return unclaimed_notes.get((kind, prefix), 'computed, no published claim')
