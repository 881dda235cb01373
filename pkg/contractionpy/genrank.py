"""
Generation and rank.

Closures are computed by right multiplication with the generators (every
word is a shorter word times one generator). The exact rank search works on
a CayleyTable: it seeds candidates with the indecomposable elements, prunes
with kernel/image hitting constraints, and walks candidate subsets level by
level in canonical lexicographic order.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from contractionpy.cayley import CayleyTable
from contractionpy.families import FamilySet, FamilyId, enumerate_family, corner, class_of
from contractionpy.transformations import Transformation, compose_images
from contractionpy.utils.exceptions import BadParameter, DegreeMismatch, NotAMember, NotClosed

default_budget = 10 ** 7


class _Zero(object):
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return '0'

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


@dataclass(frozen=True)
class GenerationMode:
    kind: str = 'plain'
    p: int = None

    def __str__(self):
        return 'plain' if self.kind == 'plain' else f'rees({self.p})'


PLAIN = GenerationMode('plain')


def rees(p):
    return GenerationMode('rees', p)


class ReesQuotient(object):
    """
        Rank-p elements of a family with the Rees product:
        a * b = ab if rank(ab) = p, otherwise ZERO. ZERO absorbs.
    """

    def __init__(self, p, carrier, label=None):
        for alpha in carrier:
            if alpha.rank != p:
                raise BadParameter(f'{alpha} has rank {alpha.rank}, expected {p}')
        self.p = p
        self.carrier = carrier
        self.n = carrier.n
        self.zero = ZERO
        self.label = label if label is not None else f'{carrier.label}/rank<{p}'

    def product(self, alpha, beta):
        if alpha is ZERO or beta is ZERO:
            return ZERO
        gamma = alpha * beta
        return gamma if gamma.rank == self.p else ZERO

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, alpha):
        return alpha in self.carrier

    def __repr__(self):
        return f'ReesQuotient({self.label}, n={self.n}, p={self.p}, {len(self)} nonzero elements)'


def quotient_q(n, p):
    return ReesQuotient(p, enumerate_family(FamilyId('Kp', p), n), label=f'q:{p}')


def quotient_w(n, p):
    return ReesQuotient(p, enumerate_family(FamilyId('Jp', p), n), label=f'w:{p}')


@dataclass(frozen=True)
class Word:
    generator_indices: tuple

    def __post_init__(self):
        object.__setattr__(self, 'generator_indices', tuple(self.generator_indices))
        if not self.generator_indices:
            raise BadParameter('a word needs at least one letter')

    def __len__(self):
        return len(self.generator_indices)

    def evaluate(self, gens, mode=PLAIN):
        result = gens[self.generator_indices[0]]
        for i in self.generator_indices[1:]:
            result = result * gens[i]
            if mode.kind == 'rees' and result.rank != mode.p:
                return ZERO
        return result

    def format(self, gens):
        return ' · '.join(gens[i].literal for i in self.generator_indices)

    def __str__(self):
        return '[' + ','.join(map(str, self.generator_indices)) + ']'


@dataclass(frozen=True)
class ReesClosure:
    carrier: FamilySet
    reached_zero: bool


def _degree_of(gens):
    degrees = {alpha.degree for alpha in gens}
    if len(degrees) > 1:
        raise DegreeMismatch(f'generators of degrees {sorted(degrees)}')
    return degrees.pop() if degrees else None


def _saturate(gens, p=None):
    gen_images = list(dict.fromkeys(alpha.images for alpha in gens))
    reached = list(gen_images)
    seen = set(reached)
    hit_zero = False
    position = 0
    while position < len(reached):
        x = reached[position]
        position += 1
        for g in gen_images:
            y = compose_images(x, g)
            if p is not None and len(set(y)) < p:
                hit_zero = True
                continue
            if y not in seen:
                seen.add(y)
                reached.append(y)
    return reached, hit_zero


def closure(gens):
    gens = list(gens)
    n = _degree_of(gens)
    if n is None:
        raise BadParameter('closure of an empty set')
    reached, _ = _saturate(gens)
    return FamilySet(None, n, [Transformation(n, images) for images in reached], label='closure')


def rees_closure(gens, p):
    gens = list(gens)
    n = _degree_of(gens)
    if n is None:
        raise BadParameter('closure of an empty set')
    for alpha in gens:
        if alpha.rank != p:
            raise BadParameter(f'{alpha} has rank {alpha.rank}, expected {p}')
    reached, hit_zero = _saturate(gens, p)
    carrier = FamilySet(None, n, [Transformation(n, images) for images in reached], label=f'rees closure ({p})')
    return ReesClosure(carrier=carrier, reached_zero=hit_zero)


def _target_elements(target):
    if isinstance(target, ReesQuotient):
        return target.carrier
    return target


def generates(gens, target, mode=PLAIN):
    gens = list(gens)
    if not gens:
        return len(_target_elements(target)) == 0
    if mode.kind == 'plain':
        return _target_elements(target).as_set() <= closure(gens).as_set()
    expected = _target_elements(target)
    if not isinstance(target, ReesQuotient):
        expected = expected.rank_slice(mode.p)
    for alpha in gens:
        if alpha not in expected:
            raise NotAMember(f'{alpha} is not in the rank-{mode.p} part of the target')
    return rees_closure(gens, mode.p).carrier.as_set() == expected.as_set()


def is_irredundant(gens, target, mode=PLAIN):
    """True if gens generate the target and no proper subset does."""
    gens = list(gens)
    if not generates(gens, target, mode):
        return False
    return not any(generates(gens[:i] + gens[i + 1:], target, mode) for i in range(len(gens)))


def factorize(target, gens, mode=PLAIN):
    """Shortest word over gens evaluating to target, lexicographically least; None if unreachable."""
    gens = list(gens)
    if not gens:
        return None
    if _degree_of(gens + [target]) is None:
        return None
    gen_images = [alpha.images for alpha in gens]
    words = {}
    frontier = []
    for i, images in enumerate(gen_images):
        if mode.kind == 'rees' and len(set(images)) != mode.p:
            continue
        if images not in words:
            words[images] = (i,)
            frontier.append(images)
    while frontier:
        if target.images in words:
            return Word(words[target.images])
        next_frontier = []
        for images in frontier:
            word = words[images]
            for i, g in enumerate(gen_images):
                y = compose_images(images, g)
                if mode.kind == 'rees' and len(set(y)) != mode.p:
                    continue
                if y not in words:
                    words[y] = word + (i,)
                    next_frontier.append(y)
        frontier = next_frontier
    if target.images in words:
        return Word(words[target.images])
    return None


def _table_for(target):
    if isinstance(target, ReesQuotient):
        return CayleyTable(target.carrier.elements, rees_rank=target.p), rees(target.p)
    table = CayleyTable(target.elements)
    if not table.closed:
        i, j = table.witness
        raise NotClosed(f'{target[i]} * {target[j]} is not in {target.label}', witness=(target[i], target[j]))
    return table, PLAIN


def indecomposables(S):
    """Elements of S that are not a product of two elements of S other than themselves."""
    table, _ = _table_for(S)
    elements = _target_elements(S)
    decomposable = table.decomposable()
    return FamilySet(None, elements.n, [a for i, a in enumerate(elements) if i not in decomposable],
                     label=f'indecomposables of {elements.label}')


@dataclass
class RankCertificate:
    """
        Evidence for the rank of a target.

        size is exact when budget_exhausted is False; otherwise the rank lies
        in [lower, upper] and generators is the best set found.

        refuted_by says how size-1 was ruled out for an exact certificate:
        'seed' (fewer elements than the indecomposables), 'bound' (the
        hitting-set lower bound) or 'search' (the level was enumerated).
        factorizations maps each element literal to a word over generators
        when min_rank was asked for witnesses.
    """
    target: str
    n: int
    p: int
    mode: str
    size: int
    generators: tuple
    exhaustive_below: bool
    subsets_tested: int
    budget_exhausted: bool = False
    lower: int = None
    upper: int = None
    refuted_by: str = None
    factorizations: dict = field(default_factory=dict)

    def to_dict(self):
        record = {
            'target': self.target,
            'n': self.n,
            'mode': self.mode,
            'size': self.size,
            'generators': [alpha.literal for alpha in self.generators],
            'exhaustive_below': self.exhaustive_below,
            'subsets_tested': self.subsets_tested,
            'budget_exhausted': self.budget_exhausted,
        }
        if self.p is not None:
            record['p'] = self.p
        if self.refuted_by is not None:
            record['refuted_by'] = self.refuted_by
        if self.budget_exhausted:
            record['bounds'] = [self.lower, self.upper]
        if self.factorizations:
            record['factorizations'] = {literal: list(word.generator_indices)
                                        for literal, word in sorted(self.factorizations.items())}
        return record

    @classmethod
    def from_dict(cls, record):
        from contractionpy.transformations import parse_transformation
        bounds = record.get('bounds', [record['size'], record['size']])
        factorizations = {literal: Word(indices) for literal, indices in record.get('factorizations', {}).items()}
        return cls(target=record['target'], n=record['n'], p=record.get('p'), mode=record['mode'],
                   size=record['size'],
                   generators=tuple(parse_transformation(text) for text in record['generators']),
                   exhaustive_below=record['exhaustive_below'], subsets_tested=record['subsets_tested'],
                   budget_exhausted=record['budget_exhausted'], lower=bounds[0], upper=bounds[1],
                   refuted_by=record.get('refuted_by'), factorizations=factorizations)

    @property
    def exact(self):
        return not self.budget_exhausted

    def generation_mode(self):
        return PLAIN if self.mode == 'plain' else rees(self.p)

    def attach_factorizations(self, target):
        mode = self.generation_mode()
        self.factorizations = {alpha.literal: factorize(alpha, self.generators, mode)
                               for alpha in _target_elements(target)}
        return self

    def refute_below(self, target):
        """
            Unpruned check of every size-1 candidate.

            A candidate is the indecomposables plus any choice of the other
            elements. Returns the number of subsets tested, or None when one
            of them generates.
        """
        if self.size <= 1:
            return 0
        search = _RankSearch(target)
        picks = self.size - 1 - len(search.seed)
        if picks < 0:
            return 0
        tested = 0
        for extra in itertools.combinations(search.pool, picks):
            tested += 1
            if search.table.generates_all(tuple(sorted(search.seed + extra))):
                return None
        return tested

    def revalidate(self, target, exhaustive=False):
        """Re-check generation and any stored words; with exhaustive=True also refute size k-1 without pruning."""
        mode = self.generation_mode()
        if not generates(self.generators, target, mode):
            return False
        for literal, word in self.factorizations.items():
            if word is None:
                return False
            value = word.evaluate(self.generators, mode)
            if value is ZERO or value.literal != literal:
                return False
        if exhaustive and self.exact and self.exhaustive_below:
            return self.refute_below(target) is not None
        return True


def _constraint_masks(elements, table_size):
    """
        Hitting constraints for generating sets.

        alpha = g1 ... gk forces ker g1 to refine ker alpha and Im gk to
        contain Im alpha, so every generating set meets both witness sets.
    """
    kernels = [alpha.kernel for alpha in elements]
    images = [set(alpha.image) for alpha in elements]
    masks = set()
    for t in range(table_size):
        kernel_mask = 0
        image_mask = 0
        for g in range(table_size):
            if kernels[g].refines(kernels[t]):
                kernel_mask |= 1 << g
            if images[t] <= images[g]:
                image_mask |= 1 << g
        masks.add(kernel_mask)
        masks.add(image_mask)
    return _minimal_masks(masks)


def _minimal_masks(masks):
    ordered = sorted(masks, key=lambda m: (bin(m).count('1'), m))
    kept = []
    for mask in ordered:
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


def _packing_bound(masks):
    """Size of a greedily chosen family of pairwise disjoint masks."""
    used = 0
    count = 0
    for mask in sorted(masks, key=lambda m: bin(m).count('1')):
        if mask & used == 0:
            used |= mask
            count += 1
    return count


def _evaluate_chunk(task):
    table_rows, candidates = task
    size = len(table_rows)
    tested = 0
    for candidate in candidates:
        tested += 1
        if _saturates(table_rows, size, candidate):
            return candidate, tested
    return None, tested


def _saturates(table_rows, size, generators):
    seen = [False] * size
    reached = []
    for g in generators:
        if not seen[g]:
            seen[g] = True
            reached.append(g)
    position = 0
    while position < len(reached):
        row = table_rows[reached[position]]
        position += 1
        for g in generators:
            k = row[g]
            if k >= 0 and not seen[k]:
                seen[k] = True
                reached.append(k)
    return len(reached) == size


class _RankSearch(object):
    def __init__(self, target, budget=default_budget, jobs=1):
        self.target = target
        self.elements = _target_elements(target)
        self.table, self.mode = _table_for(target)
        self.budget = budget
        self.jobs = jobs
        self.evaluations = 0
        size = len(self.table)
        decomposable = self.table.decomposable()
        self.seed = tuple(i for i in range(size) if i not in decomposable)
        self.pool = tuple(i for i in range(size) if i in decomposable)
        seed_bits = 0
        for i in self.seed:
            seed_bits |= 1 << i
        self.constraints = [m for m in _constraint_masks(self.elements, size) if not m & seed_bits]

    def lower_bound(self):
        return max(len(self.seed) + _packing_bound(self.constraints), 1)

    def candidates(self, size):
        """Candidate generating sets of the given size, in lexicographic order."""
        picks = size - len(self.seed)
        if picks < 0:
            return
        pool = self.pool
        bits = [1 << g for g in pool]
        suffix = [0] * (len(pool) + 1)
        for i in range(len(pool) - 1, -1, -1):
            suffix[i] = suffix[i + 1] | bits[i]
        chosen = []

        def extend(start, remaining, unhit):
            if remaining == 0:
                if not unhit:
                    yield tuple(sorted(self.seed + tuple(chosen)))
                return
            if _packing_bound(unhit) > remaining:
                return
            for i in range(start, len(pool) - remaining + 1):
                if any(not mask & suffix[i] for mask in unhit):
                    return
                chosen.append(pool[i])
                yield from extend(i + 1, remaining - 1, [mask for mask in unhit if not mask & bits[i]])
                chosen.pop()

        yield from extend(0, picks, list(self.constraints))

    def greedy(self):
        current = list(self.seed)
        reached = set(self.table.saturate(current)[0]) if current else set()
        size = len(self.table)
        while len(reached) < size:
            best, best_reach = None, None
            for g in range(size):
                if g in current:
                    continue
                self.evaluations += 1
                trial = set(self.table.saturate(current + [g])[0])
                if best_reach is None or len(trial) > len(best_reach):
                    best, best_reach = g, trial
            current.append(best)
            reached = best_reach
        return tuple(sorted(current))

    def search_level(self, size):
        """(generators or None, tested, complete) for one level."""
        if self.jobs > 1:
            return self._search_level_parallel(size)
        tested = 0
        for candidate in self.candidates(size):
            if self.evaluations >= self.budget:
                return None, tested, False
            self.evaluations += 1
            tested += 1
            if self.table.generates_all(candidate):
                return candidate, tested, True
        return None, tested, True

    def _search_level_parallel(self, size):
        candidates = []
        for candidate in self.candidates(size):
            if self.evaluations + len(candidates) >= self.budget:
                return None, 0, False
            candidates.append(candidate)
        if not candidates:
            return None, 0, True
        chunk = -(-len(candidates) // self.jobs)
        tasks = [(self.table.table, candidates[i:i + chunk]) for i in range(0, len(candidates), chunk)]
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            results = list(executor.map(_evaluate_chunk, tasks))
        tested = sum(count for _, count in results)
        self.evaluations += tested
        for found, _ in results:
            if found is not None:
                return found, tested, True
        return None, tested, True


def _describe(target):
    elements = _target_elements(target)
    if isinstance(target, ReesQuotient):
        return target.label, target.p
    if elements.family is not None:
        return elements.family.spec, elements.family.p
    return elements.label, None


def min_rank(target, budget=default_budget, jobs=1, witnesses=False):
    """
        Exact rank of a FamilySet (plain product) or ReesQuotient.

        Levels from the hitting-set lower bound up to the greedy upper bound
        are searched in increasing size; the first level holding a
        generating set gives the rank. When the budget runs out the
        certificate carries [lower, upper] bounds, unless the search had
        already reached the greedy size, which then is exact.

        Returns
        -------
        RankCertificate
    """
    elements = _target_elements(target)
    if len(elements) == 0:
        raise BadParameter('the rank of an empty target is undefined')
    search = _RankSearch(target, budget=budget, jobs=jobs)
    label, p = _describe(target)
    greedy = search.greedy()
    upper = len(greedy)
    start = search.lower_bound()
    level = start
    tested_total = 0

    def exact(level, generators):
        if level == len(search.seed):
            refuted_by = 'seed'
        elif level == start:
            refuted_by = 'bound'
        else:
            refuted_by = 'search'
        certificate = RankCertificate(target=label, n=elements.n, p=p, mode=str(search.mode), size=level,
                                      generators=tuple(elements[i] for i in generators),
                                      exhaustive_below=True, subsets_tested=tested_total,
                                      lower=level, upper=level, refuted_by=refuted_by)
        return certificate.attach_factorizations(target) if witnesses else certificate

    # the greedy set is itself a candidate at level `upper`, so the loop always returns
    while level <= upper:
        found, tested, complete = search.search_level(level)
        tested_total += tested
        if found is not None:
            return exact(level, found)
        if not complete:
            break
        level += 1
    if level == upper:
        return exact(level, greedy)
    certificate = RankCertificate(target=label, n=elements.n, p=p, mode=str(search.mode), size=upper,
                                  generators=tuple(elements[i] for i in greedy),
                                  exhaustive_below=False, subsets_tested=tested_total,
                                  budget_exhausted=True, lower=level, upper=upper)
    return certificate.attach_factorizations(target) if witnesses else certificate


# the explicit generating sets

def explicit_genset(n, p, variant):
    """
        (R_eta u L_delta) minus delta for 'Q'; (R_eta u L_delta*) minus delta for 'W'.

        R_eta is the image class of eta in K_p. L_delta is the kernel class
        of delta in K_p; L_delta* is the kernel class of delta* in K_p*.
    """
    if not 2 <= p <= n - 1:
        raise BadParameter(f'generating sets need 2 <= p <= n-1, got n = {n}, p = {p}')
    k = enumerate_family(FamilyId('Kp', p), n)
    eta, delta = corner(n, p, 'eta'), corner(n, p, 'delta')
    r_eta = class_of(eta, k, 'R').as_set()
    if variant == 'Q':
        other = class_of(delta, k, 'L').as_set()
    elif variant == 'W':
        k_star = enumerate_family(FamilyId('KpStar', p), n)
        other = class_of(corner(n, p, 'delta_star'), k_star, 'L').as_set()
    else:
        raise BadParameter(f'{variant} is not valid; use Q or W')
    return sorted((r_eta | other) - {delta})


def inclusion_check(n, p, variant):
    """K_p (or J_p) inside the plain closure of K_{p+1} (or J_{p+1})."""
    if n < 3 or not 1 <= p <= n - 2:
        raise BadParameter(f'inclusions need n >= 3 and 1 <= p <= n-2, got n = {n}, p = {p}')
    tag = {'K': 'Kp', 'J': 'Jp'}.get(variant)
    if tag is None:
        raise BadParameter(f'{variant} is not valid; use K or J')
    lower = enumerate_family(FamilyId(tag, p), n)
    upper = enumerate_family(FamilyId(tag, p + 1), n)
    return lower.as_set() <= closure(upper).as_set()


def remark_checks(n, p):
    """The five corner identities of K_p, each as a named boolean."""
    if not 2 <= p <= n - 1:
        raise BadParameter(f'corner identities need 2 <= p <= n-1, got n = {n}, p = {p}')
    k = enumerate_family(FamilyId('Kp', p), n)
    eta, delta, tau = corner(n, p, 'eta'), corner(n, p, 'delta'), corner(n, p, 'tau')
    r_eta = class_of(eta, k, 'R').as_set()
    l_delta = class_of(delta, k, 'L').as_set()
    r_rest = sorted(r_eta - {delta})
    l_rest = sorted(l_delta - {delta})
    return {
        'delta_in_both_classes': delta in r_eta and delta in l_delta,
        'tau_eta_is_delta': tau * eta == delta,
        'r_class_absorbs_delta': all(a * delta == a and (delta * a).rank < p for a in r_rest),
        'l_class_absorbs_delta': all(delta * a == a and (a * delta).rank < p for a in l_rest),
        'class_products_drop_rank': all((a * b).rank < p for a, b in itertools.product(r_rest, r_rest))
                                    and all((a * b).rank < p for a, b in itertools.product(l_rest, l_rest)),
    }


def two_letter_factorizations(n, p):
    """Word of length <= 2 over R_eta u L_delta for every element of K_p."""
    k = enumerate_family(FamilyId('Kp', p), n)
    gens = sorted(class_of(corner(n, p, 'eta'), k, 'R').as_set() | class_of(corner(n, p, 'delta'), k, 'L').as_set())
    return gens, {alpha: factorize(alpha, gens, rees(p)) for alpha in k}
