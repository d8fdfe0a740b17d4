import random
from functools import lru_cache

from shomog.freealg import DependentRelations, GeneratorSet, NcPolynomial, Presentation, words_of_degree
from shomog.linalg import GF

F32003 = GF(32003)


def random_presentation(seed: int, n_max: int = 3, s: int = 3, field=F32003, k: int = 2):
    """Two (or k) random relations of degree s; sparse ones are favoured so structure shows up."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(2, n_max)
        gens = GeneratorSet(["a", "b", "c"][:n])
        W = words_of_degree(n, s)
        rels = []
        for _ in range(k):
            size = rng.choice([1, 1, 2, 3, len(W)])
            terms = {w: rng.choice([1, -1, rng.randrange(1, field.p)]) for w in rng.sample(W, size)}
            rels.append(NcPolynomial(gens, terms, field))
        try:
            return Presentation(gens, s, rels, field)
        except DependentRelations:
            continue


F2521 = GF(2521)   # 2520 = 2^3 3^2 5 7, so every root of unity needed below exists


@lru_cache(maxsize=None)
def legal_diag_grid(s: int, field=F2521, seed_order: int = 60):
    """Pairs (l1, l2) meeting one of the diagonal conditions; l1 runs over mu_60 plus 2 and 3."""
    from shomog.potential import diag_case
    p = field.p
    seeds = [v for v in range(1, p) if field(v) ** seed_order == 1] + [2, 3]
    out = set()
    for a in seeds:
        for b in range(1, p):
            if diag_case(field(a), field(b), s, field) is not None:
                out.add((a, b))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def legal_jordan_grid(s: int, field=F2521):
    from shomog.potential import ConditionNotMet, gen_potential_jordan
    out = []
    for v in range(1, field.p):
        try:
            gen_potential_jordan(field(v), s, field)
        except ConditionNotMet:
            continue
        out.append(v)
    return tuple(out)
