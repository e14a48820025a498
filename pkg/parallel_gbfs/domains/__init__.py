from .plateau import gen_plateau
from .random_graph import gen_random
from .tile import SlidingTilePuzzle, is_solvable, rank_permutation, unrank_permutation
from .grid import GridNavigation
from .spec import DOMAIN_KINDS, DomainSpec, make_domain

__all__ = [
    "gen_plateau",
    "gen_random",
    "SlidingTilePuzzle",
    "is_solvable",
    "rank_permutation",
    "unrank_permutation",
    "GridNavigation",
    "DOMAIN_KINDS",
    "DomainSpec",
    "make_domain",
]
