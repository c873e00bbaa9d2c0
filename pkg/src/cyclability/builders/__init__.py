from .circulant import hamilton_circulant, separate2_circulant, separate3_circulant
from .cubic import separate2_cubic
from .dispatch import solve, solve_class
from .grid import ConstructionGap, hamilton_pmcn, separate2_grid, separate3_grid, separate_grid, separate_special
from .verdict import Reason, Verdict

__all__ = [
    "ConstructionGap",
    "Reason",
    "Verdict",
    "hamilton_circulant",
    "hamilton_pmcn",
    "separate2_circulant",
    "separate2_cubic",
    "separate3_circulant",
    "separate3_grid",
    "separate_grid",
    "separate_special",
    "solve",
    "solve_class",
]
