"""Exact lattice arithmetic for special cubic fourfolds and their K3 partners.

Modules: ``intmat`` (integer matrices, Smith/Hermite forms), ``lattice``
(Gram-matrix lattices and discriminant forms), ``hassett`` (admissibility
and the lattices K_d^perp), ``fmcount`` (partner counts), ``oracle``
(brute-force verifiers) and ``cli``.
"""

from .fmcount import CountReport, cubic_fm_count, twisted_fm_count
from .hassett import AdmissibilityReport, InadmissibleError, admissibility
from .intmat import IntMatrix, smith_normal_form
from .lattice import DiscForm, Lattice, discriminant_group, standard

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "CountReport",
    "DiscForm",
    "InadmissibleError",
    "IntMatrix",
    "Lattice",
    "admissibility",
    "cubic_fm_count",
    "discriminant_group",
    "smith_normal_form",
    "standard",
    "twisted_fm_count",
]
