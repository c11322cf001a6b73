"""Exact graded homological algebra for quiver algebras with homogeneous relations."""

from .algebra import (GradedAlgebra, NotGeneratedInDegreeOne, PresentationError, QuiverPresentation, WindowError,
                      build_algebra, exterior, ground_field, opposite, path_algebra, polynomial, preprojective,
                      tensor_algebra, trivial_extension)
from .exact_linalg import Field, ShapeError
from .gorenstein import (DualizingModule, GorensteinReport, NotVerified, check_as_gorenstein, dualizing_module,
                         extract_sigma, verify_double_ext)
from .homology import (BigradedTable, Comparison, Resolution, ext, ext_into_algebra, resolve, tor, verify_lemma1,
                       verify_lemma3)
from .localcoh import (FormulaReport, LimitTable, ProbeReport, anchor_check, compare_routes, gamma_via_limit,
                       gamma_via_tor, lc_dimension_probe, tensor_module, verify_kunneth, verify_lcf, verify_prop5,
                       verify_tensor_composition)
from .modspec import SpecError, parse_module
from .module import (GradedModule, algebra_mod_truncation, direct_sum, dual, projective, random_module, regular,
                     shift, simple, truncate_above, truncate_below)
from .presentation import ParseError, emit, load_algebra, parse_file, parse_text

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
