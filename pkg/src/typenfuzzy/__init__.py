"""Type-n fuzzy sets, possible-world tallies and precisiation of vague concepts."""

from pathlib import Path

from .errors import (ArgumentError, CoverageError, DomainError, EmptyLog, FuzzError,
                     InconsistentStack, InvalidShape, LevelError, NotInSupport, PartitionError,
                     ShapeError, SpecError)
from .fuzzcore import (UNIT, BranchProfile, CrispSet, Element, Entry, Finding, MembershipFn,
                       MembershipStack, Stratum, Type1FuzzySet, TypeNFuzzySet, branching_profile,
                       domain_typen, eval_type1, eval_typen, materialize, promote_crisp, unit_fn,
                       unit_stack, uncertainty_ladder, validate, vertical_slice)
from .mfshapes import (IntervalType2Spec, PiecewiseLinear, Step, eval_interval_type2, eval_shape,
                       sample_shape, young_exemplars)
from .precisiation import (EventSpec, PrecisiatedConcept, UncertaintyReport, classify_event,
                           locate_realization, precisiate)
from .worlds import (OutcomeLog, TallyResult, WorldModel, build_world, read_log, sum_law_check,
                     tally)

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"
FELIX_FDL = DATA_DIR / "felix.fdl"
