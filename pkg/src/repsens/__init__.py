"""String repetitiveness measures, LZ-style factorizers, edit-repair
constructions, lower-bound witness families, and sensitivity sweeps."""

from .core import (
    CapabilityError,
    Edit,
    InputError,
    SymbolString,
    apply_edit,
    distinct_substrings,
    enumerate_edits,
    format_symbolic,
    parse_symbolic,
)
from .factorizers import (
    Factorization,
    Phrase,
    check_factorization,
    format_factorization,
    lz77_nonoverlapping,
    lz77_overlapping,
    lz78,
    lz_end_greedy,
    lz_end_optimal,
    lzss_nonoverlapping,
    lzss_overlapping,
    parse_factorization,
    verify_factorization,
)
from .measures import (
    as_bms,
    bms_check,
    bms_is_valid,
    delta,
    is_attractor,
    smallest_attractor,
    smallest_bms,
)
from .repair import RepairReport, attractor_repair, bms_repair, lzend_repair
from .sensitivity import (
    MEASURES,
    GrowthFit,
    SensitivityRecord,
    exhaustive_sensitivity,
    growth_fit,
    sensitivity_of_string,
)
from .witness import WitnessBundle, lz78_witness, lz_witness, pair_sequence

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "Edit",
    "Factorization",
    "GrowthFit",
    "InputError",
    "MEASURES",
    "Phrase",
    "RepairReport",
    "SensitivityRecord",
    "SymbolString",
    "WitnessBundle",
    "apply_edit",
    "as_bms",
    "attractor_repair",
    "bms_check",
    "bms_is_valid",
    "bms_repair",
    "check_factorization",
    "delta",
    "distinct_substrings",
    "enumerate_edits",
    "exhaustive_sensitivity",
    "format_factorization",
    "format_symbolic",
    "growth_fit",
    "is_attractor",
    "lz77_nonoverlapping",
    "lz77_overlapping",
    "lz78",
    "lz78_witness",
    "lz_end_greedy",
    "lz_end_optimal",
    "lz_witness",
    "lzend_repair",
    "lzss_nonoverlapping",
    "lzss_overlapping",
    "parse_factorization",
    "parse_symbolic",
    "pair_sequence",
    "sensitivity_of_string",
    "smallest_attractor",
    "smallest_bms",
    "verify_factorization",
]
