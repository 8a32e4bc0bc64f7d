from .admissible import (
    AdmissibilityReport,
    ExpansionError,
    InadmissibleError,
    elementary_expansion,
    homology_rank_change,
    is_admissible,
    make_admissible,
)
from .chains import Cell, Chain, ComplexError, DimensionMismatchError, chain_sum
from .complex import (
    BASE_SYMBOL,
    BoundaryValidationError,
    ChainComplex,
    NonTrivialModuleError,
    Presentation,
    Provenance,
    direct_sum_complex,
    fox_resolution,
    resolution_from_tables,
)
from .module import ModuleDescriptorError, QuotientModule, as_column
from .serialization import (
    SerializationError,
    chain_from_json,
    chain_to_json,
    complex_from_json,
    complex_to_json,
)
from .tensor import GroundRingNotFieldError, tensor_complex, tensor_symbol

__all__ = [
    "BASE_SYMBOL",
    "AdmissibilityReport",
    "BoundaryValidationError",
    "Cell",
    "Chain",
    "ChainComplex",
    "ComplexError",
    "DimensionMismatchError",
    "ExpansionError",
    "GroundRingNotFieldError",
    "InadmissibleError",
    "ModuleDescriptorError",
    "NonTrivialModuleError",
    "Presentation",
    "Provenance",
    "QuotientModule",
    "SerializationError",
    "as_column",
    "chain_from_json",
    "chain_sum",
    "chain_to_json",
    "complex_from_json",
    "complex_to_json",
    "direct_sum_complex",
    "elementary_expansion",
    "fox_resolution",
    "homology_rank_change",
    "is_admissible",
    "make_admissible",
    "resolution_from_tables",
    "tensor_complex",
    "tensor_symbol",
]
