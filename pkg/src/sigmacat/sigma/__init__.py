from .acyclicity import (
    bounded_support_check,
    ca_check,
    ca_over_point,
    lag_from_push,
    level_centre,
    point_centre,
    spanning_cycles,
    uniform_point_lag,
)
from .budgets import Budgets
from .certificates import (
    CERTIFICATE_KINDS,
    ENVELOPE_SCHEMA,
    MEMBER,
    NON_MEMBER,
    UNKNOWN,
    BoundingCertificate,
    CertificateError,
    CheckReport,
    HypothesisNotEstablishedError,
    LagEstimate,
    PushCertificate,
    SigmaError,
    Verdict,
    check_envelope,
    envelope,
    verify_bounding,
    verify_push,
)
from .expansion import ExpansionResult, zero_lag_transform
from .membership import membership, novikov_obstruction, push_summary, verdict_to_json
from .probes import (
    InvarianceReport,
    InvarianceRow,
    OpennessReport,
    ProductReport,
    ProductRow,
    UnsupportedProbeError,
    invariance_crosscheck,
    product_complement_check,
    product_control,
    tits_openness_probe,
    transported_push,
)
from .push import NotFound, ascending_letters, find_push
from .verify import bounding_payload, obstruction_payload, verify_document

__all__ = [
    "CERTIFICATE_KINDS",
    "ENVELOPE_SCHEMA",
    "MEMBER",
    "NON_MEMBER",
    "UNKNOWN",
    "BoundingCertificate",
    "Budgets",
    "CertificateError",
    "CheckReport",
    "ExpansionResult",
    "HypothesisNotEstablishedError",
    "InvarianceReport",
    "InvarianceRow",
    "LagEstimate",
    "NotFound",
    "OpennessReport",
    "ProductReport",
    "ProductRow",
    "PushCertificate",
    "SigmaError",
    "UnsupportedProbeError",
    "Verdict",
    "ascending_letters",
    "bounded_support_check",
    "bounding_payload",
    "ca_check",
    "ca_over_point",
    "check_envelope",
    "envelope",
    "find_push",
    "invariance_crosscheck",
    "lag_from_push",
    "level_centre",
    "membership",
    "novikov_obstruction",
    "obstruction_payload",
    "point_centre",
    "product_complement_check",
    "product_control",
    "push_summary",
    "spanning_cycles",
    "tits_openness_probe",
    "transported_push",
    "uniform_point_lag",
    "verdict_to_json",
    "verify_bounding",
    "verify_document",
    "verify_push",
    "zero_lag_transform",
]
