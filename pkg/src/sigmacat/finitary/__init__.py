from .construct import (
    CHOOSERS,
    NoAdequateTranslateError,
    PreconditionError,
    homotopy_between,
    lift_finitary,
    push_at_limit,
    solve_around,
)
from .maps import (
    FinitaryMap,
    NearestSelector,
    compose_maps,
    equivariant_map,
    identity_map,
    iterate,
    map_with_overrides,
    multiplication_map,
    selection_map,
    translate_map,
    zero_map,
)
from .metrics import (
    EXACT,
    WINDOWED,
    ShiftReport,
    cell_shift,
    gsh_point,
    norm,
    shift_report,
)
from .serialization import map_from_json, map_to_json
from .volley import (
    COMBINATION_CAP,
    IncompatibleVolleysError,
    Volley,
    VolleyTooLargeError,
    compose_volleys,
    identity_volley,
    singleton_volley,
)
from .windows import (
    FinitaryError,
    Window,
    WindowExhaustedError,
    neighbourhood,
    solve_augmentation,
    solve_boundary,
    support_forms,
)

__all__ = [
    "CHOOSERS",
    "COMBINATION_CAP",
    "EXACT",
    "WINDOWED",
    "FinitaryError",
    "FinitaryMap",
    "IncompatibleVolleysError",
    "NearestSelector",
    "NoAdequateTranslateError",
    "PreconditionError",
    "ShiftReport",
    "Volley",
    "VolleyTooLargeError",
    "Window",
    "WindowExhaustedError",
    "cell_shift",
    "compose_maps",
    "compose_volleys",
    "equivariant_map",
    "gsh_point",
    "homotopy_between",
    "identity_map",
    "identity_volley",
    "iterate",
    "lift_finitary",
    "map_from_json",
    "map_to_json",
    "map_with_overrides",
    "multiplication_map",
    "neighbourhood",
    "norm",
    "push_at_limit",
    "selection_map",
    "shift_report",
    "singleton_volley",
    "solve_around",
    "solve_augmentation",
    "solve_boundary",
    "support_forms",
    "translate_map",
    "zero_map",
]
