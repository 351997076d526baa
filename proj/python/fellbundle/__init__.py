"""Discrete saturated Fell bundles over finite groups.

Construction from factor systems, axiom verification, cohomological
classification, obstruction/repair, and crossed product bundles. The
heavy lifting happens in the C++ core; this package re-exports it and
adds a small convenience wrapper around the job runner.
"""

import json as _json

from ._core import (
    BlockAlgebra,
    CapacityError,
    Cochain,
    FactorSystem,
    FellBundle,
    Group,
    GroupAction,
    InputError,
    PicardHom,
    PreFactorSystem,
    act,
    are_equivalent,
    brute_force_classes,
    canonical_system,
    characteristic_class,
    coboundary_solve,
    differential,
    direct_product,
    ext_classes,
    h2_classes,
    is_cocycle,
    is_factor_system,
    lazy_cocycle_identity,
    make_cyclic,
    obstruction,
    repair,
    smith_diagonal,
    validate_group,
    verify_axioms,
)
from ._core import run as _run

__all__ = [
    "BlockAlgebra",
    "CapacityError",
    "Cochain",
    "FactorSystem",
    "FellBundle",
    "Group",
    "GroupAction",
    "InputError",
    "PicardHom",
    "PreFactorSystem",
    "act",
    "are_equivalent",
    "brute_force_classes",
    "canonical_system",
    "characteristic_class",
    "coboundary_solve",
    "differential",
    "direct_product",
    "ext_classes",
    "h2_classes",
    "is_cocycle",
    "is_factor_system",
    "lazy_cocycle_identity",
    "make_cyclic",
    "obstruction",
    "repair",
    "run",
    "smith_diagonal",
    "validate_group",
    "verify_axioms",
]


def run(command, config=None):
    """Run a CLI job and return (exit_code, report_dict).

    ``config`` may be a dict or a JSON string; ``command`` is one of the
    CLI subcommands (classify, verify-axioms, repair, ...).
    """
    if config is None:
        config = {}
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(command, config)
