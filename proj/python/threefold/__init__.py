"""Python bindings for the threefold 3-manifold invariant library."""

import json

from ._threefold import (
    CacheError,
    DegreeError,
    HeadroomError,
    ModuliError,
    ParameterError,
    RegularityError,
    SingularityError,
    TautnessError,
    ThreefoldError,
    UnsupportedError,
    ValidationError,
    cs_stationarity,
    enumerate_reps,
    godbillon_vey,
    homology_h1,
    leafwise_torsion,
    subcommands,
    tangential_spectrum,
    torsion_sum,
    winding_pairing,
)
from ._threefold import run as _run

__all__ = [
    "CacheError",
    "DegreeError",
    "HeadroomError",
    "ModuliError",
    "ParameterError",
    "RegularityError",
    "SingularityError",
    "TautnessError",
    "ThreefoldError",
    "UnsupportedError",
    "ValidationError",
    "cs_stationarity",
    "enumerate_reps",
    "godbillon_vey",
    "homology_h1",
    "leafwise_torsion",
    "run",
    "subcommands",
    "tangential_spectrum",
    "torsion_sum",
    "winding_pairing",
]


def run(subcommand, manifest, workers=1, strict=False, seed=None, use_cache=False):
    """Run a CLI subcommand on a manifest file.

    Returns (report, exit_code, deterministic_text), where report is the parsed
    JSON report and deterministic_text is the canonical dump without timings.
    """
    text, code, canonical = _run(str(subcommand), str(manifest), workers, strict, seed, use_cache)
    return json.loads(text), code, canonical
