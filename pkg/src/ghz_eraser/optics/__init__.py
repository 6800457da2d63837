from .catalog import (
    DATA_DIR_ENV,
    available_crystals,
    crystal_data_path,
    load_catalog,
    load_crystal,
)
from .crystal import (
    CrystalCatalog,
    CrystalSign,
    RayType,
    SellmeierCoefficients,
    UniaxialCrystal,
    read_crystal_data,
    read_crystal_text,
    refractive_index,
)
from .geometry import (
    PARAXIAL_LIMIT,
    EmissionDirections,
    EmissionGeometry,
    PumpDiameterCheck,
    emission_directions,
    pump_diameter_ok,
)
from .phase_matching import (
    PhaseMatchProblem,
    index_at_angle,
    phase_match_angle,
    phase_mismatch,
    ray_index,
    walkoff_angle,
    walkoff_displacement,
)

__all__ = [
    "DATA_DIR_ENV",
    "PARAXIAL_LIMIT",
    "CrystalCatalog",
    "CrystalSign",
    "EmissionDirections",
    "EmissionGeometry",
    "PhaseMatchProblem",
    "PumpDiameterCheck",
    "RayType",
    "SellmeierCoefficients",
    "UniaxialCrystal",
    "available_crystals",
    "crystal_data_path",
    "emission_directions",
    "index_at_angle",
    "load_catalog",
    "load_crystal",
    "phase_match_angle",
    "phase_mismatch",
    "pump_diameter_ok",
    "ray_index",
    "read_crystal_data",
    "read_crystal_text",
    "refractive_index",
    "walkoff_angle",
    "walkoff_displacement",
]
