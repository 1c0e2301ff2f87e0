"""Python bindings for the leoshare C++ library."""

from ._core import (
    ConfigError,
    GammaTransform,
    LinkFamily,
    QuadratureConfig,
    QuadratureError,
    ScenarioConfig,
    ScenarioFile,
    Sharing,
    ShadowedRicianParams,
    coverage_probability,
    density_ratio_threshold,
    ergodic_se,
    estimate,
    laplace_interference,
    load_preset,
    load_scenario,
    mean_interference,
    nonempty_probability,
    parse_scenario,
    parse_sharing,
    preset_names,
    se_lower_bound,
    sweep_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
