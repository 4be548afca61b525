"""Equilibrium solver for customer-owned energy storage games."""

from ._storagegame import (
    Action,
    Customer,
    EquilibriumResult,
    ExistenceReport,
    GridConfig,
    IoError,
    LinearFractionLoss,
    NoProperEquilibriumError,
    NumericError,
    ParseError,
    PlayerBounds,
    PriceTier,
    PricingScheme,
    Scenario,
    ScenarioError,
    StorageGameError,
    SweepSpec,
    Theory,
    VerificationReport,
    ZeroLoss,
    check_existence,
    enumerate_pure_nash,
    expected_load,
    expected_utility,
    generation,
    load_scenario,
    lmp_price,
    parse_scenario,
    prelec_weight,
    pure_utility,
    reference_scenario,
    revenue,
    solve,
    solve_eut,
    solve_pt,
    sweep,
    sweep_csv,
    validate_scenario,
    verify_equilibrium,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
