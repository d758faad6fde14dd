"""Design and verification tools for 13.56 MHz planar NFC tag antennas."""
from .circuit import (
    ChipModel,
    ImpedancePoint,
    TagNetwork,
    Topology,
    TuningSolution,
    equivalent_capacitance,
    find_resonance,
    impedance_at,
    q_factor,
    required_equivalent_capacitance,
    resonance_frequency,
    snap_to_series,
    sweep,
    synthesize_tuning,
)
from .coil import (
    COPPER,
    ConductorMaterial,
    CoilGeometry,
    DerivedDimensions,
    Shape,
    SubstrateSpec,
    WheelerConstants,
    coil_centerline,
    derive_dimensions,
    inductance_wheeler,
    skin_depth,
    trace_length,
    trace_resistance,
)
from .coupling import (
    CouplingScenario,
    FilamentCoil,
    calibrate_threshold,
    discretize_coil,
    estimate_range,
    induced_emf,
    mutual_inductance,
    range_curve,
    rectangular_loop,
)
from .errors import *  # noqa: F401,F403
from .layout import LayoutDocument, PadSpec, build_layout, to_gerber, to_svg
from .synthesis import (
    CandidateDesign,
    DesignRules,
    SynthesisTarget,
    TargetMode,
    Violation,
    drc_check,
    search_geometry,
)

__version__ = "0.1.0"
