"""Nonlinear ladder truncation with scaled-relative-graph error certificates.

The package models series/parallel one-port circuits as alternating chains
of impedances and admittances (continued fractions of relations), reduces
them by truncation or capacitor removal with resistive lumping, and bounds
the reduction error by exact complex-region arithmetic.  A fixed-step
simulator and a reference balanced-truncation bound support empirical
comparison.
"""

from .baseline import BaselineBound, balanced_truncation_bound, spectral_quantity, tridiag_matrix
from .elements import (
    CircuitChain,
    LinearResistor,
    Open,
    Orientation,
    PwlTable,
    Saturation,
    SectorBound,
    Short,
    ShuntRC,
    StaticNL,
    TanhPlusId,
    element_region,
    eval_static,
    invert_static,
    lattice_chain,
    lti_port_transfer,
    lump_resistive_tail,
    propagate_properties,
    truncate_capacitors,
    truncate_chain,
)
from .netlist import load_circuit, parse_circuit_file, serialize_chain, write_circuit_file
from .regions import (
    Disc,
    HalfPlane,
    PropertyKind,
    PropertyTag,
    Region,
    Sampled,
    SrgPoint,
    classify,
    contains,
    disc_from_real_interval,
    invert,
    max_modulus,
    minkowski_sum,
    negate,
    region_from_property,
)
from .signals import Multisine, Signal, Sine, Step, angle, inner, multisine_pairs, norm, sample
from .sim import SimulatedPort, assemble_ode, estimate_properties, simulate, simulate_batch
from .srg import (
    BoundSeries,
    chain_srg,
    check_containment,
    empirical_srg,
    error_region,
    lambda_chain,
    secant_error,
)

__version__ = "0.1.0"
