# SPDX-License-Identifier: Apache-2.0
"""Hybrid-field THz channel synthesis, polar-domain OMP estimation and HFCT tensor I/O."""

from ._hfce import (  # noqa: F401
    AbsorptionTable,
    CombinerMode,
    CombiningMatrix,
    ConfigError,
    HfctFormatError,
    IoError,
    MaterialParams,
    PolarDictionary,
    SceneParams,
    SparseEstimate,
    SystemConfig,
    ValidationError,
    assemble_channel,
    build_angular_dictionary,
    build_polar_dictionary,
    element_distance,
    far_steering,
    generate_combiner,
    generate_scene,
    load_manifest,
    los_gain,
    near_steering,
    nlos_gain,
    nmse,
    nmse_db,
    observe,
    omp,
    read_tensor,
    write_tensor,
)

__all__ = [name for name in dir() if not name.startswith("_")]
