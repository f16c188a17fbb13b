# Copyright 2022 The Oddindex Authors
#
# This file is part of Oddindex.
#
# Licensed under the GNU Affero General Public License 3.0 (the "License").
# A copy of the License may be obtained with this software package or at
#
#      https://www.gnu.org/licenses/agpl-3.0.en.html
#
# Use of this file is prohibited except in compliance with the License. Any
# modifications or derivative works of this file must retain this copyright
# notice, and modified files must contain a notice indicating that they have
# been altered from the originals.
#
# Oddindex is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE. See the License for more details.

"""Defaults and named constants for Oddindex"""

import os

_HOME = os.environ.get("HOME") or os.path.expanduser("~")

# Names of the two bundles carrying Pontryagin classes on a fixed component
TANGENT_BUNDLE = "TF"
NORMAL_BUNDLE = "N"

# Default configuration settings
_DEFAULT_CONFIG = {
    "sdk": {
        "log_dir": (
            os.environ.get("ODDINDEX_LOGDIR")
            or (os.environ.get("XDG_CACHE_HOME") or (_HOME + "/.cache"))
        )
        + "/oddindex",
        "log_level": os.environ.get("LOGLEVEL", "WARNING").lower(),
        "enable_logging": os.environ.get("ODDINDEX_LOG_TO_FILE", "false").lower(),
    },
    "series": {
        "cap": 12,
    },
    "lefschetz": {
        "integrality_tolerance": 1e-8,
    },
    "spectral": {
        "cutoff": 8,
        "t_min": 0.05,
        "t_max": 1.0,
        "t_samples": 10,
        "constancy_tolerance": 1e-10,
        "grid_points": 256,
    },
    "localize": {
        "cutoff": 24,
        "epsilon": 0.3,
        "t_grid": [0.5, 0.2, 0.1, 0.05, 0.04],
        "grid_points": 4096,
    },
    "mehler": {
        "a_values": [0.5, 1.0, 2.0],
        "t_values": [0.1, 0.5, 1.0],
        "y_max": 2.0,
        "y_step": 0.25,
        "tolerance": 1e-8,
        "tail_tolerance": 1e-12,
        "max_terms": 200000,
        "pole_threshold": 1e-8,
    },
    "jlo": {
        "cutoff": 12,
        "quad_nodes": 8,
        "t_grid": [0.4, 0.2, 0.1],
        "tolerance": 0.01,
        "absolute_tolerance": 1e-10,
        "quadrature_tolerance": 1e-6,
        "limit_grid_points": 64,
        "extrapolation_step": 0.5,
    },
}
