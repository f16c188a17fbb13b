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

"""Configuration file for the Sphinx documentation builder."""

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

# -- Project information -----------------------------------------------------

project = "oddindex"
copyright = "2022 The Oddindex Authors"
author = "The Oddindex Authors"

with open(os.path.abspath("../../VERSION")) as f:
    release = f.read().strip()

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx_copybutton",
    "sphinx_click.ext",
    "sphinx_autodoc_typehints",
]

exclude_patterns = ["_build"]
highlight_language = "python"
add_module_names = False

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"
html_title = "oddindex"
