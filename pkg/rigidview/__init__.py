# -*- coding: utf-8 -*-
# Copyright (c) 2025-present tandemdude
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""Two-frame projective analysis of rigid bodies: focal point location, epipolar prediction and identity matching."""

from rigidview.dof import *
from rigidview.epipolar import *
from rigidview.errors import *
from rigidview.focal import *
from rigidview.frames import *
from rigidview.matching import *
from rigidview.oracle import *
from rigidview.projective import *
from rigidview.settings import *
from rigidview.transfer import *

__all__ = [
    "DegenerateConfiguration",
    "DofScenario",
    "FocalSolution",
    "LabeledFrame",
    "MatchProblem",
    "Point2D",
    "Point3D",
    "Regime",
    "RigidViewError",
    "Settings",
    "degrees_of_freedom",
    "dq_coordinates",
    "load_frame",
    "load_settings",
    "locate_projected_focal",
    "match_identities",
    "predict_line",
    "random_rigid_scene",
    "transfer_point",
]

# Do not change the below field manually. It is updated by CI upon release.
__version__ = "0.1.0"
