#!/usr/bin/env python3
# -*- coding: utf-8 -*-

#
# Copyright (c) 2024 Lanzhou University
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

from .cutoff import CutoffPair, exp_bridge
from .mellin import (
    SampledFunction,
    mellin_numeric,
    mellin_numeric_many,
    mellin_jet,
    group_action,
    weighted_norm,
    log_derivatives,
)
from .contour import (
    ContourFit,
    PrincipalData,
    contour_radius,
    principal_coefficients,
    contour_values,
    contour_G,
    contour_zeta,
    zeta_closed_form,
    closed_form_G,
)
from .jet import JetImage, jet_function, apply_cone_jet
from .membership import MembershipResult, membership_check, shell_integrals
