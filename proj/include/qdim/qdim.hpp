// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qdim/combinatorics.hpp"
#include "qdim/core.hpp"
#include "qdim/dynamics.hpp"
#include "qdim/oscillator.hpp"
#include "qdim/symmetry.hpp"
#include "qdim/thermo.hpp"
