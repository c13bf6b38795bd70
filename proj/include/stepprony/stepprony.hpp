// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

/// \file stepprony.hpp
/// Umbrella header.
#pragma once

#include "stepprony/budget.hpp"
#include "stepprony/errors.hpp"
#include "stepprony/io.hpp"
#include "stepprony/linear_approx.hpp"
#include "stepprony/prony.hpp"
#include "stepprony/signals.hpp"
#include "stepprony/spectral.hpp"
#include "stepprony/widths.hpp"
