// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

/// \file cli.hpp
/// Entry point of the stepprony command-line tool, callable from tests.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stepprony::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitQuality = 3;

/// Runs one command. args[0] is the program name. Results go to --out when
/// given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: hardware concurrency capped by STEPPRONY_THREADS.
unsigned thread_count();

} // namespace stepprony::cli
