// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv)
{
    return stepprony::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
