// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return vecgraph::cli::main(argc, argv, std::cout, std::cerr); }
