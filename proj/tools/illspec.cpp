// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "illspec/cli/cli.hpp"

int main(int argc, char** argv) { return illspec::cli::run(argc, argv, std::cout, std::cerr); }
