// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "fsg_cli/cli.hpp"

int main(int argc, char** argv) { return fsg::cli::main_entry(argc, argv, std::cout, std::cerr); }
