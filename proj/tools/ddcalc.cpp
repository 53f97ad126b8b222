#include <iostream>

#include "ddcalc/cli/commands.hpp"

int main(int argc, char** argv) {
    return ddcalc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
