#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return tdiff::cli::run_cli(argc, argv, std::cout, std::cerr);
}
