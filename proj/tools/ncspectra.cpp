#include <iostream>

#include "ncspectra/cli.hpp"

int main(int argc, char** argv) {
    return ncspectra::cli::run_cli(argc, argv, std::cout, std::cerr);
}
