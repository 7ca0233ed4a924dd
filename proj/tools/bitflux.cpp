#include <iostream>
#include <string>
#include <vector>

#include "bitflux/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return bitflux::cli::run(args, std::cout, std::cerr);
}
