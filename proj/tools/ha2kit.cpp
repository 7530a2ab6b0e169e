#include <iostream>
#include <string>
#include <vector>

#include "ha2kit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ha2kit::cli::run(args, std::cout, std::cerr);
}
