#include <iostream>

#include "hqss/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hqss::cli::runCommand(args, std::cout, std::cerr);
}
