#include <iostream>
#include <string>
#include <vector>

#include "tracelab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return tracelab::cli::run(args, std::cout, std::cerr);
}
