#include <iostream>
#include <string>
#include <vector>

#include "mpa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mpa::cli::run(std::move(args), std::cout, std::cerr);
}
