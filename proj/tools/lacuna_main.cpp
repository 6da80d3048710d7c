#include "lacuna/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lacuna::run_cli(args, std::cout, std::cerr);
}
