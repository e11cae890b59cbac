#include <iostream>
#include <string>
#include <vector>

#include "fourblock/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fourblock::run_cli(std::move(args), std::cin, std::cout, std::cerr);
}
