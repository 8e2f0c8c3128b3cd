#include <iostream>
#include <string>
#include <vector>

#include "supersel/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return supersel::run_command(args, std::cout, std::cerr);
}
