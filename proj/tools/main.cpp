#include <iostream>
#include <string>
#include <vector>

#include "permld/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return permld::runCli(args, std::cin, std::cout, std::cerr);
}
