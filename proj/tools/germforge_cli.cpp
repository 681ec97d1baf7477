#include <iostream>
#include <vector>

#include "germforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return germforge::run_command(args, std::cout, std::cerr);
}
