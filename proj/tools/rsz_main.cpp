#include <iostream>
#include <vector>

#include "rsz/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rsz::cli_run(args, std::cout, std::cerr);
}
