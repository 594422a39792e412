#include <iostream>
#include <vector>

#include "harmonica/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return harmonica::run_cli(args, std::cout, std::cerr);
}
