#include <iostream>

#include "divseq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    divseq::CommandResult r = divseq::run_command(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
