#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "spinsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return spinsim::cli::run(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "spinsim: " << e.what() << "\n";
        return spinsim::cli::kUsageError;
    }
}
