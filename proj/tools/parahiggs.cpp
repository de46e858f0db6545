#include <iostream>
#include <string>
#include <vector>

#include "parahiggs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = parahiggs::cli::run(std::move(args));
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
