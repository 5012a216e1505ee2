#include <iostream>
#include <string>
#include <vector>

#include "qorth/cli/commands.hpp"

int main(int argc, char** argv) {
    return qorth::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
