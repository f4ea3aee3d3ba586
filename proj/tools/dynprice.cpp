#include "dynprice/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    return dynprice::cli::run(std::vector<std::string>(argv, argv + argc), std::cerr);
}
