#include "usm/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = usm::cli::run(args);
    std::cout << usm::cli::render(result) << '\n';
    return usm::cli::exit_code(result.status);
}
