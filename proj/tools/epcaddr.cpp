#include <cstdlib>
#include <iostream>

#include "epcaddr/cli.hpp"

int main(int argc, char** argv)
{
    std::optional<std::filesystem::path> config;
    if (const char* path = std::getenv(epcaddr::cli::kConfigEnvVar); path && *path)
        config = path;
    return epcaddr::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, config);
}
