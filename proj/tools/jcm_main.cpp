#include <string>
#include <vector>

#include "jcm/cli.hpp"

int main(int argc, char** argv) {
    return jcm::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
