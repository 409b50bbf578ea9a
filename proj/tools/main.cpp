#include "qrep/cli.hpp"

int main(int argc, char** argv) {
    return qrep::cli::run(std::vector<std::string>(argv, argv + argc));
}
