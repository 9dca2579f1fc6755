#include "chaoswolf/cli.hpp"

int main(int argc, char** argv) {
    return chaoswolf::cli::run_cli(argc, argv);
}
