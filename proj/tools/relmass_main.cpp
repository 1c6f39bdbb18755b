#include "relmass/cli.hpp"

int main(int argc, char** argv) {
    return relmass::cli::main_entry(argc, argv);
}
