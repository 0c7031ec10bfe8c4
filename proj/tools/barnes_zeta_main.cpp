#include "barnes_zeta/cli_io.hpp"

int main(int argc, char** argv) { return barnes::cli::main(argc, argv); }
