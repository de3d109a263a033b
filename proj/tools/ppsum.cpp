// ppsum: command-line front end. See `ppsum --help`.

#include "ppsum/cli.hpp"

int main(int argc, char** argv) { return ppsum::cli::main(argc, argv); }
