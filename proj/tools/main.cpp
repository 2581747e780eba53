#include "geokernels/cli.hpp"

int main(int argc, char** argv) { return geokernels::cli_main(argc, argv); }
