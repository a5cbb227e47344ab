#include "midx/cli.hpp"

int main(int argc, char** argv) { return midx::cli::main(argc, argv); }
