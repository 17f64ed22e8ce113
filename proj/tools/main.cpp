#include "bandlab/cli.hpp"

int main(int argc, char** argv) { return bandlab::cli::run(argc, argv); }
