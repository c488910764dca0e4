#include "frey/cli.hpp"

int main(int argc, char** argv) { return frey::cli::run(argc, argv); }
