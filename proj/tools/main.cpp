#include "cli.hpp"

int main(int argc, char** argv) { return ibern::cli::main(argc, argv); }
