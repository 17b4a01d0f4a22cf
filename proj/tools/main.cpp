#include "cli.hpp"

int main(int argc, char** argv) { return ineqforge::cli::main(argc, argv); }
