#include "cli.hpp"

int main(int argc, char** argv) { return amoebakit::cli::run({argv + 1, argv + argc}); }
