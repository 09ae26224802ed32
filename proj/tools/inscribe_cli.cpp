#include "inscribe/cli.hpp"

int main(int argc, char** argv) { return inscribe::cli::run(argc, argv); }
