#include "hhfd/cli.hpp"

int main(int argc, char** argv) { return hhfd::cli_main(argc, argv); }
