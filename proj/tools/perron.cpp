#include "perron/cli.hpp"

int main(int argc, char** argv) { return perron::cli_main(argc, argv); }
