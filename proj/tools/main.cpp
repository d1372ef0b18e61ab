#include "overbook/bench.hpp"

int main(int argc, char** argv) { return overbook::cli_main(argc, argv); }
