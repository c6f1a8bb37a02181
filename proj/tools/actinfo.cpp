#include "actinfo/cli.hpp"

int main(int argc, char** argv) { return actinfo::cli::run(argc, argv); }
