#include "rootscope/cli.hpp"

int main(int argc, char** argv) { return rootscope::cli::run(argc, argv); }
