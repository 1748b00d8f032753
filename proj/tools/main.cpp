#include "gpcuntz/cli.hpp"

int main(int argc, char** argv) { return gpcuntz::cli::run(argc, argv); }
