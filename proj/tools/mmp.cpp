#include "mmp/cli.hpp"

int main(int argc, char** argv) { return mmp::cli::run(argc, argv); }
