#include "kcover/cli.hpp"

int main(int argc, char** argv) { return kcover::cli::run(argc, argv); }
