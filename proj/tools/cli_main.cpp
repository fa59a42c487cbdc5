#include "cli.hpp"

int main(int argc, char** argv) { return cqk::cli::run(argc, argv, stdout, stderr); }
