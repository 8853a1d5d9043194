#include "pbg/cli.hpp"

int main(int argc, char** argv) { return pbg::run(argc, argv); }
