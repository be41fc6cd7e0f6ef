#include "viadel/experiments.hpp"

int main(int argc, char** argv) { return viadel::cli_main(argc, argv); }
