#include "sbim/driver.hpp"

int main(int argc, char** argv) { return sbim::run_cli(argc, argv); }
