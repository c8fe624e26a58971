#include "commands.hpp"

int main(int argc, char** argv) { return crl::cli::run(argc, argv); }
