#include "commands.hpp"

int main(int argc, char** argv) { return rpys::cli::run(argc, argv); }
