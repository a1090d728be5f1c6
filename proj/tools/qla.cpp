#include "qla/cli.hpp"

int main(int argc, char** argv) { return qla::cli::dispatch(argc, argv); }
