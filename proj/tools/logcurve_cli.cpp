#include "logcurve/cli.hpp"

int main(int argc, char** argv) {
  return logcurve::cli::main_entry(argc, argv);
}
