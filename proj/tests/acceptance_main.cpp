// Runs every acceptance criterion at full size; one line per criterion.

#include <cstdlib>
#include <iostream>
#include <string>

#include "asw/acceptance.hpp"

int main(int argc, char** argv) {
  asw::acceptance::Options options;
  if (argc > 1) options.scale = std::stod(argv[1]);
  bool ok = true;
  asw::acceptance::run_all(options, [&](const asw::acceptance::Report& r) {
    std::cout << r.line() << std::endl;
    ok = ok && r.passed;
  });
  std::cout << (ok ? "all acceptance criteria passed" : "acceptance FAILED") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
