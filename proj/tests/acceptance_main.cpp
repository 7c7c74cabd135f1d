#include <cstdlib>
#include <iostream>

#include "mrw/acceptance.hpp"

int main(int argc, char** argv) {
  mrw::acceptance::Options opt;
  if (const char* t = std::getenv("MRW_THREADS")) opt.threads = std::atoi(t);
  std::string suite = argc > 1 ? argv[1] : "all";
  const bool ok = mrw::acceptance::run_suites(suite, opt, std::cout);
  return ok ? 0 : 1;
}
