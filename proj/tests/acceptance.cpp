// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdlib>
#include <iostream>

#include "wreathkit/suite.hpp"

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  wreathkit::run_acceptance(only, [&](const wreathkit::CriterionResult& r) {
    std::cout << wreathkit::format_line(r) << std::endl;
    all = all && r.pass();
  });
  return all ? 0 : 1;
}
