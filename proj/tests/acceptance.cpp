#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "qucat/suite.hpp"

int main(int argc, char** argv) {
  qucat::suite::Options opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opts.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  bool all = true;
  qucat::suite::run(opts, [&](const qucat::suite::Outcome& o) {
    all = all && o.passed();
    std::printf("%s criterion %d (%s): %s [%.2fs, limit %.0fs]\n", o.passed() ? "PASS" : "FAIL", o.id, o.name.c_str(),
                o.detail.c_str(), o.seconds, o.limit_seconds);
    std::fflush(stdout);
  });
  return all ? 0 : 1;
}
