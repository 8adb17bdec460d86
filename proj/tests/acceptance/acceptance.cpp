// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [id ...]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ws/acceptance.hpp"
#include "ws/config.hpp"
#include "ws/error.hpp"

int main(int argc, char** argv) {
  ws::RunConfig cfg;
  try {
    const std::string path = ws::config_path_from_env();
    if (!path.empty()) ws::apply_config_file(cfg, path);
  } catch (const ws::Error& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  const auto results = ws::run_acceptance(cfg, only, [](const ws::CriterionResult& r) {
    std::printf("%s\n", ws::format_line(r).c_str());
    std::fflush(stdout);
  });
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
