// One PASS/FAIL line per acceptance criterion. With an argument N only
// criterion N runs; the exit status is 0 iff every selected criterion passes.
#include "mixlab/verification.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

using namespace mixlab;

namespace {

struct Criterion {
  int number;
  const char* title;
  std::vector<std::string> suites;
};

const std::vector<Criterion> criteria{
    {1, "closed-form constant I(1,s)", {"lem:constant-estimate"}},
    {2, "cross-order identity", {"lem:constant"}},
    {3, "m-independence", {"lem:independence"}},
    {4, "limits s -> 0 and s -> 1", {"limits"}},
    {5, "exponential and Chu-Vandermonde identities", {"agaapa0", "chu-vandermonde"}},
    {6, "spectral-pointwise agreement", {"fourier-rep"}},
    {7, "energy oracle and scaling", {"energy-oracle", "scaling"}},
    {8, "Poincare bounds", {"poincare", "poincare-gen"}},
    {9, "pathological measures", {"special-construction"}},
    {10, "mountain pass", {"mountain-pass"}},
    {11, "jumping functional", {"jumping"}},
    {12, "positivity refusal", {"refusal"}},
};

bool run(const Criterion& c) {
  bool ok = true;
  std::string notes;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& id : c.suites) {
    try {
      const VerifyReport r = find_suite(id).run(VerifyOptions{});
      for (const auto& ch : r.checks)
        if (!ch.pass) {
          ok = false;
          notes += "\n    " + id + ": " + ch.name + " value=" + std::to_string(ch.value) +
                   " threshold=" + std::to_string(ch.threshold) + (ch.detail.empty() ? "" : " (" + ch.detail + ")");
        }
      if (r.checks.empty()) ok = false;
    } catch (const std::exception& e) {
      ok = false;
      notes += "\n    " + id + ": exception: " + e.what();
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", c.number, c.title, secs, notes.c_str());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all = true, any = false;
  for (const auto& c : criteria) {
    if (only && c.number != only) continue;
    any = true;
    all = run(c) && all;
  }
  if (!any) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
