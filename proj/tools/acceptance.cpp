#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "rwm/checks.hpp"

namespace {

// headline numbers only; the full detail goes to --json
std::string summary(const nlohmann::json& d) {
  std::string s;
  const auto add = [&](const std::string& k, const nlohmann::json& v) {
    if (!s.empty()) s += ", ";
    s += k + "=" + v.dump();
  };
  for (const auto& [k, v] : d.items()) {
    if (v.is_number() || v.is_boolean()) {
      add(k, v);
    } else if (v.is_object()) {
      for (const auto& [k2, v2] : v.items()) {
        if (v2.is_number() && !k2.ends_with("tol") && k2 != "seconds") add(k + "." + k2, v2);
      }
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      std::string seq;
      for (const auto& e : v) seq += (seq.empty() ? "" : " ") + e.value("residual", nlohmann::json()).dump();
      add(k, seq);
    }
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks, one line per criterion"};
  int criterion = 0;
  bool json_out = false;
  app.add_option("--criterion", criterion, "run only criterion N (1..10)")->check(CLI::Range(1, rwm::kCriteria));
  app.add_flag("--json", json_out, "print the full measurement record as JSON");
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  nlohmann::json records = nlohmann::json::array();
  for (int n = 1; n <= rwm::kCriteria; ++n) {
    if (criterion != 0 && n != criterion) continue;
    const rwm::CheckResult r = rwm::run_criterion(n);
    all_ok = all_ok && r.passed;
    std::printf("criterion %d: %s %s (%s) [%.2fs]\n", n, r.passed ? "PASS" : "FAIL", r.description.c_str(),
                summary(r.detail).c_str(), r.seconds);
    std::fflush(stdout);
    records.push_back(rwm::to_json(r));
  }
  if (json_out) std::printf("%s\n", records.dump(2).c_str());
  return all_ok ? 0 : 1;
}
