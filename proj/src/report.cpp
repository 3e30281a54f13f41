#include "qteich/report.hpp"

#include <algorithm>
#include <sstream>

namespace qteich {

namespace {
std::string sanitize(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  return out;
}
} // namespace

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

std::string Report::render(bool include_timing) const {
  std::vector<const CheckResult*> sorted;
  sorted.reserve(checks.size());
  for (const auto& c : checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult* a, const CheckResult* b) { return a->id < b->id; });
  std::ostringstream os;
  os << "qtreport v1\n";
  for (const auto& line : config_lines) os << "config " << sanitize(line) << "\n";
  for (const CheckResult* c : sorted) {
    os << "check id=" << c->id << " anchor={" << sanitize(c->anchor) << "}"
       << " verdict=" << (c->pass ? "pass" : "fail");
    if (!c->detail.empty()) os << " detail={" << sanitize(c->detail) << "}";
    if (include_timing) {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(1);
      t << c->ms;
      os << " time_ms=" << t.str();
    }
    os << "\n";
  }
  os << "summary total=" << total() << " pass=" << total() - failures()
     << " fail=" << failures() << "\n";
  return os.str();
}

} // namespace qteich
