#include "cvpa/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cvpa/parallel.hpp"

namespace cvpa {

void CheckReport::merge(const CheckReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  checked += other.checked;
}

void CheckReport::sort() { std::sort(violations_.begin(), violations_.end()); }

std::set<std::string> CheckReport::axioms() const {
  std::set<std::string> out;
  for (const auto& v : violations_) out.insert(v.axiom);
  return out;
}

bool CheckReport::has_axiom(const std::string& axiom) const {
  return std::any_of(violations_.begin(), violations_.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

std::string format_report(const CheckReport& report, std::size_t limit) {
  std::ostringstream os;
  if (report.passed()) {
    os << "pass (" << report.checked << " identities checked)\n";
    return os.str();
  }
  os << "FAIL: " << report.size() << " violation(s) of " << report.axioms().size() << " axiom(s)\n";
  std::size_t shown = 0;
  for (const auto& v : report.violations()) {
    if (shown++ == limit) {
      os << "  ... " << report.size() - limit << " more\n";
      break;
    }
    os << "  [" << v.module << "] " << v.axiom << " at (";
    for (std::size_t i = 0; i < v.tuple.size(); ++i) os << (i ? ", " : "") << v.tuple[i];
    os << "): lhs = " << v.lhs << ", rhs = " << v.rhs << "\n";
  }
  return os.str();
}

Exec Exec::from_env() {
  Exec e;
  if (const char* s = std::getenv("COURANT_VPA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 0) e.threads = static_cast<int>(v);
  }
  return e;
}

int Exec::resolved() const { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace cvpa
